#include "thh/bar.hpp"
#include "thh/cli.hpp"
#include "thh/errors.hpp"
#include "thh/monadic.hpp"
#include "thh/simplicial_set.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace thh;
using namespace thh::cli;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(int argc, char** argv)
{
    CLI::App app{"Topological Hochschild homology of Thom spectra: named computations, bar constructions, checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<unsigned> prime;
    int max_degree = kDefaultMaxDegree;
    std::string format = "table";
    std::string cache_dir;
    bool no_cache = false;
    int verbosity = 0;
    app.add_option("--prime", prime, "Prime p for HZp, F_p models and coefficients");
    app.add_option("--max-degree", max_degree, "Largest degree reported (default 20, hard cap 40)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--cache-dir", cache_dir, "Result cache directory (default $THH_CACHE_DIR)");
    app.add_flag("--no-cache", no_cache, "Neither read nor write the result cache");
    app.add_flag("-v,--verbose", verbosity, "Report digests and timings on stderr");

    auto* thh_cmd = app.add_subcommand("thh", "THH of HZ2, HZp, HZ or MU through the splitting");
    std::string spectrum;
    thh_cmd->add_option("spectrum", spectrum, "HZ2, HZp, HZ or MU")->required();

    auto* hom_cmd = app.add_subcommand("homology", "Homology of a bar-type complex of a free algebra");
    std::string kind, spec_file, export_path;
    int subdivisions = 3;
    hom_cmd->add_option("kind", kind, "bar, cyclic or tensor-circle")
        ->required()
        ->check(CLI::IsMember({"bar", "cyclic", "tensor-circle"}));
    hom_cmd->add_option("spec", spec_file, "JSON algebra specification")->required();
    hom_cmd->add_option("--subdivisions", subdivisions, "Vertices of the circle for tensor-circle (default 3)");
    hom_cmd->add_option("--export-complex", export_path, "Write the assembled complex in the sparse text format");

    auto* models_cmd = app.add_subcommand("models", "Catalogue of homology models");
    models_cmd->require_subcommand(1);
    models_cmd->add_subcommand("list", "List the catalogue");
    auto* show_cmd = models_cmd->add_subcommand("show", "Materialize a model (over Z, or F_p with --prime)");
    std::string model_name;
    show_cmd->add_option("name", model_name)->required();

    auto* monadic_cmd = app.add_subcommand("monadic", "Colimit and tensor formulas for powerset algebras");
    monadic_cmd->require_subcommand(1);
    auto* mverify_cmd = monadic_cmd->add_subcommand("verify", "Check a diagram suite");
    std::string suite_file;
    mverify_cmd->add_option("--suite", suite_file, "Diagram suite file (default: the generated suite)");
    auto* mexport_cmd = monadic_cmd->add_subcommand("export", "Write the generated suite in the text format");
    std::string export_suite;
    mexport_cmd->add_option("file", export_suite)->required();

    auto* verify_cmd = app.add_subcommand("verify", "Run property suites; exit 1 if any check fails");
    std::string suite = "all";
    std::string fault;
    verify_cmd->add_option("suite", suite, "splitting, bars, monadic or all")
        ->check(CLI::IsMember({"splitting", "bars", "monadic", "all"}));
    verify_cmd->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"flip-cyclic-sign"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    RunConfig config;
    config.prime = prime;
    config.max_degree = max_degree;
    config.format = parse_format(format);
    config.cache_dir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);
    config.use_cache = !no_cache;
    config.verbosity = verbosity;
    config.validate();

    const auto emit = [&](const ResultEnvelope& e) {
        std::cout << render(e, config.format);
        if (config.verbosity > 0)
            std::cerr << "digest " << e.input_digest << (e.cache_hit ? " (cached)" : "") << ", " << e.wall_time_ms
                      << " ms\n";
        return exit_ok;
    };

    if (thh_cmd->parsed())
        return emit(cmd_thh(spectrum, config));
    if (hom_cmd->parsed()) {
        const auto text = read_file(spec_file);
        FreeGCA a = FreeGCA::trivial(CoefficientRing::integers(), 0);
        try {
            a = parse_algebra_spec(text, config.max_degree + 1);
        } catch (const ParseError& e) {
            std::cerr << "thhcalc: parse error: " << spec_file << ":" << e.line() << ": " << e.message() << '\n';
            return exit_usage;
        }
        const auto k = parse_homology_kind(kind);
        if (!export_path.empty()) {
            const int n = config.max_degree + 1;
            const auto circle = FiniteSimplicialSet::circle_subdivided(k == HomologyKind::tensor_circle ? subdivisions : 1);
            const auto c = k == HomologyKind::bar      ? two_sided_bar(a, n)
                           : k == HomologyKind::cyclic ? cyclic_bar(a, n)
                                                       : tensor_with_simplicial_set(a, circle, n);
            std::ofstream out(export_path);
            write_complex_text(out, c);
        }
        return emit(cmd_homology(k, a, subdivisions, config));
    }
    if (models_cmd->parsed()) {
        if (show_cmd->parsed())
            return emit(cmd_models_show(model_name, config));
        return emit(cmd_models_list());
    }
    if (monadic_cmd->parsed()) {
        if (mexport_cmd->parsed()) {
            std::ofstream out(export_suite);
            write_diagram_suite(out, generate_diagram_suite());
            if (!out)
                throw std::runtime_error("cannot write " + export_suite);
            return exit_ok;
        }
        VerifyOptions options;
        if (!suite_file.empty())
            options.monadic_suite = suite_file;
        const auto report = cmd_verify("monadic", options);
        std::cout << report.render(config.format);
        return report.passed() ? exit_ok : exit_property_failure;
    }
    VerifyOptions options;
    options.flip_cyclic_last_face_sign = fault == "flip-cyclic-sign";
    const auto report = cmd_verify(suite, options);
    std::cout << report.render(config.format);
    return report.passed() ? exit_ok : exit_property_failure;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const SizeLimitError& e) {
        std::cerr << "thhcalc: refused: " << e.what() << '\n';
        return exit_size_refusal;
    } catch (const ParseError& e) {
        std::cerr << "thhcalc: parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "thhcalc: error: " << e.what() << '\n';
        return exit_usage;
    } catch (const TruncationError& e) {
        std::cerr << "thhcalc: error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "thhcalc: internal error: " << e.what() << '\n';
        return exit_property_failure;
    }
}
