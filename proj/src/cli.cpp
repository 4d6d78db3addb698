#include "thh/cli.hpp"

#include "thh/bar.hpp"
#include "thh/errors.hpp"
#include "thh/monadic.hpp"
#include "thh/simplicial_set.hpp"
#include "thh/space_models.hpp"
#include "thh/splitting.hpp"

#include <openssl/evp.h>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace thh::cli {

using nlohmann::json;

OutputFormat parse_format(const std::string& text)
{
    if (text == "table")
        return OutputFormat::table;
    if (text == "json")
        return OutputFormat::json;
    if (text == "csv")
        return OutputFormat::csv;
    throw std::invalid_argument("unknown format '" + text + "' (table, json, csv)");
}

void RunConfig::validate() const
{
    if (max_degree < 0)
        throw std::invalid_argument("max degree must be nonnegative");
    if (max_degree > kHardDegreeCap)
        throw SizeLimitError("max degree " + std::to_string(max_degree) + " exceeds the hard cap " +
                             std::to_string(kHardDegreeCap) + "; bar complexes grow combinatorially in the degree");
    if (prime && !is_prime(*prime))
        throw std::invalid_argument(std::to_string(*prime) + " is not prime");
}

std::filesystem::path default_cache_dir()
{
    if (const char* dir = std::getenv("THH_CACHE_DIR"); dir && *dir)
        return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "thhcalc";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "thhcalc";
    return {};
}

json ResultEnvelope::to_json() const
{
    return json{{"schemaVersion", schema_version}, {"toolVersion", tool_version}, {"inputDigest", input_digest},
                {"wallTimeMs", wall_time_ms},      {"cacheHit", cache_hit},       {"payload", payload}};
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

std::string canonical_request(const json& request)
{
    json r = request;
    r["toolVersion"] = kToolVersion;
    return r.dump();
}

std::string request_digest(const json& request) { return sha256_hex(canonical_request(request)); }

// ---- payloads and rendering ----

namespace {

json integer_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

std::string integer_text(const json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()); }

std::string group_text(const json& row)
{
    const auto rank = row.at("rank").get<std::uint64_t>();
    std::string s;
    if (rank > 0)
        s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (const auto& t : row.at("torsion"))
        s += (s.empty() ? "" : " + ") + ("Z/" + integer_text(t));
    return s.empty() ? "0" : s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void render_rows(std::ostringstream& os, const json& p, OutputFormat format)
{
    const bool groups = p.at("kind") == "groups" || p.value("presentation", "") == "groups";
    if (format == OutputFormat::csv) {
        os << "degree,rank,torsion\n";
        for (const auto& row : p.at("rows")) {
            std::string torsion;
            for (const auto& t : row.at("torsion"))
                torsion += (torsion.empty() ? "" : ";") + integer_text(t);
            os << row.at("degree").get<int>() << ',' << row.at("rank").get<std::uint64_t>() << ',' << torsion
               << '\n';
        }
        return;
    }
    os << std::setw(6) << "degree" << "  " << (groups ? "group" : "rank over " + p.value("ring", std::string())) << '\n';
    for (const auto& row : p.at("rows"))
        os << std::setw(6) << row.at("degree").get<int>() << "  "
           << (groups ? group_text(row) : std::to_string(row.at("rank").get<std::uint64_t>())) << '\n';
}

}  // namespace

json groups_payload(const GradedAbelianGroup& g, const std::string& ring)
{
    json rows = json::array();
    for (std::size_t n = 0; n < g.degrees.size(); ++n) {
        json torsion = json::array();
        for (const auto& t : g.degrees[n].torsion)
            torsion.push_back(integer_json(t));
        rows.push_back({{"degree", n}, {"rank", g.degrees[n].free_rank}, {"torsion", torsion}});
    }
    return {{"kind", "groups"}, {"ring", ring}, {"rows", rows}};
}

json ranks_payload(const std::vector<std::uint64_t>& ranks, const std::string& ring)
{
    json rows = json::array();
    for (std::size_t n = 0; n < ranks.size(); ++n)
        rows.push_back({{"degree", n}, {"rank", ranks[n]}, {"torsion", json::array()}});
    return {{"kind", "ranks"}, {"ring", ring}, {"rows", rows}};
}

std::string render(const ResultEnvelope& e, OutputFormat format)
{
    if (format == OutputFormat::json)
        return e.to_json().dump(2) + "\n";
    const auto& p = e.payload;
    std::ostringstream os;
    const auto kind = p.at("kind").get<std::string>();
    if (kind == "models") {
        if (format == OutputFormat::csv)
            os << "name,space,rings,delooping_of,description\n";
        for (const auto& m : p.at("rows")) {
            const std::string delooping = m.at("deloopingOf").is_null() ? "" : m.at("deloopingOf").get<std::string>();
            if (format == OutputFormat::csv)
                os << csv_field(m.at("name")) << ',' << csv_field(m.at("space")) << ',' << csv_field(m.at("rings"))
                   << ',' << csv_field(delooping) << ',' << csv_field(m.at("description")) << '\n';
            else
                os << std::left << std::setw(18) << m.at("name").get<std::string>() << std::setw(18)
                   << m.at("space").get<std::string>() << std::setw(10) << m.at("rings").get<std::string>()
                   << m.at("description").get<std::string>()
                   << (delooping.empty() ? "" : "  [B(" + delooping + ")]") << std::right << '\n';
        }
        return os.str();
    }
    if (format == OutputFormat::table) {
        if (p.contains("title"))
            os << "# " << p.at("title").get<std::string>() << '\n';
        if (kind == "model") {
            os << "# space: " << p.at("space").get<std::string>() << '\n';
            os << "# presentation: " << p.at("description").get<std::string>() << '\n';
            if (!p.at("deloopingOf").is_null())
                os << "# delooping of: " << p.at("deloopingOf").get<std::string>() << '\n';
        }
    }
    render_rows(os, p, format);
    return os.str();
}

// ---- cache ----

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::entry_path(const std::string& digest) const { return dir_ / (digest + ".json"); }

std::optional<json> ResultCache::load(const std::string& digest) const
{
    const auto path = entry_path(digest);
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    try {
        const auto entry = json::parse(in);
        if (entry.at("digest") == digest && entry.at("payloadDigest") == sha256_hex(entry.at("payload").dump()) &&
            entry.at("toolVersion") == kToolVersion)
            return entry.at("payload");
    } catch (const std::exception&) {
    }
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
}

void ResultCache::store(const std::string& digest, const json& payload) const
{
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(dir_);
    const json entry{{"digest", digest},
                     {"toolVersion", kToolVersion},
                     {"payloadDigest", sha256_hex(payload.dump())},
                     {"payload", payload}};
    const auto tmp = dir_ / (digest + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
    {
        std::ofstream out(tmp);
        out << entry.dump();
        if (!out)
            throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, entry_path(digest));
}

namespace {

// Exclusive advisory lock on <dir>/<digest>.lock for the lifetime of the object.
class KeyLock {
public:
    KeyLock(const std::filesystem::path& dir, const std::string& digest)
    {
        fd_ = ::open((dir / (digest + ".lock")).c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
        if (fd_ >= 0)
            ::flock(fd_, LOCK_EX);
    }
    ~KeyLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    KeyLock(const KeyLock&) = delete;
    KeyLock& operator=(const KeyLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

json run_cached_impl(const json& request, const RunConfig& config, const std::function<json()>& compute,
                     std::string& digest, bool& hit)
{
    digest = request_digest(request);
    hit = false;
    if (!config.use_cache || config.cache_dir.empty())
        return compute();
    const ResultCache cache(config.cache_dir);
    std::error_code ec;
    std::filesystem::create_directories(cache.dir(), ec);
    if (ec)
        return compute();
    const KeyLock lock(cache.dir(), digest);
    if (auto payload = cache.load(digest)) {
        hit = true;
        return *payload;
    }
    auto payload = compute();
    try {
        cache.store(digest, payload);
    } catch (const std::exception&) {
        // An unwritable cache never fails the computation.
    }
    return payload;
}

// ---- algebra specifications ----

namespace {

int line_at(const std::string& text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the top-level key `key`, and of each element of its array value.
struct KeyLines {
    int key = 1;
    std::vector<int> elements;
};

KeyLines locate(const std::string& text, const std::string& key)
{
    KeyLines out;
    int depth = 0;
    bool in_array = false;
    int array_depth = 0;
    bool expect_element = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '"') {
            std::size_t j = i + 1;
            std::string s;
            while (j < text.size() && text[j] != '"') {
                if (text[j] == '\\')
                    ++j;
                if (j < text.size())
                    s += text[j];
                ++j;
            }
            if (depth == 1 && s == key && out.elements.empty() && !in_array) {
                out.key = line_at(text, i);
                std::size_t k = j + 1;
                while (k < text.size() && (std::isspace(static_cast<unsigned char>(text[k])) || text[k] == ':'))
                    ++k;
                if (k < text.size() && text[k] == '[') {
                    in_array = true;
                    array_depth = depth + 1;
                    expect_element = true;
                    depth = array_depth;
                    i = k;
                    continue;
                }
            }
            if (in_array && depth == array_depth && expect_element) {
                out.elements.push_back(line_at(text, i));
                expect_element = false;
            }
            i = j;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (in_array && depth == array_depth) {
            if (c == ',') {
                expect_element = true;
                continue;
            }
            if (c == ']') {
                in_array = false;
                --depth;
                continue;
            }
            if (expect_element) {
                out.elements.push_back(line_at(text, i));
                expect_element = false;
            }
        }
        if (c == '{' || c == '[')
            ++depth;
        else if (c == '}' || c == ']')
            --depth;
    }
    return out;
}

}  // namespace

FreeGCA parse_algebra_spec(const std::string& text, int truncation)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (!doc.is_object())
        throw ParseError("algebra specification must be a JSON object", 1);
    for (const auto& [key, value] : doc.items())
        if (key != "ring" && key != "generators")
            throw ParseError("unknown key '" + key + "' (expected ring, generators)", locate(text, key).key);
    if (!doc.contains("ring") || !doc["ring"].is_string())
        throw ParseError("missing string field 'ring' (Z or F<p>)", doc.contains("ring") ? locate(text, "ring").key : 1);
    CoefficientRing ring = CoefficientRing::integers();
    try {
        ring = CoefficientRing::parse(doc["ring"].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), locate(text, "ring").key);
    }
    const auto where = locate(text, "generators");
    std::vector<Generator> generators;
    if (doc.contains("generators")) {
        if (!doc["generators"].is_array())
            throw ParseError("'generators' must be an array", where.key);
        const auto& gens = doc["generators"];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const int line = k < where.elements.size() ? where.elements[k] : where.key;
            const auto& g = gens[k];
            if (!g.is_object())
                throw ParseError("generator must be an object", line);
            for (const auto& [key, value] : g.items())
                if (key != "name" && key != "degree" && key != "kind")
                    throw ParseError("unknown generator key '" + key + "'", line);
            if (!g.contains("name") || !g["name"].is_string())
                throw ParseError("generator needs a string 'name'", line);
            if (!g.contains("degree") || !g["degree"].is_number_integer())
                throw ParseError("generator needs an integer 'degree'", line);
            Generator gen{g["name"].get<std::string>(), g["degree"].get<int>(), GeneratorKind::polynomial};
            if (g.contains("kind")) {
                if (!g["kind"].is_string())
                    throw ParseError("'kind' must be a string", line);
                try {
                    gen.kind = parse_generator_kind(g["kind"].get<std::string>());
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), line);
                }
            } else if (gen.degree % 2 != 0 && ring.characteristic() != 2) {
                gen.kind = GeneratorKind::exterior;
            }
            generators.push_back(std::move(gen));
        }
        try {
            return FreeGCA(ring, generators, truncation);
        } catch (const std::invalid_argument& e) {
            // Attribute the error to the first generator it names.
            int line = where.key;
            const std::string what = e.what();
            for (std::size_t k = 0; k < generators.size() && k < where.elements.size(); ++k)
                if (what.find(generators[k].name) != std::string::npos) {
                    line = where.elements[k];
                    break;
                }
            throw ParseError(what, line);
        }
    }
    return FreeGCA::trivial(ring, truncation);
}

json algebra_json(const FreeGCA& a)
{
    json gens = json::array();
    for (const auto& g : a.generators())
        gens.push_back({{"name", g.name}, {"degree", g.degree}, {"kind", std::string(to_string(g.kind))}});
    return {{"ring", a.ring().name()}, {"generators", gens}};
}

// ---- commands ----

ResultEnvelope cmd_thh(const std::string& name, const RunConfig& config)
{
    config.validate();
    std::optional<unsigned> prime;
    if (name == "HZp" || name == "HZ2")
        prime = config.prime;
    const json request{{"operation", "thh"},
                       {"name", name},
                       {"prime", prime ? json(*prime) : json(nullptr)},
                       {"maxDegree", config.max_degree}};
    // Unknown names and missing primes are usage errors even on a cache hit.
    const auto setup = thh_setup(name, prime);
    return run_cached(request, config, [&] {
        const auto r = compute_thh(name, config.max_degree, prime);
        json payload;
        if (const auto* g = std::get_if<GradedAbelianGroup>(&r.value))
            payload = groups_payload(*g, "Z");
        else
            payload = ranks_payload(std::get<PoincareVector>(r.value).ranks, "Z");
        payload["title"] = "THH(" + setup.spectrum.name + ") = " + setup.spectrum.name + " smash BX_+, X = " +
                           setup.base_space + ", BX = " + setup.classifying_name();
        payload["spectrum"] = setup.spectrum.name;
        payload["classifyingSpace"] = setup.classifying_name();
        return payload;
    });
}

HomologyKind parse_homology_kind(const std::string& text)
{
    if (text == "bar")
        return HomologyKind::bar;
    if (text == "cyclic")
        return HomologyKind::cyclic;
    if (text == "tensor-circle")
        return HomologyKind::tensor_circle;
    throw std::invalid_argument("unknown homology kind '" + text + "' (bar, cyclic, tensor-circle)");
}

ResultEnvelope cmd_homology(HomologyKind kind, const FreeGCA& a, int subdivisions, const RunConfig& config)
{
    config.validate();
    if (kind == HomologyKind::tensor_circle && subdivisions < 1)
        throw std::invalid_argument("the circle needs at least one vertex");
    if (a.truncation() < config.max_degree + 1)
        throw std::invalid_argument("algebra truncated below the requested degree");
    const char* names[] = {"bar", "cyclic", "tensor-circle"};
    json request{{"operation", "homology"},
                 {"kind", names[static_cast<int>(kind)]},
                 {"algebra", algebra_json(a)},
                 {"maxDegree", config.max_degree}};
    if (kind == HomologyKind::tensor_circle)
        request["subdivisions"] = subdivisions;
    return run_cached(request, config, [&] {
        const int n = config.max_degree + 1;
        const auto circle = FiniteSimplicialSet::circle_subdivided(kind == HomologyKind::tensor_circle ? subdivisions : 1);
        json payload;
        if (a.ring().is_field()) {
            FieldHomology h;
            switch (kind) {
            case HomologyKind::bar: h = two_sided_bar_homology(a, n); break;
            case HomologyKind::cyclic: h = cyclic_bar_homology(a, n); break;
            case HomologyKind::tensor_circle: h = tensor_homology(a, circle, n); break;
            }
            if (!h.boundary_squares_to_zero)
                throw std::logic_error("boundary does not square to zero");
            payload = ranks_payload(h.ranks, a.ring().name());
        } else {
            ChainComplex c = kind == HomologyKind::bar      ? two_sided_bar(a, n)
                             : kind == HomologyKind::cyclic ? cyclic_bar(a, n)
                                                            : tensor_with_simplicial_set(a, circle, n);
            if (!verify_complex(c))
                throw std::logic_error("boundary does not square to zero");
            payload = groups_payload(homology_all(c), "Z");
        }
        const char* titles[] = {"Tor^A(k, k) from B(k, A, k)", "HH_*(A) from the cyclic bar construction",
                                "homology of A tensor S^1"};
        payload["title"] = std::string(titles[static_cast<int>(kind)]) +
                           (kind == HomologyKind::tensor_circle ? " (" + std::to_string(subdivisions) + " vertices)" : "");
        return payload;
    });
}

ResultEnvelope cmd_models_list()
{
    json rows = json::array();
    for (const auto& m : model_catalogue())
        rows.push_back({{"name", m.name},
                        {"space", m.space},
                        {"rings", m.rings},
                        {"description", m.description},
                        {"deloopingOf", m.delooping_of ? json(*m.delooping_of) : json(nullptr)},
                        {"groupLike", m.group_like}});
    ResultEnvelope e;
    e.input_digest = request_digest({{"operation", "models list"}});
    e.payload = {{"kind", "models"}, {"rows", rows}};
    return e;
}

ResultEnvelope cmd_models_show(const std::string& name, const RunConfig& config)
{
    config.validate();
    const auto& info = model_info(name);
    const auto ring = config.prime ? CoefficientRing::prime_field(*config.prime) : CoefficientRing::integers();
    const json request{{"operation", "models show"}, {"name", name}, {"ring", ring.name()}, {"maxDegree", config.max_degree}};
    return run_cached(request, config, [&] {
        const auto presentation = model(name, ring, config.max_degree);
        json payload;
        if (const auto* g = std::get_if<GradedAbelianGroup>(&presentation)) {
            payload = groups_payload(*g, ring.name());
            payload["presentation"] = "groups";
        } else {
            const auto& a = std::get<FreeGCA>(presentation);
            payload = ranks_payload(poincare_series(a, config.max_degree).ranks, ring.name());
            payload["presentation"] = "algebra";
            payload["algebra"] = algebra_json(a);
        }
        payload["kind"] = "model";
        payload["title"] = "H_*(" + info.space + "; " + ring.name() + ")";
        payload["name"] = info.name;
        payload["space"] = info.space;
        payload["description"] = info.description;
        payload["deloopingOf"] = info.delooping_of ? json(*info.delooping_of) : json(nullptr);
        return payload;
    });
}

// ---- verification suites ----

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json VerifyReport::to_json() const
{
    json list = json::array();
    json failures = json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed)
            failures.push_back({{"name", c.name}, {"detail", c.detail}});
    }
    return {{"schemaVersion", kSchemaVersion}, {"toolVersion", kToolVersion}, {"suite", suite},
            {"passed", passed()},              {"checks", list},              {"failures", failures},
            {"counts", counts}};
}

std::string VerifyReport::render(OutputFormat format) const
{
    if (format == OutputFormat::json)
        return to_json().dump(2) + "\n";
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "check,status,detail\n";
        for (const auto& c : checks)
            os << csv_field(c.name) << ',' << (c.passed ? "PASS" : "FAIL") << ',' << csv_field(c.detail) << '\n';
        return os.str();
    }
    std::size_t failed = 0;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
        failed += !c.passed;
    }
    for (const auto& [key, value] : counts.items())
        os << "# " << key << ": " << value.dump() << '\n';
    os << "verify " << suite << ": " << checks.size() << " checks, " << failed << " failed\n";
    return os.str();
}

namespace {

std::string ranks_text(const std::vector<std::uint64_t>& r)
{
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i)
        s += (i ? "," : "") + std::to_string(r[i]);
    return s + "]";
}

template <class F>
void run_check(VerifyReport& report, const std::string& name, F body)
{
    CheckResult c{name, true, ""};
    try {
        body(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
}

void verify_splitting(VerifyReport& report)
{
    for (const auto& [name, a] : builtin_algebra_suite(12))
        run_check(report, "splitting_tensor_check " + name + " (degrees < 10)", [&](CheckResult& c) {
            const auto r = splitting_tensor_check(a, 10);
            c.passed = r.passed;
            c.detail = r.passed ? ranks_text(r.computed) : r.detail;
        });
    for (const auto& [a, h] : builtin_factorization_suite(10))
        run_check(report, "bar_factorization_check " + a.name + " | " + h.name + " (degrees < 8)",
                  [&](CheckResult& c) {
                      const auto r = bar_factorization_check(a.algebra, h.algebra, 8);
                      c.passed = r.passed;
                      c.detail = r.passed ? ranks_text(r.computed) : r.detail;
                  });
    run_check(report, "Tor over H_*(Omega^2 S^3; F2) is 1 in even degrees < 15", [](CheckResult& c) {
        const auto a = std::get<FreeGCA>(model("loops2_S3", CoefficientRing::prime_field(2), 15));
        const auto tor = two_sided_bar_homology(a, 15);
        for (int n = 0; n < 15; ++n)
            c.passed = c.passed && tor.ranks[n] == (n % 2 == 0 ? 1u : 0u);
        c.passed = c.passed && tor.boundary_squares_to_zero;
        c.detail = ranks_text(tor.ranks);
    });
    run_check(report, "THH(HZ) mod p agrees with the mod p Gysin sequence (p = 2, 3, 5; N <= 20)",
              [](CheckResult& c) {
                  const auto gamma = EvenCohomologyRing::divided_power(2);
                  for (unsigned p : {2u, 3u, 5u})
                      for (int n = 1; n <= 20 && c.passed; ++n) {
                          const auto z = std::get<GradedAbelianGroup>(compute_thh("HZ", n).value);
                          if (universal_coefficients_mod_p(z, p).ranks !=
                              circle_bundle_homology_mod_p(gamma, Integer(1), n, p).ranks) {
                              c.passed = false;
                              c.detail = "p = " + std::to_string(p) + ", N = " + std::to_string(n);
                          }
                      }
              });
    run_check(report, "thh_em over a point BX is the coefficient group", [](CheckResult& c) {
        for (const auto& ring : {CoefficientRing::integers(), CoefficientRing::prime_field(2),
                                 CoefficientRing::prime_field(3)}) {
            const ThomSetup unit{SpectrumDescriptor::eilenberg_mac_lane("H", ring), "point", std::string("point")};
            const auto g = thh_em(unit, 6);
            const AbelianGroup expected =
                ring.is_integers() ? AbelianGroup{1, {}} : AbelianGroup{0, {Integer(ring.characteristic())}};
            c.passed = c.passed && g.degrees[0] == expected;
            for (int n = 1; n <= 6; ++n)
                c.passed = c.passed && g.degrees[n].is_zero();
        }
    });
}

void verify_bars(VerifyReport& report, const VerifyOptions& options)
{
    const BarOptions bar{options.flip_cyclic_last_face_sign};
    constexpr int kAssembled = 8;
    constexpr int kBlocked = 10;
    for (const auto& [name, a] : builtin_algebra_suite(12)) {
        run_check(report, "d^2 = 0 on the assembled complexes of " + name, [&](CheckResult& c) {
            const std::pair<const char*, ChainComplex> complexes[] = {
                {"bar", two_sided_bar(a, kAssembled)},
                {"cyclic", cyclic_bar(a, kAssembled, bar)},
                {"tensor S^1 (2 vertices)",
                 tensor_with_simplicial_set(a, FiniteSimplicialSet::circle_subdivided(2), kAssembled)},
            };
            for (const auto& [which, complex] : complexes)
                if (!verify_complex(complex)) {
                    c.passed = false;
                    c.detail += std::string(c.detail.empty() ? "" : ", ") + which;
                }
        });
        run_check(report, "cyclic bar homology equals A tensor S^1 for " + name + " (degrees < 10)",
                  [&](CheckResult& c) {
                      const auto hh = cyclic_bar_homology(a, kBlocked, bar);
                      c.passed = hh.boundary_squares_to_zero;
                      if (!c.passed)
                          c.detail = "cyclic boundary does not square to zero";
                      for (int v : {2, 3}) {
                          const auto t = tensor_homology(a, FiniteSimplicialSet::circle_subdivided(v), kBlocked);
                          if (t.ranks != hh.ranks || !t.boundary_squares_to_zero) {
                              c.passed = false;
                              c.detail = "v = " + std::to_string(v) + ": cyclic " + ranks_text(hh.ranks) +
                                         ", tensor " + ranks_text(t.ranks);
                          }
                      }
                      if (c.passed)
                          c.detail = ranks_text(hh.ranks);
                  });
        run_check(report, "assembled and blocked cyclic homology agree for " + name, [&](CheckResult& c) {
            const auto assembled = homology_ranks(cyclic_bar(a, kAssembled, bar)).ranks;
            const auto blocked = cyclic_bar_homology(a, kAssembled, bar).ranks;
            c.passed = assembled == blocked;
            if (!c.passed)
                c.detail = "assembled " + ranks_text(assembled) + ", blocked " + ranks_text(blocked);
        });
    }
}

void verify_monadic(VerifyReport& report, const VerifyOptions& options)
{
    std::vector<SuiteEntry> suite;
    std::string source = "generated suite";
    if (options.monadic_suite) {
        std::ifstream in(*options.monadic_suite);
        if (!in)
            throw std::invalid_argument("cannot open diagram suite " + options.monadic_suite->string());
        suite = parse_diagram_suite(in);
        source = options.monadic_suite->string();
    } else {
        suite = generate_diagram_suite();
    }
    const auto r = verify_monadic_suite(suite);
    CheckResult colimits{"colimit_via_coequalizer is isomorphic to colimit_direct (" + source + ")",
                         r.colimit_agreements == r.diagrams,
                         std::to_string(r.colimit_agreements) + "/" + std::to_string(r.diagrams) + " diagrams"};
    CheckResult tensors{"tensor_via_coequalizer is isomorphic to the copower", r.tensor_agreements == r.tensors,
                        std::to_string(r.tensor_agreements) + "/" + std::to_string(r.tensors) + " tensors"};
    CheckResult reflexive{"coequalizer pairs are reflexive (e h = id, f h = id)", true,
                          std::to_string(r.reflexivity_checks) + " pairs"};
    for (const auto& f : r.failures) {
        if (f.find("not reflexive") != std::string::npos)
            reflexive.passed = false;
        auto& target = f.find("tensor") != std::string::npos ? tensors : colimits;
        if (f.find("not reflexive") == std::string::npos)
            target.passed = false;
        target.detail += "; " + f;
    }
    report.checks.push_back(colimits);
    report.checks.push_back(tensors);
    report.checks.push_back(reflexive);
    report.counts["diagrams"] = r.diagrams;
    report.counts["colimitAgreements"] = r.colimit_agreements;
    report.counts["tensors"] = r.tensors;
    report.counts["tensorAgreements"] = r.tensor_agreements;
    report.counts["reflexivityChecks"] = r.reflexivity_checks;
}

}  // namespace

VerifyReport cmd_verify(const std::string& suite, const VerifyOptions& options)
{
    if (suite != "splitting" && suite != "bars" && suite != "monadic" && suite != "all")
        throw std::invalid_argument("unknown suite '" + suite + "' (splitting, bars, monadic, all)");
    VerifyReport report;
    report.suite = suite;
    if (suite == "splitting" || suite == "all")
        verify_splitting(report);
    if (suite == "bars" || suite == "all")
        verify_bars(report, options);
    if (suite == "monadic" || suite == "all")
        verify_monadic(report, options);
    return report;
}

}  // namespace thh::cli
