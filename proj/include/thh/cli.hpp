#pragma once

// Library side of the thhcalc command line: configuration, result envelopes,
// rendering, the content-addressed cache and the command bodies.

#include "thh/algebra.hpp"
#include "thh/chain_complex.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace thh::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr int kDefaultMaxDegree = 20;

enum ExitCode : int { exit_ok = 0, exit_property_failure = 1, exit_usage = 2, exit_size_refusal = 3 };

enum class OutputFormat { table, json, csv };
OutputFormat parse_format(const std::string& text);

struct RunConfig {
    std::optional<unsigned> prime;
    int max_degree = kDefaultMaxDegree;
    OutputFormat format = OutputFormat::table;
    std::filesystem::path cache_dir;  // empty: no cache
    bool use_cache = true;
    int verbosity = 0;

    /// Throws SizeLimitError past the hard degree cap, std::invalid_argument
    /// for a negative degree or a non-prime.
    void validate() const;
};

/// THH_CACHE_DIR, else $XDG_CACHE_HOME/thhcalc, else ~/.cache/thhcalc.
std::filesystem::path default_cache_dir();

struct ResultEnvelope {
    int schema_version = kSchemaVersion;
    std::string tool_version = kToolVersion;
    std::string input_digest;
    double wall_time_ms = 0;
    bool cache_hit = false;
    nlohmann::json payload;

    nlohmann::json to_json() const;
};

std::string sha256_hex(const std::string& data);

/// Canonical request text and its digest. The request includes the tool version.
std::string canonical_request(const nlohmann::json& request);
std::string request_digest(const nlohmann::json& request);

/// Payload rows: {"degree", "rank", "torsion"} per degree.
nlohmann::json groups_payload(const GradedAbelianGroup& g, const std::string& ring);
nlohmann::json ranks_payload(const std::vector<std::uint64_t>& ranks, const std::string& ring);

/// Renders an envelope. Tables and CSV show the payload rows; JSON the whole envelope.
std::string render(const ResultEnvelope& e, OutputFormat format);

/// One file per digest; writes go through a temporary file and a rename, and
/// a lock file serializes computations of the same key. Entries whose stored
/// digests do not match are discarded.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);

    std::optional<nlohmann::json> load(const std::string& digest) const;
    void store(const std::string& digest, const nlohmann::json& payload) const;
    std::filesystem::path entry_path(const std::string& digest) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

/// Looks up or computes the payload for a request.
template <class Compute>
ResultEnvelope run_cached(const nlohmann::json& request, const RunConfig& config, Compute compute);

/// Parses a JSON algebra specification:
///   {"ring": "F2", "generators": [{"name": "x", "degree": 2, "kind": "polynomial"}]}
/// "kind" defaults to exterior in odd degree away from F2 and polynomial otherwise.
/// Errors are ParseError with the line of the offending entry.
FreeGCA parse_algebra_spec(const std::string& text, int truncation);

/// Canonical JSON of a presentation, used in request digests.
nlohmann::json algebra_json(const FreeGCA& a);

// ---- commands ----

ResultEnvelope cmd_thh(const std::string& name, const RunConfig& config);

enum class HomologyKind { bar, cyclic, tensor_circle };
HomologyKind parse_homology_kind(const std::string& text);
/// Degrees 0..max_degree. Prime fields use the blocked field computation;
/// over Z the complex is assembled and reduced by Smith normal form.
ResultEnvelope cmd_homology(HomologyKind kind, const FreeGCA& a, int subdivisions, const RunConfig& config);

ResultEnvelope cmd_models_list();
ResultEnvelope cmd_models_show(const std::string& name, const RunConfig& config);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    nlohmann::json counts = nlohmann::json::object();

    bool passed() const;
    nlohmann::json to_json() const;
    std::string render(OutputFormat format) const;
};

struct VerifyOptions {
    bool flip_cyclic_last_face_sign = false;  // hidden fault injection
    std::optional<std::filesystem::path> monadic_suite;  // default: the generated suite
};

/// suite is one of splitting, bars, monadic, all.
VerifyReport cmd_verify(const std::string& suite, const VerifyOptions& options = {});

// ---- implementation of the template ----

nlohmann::json run_cached_impl(const nlohmann::json& request, const RunConfig& config,
                               const std::function<nlohmann::json()>& compute, std::string& digest, bool& hit);

template <class Compute>
ResultEnvelope run_cached(const nlohmann::json& request, const RunConfig& config, Compute compute)
{
    const auto start = std::chrono::steady_clock::now();
    ResultEnvelope e;
    e.payload = run_cached_impl(request, config, std::function<nlohmann::json()>(compute), e.input_digest,
                                e.cache_hit);
    e.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return e;
}

}  // namespace thh::cli
