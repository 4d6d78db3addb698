#pragma once

// THH of Thom spectra through the splitting THH(Mf) = Mf smash BX_+: the
// homotopy is read off the homology of the catalogued delooping BX, and the
// algebraic shadows of the splitting are offered as rank-level checks.

#include "thh/algebra.hpp"
#include "thh/chain_complex.hpp"
#include "thh/space_models.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace thh {

/// Largest degree any named computation accepts.
inline constexpr int kHardDegreeCap = 40;

struct SpectrumDescriptor {
    enum class Kind { eilenberg_mac_lane, even_torsion_free };

    Kind kind = Kind::eilenberg_mac_lane;
    std::string name;
    /// Eilenberg-Mac Lane: the coefficient group (Z or Z/p, as the ring Z or F_p).
    CoefficientRing coefficients = CoefficientRing::integers();
    /// Even torsion-free: catalogue model of the coefficient ring, taken over Z.
    std::string coefficient_model;

    static SpectrumDescriptor eilenberg_mac_lane(std::string name, CoefficientRing group);
    static SpectrumDescriptor even_torsion_free(std::string name, std::string coefficient_model);
};

/// BX given as the sphere bundle over a one-generator even base.
struct CircleBundleRecipe {
    EvenCohomologyRing base;
    Integer euler_multiple;
    std::string label;
};

struct ThomSetup {
    SpectrumDescriptor spectrum;
    std::string base_space;  // X, a catalogue name
    std::variant<std::string, CircleBundleRecipe> classifying_space;

    /// Checks the catalogue's delooping relation between X and BX.
    void validate() const;
    std::string classifying_name() const;
};

/// THH_n = H_n(BX; pi_0 Mf). Degrees 0..N for a catalogued BX; degrees
/// 0..N-1 for a circle-bundle recipe, whose homology is exact below N.
GradedAbelianGroup thh_em(const ThomSetup& setup, int max_degree);

/// Ranks of pi_*(Mf) (x) H_*(BX; Z), degrees 0..N. The Atiyah-Hirzebruch
/// spectral sequence collapses because both sides are even or torsion-free;
/// torsion in H_*(BX; Z) voids the argument and is refused.
PoincareVector thh_even_degenerate(const ThomSetup& setup, int max_degree);

/// Setups for HZ2, HZp (with prime), HZ and MU.
ThomSetup thh_setup(const std::string& name, std::optional<unsigned> prime = std::nullopt);

struct ThhResult {
    std::string name;
    ThomSetup setup;
    std::variant<GradedAbelianGroup, PoincareVector> value;
};

/// Dispatches to thh_em or thh_even_degenerate. Throws std::invalid_argument
/// for an unknown name and SizeLimitError past kHardDegreeCap.
ThhResult compute_thh(const std::string& name, int max_degree, std::optional<unsigned> prime = std::nullopt);

struct RankComparison {
    bool passed = false;
    std::vector<std::uint64_t> computed;   // the bar-construction side
    std::vector<std::uint64_t> predicted;  // the convolution side
    bool boundaries_ok = true;
    std::string detail;
};

/// HH_*(A) against A (x) Tor^A(k, k) in degrees < N.
RankComparison splitting_tensor_check(const FreeGCA& a, int max_degree);

/// B(A, A (x) H, A), the middle acting through the projection onto A,
/// against A (x) Tor^H(k, k) in degrees < N.
RankComparison bar_factorization_check(const FreeGCA& a, const FreeGCA& h, int max_degree);

struct NamedAlgebra {
    std::string name;
    FreeGCA algebra;
};

/// Algebras used by the splitting and circle checks.
std::vector<NamedAlgebra> builtin_algebra_suite(int truncation);

/// (A, H) pairs used by the factorization check.
std::vector<std::pair<NamedAlgebra, NamedAlgebra>> builtin_factorization_suite(int truncation);

}  // namespace thh
