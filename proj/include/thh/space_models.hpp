#pragma once

// Catalogue of graded homology models of the spaces entering the splitting
// computations, and a Gysin-sequence calculator for sphere bundles over a
// base whose integral cohomology has one even generator.

#include "thh/algebra.hpp"
#include "thh/chain_complex.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace thh {

struct SpaceModelInfo {
    std::string name;
    std::string space;        // conventional notation, e.g. "Omega^2 S^3"
    std::string rings;        // coefficient rings with a presentation
    std::string description;  // generators and degrees
    std::optional<std::string> delooping_of;  // this model is B(delooping_of)
    bool group_like = true;
};

const std::vector<SpaceModelInfo>& model_catalogue();
/// Throws std::invalid_argument for an unknown name.
const SpaceModelInfo& model_info(const std::string& name);

using ModelPresentation = std::variant<FreeGCA, GradedAbelianGroup>;

/// Homology of the named space with coefficients in `ring`, materialized
/// through degree max_degree. Throws std::invalid_argument for an unknown
/// name or a ring the catalogue has no presentation for.
ModelPresentation model(const std::string& name, const CoefficientRing& ring, int max_degree);

/// Ranks per degree (free ranks over Z) of a presentation.
PoincareVector presentation_ranks(const ModelPresentation& p, int max_degree);

/// Torsion-free graded ring with one generator e_1 of even degree d and
/// basis e_i in degree i*d, e_i e_j = c(i, j) e_{i+j}.
class EvenCohomologyRing {
public:
    /// Divided powers: gamma_i gamma_j = binom(i+j, i) gamma_{i+j}.
    static EvenCohomologyRing divided_power(int generator_degree);
    /// Honest polynomial ring: every structure constant is 1.
    static EvenCohomologyRing polynomial(int generator_degree);

    int generator_degree() const { return degree_; }
    bool divided() const { return divided_; }
    std::uint64_t rank(int n) const { return n >= 0 && n % degree_ == 0 ? 1 : 0; }
    Integer product_coefficient(int i, int j) const;
    std::string name() const;

private:
    EvenCohomologyRing(int degree, bool divided);
    int degree_;
    bool divided_;
};

using DividedPowerRing = EvenCohomologyRing;

/// Homology H_0..H_{max_degree-1} of the total space of the sphere bundle
/// with Euler class euler_multiple * e_1. Cup-by-Euler maps are diagonalized
/// by Smith normal form; cokernels and kernels assemble the cohomology of
/// the total space, and universal coefficients turn it into homology.
GradedAbelianGroup circle_bundle_homology(const EvenCohomologyRing& base, const Integer& euler_multiple,
                                          int max_degree);

/// The same bundle with coefficients in F_p, computed from ranks of the
/// cup-by-Euler maps reduced mod p. Degrees 0..max_degree-1.
PoincareVector circle_bundle_homology_mod_p(const EvenCohomologyRing& base, const Integer& euler_multiple,
                                            int max_degree, unsigned p);

/// Dimensions of H_*(X; F_p) from H_*(X; Z) by the universal coefficient
/// theorem; needs degree n-1 for degree n, so the output has the same length.
PoincareVector universal_coefficients_mod_p(const GradedAbelianGroup& integral, unsigned p);

}  // namespace thh
