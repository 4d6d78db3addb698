#pragma once

// Normalized bar-type complexes of free graded-commutative algebras.
//
// Each construction is a simplicial graded module X_k whose normalized chains
// are totalized by (simplicial degree + internal degree). The internal
// differential is zero, face d_i carries the sign (-1)^i, and permuting
// tensor factors carries the Koszul sign. Everything below total degree N is
// exact; the complexes are marked truncated at N.

#include "thh/algebra.hpp"
#include "thh/chain_complex.hpp"
#include "thh/simplicial_set.hpp"

#include <optional>
#include <string>
#include <vector>

namespace thh {

/// Algebra map sending each generator to a generator of the target or to
/// zero. Images must preserve generator order so no signs arise.
class AlgebraMap {
public:
    AlgebraMap(FreeGCA source, FreeGCA target, std::vector<int> image);

    /// Generators are matched by name; unmatched ones are sent to zero.
    static AlgebraMap by_name(const FreeGCA& source, const FreeGCA& target);
    static AlgebraMap identity(const FreeGCA& a);

    const FreeGCA& source() const { return source_; }
    const FreeGCA& target() const { return target_; }
    bool is_identity() const { return identity_; }
    std::optional<Monomial> apply(const Monomial& m) const;

private:
    FreeGCA source_;
    FreeGCA target_;
    std::vector<int> image_;
    bool identity_ = false;
};

/// Test hook for the mutation check in `verify bars`.
struct BarOptions {
    bool flip_cyclic_last_face_sign = false;
};

/// B(k, A, k): level k is (IA)^{tensor k}; homology is Tor^A(k, k).
ChainComplex two_sided_bar(const FreeGCA& a, int max_degree);

/// B(M, R, N) with R acting on M and N through AlgebraMap::by_name.
/// Level k is M (x) (IR)^{tensor k} (x) N.
ChainComplex two_sided_bar(const FreeGCA& left, const FreeGCA& middle, const FreeGCA& right, int max_degree);

/// Cyclic bar construction with the Hochschild faces written out explicitly;
/// level k is A (x) (IA)^{tensor k}. Homology is HH_*(A).
ChainComplex cyclic_bar(const FreeGCA& a, int max_degree, const BarOptions& options = {});

/// Normalized chains of [k] -> A^{tensor S_k}, faces multiplying the factors
/// that a face of S identifies.
ChainComplex tensor_with_simplicial_set(const FreeGCA& a, const FiniteSimplicialSet& s, int max_degree);

/// Homology over a prime field in degrees 0..max_degree-1, computed one
/// weight (total exponent vector) at a time without assembling the whole
/// complex. Same complexes as above; suited to larger degrees.
struct FieldHomology {
    std::vector<std::uint64_t> ranks;
    bool boundary_squares_to_zero = true;
};

FieldHomology two_sided_bar_homology(const FreeGCA& a, int max_degree);
FieldHomology cyclic_bar_homology(const FreeGCA& a, int max_degree, const BarOptions& options = {});
FieldHomology tensor_homology(const FreeGCA& a, const FiniteSimplicialSet& s, int max_degree);

/// Unnormalized simplicial graded module restricted to one internal degree,
/// with explicit face and degeneracy matrices.
class SimplicialGradedModule {
public:
    SimplicialGradedModule(CoefficientRing ring, std::vector<std::vector<std::string>> labels,
                           std::vector<std::vector<SparseMatrix>> faces,
                           std::vector<std::vector<SparseMatrix>> degeneracies);

    int max_level() const { return static_cast<int>(labels_.size()) - 1; }
    std::size_t rank(int k) const { return labels_.at(k).size(); }
    const std::vector<std::string>& labels(int k) const { return labels_.at(k); }
    /// d_i : X_k -> X_{k-1}
    const SparseMatrix& face(int k, int i) const { return faces_.at(k).at(i); }
    /// s_j : X_k -> X_{k+1}, defined for k < max_level
    const SparseMatrix& degeneracy(int k, int j) const { return degeneracies_.at(k).at(j); }

    /// Every simplicial identity among the stored maps; returns the first
    /// violated identity, or nullopt.
    std::optional<std::string> check_identities() const;

private:
    CoefficientRing ring_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<SparseMatrix>> faces_;
    std::vector<std::vector<SparseMatrix>> degeneracies_;
};

SimplicialGradedModule cyclic_simplicial_module(const FreeGCA& a, int max_level, int internal_degree,
                                                const BarOptions& options = {});
SimplicialGradedModule tensor_simplicial_module(const FreeGCA& a, const FiniteSimplicialSet& s, int max_level,
                                                int internal_degree);

}  // namespace thh
