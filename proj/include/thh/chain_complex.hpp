#pragma once

#include "thh/algebra.hpp"
#include "thh/coefficients.hpp"
#include "thh/sparse_matrix.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace thh {

/// A finitely generated abelian group (or F_p-vector space when the torsion
/// list is empty): Z^free_rank + Z/t1 + ... with t1 | t2 | ...
struct AbelianGroup {
    std::uint64_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    /// "0", "Z", "Z^2 + Z/2 + Z/6", ...
    std::string format() const;
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Builds an abelian group from arbitrary cyclic orders; units are dropped and
/// the rest renormalized to an invariant-factor chain.
AbelianGroup make_abelian_group(std::uint64_t free_rank, std::vector<Integer> orders);

/// Elementary divisors: each torsion factor split into prime powers, sorted.
std::vector<Integer> prime_power_decomposition(const std::vector<Integer>& torsion);

/// Entry n is the group in degree n.
struct GradedAbelianGroup {
    std::vector<AbelianGroup> degrees;

    int max_degree() const { return static_cast<int>(degrees.size()) - 1; }
    const AbelianGroup& at(int n) const { return degrees.at(static_cast<std::size_t>(n)); }
    friend bool operator==(const GradedAbelianGroup&, const GradedAbelianGroup&) = default;
};

/// Free chain complex C_0 <- C_1 <- ... <- C_top. When `truncated` is set the
/// complex continues past top with unknown data, so H_top is not computable.
class ChainComplex {
public:
    /// differentials[n] is d_n : C_n -> C_{n-1} (rank_{n-1} x rank_n) for
    /// n = 1..top; differentials[0] is ignored and may be empty.
    ChainComplex(CoefficientRing ring, std::vector<std::size_t> ranks, std::vector<SparseMatrix> differentials,
                 bool truncated, std::vector<std::vector<std::string>> labels = {});

    const CoefficientRing& ring() const { return ring_; }
    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }
    bool truncated() const { return truncated_; }
    std::size_t rank(int n) const;
    /// d_n; a zero matrix of the right shape outside 1..top.
    SparseMatrix differential(int n) const;
    const std::vector<std::string>& labels(int n) const;

    /// Highest degree whose homology is determined by the stored data.
    int max_homology_degree() const { return truncated_ ? top_degree() - 1 : top_degree(); }

private:
    CoefficientRing ring_;
    std::vector<std::size_t> ranks_;
    std::vector<SparseMatrix> differentials_;
    bool truncated_;
    std::vector<std::vector<std::string>> labels_;
};

/// True iff every composite d_{n-1} d_n vanishes (over the complex's ring).
bool verify_complex(const ChainComplex& c);

/// H_n(C). Over F_p the torsion list is empty and free_rank is the dimension.
/// Throws TruncationError at or beyond the truncation boundary.
AbelianGroup homology(const ChainComplex& c, int n);

/// H_0 .. H_{max_homology_degree}.
GradedAbelianGroup homology_all(const ChainComplex& c);

/// Dimensions (over F_p) or free ranks (over Z) of H_0 .. H_{max_homology_degree}.
PoincareVector homology_ranks(const ChainComplex& c);

/// C tensor F_p for an integral complex.
ChainComplex reduce_mod_p(const ChainComplex& c, unsigned p);

/// Plain-text sparse exchange format:
///   ring F2
///   truncated 1
///   ranks r0 r1 ... rtop
///   n row col value        (one line per nonzero entry of d_n)
void write_complex_text(std::ostream& os, const ChainComplex& c);
ChainComplex read_complex_text(std::istream& is);

}  // namespace thh
