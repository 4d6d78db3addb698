#include "doctest.h"
#include "oracles.hpp"
#include "random_complexes.hpp"

#include "thh/chain_complex.hpp"
#include "thh/errors.hpp"
#include "thh/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace thh;

namespace {

// gcd of all k x k minors, k = 1..min(r,c), by explicit cofactor expansion.
Integer determinant(const std::vector<std::vector<Integer>>& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Integer>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Integer> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            sub.push_back(row);
        }
        det += (c % 2 ? -1 : 1) * m[0][c] * determinant(sub);
    }
    return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Integer> invariant_factors_by_minors(const std::vector<std::vector<Integer>>& m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Integer> divisors{1};  // D_0 = 1
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        Integer g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<Integer>> sub;
                for (auto i : r) {
                    std::vector<Integer> row;
                    for (auto j : c)
                        row.push_back(m[i][j]);
                    sub.push_back(row);
                }
                g = gcd(g, determinant(sub));
            }
        if (g == 0)
            break;
        divisors.push_back(g);
    }
    std::vector<Integer> out;
    for (std::size_t k = 1; k < divisors.size(); ++k)
        out.push_back(divisors[k] / divisors[k - 1]);
    return out;
}

std::vector<std::vector<Integer>> random_dense(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> v(lo, hi);
    std::vector<std::vector<Integer>> m(r, std::vector<Integer>(c));
    for (auto& row : m)
        for (auto& x : row)
            x = v(rng);
    return m;
}

}  // namespace

TEST_CASE("smith_normal_form examples")
{
    CHECK(smith_normal_form(SparseMatrix(3, 4)).empty());
    CHECK(smith_normal_form(SparseMatrix::from_dense({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
    CHECK(smith_normal_form(SparseMatrix::identity(5)) == std::vector<Integer>(5, 1));
    CHECK(smith_normal_form(SparseMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) ==
          std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith_normal_form agrees with determinantal divisors")
{
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = random_dense(rng, dim(rng), dim(rng), -6, 6);
        CHECK(smith_normal_form(SparseMatrix::from_dense(m)) == invariant_factors_by_minors(m));
    }
}

TEST_CASE("smith_normal_form is invariant under row and column permutations")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        const auto m = SparseMatrix::from_dense(random_dense(rng, r, c, -9, 9));
        std::vector<std::size_t> pr(r), pc(c);
        std::iota(pr.begin(), pr.end(), 0);
        std::iota(pc.begin(), pc.end(), 0);
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        CHECK(smith_normal_form(m) == smith_normal_form(m.permuted(pr, pc)));
    }
}

TEST_CASE("dense and sparse rank mod p agree with the oracle")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> dim(1, 12), zero(0, 3);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t r = dim(rng), c = dim(rng);
            auto m = random_dense(rng, r, c, -4, 4);
            std::vector<std::vector<long long>> ll(r, std::vector<long long>(c));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    if (zero(rng) != 0)
                        m[i][j] = 0;  // mostly sparse
                    ll[i][j] = m[i][j].get_si();
                }
            const auto sm = SparseMatrix::from_dense(m);
            const auto expected = oracle::rank_mod_p(ll, p);
            CHECK(rank_mod_p_dense(sm, p) == expected);
            CHECK(rank_mod_p_sparse(sm, p) == expected);
            CHECK(rank_mod_p(sm, p) == expected);
        }
    }
}

TEST_CASE("verify_complex")
{
    const auto Z = CoefficientRing::integers();
    SUBCASE("identity squared is not zero")
    {
        std::vector<SparseMatrix> d(3);
        d[1] = SparseMatrix::identity(1);
        d[2] = SparseMatrix::identity(1);
        CHECK_FALSE(verify_complex(ChainComplex(Z, {1, 1, 1}, d, false)));
    }
    SUBCASE("empty complex")
    {
        CHECK(verify_complex(ChainComplex(Z, {}, {}, false)));
    }
    SUBCASE("mod-p vanishing counts")
    {
        std::vector<SparseMatrix> d(3);
        d[1] = SparseMatrix::from_dense({{2}});
        d[2] = SparseMatrix::from_dense({{1}});
        CHECK_FALSE(verify_complex(ChainComplex(Z, {1, 1, 1}, d, false)));
        CHECK(verify_complex(ChainComplex(CoefficientRing::prime_field(2), {1, 1, 1}, d, false)));
    }
    SUBCASE("shape mismatch is rejected at construction")
    {
        std::vector<SparseMatrix> d(2);
        d[1] = SparseMatrix(2, 1);
        CHECK_THROWS_AS(ChainComplex(Z, {1, 1}, d, false), std::invalid_argument);
    }
}

TEST_CASE("homology examples")
{
    const auto Z = CoefficientRing::integers();
    SUBCASE("zero differentials")
    {
        ChainComplex c(Z, {1, 2, 3}, {}, false);
        CHECK(homology(c, 0).free_rank == 1);
        CHECK(homology(c, 1).free_rank == 2);
        CHECK(homology(c, 2).free_rank == 3);
        CHECK(homology(c, 3).is_zero());
    }
    SUBCASE("one-step complex Z --k--> Z")
    {
        for (int k : {2, 3, 12}) {
            std::vector<SparseMatrix> d(3);
            d[2] = SparseMatrix::from_dense({{k}});
            ChainComplex c(Z, {0, 1, 1}, d, false);
            CHECK(homology(c, 2).is_zero());
            CHECK(homology(c, 1) == AbelianGroup{0, {Integer(k)}});
        }
    }
    SUBCASE("truncation boundary is refused")
    {
        ChainComplex c(Z, {1, 0, 1}, {}, true);
        CHECK(homology(c, 1).is_zero());
        CHECK_THROWS_AS(homology(c, 2), TruncationError);
        CHECK(homology_all(c).degrees.size() == 2);
    }
}

TEST_CASE("abelian group normal form")
{
    CHECK(make_abelian_group(1, {Integer(2), Integer(3)}) == AbelianGroup{1, {Integer(6)}});
    CHECK(make_abelian_group(0, {Integer(4), Integer(6), Integer(1)}) == AbelianGroup{0, {Integer(2), Integer(12)}});
    CHECK(prime_power_decomposition({Integer(12)}) == std::vector<Integer>{3, 4});
    CHECK(make_abelian_group(2, {Integer(2), Integer(4)}).format() == "Z^2 + Z/2 + Z/4");
}

TEST_CASE("random complexes with known homology")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        auto [c, expected] = testing::random_known_complex(rng, 4, 7);
        REQUIRE(verify_complex(c));
        CHECK(homology_all(c) == expected);
    }
}

TEST_CASE("Euler characteristic over F_p")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto [c, h] = testing::random_known_complex(rng, 5, 8);
        for (unsigned p : {2u, 3u}) {
            const auto cp = reduce_mod_p(c, p);
            long long chi_h = 0, chi_c = 0;
            for (int n = 0; n <= cp.top_degree(); ++n) {
                const long long s = n % 2 ? -1 : 1;
                chi_h += s * static_cast<long long>(homology(cp, n).free_rank);
                chi_c += s * static_cast<long long>(cp.rank(n));
            }
            CHECK(chi_h == chi_c);
        }
    }
}

TEST_CASE("integral and mod-p homology satisfy the universal coefficient relation")
{
    std::mt19937 rng(4242);
    auto divisible = [](const std::vector<Integer>& t, unsigned p) {
        return static_cast<std::uint64_t>(std::count_if(t.begin(), t.end(), [p](const Integer& x) {
            return mpz_divisible_ui_p(x.get_mpz_t(), p) != 0;
        }));
    };
    for (int trial = 0; trial < 30; ++trial) {
        auto [c, h] = testing::random_known_complex(rng, 4, 8);
        for (unsigned p : {2u, 3u, 5u}) {
            const auto cp = reduce_mod_p(c, p);
            for (int n = 0; n <= c.top_degree(); ++n) {
                const auto hz = homology(c, n);
                std::uint64_t expected = hz.free_rank + divisible(hz.torsion, p);
                if (n > 0)
                    expected += divisible(homology(c, n - 1).torsion, p);
                CHECK(homology(cp, n).free_rank == expected);
            }
        }
    }
}

TEST_CASE("plain-text exchange format round trip")
{
    std::mt19937 rng(8);
    auto [c, h] = testing::random_known_complex(rng, 3, 6);
    std::stringstream ss;
    write_complex_text(ss, c);
    const auto back = read_complex_text(ss);
    CHECK(homology_all(back) == homology_all(c));
    for (int n = 1; n <= c.top_degree(); ++n)
        CHECK(back.differential(n) == c.differential(n));

    std::istringstream bad("ring F2\ntruncated 0\nranks 1 1\n1 5 0 1\n");
    CHECK_THROWS_AS(read_complex_text(bad), ParseError);
}
