#include "doctest.h"

#include "thh/bar.hpp"
#include "thh/errors.hpp"
#include "thh/splitting.hpp"

using namespace thh;
using Ranks = std::vector<std::uint64_t>;

namespace {

CoefficientRing F(unsigned p) { return CoefficientRing::prime_field(p); }

// Partitions of n into even parts.
Ranks even_partitions(int n)
{
    Ranks r(n + 1, 0);
    r[0] = 1;
    for (int part = 2; part <= n; part += 2)
        for (int k = part; k <= n; ++k)
            r[k] += r[k - part];
    return r;
}

// Subsets of {3, 5, 7, ...} by sum.
Ranks odd_subsets(int n)
{
    Ranks r(n + 1, 0);
    r[0] = 1;
    for (int part = 3; part <= n; part += 2)
        for (int k = n; k >= part; --k)
            r[k] += r[k - part];
    return r;
}

Ranks naive_convolution(const Ranks& a, const Ranks& b, int n)
{
    Ranks r(n + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

void check_cyclic_groups(const GradedAbelianGroup& g, const std::vector<long>& orders)
{
    REQUIRE(g.degrees.size() == orders.size());
    for (std::size_t n = 0; n < orders.size(); ++n) {
        CAPTURE(n);
        const auto& a = g.degrees[n];
        if (orders[n] == 0) {
            CHECK(a.free_rank == 1);
            CHECK(a.torsion.empty());
        } else if (orders[n] == 1) {
            CHECK(a.free_rank == 0);
            CHECK(a.torsion.empty());
        } else {
            CHECK(a.free_rank == 0);
            REQUIRE(a.torsion.size() == 1);
            CHECK(a.torsion[0] == orders[n]);
        }
    }
}

}  // namespace

TEST_CASE("thh of HZ/2 is Z/2 in each even degree")
{
    const auto r = compute_thh("HZ2", 10);
    std::vector<long> orders;
    for (int n = 0; n <= 10; ++n)
        orders.push_back(n % 2 == 0 ? 2 : 1);
    check_cyclic_groups(std::get<GradedAbelianGroup>(r.value), orders);
}

TEST_CASE("thh of HZ/3 is Z/3 in each even degree")
{
    const auto g = thh_em(thh_setup("HZp", 3u), 9);
    std::vector<long> orders;
    for (int n = 0; n <= 9; ++n)
        orders.push_back(n % 2 == 0 ? 3 : 1);
    check_cyclic_groups(g, orders);
}

TEST_CASE("thh of HZ has Z/i in degree 2i-1")
{
    const auto r = compute_thh("HZ", 11);
    check_cyclic_groups(std::get<GradedAbelianGroup>(r.value), {0, 1, 1, 2, 1, 3, 1, 4, 1, 5, 1});
    const auto big = std::get<GradedAbelianGroup>(compute_thh("HZ", 21).value);
    REQUIRE(big.degrees.size() == 21);
    for (int i = 2; 2 * i - 1 < 21; ++i)
        CHECK(big.degrees[2 * i - 1].torsion == std::vector<Integer>{Integer(i)});
}

TEST_CASE("thh of MU is MU_* tensored with an exterior algebra")
{
    const auto r = compute_thh("MU", 8);
    const auto& ranks = std::get<PoincareVector>(r.value).ranks;
    CHECK(even_partitions(8) == Ranks{1, 0, 1, 0, 2, 0, 3, 0, 5});
    CHECK(ranks == naive_convolution(even_partitions(8), odd_subsets(8), 8));
    CHECK(std::get<PoincareVector>(compute_thh("MU", 30).value).ranks ==
          naive_convolution(even_partitions(30), odd_subsets(30), 30));
}

TEST_CASE("degenerate cases of the splitting")
{
    const ThomSetup mu_point{SpectrumDescriptor::even_torsion_free("MU", "MU_coefficients"), "point",
                             std::string("point")};
    CHECK(thh_even_degenerate(mu_point, 12).ranks == even_partitions(12));

    const ThomSetup sphere_su{SpectrumDescriptor::even_torsion_free("S", "point"), "BU", std::string("SU")};
    CHECK(thh_even_degenerate(sphere_su, 12).ranks == odd_subsets(12));

    for (const auto& ring : {CoefficientRing::integers(), F(2), F(7)}) {
        const ThomSetup unit{SpectrumDescriptor::eilenberg_mac_lane("H", ring), "point", std::string("point")};
        const auto g = thh_em(unit, 6);
        REQUIRE(g.degrees.size() == 7);
        if (ring.is_integers())
            CHECK(g.degrees[0].free_rank == 1);
        else
            CHECK(g.degrees[0].torsion == std::vector<Integer>{Integer(ring.characteristic())});
        for (int n = 1; n <= 6; ++n)
            CHECK(g.degrees[n].is_zero());
    }
}

TEST_CASE("splitting errors")
{
    CHECK_THROWS_AS(compute_thh("KU", 5), std::invalid_argument);
    CHECK_THROWS_AS(compute_thh("HZp", 5), std::invalid_argument);
    CHECK_THROWS_AS(compute_thh("HZ2", kHardDegreeCap + 1), SizeLimitError);
    // BX with torsion cannot feed the degenerate computation.
    ThomSetup torsion{SpectrumDescriptor::even_torsion_free("MU", "MU_coefficients"), "loops2_S3_conn3",
                      CircleBundleRecipe{EvenCohomologyRing::divided_power(2), Integer(1), "loops_S3_conn3"}};
    CHECK_THROWS_AS(thh_even_degenerate(torsion, 8), std::invalid_argument);
    // Coefficients that are not torsion-free even.
    CHECK_THROWS_AS(SpectrumDescriptor::even_torsion_free("X", "no_such_model"), std::invalid_argument);
    const ThomSetup odd{SpectrumDescriptor::even_torsion_free("X", "SU"), "BU", std::string("BBU")};
    CHECK_THROWS_AS(thh_even_degenerate(odd, 8), std::invalid_argument);
    // BX only catalogued integrally.
    ThomSetup mod_two = thh_setup("HZ");
    mod_two.spectrum.coefficients = F(2);
    CHECK_THROWS_AS(thh_em(mod_two, 8), std::invalid_argument);
    // Unlinked spaces.
    const ThomSetup unlinked{SpectrumDescriptor::eilenberg_mac_lane("H", F(2)), "BU", std::string("loops_S3")};
    CHECK_THROWS_AS(thh_em(unlinked, 8), std::invalid_argument);
}

TEST_CASE("Tor over H_*(Omega^2 S^3; F2) is H_*(Omega S^3; F2)")
{
    const auto a = std::get<FreeGCA>(model("loops2_S3", F(2), 15));
    const auto tor = two_sided_bar_homology(a, 15);
    CHECK(tor.boundary_squares_to_zero);
    for (int n = 0; n < 15; ++n) {
        CAPTURE(n);
        CHECK(tor.ranks[n] == (n % 2 == 0 ? 1u : 0u));
    }
}

TEST_CASE("integral THH(HZ) reduced mod p matches an independent mod p Gysin computation")
{
    const auto gamma = EvenCohomologyRing::divided_power(2);
    for (unsigned p : {2u, 3u, 5u})
        for (int n = 1; n <= 20; ++n) {
            CAPTURE(p);
            CAPTURE(n);
            const auto integral = std::get<GradedAbelianGroup>(compute_thh("HZ", n).value);
            CHECK(universal_coefficients_mod_p(integral, p).ranks ==
                  circle_bundle_homology_mod_p(gamma, Integer(1), n, p).ranks);
        }
}

TEST_CASE("splitting tensor check")
{
    const auto suite = builtin_algebra_suite(20);
    for (const auto& [name, a] : suite) {
        CAPTURE(name);
        const auto r = splitting_tensor_check(a, 10);
        CHECK(r.passed);
        CHECK(r.detail.empty());
        CHECK(r.computed.size() == 10);
    }
    const auto f2x2 = suite[0].algebra;
    CHECK(splitting_tensor_check(f2x2, 8).passed);
    CHECK_THROWS_AS(splitting_tensor_check(FreeGCA(CoefficientRing::integers(),
                                                   {Generator{"x", 2, GeneratorKind::polynomial}}, 10),
                                           6),
                    std::invalid_argument);
}

TEST_CASE("bar factorization check")
{
    for (const auto& [a, h] : builtin_factorization_suite(20)) {
        CAPTURE(a.name);
        CAPTURE(h.name);
        const auto r = bar_factorization_check(a.algebra, h.algebra, 8);
        CHECK(r.passed);
        CHECK(r.detail.empty());
    }
    const auto f2 = FreeGCA::trivial(F(2), 20);
    const auto f2x2 = FreeGCA(F(2), {Generator{"x2", 2, GeneratorKind::polynomial}}, 20);
    // Trivial H: the complex retracts onto A.
    CHECK(bar_factorization_check(f2x2, f2, 8).computed == poincare_series(f2x2, 7).ranks);
    // A the ground field: Tor over H.
    CHECK(bar_factorization_check(f2, f2x2, 8).computed == two_sided_bar_homology(f2x2, 8).ranks);
    CHECK_THROWS_AS(bar_factorization_check(f2x2, FreeGCA::trivial(F(3), 20), 6), std::invalid_argument);
}
