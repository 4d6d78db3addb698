#include "doctest.h"
#include "oracles.hpp"

#include "thh/space_models.hpp"

#include <fstream>
#include <sstream>

using namespace thh;
using Ranks = std::vector<std::uint64_t>;

namespace {

const CoefficientRing Z = CoefficientRing::integers();
CoefficientRing F(unsigned p) { return CoefficientRing::prime_field(p); }

Ranks golden_ranks(const std::string& file)
{
    std::ifstream in(std::string(THH_GOLDEN_DIR) + "/models/" + file);
    REQUIRE(in.good());
    std::string tag;
    in >> tag;
    Ranks r;
    for (std::uint64_t x; in >> x;)
        r.push_back(x);
    return r;
}

Ranks ranks_of(const std::string& name, const CoefficientRing& ring, int n)
{
    return presentation_ranks(model(name, ring, n), n).ranks;
}

// Number of partitions of n into parts 2^i - 1, i >= 1.
Ranks dual_steenrod_ranks(int max_degree)
{
    Ranks r(max_degree + 1, 0);
    r[0] = 1;
    for (int part = 1; part <= max_degree; part = 2 * part + 1)
        for (int n = part; n <= max_degree; ++n)
            r[n] += r[n - part];
    return r;
}

}  // namespace

TEST_CASE("catalogue examples")
{
    CHECK(ranks_of("loops_S3", F(2), 8) == Ranks{1, 0, 1, 0, 1, 0, 1, 0, 1});
    CHECK(ranks_of("loops2_S3", F(2), 7) == Ranks{1, 1, 1, 2, 2, 2, 3, 4});
    const auto a = std::get<FreeGCA>(model("loops2_S3", F(2), 7));
    REQUIRE(a.generators().size() == 3);
    CHECK(a.generators()[0].degree == 1);
    CHECK(a.generators()[1].degree == 3);
    CHECK(a.generators()[2].degree == 7);
    CHECK(ranks_of("SU", Z, 8) == Ranks{1, 0, 0, 1, 0, 1, 0, 1, 1});
}

TEST_CASE("catalogue errors")
{
    CHECK_THROWS_AS(model("loops3_S3", F(2), 5), std::invalid_argument);
    CHECK_THROWS_AS(model("loops2_S3", Z, 5), std::invalid_argument);
    CHECK_THROWS_AS(model("loops_S3_conn3", F(3), 5), std::invalid_argument);
    CHECK(model_info("BBU").delooping_of == std::optional<std::string>("BU"));
    CHECK(model_info("loops_S3").delooping_of == std::optional<std::string>("loops2_S3"));
}

TEST_CASE("catalogue matches golden Poincare vectors through degree 20")
{
    const std::vector<std::tuple<std::string, CoefficientRing, std::string>> cases = {
        {"point", F(2), "point_F2.txt"},
        {"loops_S3", Z, "loops_S3_Z.txt"},
        {"loops_S3", F(2), "loops_S3_F2.txt"},
        {"loops_S3", F(3), "loops_S3_F3.txt"},
        {"loops2_S3", F(2), "loops2_S3_F2.txt"},
        {"loops2_S3", F(3), "loops2_S3_F3.txt"},
        {"loops2_S3", F(5), "loops2_S3_F5.txt"},
        {"loops2_S3_conn3", F(2), "loops2_S3_conn3_F2.txt"},
        {"loops2_S3_conn3", F(3), "loops2_S3_conn3_F3.txt"},
        {"BU", Z, "BU_Z.txt"},
        {"SU", Z, "SU_Z.txt"},
        {"SU", F(2), "SU_F2.txt"},
        {"BBU", Z, "BBU_Z.txt"},
        {"MU_coefficients", Z, "MU_coefficients_Z.txt"},
    };
    for (const auto& [name, ring, file] : cases) {
        CAPTURE(name);
        CAPTURE(file);
        CHECK(ranks_of(name, ring, 20) == golden_ranks(file));
    }
}

TEST_CASE("integral Omega S^3<3> matches its golden table")
{
    std::ifstream in(std::string(THH_GOLDEN_DIR) + "/models/loops_S3_conn3_Z.txt");
    REQUIRE(in.good());
    const auto g = std::get<GradedAbelianGroup>(model("loops_S3_conn3", Z, 20));
    REQUIRE(g.max_degree() == 20);
    int n;
    std::string text;
    while (in >> n >> text) {
        CAPTURE(n);
        CHECK(g.at(n).format() == text);
    }
}

TEST_CASE("double loops of S^3 at p = 2 match the dual Steenrod algebra")
{
    CHECK(ranks_of("loops2_S3", F(2), 15) == dual_steenrod_ranks(15));
}

TEST_CASE("every catalogued presentation materializes")
{
    for (const auto& info : model_catalogue())
        for (const auto& ring : {Z, F(2), F(3)}) {
            CAPTURE(info.name);
            const bool listed = info.rings.find(ring.is_integers() ? "Z" : "F_p") != std::string::npos;
            for (int n : {0, 1, 7, 20}) {
                if (listed)
                    CHECK(presentation_ranks(model(info.name, ring, n), n).ranks.size() ==
                          static_cast<std::size_t>(n + 1));
                else
                    CHECK_THROWS_AS(model(info.name, ring, n), std::invalid_argument);
            }
        }
}

TEST_CASE("divided power ring")
{
    const auto g = EvenCohomologyRing::divided_power(2);
    for (int i = 1; i < 12; ++i)
        CHECK(g.product_coefficient(1, i - 1) == i);
    CHECK(g.product_coefficient(2, 3) == 10);
    CHECK(g.product_coefficient(0, 7) == 1);
    CHECK(EvenCohomologyRing::polynomial(4).product_coefficient(3, 5) == 1);
    CHECK_THROWS_AS(EvenCohomologyRing::divided_power(3), std::invalid_argument);
}

TEST_CASE("circle bundle examples")
{
    SUBCASE("trivial bundle doubles the base with a shift")
    {
        const auto base = EvenCohomologyRing::polynomial(2);
        const auto h = circle_bundle_homology(base, Integer(0), 12);
        for (int n = 0; n < 12; ++n)
            CHECK(h.at(n) == AbelianGroup{1, {}});
    }
    SUBCASE("divided powers with Euler class gamma_1")
    {
        const auto h = circle_bundle_homology(EvenCohomologyRing::divided_power(2), Integer(1), 11);
        REQUIRE(h.max_degree() == 10);
        for (int n = 0; n <= 10; ++n) {
            CAPTURE(n);
            if (n == 0)
                CHECK(h.at(n) == AbelianGroup{1, {}});
            else if (n % 2 == 1 && (n + 1) / 2 >= 2)
                CHECK(h.at(n) == AbelianGroup{0, {Integer((n + 1) / 2)}});
            else
                CHECK(h.at(n).is_zero());
        }
    }
    SUBCASE("polynomial base with unit Euler class is contractible")
    {
        for (int d : {2, 4}) {
            const auto h = circle_bundle_homology(EvenCohomologyRing::polynomial(d), Integer(1), 15);
            CHECK(h.at(0) == AbelianGroup{1, {}});
            for (int n = 1; n < 15; ++n)
                CHECK(h.at(n).is_zero());
        }
    }
    SUBCASE("nonunit Euler multiple on a polynomial base")
    {
        const auto h = circle_bundle_homology(EvenCohomologyRing::polynomial(2), Integer(3), 8);
        CHECK(h.at(0) == AbelianGroup{1, {}});
        CHECK(h.at(1) == AbelianGroup{0, {Integer(3)}});
        CHECK(h.at(2).is_zero());
        CHECK(h.at(3) == AbelianGroup{0, {Integer(3)}});
    }
}

TEST_CASE("Gysin over F_p agrees with universal coefficients")
{
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (int euler : {0, 1, 2, 6}) {
            for (const auto& base : {EvenCohomologyRing::divided_power(2), EvenCohomologyRing::polynomial(2),
                                     EvenCohomologyRing::divided_power(4)}) {
                CAPTURE(p);
                CAPTURE(euler);
                const auto integral = circle_bundle_homology(base, Integer(euler), 21);
                CHECK(universal_coefficients_mod_p(integral, p) ==
                      circle_bundle_homology_mod_p(base, Integer(euler), 21, p));
            }
        }
}
