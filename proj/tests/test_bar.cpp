#include "doctest.h"
#include "bar_oracle.hpp"
#include "oracles.hpp"

#include "thh/bar.hpp"
#include "thh/errors.hpp"

using namespace thh;
using Ranks = std::vector<std::uint64_t>;

namespace {

FreeGCA alg(unsigned p, std::vector<Generator> gens, int truncation = 40)
{
    return FreeGCA(p ? CoefficientRing::prime_field(p) : CoefficientRing::integers(), std::move(gens), truncation);
}

Generator poly(std::string name, int degree) { return {std::move(name), degree, GeneratorKind::polynomial}; }
Generator ext(std::string name, int degree) { return {std::move(name), degree, GeneratorKind::exterior}; }

Ranks ranks(const ChainComplex& c) { return homology_ranks(c).ranks; }

struct Case {
    const char* label;
    FreeGCA a;
    unsigned p;
};

std::vector<Case> small_suite()
{
    return {
        {"F2[x2]", alg(2, {poly("x", 2)}), 2},
        {"F2[x1]", alg(2, {poly("x", 1)}), 2},
        {"E(x1)/F3", alg(3, {ext("x", 1)}), 3},
        {"E(x3)/F5", alg(5, {ext("x", 3)}), 5},
        {"F3[y2]", alg(3, {poly("y", 2)}), 3},
        {"E(x1)F2[y2]", alg(2, {ext("x", 1), poly("y", 2)}), 2},
        {"E(x1)F3[y2]", alg(3, {ext("x", 1), poly("y", 2)}), 3},
        {"E(x1,x3)/F3", alg(3, {ext("x", 1), ext("z", 3)}), 3},
    };
}

}  // namespace

TEST_CASE("two-sided bar examples")
{
    CHECK(ranks(two_sided_bar(FreeGCA::trivial(CoefficientRing::prime_field(2), 8), 6)) == Ranks{1, 0, 0, 0, 0, 0});
    CHECK(ranks(two_sided_bar(alg(2, {poly("x", 2)}), 10)) == Ranks{1, 0, 0, 1, 0, 0, 0, 0, 0, 0});
    CHECK(ranks(two_sided_bar(alg(3, {ext("x", 1)}), 7)) == Ranks{1, 0, 1, 0, 1, 0, 1});
    CHECK_THROWS_AS(two_sided_bar(alg(2, {poly("x", 2)}, 5), 8), TruncationError);
}

TEST_CASE("cyclic bar examples")
{
    CHECK(ranks(cyclic_bar(FreeGCA::trivial(CoefficientRing::prime_field(3), 8), 5)) == Ranks{1, 0, 0, 0, 0});
    CHECK(ranks(cyclic_bar(alg(2, {poly("x", 2)}), 7)) == Ranks{1, 0, 1, 1, 1, 1, 1});
    const auto e3 = ranks(cyclic_bar(alg(5, {ext("x", 3)}), 9));
    CHECK(e3[0] == 1);
    CHECK(e3[1] == 0);
    CHECK(e3[2] == 0);
    CHECK(e3[3] == 1);
}

TEST_CASE("normalized complexes agree with the unnormalized oracle")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        const int n = c.a.min_generator_degree() == 1 ? 6 : 8;
        CHECK(ranks(two_sided_bar(c.a, n)) == oracle::tor_ranks(c.a, n, c.p));
        CHECK(ranks(cyclic_bar(c.a, n)) == oracle::hochschild_ranks(c.a, n, c.p));
    }
}

TEST_CASE("integral bar complexes agree with the unnormalized oracle mod p")
{
    const auto a = alg(0, {ext("x", 1), poly("y", 2)});
    const auto c = cyclic_bar(a, 6);
    REQUIRE(verify_complex(c));
    for (unsigned p : {2u, 3u})
        CHECK(ranks(reduce_mod_p(c, p)) ==
              oracle::hochschild_ranks(FreeGCA(CoefficientRing::prime_field(p), a.generators(), 40), 6, p));
}

TEST_CASE("every emitted complex squares to zero")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        CHECK(verify_complex(two_sided_bar(c.a, 9)));
        CHECK(verify_complex(cyclic_bar(c.a, 9)));
        for (int v : {2, 3})
            CHECK(verify_complex(tensor_with_simplicial_set(c.a, FiniteSimplicialSet::circle_subdivided(v), 8)));
        CHECK(verify_complex(tensor_with_simplicial_set(c.a, FiniteSimplicialSet::interval(), 8)));
    }
}

TEST_CASE("tensor with a point is the algebra itself")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        const auto pv = poincare_series(c.a, 7).ranks;
        CHECK(ranks(tensor_with_simplicial_set(c.a, FiniteSimplicialSet::point(), 8)) ==
              Ranks(pv.begin(), pv.end()));
        // The interval is contractible.
        CHECK(ranks(tensor_with_simplicial_set(c.a, FiniteSimplicialSet::interval(), 8)) ==
              Ranks(pv.begin(), pv.end()));
    }
}

TEST_CASE("tensor with the circle matches the cyclic bar construction")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        const int n = c.a.min_generator_degree() == 1 ? 7 : 9;
        const auto cyc = cyclic_bar(c.a, n);
        const auto std_circle = tensor_with_simplicial_set(c.a, FiniteSimplicialSet::circle_standard(), n);
        for (int k = 0; k <= cyc.top_degree(); ++k)
            CHECK(std_circle.rank(k) == cyc.rank(k));
        CHECK(ranks(std_circle) == ranks(cyc));
        for (int v : {2, 3, 4})
            CHECK(ranks(tensor_with_simplicial_set(c.a, FiniteSimplicialSet::circle_subdivided(v), n)) ==
                  ranks(cyc));
    }
}

TEST_CASE("Kunneth for Tor over F_p")
{
    const std::vector<std::pair<FreeGCA, FreeGCA>> pairs = {
        {alg(2, {poly("x", 2)}), alg(2, {poly("y", 3)})},
        {alg(3, {ext("x", 1)}), alg(3, {poly("y", 2)})},
        {alg(2, {poly("x", 1)}), alg(2, {ext("y", 3)})},
    };
    for (const auto& [a, b] : pairs) {
        const int n = 9;
        const auto ta = ranks(two_sided_bar(a, n)), tb = ranks(two_sided_bar(b, n));
        CHECK(ranks(two_sided_bar(tensor_algebras(a, b), n)) == oracle::convolution(ta, tb, n - 1));
    }
}

TEST_CASE("Hochschild homology is A tensor Tor")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        const int n = 9;
        const auto pv = poincare_series(c.a, n - 1).ranks;
        CHECK(ranks(cyclic_bar(c.a, n)) ==
              oracle::convolution(Ranks(pv.begin(), pv.end()), ranks(two_sided_bar(c.a, n)), n - 1));
    }
}

TEST_CASE("two-sided bar with coefficients")
{
    const auto a = alg(2, {poly("x", 2)});
    const auto h = alg(2, {ext("e", 1)});
    const auto ah = tensor_algebras(a, h);
    // B(A, A(x)H, A) through the projection onto A.
    const auto pv = poincare_series(a, 6).ranks;
    CHECK(ranks(two_sided_bar(a, ah, a, 7)) ==
          oracle::convolution(Ranks(pv.begin(), pv.end()), ranks(two_sided_bar(h, 7)), 6));
    // B(A, A, A) is contractible onto A.
    CHECK(ranks(two_sided_bar(a, a, a, 7)) == Ranks(pv.begin(), pv.end()));
    CHECK(verify_complex(two_sided_bar(a, ah, a, 7)));
}

TEST_CASE("simplicial identities of the unnormalized modules")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        for (int deg = 0; deg <= 4; ++deg) {
            CHECK_FALSE(cyclic_simplicial_module(c.a, 4, deg).check_identities().has_value());
            for (int v : {1, 2, 3})
                CHECK_FALSE(tensor_simplicial_module(c.a, FiniteSimplicialSet::circle_subdivided(v), 3, deg)
                                .check_identities()
                                .has_value());
        }
    }
}

TEST_CASE("flipping the sign of the cyclic last face is detected")
{
    const auto a = alg(3, {ext("x", 1)});
    BarOptions broken;
    broken.flip_cyclic_last_face_sign = true;
    const auto bad = cyclic_bar(a, 6, broken);
    const bool detected = !verify_complex(bad) || ranks(bad) != ranks(cyclic_bar(a, 6));
    CHECK(detected);
    CHECK(cyclic_simplicial_module(a, 3, 2, broken).check_identities().has_value());
}

TEST_CASE("basis labels record tensor words")
{
    const auto c = cyclic_bar(alg(2, {poly("x", 2)}), 7);
    bool found = false;
    for (const auto& l : c.labels(6))
        found |= l == "1[x|x]";
    CHECK(found);
}

TEST_CASE("blocked field homology matches the assembled complexes")
{
    for (const auto& c : small_suite()) {
        CAPTURE(c.label);
        const int n = 9;
        const auto tor = two_sided_bar_homology(c.a, n);
        CHECK(tor.boundary_squares_to_zero);
        CHECK(tor.ranks == ranks(two_sided_bar(c.a, n)));
        const auto hh = cyclic_bar_homology(c.a, n);
        CHECK(hh.boundary_squares_to_zero);
        CHECK(hh.ranks == ranks(cyclic_bar(c.a, n)));
        for (int v : {1, 2, 3}) {
            const auto s = FiniteSimplicialSet::circle_subdivided(v);
            const auto t = tensor_homology(c.a, s, n);
            CHECK(t.boundary_squares_to_zero);
            CHECK(t.ranks == ranks(tensor_with_simplicial_set(c.a, s, n)));
        }
    }
    CHECK_THROWS_AS(cyclic_bar_homology(alg(0, {poly("x", 2)}), 5), std::invalid_argument);
}

TEST_CASE("blocked boundary check catches the flipped cyclic face")
{
    BarOptions broken;
    broken.flip_cyclic_last_face_sign = true;
    const auto a = alg(3, {ext("x", 1)});
    const auto bad = cyclic_bar_homology(a, 6, broken);
    CHECK((!bad.boundary_squares_to_zero || bad.ranks != cyclic_bar_homology(a, 6).ranks));
}
