#include "thh/splitting.hpp"

#include "thh/bar.hpp"
#include "thh/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace thh {

SpectrumDescriptor SpectrumDescriptor::eilenberg_mac_lane(std::string name, CoefficientRing group)
{
    SpectrumDescriptor s;
    s.kind = Kind::eilenberg_mac_lane;
    s.name = std::move(name);
    s.coefficients = group;
    return s;
}

SpectrumDescriptor SpectrumDescriptor::even_torsion_free(std::string name, std::string coefficient_model)
{
    SpectrumDescriptor s;
    s.kind = Kind::even_torsion_free;
    s.name = std::move(name);
    s.coefficient_model = std::move(coefficient_model);
    model_info(s.coefficient_model);
    return s;
}

void ThomSetup::validate() const
{
    model_info(base_space);
    if (const auto* name = std::get_if<std::string>(&classifying_space)) {
        const auto& info = model_info(*name);
        const bool both_points = base_space == "point" && *name == "point";
        if (!both_points && info.delooping_of != base_space)
            throw std::invalid_argument("catalogue does not record " + *name + " as the delooping of " + base_space);
    }
    if (!model_info(base_space).group_like)
        throw std::invalid_argument(base_space + " is not group-like");
}

std::string ThomSetup::classifying_name() const
{
    if (const auto* name = std::get_if<std::string>(&classifying_space))
        return *name;
    return std::get<CircleBundleRecipe>(classifying_space).label;
}

namespace {

GradedAbelianGroup to_groups(const PoincareVector& ranks, const CoefficientRing& ring)
{
    GradedAbelianGroup g;
    for (auto r : ranks.ranks) {
        if (ring.is_integers())
            g.degrees.push_back(AbelianGroup{r, {}});
        else
            g.degrees.push_back(make_abelian_group(0, std::vector<Integer>(r, Integer(ring.characteristic()))));
    }
    return g;
}

void check_cap(int max_degree)
{
    if (max_degree < 0)
        throw std::invalid_argument("negative degree");
    if (max_degree > kHardDegreeCap)
        throw SizeLimitError("degree " + std::to_string(max_degree) + " exceeds the hard cap " +
                             std::to_string(kHardDegreeCap));
}

}  // namespace

GradedAbelianGroup thh_em(const ThomSetup& setup, int max_degree)
{
    if (setup.spectrum.kind != SpectrumDescriptor::Kind::eilenberg_mac_lane)
        throw std::invalid_argument(setup.spectrum.name + " is not an Eilenberg-Mac Lane spectrum");
    setup.validate();
    const auto& ring = setup.spectrum.coefficients;
    if (const auto* recipe = std::get_if<CircleBundleRecipe>(&setup.classifying_space)) {
        const auto integral = circle_bundle_homology(recipe->base, recipe->euler_multiple, max_degree);
        if (ring.is_integers())
            return integral;
        throw std::invalid_argument("BX = " + recipe->label + " is only available with integral coefficients");
    }
    const auto presentation = model(std::get<std::string>(setup.classifying_space), ring, max_degree);
    if (const auto* g = std::get_if<GradedAbelianGroup>(&presentation))
        return *g;
    return to_groups(poincare_series(std::get<FreeGCA>(presentation), max_degree), ring);
}

PoincareVector thh_even_degenerate(const ThomSetup& setup, int max_degree)
{
    if (setup.spectrum.kind != SpectrumDescriptor::Kind::even_torsion_free)
        throw std::invalid_argument(setup.spectrum.name + " does not have even torsion-free coefficients");
    setup.validate();
    const auto Z = CoefficientRing::integers();
    const auto coeffs = model(setup.spectrum.coefficient_model, Z, max_degree);
    const auto* coeff_algebra = std::get_if<FreeGCA>(&coeffs);
    if (!coeff_algebra)
        throw std::invalid_argument("coefficients of " + setup.spectrum.name + " must be a free algebra");
    for (const auto& g : coeff_algebra->generators())
        if (g.degree % 2 != 0 || g.kind != GeneratorKind::polynomial)
            throw std::invalid_argument("coefficients of " + setup.spectrum.name + " are not concentrated in even degrees");

    PoincareVector bx;
    if (const auto* recipe = std::get_if<CircleBundleRecipe>(&setup.classifying_space)) {
        const auto g = circle_bundle_homology(recipe->base, recipe->euler_multiple, max_degree + 1);
        for (const auto& group : g.degrees) {
            if (!group.torsion.empty())
                throw std::invalid_argument("torsion in H_*(" + recipe->label + "; Z) voids the degeneration argument");
            bx.ranks.push_back(group.free_rank);
        }
    } else {
        const auto presentation = model(std::get<std::string>(setup.classifying_space), Z, max_degree);
        if (const auto* g = std::get_if<GradedAbelianGroup>(&presentation)) {
            for (const auto& group : g->degrees)
                if (!group.torsion.empty())
                    throw std::invalid_argument("torsion in H_*(" + setup.classifying_name() +
                                                "; Z) voids the degeneration argument");
        }
        bx = presentation_ranks(presentation, max_degree);
    }
    return convolve(poincare_series(*coeff_algebra, max_degree), bx, max_degree);
}

ThomSetup thh_setup(const std::string& name, std::optional<unsigned> prime)
{
    if (name == "HZ2" || name == "HZp") {
        const unsigned p = name == "HZ2" ? 2 : prime.value_or(0);
        if (name == "HZp" && !prime)
            throw std::invalid_argument("HZp needs a prime");
        if (name == "HZ2" && prime && *prime != 2)
            throw std::invalid_argument("HZ2 is the prime 2; use HZp for other primes");
        return ThomSetup{SpectrumDescriptor::eilenberg_mac_lane(name == "HZ2" ? "HZ/2" : "HZ/" + std::to_string(p),
                                                                CoefficientRing::prime_field(p)),
                         "loops2_S3", std::string("loops_S3")};
    }
    if (name == "HZ")
        return ThomSetup{SpectrumDescriptor::eilenberg_mac_lane("HZ", CoefficientRing::integers()), "loops2_S3_conn3",
                         CircleBundleRecipe{EvenCohomologyRing::divided_power(2), Integer(1), "loops_S3_conn3"}};
    if (name == "MU")
        return ThomSetup{SpectrumDescriptor::even_torsion_free("MU", "MU_coefficients"), "BU", std::string("BBU")};
    throw std::invalid_argument("unknown spectrum '" + name + "' (expected HZ2, HZp, HZ or MU)");
}

ThhResult compute_thh(const std::string& name, int max_degree, std::optional<unsigned> prime)
{
    check_cap(max_degree);
    ThhResult r{name, thh_setup(name, prime), GradedAbelianGroup{}};
    if (r.setup.spectrum.kind == SpectrumDescriptor::Kind::eilenberg_mac_lane)
        r.value = thh_em(r.setup, max_degree);
    else
        r.value = thh_even_degenerate(r.setup, max_degree);
    return r;
}

// ---- algebraic shadows of the splitting ----

namespace {

std::vector<std::uint64_t> head(const PoincareVector& p, int n)
{
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n; ++i)
        out.push_back(p.at(i));
    return out;
}

void describe(RankComparison& r)
{
    std::ostringstream os;
    if (!r.boundaries_ok)
        os << "boundary does not square to zero; ";
    for (std::size_t n = 0; n < std::max(r.computed.size(), r.predicted.size()); ++n) {
        const auto a = n < r.computed.size() ? r.computed[n] : 0;
        const auto b = n < r.predicted.size() ? r.predicted[n] : 0;
        if (a != b) {
            os << "degree " << n << ": computed " << a << ", predicted " << b;
            break;
        }
    }
    r.detail = os.str();
    r.passed = r.boundaries_ok && r.computed == r.predicted;
}

void require_field(const FreeGCA& a)
{
    if (!a.ring().is_field())
        throw std::invalid_argument("rank checks need field coefficients");
}

}  // namespace

RankComparison splitting_tensor_check(const FreeGCA& a, int max_degree)
{
    require_field(a);
    RankComparison r;
    const auto hh = cyclic_bar_homology(a, max_degree);
    const auto tor = two_sided_bar_homology(a, max_degree);
    r.boundaries_ok = hh.boundary_squares_to_zero && tor.boundary_squares_to_zero;
    r.computed = hh.ranks;
    r.predicted = head(convolve(poincare_series(a, max_degree), PoincareVector{tor.ranks}, max_degree), max_degree);
    describe(r);
    return r;
}

RankComparison bar_factorization_check(const FreeGCA& a, const FreeGCA& h, int max_degree)
{
    require_field(a);
    if (!(a.ring() == h.ring()))
        throw std::invalid_argument("A and H must share the coefficient field");
    RankComparison r;
    const auto middle = tensor_algebras(a, h);
    const auto complex = two_sided_bar(a, middle, a, max_degree);
    const auto tor = two_sided_bar_homology(h, max_degree);
    r.boundaries_ok = verify_complex(complex) && tor.boundary_squares_to_zero;
    r.computed = homology_ranks(complex).ranks;
    r.predicted = head(convolve(poincare_series(a, max_degree), PoincareVector{tor.ranks}, max_degree), max_degree);
    describe(r);
    return r;
}

std::vector<NamedAlgebra> builtin_algebra_suite(int truncation)
{
    const auto F = [](unsigned p) { return CoefficientRing::prime_field(p); };
    const auto poly = [](std::string n, int d) { return Generator{std::move(n), d, GeneratorKind::polynomial}; };
    const auto ext = [](std::string n, int d) { return Generator{std::move(n), d, GeneratorKind::exterior}; };
    return {
        {"F2[x2]", FreeGCA(F(2), {poly("x2", 2)}, truncation)},
        {"E(x1)/F3", FreeGCA(F(3), {ext("x1", 1)}, truncation)},
        {"F2[x1](x)F2[x3]", FreeGCA(F(2), {poly("x1", 1), poly("x3", 3)}, truncation)},
        {"E(x3)(x)F5[y2]", FreeGCA(F(5), {ext("x3", 3), poly("y2", 2)}, truncation)},
    };
}

std::vector<std::pair<NamedAlgebra, NamedAlgebra>> builtin_factorization_suite(int truncation)
{
    const auto F = [](unsigned p) { return CoefficientRing::prime_field(p); };
    const auto poly = [](std::string n, int d) { return Generator{std::move(n), d, GeneratorKind::polynomial}; };
    const auto ext = [](std::string n, int d) { return Generator{std::move(n), d, GeneratorKind::exterior}; };
    const NamedAlgebra f2{"F2", FreeGCA::trivial(F(2), truncation)};
    const NamedAlgebra f2x2{"F2[x2]", FreeGCA(F(2), {poly("x2", 2)}, truncation)};
    const NamedAlgebra e1_f2{"E(e1)/F2", FreeGCA(F(2), {ext("e1", 1)}, truncation)};
    const NamedAlgebra f2y3{"F2[y3]", FreeGCA(F(2), {poly("y3", 3)}, truncation)};
    const NamedAlgebra f2x1{"F2[x1]", FreeGCA(F(2), {poly("x1", 1)}, truncation)};
    const NamedAlgebra e1_f3{"E(x1)/F3", FreeGCA(F(3), {ext("x1", 1)}, truncation)};
    const NamedAlgebra f3y2{"F3[y2]", FreeGCA(F(3), {poly("y2", 2)}, truncation)};
    const NamedAlgebra e3_f5{"E(x3)/F5", FreeGCA(F(5), {ext("x3", 3)}, truncation)};
    const NamedAlgebra f5y2{"F5[y2]", FreeGCA(F(5), {poly("y2", 2)}, truncation)};
    return {
        {f2x2, f2},      // H trivial
        {f2, f2x2},      // A the ground field
        {f2x2, e1_f2},   //
        {f2x1, f2y3},    //
        {e1_f3, f3y2},   //
        {f3y2, e1_f3},   //
        {e3_f5, f5y2},   //
    };
}

}  // namespace thh
