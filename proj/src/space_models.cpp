#include "thh/space_models.hpp"

#include "thh/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace thh {

namespace {

Generator poly(std::string name, int degree) { return {std::move(name), degree, GeneratorKind::polynomial}; }
Generator ext(std::string name, int degree) { return {std::move(name), degree, GeneratorKind::exterior}; }

std::invalid_argument unsupported(const std::string& name, const CoefficientRing& ring)
{
    return std::invalid_argument("model " + name + " has no presentation over " + ring.name() + " (available: " +
                                 model_info(name).rings + ")");
}

// Generators of H_*(Omega^2 S^3; F_p). Degrees are those of the dual
// Steenrod algebra generators the evaluation map hits: 2^{n+1}-1 at p = 2,
// 2p^n-1 and 2p^n-2 at odd p. With first = 1 the bottom class x_0 (the
// circle factor split off by the 3-connected cover) is omitted.
std::vector<Generator> double_loop_generators(unsigned p, int max_degree, int first)
{
    std::vector<Generator> gens;
    if (p == 2) {
        for (int n = first;; ++n) {
            const long long d = (2LL << n) - 1;
            if (d > max_degree)
                break;
            gens.push_back(poly("x" + std::to_string(n), static_cast<int>(d)));
        }
        return gens;
    }
    for (int n = 0;; ++n) {
        long long pn = 1;
        for (int i = 0; i < n; ++i)
            pn *= p;
        if (2 * pn - 2 > max_degree)
            break;
        if (n >= 1)
            gens.push_back(poly("bx" + std::to_string(n), static_cast<int>(2 * pn - 2)));
        if (n >= first && 2 * pn - 1 <= max_degree)
            gens.push_back(ext("x" + std::to_string(n), static_cast<int>(2 * pn - 1)));
    }
    return gens;
}

std::vector<Generator> odd_exterior(int max_degree)
{
    // H_*(SU) = Lambda(x_3, x_5, ...): the suspensions of the H_*(BU) generators.
    std::vector<Generator> gens;
    for (int i = 1; 2 * i + 1 <= max_degree; ++i)
        gens.push_back(ext("x" + std::to_string(2 * i + 1), 2 * i + 1));
    return gens;
}

std::vector<Generator> even_polynomial(int max_degree, const std::string& prefix)
{
    std::vector<Generator> gens;
    for (int i = 1; 2 * i <= max_degree; ++i)
        gens.push_back(poly(prefix + std::to_string(2 * i), 2 * i));
    return gens;
}

}  // namespace

const std::vector<SpaceModelInfo>& model_catalogue()
{
    static const std::vector<SpaceModelInfo> catalogue = {
        {"point", "*", "Z, F_p", "ground ring in degree 0", std::nullopt, true},
        {"loops_S3", "Omega S^3", "Z, F_p", "P{x2}", "loops2_S3", true},
        {"loops2_S3", "Omega^2 S^3", "F_p",
         "p=2: P{x_n | n>=0}, |x_n| = 2^(n+1)-1; p odd: E{x_n | n>=0} (x) P{bx_n | n>=1}, |x_n| = 2p^n-1, "
         "|bx_n| = 2p^n-2",
         std::nullopt, true},
        {"loops2_S3_conn3", "Omega^2 S^3<3>", "F_p", "as loops2_S3 without the bottom class x_0", std::nullopt,
         true},
        {"loops_S3_conn3", "Omega S^3<3>", "Z",
         "circle bundle over Omega S^3 with Euler class gamma_1; Z in degree 0, Z/i in degree 2i-1",
         "loops2_S3_conn3", true},
        {"BU", "BU", "Z, F_p", "P{b2, b4, b6, ...}", std::nullopt, true},
        {"SU", "SU", "Z, F_p", "Lambda(x3, x5, x7, ...)", "BU", true},
        {"BBU", "BBU = SU", "Z, F_p", "Lambda(x3, x5, x7, ...)", "BU", true},
        {"MU_coefficients", "MU_*", "Z, F_p", "P{x2, x4, x6, ...}", std::nullopt, true},
    };
    return catalogue;
}

const SpaceModelInfo& model_info(const std::string& name)
{
    for (const auto& m : model_catalogue())
        if (m.name == name)
            return m;
    throw std::invalid_argument("unknown model '" + name + "'");
}

ModelPresentation model(const std::string& name, const CoefficientRing& ring, int max_degree)
{
    model_info(name);
    if (max_degree < 0)
        throw std::invalid_argument("negative truncation degree");
    if (name == "point")
        return FreeGCA::trivial(ring, max_degree);
    if (name == "loops_S3")
        return FreeGCA(ring, max_degree >= 2 ? std::vector<Generator>{poly("x2", 2)} : std::vector<Generator>{},
                       max_degree);
    if (name == "loops2_S3" || name == "loops2_S3_conn3") {
        if (ring.is_integers())
            throw unsupported(name, ring);
        return FreeGCA(ring, double_loop_generators(ring.characteristic(), max_degree, name == "loops2_S3" ? 0 : 1),
                       max_degree);
    }
    if (name == "loops_S3_conn3") {
        if (!ring.is_integers())
            throw unsupported(name, ring);
        return circle_bundle_homology(EvenCohomologyRing::divided_power(2), Integer(1), max_degree + 1);
    }
    if (name == "SU" || name == "BBU")
        return FreeGCA(ring, odd_exterior(max_degree), max_degree);
    if (name == "BU")
        return FreeGCA(ring, even_polynomial(max_degree, "b"), max_degree);
    // MU_coefficients
    return FreeGCA(ring, even_polynomial(max_degree, "x"), max_degree);
}

PoincareVector presentation_ranks(const ModelPresentation& p, int max_degree)
{
    if (const auto* a = std::get_if<FreeGCA>(&p))
        return poincare_series(*a, max_degree);
    const auto& g = std::get<GradedAbelianGroup>(p);
    PoincareVector out;
    for (int n = 0; n <= max_degree; ++n)
        out.ranks.push_back(n <= g.max_degree() ? g.at(n).free_rank : 0);
    return out;
}

// ---- even cohomology rings and the Gysin sequence ----

EvenCohomologyRing::EvenCohomologyRing(int degree, bool divided) : degree_(degree), divided_(divided)
{
    if (degree <= 0 || degree % 2 != 0)
        throw std::invalid_argument("Euler class must have positive even degree, got " + std::to_string(degree));
}

EvenCohomologyRing EvenCohomologyRing::divided_power(int generator_degree)
{
    return EvenCohomologyRing(generator_degree, true);
}

EvenCohomologyRing EvenCohomologyRing::polynomial(int generator_degree)
{
    return EvenCohomologyRing(generator_degree, false);
}

Integer EvenCohomologyRing::product_coefficient(int i, int j) const
{
    if (!divided_)
        return 1;
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(i + j), static_cast<unsigned long>(i));
    return c;
}

std::string EvenCohomologyRing::name() const
{
    return std::string(divided_ ? "Gamma" : "Z") + "[e" + std::to_string(degree_) + "]";
}

namespace {

// Matrix of cup with euler_multiple * e_1 from degree n-d to degree n.
SparseMatrix cup_matrix(const EvenCohomologyRing& base, const Integer& euler, int n)
{
    const int d = base.generator_degree();
    const std::size_t rows = base.rank(n), cols = base.rank(n - d);
    SparseMatrix m(rows, cols);
    if (rows && cols)
        m.add(0, 0, euler * base.product_coefficient(1, n / d - 1));
    return m;
}

}  // namespace

GradedAbelianGroup circle_bundle_homology(const EvenCohomologyRing& base, const Integer& euler_multiple,
                                          int max_degree)
{
    // Gysin: ... -> H^{n-d}(B) -e-> H^n(B) -> H^n(E) -> H^{n-d+1}(B) -e-> H^{n+1}(B) -> ...
    // so H^n(E) = coker(e into degree n) + ker(e out of degree n-d+1); the
    // kernel is free, so the extension splits.
    const int d = base.generator_degree();
    std::vector<AbelianGroup> cohomology;
    for (int n = 0; n <= max_degree; ++n) {
        const auto into = cup_matrix(base, euler_multiple, n);
        const auto factors = smith_normal_form(into);
        std::vector<Integer> torsion;
        for (const auto& f : factors)
            if (f > 1)
                torsion.push_back(f);
        std::uint64_t free_rank = base.rank(n) - factors.size();
        const int src = n - d + 1;
        if (src >= 0) {
            const auto out = cup_matrix(base, euler_multiple, src + d);
            free_rank += base.rank(src) - smith_normal_form(out).size();
        }
        cohomology.push_back(make_abelian_group(free_rank, torsion));
    }
    // H_n has the free part of H^n and the torsion of H^{n+1}.
    GradedAbelianGroup h;
    for (int n = 0; n < max_degree; ++n)
        h.degrees.push_back(make_abelian_group(cohomology[n].free_rank, cohomology[n + 1].torsion));
    return h;
}

PoincareVector circle_bundle_homology_mod_p(const EvenCohomologyRing& base, const Integer& euler_multiple,
                                            int max_degree, unsigned p)
{
    // Over a field the Gysin sequence splits into ranks; homology and
    // cohomology have equal dimensions.
    const int d = base.generator_degree();
    PoincareVector out;
    for (int n = 0; n < max_degree; ++n) {
        const auto into = cup_matrix(base, euler_multiple, n);
        std::uint64_t dim = base.rank(n) - rank_mod_p(into, p);
        const int src = n - d + 1;
        if (src >= 0)
            dim += base.rank(src) - rank_mod_p(cup_matrix(base, euler_multiple, src + d), p);
        out.ranks.push_back(dim);
    }
    return out;
}

PoincareVector universal_coefficients_mod_p(const GradedAbelianGroup& integral, unsigned p)
{
    auto p_torsion = [p](const AbelianGroup& g) {
        return static_cast<std::uint64_t>(std::count_if(g.torsion.begin(), g.torsion.end(), [p](const Integer& t) {
            return mpz_divisible_ui_p(t.get_mpz_t(), p) != 0;
        }));
    };
    PoincareVector out;
    for (int n = 0; n <= integral.max_degree(); ++n) {
        std::uint64_t dim = integral.at(n).free_rank + p_torsion(integral.at(n));
        if (n > 0)
            dim += p_torsion(integral.at(n - 1));
        out.ranks.push_back(dim);
    }
    return out;
}

}  // namespace thh
