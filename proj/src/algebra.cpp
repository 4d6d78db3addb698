#include "thh/algebra.hpp"

#include "thh/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace thh {

namespace {

constexpr std::size_t kMaxBasisSize = 4'000'000;

}  // namespace

std::string_view to_string(GeneratorKind kind)
{
    return kind == GeneratorKind::polynomial ? "polynomial" : "exterior";
}

GeneratorKind parse_generator_kind(std::string_view text)
{
    if (text == "polynomial")
        return GeneratorKind::polynomial;
    if (text == "exterior")
        return GeneratorKind::exterior;
    throw std::invalid_argument("unknown generator kind '" + std::string(text) + "'");
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const
{
    if (a.degree != b.degree)
        return a.degree < b.degree;
    return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(), a.exponents.begin(),
                                        a.exponents.end());
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(m.degree);
    for (auto e : m.exponents)
        h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
    return h;
}

struct FreeGCA::Data {
    CoefficientRing ring = CoefficientRing::integers();
    std::vector<Generator> generators;
    int truncation = 0;
    std::vector<std::vector<Monomial>> by_degree;  // graded-lex within each degree
    std::vector<std::uint32_t> offsets;            // offsets[d] = global index of by_degree[d][0]
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> lookup;  // monomial -> global index
};

namespace {

void enumerate(const std::vector<Generator>& gens, std::size_t i, int remaining, std::vector<std::uint32_t>& exps,
               int target, std::vector<Monomial>& out)
{
    if (i == gens.size()) {
        if (remaining == 0)
            out.push_back(Monomial{exps, target});
        return;
    }
    const int d = gens[i].degree;
    int max_e = remaining / d;
    if (gens[i].kind == GeneratorKind::exterior)
        max_e = std::min(max_e, 1);
    for (int e = max_e; e >= 0; --e) {
        exps[i] = static_cast<std::uint32_t>(e);
        enumerate(gens, i + 1, remaining - e * d, exps, target, out);
    }
    exps[i] = 0;
}

}  // namespace

FreeGCA::FreeGCA(CoefficientRing ring, std::vector<Generator> generators, int truncation)
{
    if (truncation < 0)
        throw std::invalid_argument("truncation must be nonnegative");
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (g.name.empty())
            throw std::invalid_argument("generator names must be nonempty");
        if (!names.insert(g.name).second)
            throw std::invalid_argument("duplicate generator name '" + g.name + "'");
        if (g.degree < 1)
            throw std::invalid_argument("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                                        "; degrees must be positive");
        // Away from characteristic 2 odd classes square to zero and even classes
        // cannot be exterior. Over F_2 either kind is allowed.
        if (ring.characteristic() != 2) {
            const bool odd = g.degree % 2 != 0;
            if (odd && g.kind != GeneratorKind::exterior)
                throw std::invalid_argument("odd-degree generator '" + g.name + "' must be exterior over " +
                                            ring.name());
            if (!odd && g.kind != GeneratorKind::polynomial)
                throw std::invalid_argument("even-degree generator '" + g.name + "' must be polynomial over " +
                                            ring.name());
        }
    }

    auto data = std::make_shared<Data>();
    data->ring = ring;
    data->generators = std::move(generators);
    data->truncation = truncation;

    std::vector<std::uint32_t> exps(data->generators.size(), 0);
    std::size_t total = 0;
    for (int d = 0; d <= truncation; ++d) {
        data->offsets.push_back(static_cast<std::uint32_t>(total));
        auto& level = data->by_degree.emplace_back();
        enumerate(data->generators, 0, d, exps, d, level);
        total += level.size();
        if (total > kMaxBasisSize)
            throw SizeLimitError("algebra basis exceeds " + std::to_string(kMaxBasisSize) + " monomials");
    }
    data->offsets.push_back(static_cast<std::uint32_t>(total));
    data->lookup.reserve(total);
    for (int d = 0; d <= truncation; ++d)
        for (std::size_t i = 0; i < data->by_degree[d].size(); ++i)
            data->lookup.emplace(data->by_degree[d][i], data->offsets[d] + static_cast<std::uint32_t>(i));
    d_ = std::move(data);
}

FreeGCA FreeGCA::trivial(CoefficientRing ring, int truncation)
{
    return FreeGCA(ring, {}, truncation);
}

const CoefficientRing& FreeGCA::ring() const { return d_->ring; }
const std::vector<Generator>& FreeGCA::generators() const { return d_->generators; }
int FreeGCA::truncation() const { return d_->truncation; }

int FreeGCA::min_generator_degree() const
{
    int m = d_->truncation + 1;
    for (const auto& g : d_->generators)
        m = std::min(m, g.degree);
    return m;
}

std::optional<std::size_t> FreeGCA::generator_index(std::string_view name) const
{
    for (std::size_t i = 0; i < d_->generators.size(); ++i)
        if (d_->generators[i].name == name)
            return i;
    return std::nullopt;
}

const std::vector<Monomial>& FreeGCA::basis(int degree) const
{
    if (degree < 0 || degree > d_->truncation)
        throw TruncationError("degree " + std::to_string(degree) + " outside [0, " +
                              std::to_string(d_->truncation) + "]");
    return d_->by_degree[degree];
}

std::uint32_t FreeGCA::global_index(const Monomial& m) const
{
    auto it = d_->lookup.find(m);
    if (it == d_->lookup.end())
        throw std::invalid_argument("monomial does not belong to this algebra");
    return it->second;
}

std::size_t FreeGCA::index_in_degree(const Monomial& m) const
{
    return global_index(m) - d_->offsets[m.degree];
}

const Monomial& FreeGCA::monomial_at(std::uint32_t global) const
{
    auto it = std::upper_bound(d_->offsets.begin(), d_->offsets.end(), global);
    const auto degree = static_cast<std::size_t>(it - d_->offsets.begin()) - 1;
    return d_->by_degree.at(degree).at(global - d_->offsets[degree]);
}

std::uint32_t FreeGCA::first_global_index(int degree) const
{
    basis(degree);  // range check
    return d_->offsets[static_cast<std::size_t>(degree)];
}

std::size_t FreeGCA::total_basis_size() const { return d_->offsets.back(); }

Monomial FreeGCA::unit() const
{
    return Monomial{std::vector<std::uint32_t>(d_->generators.size(), 0), 0};
}

Monomial FreeGCA::generator_monomial(std::size_t generator) const
{
    Monomial m = unit();
    m.exponents.at(generator) = 1;
    m.degree = d_->generators[generator].degree;
    return m;
}

std::optional<SignedMonomial> FreeGCA::multiply(const Monomial& a, const Monomial& b) const
{
    const auto& gens = d_->generators;
    const int degree = a.degree + b.degree;
    if (degree > d_->truncation)
        throw TruncationError("product degree " + std::to_string(degree) + " exceeds truncation " +
                              std::to_string(d_->truncation));
    SignedMonomial out;
    out.monomial.degree = degree;
    out.monomial.exponents.resize(gens.size());
    // Moving each odd factor of b left past the odd factors of a with larger index.
    std::uint64_t odd_after = 0;
    std::uint64_t swaps = 0;
    for (std::size_t i = gens.size(); i-- > 0;) {
        const std::uint32_t e = a.exponents[i] + b.exponents[i];
        if (gens[i].kind == GeneratorKind::exterior && e > 1)
            return std::nullopt;
        out.monomial.exponents[i] = e;
        if (gens[i].degree % 2 != 0) {
            swaps += static_cast<std::uint64_t>(b.exponents[i]) * odd_after;
            odd_after += a.exponents[i];
        }
    }
    out.sign = (swaps % 2 == 0) ? 1 : -1;
    return out;
}

std::string FreeGCA::format(const Monomial& m) const
{
    if (m.is_unit())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += d_->generators[i].name;
        if (m.exponents[i] > 1)
            s += '^' + std::to_string(m.exponents[i]);
    }
    return s;
}

bool operator==(const FreeGCA& a, const FreeGCA& b)
{
    if (a.d_ == b.d_)
        return true;
    return a.ring() == b.ring() && a.truncation() == b.truncation() && a.generators() == b.generators();
}

// ---- Element ----

Element::Element(FreeGCA algebra, int degree) : algebra_(std::move(algebra)), degree_(degree)
{
    if (degree < 0 || degree > algebra_.truncation())
        throw TruncationError("element degree " + std::to_string(degree) + " outside [0, " +
                              std::to_string(algebra_.truncation()) + "]");
}

Element Element::from_monomial(const FreeGCA& algebra, const Monomial& m, const Integer& coefficient)
{
    Element e(algebra, m.degree);
    e.add_term(m, coefficient);
    return e;
}

Element Element::generator(const FreeGCA& algebra, std::string_view name)
{
    auto idx = algebra.generator_index(name);
    if (!idx)
        throw std::invalid_argument("no generator named '" + std::string(name) + "'");
    return from_monomial(algebra, algebra.generator_monomial(*idx));
}

Integer Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

void Element::add_term(const Monomial& m, const Integer& coefficient)
{
    if (m.degree != degree_)
        throw std::invalid_argument("term of degree " + std::to_string(m.degree) + " added to element of degree " +
                                    std::to_string(degree_));
    const auto& ring = algebra_.ring();
    auto [it, inserted] = terms_.try_emplace(m, 0);
    it->second = ring.normalize(it->second + coefficient);
    if (ring.is_zero(it->second))
        terms_.erase(it);
}

Element Element::operator+(const Element& other) const
{
    if (!(algebra_ == other.algebra_))
        throw std::invalid_argument("adding elements of different algebras");
    if (degree_ != other.degree_ && !is_zero() && !other.is_zero())
        throw std::invalid_argument("adding elements of different degrees");
    Element out = is_zero() ? Element(algebra_, other.degree_) : *this;
    for (const auto& [m, c] : other.terms_)
        out.add_term(m, c);
    return out;
}

Element Element::operator-() const { return scaled(-1); }

Element Element::operator-(const Element& other) const { return *this + (-other); }

Element Element::scaled(const Integer& c) const
{
    Element out(algebra_, degree_);
    for (const auto& [m, coef] : terms_)
        out.add_term(m, coef * c);
    return out;
}

std::string Element::format() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1 || m.is_unit())
            os << c.get_str() << (m.is_unit() ? "" : "*");
        if (!m.is_unit())
            os << algebra_.format(m);
    }
    return os.str();
}

bool operator==(const Element& a, const Element& b)
{
    if (!(a.algebra_ == b.algebra_))
        return false;
    if (a.is_zero() && b.is_zero())
        return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Element multiply(const Element& a, const Element& b)
{
    if (!(a.algebra() == b.algebra()))
        throw std::invalid_argument("multiplying elements of different algebras");
    const auto& alg = a.algebra();
    const int degree = a.degree() + b.degree();
    if (degree > alg.truncation())
        throw TruncationError("product degree " + std::to_string(degree) + " exceeds truncation " +
                              std::to_string(alg.truncation()));
    Element out(alg, degree);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (auto p = alg.multiply(ma, mb))
                out.add_term(p->monomial, p->sign * ca * cb);
    return out;
}

std::vector<Monomial> monomial_basis(const FreeGCA& algebra, int degree)
{
    return algebra.basis(degree);
}

PoincareVector poincare_series(const FreeGCA& algebra, int max_degree)
{
    if (max_degree > algebra.truncation())
        throw TruncationError("Poincare series to degree " + std::to_string(max_degree) +
                              " requested past truncation " + std::to_string(algebra.truncation()));
    PoincareVector p;
    for (int d = 0; d <= max_degree; ++d)
        p.ranks.push_back(algebra.rank(d));
    return p;
}

PoincareVector convolve(const PoincareVector& a, const PoincareVector& b, int max_degree)
{
    PoincareVector out;
    out.ranks.assign(static_cast<std::size_t>(std::max(max_degree + 1, 0)), 0);
    for (int n = 0; n <= max_degree; ++n)
        for (int i = 0; i <= n; ++i)
            out.ranks[n] += a.at(i) * b.at(n - i);
    return out;
}

FreeGCA tensor_algebras(const FreeGCA& a, const FreeGCA& b)
{
    if (!(a.ring() == b.ring()))
        throw std::invalid_argument("tensor product over different coefficient rings");
    std::vector<Generator> gens = a.generators();
    std::set<std::string> used;
    for (const auto& g : gens)
        used.insert(g.name);
    for (auto g : b.generators()) {
        if (used.count(g.name)) {
            const std::string base = g.name;
            for (int k = 2;; ++k) {
                g.name = base + "_" + std::to_string(k);
                if (!used.count(g.name))
                    break;
            }
        }
        used.insert(g.name);
        gens.push_back(std::move(g));
    }
    return FreeGCA(a.ring(), std::move(gens), std::min(a.truncation(), b.truncation()));
}

std::string format_ranks(const PoincareVector& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.ranks.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p.ranks[i]);
    }
    return s + "]";
}

}  // namespace thh
