#include "thh/monadic.hpp"

#include "thh/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace thh {

using Element = SemilatticeAlgebra::Element;

// ---- semilattices ----

SemilatticeAlgebra::SemilatticeAlgebra() : labels_{"0"}, table_{0} {}

SemilatticeAlgebra::SemilatticeAlgebra(std::vector<std::string> labels, std::vector<Element> join_table)
    : labels_(std::move(labels)), table_(std::move(join_table))
{
    const std::size_t n = labels_.size();
    if (n == 0)
        throw std::invalid_argument("semilattice carrier must be nonempty");
    if (n > kMaxCarrier)
        throw SizeLimitError("semilattice carrier of " + std::to_string(n) + " elements exceeds " +
                             std::to_string(kMaxCarrier));
    if (table_.size() != n * n)
        throw std::invalid_argument("join table must be " + std::to_string(n) + " x " + std::to_string(n));
    for (auto v : table_)
        if (v >= n)
            throw std::invalid_argument("join table entry out of range");
    for (Element a = 0; a < n; ++a) {
        if (join(a, a) != a)
            throw std::invalid_argument("join is not idempotent at " + labels_[a]);
        for (Element b = 0; b < n; ++b) {
            if (join(a, b) != join(b, a))
                throw std::invalid_argument("join is not commutative at " + labels_[a] + ", " + labels_[b]);
            for (Element c = 0; c < n; ++c)
                if (join(join(a, b), c) != join(a, join(b, c)))
                    throw std::invalid_argument("join is not associative at " + labels_[a] + ", " + labels_[b] +
                                                ", " + labels_[c]);
        }
    }
    find_bottom();
}

SemilatticeAlgebra SemilatticeAlgebra::unchecked(std::vector<std::string> labels, std::vector<Element> join_table)
{
    SemilatticeAlgebra x;
    x.labels_ = std::move(labels);
    x.table_ = std::move(join_table);
    if (x.labels_.empty() || x.table_.size() != x.labels_.size() * x.labels_.size())
        throw std::invalid_argument("join table does not match the carrier");
    x.find_bottom();
    return x;
}

void SemilatticeAlgebra::find_bottom()
{
    const std::size_t n = size();
    bool found = false;
    for (Element a = 0; a < n && !found; ++a) {
        bool least = true;
        for (Element b = 0; b < n && least; ++b)
            least = join(a, b) == b;
        if (least) {
            bottom_ = a;
            found = true;
        }
    }
    if (!found)
        throw std::invalid_argument("semilattice has no least element");
}

std::optional<Element> SemilatticeAlgebra::find(const std::string& label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<Element>(it - labels_.begin());
}

std::vector<int> SemilatticeAlgebra::heights() const
{
    const std::size_t n = size();
    std::vector<std::size_t> below(n, 0);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            below[a] += leq(b, a);
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return below[a] < below[b]; });
    std::vector<int> h(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (order[j] != order[i] && leq(order[j], order[i]))
                h[order[i]] = std::max(h[order[i]], h[order[j]] + 1);
    return h;
}

SemilatticeAlgebra free_semilattice(const std::vector<std::string>& generators)
{
    if (generators.size() > kMaxFreeGenerators)
        throw SizeLimitError("free semilattice on " + std::to_string(generators.size()) + " generators exceeds " +
                             std::to_string(kMaxFreeGenerators));
    if (std::set<std::string>(generators.begin(), generators.end()).size() != generators.size())
        throw std::invalid_argument("free semilattice generators must be distinct");
    const std::size_t n = std::size_t{1} << generators.size();
    std::vector<std::string> labels(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::string l;
        for (std::size_t k = 0; k < generators.size(); ++k)
            if (s >> k & 1)
                l += (l.empty() ? "" : "+") + generators[k];
        labels[s] = l.empty() ? "0" : l;
    }
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = static_cast<Element>(a | b);
    return SemilatticeAlgebra(std::move(labels), std::move(table));
}

SemilatticeAlgebra chain_semilattice(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("chain needs at least one element");
    std::vector<std::string> labels(n);
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = static_cast<Element>(std::max(a, b));
    }
    return SemilatticeAlgebra(std::move(labels), std::move(table));
}

bool preserves_joins(const SemilatticeAlgebra& source, const SemilatticeAlgebra& target,
                     const std::vector<Element>& images)
{
    if (images.size() != source.size())
        return false;
    for (auto v : images)
        if (v >= target.size())
            return false;
    if (images[source.bottom()] != target.bottom())
        return false;
    for (Element a = 0; a < source.size(); ++a)
        for (Element b = a + 1; b < source.size(); ++b)
            if (images[source.join(a, b)] != target.join(images[a], images[b]))
                return false;
    return true;
}

void AlgebraDiagram::validate() const
{
    if (object_names.size() != objects.size())
        throw std::invalid_argument("diagram " + name + ": object names and objects differ in number");
    for (const auto& arrow : arrows) {
        if (arrow.source >= objects.size() || arrow.target >= objects.size())
            throw std::invalid_argument("diagram " + name + ": arrow " + arrow.name + " has an unknown endpoint");
        if (!preserves_joins(objects[arrow.source], objects[arrow.target], arrow.images))
            throw std::invalid_argument("diagram " + name + ": arrow " + arrow.name +
                                        " does not preserve joins and the least element");
    }
}

// ---- the coequalizer of free algebras ----

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t k) { return Mask{1} << k; }

// One summand E R of the source of the pair: the algebra R with the map
// sending each element to its generator in the target E(G).
struct Summand {
    const SemilatticeAlgebra* algebra;
    std::vector<std::size_t> generator_of;
    std::vector<Mask> down;  // elements below each element, as a subset of R
};

// The reflexive pair E(colim_i E R_i) => E(G). A generator of the source is
// (i, T) with T a subset of R_i.
class FreePair {
public:
    FreePair(std::vector<std::string> generator_labels, std::vector<Summand> summands)
        : labels_(std::move(generator_labels)), summands_(std::move(summands))
    {
        if (labels_.size() > kMaxCoequalizerGenerators)
            throw SizeLimitError("coequalizer on " + std::to_string(labels_.size()) + " generators exceeds " +
                                 std::to_string(kMaxCoequalizerGenerators));
        for (auto& s : summands_) {
            const auto& r = *s.algebra;
            if (r.size() > 64)
                throw SizeLimitError("summand with more than 64 elements");
            s.down.assign(r.size(), 0);
            for (Element y = 0; y < r.size(); ++y)
                for (Element z = 0; z < r.size(); ++z)
                    if (r.leq(z, y))
                        s.down[y] |= bit(z);
        }
    }

    std::size_t generators() const { return labels_.size(); }

    // E applied to the structure map: (i, T) goes to the generator of join T.
    Mask e(std::size_t i, Mask t) const
    {
        const auto& s = summands_[i];
        Element j = s.algebra->bottom();
        for (Mask rest = t; rest; rest &= rest - 1)
            j = s.algebra->join(j, static_cast<Element>(std::countr_zero(rest)));
        return bit(s.generator_of[j]);
    }

    // The multiplication after E of the inclusion: (i, T) goes to the union of
    // the generators of its elements.
    Mask f(std::size_t i, Mask t) const
    {
        const auto& s = summands_[i];
        Mask out = 0;
        for (Mask rest = t; rest; rest &= rest - 1)
            out |= bit(s.generator_of[std::countr_zero(rest)]);
        return out;
    }

    // The splitting from the unit: generator g goes to (i, {x}) for a chosen
    // preimage x.
    bool reflexive() const
    {
        std::vector<bool> seen(generators(), false);
        for (std::size_t i = 0; i < summands_.size(); ++i)
            for (Element x = 0; x < summands_[i].algebra->size(); ++x) {
                const auto g = summands_[i].generator_of[x];
                if (e(i, bit(x)) != bit(g) || f(i, bit(x)) != bit(g))
                    return false;
                seen[g] = true;
            }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    // Smallest set containing s that is saturated for e(w) ~ f(w) over all
    // generators w. Within summand i it suffices to test T = the preimage M
    // of s and T = down(y) for y in M: every T inside M joins below join M,
    // and every T joining to y lies in down(y), which itself joins to y.
    Mask closure(Mask s) const
    {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < summands_.size(); ++i) {
                const auto& sm = summands_[i];
                Mask m = 0;
                for (Element x = 0; x < sm.algebra->size(); ++x)
                    if (s & bit(sm.generator_of[x]))
                        m |= bit(x);
                Mask add = e(i, m);
                for (Mask rest = m; rest; rest &= rest - 1)
                    add |= f(i, sm.down[std::countr_zero(rest)]);
                if ((s | add) != s) {
                    s |= add;
                    changed = true;
                }
            }
        }
        return s;
    }

    SemilatticeAlgebra quotient() const
    {
        const std::size_t g = generators();
        std::vector<Mask> singleton(g);
        for (std::size_t b = 0; b < g; ++b)
            singleton[b] = closure(bit(b));

        std::vector<Mask> elements{closure(0)};
        std::unordered_map<Mask, Element> index{{elements[0], 0}};
        for (std::size_t next = 0; next < elements.size(); ++next)
            for (std::size_t b = 0; b < g; ++b) {
                const Mask c = closure(elements[next] | singleton[b]);
                if (index.emplace(c, static_cast<Element>(elements.size())).second) {
                    elements.push_back(c);
                    if (elements.size() > kMaxCarrier)
                        throw SizeLimitError("coequalizer carrier exceeds " + std::to_string(kMaxCarrier));
                }
            }

        const std::size_t n = elements.size();
        // Generators of each element that are maximal under closure.
        std::vector<std::vector<std::size_t>> tops(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t b = 0; b < g; ++b) {
                if (!(elements[k] & bit(b)) || singleton[b] == elements[0])
                    continue;
                bool maximal = true;
                for (std::size_t c = 0; c < g && maximal; ++c) {
                    if (c == b || !(elements[k] & bit(c)))
                        continue;
                    const bool above = (singleton[b] & singleton[c]) == singleton[b];
                    if (above && (singleton[b] != singleton[c] || c < b))
                        maximal = false;
                }
                if (maximal)
                    tops[k].push_back(b);
            }
        std::vector<std::string> labels(n);
        for (std::size_t k = 0; k < n; ++k) {
            for (auto b : tops[k])
                labels[k] += (labels[k].empty() ? "" : "+") + labels_[b];
            if (labels[k].empty())
                labels[k] = "0";
        }

        std::vector<std::vector<Element>> with_generator(n, std::vector<Element>(g));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t b = 0; b < g; ++b)
                with_generator[k][b] = index.at(closure(elements[k] | singleton[b]));
        std::vector<Element> table(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Element j = static_cast<Element>(a);
                for (auto t : tops[b])
                    j = with_generator[j][t];
                table[a * n + b] = j;
            }
        return SemilatticeAlgebra::unchecked(std::move(labels), std::move(table));
    }

private:
    std::vector<std::string> labels_;
    std::vector<Summand> summands_;
};

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

CoequalizerResult colimit_coequalizer(const AlgebraDiagram& d)
{
    d.validate();
    // The colimit in sets: the disjoint union modulo x ~ phi(x).
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const auto& r : d.objects) {
        offset.push_back(total);
        total += r.size();
    }
    UnionFind uf(total);
    for (const auto& a : d.arrows)
        for (Element x = 0; x < d.objects[a.source].size(); ++x)
            uf.unite(offset[a.source] + x, offset[a.target] + a.images[x]);
    std::map<std::size_t, std::size_t> class_of_root;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d.objects.size(); ++i)
        for (Element x = 0; x < d.objects[i].size(); ++x)
            if (class_of_root.emplace(uf.find(offset[i] + x), labels.size()).second)
                labels.push_back(d.object_names[i] + "." + d.objects[i].label(x));
    if (labels.size() > kMaxCoequalizerGenerators)
        throw SizeLimitError("set-level colimit has " + std::to_string(labels.size()) + " elements, more than " +
                             std::to_string(kMaxCoequalizerGenerators));

    std::vector<Summand> summands;
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        Summand s{&d.objects[i], {}, {}};
        for (Element x = 0; x < d.objects[i].size(); ++x)
            s.generator_of.push_back(class_of_root.at(uf.find(offset[i] + x)));
        summands.push_back(std::move(s));
    }
    const FreePair pair(std::move(labels), std::move(summands));
    CoequalizerResult r;
    r.generators = pair.generators();
    r.reflexive = pair.reflexive();
    // The pair must be well defined on the colimit of the E R_i: (i, T) and
    // (j, phi T) have the same images. Pairs of elements generate.
    for (const auto& a : d.arrows) {
        const auto& src = d.objects[a.source];
        for (Element x = 0; x < src.size(); ++x)
            for (Element y = x; y < src.size(); ++y) {
                const Mask t = bit(x) | bit(y);
                const Mask u = bit(a.images[x]) | bit(a.images[y]);
                if (pair.e(a.source, t) != pair.e(a.target, u) || pair.f(a.source, t) != pair.f(a.target, u))
                    r.reflexive = false;
            }
    }
    r.algebra = canonicalize(pair.quotient());
    return r;
}

SemilatticeAlgebra colimit_via_coequalizer(const AlgebraDiagram& d)
{
    auto r = colimit_coequalizer(d);
    if (!r.reflexive)
        throw std::logic_error("coequalizer pair of diagram " + d.name + " is not reflexive");
    return std::move(r.algebra);
}

CoequalizerResult tensor_coequalizer(const SemilatticeAlgebra& x, std::size_t copies)
{
    // X (x) A in sets is X x A; the generator (x, a) sits at x * |A| + a.
    std::vector<std::string> labels;
    for (Element e = 0; e < x.size(); ++e)
        for (std::size_t a = 0; a < copies; ++a)
            labels.push_back(x.label(e) + "@" + std::to_string(a + 1));
    if (labels.size() > kMaxCoequalizerGenerators)
        throw SizeLimitError("copower has " + std::to_string(labels.size()) + " elements, more than " +
                             std::to_string(kMaxCoequalizerGenerators));
    // E X (x) A has one copy of E X per point of A; nu sends (T, a) to T x {a}.
    std::vector<Summand> summands;
    for (std::size_t a = 0; a < copies; ++a) {
        Summand s{&x, {}, {}};
        for (Element e = 0; e < x.size(); ++e)
            s.generator_of.push_back(e * copies + a);
        summands.push_back(std::move(s));
    }
    const FreePair pair(std::move(labels), std::move(summands));
    CoequalizerResult r;
    r.generators = pair.generators();
    r.reflexive = pair.reflexive();
    r.algebra = canonicalize(pair.quotient());
    return r;
}

SemilatticeAlgebra tensor_via_coequalizer(const SemilatticeAlgebra& x, std::size_t copies)
{
    auto r = tensor_coequalizer(x, copies);
    if (!r.reflexive)
        throw std::logic_error("tensor coequalizer pair is not reflexive");
    return std::move(r.algebra);
}

AlgebraDiagram copower_diagram(const SemilatticeAlgebra& x, std::size_t copies)
{
    AlgebraDiagram d;
    d.name = "copower";
    for (std::size_t a = 0; a < copies; ++a) {
        d.object_names.push_back("X" + std::to_string(a + 1));
        d.objects.push_back(x);
    }
    return d;
}

// ---- the congruence oracle ----

SemilatticeAlgebra colimit_direct(const AlgebraDiagram& d)
{
    d.validate();
    const std::size_t k = d.objects.size();
    std::size_t product = 1;
    for (const auto& r : d.objects) {
        product *= r.size();
        if (product > kMaxCarrier)
            throw SizeLimitError("product of carriers exceeds " + std::to_string(kMaxCarrier));
    }
    std::vector<std::size_t> radix(k);
    for (std::size_t i = 0, r = 1; i < k; ++i) {
        radix[i] = r;
        r *= d.objects[i].size();
    }
    const auto component = [&](std::size_t p, std::size_t i) {
        return static_cast<Element>(p / radix[i] % d.objects[i].size());
    };
    const auto join = [&](std::size_t p, std::size_t q) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < k; ++i)
            out += d.objects[i].join(component(p, i), component(q, i)) * radix[i];
        return out;
    };
    std::size_t bottom = 0;
    for (std::size_t i = 0; i < k; ++i)
        bottom += d.objects[i].bottom() * radix[i];
    const auto inject = [&](std::size_t i, Element x) {
        return bottom + (x - d.objects[i].bottom()) * radix[i];
    };

    UnionFind uf(product);
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (const auto& a : d.arrows)
        for (Element x = 0; x < d.objects[a.source].size(); ++x)
            work.emplace_back(inject(a.source, x), inject(a.target, a.images[x]));
    while (!work.empty()) {
        const auto [p, q] = work.back();
        work.pop_back();
        if (!uf.unite(p, q))
            continue;
        for (std::size_t c = 0; c < product; ++c)
            work.emplace_back(join(p, c), join(q, c));
    }

    std::vector<std::size_t> reps;
    std::vector<Element> class_of(product);
    std::map<std::size_t, Element> root_class;
    for (std::size_t p = 0; p < product; ++p) {
        const auto [it, fresh] = root_class.emplace(uf.find(p), static_cast<Element>(reps.size()));
        if (fresh)
            reps.push_back(p);
        class_of[p] = it->second;
    }
    const std::size_t n = reps.size();
    std::vector<std::string> labels(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::string l;
        for (std::size_t i = 0; i < k; ++i) {
            const auto x = component(reps[c], i);
            if (x != d.objects[i].bottom())
                l += (l.empty() ? "" : "+") + d.object_names[i] + "." + d.objects[i].label(x);
        }
        labels[c] = l.empty() ? "0" : l;
    }
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = class_of[join(reps[a], reps[b])];
    return canonicalize(SemilatticeAlgebra::unchecked(std::move(labels), std::move(table)));
}

// ---- isomorphism and canonical form ----

namespace {

struct Invariants {
    std::vector<int> height;
    std::vector<std::size_t> down, up, covers;

    explicit Invariants(const SemilatticeAlgebra& x)
        : height(x.heights()), down(x.size(), 0), up(x.size(), 0), covers(x.size(), 0)
    {
        const std::size_t n = x.size();
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                if (x.leq(a, b)) {
                    ++down[b];
                    ++up[a];
                    if (a != b && height[b] == height[a] + 1)
                        ++covers[b];
                }
    }
    std::tuple<int, std::size_t, std::size_t, std::size_t> key(Element a) const
    {
        return {height[a], down[a], up[a], covers[a]};
    }
};

}  // namespace

SemilatticeAlgebra canonicalize(const SemilatticeAlgebra& x)
{
    const Invariants inv(x);
    const std::size_t n = x.size();
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Element a, Element b) {
        return std::tie(inv.height[a], inv.down[a], inv.up[a], x.label(a)) <
               std::tie(inv.height[b], inv.down[b], inv.up[b], x.label(b));
    });
    std::vector<Element> position(n);
    for (std::size_t i = 0; i < n; ++i)
        position[order[i]] = static_cast<Element>(i);
    std::vector<std::string> labels(n);
    std::vector<Element> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = x.label(order[i]);
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = position[x.join(order[i], order[j])];
    }
    return SemilatticeAlgebra::unchecked(std::move(labels), std::move(table));
}

bool iso_check(const SemilatticeAlgebra& x, const SemilatticeAlgebra& y)
{
    if (x.size() != y.size())
        return false;
    const Invariants ix(x), iy(y);
    const std::size_t n = x.size();
    {
        std::vector<decltype(ix.key(0))> kx, ky;
        for (Element a = 0; a < n; ++a) {
            kx.push_back(ix.key(a));
            ky.push_back(iy.key(a));
        }
        std::sort(kx.begin(), kx.end());
        std::sort(ky.begin(), ky.end());
        if (kx != ky)
            return false;
    }
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Element a, Element b) { return ix.key(a) < ix.key(b); });

    std::vector<std::int64_t> image(n, -1);
    std::vector<bool> used(n, false);
    // An order isomorphism of finite semilattices preserves joins.
    const std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n)
            return true;
        const Element a = order[depth];
        for (Element b = 0; b < n; ++b) {
            if (used[b] || ix.key(a) != iy.key(b))
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k) {
                const Element c = order[k];
                const auto fc = static_cast<Element>(image[c]);
                ok = x.leq(a, c) == y.leq(b, fc) && x.leq(c, a) == y.leq(fc, b);
            }
            if (!ok)
                continue;
            image[a] = b;
            used[b] = true;
            if (extend(depth + 1))
                return true;
            image[a] = -1;
            used[b] = false;
        }
        return false;
    };
    return extend(0);
}

std::vector<std::vector<Element>> semilattice_homs(const SemilatticeAlgebra& source, const SemilatticeAlgebra& target)
{
    const std::size_t n = source.size();
    std::vector<Element> irreducible;
    for (Element a = 0; a < n; ++a) {
        if (a == source.bottom())
            continue;
        bool reducible = false;
        for (Element b = 0; b < n && !reducible; ++b)
            for (Element c = 0; c < n && !reducible; ++c)
                reducible = b != a && c != a && source.join(b, c) == a;
        if (!reducible)
            irreducible.push_back(a);
    }
    std::vector<std::vector<Element>> out;
    std::vector<Element> choice(irreducible.size(), 0);
    while (true) {
        std::vector<Element> images(n, target.bottom());
        for (Element a = 0; a < n; ++a)
            for (std::size_t k = 0; k < irreducible.size(); ++k)
                if (source.leq(irreducible[k], a))
                    images[a] = target.join(images[a], choice[k]);
        if (preserves_joins(source, target, images))
            out.push_back(std::move(images));
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == target.size())
            choice[k++] = 0;
        if (k == choice.size())
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- text format ----

namespace {

struct PendingObject {
    std::string name;
    int line = 0;
    std::optional<SemilatticeAlgebra> algebra;  // free and chain objects
    std::vector<std::string> elements;          // table objects
    std::vector<std::tuple<std::string, std::string, std::string, int>> joins;
};

struct PendingArrow {
    std::string name, source, target;
    std::vector<std::string> images;
    int line = 0;
};

SemilatticeAlgebra build_table(const PendingObject& o)
{
    const std::size_t n = o.elements.size();
    const Element unset = static_cast<Element>(n);
    std::map<std::string, Element> index;
    for (std::size_t i = 0; i < n; ++i)
        if (!index.emplace(o.elements[i], static_cast<Element>(i)).second)
            throw ParseError("duplicate element '" + o.elements[i] + "' in object " + o.name, o.line);
    std::vector<Element> table(n * n, unset);
    const auto set = [&](Element a, Element b, Element v, int line) {
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
            auto& slot = table[p * n + q];
            if (slot != unset && slot != v)
                throw ParseError("conflicting joins for " + o.elements[a] + " and " + o.elements[b], line);
            slot = v;
        }
    };
    for (Element a = 0; a < n; ++a) {
        set(a, a, a, o.line);
        set(0, a, a, o.line);
    }
    for (const auto& [a, b, v, line] : o.joins) {
        for (const auto* s : {&a, &b, &v})
            if (!index.count(*s))
                throw ParseError("unknown element '" + *s + "' in object " + o.name, line);
        set(index[a], index[b], index[v], line);
    }
    // Missing joins are least upper bounds in the order the listed joins generate.
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (table[a * n + b] != unset) {
                leq[a][table[a * n + b]] = true;
                leq[b][table[a * n + b]] = true;
            }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (leq[a][m] && leq[m][b])
                    leq[a][b] = true;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (table[a * n + b] != unset)
                continue;
            std::optional<Element> lub;
            for (Element c = 0; c < n; ++c) {
                if (!leq[a][c] || !leq[b][c])
                    continue;
                bool least = true;
                for (Element d = 0; d < n && least; ++d)
                    least = !(leq[a][d] && leq[b][d]) || leq[c][d];
                if (least)
                    lub = c;
            }
            if (!lub)
                throw ParseError("join of " + o.elements[a] + " and " + o.elements[b] + " unspecified in object " +
                                     o.name,
                                 o.line);
            table[a * n + b] = *lub;
        }
    try {
        return SemilatticeAlgebra(o.elements, std::move(table));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("object ") + o.name + ": " + e.what(), o.line);
    }
}

SuiteEntry finish_diagram(const std::string& name, std::vector<PendingObject>& objects,
                          const std::vector<PendingArrow>& arrows,
                          const std::vector<std::tuple<std::string, std::size_t, int>>& tensors)
{
    SuiteEntry entry;
    auto& d = entry.diagram;
    d.name = name;
    std::map<std::string, std::size_t> index;
    for (auto& o : objects) {
        index[o.name] = d.objects.size();
        d.object_names.push_back(o.name);
        d.objects.push_back(o.algebra ? *o.algebra : build_table(o));
    }
    const auto lookup = [&](const std::string& object, int line) {
        const auto it = index.find(object);
        if (it == index.end())
            throw ParseError("unknown object '" + object + "'", line);
        return it->second;
    };
    for (const auto& a : arrows) {
        DiagramArrow arrow{a.name, lookup(a.source, a.line), lookup(a.target, a.line), {}};
        const auto& src = d.objects[arrow.source];
        const auto& dst = d.objects[arrow.target];
        if (a.images.size() != src.size())
            throw ParseError("arrow " + a.name + " lists " + std::to_string(a.images.size()) + " images for " +
                                 std::to_string(src.size()) + " elements",
                             a.line);
        for (const auto& img : a.images) {
            const auto e = dst.find(img);
            if (!e)
                throw ParseError("unknown element '" + img + "' of " + a.target, a.line);
            arrow.images.push_back(*e);
        }
        if (!preserves_joins(src, dst, arrow.images))
            throw ParseError("arrow " + a.name + " does not preserve joins and the least element", a.line);
        d.arrows.push_back(std::move(arrow));
    }
    for (const auto& [object, copies, line] : tensors)
        entry.tensors.emplace_back(lookup(object, line), copies);
    return entry;
}

std::size_t parse_count(const std::string& s, int line)
{
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        throw ParseError("expected a nonnegative integer, got '" + s + "'", line);
    return v;
}

}  // namespace

std::vector<SuiteEntry> parse_diagram_suite(std::istream& in)
{
    std::vector<SuiteEntry> suite;
    std::optional<std::string> current;
    std::vector<PendingObject> objects;
    std::vector<PendingArrow> arrows;
    std::vector<std::tuple<std::string, std::size_t, int>> tensors;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ss(raw);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        const auto& kw = tok[0];
        if (kw == "diagram") {
            if (current)
                throw ParseError("diagram " + *current + " is missing 'end'", line);
            if (tok.size() != 2)
                throw ParseError("expected 'diagram <name>'", line);
            current = tok[1];
            continue;
        }
        if (!current)
            throw ParseError("'" + kw + "' outside a diagram block", line);
        if (kw == "end") {
            if (tok.size() != 1)
                throw ParseError("unexpected text after 'end'", line);
            suite.push_back(finish_diagram(*current, objects, arrows, tensors));
            current.reset();
            objects.clear();
            arrows.clear();
            tensors.clear();
        } else if (kw == "object") {
            if (tok.size() < 3)
                throw ParseError("expected 'object <name> <kind> ...'", line);
            for (const auto& o : objects)
                if (o.name == tok[1])
                    throw ParseError("duplicate object '" + tok[1] + "'", line);
            PendingObject o{tok[1], line, std::nullopt, {}, {}};
            const std::vector<std::string> args(tok.begin() + 3, tok.end());
            try {
                if (tok[2] == "free")
                    o.algebra = free_semilattice(args);
                else if (tok[2] == "chain" && args.size() == 1)
                    o.algebra = chain_semilattice(parse_count(args[0], line));
                else if (tok[2] == "elements" && !args.empty())
                    o.elements = args;
                else
                    throw ParseError("unknown object kind '" + tok[2] + "' (free, chain <n>, elements)", line);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line);
            } catch (const SizeLimitError& e) {
                throw ParseError(e.what(), line);
            }
            objects.push_back(std::move(o));
        } else if (kw == "join") {
            if (tok.size() != 5)
                throw ParseError("expected 'join <object> <x> <y> <x v y>'", line);
            auto it = std::find_if(objects.begin(), objects.end(), [&](const auto& o) { return o.name == tok[1]; });
            if (it == objects.end() || it->algebra)
                throw ParseError("'" + tok[1] + "' is not an object declared with elements", line);
            it->joins.emplace_back(tok[2], tok[3], tok[4], line);
        } else if (kw == "arrow") {
            if (tok.size() < 4)
                throw ParseError("expected 'arrow <name> <source> <target> <images>...'", line);
            arrows.push_back({tok[1], tok[2], tok[3], std::vector<std::string>(tok.begin() + 4, tok.end()), line});
        } else if (kw == "tensor") {
            if (tok.size() != 3)
                throw ParseError("expected 'tensor <object> <copies>'", line);
            tensors.emplace_back(tok[1], parse_count(tok[2], line), line);
        } else {
            throw ParseError("unknown keyword '" + kw + "'", line);
        }
    }
    if (current)
        throw ParseError("diagram " + *current + " is missing 'end'", line);
    return suite;
}

void write_diagram_suite(std::ostream& out, const std::vector<SuiteEntry>& suite)
{
    for (const auto& entry : suite) {
        const auto& d = entry.diagram;
        out << "diagram " << d.name << '\n';
        for (std::size_t i = 0; i < d.objects.size(); ++i) {
            const auto& r = d.objects[i];
            // The bottom is listed first.
            std::vector<Element> order{r.bottom()};
            for (Element a = 0; a < r.size(); ++a)
                if (a != r.bottom())
                    order.push_back(a);
            out << "  object " << d.object_names[i] << " elements";
            for (auto a : order)
                out << ' ' << r.label(a);
            out << '\n';
            for (std::size_t p = 1; p < order.size(); ++p)
                for (std::size_t q = p + 1; q < order.size(); ++q)
                    out << "  join " << d.object_names[i] << ' ' << r.label(order[p]) << ' ' << r.label(order[q])
                        << ' ' << r.label(r.join(order[p], order[q])) << '\n';
        }
        for (const auto& a : d.arrows) {
            out << "  arrow " << a.name << ' ' << d.object_names[a.source] << ' ' << d.object_names[a.target];
            for (auto img : a.images)
                out << ' ' << d.objects[a.target].label(img);
            out << '\n';
        }
        for (const auto& [object, copies] : entry.tensors)
            out << "  tensor " << d.object_names[object] << ' ' << copies << '\n';
        out << "end\n";
    }
}

// ---- the generated suite ----

namespace {

using Shape = std::vector<std::pair<int, int>>;

std::vector<std::pair<int, Shape>> all_shapes(int max_objects, int max_arrows)
{
    std::vector<std::pair<int, Shape>> out;
    for (int k = 0; k <= max_objects; ++k) {
        std::vector<std::pair<int, int>> edges;
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t)
                edges.emplace_back(s, t);
        std::set<Shape> seen;
        std::vector<int> perm(k);
        Shape current;
        const std::function<void(std::size_t)> grow = [&](std::size_t from) {
            Shape best;
            std::iota(perm.begin(), perm.end(), 0);
            bool first = true;
            do {
                Shape relabelled;
                for (auto [s, t] : current)
                    relabelled.emplace_back(perm[s], perm[t]);
                std::sort(relabelled.begin(), relabelled.end());
                if (first || relabelled < best)
                    best = relabelled;
                first = false;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (seen.insert(best).second)
                out.emplace_back(k, best);
            if (static_cast<int>(current.size()) == max_arrows)
                return;
            for (std::size_t e = from; e < edges.size(); ++e) {
                current.push_back(edges[e]);
                grow(e);
                current.pop_back();
            }
        };
        grow(0);
    }
    return out;
}

struct PoolAlgebra {
    std::string name;
    SemilatticeAlgebra algebra;
};

SemilatticeAlgebra from_order(const std::vector<std::string>& labels,
                              const std::vector<std::pair<std::size_t, std::size_t>>& covers)
{
    // Join is the least upper bound in the order generated by the covers.
    const std::size_t n = labels.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        leq[a][a] = true;
    for (auto [a, b] : covers)
        leq[a][b] = true;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (leq[a][m] && leq[m][b])
                    leq[a][b] = true;
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::optional<std::size_t> best;
            for (std::size_t c = 0; c < n; ++c)
                if (leq[a][c] && leq[b][c] && (!best || leq[c][*best]))
                    best = c;
            table[a * n + b] = static_cast<Element>(*best);
        }
    return SemilatticeAlgebra(labels, std::move(table));
}

std::vector<PoolAlgebra> algebra_pool()
{
    return {
        {"one", chain_semilattice(1)},
        {"chain2", chain_semilattice(2)},
        {"chain3", chain_semilattice(3)},
        {"chain4", chain_semilattice(4)},
        {"free_ab", free_semilattice({"a", "b"})},
        {"m3", from_order({"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}})},
        {"n5", from_order({"0", "a", "b", "c", "1"}, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}})},
        {"grid23", from_order({"00", "01", "02", "10", "11", "12"},
                              {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}})},
        {"free_abc", free_semilattice({"a", "b", "c"})},
        {"free_abcd", free_semilattice({"a", "b", "c", "d"})},
    };
}

}  // namespace

std::vector<SuiteEntry> generate_diagram_suite()
{
    const auto pool = algebra_pool();
    const std::size_t m = pool.size();
    std::vector<std::vector<std::vector<std::vector<Element>>>> homs(m, std::vector<std::vector<std::vector<Element>>>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            homs[a][b] = semilattice_homs(pool[a].algebra, pool[b].algebra);

    constexpr std::size_t kProductBound = 256;
    std::vector<SuiteEntry> suite;
    const auto shapes = all_shapes(3, 4);
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        const auto& [k, arrows] = shapes[s];
        for (int variant = 0; variant < 3; ++variant) {
            std::mt19937 rng(static_cast<std::uint32_t>(1000 * s + variant));
            std::vector<std::size_t> choice(k);
            for (int attempt = 0;; ++attempt) {
                std::size_t product = 1;
                const std::size_t same = rng() % m;
                for (int i = 0; i < k; ++i) {
                    choice[i] = variant == 0 ? same : rng() % m;
                    product *= pool[choice[i]].algebra.size();
                }
                if (product <= kProductBound)
                    break;
            }
            SuiteEntry entry;
            auto& d = entry.diagram;
            d.name = "shape" + std::to_string(s) + "_v" + std::to_string(variant);
            for (int i = 0; i < k; ++i) {
                d.object_names.push_back(std::string(1, static_cast<char>('X' + i)) + "_" + pool[choice[i]].name);
                d.objects.push_back(pool[choice[i]].algebra);
            }
            for (std::size_t e = 0; e < arrows.size(); ++e) {
                const auto [src, dst] = arrows[e];
                const auto& options = homs[choice[src]][choice[dst]];
                std::vector<std::size_t> candidates(options.size());
                std::iota(candidates.begin(), candidates.end(), 0);
                if (variant == 2) {
                    // Prefer maps that are not constant at the bottom.
                    const auto bottom = pool[choice[dst]].algebra.bottom();
                    std::vector<std::size_t> nonconstant;
                    for (auto c : candidates)
                        if (std::any_of(options[c].begin(), options[c].end(), [&](Element v) { return v != bottom; }))
                            nonconstant.push_back(c);
                    if (!nonconstant.empty())
                        candidates = nonconstant;
                }
                const auto& images = options[candidates[rng() % candidates.size()]];
                d.arrows.push_back({"f" + std::to_string(e), static_cast<std::size_t>(src),
                                    static_cast<std::size_t>(dst), images});
            }
            suite.push_back(std::move(entry));
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        SuiteEntry entry;
        entry.diagram.name = "tensor_" + pool[a].name;
        entry.diagram.object_names = {"X"};
        entry.diagram.objects = {pool[a].algebra};
        entry.tensors = {{0, 1}, {0, 2}, {0, 3}};
        suite.push_back(std::move(entry));
    }
    return suite;
}

namespace {

MonadicReport verify_entry(const SuiteEntry& entry)
{
    MonadicReport report;
    const auto& d = entry.diagram;
    report.diagrams = 1;
    try {
        const auto coeq = colimit_coequalizer(d);
        ++report.reflexivity_checks;
        if (!coeq.reflexive)
            report.failures.push_back(d.name + ": coequalizer pair is not reflexive");
        if (iso_check(coeq.algebra, colimit_direct(d)))
            ++report.colimit_agreements;
        else
            report.failures.push_back(d.name + ": coequalizer colimit differs from the direct colimit");
        for (const auto& [object, copies] : entry.tensors) {
            ++report.tensors;
            const auto t = tensor_coequalizer(d.objects[object], copies);
            ++report.reflexivity_checks;
            if (!t.reflexive)
                report.failures.push_back(d.name + ": tensor coequalizer pair is not reflexive");
            if (iso_check(t.algebra, colimit_direct(copower_diagram(d.objects[object], copies))))
                ++report.tensor_agreements;
            else
                report.failures.push_back(d.name + ": tensor of " + d.object_names[object] + " with " +
                                          std::to_string(copies) + " points differs from the copower");
        }
    } catch (const std::exception& e) {
        report.failures.push_back(d.name + ": " + e.what());
    }
    return report;
}

}  // namespace

// Diagrams are independent and run on a small worker pool; results are merged
// in suite order so the report does not depend on scheduling.
MonadicReport verify_monadic_suite(const std::vector<SuiteEntry>& suite)
{
    std::vector<MonadicReport> partial(suite.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < suite.size(); i = next++)
            partial[i] = verify_entry(suite[i]);
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(suite.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    MonadicReport report;
    for (auto& p : partial) {
        report.diagrams += p.diagrams;
        report.colimit_agreements += p.colimit_agreements;
        report.tensors += p.tensors;
        report.tensor_agreements += p.tensor_agreements;
        report.reflexivity_checks += p.reflexivity_checks;
        for (auto& f : p.failures)
            report.failures.push_back(std::move(f));
    }
    return report;
}

}  // namespace thh
