#include "thh/bar.hpp"

#include "thh/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace thh {

// ---- AlgebraMap ----

AlgebraMap::AlgebraMap(FreeGCA source, FreeGCA target, std::vector<int> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image))
{
    const auto& sg = source_.generators();
    const auto& tg = target_.generators();
    if (image_.size() != sg.size())
        throw std::invalid_argument("algebra map needs one image per generator");
    if (!(source_.ring() == target_.ring()))
        throw std::invalid_argument("algebra map between different coefficient rings");
    int last = -1;
    for (std::size_t i = 0; i < image_.size(); ++i) {
        const int t = image_[i];
        if (t < 0)
            continue;
        if (t >= static_cast<int>(tg.size()) || tg[t].degree != sg[i].degree || tg[t].kind != sg[i].kind)
            throw std::invalid_argument("generator '" + sg[i].name + "' has an incompatible image");
        if (t <= last)
            throw std::invalid_argument("algebra map must preserve generator order");
        last = t;
    }
    identity_ = source_ == target_;
    for (std::size_t i = 0; i < image_.size() && identity_; ++i)
        identity_ = image_[i] == static_cast<int>(i);
}

AlgebraMap AlgebraMap::by_name(const FreeGCA& source, const FreeGCA& target)
{
    std::vector<int> image;
    for (const auto& g : source.generators()) {
        auto idx = target.generator_index(g.name);
        image.push_back(idx ? static_cast<int>(*idx) : -1);
    }
    return AlgebraMap(source, target, std::move(image));
}

AlgebraMap AlgebraMap::identity(const FreeGCA& a)
{
    std::vector<int> image(a.generators().size());
    for (std::size_t i = 0; i < image.size(); ++i)
        image[i] = static_cast<int>(i);
    return AlgebraMap(a, a, std::move(image));
}

std::optional<Monomial> AlgebraMap::apply(const Monomial& m) const
{
    if (identity_)
        return m;
    Monomial out = target_.unit();
    out.degree = m.degree;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0)
            continue;
        if (image_[i] < 0)
            return std::nullopt;
        out.exponents[image_[i]] = m.exponents[i];
    }
    return out;
}

namespace {

using Word = std::vector<std::uint32_t>;  // global monomial index per slot; 0 is the unit

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept
    {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : w)
            h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

/// Products of basis monomials by global index, filled on demand. Small
/// algebras get a dense table; larger ones fall back to FreeGCA::multiply.
class ProductTable {
public:
    explicit ProductTable(const FreeGCA& a) : algebra_(a)
    {
        const std::size_t n = a.total_basis_size();
        degree_.resize(n);
        for (std::uint32_t i = 0; i < n; ++i)
            degree_[i] = a.monomial_at(i).degree;
        if (n <= kDense)
            table_.assign(n * n, kUnknown);
    }

    int degree(std::uint32_t x) const { return degree_[x]; }

    /// Sign of x*y (0 when the product vanishes) and its index in `out`.
    int multiply(std::uint32_t x, std::uint32_t y, std::uint32_t& out) const
    {
        if (x == 0 || y == 0) {
            out = x + y;
            return 1;
        }
        if (table_.empty())
            return compute(x, y, out);
        std::int64_t& cell = table_[static_cast<std::size_t>(x) * degree_.size() + y];
        if (cell == kUnknown) {
            std::uint32_t r = 0;
            const int sign = compute(x, y, r);
            cell = sign == 0 ? kZero : static_cast<std::int64_t>(r) * 2 + (sign < 0 ? 1 : 0);
        }
        if (cell == kZero)
            return 0;
        out = static_cast<std::uint32_t>(cell / 2);
        return cell % 2 ? -1 : 1;
    }

    const FreeGCA& algebra() const { return algebra_; }

private:
    static constexpr std::size_t kDense = 1024;
    static constexpr std::int64_t kUnknown = -2;
    static constexpr std::int64_t kZero = -1;

    int compute(std::uint32_t x, std::uint32_t y, std::uint32_t& out) const
    {
        if (degree_[x] + degree_[y] > algebra_.truncation())
            return 0;
        auto p = algebra_.multiply(algebra_.monomial_at(x), algebra_.monomial_at(y));
        if (!p)
            return 0;
        out = algebra_.global_index(p->monomial);
        return p->sign;
    }

    FreeGCA algebra_;
    std::vector<int> degree_;
    mutable std::vector<std::int64_t> table_;
};

struct Level {
    std::vector<FreeGCA> slots;
    std::vector<const ProductTable*> tables;      // per slot, owned by the model
    std::vector<std::vector<std::size_t>> cover;  // each group needs a nonunit slot
};

bool normalized(const Level& level, const Word& w)
{
    for (const auto& group : level.cover)
        if (std::none_of(group.begin(), group.end(), [&](std::size_t s) { return w[s] != 0; }))
            return false;
    return true;
}

class WordEnumerator {
public:
    WordEnumerator(const Level& level, bool normalize) : level_(level), normalize_(normalize)
    {
        const std::size_t n = level.slots.size();
        groups_of_.resize(n);
        closing_.resize(n);
        if (normalize_) {
            for (std::size_t g = 0; g < level.cover.size(); ++g) {
                if (level.cover[g].empty()) {
                    impossible_ = true;
                    continue;
                }
                for (auto s : level.cover[g])
                    groups_of_[s].push_back(g);
                closing_[*std::max_element(level.cover[g].begin(), level.cover[g].end())].push_back(g);
            }
        }
    }

    std::vector<Word> words(int internal_degree)
    {
        weighted_ = false;
        return run(internal_degree);
    }

    /// Words whose exponent vectors sum to `weight`; every slot algebra must
    /// share the generators of the weight or have none.
    std::vector<Word> words_of_weight(const std::vector<std::uint32_t>& weight, int internal_degree)
    {
        weighted_ = true;
        remaining_ = weight;
        return run(internal_degree);
    }

private:
    std::vector<Word> run(int internal_degree)
    {
        out_.clear();
        if (impossible_ || internal_degree < 0)
            return out_;
        word_.assign(level_.slots.size(), 0);
        hits_.assign(level_.cover.size(), 0);
        unsatisfied_ = normalize_ ? level_.cover.size() : 0;
        recurse(0, internal_degree);
        return std::move(out_);
    }

    bool fits(const Monomial& m) const
    {
        for (std::size_t g = 0; g < m.exponents.size(); ++g)
            if (m.exponents[g] > remaining_[g])
                return false;
        return true;
    }

    void take(const Monomial& m, int sign)
    {
        for (std::size_t g = 0; g < m.exponents.size(); ++g)
            remaining_[g] += sign * static_cast<int>(m.exponents[g]);
    }

    void recurse(std::size_t slot, int remaining)
    {
        if (slot == level_.slots.size()) {
            if (remaining == 0 && unsatisfied_ == 0)
                out_.push_back(word_);
            return;
        }
        if (remaining == 0 && unsatisfied_ > 0)
            return;
        const FreeGCA& a = level_.slots[slot];
        const int top = std::min(remaining, a.truncation());
        for (int d = 0; d <= top; ++d) {
            const auto& basis = a.basis(d);
            if (basis.empty())
                continue;
            const std::uint32_t first = a.first_global_index(d);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (weighted_ && d > 0 && !fits(basis[i]))
                    continue;
                word_[slot] = first + static_cast<std::uint32_t>(i);
                if (d > 0) {
                    mark(slot, +1);
                    if (weighted_)
                        take(basis[i], -1);
                }
                if (closed_ok(slot))
                    recurse(slot + 1, remaining - d);
                if (d > 0) {
                    mark(slot, -1);
                    if (weighted_)
                        take(basis[i], +1);
                }
            }
        }
        word_[slot] = 0;
    }

    void mark(std::size_t slot, int delta)
    {
        for (auto g : groups_of_[slot]) {
            if (delta > 0 && hits_[g]++ == 0)
                --unsatisfied_;
            else if (delta < 0 && --hits_[g] == 0)
                ++unsatisfied_;
        }
    }

    bool closed_ok(std::size_t slot) const
    {
        for (auto g : closing_[slot])
            if (hits_[g] == 0)
                return false;
        return true;
    }

    const Level& level_;
    bool normalize_;
    bool impossible_ = false;
    std::vector<std::vector<std::size_t>> groups_of_;
    std::vector<std::vector<std::size_t>> closing_;
    Word word_;
    std::vector<int> hits_;
    std::size_t unsatisfied_ = 0;
    bool weighted_ = false;
    std::vector<std::uint32_t> remaining_;
    std::vector<Word> out_;
};

struct SignedWord {
    int sign;
    Word word;
};

/// Where each source slot goes under a simplicial operator, and through which map.
struct SlotMap {
    std::vector<std::size_t> target;
    std::vector<const std::vector<std::int64_t>*> via;  // global index images (-1: zero); nullptr: identity
};

std::vector<std::int64_t> index_images(const AlgebraMap& f)
{
    const auto& src = f.source();
    std::vector<std::int64_t> out(src.total_basis_size(), -1);
    for (std::uint32_t i = 0; i < out.size(); ++i)
        if (auto m = f.apply(src.monomial_at(i)); m && m->degree <= f.target().truncation())
            out[i] = f.target().global_index(*m);
    return out;
}

/// Induced map on tensor words: move every factor to its target slot (Koszul
/// sign of the shuffle), then multiply factors sharing a slot in source order.
std::optional<SignedWord> apply_slot_map(const Level& src, const Level& dst, const SlotMap& f, const Word& w)
{
    struct Item {
        std::size_t target;
        std::uint32_t index;  // in the target slot algebra
        int degree;
    };
    thread_local std::vector<Item> items;
    items.clear();
    for (std::size_t s = 0; s < w.size(); ++s) {
        if (w[s] == 0)
            continue;
        std::uint32_t index = w[s];
        if (f.via[s]) {
            const std::int64_t image = (*f.via[s])[index];
            if (image < 0)
                return std::nullopt;
            index = static_cast<std::uint32_t>(image);
        }
        items.push_back(Item{f.target[s], index, src.tables[s]->degree(w[s])});
    }
    int sign = 1;
    // Stable insertion sort by target slot, tracking transpositions of odd factors.
    for (std::size_t i = 1; i < items.size(); ++i)
        for (std::size_t j = i; j > 0 && items[j - 1].target > items[j].target; --j) {
            if ((items[j - 1].degree % 2) && (items[j].degree % 2))
                sign = -sign;
            std::swap(items[j - 1], items[j]);
        }
    Word out(dst.slots.size(), 0);
    for (std::size_t i = 0; i < items.size();) {
        const std::size_t t = items[i].target;
        const ProductTable& table = *dst.tables[t];
        std::uint32_t acc = items[i].index;
        std::size_t j = i + 1;
        for (; j < items.size() && items[j].target == t; ++j) {
            const int s = table.multiply(acc, items[j].index, acc);
            if (s == 0)
                return std::nullopt;
            sign *= s;
        }
        out[t] = acc;
        i = j;
    }
    return SignedWord{sign, std::move(out)};
}

/// A simplicial graded module whose level k is a tensor of slot algebras.
struct WordModel {
    CoefficientRing ring = CoefficientRing::integers();
    std::function<Level(int k)> level;
    std::function<std::optional<SignedWord>(int k, int i, const Word&)> face;        // X_k -> X_{k-1}
    std::function<std::optional<SignedWord>(int k, int j, const Word&)> degeneracy;  // X_k -> X_{k+1}
    std::function<std::string(int k, const Word&)> label;
};

ChainComplex assemble_normalized(const WordModel& model, int max_degree, int max_level)
{
    max_level = std::min(max_level, max_degree);
    std::vector<Level> levels;
    for (int k = 0; k <= max_level; ++k)
        levels.push_back(model.level(k));

    // basis[n][k]: normalized words of level k and internal degree n - k.
    std::vector<std::vector<std::vector<Word>>> basis(max_degree + 1);
    std::vector<std::vector<std::unordered_map<Word, std::uint32_t, WordHash>>> index(max_degree + 1);
    std::vector<std::vector<std::uint32_t>> offset(max_degree + 1);
    std::vector<std::size_t> ranks(max_degree + 1, 0);
    std::vector<std::vector<std::string>> labels(max_degree + 1);

    std::vector<WordEnumerator> enumerators;
    for (int k = 0; k <= max_level; ++k)
        enumerators.emplace_back(levels[k], true);
    for (int n = 0; n <= max_degree; ++n) {
        const int kmax = std::min(n, max_level);
        basis[n].resize(kmax + 1);
        index[n].resize(kmax + 1);
        offset[n].resize(kmax + 1);
        for (int k = 0; k <= kmax; ++k) {
            basis[n][k] = enumerators[k].words(n - k);
            offset[n][k] = static_cast<std::uint32_t>(ranks[n]);
            for (std::size_t i = 0; i < basis[n][k].size(); ++i) {
                index[n][k].emplace(basis[n][k][i], offset[n][k] + static_cast<std::uint32_t>(i));
                labels[n].push_back(model.label(k, basis[n][k][i]));
            }
            ranks[n] += basis[n][k].size();
        }
    }

    std::vector<SparseMatrix> diffs(max_degree + 1);
    for (int n = 1; n <= max_degree; ++n) {
        SparseMatrix d(ranks[n - 1], ranks[n]);
        for (int k = 1; k < static_cast<int>(basis[n].size()); ++k) {
            if (k - 1 >= static_cast<int>(index[n - 1].size()))
                continue;
            for (std::size_t c = 0; c < basis[n][k].size(); ++c) {
                const Word& w = basis[n][k][c];
                for (int i = 0; i <= k; ++i) {
                    auto r = model.face(k, i, w);
                    if (!r || !normalized(levels[k - 1], r->word))
                        continue;
                    const auto& idx = index[n - 1][k - 1];
                    auto it = idx.find(r->word);
                    if (it == idx.end())
                        throw std::logic_error("face landed outside the enumerated basis");
                    const int sign = (i % 2 == 0 ? 1 : -1) * r->sign;
                    d.add(it->second, offset[n][k] + c, sign);
                }
            }
        }
        diffs[n] = std::move(d);
    }
    return ChainComplex(model.ring, std::move(ranks), std::move(diffs), true, std::move(labels));
}

SimplicialGradedModule assemble_unnormalized(const WordModel& model, int max_level, int internal_degree)
{
    std::vector<Level> levels;
    std::vector<std::vector<Word>> words;
    std::vector<std::unordered_map<Word, std::uint32_t, WordHash>> index;
    std::vector<std::vector<std::string>> labels;
    for (int k = 0; k <= max_level; ++k) {
        levels.push_back(model.level(k));
        WordEnumerator e(levels.back(), false);
        words.push_back(e.words(internal_degree));
        index.emplace_back();
        labels.emplace_back();
        for (std::size_t i = 0; i < words[k].size(); ++i) {
            index[k].emplace(words[k][i], static_cast<std::uint32_t>(i));
            labels[k].push_back(model.label(k, words[k][i]));
        }
    }
    auto lookup = [&](int k, const Word& w) {
        auto it = index[k].find(w);
        if (it == index[k].end())
            throw std::logic_error("simplicial operator landed outside the enumerated basis");
        return it->second;
    };
    std::vector<std::vector<SparseMatrix>> faces(max_level + 1), degeneracies(max_level + 1);
    for (int k = 0; k <= max_level; ++k) {
        if (k >= 1)
            for (int i = 0; i <= k; ++i) {
                SparseMatrix m(words[k - 1].size(), words[k].size());
                for (std::size_t c = 0; c < words[k].size(); ++c)
                    if (auto r = model.face(k, i, words[k][c]))
                        m.add(lookup(k - 1, r->word), c, r->sign);
                faces[k].push_back(std::move(m));
            }
        if (k < max_level)
            for (int j = 0; j <= k; ++j) {
                SparseMatrix m(words[k + 1].size(), words[k].size());
                for (std::size_t c = 0; c < words[k].size(); ++c)
                    if (auto r = model.degeneracy(k, j, words[k][c]))
                        m.add(lookup(k + 1, r->word), c, r->sign);
                degeneracies[k].push_back(std::move(m));
            }
    }
    return SimplicialGradedModule(model.ring, std::move(labels), std::move(faces), std::move(degeneracies));
}

/// Exponent vectors (exponents unbounded) of weighted degree <= max_degree.
std::vector<std::vector<std::uint32_t>> weights_up_to(const FreeGCA& a, int max_degree)
{
    const auto& gens = a.generators();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> e(gens.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int budget) {
        if (g == gens.size()) {
            out.push_back(e);
            return;
        }
        for (int x = 0; x * gens[g].degree <= budget; ++x) {
            e[g] = static_cast<std::uint32_t>(x);
            rec(g + 1, budget - x * gens[g].degree);
        }
        e[g] = 0;
    };
    rec(0, max_degree);
    return out;
}

/// Faces preserve the total exponent vector of a word, so the normalized
/// complex splits into one small complex per weight. Each block is reduced
/// on its own over F_p through the transposed boundaries, lowest level
/// first: a basis element that is a pivot of the reduced transpose of d_k
/// indexes a column of the transpose of d_{k+1} lying in the span of the
/// others, so it is dropped before eliminating. Boundaries are checked to
/// square to zero on the way.
FieldHomology blocked_homology(const WordModel& model, const FreeGCA& weight_algebra, int max_degree, int max_level)
{
    if (!model.ring.is_field())
        throw std::invalid_argument("blocked homology needs field coefficients");
    const unsigned p = model.ring.characteristic();
    max_level = std::min(max_level, max_degree);
    std::vector<Level> levels;
    std::vector<WordEnumerator> enumerators;
    levels.reserve(max_level + 1);
    for (int k = 0; k <= max_level; ++k)
        levels.push_back(model.level(k));
    for (int k = 0; k <= max_level; ++k)
        enumerators.emplace_back(levels[k], true);

    FieldHomology result;
    result.ranks.assign(max_degree, 0);
    const auto& gens = weight_algebra.generators();
    for (const auto& weight : weights_up_to(weight_algebra, max_degree)) {
        int m = 0;
        for (std::size_t g = 0; g < gens.size(); ++g)
            m += static_cast<int>(weight[g]) * gens[g].degree;
        const int kmax = std::min(max_level, max_degree - m);
        std::vector<std::size_t> dims(kmax + 2, 0), rank_d(kmax + 2, 0);
        std::vector<Word> lower = enumerators[0].words_of_weight(weight, m);
        dims[0] = lower.size();
        std::vector<ModPColumn> lower_cols;       // d_{k-1}, one column per word of `lower`
        std::vector<std::uint32_t> lower_pivots;  // pivots of the reduced transpose of d_{k-1}
        for (int k = 1; k <= kmax; ++k) {
            std::vector<Word> upper = enumerators[k].words_of_weight(weight, m);
            dims[k] = upper.size();
            std::vector<ModPColumn> cols(upper.size());
            if (!lower.empty()) {
                std::unordered_map<Word, std::uint32_t, WordHash> index;
                index.reserve(lower.size());
                for (std::size_t i = 0; i < lower.size(); ++i)
                    index.emplace(lower[i], static_cast<std::uint32_t>(i));
                for (std::size_t c = 0; c < upper.size(); ++c)
                    for (int i = 0; i <= k; ++i) {
                        auto r = model.face(k, i, upper[c]);
                        if (!r || !normalized(levels[k - 1], r->word))
                            continue;
                        auto it = index.find(r->word);
                        if (it == index.end())
                            throw std::logic_error("face landed outside the enumerated block");
                        const int sign = (i % 2 == 0 ? 1 : -1) * r->sign;
                        cols[c].emplace_back(it->second, sign > 0 ? 1u : p - 1);
                    }
            }
            if (!lower_cols.empty() && result.boundary_squares_to_zero) {
                std::unordered_map<std::uint32_t, std::uint64_t> acc;
                for (const auto& col : cols) {
                    acc.clear();
                    for (const auto& [row, v] : col)
                        for (const auto& [row2, v2] : lower_cols[row])
                            acc[row2] = (acc[row2] + static_cast<std::uint64_t>(v) * v2) % p;
                    for (const auto& entry : acc)
                        if (entry.second != 0)
                            result.boundary_squares_to_zero = false;
                }
            }
            std::vector<ModPColumn> transposed(lower.size());
            for (std::uint32_t c = 0; c < cols.size(); ++c)
                for (const auto& [row, v] : cols[c])
                    transposed[row].emplace_back(c, v);
            for (auto r : lower_pivots)
                transposed[r].clear();
            lower_pivots = pivot_rows_mod_p(std::move(transposed), p);
            rank_d[k] = lower_pivots.size();
            lower_cols = std::move(cols);
            lower = std::move(upper);
        }
        for (int k = 0; k <= kmax; ++k) {
            const int n = m + k;
            if (n < max_degree)
                result.ranks[n] += dims[k] - rank_d[k] - rank_d[k + 1];
        }
    }
    return result;
}

void check_degree(const FreeGCA& a, int max_degree)
{
    if (max_degree < 0)
        throw std::invalid_argument("negative truncation degree");
    if (max_degree > a.truncation())
        throw TruncationError("bar complex to degree " + std::to_string(max_degree) +
                              " needs the algebra materialized that far (truncation " +
                              std::to_string(a.truncation()) + ")");
}

int level_cap(const FreeGCA& a, int max_degree)
{
    // Every reduced factor carries internal degree >= the least generator degree.
    return max_degree / std::max(1, a.min_generator_degree());
}

// ---- cyclic bar, Hochschild faces written out ----

WordModel cyclic_model(const FreeGCA& a, const BarOptions& options)
{
    WordModel m;
    m.ring = a.ring();
    m.level = [a](int k) {
        Level l;
        l.slots.assign(static_cast<std::size_t>(k) + 1, a);
        for (int s = 1; s <= k; ++s)
            l.cover.push_back({static_cast<std::size_t>(s)});
        return l;
    };
    m.face = [a, flip = options.flip_cyclic_last_face_sign](int k, int i, const Word& w) -> std::optional<SignedWord> {
        const auto& am = [&](std::size_t s) -> const Monomial& { return a.monomial_at(w[s]); };
        Word out;
        out.reserve(w.size() - 1);
        int sign = 1;
        if (i < k) {
            // a_0 (x) ... (x) a_i a_{i+1} (x) ... (x) a_k
            auto p = a.multiply(am(i), am(i + 1));
            if (!p)
                return std::nullopt;
            out.assign(w.begin(), w.begin() + i);
            out.push_back(a.global_index(p->monomial));
            out.insert(out.end(), w.begin() + i + 2, w.end());
            sign = p->sign;
        } else {
            // (-1)^{|a_k| (|a_0| + ... + |a_{k-1}|)} a_k a_0 (x) a_1 (x) ... (x) a_{k-1}
            int before = 0;
            for (int s = 0; s < k; ++s)
                before += am(s).degree;
            const int last = am(k).degree;
            auto p = a.multiply(am(k), am(0));
            if (!p)
                return std::nullopt;
            sign = p->sign * (((last % 2) && (before % 2)) ? -1 : 1);
            if (flip)
                sign = -sign;
            out.push_back(a.global_index(p->monomial));
            out.insert(out.end(), w.begin() + 1, w.begin() + k);
        }
        return SignedWord{sign, std::move(out)};
    };
    m.degeneracy = [](int, int j, const Word& w) -> std::optional<SignedWord> {
        Word out = w;
        out.insert(out.begin() + j + 1, 0);
        return SignedWord{1, std::move(out)};
    };
    m.label = [a](int k, const Word& w) {
        std::string s = a.format(a.monomial_at(w[0]));
        s += '[';
        for (int t = 1; t <= k; ++t) {
            if (t > 1)
                s += '|';
            s += a.format(a.monomial_at(w[t]));
        }
        return s + ']';
    };
    return m;
}

// ---- generic slot-map models ----

struct BarData {
    FreeGCA left, middle, right;
    AlgebraMap to_left, to_right;
};

/// Levels and slot maps for a model whose operators are pure slot maps,
/// precomputed up to a fixed simplicial degree.
struct SlotModelCache {
    std::vector<std::unique_ptr<ProductTable>> tables;
    std::vector<std::unique_ptr<std::vector<std::int64_t>>> images;
    std::vector<Level> levels;
    std::vector<std::vector<SlotMap>> faces;         // faces[k][i] : X_k -> X_{k-1}
    std::vector<std::vector<SlotMap>> degeneracies;  // degeneracies[k][j] : X_k -> X_{k+1}
};

WordModel slot_model(CoefficientRing ring, std::shared_ptr<const SlotModelCache> cache,
                     std::function<std::string(int, const Word&)> label)
{
    WordModel m;
    m.ring = ring;
    m.level = [cache](int k) { return cache->levels.at(k); };
    m.face = [cache](int k, int i, const Word& w) {
        return apply_slot_map(cache->levels[k], cache->levels[k - 1], cache->faces.at(k).at(i), w);
    };
    m.degeneracy = [cache](int k, int j, const Word& w) {
        return apply_slot_map(cache->levels[k], cache->levels.at(k + 1), cache->degeneracies.at(k).at(j), w);
    };
    m.label = std::move(label);
    return m;
}

WordModel two_sided_model(std::shared_ptr<const BarData> data, int max_level)
{
    auto cache = std::make_shared<SlotModelCache>();
    const ProductTable* left = cache->tables.emplace_back(std::make_unique<ProductTable>(data->left)).get();
    const ProductTable* middle = cache->tables.emplace_back(std::make_unique<ProductTable>(data->middle)).get();
    const ProductTable* right = cache->tables.emplace_back(std::make_unique<ProductTable>(data->right)).get();
    const auto* to_left =
        cache->images.emplace_back(std::make_unique<std::vector<std::int64_t>>(index_images(data->to_left))).get();
    const auto* to_right =
        cache->images.emplace_back(std::make_unique<std::vector<std::int64_t>>(index_images(data->to_right))).get();
    for (int k = 0; k <= max_level + 1; ++k) {
        Level l;
        l.slots.push_back(data->left);
        l.tables.push_back(left);
        for (int s = 1; s <= k; ++s) {
            l.slots.push_back(data->middle);
            l.tables.push_back(middle);
            l.cover.push_back({static_cast<std::size_t>(s)});
        }
        l.slots.push_back(data->right);
        l.tables.push_back(right);
        cache->levels.push_back(std::move(l));

        // d_i merges slot i+1 into slot i; R acts on the ends through the module maps.
        auto& faces = cache->faces.emplace_back();
        for (int i = 0; k >= 1 && i <= k; ++i) {
            SlotMap f;
            for (int s = 0; s <= k + 1; ++s) {
                const std::size_t t = s <= i ? s : s - 1;
                f.target.push_back(t);
                const std::vector<std::int64_t>* via = nullptr;
                if (s >= 1 && s <= k) {
                    if (t == 0)
                        via = to_left;
                    else if (static_cast<int>(t) == k)
                        via = to_right;
                }
                f.via.push_back(via);
            }
            faces.push_back(std::move(f));
        }
        auto& degens = cache->degeneracies.emplace_back();
        for (int j = 0; j <= k; ++j) {
            SlotMap f;
            for (int s = 0; s <= k + 1; ++s) {
                f.target.push_back(s <= j ? s : s + 1);
                f.via.push_back(nullptr);
            }
            degens.push_back(std::move(f));
        }
    }
    auto label = [data](int k, const Word& w) {
        std::string s;
        if (w[0] != 0)
            s += data->left.format(data->left.monomial_at(w[0]));
        s += '[';
        for (int t = 1; t <= k; ++t) {
            if (t > 1)
                s += '|';
            s += data->middle.format(data->middle.monomial_at(w[t]));
        }
        s += ']';
        if (w[k + 1] != 0)
            s += data->right.format(data->right.monomial_at(w[k + 1]));
        return s;
    };
    return slot_model(data->middle.ring(), std::move(cache), std::move(label));
}

constexpr std::size_t kMaxSlots = 512;

WordModel tensor_model(const FreeGCA& algebra, const FiniteSimplicialSet& space, int max_level)
{
    std::vector<std::vector<SimplexRef>> simplices;
    std::vector<std::map<std::pair<std::size_t, std::vector<int>>, std::size_t>> position;
    for (int k = 0; k <= max_level + 1; ++k) {
        simplices.push_back(space.simplices(k));
        if (simplices.back().size() > kMaxSlots)
            throw SizeLimitError("simplicial level " + std::to_string(k) + " of " + space.name() + " has " +
                                 std::to_string(simplices.back().size()) + " simplices");
        auto& pos = position.emplace_back();
        for (std::size_t i = 0; i < simplices[k].size(); ++i)
            pos.emplace(std::make_pair(simplices[k][i].id, simplices[k][i].surjection), i);
    }
    auto index_of = [&](int k, const SimplexRef& x) { return position.at(k).at(std::make_pair(x.id, x.surjection)); };

    auto cache = std::make_shared<SlotModelCache>();
    const ProductTable* table = cache->tables.emplace_back(std::make_unique<ProductTable>(algebra)).get();
    for (int k = 0; k <= max_level + 1; ++k) {
        Level l;
        l.slots.assign(simplices[k].size(), algebra);
        l.tables.assign(simplices[k].size(), table);
        // Degenerate words are those in the image of some s_j: every factor
        // outside s_j(S_{k-1}) is a unit.
        for (int j = 0; j < k; ++j) {
            std::vector<std::size_t> group;
            for (std::size_t u = 0; u < simplices[k].size(); ++u)
                if (simplices[k][u].jumps_at(j))
                    group.push_back(u);
            l.cover.push_back(std::move(group));
        }
        cache->levels.push_back(std::move(l));

        auto& faces = cache->faces.emplace_back();
        for (int i = 0; k >= 1 && i <= k; ++i) {
            SlotMap f;
            for (const auto& u : simplices[k]) {
                f.target.push_back(index_of(k - 1, space.face(u, i)));
                f.via.push_back(nullptr);
            }
            faces.push_back(std::move(f));
        }
        auto& degens = cache->degeneracies.emplace_back();
        for (int j = 0; k <= max_level && j <= k; ++j) {
            SlotMap f;
            for (const auto& u : simplices[k]) {
                f.target.push_back(index_of(k + 1, space.degeneracy(u, j)));
                f.via.push_back(nullptr);
            }
            degens.push_back(std::move(f));
        }
    }
    auto label = [algebra, space, simplices](int k, const Word& w) {
        std::string s;
        for (std::size_t u = 0; u < w.size(); ++u) {
            if (w[u] == 0)
                continue;
            if (!s.empty())
                s += " (x) ";
            s += space.format(simplices[k][u]) + ":" + algebra.format(algebra.monomial_at(w[u]));
        }
        return s.empty() ? std::string("1") : s;
    };
    return slot_model(algebra.ring(), std::move(cache), std::move(label));
}

}  // namespace

ChainComplex two_sided_bar(const FreeGCA& a, int max_degree)
{
    const auto k = FreeGCA::trivial(a.ring(), a.truncation());
    return two_sided_bar(k, a, k, max_degree);
}

ChainComplex two_sided_bar(const FreeGCA& left, const FreeGCA& middle, const FreeGCA& right, int max_degree)
{
    check_degree(left, max_degree);
    check_degree(middle, max_degree);
    check_degree(right, max_degree);
    auto data = std::make_shared<const BarData>(BarData{left, middle, right, AlgebraMap::by_name(middle, left),
                                                        AlgebraMap::by_name(middle, right)});
    const int cap = std::min(max_degree, level_cap(middle, max_degree));
    return assemble_normalized(two_sided_model(data, cap), max_degree, cap);
}

ChainComplex cyclic_bar(const FreeGCA& a, int max_degree, const BarOptions& options)
{
    check_degree(a, max_degree);
    return assemble_normalized(cyclic_model(a, options), max_degree, level_cap(a, max_degree));
}

ChainComplex tensor_with_simplicial_set(const FreeGCA& a, const FiniteSimplicialSet& s, int max_degree)
{
    check_degree(a, max_degree);
    // A nondegenerate d-simplex covers at most d of the k degeneracy constraints.
    const int dim = std::max(1, s.dimension());
    const int cap = std::min(max_degree, level_cap(a, max_degree) * dim);
    return assemble_normalized(tensor_model(a, s, cap), max_degree, cap);
}

FieldHomology two_sided_bar_homology(const FreeGCA& a, int max_degree)
{
    check_degree(a, max_degree);
    const auto k = FreeGCA::trivial(a.ring(), a.truncation());
    auto data = std::make_shared<const BarData>(BarData{k, a, k, AlgebraMap::by_name(a, k), AlgebraMap::by_name(a, k)});
    const int cap = std::min(max_degree, level_cap(a, max_degree));
    return blocked_homology(two_sided_model(data, cap), a, max_degree, cap);
}

FieldHomology cyclic_bar_homology(const FreeGCA& a, int max_degree, const BarOptions& options)
{
    check_degree(a, max_degree);
    return blocked_homology(cyclic_model(a, options), a, max_degree, level_cap(a, max_degree));
}

FieldHomology tensor_homology(const FreeGCA& a, const FiniteSimplicialSet& s, int max_degree)
{
    check_degree(a, max_degree);
    const int dim = std::max(1, s.dimension());
    const int cap = std::min(max_degree, level_cap(a, max_degree) * dim);
    return blocked_homology(tensor_model(a, s, cap), a, max_degree, cap);
}

SimplicialGradedModule cyclic_simplicial_module(const FreeGCA& a, int max_level, int internal_degree,
                                                const BarOptions& options)
{
    check_degree(a, internal_degree);
    return assemble_unnormalized(cyclic_model(a, options), max_level, internal_degree);
}

SimplicialGradedModule tensor_simplicial_module(const FreeGCA& a, const FiniteSimplicialSet& s, int max_level,
                                                int internal_degree)
{
    check_degree(a, internal_degree);
    return assemble_unnormalized(tensor_model(a, s, max_level), max_level, internal_degree);
}

// ---- SimplicialGradedModule ----

SimplicialGradedModule::SimplicialGradedModule(CoefficientRing ring, std::vector<std::vector<std::string>> labels,
                                               std::vector<std::vector<SparseMatrix>> faces,
                                               std::vector<std::vector<SparseMatrix>> degeneracies)
    : ring_(ring), labels_(std::move(labels)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies))
{
}

std::optional<std::string> SimplicialGradedModule::check_identities() const
{
    auto same = [&](const SparseMatrix& x, const SparseMatrix& y) {
        return x.reduced(ring_) == y.reduced(ring_);
    };
    const int top = max_level();
    const std::string tag = "level ";
    for (int k = 2; k <= top; ++k)
        for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
                if (!same(face(k - 1, i) * face(k, j), face(k - 1, j - 1) * face(k, i)))
                    return tag + std::to_string(k) + ": d_" + std::to_string(i) + " d_" + std::to_string(j) +
                           " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i);
    for (int k = 0; k + 1 <= top; ++k) {
        const auto id = SparseMatrix::identity(rank(k));
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i <= k + 1; ++i) {
                const auto lhs = face(k + 1, i) * degeneracy(k, j);
                bool ok = true;
                if (i < j)
                    ok = same(lhs, degeneracy(k - 1, j - 1) * face(k, i));
                else if (i == j || i == j + 1)
                    ok = same(lhs, id);
                else
                    ok = same(lhs, degeneracy(k - 1, j) * face(k, i - 1));
                if (!ok)
                    return tag + std::to_string(k) + ": d_" + std::to_string(i) + " s_" + std::to_string(j);
            }
    }
    for (int k = 0; k + 2 <= top; ++k)
        for (int j = 1; j <= k + 1; ++j)
            for (int i = 0; i < j; ++i)
                if (!same(degeneracy(k + 1, i) * degeneracy(k, j - 1), degeneracy(k + 1, j) * degeneracy(k, i)))
                    return tag + std::to_string(k) + ": s_" + std::to_string(i) + " s_" + std::to_string(j);
    return std::nullopt;
}

}  // namespace thh
