#include "thh/simplicial_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace thh {

FiniteSimplicialSet::FiniteSimplicialSet(std::string name, std::vector<Cell> cells)
    : name_(std::move(name)), cells_(std::move(cells))
{
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& cell = cells_[c];
        if (cell.dim < 0)
            throw std::invalid_argument("cell '" + cell.name + "' has negative dimension");
        const std::size_t expected = cell.dim == 0 ? 0 : static_cast<std::size_t>(cell.dim) + 1;
        if (cell.faces.size() != expected)
            throw std::invalid_argument("cell '" + cell.name + "' needs " + std::to_string(expected) + " faces");
        for (const auto& f : cell.faces) {
            if (f.id >= cells_.size() || f.dim() != cell.dim - 1 || f.surjection.empty())
                throw std::invalid_argument("cell '" + cell.name + "' has a malformed face");
            if (f.base_dim() != cells_[f.id].dim)
                throw std::invalid_argument("cell '" + cell.name + "' has a face with the wrong base dimension");
            for (std::size_t t = 1; t < f.surjection.size(); ++t)
                if (f.surjection[t] != f.surjection[t - 1] && f.surjection[t] != f.surjection[t - 1] + 1)
                    throw std::invalid_argument("cell '" + cell.name + "' has a non-surjective face map");
            if (f.surjection.front() != 0)
                throw std::invalid_argument("cell '" + cell.name + "' has a non-surjective face map");
        }
    }
    for (const auto& cell : cells_) {
        if (cell.dim < 2)
            continue;
        for (int j = 1; j <= cell.dim; ++j)
            for (int i = 0; i < j; ++i)
                if (!(face(cell.faces[j], i) == face(cell.faces[i], j - 1)))
                    throw std::invalid_argument("cell '" + cell.name + "' violates a simplicial identity");
    }
}

FiniteSimplicialSet FiniteSimplicialSet::point()
{
    return FiniteSimplicialSet("point", {Cell{"v", 0, {}}});
}

FiniteSimplicialSet FiniteSimplicialSet::interval()
{
    return FiniteSimplicialSet("interval", {Cell{"v0", 0, {}}, Cell{"v1", 0, {}},
                                            Cell{"e", 1, {SimplexRef{1, {0}}, SimplexRef{0, {0}}}}});
}

FiniteSimplicialSet FiniteSimplicialSet::circle_standard()
{
    return FiniteSimplicialSet("circle_standard",
                               {Cell{"v", 0, {}}, Cell{"e", 1, {SimplexRef{0, {0}}, SimplexRef{0, {0}}}}});
}

FiniteSimplicialSet FiniteSimplicialSet::circle_subdivided(int v)
{
    if (v < 1)
        throw std::invalid_argument("a subdivided circle needs at least one vertex");
    std::vector<Cell> cells;
    for (int i = 0; i < v; ++i)
        cells.push_back(Cell{"v" + std::to_string(i), 0, {}});
    for (int i = 0; i < v; ++i) {
        // e_i runs from v_i to v_{i+1}: d_0 is the target, d_1 the source.
        const auto target = static_cast<std::size_t>((i + 1) % v);
        const auto source = static_cast<std::size_t>(i);
        cells.push_back(Cell{"e" + std::to_string(i), 1, {SimplexRef{target, {0}}, SimplexRef{source, {0}}}});
    }
    return FiniteSimplicialSet("circle_subdivided(" + std::to_string(v) + ")", std::move(cells));
}

int FiniteSimplicialSet::dimension() const
{
    int d = -1;
    for (const auto& c : cells_)
        d = std::max(d, c.dim);
    return d;
}

namespace {

// Monotone surjections [k] -> [m], lexicographic.
void surjections(int k, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    const int t = static_cast<int>(cur.size());
    if (t == k + 1) {
        if (cur.back() == m)
            out.push_back(cur);
        return;
    }
    const int prev = cur.back();
    // Stay, or step up by one if enough positions remain to reach m.
    if (m - prev <= k - t) {
        cur.push_back(prev);
        surjections(k, m, cur, out);
        cur.pop_back();
    }
    if (prev < m) {
        cur.push_back(prev + 1);
        surjections(k, m, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<SimplexRef> FiniteSimplicialSet::simplices(int k) const
{
    std::vector<SimplexRef> out;
    if (k < 0)
        return out;
    for (std::size_t id = 0; id < cells_.size(); ++id) {
        const int m = cells_[id].dim;
        if (m > k)
            continue;
        std::vector<std::vector<int>> sj;
        std::vector<int> cur{0};
        surjections(k, m, cur, sj);
        for (auto& s : sj)
            out.push_back(SimplexRef{id, std::move(s)});
    }
    return out;
}

SimplexRef FiniteSimplicialSet::face(const SimplexRef& x, int i) const
{
    const int k = x.dim();
    if (k < 1 || i < 0 || i > k)
        throw std::out_of_range("face index out of range");
    std::vector<int> tau;
    tau.reserve(x.surjection.size() - 1);
    for (int t = 0; t <= k; ++t)
        if (t != i)
            tau.push_back(x.surjection[t]);
    const int m = x.base_dim();
    // Removing one value from a surjection loses at most one target.
    int missing = -1;
    for (int v = 0, t = 0; v <= m; ++v) {
        while (t < static_cast<int>(tau.size()) && tau[t] < v)
            ++t;
        if (t == static_cast<int>(tau.size()) || tau[t] != v) {
            missing = v;
            break;
        }
    }
    if (missing < 0)
        return SimplexRef{x.id, std::move(tau)};
    for (auto& v : tau)
        if (v > missing)
            --v;
    const SimplexRef& f = cells_[x.id].faces[missing];
    std::vector<int> composite;
    composite.reserve(tau.size());
    for (int v : tau)
        composite.push_back(f.surjection[v]);
    return SimplexRef{f.id, std::move(composite)};
}

SimplexRef FiniteSimplicialSet::degeneracy(const SimplexRef& x, int j) const
{
    if (j < 0 || j > x.dim())
        throw std::out_of_range("degeneracy index out of range");
    SimplexRef out = x;
    out.surjection.insert(out.surjection.begin() + j, x.surjection[j]);
    return out;
}

std::string FiniteSimplicialSet::format(const SimplexRef& x) const
{
    std::string s = cells_[x.id].name;
    if (x.degenerate() || x.dim() > 0) {
        s += '<';
        for (int v : x.surjection)
            s += std::to_string(v);
        s += '>';
    }
    return s;
}

}  // namespace thh
