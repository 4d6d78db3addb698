#pragma once

// Unnormalized Hochschild and bar complexes written directly from the
// product of the algebra. Every word, including those with unit factors, is
// kept, so the complexes are much larger than the normalized ones but share
// their homology. Ranks are computed with the dense oracle rank.

#include "oracles.hpp"

#include "thh/algebra.hpp"

#include <map>
#include <vector>

namespace thh::oracle {

using OWord = std::vector<std::size_t>;  // global monomial indices

inline std::vector<std::vector<Monomial>> monomials_by_degree(const FreeGCA& a, int n)
{
    std::vector<std::vector<Monomial>> out(n + 1);
    for (int d = 0; d <= n; ++d)
        out[d] = monomial_basis(a, d);
    return out;
}

// All words of `len` monomials with internal degrees summing to `deg`.
inline void words_of(const FreeGCA& a, const std::vector<std::vector<Monomial>>& by_deg, std::size_t len, int deg,
                     OWord& cur, std::vector<OWord>& out)
{
    if (cur.size() == len) {
        if (deg == 0)
            out.push_back(cur);
        return;
    }
    for (int d = 0; d <= deg; ++d)
        for (const auto& m : by_deg[d]) {
            cur.push_back(a.global_index(m));
            words_of(a, by_deg, len, deg - d, cur, out);
            cur.pop_back();
        }
}

struct OracleLevelBasis {
    std::vector<OWord> words;
    std::map<OWord, std::size_t> index;
};

// Basis of total degree t: words of length k + offset with internal degree t - k.
inline OracleLevelBasis oracle_total_basis(const FreeGCA& a, const std::vector<std::vector<Monomial>>& by_deg, int t,
                                           std::size_t offset)
{
    OracleLevelBasis b;
    for (int k = 0; k <= t; ++k) {
        OWord cur;
        std::vector<OWord> ws;
        words_of(a, by_deg, static_cast<std::size_t>(k) + offset, t - k, cur, ws);
        for (auto& w : ws) {
            b.index.emplace(w, b.words.size());
            b.words.push_back(std::move(w));
        }
    }
    return b;
}

inline int word_degree(const FreeGCA& a, const OWord& w, std::size_t from, std::size_t to)
{
    int d = 0;
    for (std::size_t i = from; i < to; ++i)
        d += a.monomial_at(w[i]).degree;
    return d;
}

// Homology ranks over F_p in degrees 0..max_degree-1 of the complex whose
// total degree t part is `basis(t)` and whose differential sends a word to
// a list of (word, coefficient).
template <class Basis, class Boundary>
std::vector<std::uint64_t> oracle_homology(int max_degree, long long p, Basis basis, Boundary boundary)
{
    std::vector<OracleLevelBasis> levels;
    for (int t = 0; t <= max_degree; ++t)
        levels.push_back(basis(t));
    std::vector<std::size_t> rank_d(max_degree + 2, 0);  // rank of d_t : C_t -> C_{t-1}
    for (int t = 1; t <= max_degree; ++t) {
        const auto& src = levels[t];
        const auto& dst = levels[t - 1];
        std::vector<std::vector<long long>> m(dst.words.size(), std::vector<long long>(src.words.size(), 0));
        for (std::size_t c = 0; c < src.words.size(); ++c)
            for (const auto& [w, coeff] : boundary(src.words[c]))
                m[dst.index.at(w)][c] += coeff;
        rank_d[t] = dst.words.empty() || src.words.empty() ? 0 : rank_mod_p(m, p);
    }
    std::vector<std::uint64_t> out;
    for (int t = 0; t < max_degree; ++t)
        out.push_back(levels[t].words.size() - rank_d[t] - rank_d[t + 1]);
    return out;
}

inline std::vector<std::pair<OWord, long long>> hochschild_boundary(const FreeGCA& a, const OWord& w)
{
    std::vector<std::pair<OWord, long long>> out;
    const std::size_t k = w.size() - 1;
    if (k == 0)
        return out;
    for (std::size_t i = 0; i < k; ++i) {
        auto prod = a.multiply(a.monomial_at(w[i]), a.monomial_at(w[i + 1]));
        if (!prod)
            continue;
        OWord v(w.begin(), w.begin() + i);
        v.push_back(a.global_index(prod->monomial));
        v.insert(v.end(), w.begin() + i + 2, w.end());
        out.emplace_back(std::move(v), (i % 2 ? -1 : 1) * prod->sign);
    }
    // d_k: a_k a_0 | a_1 | ... | a_{k-1}, Koszul sign for moving a_k to the front
    const int dk = a.monomial_at(w[k]).degree;
    const int rest = word_degree(a, w, 0, k);
    auto prod = a.multiply(a.monomial_at(w[k]), a.monomial_at(w[0]));
    if (prod) {
        OWord v{a.global_index(prod->monomial)};
        v.insert(v.end(), w.begin() + 1, w.begin() + k);
        const long long koszul = (dk % 2 && rest % 2) ? -1 : 1;
        out.emplace_back(std::move(v), (k % 2 ? -1 : 1) * koszul * prod->sign);
    }
    return out;
}

inline std::vector<std::pair<OWord, long long>> bar_boundary(const FreeGCA& a, const OWord& w)
{
    std::vector<std::pair<OWord, long long>> out;
    const std::size_t k = w.size();
    if (k == 0)
        return out;
    // d_0 and d_k apply the augmentation, nonzero only on the unit.
    if (w.front() == 0)
        out.emplace_back(OWord(w.begin() + 1, w.end()), 1);
    for (std::size_t i = 1; i < k; ++i) {
        auto prod = a.multiply(a.monomial_at(w[i - 1]), a.monomial_at(w[i]));
        if (!prod)
            continue;
        OWord v(w.begin(), w.begin() + i - 1);
        v.push_back(a.global_index(prod->monomial));
        v.insert(v.end(), w.begin() + i + 1, w.end());
        out.emplace_back(std::move(v), (i % 2 ? -1 : 1) * prod->sign);
    }
    if (w.back() == 0)
        out.emplace_back(OWord(w.begin(), w.end() - 1), k % 2 ? -1 : 1);
    return out;
}

/// HH_t(A; F_p) ranks for t < max_degree.
inline std::vector<std::uint64_t> hochschild_ranks(const FreeGCA& a, int max_degree, long long p)
{
    const auto by_deg = monomials_by_degree(a, max_degree);
    return oracle_homology(
        max_degree, p, [&](int t) { return oracle_total_basis(a, by_deg, t, 1); },
        [&](const OWord& w) { return hochschild_boundary(a, w); });
}

/// Tor^A_t(k, k) ranks over F_p for t < max_degree.
inline std::vector<std::uint64_t> tor_ranks(const FreeGCA& a, int max_degree, long long p)
{
    const auto by_deg = monomials_by_degree(a, max_degree);
    return oracle_homology(
        max_degree, p, [&](int t) { return oracle_total_basis(a, by_deg, t, 0); },
        [&](const OWord& w) { return bar_boundary(a, w); });
}

}  // namespace thh::oracle
