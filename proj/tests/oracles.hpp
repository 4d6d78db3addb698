#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks.

#include "thh/algebra.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace thh::oracle {

struct GeneratorSpec {
    int degree;
    bool exterior;
};

/// Counts exponent vectors of total degree n by walking the full box
/// [0, n/deg] (or [0,1] for exterior) in every coordinate.
inline std::vector<std::uint64_t> brute_force_ranks(const std::vector<GeneratorSpec>& gens, int max_degree)
{
    std::vector<std::uint64_t> ranks(max_degree + 1, 0);
    std::vector<int> bound, e(gens.size(), 0);
    for (const auto& g : gens)
        bound.push_back(g.exterior ? 1 : max_degree / g.degree);
    for (;;) {
        int d = 0;
        for (std::size_t i = 0; i < gens.size(); ++i)
            d += e[i] * gens[i].degree;
        if (d <= max_degree)
            ++ranks[d];
        std::size_t i = 0;
        while (i < gens.size() && e[i] == bound[i])
            e[i++] = 0;
        if (i == gens.size())
            break;
        ++e[i];
    }
    return ranks;
}

/// Dimension of the kernel of a dense matrix over F_p (rows x cols), by
/// straightforward row reduction on a copy.
inline std::size_t rank_mod_p(std::vector<std::vector<long long>> a, long long p)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t r = rank;
        while (r < rows && ((a[r][c] % p) + p) % p == 0)
            ++r;
        if (r == rows)
            continue;
        std::swap(a[r], a[rank]);
        long long inv = 1, base = ((a[rank][c] % p) + p) % p;
        for (long long e = p - 2; e > 0; e >>= 1, base = base * base % p)
            if (e & 1)
                inv = inv * base % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank)
                continue;
            const long long f = ((a[i][c] % p) + p) % p * inv % p;
            if (!f)
                continue;
            for (std::size_t k = 0; k < cols; ++k)
                a[i][k] = ((a[i][k] - f * a[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::uint64_t> convolution(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                              int max_degree)
{
    std::vector<std::uint64_t> out(max_degree + 1, 0);
    for (int i = 0; i <= max_degree && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= max_degree && j < static_cast<int>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace thh::oracle
