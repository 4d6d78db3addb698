#pragma once

// Integral chain complexes with homology known by construction: a direct sum
// of elementary pieces (Z in one degree, or Z --k--> Z) conjugated by random
// unimodular changes of basis in every degree.

#include "thh/chain_complex.hpp"

#include <random>

namespace thh::testing {

struct KnownComplex {
    ChainComplex complex;
    GradedAbelianGroup homology;
};

inline std::vector<std::vector<long long>> random_unimodular(std::mt19937& rng, std::size_t n)
{
    std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        u[i][i] = 1;
    if (n < 2)
        return u;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> f(-2, 2);
    for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
        const auto i = idx(rng), j = idx(rng);
        if (i == j)
            continue;
        const int c = f(rng);
        for (std::size_t k = 0; k < n; ++k)
            u[i][k] += c * u[j][k];  // row_i += c row_j
    }
    return u;
}

inline std::vector<std::vector<long long>> inverse_unimodular(std::vector<std::vector<long long>> u)
{
    // Gauss-Jordan over Z; valid because every pivot we meet is +-1 after
    // reduction for a unimodular matrix built from elementary operations.
    const std::size_t n = u.size();
    std::vector<std::vector<long long>> inv(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        // Euclid on column c below the diagonal until one unit pivot remains.
        for (;;) {
            std::size_t best = n;
            for (std::size_t r = c; r < n; ++r)
                if (u[r][c] != 0 && (best == n || std::llabs(u[r][c]) < std::llabs(u[best][c])))
                    best = r;
            std::swap(u[c], u[best]);
            std::swap(inv[c], inv[best]);
            bool done = true;
            for (std::size_t r = c + 1; r < n; ++r) {
                if (u[r][c] == 0)
                    continue;
                const long long q = u[r][c] / u[c][c];
                for (std::size_t k = 0; k < n; ++k) {
                    u[r][k] -= q * u[c][k];
                    inv[r][k] -= q * inv[c][k];
                }
                done &= u[r][c] == 0;
            }
            if (done)
                break;
        }
        if (u[c][c] < 0)
            for (std::size_t k = 0; k < n; ++k) {
                u[c][k] = -u[c][k];
                inv[c][k] = -inv[c][k];
            }
    }
    for (std::size_t c = n; c-- > 0;)
        for (std::size_t r = 0; r < c; ++r) {
            const long long q = u[r][c];
            if (!q)
                continue;
            for (std::size_t k = 0; k < n; ++k) {
                u[r][k] -= q * u[c][k];
                inv[r][k] -= q * inv[c][k];
            }
        }
    return inv;
}

inline KnownComplex random_known_complex(std::mt19937& rng, int top, int pieces)
{
    std::vector<std::size_t> ranks(top + 1, 0);
    struct Piece {
        int degree;      // free piece: Z in `degree`; pair: Z_{degree+1} -> Z_degree
        long long k;     // 0 for a free piece
        std::size_t lo;  // basis position in `degree`
        std::size_t hi;  // basis position in degree+1 (pairs only)
    };
    std::vector<Piece> ps;
    std::uniform_int_distribution<int> deg(0, top), kd(0, 6);
    GradedAbelianGroup h;
    h.degrees.assign(top + 1, {});
    std::vector<std::vector<Integer>> torsion(top + 1);
    for (int i = 0; i < pieces; ++i) {
        const int d = deg(rng);
        const long long k = kd(rng);
        if (k == 0 || d == top) {
            ps.push_back({d, 0, ranks[d]++, 0});
            h.degrees[d].free_rank++;
        } else {
            ps.push_back({d, k, ranks[d]++, ranks[d + 1]++});
            if (k > 1)
                torsion[d].push_back(Integer(static_cast<long>(k)));
        }
    }
    for (int d = 0; d <= top; ++d)
        h.degrees[d] = make_abelian_group(h.degrees[d].free_rank, torsion[d]);

    // d_n = U_{n-1} * D_n * U_n^{-1}
    std::vector<std::vector<std::vector<long long>>> u(top + 1), uinv(top + 1);
    for (int d = 0; d <= top; ++d) {
        u[d] = random_unimodular(rng, ranks[d]);
        uinv[d] = inverse_unimodular(u[d]);
    }
    std::vector<SparseMatrix> diffs(top + 1);
    for (int n = 1; n <= top; ++n) {
        std::vector<std::vector<long long>> D(ranks[n - 1], std::vector<long long>(ranks[n], 0));
        for (const auto& p : ps)
            if (p.k != 0 && p.degree == n - 1)
                D[p.lo][p.hi] = p.k;
        std::vector<std::vector<Integer>> M(ranks[n - 1], std::vector<Integer>(ranks[n], 0));
        for (std::size_t r = 0; r < ranks[n - 1]; ++r)
            for (std::size_t c = 0; c < ranks[n]; ++c) {
                Integer acc = 0;
                for (std::size_t a = 0; a < ranks[n - 1]; ++a) {
                    if (!u[n - 1][r][a])
                        continue;
                    for (std::size_t b = 0; b < ranks[n]; ++b)
                        if (D[a][b] && uinv[n][b][c])
                            acc += Integer(static_cast<long>(u[n - 1][r][a] * D[a][b] * uinv[n][b][c]));
                }
                M[r][c] = acc;
            }
        diffs[n] = ranks[n - 1] && ranks[n] ? SparseMatrix::from_dense(M) : SparseMatrix(ranks[n - 1], ranks[n]);
    }
    return {ChainComplex(CoefficientRing::integers(), ranks, std::move(diffs), false), h};
}

}  // namespace thh::testing
