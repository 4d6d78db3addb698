#pragma once

#include "thh/coefficients.hpp"

#include <cstdint>
#include <vector>

namespace thh {

/// Column-major sparse matrix with arbitrary-precision entries. Columns are
/// kept sorted by row and never store zeros.
class SparseMatrix {
public:
    struct Entry {
        std::uint32_t row;
        Integer value;
    };
    using Column = std::vector<Entry>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Integer>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    const Column& column(std::size_t c) const { return columns_.at(c); }

    /// Accumulates into (row, col); a resulting zero is dropped.
    void add(std::size_t row, std::size_t col, const Integer& value);
    Integer get(std::size_t row, std::size_t col) const;

    std::size_t nonzeros() const;
    double density() const;
    bool is_zero() const { return nonzeros() == 0; }

    /// Entries reduced into ring's canonical range, zeros dropped.
    SparseMatrix reduced(const CoefficientRing& ring) const;
    SparseMatrix permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const;
    std::vector<std::vector<Integer>> to_dense() const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// Column over F_p as (row, value) pairs, value in [1, p).
using ModPColumn = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Rank over F_p of the matrix with the given columns. Each column is sorted
/// and merged before elimination.
std::size_t rank_mod_p_columns(std::vector<ModPColumn> columns, unsigned p);

/// Pivot rows (largest row of each reduced column) found by the same
/// elimination; their count is the rank.
std::vector<std::uint32_t> pivot_rows_mod_p(std::vector<ModPColumn> columns, unsigned p);

/// Rank over F_p. Dispatches to dense elimination above 25% density.
std::size_t rank_mod_p(const SparseMatrix& m, unsigned p);
std::size_t rank_mod_p_dense(const SparseMatrix& m, unsigned p);
std::size_t rank_mod_p_sparse(const SparseMatrix& m, unsigned p);

/// Invariant factors d1 | d2 | ... | dr (all positive, r = rank over Q).
/// Pivot: nonzero entry of least absolute value, ties to lowest row then column.
std::vector<Integer> smith_normal_form(const SparseMatrix& m);

}  // namespace thh
