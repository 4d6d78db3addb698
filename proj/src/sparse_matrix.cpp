#include "thh/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace thh {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.add(i, i, 1);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Integer>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] != 0)
                m.add(r, c, rows[r][c]);
    }
    return m;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Integer& value)
{
    if (row >= rows_ || col >= columns_.size())
        throw std::out_of_range("matrix index out of range");
    if (value == 0)
        return;
    auto& c = columns_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.row < r; });
    if (it != c.end() && it->row == row) {
        it->value += value;
        if (it->value == 0)
            c.erase(it);
    } else {
        c.insert(it, Entry{static_cast<std::uint32_t>(row), value});
    }
}

Integer SparseMatrix::get(std::size_t row, std::size_t col) const
{
    const auto& c = columns_.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.row < r; });
    return (it != c.end() && it->row == row) ? it->value : Integer(0);
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

double SparseMatrix::density() const
{
    const double cells = static_cast<double>(rows_) * static_cast<double>(columns_.size());
    return cells == 0 ? 0.0 : static_cast<double>(nonzeros()) / cells;
}

SparseMatrix SparseMatrix::reduced(const CoefficientRing& ring) const
{
    SparseMatrix out(rows_, columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& e : columns_[c]) {
            Integer v = ring.normalize(e.value);
            if (v != 0)
                out.columns_[c].push_back(Entry{e.row, std::move(v)});
        }
    return out;
}

SparseMatrix SparseMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                    const std::vector<std::size_t>& col_perm) const
{
    if (row_perm.size() != rows_ || col_perm.size() != columns_.size())
        throw std::invalid_argument("permutation size mismatch");
    SparseMatrix out(rows_, columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& e : columns_[c])
            out.add(row_perm[e.row], col_perm[c], e.value);
    return out;
}

std::vector<std::vector<Integer>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(columns_.size(), 0));
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& e : columns_[c])
            d[e.row][c] = e.value;
    return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        std::unordered_map<std::uint32_t, Integer> acc;
        for (const auto& eb : b.columns_[j])
            for (const auto& ea : a.columns_[eb.row])
                acc[ea.row] += ea.value * eb.value;
        auto& col = out.columns_[j];
        for (auto& [r, v] : acc)
            if (v != 0)
                col.push_back(SparseMatrix::Entry{r, std::move(v)});
        std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.row < y.row; });
    }
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows_ != b.rows_ || a.columns_.size() != b.columns_.size())
        return false;
    for (std::size_t c = 0; c < a.columns_.size(); ++c) {
        const auto& x = a.columns_[c];
        const auto& y = b.columns_[c];
        if (x.size() != y.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].row != y[i].row || x[i].value != y[i].value)
                return false;
    }
    return true;
}

// ---- rank over F_p ----

namespace {

std::uint32_t residue(const Integer& v, unsigned p)
{
    return static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p));
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    // Fermat; p is prime.
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

}  // namespace

std::size_t rank_mod_p_dense(const SparseMatrix& m, unsigned p)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0)
        return 0;
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& e : m.column(c))
            a[e.row][c] = residue(e.value, p);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[pivot], a[rank]);
        const std::uint64_t inv = inverse_mod(a[rank][c], p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0)
                continue;
            const std::uint64_t f = a[r][c] * inv % p;
            auto& row = a[r];
            const auto& prow = a[rank];
            for (std::size_t k = c; k < cols; ++k)
                if (prow[k])
                    row[k] = static_cast<std::uint32_t>((row[k] + (p - f) * prow[k]) % p);
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_mod_p_columns(std::vector<ModPColumn> columns, unsigned p)
{
    return pivot_rows_mod_p(std::move(columns), p).size();
}

std::vector<std::uint32_t> pivot_rows_mod_p(std::vector<ModPColumn> columns, unsigned p)
{
    // Short columns first keeps fill-in down.
    std::stable_sort(columns.begin(), columns.end(),
                     [](const ModPColumn& a, const ModPColumn& b) { return a.size() < b.size(); });
    std::vector<ModPColumn> reduced;
    std::unordered_map<std::uint32_t, std::size_t> pivot_of;  // lowest (largest) row -> reduced column
    ModPColumn work, tmp;
    for (auto& col : columns) {
        std::sort(col.begin(), col.end());
        work.clear();
        for (const auto& [row, value] : col) {
            const std::uint32_t v = value % p;
            if (!work.empty() && work.back().first == row)
                work.back().second = (work.back().second + v) % p;
            else
                work.emplace_back(row, v);
            if (!work.empty() && work.back().second == 0)
                work.pop_back();
        }
        while (!work.empty()) {
            auto it = pivot_of.find(work.back().first);
            if (it == pivot_of.end())
                break;
            const ModPColumn& other = reduced[it->second];
            const std::uint64_t f = work.back().second;  // pivots are normalized to 1
            // work -= f * other
            tmp.clear();
            std::size_t i = 0, j = 0;
            while (i < work.size() || j < other.size()) {
                if (j == other.size() || (i < work.size() && work[i].first < other[j].first)) {
                    tmp.push_back(work[i++]);
                } else if (i == work.size() || other[j].first < work[i].first) {
                    tmp.emplace_back(other[j].first, static_cast<std::uint32_t>((p - f) * other[j].second % p));
                    ++j;
                } else {
                    const auto v = static_cast<std::uint32_t>((work[i].second + (p - f) * other[j].second) % p);
                    if (v)
                        tmp.emplace_back(work[i].first, v);
                    ++i;
                    ++j;
                }
            }
            work.swap(tmp);
        }
        if (!work.empty()) {
            const std::uint64_t inv = inverse_mod(work.back().second, p);
            for (auto& e : work)
                e.second = static_cast<std::uint32_t>(e.second * inv % p);
            pivot_of.emplace(work.back().first, reduced.size());
            reduced.push_back(work);
        }
    }
    std::vector<std::uint32_t> pivots;
    pivots.reserve(reduced.size());
    for (const auto& col : reduced)
        pivots.push_back(col.back().first);
    return pivots;
}

std::size_t rank_mod_p_sparse(const SparseMatrix& m, unsigned p)
{
    std::vector<ModPColumn> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c))
            if (auto v = residue(e.value, p))
                cols[c].emplace_back(e.row, v);
    return rank_mod_p_columns(std::move(cols), p);
}

std::size_t rank_mod_p(const SparseMatrix& m, unsigned p)
{
    return m.density() > 0.25 ? rank_mod_p_dense(m, p) : rank_mod_p_sparse(m, p);
}

// ---- Smith normal form ----

std::vector<Integer> smith_normal_form(const SparseMatrix& m)
{
    auto a = m.to_dense();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Integer> diagonal;

    auto find_pivot = [&](std::size_t t, std::size_t& pr, std::size_t& pc) {
        bool found = false;
        Integer best;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c) {
                if (a[r][c] == 0)
                    continue;
                Integer v = abs(a[r][c]);
                if (!found || v < best) {
                    best = v;
                    pr = r;
                    pc = c;
                    found = true;
                }
            }
        return found;
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(t, pr, pc))
            break;
        for (;;) {
            std::swap(a[t], a[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);

            bool remainder = false;
            Integer q;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t c = t; c < cols; ++c)
                    if (a[t][c] != 0)
                        a[r][c] -= q * a[t][c];
                remainder |= a[r][t] != 0;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t r = t; r < rows; ++r)
                    if (a[r][t] != 0)
                        a[r][c] -= q * a[r][t];
                remainder |= a[t][c] != 0;
            }
            if (remainder) {
                find_pivot(t, pr, pc);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            bool fixed = true;
            for (std::size_t r = t + 1; r < rows && fixed; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] != 0 && !mpz_divisible_p(a[r][c].get_mpz_t(), a[t][t].get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[r][k];
                        fixed = false;
                        break;
                    }
            if (fixed)
                break;
            pr = t;
            pc = t;
        }
        diagonal.push_back(abs(a[t][t]));
    }
    return diagonal;
}

}  // namespace thh
