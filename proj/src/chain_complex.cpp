#include "thh/chain_complex.hpp"

#include "thh/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thh {

std::string AbelianGroup::format() const
{
    if (is_zero())
        return "0";
    std::string s;
    if (free_rank > 0)
        s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
        if (!s.empty())
            s += " + ";
        s += "Z/" + t.get_str();
    }
    return s;
}

AbelianGroup make_abelian_group(std::uint64_t free_rank, std::vector<Integer> orders)
{
    SparseMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0)
            throw std::invalid_argument("cyclic order 0; count it as a free summand instead");
        diag.add(i, i, abs(orders[i]));
    }
    AbelianGroup g;
    g.free_rank = free_rank;
    for (auto& d : smith_normal_form(diag))
        if (d > 1)
            g.torsion.push_back(std::move(d));
    return g;
}

std::vector<Integer> prime_power_decomposition(const std::vector<Integer>& torsion)
{
    std::vector<Integer> out;
    for (Integer t : torsion) {
        for (Integer p = 2; p * p <= t; ++p) {
            if (!mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t()))
                continue;
            Integer q = 1;
            while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
                t /= p;
                q *= p;
            }
            out.push_back(q);
        }
        if (t > 1)
            out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ChainComplex::ChainComplex(CoefficientRing ring, std::vector<std::size_t> ranks,
                           std::vector<SparseMatrix> differentials, bool truncated,
                           std::vector<std::vector<std::string>> labels)
    : ring_(ring), ranks_(std::move(ranks)), differentials_(std::move(differentials)), truncated_(truncated),
      labels_(std::move(labels))
{
    differentials_.resize(std::max<std::size_t>(ranks_.size(), 1));
    for (std::size_t n = 1; n < ranks_.size(); ++n) {
        auto& d = differentials_[n];
        if (d.rows() == 0 && d.cols() == 0 && (ranks_[n - 1] != 0 || ranks_[n] != 0))
            d = SparseMatrix(ranks_[n - 1], ranks_[n]);
        if (d.rows() != ranks_[n - 1] || d.cols() != ranks_[n])
            throw std::invalid_argument("d_" + std::to_string(n) + " has shape " + std::to_string(d.rows()) + "x" +
                                        std::to_string(d.cols()) + ", expected " + std::to_string(ranks_[n - 1]) +
                                        "x" + std::to_string(ranks_[n]));
        if (ring_.is_field())
            d = d.reduced(ring_);
    }
    labels_.resize(ranks_.size());
    for (std::size_t n = 0; n < ranks_.size(); ++n)
        if (!labels_[n].empty() && labels_[n].size() != ranks_[n])
            throw std::invalid_argument("label count mismatch in degree " + std::to_string(n));
}

std::size_t ChainComplex::rank(int n) const
{
    if (n < 0 || n > top_degree())
        return 0;
    return ranks_[static_cast<std::size_t>(n)];
}

SparseMatrix ChainComplex::differential(int n) const
{
    if (n >= 1 && n <= top_degree())
        return differentials_[static_cast<std::size_t>(n)];
    return SparseMatrix(rank(n - 1), rank(n));
}

const std::vector<std::string>& ChainComplex::labels(int n) const
{
    return labels_.at(static_cast<std::size_t>(n));
}

bool verify_complex(const ChainComplex& c)
{
    for (int n = 2; n <= c.top_degree(); ++n) {
        const auto prod = c.differential(n - 1) * c.differential(n);
        if (!prod.reduced(c.ring()).is_zero())
            return false;
    }
    return true;
}

namespace {

std::size_t matrix_rank(const SparseMatrix& m, const CoefficientRing& ring)
{
    if (ring.is_field())
        return rank_mod_p(m, ring.characteristic());
    return smith_normal_form(m).size();
}

}  // namespace

AbelianGroup homology(const ChainComplex& c, int n)
{
    if (n < 0)
        throw std::invalid_argument("negative homological degree");
    if (n > c.max_homology_degree()) {
        if (c.truncated())
            throw TruncationError("H_" + std::to_string(n) + " lies at or past the truncation boundary (top degree " +
                                  std::to_string(c.top_degree()) + ")");
        return {};
    }
    const std::size_t cn = c.rank(n);
    const std::size_t rank_out = matrix_rank(c.differential(n), c.ring());
    AbelianGroup g;
    if (c.ring().is_field()) {
        const std::size_t rank_in = matrix_rank(c.differential(n + 1), c.ring());
        g.free_rank = cn - rank_out - rank_in;
        return g;
    }
    // im d_{n+1} sits inside the saturated sublattice ker d_n, so the torsion of
    // H_n is read off the invariant factors of d_{n+1}.
    std::vector<Integer> factors = smith_normal_form(c.differential(n + 1));
    g.free_rank = cn - rank_out - factors.size();
    for (auto& f : factors)
        if (f > 1)
            g.torsion.push_back(std::move(f));
    return g;
}

GradedAbelianGroup homology_all(const ChainComplex& c)
{
    GradedAbelianGroup h;
    for (int n = 0; n <= c.max_homology_degree(); ++n)
        h.degrees.push_back(homology(c, n));
    return h;
}

PoincareVector homology_ranks(const ChainComplex& c)
{
    PoincareVector p;
    for (int n = 0; n <= c.max_homology_degree(); ++n)
        p.ranks.push_back(homology(c, n).free_rank);
    return p;
}

ChainComplex reduce_mod_p(const ChainComplex& c, unsigned p)
{
    const auto field = CoefficientRing::prime_field(p);
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> diffs(1);
    std::vector<std::vector<std::string>> labels;
    for (int n = 0; n <= c.top_degree(); ++n) {
        ranks.push_back(c.rank(n));
        labels.push_back(c.labels(n));
        if (n >= 1)
            diffs.push_back(c.differential(n).reduced(field));
    }
    return ChainComplex(field, std::move(ranks), std::move(diffs), c.truncated(), std::move(labels));
}

void write_complex_text(std::ostream& os, const ChainComplex& c)
{
    os << "ring " << c.ring().name() << "\n";
    os << "truncated " << (c.truncated() ? 1 : 0) << "\n";
    os << "ranks";
    for (int n = 0; n <= c.top_degree(); ++n)
        os << ' ' << c.rank(n);
    os << "\n";
    for (int n = 1; n <= c.top_degree(); ++n) {
        const auto d = c.differential(n);
        // Row-major listing so the file diffs cleanly.
        std::vector<std::tuple<std::uint32_t, std::size_t, Integer>> entries;
        for (std::size_t col = 0; col < d.cols(); ++col)
            for (const auto& e : d.column(col))
                entries.emplace_back(e.row, col, e.value);
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) <
                                                            std::tie(std::get<0>(b), std::get<1>(b)); });
        for (const auto& [r, col, v] : entries)
            os << n << ' ' << r << ' ' << col << ' ' << v.get_str() << "\n";
    }
}

ChainComplex read_complex_text(std::istream& is)
{
    std::string line, key;
    int line_no = 0;
    auto next = [&]() {
        while (std::getline(is, line)) {
            ++line_no;
            if (!line.empty() && line[0] != '#')
                return true;
        }
        return false;
    };
    if (!next())
        throw ParseError("missing 'ring' header", line_no);
    std::istringstream ring_line(line);
    std::string ring_name;
    ring_line >> key >> ring_name;
    if (key != "ring")
        throw ParseError("expected 'ring'", line_no);
    const auto ring = CoefficientRing::parse(ring_name);

    if (!next())
        throw ParseError("missing 'truncated' header", line_no);
    std::istringstream trunc_line(line);
    int truncated = 0;
    trunc_line >> key >> truncated;
    if (key != "truncated")
        throw ParseError("expected 'truncated'", line_no);

    if (!next())
        throw ParseError("missing 'ranks' header", line_no);
    std::istringstream ranks_line(line);
    ranks_line >> key;
    if (key != "ranks")
        throw ParseError("expected 'ranks'", line_no);
    std::vector<std::size_t> ranks;
    std::size_t r;
    while (ranks_line >> r)
        ranks.push_back(r);

    std::vector<SparseMatrix> diffs(ranks.size());
    for (std::size_t n = 1; n < ranks.size(); ++n)
        diffs[n] = SparseMatrix(ranks[n - 1], ranks[n]);
    while (next()) {
        std::istringstream entry(line);
        std::size_t n, row, col;
        std::string value;
        if (!(entry >> n >> row >> col >> value))
            throw ParseError("expected 'n row col value'", line_no);
        if (n == 0 || n >= ranks.size() || row >= ranks[n - 1] || col >= ranks[n])
            throw ParseError("entry index out of range", line_no);
        diffs[n].add(row, col, Integer(value));
    }
    return ChainComplex(ring, std::move(ranks), std::move(diffs), truncated != 0);
}

}  // namespace thh
