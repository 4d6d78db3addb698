#pragma once

#include <string>
#include <vector>

namespace thh {

/// A k-simplex in Eilenberg-Zilber normal form s_I x: the nondegenerate
/// simplex `id` of dimension m, pulled back along the monotone surjection
/// [k] -> [m] whose values are listed in `surjection`.
struct SimplexRef {
    std::size_t id = 0;
    std::vector<int> surjection{0};

    int dim() const { return static_cast<int>(surjection.size()) - 1; }
    int base_dim() const { return surjection.empty() ? -1 : surjection.back(); }
    bool degenerate() const { return dim() != base_dim(); }
    /// s_j x lies in the image of s_j iff the surjection repeats at j.
    bool jumps_at(int j) const { return surjection[j] != surjection[j + 1]; }

    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
};

/// Finite simplicial set given by its nondegenerate simplices and their faces.
class FiniteSimplicialSet {
public:
    struct Cell {
        std::string name;
        int dim = 0;
        std::vector<SimplexRef> faces;  // d_0 .. d_dim, each of dimension dim - 1
    };

    /// Checks face dimensions and d_i d_j = d_{j-1} d_i (i < j) on every cell.
    FiniteSimplicialSet(std::string name, std::vector<Cell> cells);

    static FiniteSimplicialSet point();
    static FiniteSimplicialSet interval();
    /// One vertex, one edge.
    static FiniteSimplicialSet circle_standard();
    /// v vertices and v edges around a loop; v = 1 is circle_standard.
    static FiniteSimplicialSet circle_subdivided(int v);

    const std::string& name() const { return name_; }
    const std::vector<Cell>& cells() const { return cells_; }
    int dimension() const;

    /// Every k-simplex, degenerate ones included, ordered by cell then surjection.
    std::vector<SimplexRef> simplices(int k) const;
    SimplexRef face(const SimplexRef& x, int i) const;
    SimplexRef degeneracy(const SimplexRef& x, int j) const;
    std::string format(const SimplexRef& x) const;

private:
    std::string name_;
    std::vector<Cell> cells_;
};

}  // namespace thh
