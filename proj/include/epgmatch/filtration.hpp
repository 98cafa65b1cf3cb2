#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "epgmatch/geometry.hpp"

namespace epgmatch {

// Combinatorial structure of a triangle mesh, shared between slices.
// Cell ids: vertices [0, V), edges [V, V+E), triangles [V+E, V+E+T).
struct SimplicialSurface {
    int32_t n_vertices = 0;
    std::vector<std::array<int32_t, 2>> edges;           // u < v, lex-sorted
    std::vector<std::array<int32_t, 3>> triangles;       // sorted vertex ids
    std::vector<std::array<int32_t, 3>> triangle_edges;  // indices into edges

    static SimplicialSurface build(const SurfaceMesh& mesh);

    std::size_t size() const { return std::size_t(n_vertices) + edges.size() + triangles.size(); }
    int dim_of(int32_t cell) const {
        if (cell < n_vertices) return 0;
        return cell < n_vertices + int32_t(edges.size()) ? 1 : 2;
    }
};

// Lower-star filtration: entry value of a simplex is the max of its vertices'
// slice values; total order by (value, dim, lex vertex ids).
struct Filtration {
    const SimplicialSurface* complex = nullptr;
    std::vector<int32_t> order;     // position -> cell id
    std::vector<double> value;      // position -> entry value
    std::vector<int32_t> position;  // cell id -> position

    std::size_t size() const { return order.size(); }
    int dim_at(std::size_t pos) const { return complex->dim_of(order[pos]); }
};

// Throws std::invalid_argument when slice length != vertex count.
Filtration build_lower_star(const SimplicialSurface& cx, const ScalarSlice& slice);

}  // namespace epgmatch
