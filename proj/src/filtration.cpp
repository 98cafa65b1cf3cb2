#include "epgmatch/filtration.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace epgmatch {

SimplicialSurface SimplicialSurface::build(const SurfaceMesh& mesh) {
    SimplicialSurface cx;
    cx.n_vertices = static_cast<int32_t>(mesh.vertex_count());
    cx.edges = mesh.edges();

    cx.triangles.reserve(mesh.triangle_count());
    for (auto t : mesh.triangles) {
        std::sort(t.begin(), t.end());
        cx.triangles.push_back(t);
    }
    std::sort(cx.triangles.begin(), cx.triangles.end());

    auto edge_index = [&](int32_t u, int32_t v) {
        const std::array<int32_t, 2> key{u, v};
        const auto it = std::lower_bound(cx.edges.begin(), cx.edges.end(), key);
        return static_cast<int32_t>(it - cx.edges.begin());
    };
    cx.triangle_edges.reserve(cx.triangles.size());
    for (const auto& t : cx.triangles)
        cx.triangle_edges.push_back({edge_index(t[0], t[1]), edge_index(t[0], t[2]), edge_index(t[1], t[2])});
    return cx;
}

Filtration build_lower_star(const SimplicialSurface& cx, const ScalarSlice& slice) {
    if (slice.values.size() != std::size_t(cx.n_vertices))
        throw std::invalid_argument("build_lower_star: slice length does not match the mesh");

    const auto V = std::size_t(cx.n_vertices);
    const auto E = cx.edges.size();
    const auto n = cx.size();

    Filtration f;
    f.complex = &cx;
    f.value.resize(n);
    f.order.resize(n);
    f.position.resize(n);

    std::vector<double> cell_value(n);
    for (std::size_t v = 0; v < V; ++v) cell_value[v] = slice.values[v];
    for (std::size_t e = 0; e < E; ++e)
        cell_value[V + e] = std::max(slice.values[cx.edges[e][0]], slice.values[cx.edges[e][1]]);
    for (std::size_t t = 0; t < cx.triangles.size(); ++t) {
        const auto& tri = cx.triangles[t];
        cell_value[V + E + t] =
            std::max(slice.values[tri[0]], std::max(slice.values[tri[1]], slice.values[tri[2]]));
    }

    std::iota(f.order.begin(), f.order.end(), 0);
    auto verts_of = [&](int32_t cell) -> std::array<int32_t, 3> {
        if (cell < int32_t(V)) return {cell, -1, -1};
        if (cell < int32_t(V + E)) {
            const auto& e = cx.edges[cell - int32_t(V)];
            return {e[0], e[1], -1};
        }
        return cx.triangles[cell - int32_t(V + E)];
    };
    std::sort(f.order.begin(), f.order.end(), [&](int32_t lhs, int32_t rhs) {
        if (cell_value[lhs] != cell_value[rhs]) return cell_value[lhs] < cell_value[rhs];
        const int dl = cx.dim_of(lhs), dr = cx.dim_of(rhs);
        if (dl != dr) return dl < dr;
        return verts_of(lhs) < verts_of(rhs);
    });

    for (std::size_t pos = 0; pos < n; ++pos) {
        f.value[pos] = cell_value[f.order[pos]];
        f.position[f.order[pos]] = static_cast<int32_t>(pos);
    }
    return f;
}

}  // namespace epgmatch
