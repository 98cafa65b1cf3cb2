#include "epgmatch/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epgmatch {

bool DiagramPoint::essential() const { return std::isinf(death); }

std::size_t PersistenceDiagram::essential_count() const {
    std::size_t n = 0;
    for (const auto& p : points)
        if (p.essential()) ++n;
    return n;
}

ReductionPairs reduce_boundary_matrix(const Filtration& filt) {
    const auto& cx = *filt.complex;
    const auto n = filt.size();
    const int32_t V = cx.n_vertices;
    const auto E = static_cast<int32_t>(cx.edges.size());

    // boundary columns in filtration positions, sorted ascending (pivot = back)
    std::vector<std::vector<int32_t>> columns(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const int32_t cell = filt.order[pos];
        auto& col = columns[pos];
        if (cell < V) continue;
        if (cell < V + E) {
            const auto& e = cx.edges[cell - V];
            col = {filt.position[e[0]], filt.position[e[1]]};
        } else {
            const auto& te = cx.triangle_edges[cell - V - E];
            col = {filt.position[V + te[0]], filt.position[V + te[1]], filt.position[V + te[2]]};
        }
        std::sort(col.begin(), col.end());
    }

    ReductionPairs out;
    std::vector<int32_t> pivot_owner(n, -1);
    std::vector<char> is_paired_birth(n, 0);
    std::vector<int32_t> scratch;
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            const int32_t piv = col.back();
            const int32_t owner = pivot_owner[piv];
            if (owner < 0) {
                pivot_owner[piv] = static_cast<int32_t>(j);
                out.pairs.push_back({piv, static_cast<int32_t>(j)});
                is_paired_birth[piv] = 1;
                break;
            }
            // col ^= columns[owner] over Z/2
            const auto& other = columns[owner];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (columns[j].empty() && !is_paired_birth[j]) out.essential.push_back(static_cast<int32_t>(j));
    return out;
}

std::array<PersistenceDiagram, 3> compute_all_diagrams(const Filtration& filt) {
    std::array<PersistenceDiagram, 3> out;
    for (int k = 0; k < 3; ++k) out[k].degree = k;
    const ReductionPairs red = reduce_boundary_matrix(filt);
    for (const auto& pr : red.pairs) {
        const double birth = filt.value[pr[0]];
        const double death = filt.value[pr[1]];
        if (birth == death) continue;
        out[filt.dim_at(pr[0])].points.push_back({birth, death});
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (const int32_t pos : red.essential)
        out[filt.dim_at(pos)].points.push_back({filt.value[pos], inf});
    auto by_coords = [](const DiagramPoint& a, const DiagramPoint& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    };
    for (auto& d : out) std::sort(d.points.begin(), d.points.end(), by_coords);
    return out;
}

PersistenceDiagram compute_diagram(const Filtration& filt, int degree) {
    return compute_all_diagrams(filt)[degree];
}

}  // namespace epgmatch
