#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "epgmatch/filtration.hpp"

namespace epgmatch {

// (birth, death) with death = +inf for essential classes. birth is finite.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    bool essential() const;
};

struct PersistenceDiagram {
    int degree = 0;
    std::vector<DiagramPoint> points;

    std::size_t essential_count() const;
    std::size_t finite_count() const { return points.size() - essential_count(); }
};

// Raw reduction output in filtration positions, used by tests to compare
// against an independent rank oracle. Includes zero-persistence pairs.
struct ReductionPairs {
    std::vector<std::array<int32_t, 2>> pairs;  // (birth position, death position)
    std::vector<int32_t> essential;             // unpaired positive positions
};

ReductionPairs reduce_boundary_matrix(const Filtration& filt);

// Z/2 persistence by column reduction; zero-persistence points are dropped.
std::array<PersistenceDiagram, 3> compute_all_diagrams(const Filtration& filt);
PersistenceDiagram compute_diagram(const Filtration& filt, int degree);

}  // namespace epgmatch
