#pragma once

#include <utility>
#include <vector>

#include "epgmatch/persistence.hpp"

namespace epgmatch {

// Point metric of the bottleneck distance. nullptr stands for the diagonal.
//   finite x finite:  min{ max{|x1-y1|,|x2-y2|}, max{pers(X)/2, pers(Y)/2} }
//   finite x delta:   pers/2
//   delta  x delta:   0
//   essential x essential: |birth difference|
//   essential x (finite or delta): +inf
double point_distance(const DiagramPoint* x, const DiagramPoint* y);

struct WitnessPair {
    int from = -1;  // index into first diagram, -1 = diagonal
    int to = -1;    // index into second diagram, -1 = diagonal
    double cost = 0.0;
};

struct MatchingWitness {
    std::vector<WitnessPair> pairs;  // covers all off-diagonal points of both sides
    double cost = 0.0;               // max over pairs
    bool attains_point_pair = false;     // type (1): cost on a point<->point pair
    bool attains_diagonal_pair = false;  // type (2): cost on a point<->delta pair
};

// Exact bottleneck distance: threshold search over the finite set of pairwise
// point distances with bipartite feasibility matching. Diagrams must have the
// same degree; mismatched essential counts give +inf.
std::pair<double, MatchingWitness> bottleneck_distance(const PersistenceDiagram& d1,
                                                       const PersistenceDiagram& d2);

// Exhaustive minimum over all bijections-with-diagonal. Test oracle; throws
// std::domain_error when the combined point count exceeds 8.
double brute_force_bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

}  // namespace epgmatch
