#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epgmatch/geometry.hpp"
#include "epgmatch/persistence.hpp"

namespace epgmatch {

enum class ContourKind { Proper, VerticalRay, HorizontalRay };

// One contour of an extended Pareto grid. Proper contours are monotone
// polylines (x non-decreasing, y non-increasing); improper contours are
// unbounded half-lines: vertical {x=x0, y>=y0}, horizontal {y=y0, x>=x0}
// anchored at (x0,y0).
struct Contour {
    std::string id;
    ContourKind kind = ContourKind::Proper;
    std::string owner;                            // function tag, e.g. "f" or "g"
    std::vector<std::array<double, 2>> polyline;  // Proper only
    std::array<double, 2> anchor{0.0, 0.0};       // rays only
};

struct ExtendedParetoGrid {
    std::string owner;
    std::vector<Contour> contours;
};

// Throws std::invalid_argument naming the offending contour on a
// monotonicity violation or malformed geometry.
void validate_contours(const ExtendedParetoGrid& grid);

// Analytic extended Pareto grid of g(x,y,z) = (c1*x + d1, c2*z + d2) on the
// unit sphere (c1, c2 > 0). Two proper quarter-ellipse arcs sampled with
// `samples` points each, plus four improper half-lines anchored at
// (d1 +- c1, d2) and (d1, d2 +- c2).
ExtendedParetoGrid sphere_affine_epg(double c1, double d1, double c2, double d2,
                                     int samples = 512, const std::string& owner = "f");

struct GridHit {
    int contour = -1;              // index into the queried contour list
    std::array<double, 2> point{}; // intersection with r_(a,b)
    double t = 0.0;                // line parameter of the intersection
};

// At most one hit per contour (contours are monotone, the line has positive
// slope). Hits sorted by abscissa then contour index. Handles a=0 (vertical
// line x=b) and a=1 (horizontal line y=-b) as special cases.
std::optional<GridHit> intersect_contour(const Contour& c, int index, const LineParam& p);
std::vector<GridHit> line_intersections(const std::vector<Contour>& contours, const LineParam& p);
std::vector<GridHit> line_intersections(const ExtendedParetoGrid& grid, const LineParam& p);

// Merge contours of two grids, prefixing ids with the owner tag.
std::vector<Contour> merge_contours(const ExtendedParetoGrid& gf, const ExtendedParetoGrid& gg);

// Position check: every finite coordinate w of every diagram point must match
// some intersection (p1,p2) of r_(a,b) with the grid via
//   w = min{a,1-a}/a * (p1 - b)  ( = min{a,1-a}/(1-a) * (p2 + b) on the line).
struct PositionEntry {
    double coordinate = 0.0;   // diagram coordinate w
    int degree = 0;
    double best_w = 0.0;       // nearest normalized grid coordinate
    int best_contour = -1;
    double residual = 0.0;     // |coordinate - best_w|
    bool matched = false;      // residual <= tol
};

struct PositionReport {
    std::vector<PositionEntry> entries;
    double worst_residual = 0.0;
    std::size_t failures = 0;
    bool all_matched() const { return failures == 0; }
};

PositionReport position_check(const PersistenceDiagram& d, const ExtendedParetoGrid& grid,
                              const LineParam& p, double tol);

}  // namespace epgmatch
