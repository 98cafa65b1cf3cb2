#pragma once

#include <array>
#include <optional>
#include <vector>

#include "epgmatch/pareto_grid.hpp"

namespace epgmatch {

// A parameter (a,b) where two distinct contour pairs {P,Q}, {S,T} of the
// merged grid realize c1*|x_P - x_Q| = c2*|x_S - x_T| (abscissas, a <= 1/2)
// or the ordinate analogue (a >= 1/2), with c1,c2 in {1,2}.
struct SpecialValue {
    LineParam param;
    std::array<int, 4> contours{-1, -1, -1, -1};       // P,Q,S,T as contour indices
    int c1 = 1, c2 = 1;
    std::array<std::array<double, 2>, 4> points{};     // intersection points P,Q,S,T
    double residual = 0.0;                             // |c1*d - c2*d'| at param
    bool used_ordinates = false;                       // which condition fired
};

struct SpecialOptions {
    double tol = 1e-6;
    // Skip condition instances whose two pairs have geometrically identical
    // contours (the f=g degenerate flood).
    bool exclude_identical_geometry = false;
};

// Smallest-residual witness at p, if residual <= tol. At a = 1/2 both the
// abscissa and the ordinate condition are evaluated.
std::optional<SpecialValue> is_special(const LineParam& p, const std::vector<Contour>& contours,
                                       const SpecialOptions& opt = {});

struct SpecialSearchConfig {
    double a_lo = 0.01, a_hi = 0.99;
    double b_lo = -1.0, b_hi = 1.0;
    int res = 128;        // coarse lattice cells per axis (res+1 sample points)
    double tol = 1e-6;    // residual target of the edge bisection
    int refine = 8;       // sub-cells per coarse cell axis in sign-change cells
    bool exclude_identical_geometry = false;
    int workers = 1;
};

// Lattice scan of all (pair-pair, coefficient) residual fields; cells with a
// sign change are refined on a local sub-lattice and every sub-edge crossing
// is bisected to |residual| <= tol. Samples are deduplicated per condition at
// sub-cell spacing and returned sorted by (a, b, contours).
std::vector<SpecialValue> find_special_values(const std::vector<Contour>& contours,
                                              const SpecialSearchConfig& cfg);

// Thin a special-value list to at most one parameter per (ra x rb) bucket,
// keeping the first in (a,b) order. Used to build candidate sets.
std::vector<LineParam> thin_special_params(const std::vector<SpecialValue>& values,
                                           double ra, double rb);

}  // namespace epgmatch
