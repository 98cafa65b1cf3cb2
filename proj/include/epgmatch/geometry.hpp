#pragma once

#include <array>
#include <vector>

#include "epgmatch/mesh.hpp"

namespace epgmatch {

// Parameter of the filtering line r_(a,b) = { t(a,1-a) + (b,-b) : t in R }.
// a in [0,1]; for a in (0,1) the slope (1-a)/a is positive. a=0 is the
// vertical line x=b, a=1 the horizontal line y=-b.
struct LineParam {
    double a = 0.5;
    double b = 0.0;
};

bool valid_line_param(const LineParam& p);

// Point of r_(a,b) at parameter t: (t*a + b, t*(1-a) - b).
std::array<double, 2> line_point(const LineParam& p, double t);

// Signed side of (x,y) with respect to r_(a,b): (1-a)*x - a*y - b.
// Zero exactly on the line, increasing towards the lower-right.
double line_side(const LineParam& p, double x, double y);

// Normalized scalar restriction f*_(a,b) at a single sample:
//   0 < a < 1:  min{a,1-a} * max{ (f1-b)/a, (f2+b)/(1-a) }
//   a = 0:      max{ f1 - b, 0 }
//   a = 1:      max{ 0, f2 + b }
// Boundary values use the closed-form limits, never a division.
double normalized_value(double f1, double f2, const LineParam& p);

struct ScalarSlice {
    std::vector<double> values;  // one per vertex of the source sample
    LineParam param;
};

ScalarSlice normalized_slice(const BiFunctionSample& s, const LineParam& p);

// max over vertices of max(|f1|,|f2|)
double uniform_norm(const BiFunctionSample& s);

// max over vertices of |x_i - y_i|; sizes must agree
double sup_norm_diff(const std::vector<double>& x, const std::vector<double>& y);

struct LipschitzReport {
    double lhs = 0.0;  // ||f*_p - f*_q||_inf over vertices
    double rhs = 0.0;  // 4|a-a'| (||f||_inf + C) + 3|b-b'|
    bool pass = false;
};

// Requires |p.b| <= c_bound (the bound plays the role of C); q.b is free.
LipschitzReport lipschitz_bound_check(const BiFunctionSample& s,
                                      const LineParam& p, const LineParam& q,
                                      double c_bound);

}  // namespace epgmatch
