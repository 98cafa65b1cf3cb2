#include "epgmatch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epgmatch {

bool valid_line_param(const LineParam& p) {
    return std::isfinite(p.a) && std::isfinite(p.b) && p.a >= 0.0 && p.a <= 1.0;
}

std::array<double, 2> line_point(const LineParam& p, double t) {
    return {t * p.a + p.b, t * (1.0 - p.a) - p.b};
}

double line_side(const LineParam& p, double x, double y) {
    return (1.0 - p.a) * x - p.a * y - p.b;
}

double normalized_value(double f1, double f2, const LineParam& p) {
    if (p.a == 0.0) return std::max(f1 - p.b, 0.0);
    if (p.a == 1.0) return std::max(0.0, f2 + p.b);
    const double m = std::min(p.a, 1.0 - p.a);
    return m * std::max((f1 - p.b) / p.a, (f2 + p.b) / (1.0 - p.a));
}

ScalarSlice normalized_slice(const BiFunctionSample& s, const LineParam& p) {
    if (!valid_line_param(p)) throw std::invalid_argument("normalized_slice: invalid line parameter");
    ScalarSlice out;
    out.param = p;
    out.values.resize(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out.values[i] = normalized_value(s.values[i][0], s.values[i][1], p);
    return out;
}

double uniform_norm(const BiFunctionSample& s) {
    double m = 0.0;
    for (const auto& v : s.values) m = std::max(m, std::max(std::fabs(v[0]), std::fabs(v[1])));
    return m;
}

double sup_norm_diff(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("sup_norm_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

LipschitzReport lipschitz_bound_check(const BiFunctionSample& s, const LineParam& p,
                                      const LineParam& q, double c_bound) {
    if (std::fabs(p.b) > c_bound)
        throw std::domain_error("lipschitz_bound_check: |b| exceeds the bound C");
    LipschitzReport r;
    const ScalarSlice sp = normalized_slice(s, p);
    const ScalarSlice sq = normalized_slice(s, q);
    r.lhs = sup_norm_diff(sp.values, sq.values);
    r.rhs = 4.0 * std::fabs(p.a - q.a) * (uniform_norm(s) + c_bound) + 3.0 * std::fabs(p.b - q.b);
    r.pass = r.lhs <= r.rhs + 1e-12;
    return r;
}

}  // namespace epgmatch
