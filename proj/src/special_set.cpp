#include "epgmatch/special_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace epgmatch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_geometry(const Contour& a, const Contour& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != ContourKind::Proper)
        return std::fabs(a.anchor[0] - b.anchor[0]) <= 1e-12 &&
               std::fabs(a.anchor[1] - b.anchor[1]) <= 1e-12;
    if (a.polyline.size() != b.polyline.size()) return false;
    for (std::size_t i = 0; i < a.polyline.size(); ++i)
        if (std::fabs(a.polyline[i][0] - b.polyline[i][0]) > 1e-12 ||
            std::fabs(a.polyline[i][1] - b.polyline[i][1]) > 1e-12)
            return false;
    return true;
}

struct PairList {
    std::vector<std::array<int, 2>> pairs;  // (i < j) contour index pairs
    explicit PairList(std::size_t n) {
        for (int i = 0; i < int(n); ++i)
            for (int j = i + 1; j < int(n); ++j) pairs.push_back({i, j});
    }
};

// Intersection coordinates of every contour with r_(a,b); NaN when missed.
struct HitRow {
    std::vector<double> x, y;
    void compute(const std::vector<Contour>& contours, double a, double b) {
        x.assign(contours.size(), kNaN);
        y.assign(contours.size(), kNaN);
        const LineParam p{a, b};
        for (std::size_t k = 0; k < contours.size(); ++k) {
            if (auto h = intersect_contour(contours[k], int(k), p)) {
                x[k] = h->point[0];
                y[k] = h->point[1];
            }
        }
    }
};

double pair_gap(const HitRow& row, const std::array<int, 2>& pr, bool use_y) {
    const auto& c = use_y ? row.y : row.x;
    return std::fabs(c[pr[0]] - c[pr[1]]);  // NaN propagates
}

// Exact residual field of one condition; NaN where a contour misses the line.
struct CondField {
    const std::vector<Contour>* contours;
    std::array<int, 4> ids;  // P,Q,S,T
    int c1, c2;

    double eval(double a, double b, std::array<std::array<double, 2>, 4>* pts = nullptr) const {
        const LineParam p{a, b};
        std::array<std::array<double, 2>, 4> xy{};
        for (int k = 0; k < 4; ++k) {
            const auto h = intersect_contour((*contours)[std::size_t(ids[k])], ids[k], p);
            if (!h) return kNaN;
            xy[std::size_t(k)] = h->point;
        }
        if (pts) *pts = xy;
        const int coord = a <= 0.5 ? 0 : 1;
        const double d1 = std::fabs(xy[0][coord] - xy[1][coord]);
        const double d2 = std::fabs(xy[2][coord] - xy[3][coord]);
        return double(c1) * d1 - double(c2) * d2;
    }
};

struct RawSample {
    double a, b, residual;
    int orientation;  // 0: sample on a fixed-a sub-edge, 1: on a fixed-b sub-edge
    std::array<std::array<double, 2>, 4> points;
};

// Bisection along the segment (a0,b0)-(a1,b1); h must change sign.
std::optional<RawSample> bisect_edge(const CondField& f, double a0, double b0, double h0,
                                     double a1, double b1, double h1, double tol,
                                     int orientation) {
    (void)h1;
    double t0 = 0.0, t1 = 1.0;
    const bool low_negative = h0 < 0.0;
    for (int iter = 0; iter < 80; ++iter) {
        const double tm = 0.5 * (t0 + t1);
        const double am = a0 + (a1 - a0) * tm;
        const double bm = b0 + (b1 - b0) * tm;
        std::array<std::array<double, 2>, 4> pts;
        const double hm = f.eval(am, bm, &pts);
        if (std::isnan(hm)) return std::nullopt;  // crossed the condition's domain boundary
        if (std::fabs(hm) <= tol)
            return RawSample{am, bm, std::fabs(hm), orientation, pts};
        if ((hm < 0.0) == low_negative)
            t0 = tm;
        else
            t1 = tm;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SpecialValue> is_special(const LineParam& p, const std::vector<Contour>& contours,
                                       const SpecialOptions& opt) {
    if (!(p.a > 0.0 && p.a < 1.0)) throw std::invalid_argument("is_special: requires 0 < a < 1");
    HitRow row;
    row.compute(contours, p.a, p.b);

    const PairList pl(contours.size());
    std::vector<char> dup;
    if (opt.exclude_identical_geometry) {
        dup.assign(contours.size() * contours.size(), 0);
        for (std::size_t i = 0; i < contours.size(); ++i)
            for (std::size_t j = 0; j < contours.size(); ++j)
                dup[i * contours.size() + j] = same_geometry(contours[i], contours[j]);
    }
    auto degenerate_condition = [&](const std::array<int, 2>& pa, const std::array<int, 2>& pb) {
        if (dup.empty()) return false;
        const auto n = contours.size();
        const auto eq = [&](int i, int j) { return dup[std::size_t(i) * n + std::size_t(j)] != 0; };
        // pairs that are geometric copies of each other, or a pair whose two
        // contours coincide (its gap vanishes identically)
        return (eq(pa[0], pb[0]) && eq(pa[1], pb[1])) || (eq(pa[0], pb[1]) && eq(pa[1], pb[0])) ||
               eq(pa[0], pa[1]) || eq(pb[0], pb[1]);
    };

    std::optional<SpecialValue> best;
    const bool check_x = p.a <= 0.5;
    const bool check_y = p.a >= 0.5;
    static const std::array<std::array<int, 2>, 3> coeffs{{{1, 1}, {1, 2}, {2, 1}}};
    for (std::size_t m1 = 0; m1 < pl.pairs.size(); ++m1) {
        for (std::size_t m2 = m1 + 1; m2 < pl.pairs.size(); ++m2) {
            const auto& pa = pl.pairs[m1];
            const auto& pb = pl.pairs[m2];
            if (degenerate_condition(pa, pb)) continue;
            for (int use_y = 0; use_y < 2; ++use_y) {
                if ((use_y == 0 && !check_x) || (use_y == 1 && !check_y)) continue;
                const double d1 = pair_gap(row, pa, use_y != 0);
                const double d2 = pair_gap(row, pb, use_y != 0);
                if (std::isnan(d1) || std::isnan(d2)) continue;
                for (const auto& cc : coeffs) {
                    const double res = std::fabs(cc[0] * d1 - cc[1] * d2);
                    if (res <= opt.tol && (!best || res < best->residual)) {
                        SpecialValue sv;
                        sv.param = p;
                        sv.contours = {pa[0], pa[1], pb[0], pb[1]};
                        sv.c1 = cc[0];
                        sv.c2 = cc[1];
                        for (int k = 0; k < 4; ++k) {
                            const int id = sv.contours[std::size_t(k)];
                            sv.points[std::size_t(k)] = {row.x[id], row.y[id]};
                        }
                        sv.residual = res;
                        sv.used_ordinates = use_y != 0;
                        best = sv;
                    }
                }
            }
        }
    }
    return best;
}

std::vector<SpecialValue> find_special_values(const std::vector<Contour>& contours,
                                              const SpecialSearchConfig& cfg) {
    if (!(cfg.a_lo > 0.0 && cfg.a_hi < 1.0 && cfg.a_lo < cfg.a_hi))
        throw std::invalid_argument("find_special_values: a range must lie inside (0,1)");
    if (!(cfg.b_lo < cfg.b_hi)) throw std::invalid_argument("find_special_values: empty b range");
    if (cfg.res < 2 || cfg.refine < 1) throw std::invalid_argument("find_special_values: bad resolution");
    if (contours.size() < 3) return {};

    const int res = cfg.res;
    const int sub = cfg.refine;
    const auto n_pts = std::size_t(res + 1);
    auto a_at = [&](double t) { return cfg.a_lo + (cfg.a_hi - cfg.a_lo) * t; };
    auto b_at = [&](double t) { return cfg.b_lo + (cfg.b_hi - cfg.b_lo) * t; };

    const PairList pl(contours.size());
    const auto npairs = pl.pairs.size();

    std::vector<char> dup;
    if (cfg.exclude_identical_geometry) {
        dup.assign(contours.size() * contours.size(), 0);
        for (std::size_t i = 0; i < contours.size(); ++i)
            for (std::size_t j = 0; j < contours.size(); ++j)
                dup[i * contours.size() + j] = same_geometry(contours[i], contours[j]);
    }
    auto degenerate_condition = [&](const std::array<int, 2>& pa, const std::array<int, 2>& pb) {
        if (dup.empty()) return false;
        const auto n = contours.size();
        const auto eq = [&](int i, int j) { return dup[std::size_t(i) * n + std::size_t(j)] != 0; };
        return (eq(pa[0], pb[0]) && eq(pa[1], pb[1])) || (eq(pa[0], pb[1]) && eq(pa[1], pb[0])) ||
               eq(pa[0], pa[1]) || eq(pb[0], pb[1]);
    };

    // coarse pass: per-pair gaps on the (res+1)^2 lattice, coordinate picked
    // per lattice point (abscissas for a<=1/2, ordinates above)
    std::vector<double> gap(n_pts * n_pts * npairs);
    {
        HitRow row;
        for (std::size_t i = 0; i < n_pts; ++i) {
            const double a = a_at(double(i) / res);
            const bool use_y = a > 0.5;
            for (std::size_t j = 0; j < n_pts; ++j) {
                row.compute(contours, a, b_at(double(j) / res));
                double* out = &gap[(i * n_pts + j) * npairs];
                for (std::size_t m = 0; m < npairs; ++m) out[m] = pair_gap(row, pl.pairs[m], use_y);
            }
        }
    }

    static const std::array<std::array<int, 2>, 3> coeffs{{{1, 1}, {1, 2}, {2, 1}}};
    struct CondKey {
        std::size_t m1, m2;
        int ci;
        bool operator<(const CondKey& o) const {
            if (m1 != o.m1) return m1 < o.m1;
            if (m2 != o.m2) return m2 < o.m2;
            return ci < o.ci;
        }
    };

    // samples per condition, keyed for the per-condition dedup
    std::map<CondKey, std::vector<RawSample>> found;
    std::vector<std::map<CondKey, std::vector<RawSample>>> partial;

    const int workers = std::max(1, cfg.workers);
    partial.resize(std::size_t(workers));

    auto process_rows = [&](int worker) {
        auto& local = partial[std::size_t(worker)];
        std::vector<HitRow> subrows;
        std::vector<double> subgap;
        for (int ci_row = worker; ci_row < res; ci_row += workers) {
            const auto i = std::size_t(ci_row);
            for (std::size_t j = 0; j < std::size_t(res); ++j) {
                const double* g00 = &gap[(i * n_pts + j) * npairs];
                const double* g01 = &gap[(i * n_pts + j + 1) * npairs];
                const double* g10 = &gap[((i + 1) * n_pts + j) * npairs];
                const double* g11 = &gap[((i + 1) * n_pts + j + 1) * npairs];

                // conditions active in this cell: a sign change over the finite
                // corners, or a partially defined cell (the condition's domain
                // boundary passes through it and may hide a zero)
                std::vector<CondKey> active;
                for (std::size_t m1 = 0; m1 < npairs; ++m1) {
                    const int nan1 = int(std::isnan(g00[m1])) + int(std::isnan(g01[m1])) +
                                     int(std::isnan(g10[m1])) + int(std::isnan(g11[m1]));
                    if (nan1 == 4) continue;
                    for (std::size_t m2 = m1 + 1; m2 < npairs; ++m2) {
                        const int nan2 = int(std::isnan(g00[m2])) + int(std::isnan(g01[m2])) +
                                         int(std::isnan(g10[m2])) + int(std::isnan(g11[m2]));
                        if (nan2 == 4) continue;
                        if (degenerate_condition(pl.pairs[m1], pl.pairs[m2])) continue;
                        if (nan1 > 0 || nan2 > 0) {
                            for (int ci = 0; ci < 3; ++ci) active.push_back({m1, m2, ci});
                            continue;
                        }
                        for (int ci = 0; ci < 3; ++ci) {
                            const double c1 = coeffs[std::size_t(ci)][0], c2 = coeffs[std::size_t(ci)][1];
                            const double h00 = c1 * g00[m1] - c2 * g00[m2];
                            const double h01 = c1 * g01[m1] - c2 * g01[m2];
                            const double h10 = c1 * g10[m1] - c2 * g10[m2];
                            const double h11 = c1 * g11[m1] - c2 * g11[m2];
                            const double mn = std::min(std::min(h00, h01), std::min(h10, h11));
                            const double mx = std::max(std::max(h00, h01), std::max(h10, h11));
                            if (mn <= 0.0 && mx >= 0.0) active.push_back({m1, m2, ci});
                        }
                    }
                }
                if (active.empty()) continue;

                // shared sub-lattice of intersections for this cell
                const auto ns = std::size_t(sub + 1);
                subrows.assign(ns * ns, HitRow{});
                std::vector<double> sa(ns), sb(ns);
                std::vector<bool> sy(ns);
                for (std::size_t u = 0; u < ns; ++u) {
                    sa[u] = a_at((double(i) + double(u) / sub) / res);
                    sb[u] = b_at((double(j) + double(u) / sub) / res);
                    sy[u] = sa[u] > 0.5;
                }
                for (std::size_t u = 0; u < ns; ++u)
                    for (std::size_t v = 0; v < ns; ++v) subrows[u * ns + v].compute(contours, sa[u], sb[v]);

                for (const CondKey& key : active) {
                    const auto& pa = pl.pairs[key.m1];
                    const auto& pb = pl.pairs[key.m2];
                    const int c1 = coeffs[std::size_t(key.ci)][0], c2 = coeffs[std::size_t(key.ci)][1];
                    CondField field{&contours, {pa[0], pa[1], pb[0], pb[1]}, c1, c2};
                    subgap.assign(ns * ns, kNaN);
                    for (std::size_t u = 0; u < ns; ++u)
                        for (std::size_t v = 0; v < ns; ++v) {
                            const auto& r = subrows[u * ns + v];
                            const double d1 = pair_gap(r, pa, sy[u]);
                            const double d2 = pair_gap(r, pb, sy[u]);
                            subgap[u * ns + v] = c1 * d1 - c2 * d2;
                        }
                    auto& sink = local[key];
                    auto consider = [&](std::size_t u0, std::size_t v0, std::size_t u1,
                                        std::size_t v1, int orientation) {
                        const double h0 = subgap[u0 * ns + v0];
                        const double h1 = subgap[u1 * ns + v1];
                        if (std::isnan(h0) || std::isnan(h1)) return;
                        if (h0 == 0.0) {
                            std::array<std::array<double, 2>, 4> pts;
                            const double hv = field.eval(sa[u0], sb[v0], &pts);
                            if (!std::isnan(hv))
                                sink.push_back({sa[u0], sb[v0], std::fabs(hv), orientation, pts});
                            return;
                        }
                        if ((h0 < 0.0) == (h1 < 0.0)) return;
                        if (auto s = bisect_edge(field, sa[u0], sb[v0], h0, sa[u1], sb[v1], h1,
                                                 cfg.tol, orientation))
                            sink.push_back(*s);
                    };
                    for (std::size_t u = 0; u < ns; ++u)
                        for (std::size_t v = 0; v + 1 < ns; ++v) consider(u, v, u, v + 1, 0);
                    for (std::size_t v = 0; v < ns; ++v)
                        for (std::size_t u = 0; u + 1 < ns; ++u) consider(u, v, u + 1, v, 1);
                }
            }
        }
    };

    if (workers == 1) {
        process_rows(0);
    } else {
        std::vector<std::thread> pool;
        for (int wkr = 0; wkr < workers; ++wkr) pool.emplace_back(process_rows, wkr);
        for (auto& t : pool) t.join();
    }
    for (auto& local : partial)
        for (auto& [key, samples] : local) {
            auto& sink = found[key];
            sink.insert(sink.end(), samples.begin(), samples.end());
        }

    // per-condition dedup at sub-cell spacing, keep-first in (a,b) order
    const double fine_ra = (cfg.a_hi - cfg.a_lo) / double(res) / double(sub);
    const double fine_rb = (cfg.b_hi - cfg.b_lo) / double(res) / double(sub);
    std::vector<SpecialValue> out;
    for (auto& [key, samples] : found) {
        std::sort(samples.begin(), samples.end(), [](const RawSample& lhs, const RawSample& rhs) {
            if (lhs.a != rhs.a) return lhs.a < rhs.a;
            return lhs.b < rhs.b;
        });
        // buckets are split by edge orientation: curve crossings of the two
        // edge families sample different loci (e.g. the exact b=0 row) and
        // must not shadow each other
        std::map<std::array<long, 3>, char> buckets;
        for (const auto& s : samples) {
            const std::array<long, 3> cell{long(std::floor((s.a - cfg.a_lo) / fine_ra)),
                                           long(std::floor((s.b - cfg.b_lo) / fine_rb)),
                                           long(s.orientation)};
            if (!buckets.emplace(cell, 1).second) continue;
            SpecialValue sv;
            sv.param = {s.a, s.b};
            const auto& pa = pl.pairs[key.m1];
            const auto& pb = pl.pairs[key.m2];
            sv.contours = {pa[0], pa[1], pb[0], pb[1]};
            sv.c1 = coeffs[std::size_t(key.ci)][0];
            sv.c2 = coeffs[std::size_t(key.ci)][1];
            sv.points = s.points;
            sv.residual = s.residual;
            sv.used_ordinates = s.a >= 0.5;
            out.push_back(sv);
        }
    }
    std::sort(out.begin(), out.end(), [](const SpecialValue& lhs, const SpecialValue& rhs) {
        if (lhs.param.a != rhs.param.a) return lhs.param.a < rhs.param.a;
        if (lhs.param.b != rhs.param.b) return lhs.param.b < rhs.param.b;
        if (lhs.contours != rhs.contours) return lhs.contours < rhs.contours;
        if (lhs.c1 != rhs.c1) return lhs.c1 < rhs.c1;
        return lhs.c2 < rhs.c2;
    });
    return out;
}

std::vector<LineParam> thin_special_params(const std::vector<SpecialValue>& values, double ra,
                                           double rb) {
    std::vector<LineParam> params;
    params.reserve(values.size());
    for (const auto& v : values) params.push_back(v.param);
    std::sort(params.begin(), params.end(), [](const LineParam& lhs, const LineParam& rhs) {
        if (lhs.a != rhs.a) return lhs.a < rhs.a;
        return lhs.b < rhs.b;
    });
    std::map<std::array<long, 2>, char> buckets;
    std::vector<LineParam> out;
    for (const auto& p : params) {
        const std::array<long, 2> cell{long(std::floor(p.a / ra)), long(std::floor(p.b / rb))};
        if (buckets.emplace(cell, 1).second) out.push_back(p);
    }
    return out;
}

}  // namespace epgmatch
