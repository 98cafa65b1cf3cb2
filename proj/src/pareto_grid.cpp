#include "epgmatch/pareto_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epgmatch {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void validate_contours(const ExtendedParetoGrid& grid) {
    for (const auto& c : grid.contours) {
        if (c.kind == ContourKind::Proper) {
            if (c.polyline.size() < 2)
                throw std::invalid_argument("contour " + c.id + ": proper contour needs >= 2 points");
            for (std::size_t k = 0; k + 1 < c.polyline.size(); ++k) {
                const auto& p = c.polyline[k];
                const auto& q = c.polyline[k + 1];
                if (!(std::isfinite(q[0]) && std::isfinite(q[1])))
                    throw std::invalid_argument("contour " + c.id + ": non-finite point");
                if (q[0] < p[0])
                    throw std::invalid_argument("contour " + c.id + ": abscissas must be non-decreasing");
                if (q[1] > p[1])
                    throw std::invalid_argument("contour " + c.id + ": ordinates must be non-increasing");
            }
        } else {
            if (!(std::isfinite(c.anchor[0]) && std::isfinite(c.anchor[1])))
                throw std::invalid_argument("contour " + c.id + ": non-finite anchor");
        }
    }
}

ExtendedParetoGrid sphere_affine_epg(double c1, double d1, double c2, double d2, int samples,
                                     const std::string& owner) {
    if (c1 <= 0.0 || c2 <= 0.0) throw std::domain_error("sphere_affine_epg: scales must be positive");
    if (samples < 2) throw std::domain_error("sphere_affine_epg: need at least 2 samples per arc");

    ExtendedParetoGrid g;
    g.owner = owner;
    auto ray = [&](const std::string& suffix, ContourKind kind, double x, double y) {
        Contour c;
        c.id = owner + "." + suffix;
        c.kind = kind;
        c.owner = owner;
        c.anchor = {x, y};
        return c;
    };
    // critical points of g1 at (+-1,0,0), of g2 at (0,0,+-1)
    g.contours.push_back(ray("v+", ContourKind::VerticalRay, d1 + c1, d2));
    g.contours.push_back(ray("v-", ContourKind::VerticalRay, d1 - c1, d2));
    g.contours.push_back(ray("h+", ContourKind::HorizontalRay, d1, d2 + c2));
    g.contours.push_back(ray("h-", ContourKind::HorizontalRay, d1, d2 - c2));

    // Pareto-critical arcs of (x,z) on the great circle y=0, mapped by the
    // affine change of coordinates. Sampled with x non-decreasing.
    auto arc = [&](const std::string& suffix, double theta_from, double theta_to) {
        Contour c;
        c.id = owner + "." + suffix;
        c.kind = ContourKind::Proper;
        c.owner = owner;
        c.polyline.reserve(std::size_t(samples));
        for (int i = 0; i < samples; ++i) {
            const double theta = theta_from + (theta_to - theta_from) * double(i) / double(samples - 1);
            c.polyline.push_back({c1 * std::cos(theta) + d1, c2 * std::sin(theta) + d2});
        }
        return c;
    };
    g.contours.push_back(arc("arc+", kPi / 2.0, 0.0));        // (d1, d2+c2) -> (d1+c1, d2)
    g.contours.push_back(arc("arc-", kPi, 1.5 * kPi));        // (d1-c1, d2) -> (d1, d2-c2)
    validate_contours(g);
    return g;
}

namespace {

double line_t_of_point(const LineParam& p, double x, double y) {
    // pick the better-conditioned coordinate
    if (p.a >= 1.0 - p.a) return (x - p.b) / p.a;
    return (y + p.b) / (1.0 - p.a);
}

std::optional<GridHit> intersect_proper(const Contour& c, int index, const LineParam& p) {
    const auto& pts = c.polyline;
    if (p.a == 0.0) {
        // vertical line x = b
        const double x = p.b;
        if (x < pts.front()[0] || x > pts.back()[0]) return std::nullopt;
        std::size_t lo = 0, hi = pts.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (pts[mid][0] <= x ? lo : hi) = mid;
        }
        const double dx = pts[hi][0] - pts[lo][0];
        const double s = dx > 0.0 ? (x - pts[lo][0]) / dx : 0.0;
        const double y = pts[lo][1] + s * (pts[hi][1] - pts[lo][1]);
        return GridHit{index, {x, y}, y + p.b};
    }
    if (p.a == 1.0) {
        // horizontal line y = -b
        const double y = -p.b;
        if (y > pts.front()[1] || y < pts.back()[1]) return std::nullopt;
        std::size_t lo = 0, hi = pts.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (pts[mid][1] >= y ? lo : hi) = mid;
        }
        const double dy = pts[hi][1] - pts[lo][1];
        const double s = dy != 0.0 ? (y - pts[lo][1]) / dy : 0.0;
        const double x = pts[lo][0] + s * (pts[hi][0] - pts[lo][0]);
        return GridHit{index, {x, y}, x - p.b};
    }

    // side() is strictly increasing along a monotone polyline for 0<a<1
    const double side_first = line_side(p, pts.front()[0], pts.front()[1]);
    const double side_last = line_side(p, pts.back()[0], pts.back()[1]);
    if (side_first > 0.0 || side_last < 0.0) return std::nullopt;
    std::size_t lo = 0, hi = pts.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (line_side(p, pts[mid][0], pts[mid][1]) <= 0.0 ? lo : hi) = mid;
    }
    const double s_lo = line_side(p, pts[lo][0], pts[lo][1]);
    const double s_hi = line_side(p, pts[hi][0], pts[hi][1]);
    double s = 0.0;
    if (s_hi != s_lo) s = -s_lo / (s_hi - s_lo);
    s = std::clamp(s, 0.0, 1.0);
    const double x = pts[lo][0] + s * (pts[hi][0] - pts[lo][0]);
    const double y = pts[lo][1] + s * (pts[hi][1] - pts[lo][1]);
    return GridHit{index, {x, y}, line_t_of_point(p, x, y)};
}

}  // namespace

std::optional<GridHit> intersect_contour(const Contour& c, int index, const LineParam& p) {
    switch (c.kind) {
        case ContourKind::VerticalRay: {
            if (p.a == 0.0) return std::nullopt;  // parallel
            if (p.a == 1.0) {
                const double y = -p.b;
                if (y < c.anchor[1]) return std::nullopt;
                return GridHit{index, {c.anchor[0], y}, c.anchor[0] - p.b};
            }
            const double t = (c.anchor[0] - p.b) / p.a;
            const double y = t * (1.0 - p.a) - p.b;
            if (y < c.anchor[1]) return std::nullopt;
            return GridHit{index, {c.anchor[0], y}, t};
        }
        case ContourKind::HorizontalRay: {
            if (p.a == 1.0) return std::nullopt;  // parallel
            if (p.a == 0.0) {
                const double x = p.b;
                if (x < c.anchor[0]) return std::nullopt;
                return GridHit{index, {x, c.anchor[1]}, c.anchor[1] + p.b};
            }
            const double t = (c.anchor[1] + p.b) / (1.0 - p.a);
            const double x = t * p.a + p.b;
            if (x < c.anchor[0]) return std::nullopt;
            return GridHit{index, {x, c.anchor[1]}, t};
        }
        case ContourKind::Proper:
            return intersect_proper(c, index, p);
    }
    return std::nullopt;
}

std::vector<GridHit> line_intersections(const std::vector<Contour>& contours, const LineParam& p) {
    std::vector<GridHit> hits;
    hits.reserve(contours.size());
    for (std::size_t i = 0; i < contours.size(); ++i) {
        if (auto h = intersect_contour(contours[i], static_cast<int>(i), p)) hits.push_back(*h);
    }
    std::sort(hits.begin(), hits.end(), [](const GridHit& lhs, const GridHit& rhs) {
        if (lhs.point[0] != rhs.point[0]) return lhs.point[0] < rhs.point[0];
        return lhs.contour < rhs.contour;
    });
    return hits;
}

std::vector<GridHit> line_intersections(const ExtendedParetoGrid& grid, const LineParam& p) {
    return line_intersections(grid.contours, p);
}

std::vector<Contour> merge_contours(const ExtendedParetoGrid& gf, const ExtendedParetoGrid& gg) {
    std::vector<Contour> out;
    out.reserve(gf.contours.size() + gg.contours.size());
    auto append = [&](const ExtendedParetoGrid& g) {
        for (Contour c : g.contours) {
            if (c.id.rfind(g.owner + ".", 0) != 0) c.id = g.owner + "." + c.id;
            if (c.owner.empty()) c.owner = g.owner;
            out.push_back(std::move(c));
        }
    };
    append(gf);
    append(gg);
    return out;
}

PositionReport position_check(const PersistenceDiagram& d, const ExtendedParetoGrid& grid,
                              const LineParam& p, double tol) {
    if (!(p.a > 0.0 && p.a < 1.0))
        throw std::invalid_argument("position_check: requires 0 < a < 1");
    PositionReport rep;
    const auto hits = line_intersections(grid, p);
    const double scale = std::min(p.a, 1.0 - p.a) / p.a;

    std::vector<double> ws;
    ws.reserve(hits.size());
    for (const auto& h : hits) ws.push_back(scale * (h.point[0] - p.b));

    auto check_coord = [&](double w) {
        PositionEntry e;
        e.coordinate = w;
        e.degree = d.degree;
        e.residual = kInf;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const double r = std::fabs(w - ws[i]);
            if (r < e.residual) {
                e.residual = r;
                e.best_w = ws[i];
                e.best_contour = hits[i].contour;
            }
        }
        e.matched = e.residual <= tol;
        rep.entries.push_back(e);
    };
    for (const auto& pt : d.points) {
        check_coord(pt.birth);
        if (!pt.essential()) check_coord(pt.death);
    }
    for (const auto& e : rep.entries) {
        rep.worst_residual = std::max(rep.worst_residual, e.residual);
        if (!e.matched) ++rep.failures;
    }
    return rep;
}

}  // namespace epgmatch
