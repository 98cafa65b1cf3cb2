#include "epgmatch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "epgmatch/json_out.hpp"

namespace epgmatch {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;  // world bounds
    double width = 640.0, height = 640.0, margin = 40.0;

    double sx(double x) const {
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin);
    }
    double sy(double y) const {
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin);
    }
};

const char* owner_color(const std::string& owner, ContourKind kind) {
    const bool first = owner.empty() || owner == "f";
    if (kind == ContourKind::Proper) return first ? "#d62728" : "#1f77b4";
    return first ? "#9467bd" : "#2ca02c";
}

}  // namespace

std::string epg_svg(const std::vector<const ExtendedParetoGrid*>& grids,
                    const std::optional<LineParam>& line) {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool seen = false;
    auto extend = [&](double x, double y) {
        if (!seen) {
            x0 = x1 = x;
            y0 = y1 = y;
            seen = true;
            return;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto* g : grids) {
        for (const auto& c : g->contours) {
            if (c.kind == ContourKind::Proper)
                for (const auto& p : c.polyline) extend(p[0], p[1]);
            else
                extend(c.anchor[0], c.anchor[1]);
        }
    }
    if (!seen) extend(0, 0), extend(1, 1);
    const double pad_x = 0.25 * std::max(1e-9, x1 - x0);
    const double pad_y = 0.25 * std::max(1e-9, y1 - y0);
    Frame fr{x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(fr.width) << "\" height=\""
        << fmt(fr.height) << "\" viewBox=\"0 0 " << fmt(fr.width) << ' ' << fmt(fr.height)
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto* g : grids) {
        for (const auto& c : g->contours) {
            const char* color = owner_color(c.owner.empty() ? g->owner : c.owner, c.kind);
            if (c.kind == ContourKind::Proper) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" class=\"contour proper\" points=\"";
                for (std::size_t i = 0; i < c.polyline.size(); ++i) {
                    if (i) out << ' ';
                    out << fmt(fr.sx(c.polyline[i][0])) << ',' << fmt(fr.sy(c.polyline[i][1]));
                }
                out << "\"/>\n";
            } else {
                const double ax = c.anchor[0], ay = c.anchor[1];
                double bx = ax, by = ay;
                if (c.kind == ContourKind::VerticalRay)
                    by = fr.y1;  // clipped at the canvas
                else
                    bx = fr.x1;
                out << "<line stroke=\"" << color
                    << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\" class=\"contour improper\" x1=\""
                    << fmt(fr.sx(ax)) << "\" y1=\"" << fmt(fr.sy(ay)) << "\" x2=\"" << fmt(fr.sx(bx))
                    << "\" y2=\"" << fmt(fr.sy(by)) << "\"/>\n";
            }
        }
    }

    if (line) {
        // clip r_(a,b) to the frame
        const LineParam p = *line;
        double tx0, tx1;
        if (p.a > 0.0) {
            tx0 = (fr.x0 - p.b) / p.a;
            tx1 = (fr.x1 - p.b) / p.a;
        } else {
            tx0 = (fr.y0 + p.b) / (1.0 - p.a);
            tx1 = (fr.y1 + p.b) / (1.0 - p.a);
        }
        const auto q0 = line_point(p, std::min(tx0, tx1));
        const auto q1 = line_point(p, std::max(tx0, tx1));
        out << "<line stroke=\"#333333\" stroke-width=\"1.2\" class=\"filtering-line\" x1=\""
            << fmt(fr.sx(q0[0])) << "\" y1=\"" << fmt(fr.sy(q0[1])) << "\" x2=\"" << fmt(fr.sx(q1[0]))
            << "\" y2=\"" << fmt(fr.sy(q1[1])) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_epg_svg(const std::vector<const ExtendedParetoGrid*>& grids,
                   const std::optional<LineParam>& line, const std::string& path) {
    write_text_file(path, epg_svg(grids, line));
}

namespace {

// five-stop blue->yellow map
void colormap(double t, int& r, int& g, int& b) {
    static const double stops[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int k = std::min(3, int(t));
    const double u = t - k;
    r = int(stops[k][0] + (stops[k + 1][0] - stops[k][0]) * u);
    g = int(stops[k][1] + (stops[k + 1][1] - stops[k][1]) * u);
    b = int(stops[k][2] + (stops[k + 1][2] - stops[k][2]) * u);
}

}  // namespace

std::string heatmap_svg(const std::vector<EvalEntry>& log, int na, int nb,
                        const LineParam& argmax) {
    if (log.size() != std::size_t(na) * std::size_t(nb))
        throw std::invalid_argument("heatmap_svg: log is not a full lattice");
    const double cell = 6.0, margin = 30.0;
    const double width = margin * 2 + cell * na;
    const double height = margin * 2 + cell * nb;

    double vmax = 0.0;
    for (const auto& e : log) vmax = std::max(vmax, std::isfinite(e.value) ? e.value : 0.0);
    if (vmax <= 0.0) vmax = 1.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    int argmax_i = 0, argmax_j = 0;
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            const auto& e = log[std::size_t(i) * std::size_t(nb) + std::size_t(j)];
            int r, g, b;
            colormap(std::isfinite(e.value) ? e.value / vmax : 0.0, r, g, b);
            out << "<rect class=\"cell\" x=\"" << fmt(margin + cell * i) << "\" y=\""
                << fmt(margin + cell * (nb - 1 - j)) << "\" width=\"" << fmt(cell) << "\" height=\""
                << fmt(cell) << "\" fill=\"rgb(" << r << ',' << g << ',' << b << ")\"/>\n";
            if (e.p.a == argmax.a && e.p.b == argmax.b) {
                argmax_i = i;
                argmax_j = j;
            }
        }
    }
    out << "<circle class=\"argmax\" cx=\"" << fmt(margin + cell * (argmax_i + 0.5)) << "\" cy=\""
        << fmt(margin + cell * (nb - 1 - argmax_j + 0.5))
        << "\" r=\"4\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(height - 8)
        << "\" font-size=\"10\" fill=\"#333\">a</text>\n";
    out << "<text x=\"8\" y=\"" << fmt(margin) << "\" font-size=\"10\" fill=\"#333\">b</text>\n";
    out << "</svg>\n";
    return out.str();
}

void write_heatmap_svg(const std::vector<EvalEntry>& log, int na, int nb, const LineParam& argmax,
                       const std::string& path) {
    write_text_file(path, heatmap_svg(log, na, nb, argmax));
}

}  // namespace epgmatch
