#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "epgmatch/json_out.hpp"
#include "epgmatch/matching.hpp"
#include "epgmatch/pareto_grid.hpp"

using namespace epgmatch;

namespace {

const Contour& by_id(const ExtendedParetoGrid& g, const std::string& id) {
    for (const auto& c : g.contours)
        if (c.id == id) return c;
    REQUIRE(false);
    return g.contours.front();
}

}  // namespace

TEST_CASE("unit grid has the four half-lines and two monotone arcs") {
    const ExtendedParetoGrid g = sphere_affine_epg(1, 0, 1, 0);
    REQUIRE(g.contours.size() == 6);
    CHECK(by_id(g, "f.v+").anchor == std::array<double, 2>{1, 0});
    CHECK(by_id(g, "f.v-").anchor == std::array<double, 2>{-1, 0});
    CHECK(by_id(g, "f.h+").anchor == std::array<double, 2>{0, 1});
    CHECK(by_id(g, "f.h-").anchor == std::array<double, 2>{0, -1});

    const Contour& up = by_id(g, "f.arc+");
    REQUIRE(up.polyline.size() == 512);
    CHECK(up.polyline.front()[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.polyline.front()[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(up.polyline.back()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(up.polyline.back()[1] == doctest::Approx(0.0).epsilon(1e-15));
    for (const auto& p : up.polyline)
        CHECK(p[0] * p[0] + p[1] * p[1] == doctest::Approx(1.0).epsilon(1e-14));

    const Contour& dn = by_id(g, "f.arc-");
    CHECK(dn.polyline.front()[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(dn.polyline.back()[1] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("affine grid is the affine image of the unit grid") {
    const ExtendedParetoGrid unit = sphere_affine_epg(1, 0, 1, 0, 256);
    const ExtendedParetoGrid aff = sphere_affine_epg(2.1, 2.0, 0.6, 1.8, 256);
    REQUIRE(aff.contours.size() == unit.contours.size());
    for (std::size_t i = 0; i < unit.contours.size(); ++i) {
        const Contour& cu = unit.contours[i];
        const Contour& ca = aff.contours[i];
        CHECK(cu.kind == ca.kind);
        if (cu.kind == ContourKind::Proper) {
            REQUIRE(cu.polyline.size() == ca.polyline.size());
            for (std::size_t k = 0; k < cu.polyline.size(); ++k) {
                CHECK(std::fabs(2.1 * cu.polyline[k][0] + 2.0 - ca.polyline[k][0]) <= 1e-12);
                CHECK(std::fabs(0.6 * cu.polyline[k][1] + 1.8 - ca.polyline[k][1]) <= 1e-12);
            }
        } else {
            CHECK(std::fabs(2.1 * cu.anchor[0] + 2.0 - ca.anchor[0]) <= 1e-12);
            CHECK(std::fabs(0.6 * cu.anchor[1] + 1.8 - ca.anchor[1]) <= 1e-12);
        }
    }
    CHECK(by_id(aff, "f.v+").anchor[0] == doctest::Approx(4.1).epsilon(1e-15));
    CHECK(by_id(aff, "f.v-").anchor[0] == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(by_id(aff, "f.h+").anchor[1] == doctest::Approx(2.4).epsilon(1e-15));
    CHECK(by_id(aff, "f.h-").anchor[1] == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("non-positive scales are rejected") {
    CHECK_THROWS_AS(sphere_affine_epg(0.0, 0, 1, 0), std::domain_error);
    CHECK_THROWS_AS(sphere_affine_epg(1, 0, -2, 0), std::domain_error);
}

TEST_CASE("line_intersections on the unit grid at (1/2, 0)") {
    const ExtendedParetoGrid g = sphere_affine_epg(1, 0, 1, 0, 4096);
    const auto hits = line_intersections(g, {0.5, 0.0});
    REQUIRE(hits.size() == 4);  // v+, h+ at (1,1); both arcs at +-(1/sqrt2)
    // arc hits carry the polyline chord error, about (pi/2/4095)^2/8
    const double s = std::sqrt(0.5);
    CHECK(hits[0].point[0] == doctest::Approx(-s).epsilon(1e-7));
    CHECK(hits[0].point[1] == doctest::Approx(-s).epsilon(1e-7));
    CHECK(hits[1].point[0] == doctest::Approx(s).epsilon(1e-7));
    CHECK(hits[2].point[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hits[2].point[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hits[3].point[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hits[3].point[1] == doctest::Approx(1.0).epsilon(1e-15));

    // x=-1 ray requires y>=0, the line reaches it at y=-1: no hit
    const Contour& vm = by_id(g, "f.v-");
    CHECK_FALSE(intersect_contour(vm, 0, {0.5, 0.0}).has_value());
    // y=-1 ray requires x>=0, reached at x=-1: no hit
    const Contour& hm = by_id(g, "f.h-");
    CHECK_FALSE(intersect_contour(hm, 0, {0.5, 0.0}).has_value());
}

TEST_CASE("horizontal ray closed form") {
    Contour c;
    c.id = "h";
    c.kind = ContourKind::HorizontalRay;
    c.anchor = {0.0, 1.0};
    const auto h = intersect_contour(c, 0, {0.5, 0.0});
    REQUIRE(h.has_value());
    CHECK(h->point[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h->point[1] == 1.0);
}

TEST_CASE("a line below a proper-only grid misses it") {
    ExtendedParetoGrid g;
    g.owner = "f";
    Contour c;
    c.id = "arc";
    c.kind = ContourKind::Proper;
    c.polyline = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    g.contours.push_back(c);
    CHECK(line_intersections(g, {0.5, 10.0}).empty());
    CHECK(line_intersections(g, {0.02, 10.0}).empty());
}

TEST_CASE("boundary line parameters a=0 and a=1") {
    const ExtendedParetoGrid g = sphere_affine_epg(1, 0, 1, 0, 4096);
    // a=0: vertical line x=b
    const auto v_hits = line_intersections(g, {0.0, 0.5});
    // crosses arc+ at (0.5, sqrt(3)/2), h+ at (0.5,1)? no: h+ needs x>=0 at y=1 -> yes (0.5, 1)
    bool arc_hit = false, ray_hit = false;
    for (const auto& h : v_hits) {
        if (g.contours[std::size_t(h.contour)].kind == ContourKind::Proper) {
            CHECK(h.point[0] == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(h.point[1] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
            arc_hit = true;
        }
        if (g.contours[std::size_t(h.contour)].kind == ContourKind::HorizontalRay) ray_hit = true;
    }
    CHECK(arc_hit);
    CHECK(ray_hit);
    // a=1: horizontal line y=-b
    const auto h_hits = line_intersections(g, {1.0, -0.25});
    bool vertical_hit = false;
    for (const auto& h : h_hits)
        if (g.contours[std::size_t(h.contour)].kind == ContourKind::VerticalRay) {
            CHECK(h.point[1] == 0.25);
            vertical_hit = true;
        }
    CHECK(vertical_hit);
}

TEST_CASE("at most one intersection per contour over a parameter sweep") {
    const ExtendedParetoGrid g = sphere_affine_epg(2.1, 2.0, 0.6, 1.8, 512);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.01, 0.99);
    std::uniform_real_distribution<double> ub(-4.1, 4.1);
    for (int t = 0; t < 200; ++t) {
        const LineParam p{ua(rng), ub(rng)};
        const auto hits = line_intersections(g, p);
        std::vector<int> seen;
        for (const auto& h : hits) {
            for (int s : seen) CHECK(s != h.contour);
            seen.push_back(h.contour);
            // the hit lies on the line
            CHECK(std::fabs(line_side(p, h.point[0], h.point[1])) <= 1e-9);
        }
    }
}

TEST_CASE("contour JSON round trip") {
    const ExtendedParetoGrid g = sphere_affine_epg(1, 0, 1, 0, 128);
    const std::string path = "/tmp/epgmatch_test_grid.json";
    save_contours(g, path);
    const ExtendedParetoGrid back = load_contours(path);
    REQUIRE(back.contours.size() == g.contours.size());
    for (std::size_t i = 0; i < g.contours.size(); ++i) {
        CHECK(back.contours[i].id == g.contours[i].id);
        CHECK(back.contours[i].kind == g.contours[i].kind);
        if (g.contours[i].kind == ContourKind::Proper) {
            REQUIRE(back.contours[i].polyline.size() == g.contours[i].polyline.size());
            for (std::size_t k = 0; k < g.contours[i].polyline.size(); ++k) {
                CHECK(back.contours[i].polyline[k][0] == g.contours[i].polyline[k][0]);
                CHECK(back.contours[i].polyline[k][1] == g.contours[i].polyline[k][1]);
            }
        } else {
            CHECK(back.contours[i].anchor == g.contours[i].anchor);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("monotonicity violations are rejected with the contour id") {
    ExtendedParetoGrid g;
    g.owner = "f";
    Contour c;
    c.id = "bad-arc";
    c.kind = ContourKind::Proper;
    c.polyline = {{0.0, 0.0}, {1.0, 1.0}};  // increasing y
    g.contours.push_back(c);
    try {
        validate_contours(g);
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("bad-arc") != std::string::npos);
    }
}

TEST_CASE("position check on the sphere at (1/2, 0)") {
    const SurfaceMesh m = make_icosphere(4);
    const SimplicialSurface cx = SimplicialSurface::build(m);
    const BiFunctionSample f = sample_xz(m);
    const ExtendedParetoGrid g = sphere_affine_epg(1, 0, 1, 0, 8192);
    const LineParam p{0.5, 0.0};
    const auto dgms = diagrams_at(f, cx, p);

    SUBCASE("every finite coordinate matches an intersection") {
        for (const auto& d : dgms) {
            const PositionReport rep = position_check(d, g, p, 0.02);
            CHECK(rep.all_matched());
        }
    }
    SUBCASE("residual shrinks under mesh refinement") {
        const SurfaceMesh coarse = make_icosphere(3);
        const auto dg_coarse = diagrams_at(sample_xz(coarse), SimplicialSurface::build(coarse), p);
        double worst3 = 0, worst4 = 0;
        for (int k = 0; k < 3; ++k) {
            worst3 = std::max(worst3, position_check(dg_coarse[std::size_t(k)], g, p, 1.0).worst_residual);
            worst4 = std::max(worst4, position_check(dgms[std::size_t(k)], g, p, 1.0).worst_residual);
        }
        CHECK(worst4 <= worst3);
    }
    SUBCASE("a shifted grid is flagged") {
        ExtendedParetoGrid shifted = g;
        for (auto& c : shifted.contours) {
            for (auto& q : c.polyline) q[0] += 0.5;
            c.anchor[0] += 0.5;
        }
        std::size_t failures = 0;
        for (const auto& d : dgms) failures += position_check(d, shifted, p, 1e-3).failures;
        CHECK(failures > 0);
    }
}
