#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "epgmatch/matching.hpp"

using namespace epgmatch;

namespace {

MatchContext figure3_context(int level = 1, int degree = -1) {
    const SurfaceMesh m = make_icosphere(level);
    return MatchContext::make(sample_xz(m), sample_affine_xz(m, 2.1, 2.0, 0.6, 1.8), degree);
}

}  // namespace

TEST_CASE("db_at vanishes for identical functions") {
    const SurfaceMesh m = make_icosphere(1);
    const auto ctx = MatchContext::make(sample_xz(m), sample_xz(m));
    for (const LineParam p : {LineParam{0.5, 0.0}, LineParam{0.25, 0.7}, LineParam{0.0, -1.0},
                              LineParam{1.0, 0.3}, LineParam{0.9, -0.2}})
        CHECK(db_at(ctx, p) == 0.0);
}

TEST_CASE("db_at is zero at the two trivial corners (0,C) and (1,-C)") {
    const auto ctx = figure3_context(1);
    CHECK(db_at(ctx, {0.0, ctx.c_bar}) == 0.0);
    CHECK(db_at(ctx, {1.0, -ctx.c_bar}) == 0.0);
}

TEST_CASE("a pure f1 shift at the slope-1 line costs exactly the shift") {
    // g = (x + 1/4, z): the degree-2 essential classes are born at the exact
    // vertex maxima 1 and 1.25, everything else moves by at most eps/2
    const SurfaceMesh m = make_icosphere(2);
    const auto ctx = MatchContext::make(sample_xz(m), sample_affine_xz(m, 1.0, 0.25, 1.0, 0.0));
    CHECK(db_at(ctx, {0.5, 0.0}) == 0.25);
}

TEST_CASE("witness at the argmax reproduces the value") {
    const auto ctx = figure3_context(1);
    const auto [v, w] = db_at_witness(ctx, {0.5, 0.0});
    CHECK(v == w.cost);
    CHECK(v > 0.0);
}

TEST_CASE("matching_distance_grid on f=g is identically zero") {
    const SurfaceMesh m = make_icosphere(0);
    const auto ctx = MatchContext::make(sample_xz(m), sample_xz(m));
    const auto r = matching_distance_grid(ctx, 11, 11, 2);
    CHECK(r.value == 0.0);
    for (const auto& e : r.log) CHECK(e.value == 0.0);
}

TEST_CASE("the a-lattice always contains 0, 1/2, 1 and b contains +-C") {
    const auto ctx = figure3_context(0);
    const auto r = matching_distance_grid(ctx, 4, 5, 1);  // even res_a lacks 1/2 natively
    bool a_half = false, b_low = false, b_high = false;
    for (const auto& e : r.log) {
        if (e.p.a == 0.5) a_half = true;
        if (e.p.b == -ctx.c_bar) b_low = true;
        if (e.p.b == ctx.c_bar) b_high = true;
    }
    CHECK(a_half);
    CHECK(b_low);
    CHECK(b_high);
}

TEST_CASE("lattice refinement is monotone (evaluation supersets)") {
    const auto ctx = figure3_context(1);
    const auto coarse = matching_distance_grid(ctx, 11, 11, 4);
    const auto fine = matching_distance_grid(ctx, 21, 21, 4);
    CHECK(fine.value >= coarse.value);
    // the coarse lattice parameters are bitwise present in the fine one
    for (const auto& ce : coarse.log) {
        bool found = false;
        for (const auto& fe : fine.log)
            if (fe.p.a == ce.p.a && fe.p.b == ce.p.b) {
                found = true;
                CHECK(fe.value == ce.value);
                break;
            }
        CHECK(found);
    }
}

TEST_CASE("matching distance is symmetric in f and g") {
    const SurfaceMesh m = make_icosphere(1);
    const auto fg = MatchContext::make(sample_xz(m), sample_affine_xz(m, 2.1, 2.0, 0.6, 1.8));
    const auto gf = MatchContext::make(sample_affine_xz(m, 2.1, 2.0, 0.6, 1.8), sample_xz(m));
    const auto ra = matching_distance_grid(fg, 9, 9, 2);
    const auto rb = matching_distance_grid(gf, 9, 9, 2);
    REQUIRE(ra.log.size() == rb.log.size());
    for (std::size_t i = 0; i < ra.log.size(); ++i) CHECK(ra.log[i].value == rb.log[i].value);
}

TEST_CASE("worker count does not change grid results") {
    const auto ctx = figure3_context(1);
    const auto r1 = matching_distance_grid(ctx, 13, 13, 1);
    const auto r8 = matching_distance_grid(ctx, 13, 13, 8);
    REQUIRE(r1.log.size() == r8.log.size());
    for (std::size_t i = 0; i < r1.log.size(); ++i) {
        CHECK(r1.log[i].p.a == r8.log[i].p.a);
        CHECK(r1.log[i].p.b == r8.log[i].p.b);
        CHECK(r1.log[i].value == r8.log[i].value);
    }
    CHECK(r1.value == r8.value);
}

TEST_CASE("db continuity modulus from the two Lipschitz bounds") {
    const auto ctx = figure3_context(1);
    const double nf = uniform_norm(ctx.f), ng = uniform_norm(ctx.g);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.0, 1.0);
    std::uniform_real_distribution<double> ub(-ctx.c_bar, ctx.c_bar);
    for (int t = 0; t < 30; ++t) {
        const LineParam p{ua(rng), ub(rng)}, q{ua(rng), ub(rng)};
        const double lhs = std::fabs(db_at(ctx, p) - db_at(ctx, q));
        const double da = std::fabs(p.a - q.a), dbv = std::fabs(p.b - q.b);
        const double rhs =
            (4 * da * (nf + ctx.c_bar) + 3 * dbv) + (4 * da * (ng + ctx.c_bar) + 3 * dbv);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("boundary behavior on the Figure-3 pair") {
    const auto ctx = figure3_context(1);
    const auto rep = boundary_behavior_check(ctx, 9, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.const_low_variation <= 1e-9);
    CHECK(rep.const_high_variation <= 1e-9);
    CHECK(rep.monotone_violation <= 1e-9);
    CHECK(rep.corner_low <= 1e-9);
    CHECK(rep.corner_high <= 1e-9);
    CHECK(rep.closed_form_error <= 1e-9);
}

TEST_CASE("boundary behavior for f=g is identically zero") {
    const SurfaceMesh m = make_icosphere(1);
    const auto ctx = MatchContext::make(sample_xz(m), sample_xz(m));
    const auto rep = boundary_behavior_check(ctx, 5, 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("scaled closed form at a=3/4, b=-C") {
    const auto ctx = figure3_context(1);
    // db(3/4, -C) = (1/3) d_B(Dgm f1, Dgm g1); the latter equals db(1/2, -C)
    const double full = db_at(ctx, {0.5, -ctx.c_bar});
    const double scaled = db_at(ctx, {0.75, -ctx.c_bar});
    CHECK(std::fabs(scaled - full / 3.0) <= 1e-9);
}

TEST_CASE("verify_main_theorem passes trivially for f=g") {
    const SurfaceMesh m = make_icosphere(0);
    const auto ctx = MatchContext::make(sample_xz(m), sample_xz(m));
    const auto epg = sphere_affine_epg(1, 0, 1, 0, 256, "f");
    TheoremOptions opt;
    opt.res = 11;
    opt.workers = 2;
    opt.special.res = 16;
    opt.special.refine = 2;
    opt.special.b_lo = -ctx.c_bar;
    opt.special.b_hi = ctx.c_bar;
    const auto rep = verify_main_theorem(ctx, epg, sphere_affine_epg(1, 0, 1, 0, 256, "g"), opt);
    CHECK(rep.pass);
    CHECK(rep.grid_value == 0.0);
    CHECK(rep.candidate_value == 0.0);
}

TEST_CASE("composed stability: db_at varies by at most the two slice moduli") {
    const auto ctx = figure3_context(1);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ua(0.0, 1.0);
    std::uniform_real_distribution<double> ub(-ctx.c_bar, ctx.c_bar);
    for (int t = 0; t < 20; ++t) {
        const LineParam p{ua(rng), ub(rng)}, q{ua(rng), ub(rng)};
        const double lhs = std::fabs(db_at(ctx, p) - db_at(ctx, q));
        const double mf = sup_norm_diff(normalized_slice(ctx.f, p).values,
                                        normalized_slice(ctx.f, q).values);
        const double mg = sup_norm_diff(normalized_slice(ctx.g, p).values,
                                        normalized_slice(ctx.g, q).values);
        CHECK(lhs <= mf + mg + 1e-12);
    }
}

TEST_CASE("injecting candidates into the grid gives the max of the two searches") {
    const auto ctx = figure3_context(1, 0);
    const auto grid = matching_distance_grid(ctx, 9, 9, 2);
    const auto cand = matching_distance_candidates(ctx, {}, 17, 0.1, 0.1, 2);
    double unified = 0.0;
    for (const auto& e : grid.log) unified = std::max(unified, e.value);
    for (const auto& e : cand.log) unified = std::max(unified, e.value);
    CHECK(unified == std::max(grid.value, cand.value));
    CHECK(cand.value <= unified);
    CHECK(grid.value <= unified);
}

TEST_CASE("a pure f1 shift is realized on the candidate lines") {
    const SurfaceMesh m = make_icosphere(1);
    const auto ctx = MatchContext::make(sample_xz(m), sample_affine_xz(m, 1.0, 0.25, 1.0, 0.0));
    const auto grid = matching_distance_grid(ctx, 21, 21, 4);
    const auto cand = matching_distance_candidates(ctx, {}, 81, 0.05, 0.05, 4);
    CHECK(cand.value >= grid.value - 1e-12);
}

TEST_CASE("negative control: candidates restricted to a=1/4 fail at degree 0") {
    const auto ctx = figure3_context(1, 0);
    const auto ef = sphere_affine_epg(1, 0, 1, 0, 1024, "f");
    const auto eg = sphere_affine_epg(2.1, 2.0, 0.6, 1.8, 1024, "g");
    TheoremOptions opt;
    opt.res = 41;
    opt.workers = 8;
    opt.restrict_candidate_a = std::vector<double>{0.25};
    const auto rep = verify_main_theorem(ctx, ef, eg, opt);
    CHECK_FALSE(rep.pass);
    CHECK(rep.candidate_value < rep.grid_value - rep.tol);
}
