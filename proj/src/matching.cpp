#include "epgmatch/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace epgmatch {

MatchContext MatchContext::make(BiFunctionSample f, BiFunctionSample g, int degree) {
    MatchContext ctx;
    ctx.c_bar = std::max(uniform_norm(f), uniform_norm(g));
    ctx.f = std::move(f);
    ctx.g = std::move(g);
    ctx.cx_f = SimplicialSurface::build(ctx.f.mesh);
    ctx.cx_g = SimplicialSurface::build(ctx.g.mesh);
    ctx.degree = degree;
    return ctx;
}

std::array<PersistenceDiagram, 3> diagrams_at(const BiFunctionSample& s,
                                              const SimplicialSurface& cx, const LineParam& p) {
    const ScalarSlice slice = normalized_slice(s, p);
    const Filtration filt = build_lower_star(cx, slice);
    return compute_all_diagrams(filt);
}

namespace {

std::pair<double, MatchingWitness> db_aggregate(const std::array<PersistenceDiagram, 3>& df,
                                                const std::array<PersistenceDiagram, 3>& dg,
                                                int degree) {
    if (degree >= 0) {
        auto [v, w] = bottleneck_distance(df[std::size_t(degree)], dg[std::size_t(degree)]);
        return {v, std::move(w)};
    }
    double best = -1.0;
    MatchingWitness best_w;
    for (int k = 0; k < 3; ++k) {
        auto [v, w] = bottleneck_distance(df[std::size_t(k)], dg[std::size_t(k)]);
        if (v > best) {
            best = v;
            best_w = std::move(w);
        }
    }
    return {best, std::move(best_w)};
}

}  // namespace

double db_at(const MatchContext& ctx, const LineParam& p) {
    return db_at_witness(ctx, p).first;
}

std::pair<double, MatchingWitness> db_at_witness(const MatchContext& ctx, const LineParam& p) {
    const auto df = diagrams_at(ctx.f, ctx.cx_f, p);
    const auto dg = diagrams_at(ctx.g, ctx.cx_g, p);
    return db_aggregate(df, dg, ctx.degree);
}

namespace {

std::vector<double> lattice(double lo, double hi, int res) {
    std::vector<double> v(static_cast<std::size_t>(res));
    for (int i = 0; i < res; ++i) v[std::size_t(i)] = lo + (hi - lo) * (double(i) / double(res - 1));
    return v;
}

// db_at over a fixed parameter list; parallel, bitwise independent of the
// worker count (each entry is computed in isolation and stored by index).
std::vector<double> eval_params(const MatchContext& ctx, const std::vector<LineParam>& params,
                                int workers) {
    std::vector<double> out(params.size());
    workers = std::max(1, workers);
    if (workers == 1 || params.size() < 2) {
        for (std::size_t i = 0; i < params.size(); ++i) out[i] = db_at(ctx, params[i]);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = std::size_t(w); i < params.size(); i += std::size_t(workers))
                out[i] = db_at(ctx, params[i]);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

MatchingResult result_from(const MatchContext& ctx, const std::vector<LineParam>& params,
                           const std::vector<double>& values) {
    MatchingResult r;
    r.value = -1.0;
    r.log.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        r.log.push_back({params[i], values[i]});
        if (values[i] > r.value) {
            r.value = values[i];
            r.argmax = params[i];
        }
    }
    if (r.value < 0.0) r.value = 0.0;
    r.witness = db_at_witness(ctx, r.argmax).second;
    return r;
}

}  // namespace

MatchingResult matching_distance_grid(const MatchContext& ctx, int res_a, int res_b, int workers) {
    if (res_a < 2 || res_b < 2) throw std::invalid_argument("matching_distance_grid: res must be >= 2");
    std::vector<double> as = lattice(0.0, 1.0, res_a);
    for (double extra : {0.0, 0.5, 1.0}) as.push_back(extra);
    std::sort(as.begin(), as.end());
    as.erase(std::unique(as.begin(), as.end()), as.end());
    const std::vector<double> bs = lattice(-ctx.c_bar, ctx.c_bar, res_b);

    std::vector<LineParam> params;
    params.reserve(as.size() * bs.size());
    for (double a : as)
        for (double b : bs) params.push_back({a, b});
    const std::vector<double> values = eval_params(ctx, params, workers);
    return result_from(ctx, params, values);
}

MatchingResult matching_distance_candidates(const MatchContext& ctx,
                                            const std::vector<SpecialValue>& specials, int b_res,
                                            double thin_ra, double thin_rb, int workers) {
    if (b_res < 2) throw std::invalid_argument("matching_distance_candidates: b_res must be >= 2");
    std::vector<LineParam> params;
    const std::vector<double> bs = lattice(-ctx.c_bar, ctx.c_bar, b_res);
    for (double a : {0.0, 0.5, 1.0})
        for (double b : bs) params.push_back({a, b});
    for (const LineParam& p : thin_special_params(specials, thin_ra, thin_rb)) params.push_back(p);
    std::sort(params.begin(), params.end(), [](const LineParam& lhs, const LineParam& rhs) {
        if (lhs.a != rhs.a) return lhs.a < rhs.a;
        return lhs.b < rhs.b;
    });
    params.erase(std::unique(params.begin(), params.end(),
                             [](const LineParam& lhs, const LineParam& rhs) {
                                 return lhs.a == rhs.a && lhs.b == rhs.b;
                             }),
                 params.end());
    const std::vector<double> values = eval_params(ctx, params, workers);
    return result_from(ctx, params, values);
}

TheoremReport verify_main_theorem(const MatchContext& ctx, const ExtendedParetoGrid& epg_f,
                                  const ExtendedParetoGrid& epg_g, const TheoremOptions& opt) {
    TheoremReport rep;
    const MatchingResult grid = matching_distance_grid(ctx, opt.res, opt.res, opt.workers);
    const MatchingResult fine =
        matching_distance_grid(ctx, 2 * opt.res - 1, 2 * opt.res - 1, opt.workers);
    rep.grid_value = grid.value;
    rep.grid_argmax = grid.argmax;
    rep.fine_value = fine.value;
    rep.tol = opt.tol >= 0.0 ? opt.tol : std::max(0.0, fine.value - grid.value);

    const double ra = 1.0 / double(opt.res - 1);
    const double rb = 2.0 * ctx.c_bar / double(opt.res - 1);

    MatchingResult cand;
    std::vector<SpecialValue> specials;
    if (opt.restrict_candidate_a) {
        // negative-control mode: given a-lines only, no special values
        std::vector<LineParam> params;
        const std::vector<double> bs = lattice(-ctx.c_bar, ctx.c_bar, 4 * (opt.res - 1) + 1);
        for (double a : *opt.restrict_candidate_a)
            for (double b : bs) params.push_back({a, b});
        const std::vector<double> values = eval_params(ctx, params, opt.workers);
        cand = result_from(ctx, params, values);
    } else {
        specials = find_special_values(merge_contours(epg_f, epg_g), opt.special);
        cand = matching_distance_candidates(ctx, specials, 4 * (opt.res - 1) + 1, ra, rb,
                                            opt.workers);
        rep.special_count = thin_special_params(specials, ra, rb).size();
    }
    rep.candidate_value = cand.value;
    rep.candidate_argmax = cand.argmax;
    rep.gap = rep.grid_value - rep.candidate_value;
    rep.pass = rep.candidate_value >= rep.grid_value - rep.tol - 1e-12;

    // The maximum is often attained on a plateau where the argmax is decided
    // by the last floating-point bits; the proximity statement is therefore
    // checked for the whole set of near-maximal lattice points.
    const double near_tol = 1e-12 * std::max(1.0, std::fabs(rep.grid_value));
    bool near = false;
    for (const auto& ge : grid.log) {
        if (near || ge.value < rep.grid_value - near_tol) continue;
        for (const auto& e : cand.log) {
            const double d = std::max(std::fabs(e.p.a - ge.p.a) / ra,
                                      std::fabs(e.p.b - ge.p.b) / rb);
            if (d <= 1.0 + 1e-9) {
                near = true;
                break;
            }
        }
    }
    rep.argmax_near_candidate = near;
    return rep;
}

namespace {

double scalar_field_db(const MatchContext& ctx, int component) {
    // d_B between the diagrams of the raw scalar fields f_c and g_c
    ScalarSlice sf, sg;
    sf.values.reserve(ctx.f.values.size());
    sg.values.reserve(ctx.g.values.size());
    for (const auto& v : ctx.f.values) sf.values.push_back(v[std::size_t(component)]);
    for (const auto& v : ctx.g.values) sg.values.push_back(v[std::size_t(component)]);
    const auto df = compute_all_diagrams(build_lower_star(ctx.cx_f, sf));
    const auto dg = compute_all_diagrams(build_lower_star(ctx.cx_g, sg));
    return db_aggregate(df, dg, ctx.degree).first;
}

}  // namespace

BoundaryReport boundary_behavior_check(const MatchContext& ctx, int samples_per_segment,
                                       double tol) {
    BoundaryReport rep;
    const double C = ctx.c_bar;
    const int n = std::max(2, samples_per_segment);
    auto seg_values = [&](double a_lo, double a_hi, double b) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            v[std::size_t(k)] = db_at(ctx, {a_lo + (a_hi - a_lo) * double(k) / double(n - 1), b});
        return v;
    };

    // constant segments
    {
        const auto v1 = seg_values(0.0, 0.5, -C);
        rep.const_low_variation =
            *std::max_element(v1.begin(), v1.end()) - *std::min_element(v1.begin(), v1.end());
        const auto v2 = seg_values(0.5, 1.0, C);
        rep.const_high_variation =
            *std::max_element(v2.begin(), v2.end()) - *std::min_element(v2.begin(), v2.end());
    }
    // decreasing segments: towards a=1 at b=-C, towards a=0 at b=+C
    {
        const auto v3 = seg_values(0.5, 1.0, -C);
        for (int k = 0; k + 1 < n; ++k)
            rep.monotone_violation =
                std::max(rep.monotone_violation, v3[std::size_t(k + 1)] - v3[std::size_t(k)]);
        const auto v4 = seg_values(0.0, 0.5, C);
        for (int k = 0; k + 1 < n; ++k)
            rep.monotone_violation =
                std::max(rep.monotone_violation, v4[std::size_t(k)] - v4[std::size_t(k + 1)]);
    }
    rep.corner_low = db_at(ctx, {0.0, C});
    rep.corner_high = db_at(ctx, {1.0, -C});

    // closed forms at b = -C from the box-reduction argument
    {
        const double db1 = scalar_field_db(ctx, 0);
        for (int k = 0; k < 5; ++k) {
            const double a = 0.05 + 0.45 * double(k) / 4.0;  // a in [0.05, 0.5]
            rep.closed_form_error =
                std::max(rep.closed_form_error, std::fabs(db_at(ctx, {a, -C}) - db1));
        }
        for (int k = 0; k < 5; ++k) {
            const double a = 0.5 + 0.45 * double(k) / 4.0;  // a in [0.5, 0.95]
            rep.closed_form_error = std::max(
                rep.closed_form_error, std::fabs(db_at(ctx, {a, -C}) - (1.0 - a) / a * db1));
        }
    }

    rep.pass = true;
    auto fail = [&](const std::string& what) {
        if (rep.pass) rep.detail = what;
        rep.pass = false;
    };
    if (rep.const_low_variation > tol) fail("constancy violated on {a<=1/2, b=-C}");
    if (rep.const_high_variation > tol) fail("constancy violated on {a>=1/2, b=+C}");
    if (rep.monotone_violation > tol) fail("monotonicity violated on a decreasing segment");
    if (rep.corner_low > tol) fail("db not zero at (0, C)");
    if (rep.corner_high > tol) fail("db not zero at (1, -C)");
    if (rep.closed_form_error > tol) fail("closed form mismatch at b=-C");
    return rep;
}

}  // namespace epgmatch
