#include "epgmatch/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "epgmatch/json_out.hpp"
#include "epgmatch/matching.hpp"
#include "epgmatch/off_io.hpp"
#include "epgmatch/svg.hpp"

namespace epgmatch {

namespace {

struct CommonOpts {
    std::string mesh_spec;
    std::string mesh_g_spec;  // optional second mesh for g
    std::string f_spec = "preset:xz";
    std::string g_spec = "preset:xz";
    int degree = -1;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_mesh = true) {
    auto* m = cmd->add_option("--mesh", o.mesh_spec,
                              "mesh: OFF path, builtin:icosphere:<level> or builtin:torus:<nu>,<nv>,<R>,<r>");
    if (need_mesh) m->required();
    cmd->add_option("--mesh-g", o.mesh_g_spec, "separate mesh for g (defaults to --mesh)");
    cmd->add_option("--f", o.f_spec, "first function: preset:xz, preset:affine:c1,d1,c2,d2 or csv:<path>");
    cmd->add_option("--g", o.g_spec, "second function, same formats");
    cmd->add_option("--degree", o.degree, "restrict to one homology degree (default: max over 0,1,2)")
        ->check(CLI::Range(0, 2));
    cmd->add_option("--workers", o.workers, "worker threads (results are identical for any count)")
        ->check(CLI::PositiveNumber);
}

struct Loaded {
    MatchContext ctx;
    std::optional<ExtendedParetoGrid> epg_f, epg_g;
};

std::optional<ExtendedParetoGrid> derive_epg(const std::string& spec, const std::string& owner,
                                             int samples, const std::string& file_override) {
    if (!file_override.empty()) {
        ExtendedParetoGrid g = load_contours(file_override);
        g.owner = owner;
        return g;
    }
    if (spec == "preset:xz") return sphere_affine_epg(1, 0, 1, 0, samples, owner);
    if (spec.rfind("preset:affine:", 0) == 0) {
        std::istringstream args(spec.substr(14));
        double c1, d1, c2, d2;
        char c;
        args >> c1 >> c >> d1 >> c >> c2 >> c >> d2;
        return sphere_affine_epg(c1, d1, c2, d2, samples, owner);
    }
    return std::nullopt;
}

Loaded load_inputs(const CommonOpts& o, int epg_samples, const std::string& epg_f_file = "",
                   const std::string& epg_g_file = "") {
    const SurfaceMesh mesh_f = load_mesh_spec(o.mesh_spec);
    const SurfaceMesh mesh_g = o.mesh_g_spec.empty() ? mesh_f : load_mesh_spec(o.mesh_g_spec);
    BiFunctionSample f = load_function_spec(mesh_f, o.f_spec);
    BiFunctionSample g = load_function_spec(mesh_g, o.g_spec);
    Loaded out{MatchContext::make(std::move(f), std::move(g), o.degree), std::nullopt, std::nullopt};
    out.epg_f = derive_epg(o.f_spec, "f", epg_samples, epg_f_file);
    out.epg_g = derive_epg(o.g_spec, "g", epg_samples, epg_g_file);
    return out;
}

double parse_pair_component(const std::string& s, int which) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected two comma-separated numbers: " + s);
    return std::stod(which == 0 ? s.substr(0, comma) : s.substr(comma + 1));
}

int cmd_compute(const CommonOpts& o, int res_a, int res_b, const std::string& out_path,
                const std::string& heatmap_path, bool include_log) {
    Loaded in = load_inputs(o, 512);
    const MatchingResult r = matching_distance_grid(in.ctx, res_a, res_b, o.workers);
    const std::string json = matching_result_to_json(r, include_log);
    if (out_path.empty())
        std::cout << json;
    else
        write_text_file(out_path, json);
    if (!heatmap_path.empty()) {
        // the a-lattice may have gained {0,1/2,1}; recover its true extent
        int nb = res_b;
        int na = int(r.log.size()) / nb;
        write_heatmap_svg(r.log, na, nb, r.argmax, heatmap_path);
    }
    std::fprintf(stderr, "matching distance (lattice max): %.17g at (a,b)=(%.17g, %.17g)\n",
                 r.value, r.argmax.a, r.argmax.b);
    return 0;
}

int cmd_verify_theorem(const CommonOpts& o, int res, const std::string& tol_text, int special_res,
                       double special_tol, int refine, int epg_samples,
                       const std::string& epg_f_file, const std::string& epg_g_file,
                       const std::vector<double>& restrict_a) {
    Loaded in = load_inputs(o, epg_samples, epg_f_file, epg_g_file);
    if (!in.epg_f || !in.epg_g)
        throw std::runtime_error(
            "verify-theorem needs extended Pareto grids: use presets or --epg-f/--epg-g files");
    TheoremOptions opt;
    opt.res = res;
    opt.tol = tol_text == "auto" ? -1.0 : std::stod(tol_text);
    opt.workers = o.workers;
    opt.special.res = special_res;
    opt.special.tol = special_tol;
    opt.special.refine = refine;
    opt.special.a_lo = 0.01;
    opt.special.a_hi = 0.99;
    opt.special.b_lo = -in.ctx.c_bar;
    opt.special.b_hi = in.ctx.c_bar;
    opt.special.workers = o.workers;
    if (!restrict_a.empty()) opt.restrict_candidate_a = restrict_a;

    const TheoremReport rep = verify_main_theorem(in.ctx, *in.epg_f, *in.epg_g, opt);
    std::printf("lattice max      : %.17g at (a,b)=(%.17g, %.17g)\n", rep.grid_value,
                rep.grid_argmax.a, rep.grid_argmax.b);
    std::printf("fine lattice max : %.17g (res %d)\n", rep.fine_value, 2 * res - 1);
    std::printf("candidate max    : %.17g at (a,b)=(%.17g, %.17g)\n", rep.candidate_value,
                rep.candidate_argmax.a, rep.candidate_argmax.b);
    std::printf("tolerance        : %.17g, gap: %.17g\n", rep.tol, rep.gap);
    std::printf("candidate specials (thinned): %zu\n", rep.special_count);
    std::printf("argmax within one cell of candidate set: %s\n",
                rep.argmax_near_candidate ? "yes" : "no");
    std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
    return rep.pass ? 0 : 1;
}

int cmd_verify_position(const CommonOpts& o, const std::vector<std::string>& line_texts, int n_lines,
                        unsigned seed, double tol, int epg_samples, const std::string& epg_f_file) {
    Loaded in = load_inputs(o, epg_samples, epg_f_file);
    if (!in.epg_f)
        throw std::runtime_error("verify-position needs a grid for --f: use a preset or --epg-f");
    std::vector<LineParam> lines;
    for (const auto& t : line_texts)
        lines.push_back({parse_pair_component(t, 0), parse_pair_component(t, 1)});
    if (lines.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ua(0.05, 0.95);
        const double bb = uniform_norm(in.ctx.f);
        std::uniform_real_distribution<double> ub(-bb, bb);
        for (int i = 0; i < n_lines; ++i) lines.push_back({ua(rng), ub(rng)});
    }
    double worst = 0.0;
    std::size_t failures = 0, coords = 0;
    for (const auto& p : lines) {
        const auto dgms = diagrams_at(in.ctx.f, in.ctx.cx_f, p);
        for (const auto& d : dgms) {
            const PositionReport rep = position_check(d, *in.epg_f, p, tol);
            worst = std::max(worst, rep.worst_residual);
            failures += rep.failures;
            coords += rep.entries.size();
        }
    }
    std::printf("lines: %zu, coordinates checked: %zu, failures: %zu, worst residual: %.17g\n",
                lines.size(), coords, failures, worst);
    std::printf("%s\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? 0 : 1;
}

int cmd_find_special(const CommonOpts& o, bool have_mesh, const std::string& a_range,
                     const std::string& b_range, int res, double tol, int refine, int epg_samples,
                     const std::string& epg_f_file, const std::string& epg_g_file,
                     bool exclude_identical, const std::string& out_path) {
    std::optional<ExtendedParetoGrid> ef, eg;
    double c_bar = 0.0;
    if (have_mesh) {
        Loaded in = load_inputs(o, epg_samples, epg_f_file, epg_g_file);
        ef = in.epg_f;
        eg = in.epg_g;
        c_bar = in.ctx.c_bar;
    } else {
        ef = derive_epg(o.f_spec, "f", epg_samples, epg_f_file);
        eg = derive_epg(o.g_spec, "g", epg_samples, epg_g_file);
        // analytic fallback for the affine sphere family: C = max(|d|+c)
        auto preset_norm = [](const std::string& spec) -> double {
            if (spec == "preset:xz") return 1.0;
            if (spec.rfind("preset:affine:", 0) == 0) {
                std::istringstream args(spec.substr(14));
                double c1, d1, c2, d2;
                char c;
                args >> c1 >> c >> d1 >> c >> c2 >> c >> d2;
                return std::max(std::fabs(d1) + c1, std::fabs(d2) + c2);
            }
            return 0.0;
        };
        c_bar = std::max(preset_norm(o.f_spec), preset_norm(o.g_spec));
    }
    if (!ef || !eg)
        throw std::runtime_error("find-special needs both grids: use presets or --epg-f/--epg-g");

    SpecialSearchConfig cfg;
    cfg.res = res;
    cfg.tol = tol;
    cfg.refine = refine;
    cfg.workers = o.workers;
    cfg.exclude_identical_geometry = exclude_identical;
    if (!a_range.empty()) {
        cfg.a_lo = parse_pair_component(a_range, 0);
        cfg.a_hi = parse_pair_component(a_range, 1);
    }
    if (!b_range.empty()) {
        cfg.b_lo = parse_pair_component(b_range, 0);
        cfg.b_hi = parse_pair_component(b_range, 1);
    } else if (c_bar > 0.0) {
        cfg.b_lo = -c_bar;
        cfg.b_hi = c_bar;
    } else {
        throw std::runtime_error("find-special: give --b-range or analytic presets");
    }

    const std::vector<Contour> merged = merge_contours(*ef, *eg);
    const auto values = find_special_values(merged, cfg);
    const std::string csv = special_values_to_csv(values, merged);
    if (out_path.empty())
        std::cout << csv;
    else
        write_text_file(out_path, csv);
    std::fprintf(stderr, "special values found: %zu\n", values.size());
    return 0;
}

int cmd_export_epg(const CommonOpts& o, const std::string& line_text, int epg_samples,
                   const std::string& epg_f_file, const std::string& epg_g_file, bool with_g,
                   const std::string& out_svg, const std::string& out_json) {
    const auto ef = derive_epg(o.f_spec, "f", epg_samples, epg_f_file);
    if (!ef) throw std::runtime_error("export-epg: --f must be a preset or give --epg-f");
    std::optional<ExtendedParetoGrid> eg;
    if (with_g) {
        eg = derive_epg(o.g_spec, "g", epg_samples, epg_g_file);
        if (!eg) throw std::runtime_error("export-epg: --g must be a preset or give --epg-g");
    }
    std::optional<LineParam> line;
    if (!line_text.empty())
        line = LineParam{parse_pair_component(line_text, 0), parse_pair_component(line_text, 1)};
    std::vector<const ExtendedParetoGrid*> grids{&*ef};
    if (eg) grids.push_back(&*eg);
    if (!out_svg.empty()) write_epg_svg(grids, line, out_svg);
    if (!out_json.empty()) save_contours(*ef, out_json);
    if (out_svg.empty() && out_json.empty()) std::cout << epg_svg(grids, line);
    return 0;
}

int cmd_boundary_check(const CommonOpts& o, int samples, double tol) {
    Loaded in = load_inputs(o, 512);
    const BoundaryReport rep = boundary_behavior_check(in.ctx, samples, tol);
    std::printf("constancy variation (a<=1/2, b=-C): %.3e\n", rep.const_low_variation);
    std::printf("constancy variation (a>=1/2, b=+C): %.3e\n", rep.const_high_variation);
    std::printf("worst monotonicity violation      : %.3e\n", rep.monotone_violation);
    std::printf("corner values                     : %.3e, %.3e\n", rep.corner_low, rep.corner_high);
    std::printf("closed-form error at b=-C         : %.3e\n", rep.closed_form_error);
    if (!rep.pass) std::printf("first failure: %s\n", rep.detail.c_str());
    std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
    return rep.pass ? 0 : 1;
}

int cmd_property_suite(const CommonOpts& o, unsigned seed, int trials) {
    Loaded in = load_inputs(o, 512);
    const MatchContext& ctx = in.ctx;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.0, 1.0);
    std::uniform_real_distribution<double> ub(-ctx.c_bar, ctx.c_bar);
    bool all_pass = true;
    auto report = [&](const char* name, bool ok, double worst) {
        std::printf("%-34s %s (worst %.3e)\n", name, ok ? "PASS" : "FAIL", worst);
        all_pass = all_pass && ok;
    };

    {  // swap symmetry f*_(a,b) == h*_(1-a,-b) with h = (f2,f1); exact when
        // the mirrored parameter 1-a is itself exact, hence dyadic a
        BiFunctionSample h = ctx.f;
        for (auto& v : h.values) std::swap(v[0], v[1]);
        std::uniform_int_distribution<int> dyadic(0, 1024);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const LineParam p{double(dyadic(rng)) / 1024.0, ub(rng)};
            const auto sf = normalized_slice(ctx.f, p);
            const auto sh = normalized_slice(h, {1.0 - p.a, -p.b});
            worst = std::max(worst, sup_norm_diff(sf.values, sh.values));
        }
        report("swap symmetry (exact)", worst == 0.0, worst);
    }
    {  // Lipschitz bound
        double worst = -1e300;
        bool ok = true;
        for (int t = 0; t < trials; ++t) {
            const LineParam p{ua(rng), ub(rng)}, q{ua(rng), ub(rng)};
            const auto rep = lipschitz_bound_check(ctx.f, p, q, ctx.c_bar);
            ok = ok && rep.pass;
            worst = std::max(worst, rep.lhs - rep.rhs);
        }
        report("lipschitz bound", ok, worst);
    }
    {  // stability of diagrams under slice perturbation
        double worst = -1e300;
        bool ok = true;
        std::uniform_real_distribution<double> un(-0.05, 0.05);
        for (int t = 0; t < trials / 4 + 1; ++t) {
            const LineParam p{ua(rng), ub(rng)};
            ScalarSlice s = normalized_slice(ctx.f, p);
            ScalarSlice s2 = s;
            for (auto& v : s2.values) v += un(rng);
            const double eps = sup_norm_diff(s.values, s2.values);
            const auto d1 = compute_all_diagrams(build_lower_star(ctx.cx_f, s));
            const auto d2 = compute_all_diagrams(build_lower_star(ctx.cx_f, s2));
            for (int k = 0; k < 3; ++k) {
                const double db = bottleneck_distance(d1[std::size_t(k)], d2[std::size_t(k)]).first;
                ok = ok && db <= eps + 1e-12;
                worst = std::max(worst, db - eps);
            }
        }
        report("diagram stability", ok, worst);
    }
    {  // continuity modulus of db_at
        double worst = -1e300;
        bool ok = true;
        const double nf = uniform_norm(ctx.f), ng = uniform_norm(ctx.g);
        for (int t = 0; t < trials / 8 + 1; ++t) {
            const LineParam p{ua(rng), ub(rng)}, q{ua(rng), ub(rng)};
            const double lhs = std::fabs(db_at(ctx, p) - db_at(ctx, q));
            const double da = std::fabs(p.a - q.a), db = std::fabs(p.b - q.b);
            const double rhs = (4 * da * (nf + ctx.c_bar) + 3 * db) + (4 * da * (ng + ctx.c_bar) + 3 * db);
            ok = ok && lhs <= rhs + 1e-12;
            worst = std::max(worst, lhs - rhs);
        }
        report("db continuity modulus", ok, worst);
    }
    std::printf("%s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"matching distance between R^2-valued functions on closed surfaces"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "lattice search for the matching distance");
    CommonOpts co;
    int res_a = 41, res_b = 41;
    std::string out_path, heatmap_path;
    bool no_log = false;
    add_common(compute, co);
    compute->add_option("--res", res_a, "a-lattice resolution (b defaults to the same)")
        ->check(CLI::Range(2, 100000));
    compute->add_option("--res-b", res_b, "b-lattice resolution")->check(CLI::Range(2, 100000));
    compute->add_option("--out", out_path, "write the result JSON here (default: stdout)");
    compute->add_option("--heatmap", heatmap_path, "write a parameter-space heatmap SVG");
    compute->add_flag("--no-log", no_log, "omit the per-cell evaluation log from the JSON");
    compute->callback([&]() {
        if (compute->count("--res") && !compute->count("--res-b")) res_b = res_a;
    });

    // verify-theorem
    auto* vt = app.add_subcommand("verify-theorem",
                                  "candidate-set check of the main theorem (slope-1/vertical/"
                                  "horizontal lines + special values)");
    CommonOpts vto;
    int vt_res = 101, vt_special_res = 128, vt_refine = 8, vt_epg_samples = 4096;
    double vt_special_tol = 1e-6;
    std::string vt_tol = "auto", vt_epg_f, vt_epg_g;
    std::vector<double> vt_restrict;
    add_common(vt, vto);
    vt->add_option("--res", vt_res, "lattice resolution")->check(CLI::Range(3, 100000));
    vt->add_option("--tol", vt_tol, "tolerance, or 'auto' = measured res vs 2*res-1 gap");
    vt->add_option("--special-res", vt_special_res, "special-search lattice cells");
    vt->add_option("--special-tol", vt_special_tol, "special-search residual target");
    vt->add_option("--refine", vt_refine, "special-search cell refinement factor");
    vt->add_option("--epg-samples", vt_epg_samples, "polyline samples per derived proper contour");
    vt->add_option("--epg-f", vt_epg_f, "contour JSON for f (overrides the derived grid)");
    vt->add_option("--epg-g", vt_epg_g, "contour JSON for g");
    vt->add_option("--restrict-a", vt_restrict,
                   "negative control: restrict candidate lines to these a values");

    // verify-position
    auto* vp = app.add_subcommand("verify-position", "Position Theorem check on sampled lines");
    CommonOpts vpo;
    std::vector<std::string> vp_lines;
    int vp_nlines = 25, vp_epg_samples = 4096;
    unsigned vp_seed = 20240601u;
    double vp_tol = 0.05;
    std::string vp_epg_f;
    add_common(vp, vpo);
    vp->add_option("--line", vp_lines, "check a specific line 'a,b' (repeatable)");
    vp->add_option("--lines", vp_nlines, "number of sampled lines");
    vp->add_option("--seed", vp_seed, "RNG seed for the line sample");
    vp->add_option("--tol", vp_tol, "match tolerance for diagram coordinates");
    vp->add_option("--epg-samples", vp_epg_samples, "polyline samples per derived proper contour");
    vp->add_option("--epg-f", vp_epg_f, "contour JSON for f");

    // find-special
    auto* fs = app.add_subcommand("find-special", "sample the special set Sp(f,g)");
    CommonOpts fso;
    std::string fs_a_range, fs_b_range, fs_out, fs_epg_f, fs_epg_g;
    int fs_res = 128, fs_refine = 8, fs_epg_samples = 8192;
    double fs_tol = 1e-6;
    bool fs_exclude = false;
    add_common(fs, fso, /*need_mesh=*/false);
    fs->add_option("--a-range", fs_a_range, "a range 'lo,hi' inside (0,1); default 0.01,0.99");
    fs->add_option("--b-range", fs_b_range, "b range 'lo,hi'; default [-C,C]");
    fs->add_option("--res", fs_res, "lattice cells per axis");
    fs->add_option("--tol", fs_tol, "residual target");
    fs->add_option("--refine", fs_refine, "cell refinement factor");
    fs->add_option("--epg-samples", fs_epg_samples, "polyline samples per derived proper contour");
    fs->add_option("--epg-f", fs_epg_f, "contour JSON for f");
    fs->add_option("--epg-g", fs_epg_g, "contour JSON for g");
    fs->add_flag("--exclude-identical", fs_exclude,
                 "skip conditions whose two pairs are geometric copies (f=g degeneracy)");
    fs->add_option("--out", fs_out, "write CSV here (columns a,b,c1,c2,id_p,id_q,id_s,id_t,"
                                    "residual,condition); default stdout");

    // export-epg
    auto* ee = app.add_subcommand("export-epg", "render extended Pareto grids as SVG");
    CommonOpts eeo;
    std::string ee_line, ee_svg, ee_json, ee_epg_f, ee_epg_g;
    int ee_epg_samples = 512;
    bool ee_with_g = false;
    add_common(ee, eeo, /*need_mesh=*/false);
    ee->add_option("--line", ee_line, "overlay the filtering line 'a,b'");
    ee->add_option("--epg-samples", ee_epg_samples, "polyline samples per derived proper contour");
    ee->add_option("--epg-f", ee_epg_f, "contour JSON for f");
    ee->add_option("--epg-g", ee_epg_g, "contour JSON for g");
    ee->add_flag("--with-g", ee_with_g, "draw the grid of --g as well");
    ee->add_option("--out", ee_svg, "SVG output path (default: stdout)");
    ee->add_option("--json", ee_json, "also save the f grid as contour JSON");

    // boundary-check
    auto* bc = app.add_subcommand("boundary-check", "constancy/monotonicity checks at b = +-C");
    CommonOpts bco;
    int bc_samples = 9;
    double bc_tol = 1e-9;
    add_common(bc, bco);
    bc->add_option("--samples", bc_samples, "samples per segment");
    bc->add_option("--tol", bc_tol, "tolerance");

    // property-suite
    auto* ps = app.add_subcommand("property-suite", "randomized property sweeps");
    CommonOpts pso;
    unsigned ps_seed = 20240601u;
    int ps_trials = 64;
    add_common(ps, pso);
    ps->add_option("--seed", ps_seed, "RNG seed");
    ps->add_option("--trials", ps_trials, "trials per property");

    std::vector<const char*> argv;
    argv.push_back("epgmatch");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) return cmd_compute(co, res_a, res_b, out_path, heatmap_path, !no_log);
        if (*vt)
            return cmd_verify_theorem(vto, vt_res, vt_tol, vt_special_res, vt_special_tol, vt_refine,
                                      vt_epg_samples, vt_epg_f, vt_epg_g, vt_restrict);
        if (*vp)
            return cmd_verify_position(vpo, vp_lines, vp_nlines, vp_seed, vp_tol, vp_epg_samples,
                                       vp_epg_f);
        if (*fs)
            return cmd_find_special(fso, fs->count("--mesh") > 0, fs_a_range, fs_b_range, fs_res,
                                    fs_tol, fs_refine, fs_epg_samples, fs_epg_f, fs_epg_g,
                                    fs_exclude, fs_out);
        if (*ee)
            return cmd_export_epg(eeo, ee_line, ee_epg_samples, ee_epg_f, ee_epg_g, ee_with_g,
                                  ee_svg, ee_json);
        if (*bc) return cmd_boundary_check(bco, bc_samples, bc_tol);
        if (*ps) return cmd_property_suite(pso, ps_seed, ps_trials);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

}  // namespace epgmatch
