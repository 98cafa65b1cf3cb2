#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epgmatch/bottleneck.hpp"
#include "epgmatch/special_set.hpp"

namespace epgmatch {

// Everything needed to evaluate (a,b) -> d_B(Dgm f*_(a,b), Dgm g*_(a,b)).
// Complexes are prebuilt once; every evaluation is pure.
struct MatchContext {
    BiFunctionSample f, g;
    SimplicialSurface cx_f, cx_g;
    double c_bar = 0.0;  // max of the two uniform norms
    int degree = -1;     // homology degree; -1 = max over degrees 0..2

    static MatchContext make(BiFunctionSample f, BiFunctionSample g, int degree = -1);
};

std::array<PersistenceDiagram, 3> diagrams_at(const BiFunctionSample& s,
                                              const SimplicialSurface& cx,
                                              const LineParam& p);

// Bottleneck distance between the sliced diagrams at p, aggregated over
// degrees by max (or restricted to ctx.degree).
double db_at(const MatchContext& ctx, const LineParam& p);
std::pair<double, MatchingWitness> db_at_witness(const MatchContext& ctx, const LineParam& p);

struct EvalEntry {
    LineParam p;
    double value = 0.0;
};

struct MatchingResult {
    double value = 0.0;
    LineParam argmax;
    MatchingWitness witness;       // witness at argmax
    std::vector<EvalEntry> log;    // all evaluations, sorted by (a,b)
};

// Max of db_at over a uniform lattice on [0,1] x [-c_bar, c_bar]. The a-lattice
// always contains {0, 1/2, 1} and the b-lattice contains +-c_bar.
MatchingResult matching_distance_grid(const MatchContext& ctx, int res_a, int res_b,
                                      int workers = 1);

// Max of db_at over the candidate set of the main theorem: the three line
// families a in {0, 1/2, 1} (b-lattice of size b_res) plus the given special
// values thinned to (thin_ra x thin_rb) buckets.
MatchingResult matching_distance_candidates(const MatchContext& ctx,
                                            const std::vector<SpecialValue>& specials,
                                            int b_res, double thin_ra, double thin_rb,
                                            int workers = 1);

struct TheoremReport {
    bool pass = false;
    double grid_value = 0.0;
    LineParam grid_argmax;
    double fine_value = 0.0;       // grid at 2*res-1, used for the auto tolerance
    double candidate_value = 0.0;
    LineParam candidate_argmax;
    double tol = 0.0;              // tolerance actually used
    double gap = 0.0;              // grid_value - candidate_value
    bool argmax_near_candidate = false;  // within one lattice cell of the candidate set
    std::size_t special_count = 0;       // candidate specials after thinning
};

struct TheoremOptions {
    int res = 101;
    double tol = -1.0;  // < 0: use the measured res vs 2*res-1 gap
    SpecialSearchConfig special;
    int workers = 1;
    // When set, replace the candidate line families {0,1/2,1} by the given
    // a-values and drop the special values (negative-control mode).
    std::optional<std::vector<double>> restrict_candidate_a;
};

TheoremReport verify_main_theorem(const MatchContext& ctx, const ExtendedParetoGrid& epg_f,
                                  const ExtendedParetoGrid& epg_g, const TheoremOptions& opt);

struct BoundaryReport {
    bool pass = false;
    double const_low_variation = 0.0;   // on {a in [0,1/2], b=-C}
    double const_high_variation = 0.0;  // on {a in [1/2,1], b=+C}
    double monotone_violation = 0.0;    // worst increase along the decreasing segments
    double corner_low = 0.0;            // db at (0, C)
    double corner_high = 0.0;           // db at (1, -C)
    double closed_form_error = 0.0;     // worst |db - closed form| at sampled points
    std::string detail;                 // first failed check, empty when pass
};

// Checks the constant/monotone segments at b = +-c_bar, the two zero corners
// and the closed forms db = d_B(Dgm f1, Dgm g1) (a <= 1/2, b = -C) and
// db = (1-a)/a * d_B(Dgm f1, Dgm g1) (a >= 1/2, b = -C).
BoundaryReport boundary_behavior_check(const MatchContext& ctx, int samples_per_segment = 9,
                                       double tol = 1e-9);

}  // namespace epgmatch
