#include "epgmatch/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epgmatch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double half_persistence(const DiagramPoint& p) { return (p.death - p.birth) / 2.0; }
}  // namespace

double point_distance(const DiagramPoint* x, const DiagramPoint* y) {
    if (!x && !y) return 0.0;
    if (!x || !y) {
        const DiagramPoint& p = x ? *x : *y;
        return p.essential() ? kInf : half_persistence(p);
    }
    if (x->essential() != y->essential()) return kInf;
    if (x->essential()) return std::fabs(x->birth - y->birth);
    const double box = std::max(std::fabs(x->birth - y->birth), std::fabs(x->death - y->death));
    const double diag = std::max(half_persistence(*x), half_persistence(*y));
    return std::min(box, diag);
}

namespace {

// Perfect-matching feasibility at threshold lambda: left = X + copies(Y),
// right = Y + copies(X); X_i may use its own copy, copies pair freely.
struct ThresholdMatcher {
    const std::vector<const DiagramPoint*>& xs;
    const std::vector<const DiagramPoint*>& ys;
    std::vector<std::vector<double>> dist;  // dist[i][j]
    std::vector<double> half_x, half_y;

    ThresholdMatcher(const std::vector<const DiagramPoint*>& xs_,
                     const std::vector<const DiagramPoint*>& ys_)
        : xs(xs_), ys(ys_) {
        dist.assign(xs.size(), std::vector<double>(ys.size(), 0.0));
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < ys.size(); ++j) dist[i][j] = point_distance(xs[i], ys[j]);
        half_x.reserve(xs.size());
        for (const auto* p : xs) half_x.push_back(half_persistence(*p));
        half_y.reserve(ys.size());
        for (const auto* p : ys) half_y.push_back(half_persistence(*p));
    }

    // node layout: left 0..n1-1 = X, n1..n1+n2-1 = copy of Y_j;
    //              right 0..n2-1 = Y, n2..n2+n1-1 = copy of X_i.
    std::size_t n1() const { return xs.size(); }
    std::size_t n2() const { return ys.size(); }

    bool edge(std::size_t l, std::size_t r, double lambda) const {
        const bool l_real = l < n1();
        const bool r_real = r < n2();
        if (l_real && r_real) return dist[l][r] <= lambda;
        if (l_real && !r_real) return r - n2() == l && half_x[l] <= lambda;
        if (!l_real && r_real) return l - n1() == r && half_y[r] <= lambda;
        return true;  // copy-copy
    }

    bool try_augment(std::size_t l, double lambda, std::vector<char>& visited,
                     std::vector<int>& match_right) const {
        const std::size_t n = n1() + n2();
        for (std::size_t r = 0; r < n; ++r) {
            if (visited[r] || !edge(l, r, lambda)) continue;
            visited[r] = 1;
            if (match_right[r] < 0 ||
                try_augment(std::size_t(match_right[r]), lambda, visited, match_right)) {
                match_right[r] = static_cast<int>(l);
                return true;
            }
        }
        return false;
    }

    // Kuhn's algorithm; fills match_right (right node -> left node) and
    // reports whether a perfect matching exists at threshold lambda.
    bool feasible(double lambda, std::vector<int>& match_right) const {
        const std::size_t n = n1() + n2();
        match_right.assign(n, -1);
        std::vector<char> visited(n);
        for (std::size_t l = 0; l < n; ++l) {
            std::fill(visited.begin(), visited.end(), 0);
            if (!try_augment(l, lambda, visited, match_right)) return false;
        }
        return true;
    }
};

}  // namespace

std::pair<double, MatchingWitness> bottleneck_distance(const PersistenceDiagram& d1,
                                                       const PersistenceDiagram& d2) {
    MatchingWitness w;

    std::vector<int> ess1, ess2;  // indices of essential points
    std::vector<const DiagramPoint*> fin1, fin2;
    std::vector<int> fin1_idx, fin2_idx;
    for (std::size_t i = 0; i < d1.points.size(); ++i) {
        if (d1.points[i].essential())
            ess1.push_back(static_cast<int>(i));
        else {
            fin1.push_back(&d1.points[i]);
            fin1_idx.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t j = 0; j < d2.points.size(); ++j) {
        if (d2.points[j].essential())
            ess2.push_back(static_cast<int>(j));
        else {
            fin2.push_back(&d2.points[j]);
            fin2_idx.push_back(static_cast<int>(j));
        }
    }

    // Essential classes pair among themselves; mismatched counts give +inf.
    if (ess1.size() != ess2.size()) {
        const std::size_t common = std::min(ess1.size(), ess2.size());
        for (std::size_t k = 0; k < common; ++k)
            w.pairs.push_back({ess1[k], ess2[k], point_distance(&d1.points[ess1[k]], &d2.points[ess2[k]])});
        for (std::size_t k = common; k < ess1.size(); ++k) w.pairs.push_back({ess1[k], -1, kInf});
        for (std::size_t k = common; k < ess2.size(); ++k) w.pairs.push_back({-1, ess2[k], kInf});
        w.cost = kInf;
        return {kInf, w};
    }
    auto by_birth1 = [&](int lhs, int rhs) { return d1.points[lhs].birth < d1.points[rhs].birth; };
    auto by_birth2 = [&](int lhs, int rhs) { return d2.points[lhs].birth < d2.points[rhs].birth; };
    std::sort(ess1.begin(), ess1.end(), by_birth1);
    std::sort(ess2.begin(), ess2.end(), by_birth2);
    double essential_cost = 0.0;
    for (std::size_t k = 0; k < ess1.size(); ++k) {
        const double c = std::fabs(d1.points[ess1[k]].birth - d2.points[ess2[k]].birth);
        essential_cost = std::max(essential_cost, c);
        w.pairs.push_back({ess1[k], ess2[k], c});
    }

    // Finite part: exact threshold search over the candidate value set.
    double finite_cost = 0.0;
    std::vector<int> match_right;
    if (!fin1.empty() || !fin2.empty()) {
        ThresholdMatcher matcher(fin1, fin2);
        std::vector<double> candidates{0.0};
        for (std::size_t i = 0; i < fin1.size(); ++i)
            for (std::size_t j = 0; j < fin2.size(); ++j) candidates.push_back(matcher.dist[i][j]);
        for (double h : matcher.half_x) candidates.push_back(h);
        for (double h : matcher.half_y) candidates.push_back(h);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::size_t lo = 0, hi = candidates.size() - 1;
        std::vector<int> probe;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (matcher.feasible(candidates[mid], probe))
                hi = mid;
            else
                lo = mid + 1;
        }
        finite_cost = candidates[lo];
        matcher.feasible(finite_cost, match_right);

        for (std::size_t r = 0; r < matcher.n2(); ++r) {  // real Y
            const int l = match_right[r];
            if (l < 0) continue;
            if (std::size_t(l) < matcher.n1())
                w.pairs.push_back({fin1_idx[l], fin2_idx[r], matcher.dist[l][r]});
            else
                w.pairs.push_back({-1, fin2_idx[r], matcher.half_y[r]});
        }
        for (std::size_t r = matcher.n2(); r < matcher.n1() + matcher.n2(); ++r) {  // copy of X
            const int l = match_right[r];
            if (l >= 0 && std::size_t(l) < matcher.n1())
                w.pairs.push_back({fin1_idx[l], -1, matcher.half_x[l]});
        }
    }

    w.cost = std::max(essential_cost, finite_cost);
    for (const auto& pr : w.pairs) {
        if (pr.cost == w.cost) {
            if (pr.from >= 0 && pr.to >= 0) w.attains_point_pair = true;
            if (pr.from < 0 || pr.to < 0) w.attains_diagonal_pair = true;
        }
    }
    return {w.cost, w};
}

namespace {

void brute_force_rec(const PersistenceDiagram& d1, const PersistenceDiagram& d2, std::size_t i,
                     std::vector<char>& used2, double current, double& best) {
    if (current >= best) return;
    if (i == d1.points.size()) {
        double total = current;
        for (std::size_t j = 0; j < d2.points.size(); ++j)
            if (!used2[j]) total = std::max(total, point_distance(nullptr, &d2.points[j]));
        best = std::min(best, total);
        return;
    }
    const DiagramPoint& x = d1.points[i];
    for (std::size_t j = 0; j < d2.points.size(); ++j) {
        if (used2[j]) continue;
        used2[j] = 1;
        brute_force_rec(d1, d2, i + 1, used2,
                        std::max(current, point_distance(&x, &d2.points[j])), best);
        used2[j] = 0;
    }
    brute_force_rec(d1, d2, i + 1, used2, std::max(current, point_distance(&x, nullptr)), best);
}

}  // namespace

double brute_force_bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    if (d1.points.size() + d2.points.size() > 8)
        throw std::domain_error("brute_force_bottleneck: more than 8 off-diagonal points");
    double best = kInf;
    std::vector<char> used2(d2.points.size(), 0);
    brute_force_rec(d1, d2, 0, used2, 0.0, best);
    if (d1.points.empty() && d2.points.empty()) best = 0.0;
    return best;
}

}  // namespace epgmatch
