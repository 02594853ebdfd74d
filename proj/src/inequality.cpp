#include "hotspots/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hotspots/analytic.hpp"
#include "hotspots/error.hpp"

namespace hotspots {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

Check skipped(std::string name, std::string reason) {
    Check c;
    c.name = std::move(name);
    c.verdict = Verdict::skipped;
    c.note = std::move(reason);
    return c;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::strict: return "strict";
        case Verdict::equal: return "equal";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::violated: return "violated";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

Bounded exact(double v) { return {v, 0.0, -1}; }

Bounded bounded(const EigenEstimate& e, double floor) {
    Bounded b;
    b.value = e.extrapolated;
    b.error = std::max(e.error_bar, floor * std::max(std::abs(e.extrapolated), 1.0));
    b.level = e.per_level.empty() ? -1 : e.per_level.back().level;
    return b;
}

Verdict claim_less(Bounded a, Bounded b) {
    if (a.value + a.error < b.value - b.error) return Verdict::strict;
    if (a.value - a.error >= b.value + b.error) return Verdict::violated;
    return Verdict::inconclusive;
}

Verdict claim_less_equal(Bounded a, Bounded b) {
    if (a.value + a.error < b.value - b.error) return Verdict::strict;
    if (a.value - a.error > b.value + b.error) return Verdict::violated;
    return Verdict::equal;
}

Verdict claim_equal(Bounded a, Bounded b) {
    return std::abs(a.value - b.value) <= a.error + b.error ? Verdict::equal : Verdict::violated;
}

const EigenEstimate& LazyEstimate::at(int hi) const {
    auto it = cache_.find(hi);
    if (it != cache_.end()) return it->second;
    if (!solve_) throw Error(ErrorCode::invalid_argument, "estimate '" + name_ + "' has no solver");
    return cache_.emplace(hi, solve_(hi - 2, hi)).first->second;
}

Bounded LazyEstimate::bounded_at(int hi, double floor) const { return bounded(at(hi), floor); }

Check compare(std::string name, const LazyEstimate* a, Bounded a_exact, Relation rel, const LazyEstimate* b,
              Bounded b_exact, const LabOptions& opt) {
    Check c;
    c.name = std::move(name);
    int hi = opt.hi;
    for (;;) {
        c.lhs = a ? a->bounded_at(hi, opt.floor) : a_exact;
        c.rhs = b ? b->bounded_at(hi, opt.floor) : b_exact;
        switch (rel) {
            case Relation::less: c.verdict = claim_less(c.lhs, c.rhs); break;
            case Relation::less_equal: c.verdict = claim_less_equal(c.lhs, c.rhs); break;
            case Relation::equal: c.verdict = claim_equal(c.lhs, c.rhs); break;
        }
        c.margin = (c.rhs.value - c.rhs.error) - (c.lhs.value + c.lhs.error);
        if (passes(c.verdict) || hi >= opt.escalate_to || (!a && !b)) break;
        ++hi;
    }
    if (c.verdict == Verdict::inconclusive) c.note = "error bars overlap at level " + std::to_string(hi) + "; refine further";
    return c;
}

int InequalityChainReport::count(Verdict v) const {
    return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(), [&](const Check& c) { return c.verdict == v; }));
}

bool InequalityChainReport::all_strict() const { return count(Verdict::strict) == 6; }

BoundarySpec chain_spec(const Triangle& t, std::string_view key) {
    if (key == "D") return BoundarySpec::all_dirichlet();
    return BoundarySpec::from_ranks(t, key);
}

LazyEstimate neumann_lazy(const Triangle& t, const LabOptions& opt) {
    return LazyEstimate("mu2", [t, opt](int lo, int hi) { return neumann_estimate(t, lo, hi, opt.order, opt.solver); });
}

LazyEstimate mixed_lazy(std::string name, const Triangle& t, const BoundarySpec& bc, const LabOptions& opt) {
    return LazyEstimate(std::move(name),
                        [t, bc, opt](int lo, int hi) { return mixed_estimate(t, bc, lo, hi, opt.order, opt.solver); });
}

std::array<LazyEstimate, 7> chain_estimates(const Triangle& t, const LabOptions& opt) {
    std::array<LazyEstimate, 7> out;
    for (int k = 0; k < 7; ++k) out[k] = mixed_lazy(kChainKeys[k], t, chain_spec(t, kChainKeys[k]), opt);
    return out;
}

InequalityChainReport chain(const Triangle& t, const LabOptions& opt) { return chain(t, chain_estimates(t, opt), opt); }

InequalityChainReport chain(const Triangle& t, const std::array<LazyEstimate, 7>& est, const LabOptions& opt) {
    InequalityChainReport rep{t, {}, {}, {}, {}};
    const SideLabeling lab = label_sides(t);
    const bool sm = lab.tied(lab.shortest, lab.medium);
    const bool ml = lab.tied(lab.medium, lab.longest);
    rep.expected_equal = {sm, ml, false, ml, sm, false};
    for (int k = 0; k < 6; ++k) {
        const std::string name = std::string(kChainKeys[k]) + " < " + kChainKeys[k + 1];
        const Relation rel = rep.expected_equal[k] ? Relation::equal : Relation::less;
        rep.verdicts[k] = compare(name, &est[k], {}, rel, &est[k + 1], {}, opt);
        if (!rep.verdicts[k].note.empty()) rep.suggestions.push_back(rep.verdicts[k].name + ": " + rep.verdicts[k].note);
    }
    for (int k = 0; k < 7; ++k) {
        const int finest = est[k].finest_computed();
        rep.estimates[k] = est[k].bounded_at(finest, opt.floor);
    }
    return rep;
}

std::vector<Check> flat_neumann_checks(const LazyEstimate& mu2, const std::array<LazyEstimate, 7>& chain_est,
                                       const LabOptions& opt) {
    std::vector<Check> out;
    for (int k : {3, 4, 5}) {
        out.push_back(compare(std::string("mu2 <= lambda^") + kChainKeys[k], &mu2, {}, Relation::less_equal,
                              &chain_est[k], {}, opt));
    }
    return out;
}

std::vector<Check> cone_checks(const Triangle& t, const std::array<LazyEstimate, 7>& chain_est, const LabOptions& opt) {
    const SideLabeling lab = label_sides(t);
    std::vector<Check> out;
    for (int k = 0; k < 3; ++k) {
        const SideId side = lab.side(static_cast<SideRank>(k));
        const double bound = cone_bound(t.angle(opposite_vertex(side)), t.area());
        out.push_back(compare(std::string("cone bound <= lambda^") + kChainKeys[k], nullptr, exact(bound),
                              Relation::less_equal, &chain_est[k], {}, opt));
    }
    return out;
}

BisectorSplit bisector_split(const Triangle& t) {
    const Point2 z1 = t.vertex(VertexId::z1), z2 = t.vertex(VertexId::z2), z3 = t.vertex(VertexId::z3);
    const Point2 p = bisector_foot(t, VertexId::z1).foot;
    BisectorSplit s{p, Triangle(z1, z2, p), Triangle(z1, p, z3)};
    if (s.near_z2.reoriented() || s.near_z3.reoriented()) {
        throw Error(ErrorCode::invalid_argument, "bisector split lost orientation");
    }
    return s;
}

std::vector<Check> bessel_checks(const Triangle& t, const LazyEstimate& mu2, const LazyEstimate& lambda_z1z2p,
                                 const LabOptions& opt) {
    std::vector<Check> out;
    const Point2 z1 = t.vertex(VertexId::z1), z2 = t.vertex(VertexId::z2), z3 = t.vertex(VertexId::z3);
    const Point2 p = bisector_foot(t, VertexId::z1).foot;
    out.push_back(compare("mu2 < (2 j01 / diam)^2", &mu2, {}, Relation::less, nullptr,
                          exact(mu2_diameter_bound(t.diameter())), opt));
    const double lmax = std::max(distance(p, z1), distance(p, z2));
    out.push_back(compare("(j01 / max|pz|)^2 < lambda^{z1z2}(z1 z2 p)", nullptr, exact(bisector_dirichlet_bound(lmax)),
                          Relation::less, &lambda_z1z2p, {}, opt));
    const double a1 = t.angle(VertexId::z1), a2 = t.angle(VertexId::z2);
    if (a2 <= pi / 2 + kAngleSlack) {
        out.push_back(compare("height bound < lambda^{z1z2}(z1 z2 p)", nullptr, exact(altitude_bound(distance(p, z2), a2)),
                              Relation::less, &lambda_z1z2p, {}, opt));
    } else {
        out.push_back(skipped("height bound < lambda^{z1z2}(z1 z2 p)", "angle at z2 exceeds pi/2"));
    }
    if (a2 <= pi / 2 + kAngleSlack && a1 <= pi / 2 + kAngleSlack) {
        out.push_back(compare("mu2 < ((j01 + pi/2) / height)^2", &mu2, {}, Relation::less, nullptr,
                              exact(altitude_j01_bound(distance(z3, z2), a2)), opt));
    } else {
        out.push_back(skipped("mu2 < ((j01 + pi/2) / height)^2", "angle at z1 or z2 exceeds pi/2"));
    }
    return out;
}

Check bisector_check(const Triangle& t, const LazyEstimate& mu2, const LazyEstimate& lambda_z1z2p,
                     const LabOptions& opt) {
    const std::string name = "mu2 < lambda^{z1z2}(z1 z2 p)";
    const double l13 = t.side_length(SideId::z3z1), l12 = t.side_length(SideId::z1z2);
    if (l13 < l12 * (1.0 - kTieTolerance)) return skipped(name, "needs |z1z3| >= |z1z2|");
    return compare(name, &mu2, {}, Relation::less, &lambda_z1z2p, {}, opt);
}

std::array<Check, 2> bisector_pair_checks(const Triangle& t, const LazyEstimate& mu2, const LabOptions& opt) {
    const BisectorSplit s = bisector_split(t);
    // Dirichlet on z1 p: side 0 of (z1, p, z3), side 2 of (z1, z2, p)
    const LazyEstimate l3 = mixed_lazy("z1pz3", s.near_z3, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);
    const LazyEstimate l2 = mixed_lazy("z1pz2", s.near_z2, BoundarySpec::dirichlet_on({SideId::z3z1}), opt);

    std::array<Check, 2> out;
    // (i) against whichever of the two is larger at the base level
    const bool three_larger = l3.bounded_at(opt.hi, opt.floor).value >= l2.bounded_at(opt.hi, opt.floor).value;
    out[0] = compare("mu2 <= max bisector eigenvalue", &mu2, {}, Relation::less_equal, three_larger ? &l3 : &l2, {}, opt);

    const double l13 = t.side_length(SideId::z3z1), l12 = t.side_length(SideId::z1z2);
    const double rel = (l13 - l12) / std::max(l13, l12);
    if (std::abs(rel) <= kTieTolerance) {
        out[1] = compare("bisector eigenvalues equal", &l3, {}, Relation::equal, &l2, {}, opt);
    } else if (rel > 0) {
        out[1] = compare("lambda(z1 p z3) < lambda(z1 z2 p)", &l3, {}, Relation::less, &l2, {}, opt);
    } else {
        out[1] = compare("lambda(z1 z2 p) < lambda(z1 p z3)", &l2, {}, Relation::less, &l3, {}, opt);
    }
    return out;
}

bool SkewScan::decreasing() const {
    return std::all_of(steps.begin(), steps.end(), [](const Check& c) { return c.verdict == Verdict::strict; });
}

SkewScan skew_scan(double b, const std::vector<double>& a, const LabOptions& opt) {
    if (!(b > 0)) throw Error(ErrorCode::invalid_argument, "skew scan needs b > 0");
    SkewScan out;
    out.b = b;
    out.a = a;
    std::vector<LazyEstimate> est;
    for (double ak : a) {
        const Triangle t({0, 0}, {1, 0}, {ak, b});
        est.push_back(mixed_lazy("a=" + std::to_string(ak), t, BoundarySpec::dirichlet_on({SideId::z2z3}), opt));
    }
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        out.steps.push_back(compare("lambda(a=" + std::to_string(a[k + 1]) + ") < lambda(a=" + std::to_string(a[k]) + ")",
                                    &est[k + 1], {}, Relation::less, &est[k], {}, opt));
    }
    for (const LazyEstimate& e : est) out.lambda.push_back(e.bounded_at(std::max(e.finest_computed(), opt.hi), opt.floor));
    return out;
}

int InequalityReport::count(Verdict v) const {
    return chain.count(v) +
           static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.verdict == v; }));
}

InequalityReport inequality_battery(const Triangle& input, const LabOptions& opt) {
    const Triangle t = canonicalize(input).triangle;
    const LazyEstimate mu2 = neumann_lazy(t, opt);
    const std::array<LazyEstimate, 7> est = chain_estimates(t, opt);
    const BisectorSplit split = bisector_split(t);
    const LazyEstimate lz = mixed_lazy("z1z2p", split.near_z2, BoundarySpec::dirichlet_on({SideId::z1z2}), opt);

    InequalityReport rep{t, {}, chain(t, est, opt), {}};
    for (Check& c : flat_neumann_checks(mu2, est, opt)) rep.checks.push_back(std::move(c));
    for (Check& c : cone_checks(t, est, opt)) rep.checks.push_back(std::move(c));
    for (Check& c : bessel_checks(t, mu2, lz, opt)) rep.checks.push_back(std::move(c));
    rep.checks.push_back(bisector_check(t, mu2, lz, opt));
    for (Check& c : bisector_pair_checks(t, mu2, opt)) rep.checks.push_back(std::move(c));
    rep.mu2 = mu2.bounded_at(mu2.finest_computed(), opt.floor);
    return rep;
}

}  // namespace hotspots
