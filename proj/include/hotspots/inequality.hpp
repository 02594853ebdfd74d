#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hotspots/eigensolve.hpp"
#include "hotspots/geometry.hpp"

namespace hotspots {

// strict: a claimed inequality holds with separated error bars.
// equal: bars overlap where equality is allowed or expected.
// inconclusive: bars overlap on a strict claim.
enum class Verdict { strict, equal, inconclusive, violated, skipped };
const char* to_string(Verdict v);
inline bool passes(Verdict v) { return v == Verdict::strict || v == Verdict::equal || v == Verdict::skipped; }

struct Bounded {
    double value = 0.0;
    double error = 0.0;  // half width
    int level = -1;      // finest level behind the value, -1 for exact numbers
};

Bounded exact(double v);
// error = max(Richardson bar, floor * max(|lambda|, 1))
Bounded bounded(const EigenEstimate& e, double floor = 1e-9);

Verdict claim_less(Bounded a, Bounded b);        // a < b
Verdict claim_less_equal(Bounded a, Bounded b);  // a <= b
Verdict claim_equal(Bounded a, Bounded b);

struct LabOptions {
    int order = 2;
    int lo = 4;            // first Richardson level; three levels are used
    int hi = 6;
    int escalate_to = 7;   // finest level tried for inconclusive claims
    double floor = 1e-9;
    SolverOptions solver;
};

// Estimate computed on demand at levels (hi - 2 .. hi) and cached by hi.
class LazyEstimate {
public:
    using Solve = std::function<EigenEstimate(int lo, int hi)>;
    LazyEstimate() = default;
    LazyEstimate(std::string name, Solve solve) : name_(std::move(name)), solve_(std::move(solve)) {}
    const EigenEstimate& at(int hi) const;
    Bounded bounded_at(int hi, double floor) const;
    const std::string& name() const { return name_; }
    int finest_computed() const { return cache_.empty() ? -1 : cache_.rbegin()->first; }

private:
    std::string name_;
    Solve solve_;
    mutable std::map<int, EigenEstimate> cache_;
};

struct Check {
    std::string name;
    Verdict verdict = Verdict::skipped;
    Bounded lhs, rhs;
    double margin = 0.0;  // (rhs - err) - (lhs + err) for lhs < rhs claims
    std::string note;     // skip reason or refinement suggestion
};

enum class Relation { less, less_equal, equal };

// Compares lazily, refining both sides up to opt.escalate_to while inconclusive.
Check compare(std::string name, const LazyEstimate* a, Bounded a_exact, Relation rel, const LazyEstimate* b,
              Bounded b_exact, const LabOptions& opt);

inline constexpr std::array<const char*, 7> kChainKeys{"S", "M", "L", "MS", "LS", "LM", "D"};

struct InequalityChainReport {
    Triangle triangle;
    std::array<Bounded, 7> estimates;  // at the finest level used, keyed by kChainKeys
    std::array<Check, 6> verdicts;     // adjacent pairs
    std::array<bool, 6> expected_equal{};
    std::vector<std::string> suggestions;
    int count(Verdict v) const;
    bool all_strict() const;
};

// Dirichlet set from a chain key; "D" is all sides.
BoundarySpec chain_spec(const Triangle& t, std::string_view key);

// Pairs whose Dirichlet sets differ by swapping tied sides are expected equal.
InequalityChainReport chain(const Triangle& t, const LabOptions& opt = {});
// Same, reusing precomputed lazy estimates keyed by kChainKeys.
InequalityChainReport chain(const Triangle& t, const std::array<LazyEstimate, 7>& est, const LabOptions& opt);
std::array<LazyEstimate, 7> chain_estimates(const Triangle& t, const LabOptions& opt);

LazyEstimate neumann_lazy(const Triangle& t, const LabOptions& opt);
LazyEstimate mixed_lazy(std::string name, const Triangle& t, const BoundarySpec& bc, const LabOptions& opt);

// mu2 <= lambda^X for X in {MS, LS, LM}, where the Neumann part is one flat side.
std::vector<Check> flat_neumann_checks(const LazyEstimate& mu2, const std::array<LazyEstimate, 7>& chain_est,
                                       const LabOptions& opt);

// lambda^X >= cone bound at the vertex opposite X for X in {S, M, L}.
std::vector<Check> cone_checks(const Triangle& t, const std::array<LazyEstimate, 7>& chain_est, const LabOptions& opt);

// Sub-triangles cut by the internal bisector z1 p; vertices keep the parent orientation.
struct BisectorSplit {
    Point2 p;
    Triangle near_z2;  // (z1, z2, p)
    Triangle near_z3;  // (z1, p, z3)
};
BisectorSplit bisector_split(const Triangle& t);

// Bessel bounds at z1 with p the bisector foot: mu2 < (2 j01 / diam)^2,
// lambda^{z1z2}(z1 z2 p) > (j01 / max|p z_i|)^2, and the two height bounds
// under their angle hypotheses.
std::vector<Check> bessel_checks(const Triangle& t, const LazyEstimate& mu2, const LazyEstimate& lambda_z1z2p,
                                 const LabOptions& opt);

// lambda^{z1z2}(z1 z2 p) > mu2(T); skipped unless |z1z3| >= |z1z2|.
Check bisector_check(const Triangle& t, const LazyEstimate& mu2, const LazyEstimate& lambda_z1z2p,
                     const LabOptions& opt);

// (i) mu2 <= max of the two bisector-Dirichlet eigenvalues;
// (ii) their order follows |z1z3| against |z1z2|.
std::array<Check, 2> bisector_pair_checks(const Triangle& t, const LazyEstimate& mu2, const LabOptions& opt);

struct SkewScan {
    double b = 0.0;
    std::vector<double> a;
    std::vector<Bounded> lambda;  // Dirichlet on z2z3 of (0,0), (1,0), (a,b)
    std::vector<Check> steps;     // lambda(a_k) > lambda(a_{k+1})
    bool decreasing() const;
};

SkewScan skew_scan(double b, const std::vector<double>& a, const LabOptions& opt = {});

struct InequalityReport {
    Triangle triangle;  // canonical
    Bounded mu2;
    InequalityChainReport chain;
    std::vector<Check> checks;  // everything except the chain
    int count(Verdict v) const;  // over chain and checks
    bool any_violated() const { return count(Verdict::violated) > 0; }
};

// Canonicalizes, then runs the chain and all per-triangle checks with shared solves.
InequalityReport inequality_battery(const Triangle& t, const LabOptions& opt = {});

}  // namespace hotspots
