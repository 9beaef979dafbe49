// Embedded data for the verified-connection proof: fixed-point constants,
// h-set frames along every chain, per-relation integrator settings, domain
// checks, reference derivative enclosures, and the symbolic transition graph.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rigor3bp/covering.hpp"
#include "rigor3bp/hset.hpp"
#include "rigor3bp/pcr3bp.hpp"

namespace rigor3bp {

// One covering-relation job with pinned integrator parameters.  Set names
// starting with "H~" refer to point families (fuzzy sets), all others to
// crisp h-sets.
struct RelationSpec {
    std::string name;    // e.g. "N0=>N1"
    std::string source;
    std::string target;
    CoverMode mode = CoverMode::Backward;
    int crossings = 1;  // 1 = half map, 2 = full return map
    CheckParams params;
    // Monotonicity follows from the cached local derivative hull instead of
    // a fresh integration (valid when the support lies inside the hulled
    // neighborhood and unstable directions are proportional).
    bool a1_from_derivative_hull = false;
    std::string note;
};

// Map one whole support parallelogram to certify the map is defined on it.
struct DomainCheckSpec {
    std::string set;
    int crossings = 1;
    int order = 5;
    double step = 0.01;
    int grid = 1;  // grid x grid cells
};

// Endpoint sign-check runs that pin the periodic orbit abscissas.
struct LyapunovRun {
    std::string orbit;  // "L1" or "L2"
    Branch branch = Branch::Plus;
    int order = 20;
    double step = 0.05;
};

// One admissible transition of the symbolic dynamics.
struct EdgeSpec {
    int from = 0, to = 0;           // symbols 1..4
    std::string composed_map;       // the map realizing the transition
    std::vector<std::string> evidence;  // lemma ids this edge rests on
    bool via_symmetry = false;      // true when the chain is the R-mirror
};

struct ProofOptions {
    // Stable-direction scale of the larger set at the second orbit.  The
    // source states both 2.8e-7 (defining display) and 2.8e-8 (recap); the
    // former is primary and the latter available as an override.
    double h2_stable_scale = 2.8e-7;
};

class ProofData {
public:
    explicit ProofData(const ProofOptions& opt = {});

    SystemParams system;

    // Periodic-orbit abscissas with isolation radii.
    Interval x1, x2;
    double eta1 = 0.0, eta2 = 0.0;

    // Approximate eigen directions and the small-set scales.
    PlaneVec u1{}, s1{}, u2{}, s2{};
    double alpha1 = 0.0, alpha2 = 0.0;
    double h2_stable_scale = 0.0;

    std::map<std::string, HSet> sets;          // crisp h-sets by name
    std::map<std::string, FuzzyHSet> families; // "H~1", "H~2"

    std::vector<LyapunovRun> lyapunov_runs;

    // Derivative-hull computation settings and the printed reference
    // enclosures (raw frame and (u_i, s_i) frame).
    int dp_grid = 13, dp_order = 5;
    double dp_step = 0.007;
    IMatrix dp_raw_ref1, dp_raw_ref2;
    IMatrix dp_local_ref1, dp_local_ref2;

    std::vector<DomainCheckSpec> domain_checks;

    std::vector<RelationSpec> heteroclinic;  // H1^2 => N0 => ... => H2^2
    std::vector<RelationSpec> exterior;      // E0 => ... => E5 => H2^2
    std::vector<RelationSpec> interior;      // F0 => ... => H1^2 => H~1
    std::vector<RelationSpec> hyperbolic;    // the four family relations

    std::vector<EdgeSpec> transition_edges;  // the eight admissible pairs

    const HSet& set(const std::string& name) const;
    const FuzzyHSet& family(const std::string& name) const;
    bool is_family(const std::string& name) const;
    // Support parallelogram of a named set of either kind.
    PlaneBox support(const std::string& name) const;
    Branch branch_of(const std::string& name) const;

    // Mutable lookup across all four relation lists (CLI overrides).
    RelationSpec* find_relation(const std::string& name);
    std::vector<const RelationSpec*> all_relations() const;

    static const char* symbol_name(int symbol);  // 1..4 -> "L1","L2","X","S"

    // Every decimal embedded above, keyed by constant name, exactly as the
    // source prints it.  The integrity test re-derives stored values from
    // these strings.
    static const std::vector<std::pair<std::string, std::string>>& decimal_registry();
};

// Exact-decimal helpers shared with the tests: tight interval enclosure and
// nearest double of a decimal string from the registry.
Interval registry_interval(const std::string& name);
double registry_double(const std::string& name);

}  // namespace rigor3bp
