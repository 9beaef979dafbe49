// Proof pipeline: runs the sign checks at the periodic orbits, the
// derivative-hull computations, the domain checks and covering chains, and
// assembles the verified transition graph.  Produces deterministic text
// reports and optional CSV enclosure dumps for plotting.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rigor3bp/covering.hpp"
#include "rigor3bp/proofdata.hpp"

namespace rigor3bp {

// Global knobs applied on top of the stored per-relation parameters.
struct VerifyConfig {
    int threads = 1;
    std::optional<int> order;    // override every integrator order
    std::optional<double> step;  // override step magnitudes (signs kept)
    std::optional<int> grid;     // override every subdivision count
    bool auto_refine = false;    // on failure retry with doubled grids
    std::string plot_dir;        // write per-relation CSV files when set
    std::ostream* log = nullptr; // progress notes with timings
};

struct RelationReport {
    std::string name;
    CoveringVerdict verdict;
    double seconds = 0.0;
    std::string note;  // refinement or sharing remarks
};

// Outcome of one lemma-level verification step.  `lines` holds the
// deterministic report body (REL/CHECK/NOTE records); wall times stay out
// of the report text.
struct LemmaReport {
    std::string lemma_id;
    bool verified = false;
    std::vector<std::string> lines;
    std::vector<RelationReport> relations;
    double seconds = 0.0;
};

// Admissible-transition matrix over the four symbols, with the lemmas each
// edge rests on.  Edges whose evidence failed are withheld with a reason.
struct TransitionGraph {
    std::vector<EdgeSpec> edges;
    std::vector<std::string> withheld;
    bool complete = false;

    bool has_edge(int from, int to) const;
};

struct Certificate {
    std::vector<LemmaReport> lemmas;
    TransitionGraph graph;
    bool all_verified = false;

    const LemmaReport* lemma(const std::string& id) const;
};

class ProofPipeline {
public:
    explicit ProofPipeline(ProofData data, VerifyConfig cfg = {});

    // Lemma ids: lyapunov, dp, heteroclinic, exterior, interior, hyperbolic.
    static const std::vector<std::string>& lemma_ids();

    LemmaReport run_lemma(const std::string& id);
    Certificate run_all();

    const ProofData& data() const { return data_; }

private:
    LemmaReport run_lyapunov();
    LemmaReport run_dp();
    LemmaReport run_chain(const std::string& lemma_id);
    LemmaReport run_hyperbolic();

    RelationReport run_relation(const RelationSpec& spec,
                                const HSet* src_override = nullptr,
                                const HSet* dst_override = nullptr);
    void domain_checks_for(const std::string& lemma_id, LemmaReport& rep);
    void symmetry_checks(const std::vector<std::string>& names, LemmaReport& rep);
    void append_relation(LemmaReport& rep, RelationReport r,
                         const HSet& src, const HSet& dst);
    void ensure_dp_hulls();
    HSet resolve(const std::string& name) const;
    CheckParams tuned(CheckParams p) const;
    void note_overrides(LemmaReport& rep) const;
    void log_line(const std::string& s) const;

    ProofData data_;
    VerifyConfig cfg_;
    FlowSectionMap half_, full_;

    bool dp_ready_ = false;
    IMatrix dp_raw_[2], dp_local_[2];
};

// Deterministic report text (no timestamps, no timings).
void write_report(std::ostream& os, const Certificate& cert);
void write_report(std::ostream& os, const std::vector<LemmaReport>& lemmas,
                  const TransitionGraph* graph);

// Deterministic dump of every stored parameter of the proof input.
void dump_params(std::ostream& os, const ProofData& data);

// File-name-safe version of a relation or lemma name.
std::string sanitize_filename(const std::string& name);

}  // namespace rigor3bp
