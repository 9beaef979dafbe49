// Covering-relation checkers between planar h-sets under a section-to-section
// map.  A relation N1 => N2 is certified either directly (exit edges land in
// the matching side half-planes and the whole boundary image stays inside the
// horizontal strip of N2) or through backward computations (side condition on
// the exit edges, monotone first coordinate along the center horizontal line,
// one anchor point mapped into the interior, and preimages of N2's entry
// edges disjoint from the source support).  Fuzzy variants run the same
// checks on whole families at once via interval centers.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigor3bp/hset.hpp"
#include "rigor3bp/poincare.hpp"

namespace rigor3bp {

struct MappedBox {
    PlaneBox image;
    IMatrix deriv;  // derivative of the applied map over the source box
};

// Planar map between section charts driven by the checkers.  dir = +1
// applies the map, dir = -1 its inverse.  order/step pick the integrator
// parameters for flow-induced maps; analytic test maps ignore them.
class SectionMap {
public:
    virtual ~SectionMap() = default;
    virtual PlaneBox image(const PlaneBox& b, Branch src, int dir, int order,
                           double step) const = 0;
    // Interval enclosure of the dir-map derivative over b.
    virtual IMatrix derivative(const PlaneBox& b, Branch src, int dir, int order,
                               double step) const = 0;
    // Image and derivative of the dir-map together; flow maps compute both
    // from a single variational integration.
    virtual MappedBox image_and_derivative(const PlaneBox& b, Branch src, int dir, int order,
                                           double step) const {
        return {image(b, src, dir, order, step), derivative(b, src, dir, order, step)};
    }
    // Branch carried by forward images of points on branch src.
    virtual Branch branch_after(Branch src) const = 0;
};

// Return map of the section flow: `crossings` = 1 gives the half map onto
// the opposite branch, 2 the full return map to the same branch.
class FlowSectionMap : public SectionMap {
public:
    FlowSectionMap(const SystemParams& p, int crossings);
    FlowSectionMap(const SystemParams& p, int crossings, const PoincareParams& base);

    PlaneBox image(const PlaneBox& b, Branch src, int dir, int order,
                   double step) const override;
    IMatrix derivative(const PlaneBox& b, Branch src, int dir, int order,
                       double step) const override;
    MappedBox image_and_derivative(const PlaneBox& b, Branch src, int dir, int order,
                                   double step) const override;
    Branch branch_after(Branch src) const override;

    int crossings() const { return crossings_; }
    const SystemParams& system() const { return p_; }

private:
    PoincareParams engine_params(int order, double step) const;

    SystemParams p_;
    int crossings_;
    PoincareParams base_;
};

// Integrator settings for one family of edge runs.  A negative step means
// the family is mapped by the inverse (the flow runs backward in time).
struct EdgeRun {
    int grid = 1;
    int order = 5;
    double step = 0.01;
};

// Full parameter set of one relation check.
struct CheckParams {
    EdgeRun vertical;    // exit edges (le/re), always mapped forward
    EdgeRun horizontal;  // entry edges; in backward mode these are N2's,
                         // mapped by the inverse (step < 0)

    // Monotonicity run along the center horizontal line of N1.
    int mono_grid = 1;
    int mono_order = 4;
    double mono_step = 0.01;
    // Anchor-point run: image of c1 + t0 u1 must land strictly inside N2.
    int center_order = 6;
    double center_step = 0.01;
    double t0 = 0.0;
    // Anchor override: a point on the center line replacing c1 + t0 u1.
    std::optional<PlaneVec> center_offset;
    // Fixed-point anchor: a box known (from separate lemmas) to contain an
    // interior fixed point of the map.  The anchor condition then reduces to
    // interval containment of the box in both supports, with no flow
    // computation; the source is widened to carry the anchor's center lines.
    std::optional<PlaneBox> a2_fixed_anchor;

    // Precomputed enclosure of the (1,1) entry of the derivative in N2
    // coordinates over a set containing N1; if it excludes zero the
    // monotonicity condition holds without any new integration.
    std::optional<Interval> mono_entry;

    // Support the entry-edge preimages must avoid; defaults to N1.  Used
    // when one backward run serves several relations at once, against the
    // largest of the source supports.
    std::optional<HSet> a3_exclusion;

    int threads = 1;  // parallelism budget for sub-segment runs
};

enum class CondStatus { Pass, Fail, NotChecked };
enum class Orientation { BPlus, BMinus, Unknown };

// Record of a single sub-segment run, kept for reports and plot output.
struct SegmentCheck {
    std::string condition;
    EdgeKind edge = EdgeKind::Left;
    int index = 0;
    PlaneBox source;
    PlaneBox image;  // image or preimage enclosure in the section plane
    // Mean-value enclosure of the image in the classification frame,
    // computed when the hull placement alone is inconclusive.  Much tighter
    // than the hull for thin skewed frames.
    std::optional<std::pair<Interval, Interval>> local;
    BoxClass placement;
    bool pass = false;
    std::string note;
};

struct CoveringVerdict {
    bool holds = false;
    Orientation orientation = Orientation::Unknown;
    // Condition name -> status, in evaluation order.
    std::vector<std::pair<std::string, CondStatus>> conditions;
    std::vector<SegmentCheck> diagnostics;
    std::string failure;  // first offending segment or error, empty if holds

    CondStatus condition(const std::string& name) const;
};

// Side condition on the exit edges of n1 against the side half-planes of
// n2.  Appends per-segment records to diag when given.
Orientation check_condition_b(const SectionMap& f, const HSet& n1, const HSet& n2,
                              const CheckParams& cp, CoveringVerdict* diag = nullptr);

// Direct certification: side condition plus every boundary sub-segment's
// image strictly inside the horizontal strip of n2.
CoveringVerdict check_covering_direct(const SectionMap& f, const HSet& n1, const HSet& n2,
                                      const CheckParams& cp);

// Backward certification: side condition on exit edges, monotone first
// image coordinate along the center line, anchor point mapped inside n2,
// and preimages of n2's entry edges disjoint from the source support.
CoveringVerdict check_covering_backward(const SectionMap& f, const HSet& n1, const HSet& n2,
                                        const CheckParams& cp);

enum class CoverMode { Direct, Backward };

// Family versions: interval centers make every edge, line and side test
// conservative for all members at once.
CoveringVerdict check_covering_fuzzy(const SectionMap& f, const FuzzyHSet& n1,
                                     const FuzzyHSet& n2, const CheckParams& cp, CoverMode mode);
CoveringVerdict check_covering_fuzzy(const SectionMap& f, const FuzzyHSet& n1, const HSet& n2,
                                     const CheckParams& cp, CoverMode mode);

// Saddle-form data of a derivative enclosure expressed in the local frame
// of an h-set (columns u, s).
struct HyperbolicityData {
    Interval lambda1, lambda2, eps1, eps2;
    double lambda1_prime = 0.0;  // min |lambda1|
    double lambda2_prime = 0.0;  // max |lambda2|
    double eps1_prime = 0.0;     // max |eps1|
    double eps2_prime = 0.0;     // max |eps2|
    bool hyperbolic = false;
    // Admissible ratio of the u-scale to the s-scale, rounded inward;
    // empty (lo >= hi) means the dominance condition could not be certified.
    double ratio_lo = 0.0;
    double ratio_hi = 0.0;
};

HyperbolicityData check_hyperbolicity(const IMatrix& dp_local);

// det(dp - Id) excludes zero: the map has at most one fixed point in the
// region the enclosure covers.
bool check_unique_fixed_point(const IMatrix& dp);

inline PlaneBox to_plane(const SectionPoint& q) { return PlaneBox{q.x, q.xdot}; }

}  // namespace rigor3bp
