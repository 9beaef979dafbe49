// Covering-relation checkers: edge-family image runs, side and strip
// classification, the monotone-coordinate and anchor conditions of the
// backward certification, and the saddle-dominance test for derivative
// enclosures in local frames.

#include "rigor3bp/covering.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace rigor3bp {

namespace {

void run_indexed(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

const char* edge_tag(EdgeKind e) {
    switch (e) {
        case EdgeKind::Left: return "le";
        case EdgeKind::Right: return "re";
        case EdgeKind::Bottom: return "be";
        case EdgeKind::Top: return "te";
    }
    return "?";
}

// Point h-set frame [u s] as an interval matrix.
IMatrix frame_matrix(const HSet& h) {
    IMatrix a(2, 2);
    a.at(0, 0) = Interval(h.u.x);
    a.at(1, 0) = Interval(h.u.xdot);
    a.at(0, 1) = Interval(h.s.x);
    a.at(1, 1) = Interval(h.s.xdot);
    return a;
}

// Mean-value enclosure of the image of `piece` in the local chart of
// `frame`: A^{-1}(f(m) - c) + A^{-1} Df(piece) (piece - m).  The product
// A^{-1} Df is taken before any box hull, which keeps thin skewed frames
// tight where the axis-aligned image hull wraps badly.
std::pair<Interval, Interval> mean_value_local(const SectionMap& f, const HSet& frame,
                                               const PlaneBox& piece, Branch run_branch,
                                               int dir, int order, double step) {
    const double mx = piece.x.mid(), mv = piece.xdot.mid();
    const PlaneBox at_mid =
        f.image(PlaneBox{Interval(mx), Interval(mv)}, run_branch, dir, order, step);
    const auto tm = to_local(frame, at_mid);

    const IMatrix df = f.image_and_derivative(piece, run_branch, dir, order, step).deriv;
    const IMatrix inv = inverse2x2(frame_matrix(frame));
    IMatrix e(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            e.at(r, c) = inv.at(r, 0) * df.at(0, c) + inv.at(r, 1) * df.at(1, c);

    const Interval dx = piece.x - Interval(mx);
    const Interval dv = piece.xdot - Interval(mv);
    return {tm.first + e.at(0, 0) * dx + e.at(0, 1) * dv,
            tm.second + e.at(1, 0) * dx + e.at(1, 1) * dv};
}

// Refinement goals for edge runs: which placements must come out definite
// before the hull classification is accepted as-is.
constexpr int kRefineSides = 1;
constexpr int kRefineStrip = 2;
constexpr int kRefineDisjoint = 4;

// Map every sub-segment of one edge of src_set.  run.step's sign selects
// the map direction; run_branch is the branch of the mapped points.  When
// `frame` is given, pieces whose hull placement misses one of the
// refine_mask goals get a mean-value refinement in that frame.
std::vector<SegmentCheck> map_edge_family(const SectionMap& f, const HSet& src_set,
                                          Branch run_branch, EdgeKind e, const EdgeRun& run,
                                          const std::string& cond, int threads,
                                          const HSet* frame = nullptr, int refine_mask = 0) {
    if (run.grid < 1) throw std::invalid_argument("edge grid must be >= 1");
    const int dir = run.step < 0.0 ? -1 : 1;
    const double mag = std::fabs(run.step);
    const auto segs = edge_segments(src_set, e, run.grid);
    std::vector<SegmentCheck> out(segs.size());
    run_indexed(static_cast<int>(segs.size()), threads, [&](int i) {
        SegmentCheck& sc = out[i];
        sc.condition = cond + std::string(":") + edge_tag(e);
        sc.edge = e;
        sc.index = i;
        sc.source = segs[i];
        try {
            sc.image = f.image(segs[i], run_branch, dir, run.order, mag);
            if (frame) {
                const BoxClass hull_place = classify(*frame, sc.image);
                const bool clean =
                    (!(refine_mask & kRefineSides) ||
                     hull_place.in_left || hull_place.in_right) &&
                    (!(refine_mask & kRefineStrip) || hull_place.in_strip) &&
                    (!(refine_mask & kRefineDisjoint) || hull_place.disjoint_from_support());
                if (!clean)
                    sc.local =
                        mean_value_local(f, *frame, segs[i], run_branch, dir, run.order, mag);
            }
        } catch (const std::exception& ex) {
            sc.pass = false;
            sc.note = ex.what();
        }
    });
    return out;
}

void set_condition(CoveringVerdict& v, const std::string& name, CondStatus st) {
    for (auto& c : v.conditions) {
        if (c.first == name) {
            c.second = st;
            return;
        }
    }
    v.conditions.emplace_back(name, st);
}

void note_failure(CoveringVerdict& v, const SegmentCheck& sc) {
    if (!v.failure.empty()) return;
    v.failure = sc.condition + "[" + std::to_string(sc.index) + "]";
    if (!sc.note.empty()) v.failure += ": " + sc.note;
}

// Classify the vertical-edge images of n1 against n2's side half-planes
// and decide the orientation.  strip_too additionally demands that every
// image stays inside n2's horizontal strip (the direct certification).
Orientation evaluate_sides(std::vector<SegmentCheck>& le, std::vector<SegmentCheck>& re,
                           const HSet& n2, bool strip_too, bool& strip_ok) {
    bool ran_ok = true;
    bool le_left = true, le_right = true, re_left = true, re_right = true;
    strip_ok = true;
    auto place = [&](std::vector<SegmentCheck>& fam, bool& all_left, bool& all_right) {
        for (SegmentCheck& sc : fam) {
            if (!sc.note.empty()) {
                ran_ok = false;
                strip_ok = false;
                continue;
            }
            sc.placement = classify(n2, sc.image);
            if (sc.local)
                sc.placement = merge_certainties(
                    sc.placement, classify_local(sc.local->first, sc.local->second));
            all_left = all_left && sc.placement.in_left;
            all_right = all_right && sc.placement.in_right;
            strip_ok = strip_ok && sc.placement.in_strip;
        }
    };
    place(le, le_left, le_right);
    place(re, re_left, re_right);

    Orientation o = Orientation::Unknown;
    if (ran_ok) {
        if (le_left && re_right) o = Orientation::BPlus;
        else if (le_right && re_left) o = Orientation::BMinus;
    }

    for (std::vector<SegmentCheck>* fam : {&le, &re}) {
        const bool want_left = (fam == &le) == (o != Orientation::BMinus);
        for (SegmentCheck& sc : *fam) {
            if (!sc.note.empty()) continue;
            const bool side = want_left ? sc.placement.in_left : sc.placement.in_right;
            sc.pass = side && (!strip_too || sc.placement.in_strip);
        }
    }
    return o;
}

void append(CoveringVerdict& v, std::vector<SegmentCheck>&& segs) {
    for (SegmentCheck& sc : segs) v.diagnostics.push_back(std::move(sc));
}

void validate_common(const CheckParams& cp) {
    if (cp.vertical.grid < 1 || cp.horizontal.grid < 1 || cp.mono_grid < 1)
        throw std::invalid_argument("grids must be >= 1");
    if (!(std::fabs(cp.t0) < 1.0)) throw std::invalid_argument("|t0| must be < 1");
    if (cp.vertical.step < 0.0)
        throw std::invalid_argument("exit edges are always mapped forward");
}

bool branch_audit(const SectionMap& f, const HSet& n1, const HSet& n2, CoveringVerdict& v) {
    if (f.branch_after(n1.branch) == n2.branch) return true;
    v.holds = false;
    v.failure = "branch mismatch: forward images of the source carry the wrong branch";
    return false;
}

HSet mid_member(const HSet& h) {
    HSet m = h;
    m.cx = Interval(h.cx.mid());
    m.cxdot = Interval(h.cxdot.mid());
    return m;
}

std::string interval_note(const char* label, const Interval& x) {
    return std::string(label) + "=" + to_string(x);
}

}  // namespace

CondStatus CoveringVerdict::condition(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.first == name) return c.second;
    return CondStatus::NotChecked;
}

FlowSectionMap::FlowSectionMap(const SystemParams& p, int crossings)
    : FlowSectionMap(p, crossings, PoincareParams{}) {}

FlowSectionMap::FlowSectionMap(const SystemParams& p, int crossings, const PoincareParams& base)
    : p_(p), crossings_(crossings), base_(base) {}

PoincareParams FlowSectionMap::engine_params(int order, double step) const {
    PoincareParams pp = base_;
    pp.step.order = order;
    pp.step.step = step;
    return pp;
}

PlaneBox FlowSectionMap::image(const PlaneBox& b, Branch src, int dir, int order,
                               double step) const {
    PoincareEngine eng(p_, engine_params(order, step));
    return to_plane(eng.map_box(section_point(b, src), crossings_, dir, false).image);
}

IMatrix FlowSectionMap::derivative(const PlaneBox& b, Branch src, int dir, int order,
                                   double step) const {
    PoincareEngine eng(p_, engine_params(order, step));
    return eng.map_box(section_point(b, src), crossings_, dir, true).deriv;
}

MappedBox FlowSectionMap::image_and_derivative(const PlaneBox& b, Branch src, int dir, int order,
                                               double step) const {
    PoincareEngine eng(p_, engine_params(order, step));
    const PoincareEnclosure enc = eng.map_box(section_point(b, src), crossings_, dir, true);
    return {to_plane(enc.image), enc.deriv};
}

Branch FlowSectionMap::branch_after(Branch src) const {
    return crossings_ % 2 != 0 ? opposite(src) : src;
}

Orientation check_condition_b(const SectionMap& f, const HSet& n1, const HSet& n2,
                              const CheckParams& cp, CoveringVerdict* diag) {
    validate_common(cp);
    auto le = map_edge_family(f, n1, n1.branch, EdgeKind::Left, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides);
    auto re = map_edge_family(f, n1, n1.branch, EdgeKind::Right, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides);
    bool strip_ok = true;
    const Orientation o = evaluate_sides(le, re, n2, false, strip_ok);
    if (diag) {
        append(*diag, std::move(le));
        append(*diag, std::move(re));
    }
    return o;
}

CoveringVerdict check_covering_direct(const SectionMap& f, const HSet& n1, const HSet& n2,
                                      const CheckParams& cp) {
    validate_common(cp);
    if (cp.horizontal.step < 0.0)
        throw std::invalid_argument("direct check maps every edge forward");
    CoveringVerdict v;
    set_condition(v, "b", CondStatus::NotChecked);
    set_condition(v, "a'", CondStatus::NotChecked);
    if (!branch_audit(f, n1, n2, v)) return v;

    auto le = map_edge_family(f, n1, n1.branch, EdgeKind::Left, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides | kRefineStrip);
    auto re = map_edge_family(f, n1, n1.branch, EdgeKind::Right, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides | kRefineStrip);
    bool vertical_strip = true;
    v.orientation = evaluate_sides(le, re, n2, true, vertical_strip);
    set_condition(v, "b",
                  v.orientation == Orientation::Unknown ? CondStatus::Fail : CondStatus::Pass);

    // Entry edges forward: together with the vertical images this covers the
    // whole boundary of the source, which must stay inside n2's strip.
    bool horizontal_strip = true;
    auto be = map_edge_family(f, n1, n1.branch, EdgeKind::Bottom, cp.horizontal, "a'", cp.threads,
                              &n2, kRefineStrip);
    auto te = map_edge_family(f, n1, n1.branch, EdgeKind::Top, cp.horizontal, "a'", cp.threads,
                              &n2, kRefineStrip);
    for (std::vector<SegmentCheck>* fam : {&be, &te}) {
        for (SegmentCheck& sc : *fam) {
            if (!sc.note.empty()) {
                horizontal_strip = false;
                continue;
            }
            sc.placement = classify(n2, sc.image);
            if (sc.local)
                sc.placement = merge_certainties(
                    sc.placement, classify_local(sc.local->first, sc.local->second));
            sc.pass = sc.placement.in_strip;
            horizontal_strip = horizontal_strip && sc.pass;
        }
    }
    const bool aprime = vertical_strip && horizontal_strip;
    set_condition(v, "a'", aprime ? CondStatus::Pass : CondStatus::Fail);

    append(v, std::move(le));
    append(v, std::move(re));
    append(v, std::move(be));
    append(v, std::move(te));
    v.holds = v.orientation != Orientation::Unknown && aprime;
    if (!v.holds)
        for (const SegmentCheck& sc : v.diagnostics)
            if (!sc.pass) {
                note_failure(v, sc);
                break;
            }
    return v;
}

CoveringVerdict check_covering_backward(const SectionMap& f, const HSet& n1, const HSet& n2,
                                        const CheckParams& cp) {
    validate_common(cp);
    if (cp.horizontal.step > 0.0)
        throw std::invalid_argument("backward check maps the entry edges by the inverse");
    CoveringVerdict v;
    set_condition(v, "b", CondStatus::NotChecked);
    set_condition(v, "a1", CondStatus::NotChecked);
    set_condition(v, "a2", CondStatus::NotChecked);
    set_condition(v, "a3", CondStatus::NotChecked);
    if (!branch_audit(f, n1, n2, v)) return v;

    // b: exit edges forward against n2's sides.
    auto le = map_edge_family(f, n1, n1.branch, EdgeKind::Left, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides);
    auto re = map_edge_family(f, n1, n1.branch, EdgeKind::Right, cp.vertical, "b", cp.threads,
                              &n2, kRefineSides);
    bool strip_ignored = true;
    v.orientation = evaluate_sides(le, re, n2, false, strip_ignored);
    set_condition(v, "b",
                  v.orientation == Orientation::Unknown ? CondStatus::Fail : CondStatus::Pass);
    append(v, std::move(le));
    append(v, std::move(re));

    // a1: the first coordinate of the image of the center horizontal line,
    // in n2's frame, has derivative bounded away from zero.  Either a
    // precomputed frame entry certifies this, or the line is subdivided and
    // a derivative enclosure is integrated over each piece.
    bool a1_ok = true;
    if (cp.mono_entry) {
        SegmentCheck sc;
        sc.condition = "a1";
        sc.index = 0;
        sc.source = support_box(n1);
        sc.image = sc.source;
        sc.pass = !cp.mono_entry->contains(0.0);
        sc.note = interval_note("frame entry", *cp.mono_entry);
        a1_ok = sc.pass;
        v.diagnostics.push_back(std::move(sc));
    } else {
        const IMatrix a_inv = inverse2x2(frame_matrix(n2));
        const auto pieces = split(Interval(-1.0, 1.0), cp.mono_grid);
        std::vector<SegmentCheck> rows(pieces.size());
        run_indexed(static_cast<int>(pieces.size()), cp.threads, [&](int i) {
            SegmentCheck& sc = rows[i];
            sc.condition = "a1";
            sc.index = i;
            sc.source = from_local(n1, pieces[i], Interval(0.0));
            sc.image = sc.source;
            try {
                const IMatrix d =
                    f.derivative(sc.source, n1.branch, 1, cp.mono_order, cp.mono_step);
                Interval dg1(0.0);
                for (int col = 0; col < 2; ++col) {
                    const Interval u1j(col == 0 ? n1.u.x : n1.u.xdot);
                    dg1 = dg1 + (a_inv.at(0, 0) * d.at(0, col) + a_inv.at(0, 1) * d.at(1, col)) * u1j;
                }
                sc.pass = !dg1.contains(0.0);
                sc.note = interval_note("dg1", dg1);
            } catch (const std::exception& ex) {
                sc.pass = false;
                sc.note = ex.what();
            }
        });
        for (SegmentCheck& sc : rows) {
            a1_ok = a1_ok && sc.pass;
            v.diagnostics.push_back(std::move(sc));
        }
    }
    set_condition(v, "a1", a1_ok ? CondStatus::Pass : CondStatus::Fail);

    // a2: one anchor point on the center line lands strictly inside n2.
    bool a2_ok = false;
    {
        SegmentCheck sc;
        sc.condition = "a2";
        sc.index = 0;
        if (cp.a2_fixed_anchor) {
            // The anchor box maps into itself at its fixed point, so strict
            // containment in both supports certifies the condition.  The
            // interval subtraction in to_local quantifies over every member
            // center at once.
            sc.source = *cp.a2_fixed_anchor;
            sc.image = sc.source;
            sc.placement = classify(n2, sc.image);
            const BoxClass at_home = classify(n1, sc.source);
            sc.pass = sc.placement.in_support_interior && at_home.in_support_interior;
            sc.note = "fixed-point anchor";
        } else {
            if (cp.center_offset)
                sc.source =
                    PlaneBox{Interval(cp.center_offset->x), Interval(cp.center_offset->xdot)};
            else
                sc.source = from_local(mid_member(n1), Interval(cp.t0), Interval(0.0));
            try {
                sc.image = f.image(sc.source, n1.branch, 1, cp.center_order, cp.center_step);
                sc.placement = classify(n2, sc.image);
                sc.pass = sc.placement.in_support_interior;
            } catch (const std::exception& ex) {
                sc.pass = false;
                sc.note = ex.what();
            }
        }
        a2_ok = sc.pass;
        v.diagnostics.push_back(std::move(sc));
    }
    set_condition(v, "a2", a2_ok ? CondStatus::Pass : CondStatus::Fail);

    // a3: preimages of n2's entry edges avoid the source support (or the
    // designated larger support when one run serves several relations).
    const HSet& excl = cp.a3_exclusion ? *cp.a3_exclusion : n1;
    bool a3_ok = true;
    auto be = map_edge_family(f, n2, n2.branch, EdgeKind::Bottom, cp.horizontal, "a3", cp.threads,
                              &excl, kRefineDisjoint);
    auto te = map_edge_family(f, n2, n2.branch, EdgeKind::Top, cp.horizontal, "a3", cp.threads,
                              &excl, kRefineDisjoint);
    for (std::vector<SegmentCheck>* fam : {&be, &te}) {
        for (SegmentCheck& sc : *fam) {
            if (!sc.note.empty()) {
                a3_ok = false;
                continue;
            }
            sc.placement = classify(excl, sc.image);
            if (sc.local)
                sc.placement = merge_certainties(
                    sc.placement, classify_local(sc.local->first, sc.local->second));
            sc.pass = sc.placement.disjoint_from_support();
            a3_ok = a3_ok && sc.pass;
        }
    }
    set_condition(v, "a3", a3_ok ? CondStatus::Pass : CondStatus::Fail);
    append(v, std::move(be));
    append(v, std::move(te));

    v.holds = v.orientation != Orientation::Unknown && a1_ok && a2_ok && a3_ok;
    if (!v.holds)
        for (const SegmentCheck& sc : v.diagnostics)
            if (!sc.pass) {
                note_failure(v, sc);
                break;
            }
    return v;
}

CoveringVerdict check_covering_fuzzy(const SectionMap& f, const FuzzyHSet& n1,
                                     const FuzzyHSet& n2, const CheckParams& cp, CoverMode mode) {
    return mode == CoverMode::Direct ? check_covering_direct(f, n1.family, n2.family, cp)
                                     : check_covering_backward(f, n1.family, n2.family, cp);
}

CoveringVerdict check_covering_fuzzy(const SectionMap& f, const FuzzyHSet& n1, const HSet& n2,
                                     const CheckParams& cp, CoverMode mode) {
    return mode == CoverMode::Direct ? check_covering_direct(f, n1.family, n2, cp)
                                     : check_covering_backward(f, n1.family, n2, cp);
}

HyperbolicityData check_hyperbolicity(const IMatrix& dp_local) {
    HyperbolicityData h;
    h.lambda1 = dp_local.at(0, 0);
    h.lambda2 = dp_local.at(1, 1);
    h.eps1 = dp_local.at(0, 1);
    h.eps2 = dp_local.at(1, 0);
    h.lambda1_prime = h.lambda1.abs_inf();
    h.lambda2_prime = h.lambda2.abs_sup();
    h.eps1_prime = h.eps1.abs_sup();
    h.eps2_prime = h.eps2.abs_sup();

    const bool expanding = h.lambda1_prime > 1.0 && h.lambda2_prime < 1.0;
    if (!expanding) return h;

    const Interval l1(h.lambda1_prime), l2(h.lambda2_prime);
    const Interval e1(h.eps1_prime), e2(h.eps2_prime);
    const bool dominance =
        (e1 * e2).hi < ((Interval(1.0) - l2) * (l1 - Interval(1.0))).lo;

    // Window of admissible u-to-s scale ratios, rounded inward.
    h.ratio_lo = (e1 / (l1 - Interval(1.0))).hi;
    h.ratio_hi = h.eps2_prime == 0.0 ? HUGE_VAL : ((Interval(1.0) - l2) / e2).lo;
    h.hyperbolic = dominance && h.ratio_lo < h.ratio_hi;
    return h;
}

bool check_unique_fixed_point(const IMatrix& dp) {
    IMatrix m = dp;
    m.at(0, 0) = m.at(0, 0) - Interval(1.0);
    m.at(1, 1) = m.at(1, 1) - Interval(1.0);
    return !det2(m).contains(0.0);
}

}  // namespace rigor3bp
