// h-sets on the section plane: oriented parallelogram supports
// N = c + [-1,1] u + [-1,1] s in (x, xdot) coordinates, with u the exit
// direction and s the entry direction.  Covering conditions are stated in
// the local affine chart t = A^{-1}(z - c) with A = [u s], where the
// support is the unit square.  A fuzzy h-set carries a center range instead
// of a point center and represents the whole family of translates; tests
// against it run on the hulled member and are conservative for every
// member at once.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rigor3bp/pcr3bp.hpp"

namespace rigor3bp {

// Exact machine vector in the section plane.
struct PlaneVec {
    double x = 0.0, xdot = 0.0;
};

inline PlaneVec r_reflect(const PlaneVec& v) { return {v.x, -v.xdot}; }

struct PlaneBox {
    Interval x, xdot;
};

struct HSet {
    Interval cx, cxdot;
    PlaneVec u, s;
    Branch branch = Branch::Plus;
};

// Family {t(w, u, s) : w in (cx, cxdot)} of translated h-sets.
struct FuzzyHSet {
    HSet family;
};

enum class EdgeKind { Left, Right, Bottom, Top };

// Position of a planar box relative to an h-set.  The placements are not
// exclusive (a box can sit in the strip and beyond the right edge at the
// same time), so each is a flag.  All strict inequalities: a tie sets no
// flag, which is the fail-safe direction for every use below.
struct BoxClass {
    bool in_left = false;              // t1 < -1 throughout
    bool in_right = false;             // t1 > +1 throughout
    bool in_strip = false;             // |t2| < 1 throughout
    bool in_support_interior = false;  // |t1| < 1 and |t2| < 1 throughout
    bool in_top_bottom = false;        // |t2| > 1 throughout (above or below)

    // No definite placement could be certified.
    bool straddles() const { return !(in_left || in_right || in_strip || in_top_bottom); }
    // Certainly disjoint from the support parallelogram.
    bool disjoint_from_support() const { return in_left || in_right || in_top_bottom; }
};

// Local chart t = A^{-1}(z - c); first coordinate runs along u.
std::pair<Interval, Interval> to_local(const HSet& h, const PlaneBox& z);

// Hull of c + t1 u + t2 s over the parameter box.
PlaneBox from_local(const HSet& h, const Interval& t1, const Interval& t2);

PlaneBox support_box(const HSet& h);

BoxClass classify(const HSet& h, const PlaneBox& z);

// Placement flags straight from local coordinates, for callers that carry
// a tighter chart enclosure than the axis-aligned hull of z.
BoxClass classify_local(const Interval& t1, const Interval& t2);

// Field-wise union of two soundly derived placements of the same region.
BoxClass merge_certainties(const BoxClass& a, const BoxClass& b);

// |t2| < 1 strictly: z lies inside the horizontal strip of h.
bool strictly_in_strip(const HSet& h, const PlaneBox& z);

// The edge at t1 = -1 (Left), t1 = +1 (Right), t2 = -1 (Bottom) or
// t2 = +1 (Top), subdivided into grid pieces with shared endpoints.
std::vector<PlaneBox> edge_segments(const HSet& h, EdgeKind e, int grid);

// Direction along which the edge runs: u for Bottom/Top, s for Left/Right.
PlaneVec edge_direction(const HSet& h, EdgeKind e);

// Symmetry R(x, xdot) = (x, -xdot) on h-sets swaps the roles of the exit
// and entry directions: t(c, u, s) -> t(R c, R s, R u), branch kept.
HSet r_action(const HSet& h);

// R maps the set onto itself: R c = c and R u = +/- s, exactly.
bool is_r_symmetric(const HSet& h);

std::string format_hset(const HSet& h);

inline SectionPoint section_point(const PlaneBox& z, Branch b) {
    return SectionPoint{z.x, z.xdot, b};
}

// Fuzzy forwarding: the family center is already an interval, so running
// the ordinary chart on it tests every member at once (conservatively).
inline PlaneBox support_box(const FuzzyHSet& f) { return support_box(f.family); }
inline BoxClass classify(const FuzzyHSet& f, const PlaneBox& z) { return classify(f.family, z); }
inline bool strictly_in_strip(const FuzzyHSet& f, const PlaneBox& z) {
    return strictly_in_strip(f.family, z);
}
inline std::vector<PlaneBox> edge_segments(const FuzzyHSet& f, EdgeKind e, int grid) {
    return edge_segments(f.family, e, grid);
}

}  // namespace rigor3bp
