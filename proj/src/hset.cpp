// h-set geometry: local charts through an interval 2x2 inverse, edge
// subdivision, classification, and the R-symmetry action.

#include "rigor3bp/hset.hpp"

#include <cstdio>

namespace rigor3bp {

namespace {

IMatrix frame(const HSet& h) {
    IMatrix a(2, 2);
    a.at(0, 0) = Interval(h.u.x);
    a.at(1, 0) = Interval(h.u.xdot);
    a.at(0, 1) = Interval(h.s.x);
    a.at(1, 1) = Interval(h.s.xdot);
    return a;
}

}  // namespace

std::pair<Interval, Interval> to_local(const HSet& h, const PlaneBox& z) {
    const IMatrix ai = inverse2x2(frame(h));
    const Interval dx = z.x - h.cx;
    const Interval dv = z.xdot - h.cxdot;
    return {ai.at(0, 0) * dx + ai.at(0, 1) * dv, ai.at(1, 0) * dx + ai.at(1, 1) * dv};
}

PlaneBox from_local(const HSet& h, const Interval& t1, const Interval& t2) {
    return {h.cx + t1 * Interval(h.u.x) + t2 * Interval(h.s.x),
            h.cxdot + t1 * Interval(h.u.xdot) + t2 * Interval(h.s.xdot)};
}

PlaneBox support_box(const HSet& h) {
    return from_local(h, Interval(-1.0, 1.0), Interval(-1.0, 1.0));
}

BoxClass classify(const HSet& h, const PlaneBox& z) {
    const auto [t1, t2] = to_local(h, z);
    return classify_local(t1, t2);
}

BoxClass classify_local(const Interval& t1, const Interval& t2) {
    BoxClass c;
    c.in_left = t1.hi < -1.0;
    c.in_right = t1.lo > 1.0;
    c.in_strip = -1.0 < t2.lo && t2.hi < 1.0;
    c.in_support_interior = c.in_strip && -1.0 < t1.lo && t1.hi < 1.0;
    c.in_top_bottom = t2.lo > 1.0 || t2.hi < -1.0;
    return c;
}

BoxClass merge_certainties(const BoxClass& a, const BoxClass& b) {
    BoxClass c;
    c.in_left = a.in_left || b.in_left;
    c.in_right = a.in_right || b.in_right;
    c.in_strip = a.in_strip || b.in_strip;
    c.in_support_interior = a.in_support_interior || b.in_support_interior;
    c.in_top_bottom = a.in_top_bottom || b.in_top_bottom;
    return c;
}

bool strictly_in_strip(const HSet& h, const PlaneBox& z) {
    const Interval t2 = to_local(h, z).second;
    return -1.0 < t2.lo && t2.hi < 1.0;
}

std::vector<PlaneBox> edge_segments(const HSet& h, EdgeKind e, int grid) {
    if (grid < 1) grid = 1;
    const std::vector<Interval> pieces = split(Interval(-1.0, 1.0), grid);
    std::vector<PlaneBox> out;
    out.reserve(pieces.size());
    for (const Interval& t : pieces) {
        switch (e) {
            case EdgeKind::Left: out.push_back(from_local(h, Interval(-1.0), t)); break;
            case EdgeKind::Right: out.push_back(from_local(h, Interval(1.0), t)); break;
            case EdgeKind::Bottom: out.push_back(from_local(h, t, Interval(-1.0))); break;
            case EdgeKind::Top: out.push_back(from_local(h, t, Interval(1.0))); break;
        }
    }
    return out;
}

PlaneVec edge_direction(const HSet& h, EdgeKind e) {
    return (e == EdgeKind::Bottom || e == EdgeKind::Top) ? h.u : h.s;
}

HSet r_action(const HSet& h) {
    return HSet{h.cx, -h.cxdot, r_reflect(h.s), r_reflect(h.u), h.branch};
}

bool is_r_symmetric(const HSet& h) {
    if (!(h.cxdot.lo == -h.cxdot.hi)) return false;
    const PlaneVec ru = r_reflect(h.u);
    const bool plus = ru.x == h.s.x && ru.xdot == h.s.xdot;
    const bool minus = ru.x == -h.s.x && ru.xdot == -h.s.xdot;
    return plus || minus;
}

std::string format_hset(const HSet& h) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "t((%.17g,%.17g),(%.17g,%.17g),(%.17g,%.17g))@%c",
                  h.cx.mid(), h.cxdot.mid(), h.u.x, h.u.xdot, h.s.x, h.s.xdot,
                  h.branch == Branch::Plus ? '+' : '-');
    return std::string(buf);
}

}  // namespace rigor3bp
