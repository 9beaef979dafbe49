#include "rigor3bp/pcr3bp.hpp"

namespace rigor3bp {

namespace {

struct RadialTerms {
    Interval dx1, dx2;      // x+mu, x-1+mu
    Interval r1sq, r2sq;    // squared distances to the primaries
    Interval inv_r1_3, inv_r2_3;
    Interval inv_r1_5, inv_r2_5;
};

RadialTerms radial(const SystemParams& p, const Interval& x, const Interval& y,
                   bool need_fifth) {
    RadialTerms t;
    t.dx1 = x + p.mu;
    t.dx2 = x - Interval(1.0) + p.mu;
    const Interval y2 = sqr(y);
    t.r1sq = sqr(t.dx1) + y2;
    t.r2sq = sqr(t.dx2) + y2;
    if (t.r1sq.lo <= 0.0 || t.r2sq.lo <= 0.0) throw SingularityError();
    const Interval r1 = sqrt(t.r1sq);
    const Interval r2 = sqrt(t.r2sq);
    t.inv_r1_3 = Interval(1.0) / (t.r1sq * r1);
    t.inv_r2_3 = Interval(1.0) / (t.r2sq * r2);
    if (need_fifth) {
        t.inv_r1_5 = t.inv_r1_3 / t.r1sq;
        t.inv_r2_5 = t.inv_r2_3 / t.r2sq;
    }
    return t;
}

} // namespace

SystemParams SystemParams::oterma() {
    SystemParams p;
    p.mu = interval_from_decimal("0.0009537");
    p.jacobi_c = interval_from_decimal("3.03");
    return p;
}

State4 State4::from_vec(const IVector& v) {
    return State4{v[0], v[1], v[2], v[3]};
}

VarState VarState::identity_at(const State4& s) {
    return VarState{s, IMatrix::identity(4)};
}

Interval omega(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, false);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    return (sqr(x) + sqr(y)) * Interval(0.5)
         + one_minus_mu / sqrt(t.r1sq)
         + p.mu / sqrt(t.r2sq)
         + p.mu * one_minus_mu * Interval(0.5);
}

Interval omega_x(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, false);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    return x - one_minus_mu * t.dx1 * t.inv_r1_3 - p.mu * t.dx2 * t.inv_r2_3;
}

Interval omega_y(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, false);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    return y - one_minus_mu * y * t.inv_r1_3 - p.mu * y * t.inv_r2_3;
}

Interval omega_xx(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, true);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    const Interval three(3.0);
    return Interval(1.0)
         - one_minus_mu * (t.inv_r1_3 - three * sqr(t.dx1) * t.inv_r1_5)
         - p.mu * (t.inv_r2_3 - three * sqr(t.dx2) * t.inv_r2_5);
}

Interval omega_xy(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, true);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    const Interval three(3.0);
    return three * y * (one_minus_mu * t.dx1 * t.inv_r1_5 + p.mu * t.dx2 * t.inv_r2_5);
}

Interval omega_yy(const SystemParams& p, const Interval& x, const Interval& y) {
    const RadialTerms t = radial(p, x, y, true);
    const Interval one_minus_mu = Interval(1.0) - p.mu;
    const Interval three(3.0);
    const Interval y2 = sqr(y);
    return Interval(1.0)
         - one_minus_mu * (t.inv_r1_3 - three * y2 * t.inv_r1_5)
         - p.mu * (t.inv_r2_3 - three * y2 * t.inv_r2_5);
}

IVector vector_field(const SystemParams& p, const State4& s) {
    IVector f(4);
    f[0] = s.xdot;
    f[1] = s.ydot;
    f[2] = omega_x(p, s.x, s.y) + Interval(2.0) * s.ydot;
    f[3] = omega_y(p, s.x, s.y) - Interval(2.0) * s.xdot;
    return f;
}

IMatrix jacobian(const SystemParams& p, const State4& s) {
    IMatrix j(4, 4);
    j.at(0, 2) = Interval(1.0);
    j.at(1, 3) = Interval(1.0);
    j.at(2, 0) = omega_xx(p, s.x, s.y);
    j.at(2, 1) = omega_xy(p, s.x, s.y);
    j.at(2, 3) = Interval(2.0);
    j.at(3, 0) = j.at(2, 1);  // Omega is C^2: mixed partials coincide
    j.at(3, 1) = omega_yy(p, s.x, s.y);
    j.at(3, 2) = Interval(-2.0);
    return j;
}

std::pair<IVector, IMatrix> variational_field(const SystemParams& p, const VarState& v) {
    return {vector_field(p, v.base), mat_mul(jacobian(p, v.base), v.deriv)};
}

Interval jacobi(const SystemParams& p, const State4& s) {
    return Interval(2.0) * omega(p, s.x, s.y) - sqr(s.xdot) - sqr(s.ydot);
}

State4 lift(const SystemParams& p, const SectionPoint& q) {
    const Interval zero(0.0);
    const Interval disc =
        Interval(2.0) * omega(p, q.x, zero) - sqr(q.xdot) - p.jacobi_c;
    if (disc.hi < 0.0) throw NegativeDiscriminant();
    if (disc.lo < 0.0) throw AmbiguousDiscriminant();
    State4 s;
    s.x = q.x;
    s.y = zero;
    s.xdot = q.xdot;
    const Interval root = sqrt(disc);
    s.ydot = q.branch == Branch::Plus ? root : -root;
    return s;
}

SectionPoint sym_r(const SectionPoint& q) {
    return SectionPoint{q.x, -q.xdot, q.branch};
}

State4 sym_r(const State4& s) {
    return State4{s.x, -s.y, -s.xdot, s.ydot};
}

}  // namespace rigor3bp
