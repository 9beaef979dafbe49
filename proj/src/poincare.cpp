// Poincare map engine: crossing bookkeeping over Lohner steps, interval
// Newton for the return time on the final step's dense output, and the
// section-projected planar derivative.

#include "rigor3bp/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace rigor3bp {

namespace {

Interval eval_component(const std::vector<IVector>& c, const IVector& rem, int j,
                        const Interval& t) {
    Interval acc = rem[j];
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * t + c[k][j];
    return acc;
}

IMatrix eval_deriv(const StepData& d, const Interval& t) {
    IMatrix acc = d.vrem;
    for (int k = static_cast<int>(d.vpoly.size()) - 1; k >= 0; --k)
        acc = t * acc + d.vpoly[k];
    return acc;
}

int certain_sign(const Interval& v) {
    if (v.lo > 0.0) return 1;
    if (v.hi < 0.0) return -1;
    return 0;
}

State4 state_from(const IVector& v) { return State4{v[0], v[1], v[2], v[3]}; }

}  // namespace

PoincareEngine::PoincareEngine(const SystemParams& p, const PoincareParams& pp)
    : p_(p), pp_(pp), stepper_(FlowStepper::pcr3bp(p, pp.step)) {}

PoincareEngine::PoincareEngine(const SystemParams& p, const StepParams& sp)
    : PoincareEngine(p, PoincareParams{sp, 1e-6, 400.0, 2000000}) {}

PoincareEnclosure PoincareEngine::map_box(const SectionPoint& src, int crossings,
                                          int dir, bool with_deriv) const {
    if (crossings < 1 || crossings > 2)
        throw DomainFailure("crossing count must be 1 or 2");
    if (dir != 1 && dir != -1) throw DomainFailure("direction must be +1 or -1");

    const State4 s0 = lift(p_, src);
    const Interval jac_src = jacobi(p_, s0);

    Doubleton cur = Doubleton::from_box(s0.to_vec());
    std::optional<C1Doubleton> c1;
    if (with_deriv) c1 = C1Doubleton::identity(cur);

    const double h_nominal = std::fabs(pp_.step.step) * dir;
    const int expected_side = branch_sign(src.branch) * dir;

    Interval t_acc(0.0);
    bool launched = false;
    int seen = 0;
    int ysign = 0;  // certified sign of y at the step start; 0 while on the section
    int steps = 0;
    double h_start = h_nominal;  // ramps down near close approaches, back up after

    while (true) {
        if (steps >= pp_.max_steps || t_acc.abs_sup() > pp_.max_time)
            throw DomainFailure("no section return within the integration budget");

        IMatrix d_in = c1 ? c1->deriv_hull() : IMatrix::identity(4);

        // One accepted step.  Halve on failed validation (close primary
        // approaches), shrink while the window wraps a fold of y (0 in both
        // y(W) and ydot(W)), and lengthen the step toward 1.5x, 2x, 3x the
        // straddling size while the endpoint sits on the section.
        double h_try = h_start;
        double extend_base = 0.0;
        int extend_idx = -1;
        int shrink_left = 6;

        StepData data;
        Doubleton next;
        std::optional<C1Doubleton> next_c1;
        IVector end_hull;
        int end_sign = 0;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 40 || std::fabs(h_try) < std::fabs(h_nominal) * 0x1p-20)
                throw DomainFailure("could not certify the section sign at a step end");
            try {
                if (c1) {
                    next_c1 = stepper_.step_c1(*c1, h_try, &data);
                    next = next_c1->set;
                } else {
                    next = stepper_.step_c0(cur, h_try, &data);
                }
            } catch (const ValidationFailed&) {
                h_try /= 2;
                extend_idx = -1;
                continue;
            }
            if (data.rough[1].contains(0.0) && data.rough[3].contains(0.0)) {
                if (--shrink_left < 0)
                    throw NonTransversal("ydot enclosure straddles zero across the section");
                h_try /= 2;
                extend_idx = -1;
                continue;
            }
            end_hull = next.hull();
            end_sign = certain_sign(end_hull[1]);
            if (end_sign == 0) {
                if (extend_idx < 0) extend_base = h_try;
                static const double kExtend[3] = {1.5, 2.0, 3.0};
                if (++extend_idx >= 3)
                    throw DomainFailure("step end keeps straddling the section");
                h_try = extend_base * kExtend[extend_idx];
                continue;
            }
            break;
        }

        if (ysign != 0 && end_sign != ysign) {
            // Certified transversal crossing inside this step: the window
            // contains the section and ydot(W) was shown to exclude zero.
            if (!launched)
                throw DomainFailure("section return inside the launch guard band");
            if (++seen == crossings)
                return resolve(data, d_in, s0, jac_src, src, t_acc, dir, ysign,
                               crossings, steps + 1, with_deriv);
        }
        ysign = end_sign;
        if (!launched && end_sign == expected_side && end_hull[1].abs_inf() > pp_.guard)
            launched = true;

        cur = next;
        if (c1) c1 = next_c1;
        t_acc = t_acc + Interval(data.h);
        ++steps;
        const double grown = 2.0 * std::fabs(data.h);
        h_start = (grown < std::fabs(h_nominal) ? grown : std::fabs(h_nominal)) * dir;
    }
}

PoincareEnclosure PoincareEngine::resolve(const StepData& d, const IMatrix& d_in,
                                          const State4& s0, const Interval& jac_src,
                                          const SectionPoint& src, const Interval& t_acc,
                                          int dir, int start_sign, int crossings,
                                          int steps, bool with_deriv) const {
    Interval T(std::min(0.0, d.h), std::max(0.0, d.h));

    // Interval Newton on y(t) = 0 over the bracketing window, with one
    // bisection refinement whenever the contraction stalls.
    for (int it = 0; it < 40; ++it) {
        const double w0 = T.width();
        const Interval t_c(T.mid());
        const Interval y_c = eval_component(d.poly, d.rem, 1, t_c);
        const Interval yd_T = eval_component(d.poly, d.rem, 3, T);
        if (yd_T.contains(0.0))
            throw NonTransversal("section crossing is not transversal");
        const auto n = intersect(t_c - y_c / yd_T, T);
        if (!n) throw DomainFailure("crossing localization lost the root");
        T = *n;
        if (T.width() <= 0.9 * w0) continue;
        const int sm = certain_sign(eval_component(d.poly, d.rem, 1, Interval(T.mid())));
        if (sm == 0) break;
        // y is monotone on the window, so a certain midpoint sign picks the
        // half containing the root; start_sign is the sign at the t = 0 end.
        const bool far_half = sm == start_sign;
        if (far_half == (dir > 0))
            T = Interval(T.mid(), T.hi);
        else
            T = Interval(T.lo, T.mid());
    }

    const Interval t_c(T.mid());
    const IVector g_c = eval_poly(d.poly, d.rem, t_c);
    const IVector g_T = eval_poly(d.poly, d.rem, T);
    const IVector f_T = vector_field(p_, state_from(g_T));
    IVector land(4);
    const Interval dt = T - t_c;
    for (int j = 0; j < 4; ++j) land[j] = g_c[j] + dt * f_T[j];
    land[1] = Interval(0.0);

    const int land_sign = certain_sign(land[3]);
    if (land_sign == 0) throw NonTransversal("landing ydot straddles zero");
    if (land_sign != -start_sign * dir)
        throw DomainFailure("landing velocity contradicts the crossing direction");

    const Interval jac_img = jacobi(p_, state_from(land));
    if (!intersect(jac_img, jac_src))
        throw DomainFailure("Jacobi constant drifted off the energy level");

    const Interval rt = t_acc + T;
    if (dir > 0 ? !(rt.lo > 0.0) : !(rt.hi < 0.0))
        throw DomainFailure("return time enclosure touches zero");

    PoincareEnclosure out;
    out.image = SectionPoint{land[0], land[2],
                             land_sign > 0 ? Branch::Plus : Branch::Minus};
    out.ydot = land[3];
    out.return_time = rt;
    out.jacobi_image = jac_img;
    out.crossings = crossings;
    out.steps = steps;

    if (with_deriv) {
        const IMatrix dphi = mat_mul(eval_deriv(d, T), d_in);
        // Section projection (Id - f e2^T / f_y) Dphi with f at the landing;
        // the landing's ydot component doubles as f_y.
        const IVector f_land = vector_field(p_, state_from(land));
        IMatrix proj = IMatrix::identity(4);
        for (int i = 0; i < 4; ++i)
            proj.at(i, 1) = proj.at(i, 1) - f_land[i] / land[3];
        const IMatrix dp4 = mat_mul(proj, dphi);
        // Lift Jacobian of the source plane into the energy surface.
        IMatrix lj(4, 2);
        lj.at(0, 0) = Interval(1.0);
        lj.at(2, 1) = Interval(1.0);
        lj.at(3, 0) = omega_x(p_, src.x, Interval(0.0)) / s0.ydot;
        lj.at(3, 1) = -(src.xdot / s0.ydot);
        const IMatrix dp4l = mat_mul(dp4, lj);
        IMatrix dp(2, 2);
        dp.at(0, 0) = dp4l.at(0, 0);
        dp.at(0, 1) = dp4l.at(0, 1);
        dp.at(1, 0) = dp4l.at(2, 0);
        dp.at(1, 1) = dp4l.at(2, 1);
        out.deriv = dp;
    }
    return out;
}

}  // namespace rigor3bp
