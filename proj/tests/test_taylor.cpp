// Taylor/Lohner layer tests: AD coefficients against closed forms and
// divided differences, rough-enclosure validation, and the C0/C1 steps
// against high-precision nonrigorous integration.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "rigor3bp/taylor.hpp"

using namespace rigor3bp;

namespace {

const long double kMu = 0.0009537L;

using LState = std::array<long double, 4>;

LState field_ld(const LState& s) {
    long double x = s[0], y = s[1];
    long double r1s = (x + kMu) * (x + kMu) + y * y;
    long double r2s = (x - 1 + kMu) * (x - 1 + kMu) + y * y;
    long double ir13 = 1.0L / (r1s * std::sqrt(r1s));
    long double ir23 = 1.0L / (r2s * std::sqrt(r2s));
    long double ox = x - (1 - kMu) * (x + kMu) * ir13 - kMu * (x - 1 + kMu) * ir23;
    long double oy = y - (1 - kMu) * y * ir13 - kMu * y * ir23;
    return {s[2], s[3], ox + 2 * s[3], oy - 2 * s[2]};
}

LState rk4_flow(LState s, long double t, int steps) {
    const long double h = t / steps;
    for (int n = 0; n < steps; ++n) {
        auto add = [&](LState a, const LState& b, long double w) {
            for (int i = 0; i < 4; ++i) a[i] += w * b[i];
            return a;
        };
        LState k1 = field_ld(s);
        LState k2 = field_ld(add(s, k1, h / 2));
        LState k3 = field_ld(add(s, k2, h / 2));
        LState k4 = field_ld(add(s, k3, h));
        for (int i = 0; i < 4; ++i)
            s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return s;
}

// Taylor coefficients c1..c3 from 5-point divided differences of the flow.
std::array<std::array<double, 4>, 4> fd_coeffs(const LState& s0) {
    const long double tau = 2e-4L;
    LState pp = rk4_flow(s0, tau, 200), pm = rk4_flow(s0, -tau, 200);
    LState qp = rk4_flow(s0, 2 * tau, 400), qm = rk4_flow(s0, -2 * tau, 400);
    std::array<std::array<double, 4>, 4> c{};
    for (int i = 0; i < 4; ++i) {
        long double a = pp[i] - pm[i];
        long double b = qp[i] - qm[i];
        long double cc = pp[i] + pm[i] - 2 * s0[i];
        long double dd = qp[i] + qm[i] - 2 * s0[i];
        c[0][i] = double(s0[i]);
        c[1][i] = double((8 * a - b) / (12 * tau));
        c[2][i] = double((16 * cc - dd) / (24 * tau * tau));
        c[3][i] = double((b - 2 * a) / (12 * tau * tau * tau));
    }
    return c;
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

IVector point_vec(std::initializer_list<double> v) {
    IVector out(v.size());
    std::size_t i = 0;
    for (double x : v) out[i++] = Interval(x);
    return out;
}

} // namespace

TEST_CASE("exponential and riccati coefficient hooks") {
    auto ce = taylor_coeffs(make_exponential_system(), point_vec({1.0}), 8);
    for (int k = 0; k <= 8; ++k) {
        CHECK(ce[k][0].contains(1.0 / factorial(k)));
        CHECK(ce[k][0].width() < 1e-14);
    }
    auto cr = taylor_coeffs(make_riccati_system(), point_vec({1.0}), 8);
    for (int k = 0; k <= 8; ++k) CHECK(cr[k][0].contains(1.0));
}

TEST_CASE("harmonic oscillator coefficients are the sine and cosine series") {
    auto c = taylor_coeffs(make_harmonic_system(), point_vec({1.0, 0.0}), 9);
    for (int k = 0; k <= 9; ++k) {
        double xk = 0, vk = 0;
        switch (k % 4) {  // cos / -sin series
            case 0: xk = 1.0 / factorial(k); vk = 0; break;
            case 1: xk = 0; vk = -1.0 / factorial(k); break;
            case 2: xk = -1.0 / factorial(k); vk = 0; break;
            case 3: xk = 0; vk = 1.0 / factorial(k); break;
        }
        CHECK(c[k][0].contains(xk));
        CHECK(c[k][1].contains(vk));
    }
}

TEST_CASE("powq recurrence reproduces the binomial series of (1+t)^q") {
    // u' = 1 starting at 1 makes u = 1 + t; z = u^q must give binomials.
    for (double q : {-1.5, -2.5, 0.5}) {
        DagBuilder b(1);
        int z = b.powq(b.var(0), q);
        b.set_rhs(0, b.cst(Interval(1.0)));
        OdeSystem sys = b.take();
        IVector x0(1);
        x0[0] = Interval(1.0);
        // Reconstruct coefficients of z by evaluating the jet internals via
        // the public API: differentiate the identity z(t) = (1+t)^q at 0
        // through finite evaluation of the series sum.
        auto cu = taylor_coeffs(sys, x0, 6);
        CHECK(cu[1][0].contains(1.0));
        // The z node is not a state variable; check through a second system
        // where z feeds a state: w' = z, w(0)=0 gives w_k = binom(q,k-1)/k.
        DagBuilder b2(2);
        int z2 = b2.powq(b2.var(0), q);
        b2.set_rhs(0, b2.cst(Interval(1.0)));
        b2.set_rhs(1, z2);
        auto cw = taylor_coeffs(b2.take(), point_vec({1.0, 0.0}), 7);
        double binom = 1.0;  // binom(q, j) iteratively
        for (int j = 0; j <= 6; ++j) {
            if (j > 0) binom *= (q - (j - 1)) / j;
            CHECK(cw[j + 1][1].contains(binom / (j + 1)));
        }
        (void)z;
    }
}

TEST_CASE("three-body coefficients match the field and divided differences") {
    const SystemParams p = SystemParams::oterma();
    OdeSystem sys = make_pcr3bp_system(p);
    const std::array<std::array<double, 4>, 3> states = {{
        {0.95, 0.02, 0.1, -0.05}, {0.9208, 0.0, 0.0, 0.1044}, {1.05, -0.03, 0.02, 0.08}}};
    for (const auto& st : states) {
        IVector x = point_vec({st[0], st[1], st[2], st[3]});
        auto c = taylor_coeffs(sys, x, 3);
        State4 s4{x[0], x[1], x[2], x[3]};
        IVector f = vector_field(p, s4);
        for (int i = 0; i < 4; ++i) CHECK(intersect(c[1][i], f[i]).has_value());

        // c2 = (Df f)/2, both sides enclosures of the same number.
        IVector dff = mat_vec(jacobian(p, s4), f);
        for (int i = 0; i < 4; ++i)
            CHECK(intersect(c[2][i], Interval(0.5) * dff[i]).has_value());

        auto fd = fd_coeffs({st[0], st[1], st[2], st[3]});
        for (int k = 1; k <= 3; ++k)
            for (int i = 0; i < 4; ++i) {
                double scale = std::max(1.0, std::fabs(fd[k][i]));
                CHECK(std::fabs(c[k][i].mid() - fd[k][i]) <= 1e-5 * scale);
            }
    }
}

TEST_CASE("variational system carries Df and matches difference quotients") {
    const SystemParams p = SystemParams::oterma();
    OdeSystem var = make_pcr3bp_variational_system(p);
    IVector x(20);
    const std::array<double, 4> st = {0.95, 0.02, 0.1, -0.05};
    for (int i = 0; i < 4; ++i) x[i] = Interval(st[i]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) x[4 + 4 * i + j] = Interval(i == j ? 1.0 : 0.0);
    IVector f = field_values(var, x);
    IMatrix jac = jacobian(p, State4{x[0], x[1], x[2], x[3]});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(intersect(f[4 + 4 * i + j], jac.at(i, j)).has_value());
}

TEST_CASE("rough enclosure validates, brackets, and degrades gracefully") {
    OdeSystem harm = make_harmonic_system();
    IVector x = point_vec({1.0, 0.0});
    RoughEnclosure re = rough_enclosure(harm, x, 0.01);
    CHECK(re.h == 0.01);
    for (double t : {0.0, 0.003, 0.007, 0.01}) {
        CHECK(re.w[0].contains(std::cos(t)));
        CHECK(re.w[1].contains(-std::sin(t)));
    }

    RoughEnclosure rz = rough_enclosure(harm, x, 0.0);
    CHECK(rz.h == 0.0);
    CHECK(rz.w[0] == x[0]);
    CHECK(rz.w[1] == x[1]);

    // Backward validation brackets negative times.
    RoughEnclosure rb = rough_enclosure(harm, x, -0.01);
    CHECK(rb.h == -0.01);
    CHECK(rb.w[0].contains(std::cos(-0.005)));
    CHECK(rb.w[1].contains(-std::sin(-0.005)));

    // Exponential growth with a huge step can never validate.
    CHECK_THROWS_AS(rough_enclosure(make_exponential_system(), point_vec({1.0}), 8.0),
                    ValidationFailed);

    // Near the smaller primary even modest steps must fail cleanly.
    const SystemParams p = SystemParams::oterma();
    OdeSystem tb = make_pcr3bp_system(p);
    IVector near_jupiter = point_vec({1.0 - 0.0009537 + 2e-5, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(rough_enclosure(tb, near_jupiter, 0.5), ValidationFailed);
}

TEST_CASE("c0 step reproduces the diagonal linear flow") {
    FlowStepper fs(make_diag_linear_system(), make_diag_linear_variational_system(),
                   StepParams{12, 0.1, 1e-2, 20});
    Doubleton s = Doubleton::from_box(point_vec({1.0, 1.0}));
    StepData data;
    Doubleton out = fs.step_c0(s, &data);
    CHECK(data.h == 0.1);
    IVector h = out.hull();
    CHECK(std::fabs(h[0].mid() - std::exp(0.1)) < 1e-12);
    CHECK(std::fabs(h[1].mid() - std::exp(-0.1)) < 1e-12);
    CHECK(h[0].contains(std::exp(0.1)));
    CHECK(h[1].contains(std::exp(-0.1)));
}

TEST_CASE("c1 step derivative encloses the exact linear and rotation flows") {
    {
        FlowStepper fs(make_diag_linear_system(), make_diag_linear_variational_system(),
                       StepParams{12, 0.1, 1e-2, 20});
        C1Doubleton c = C1Doubleton::identity(Doubleton::from_box(point_vec({1.0, 1.0})));
        IMatrix d0 = c.deriv_hull();
        CHECK(d0.at(0, 0).contains(1.0));
        CHECK(d0.at(0, 1).contains(0.0));
        C1Doubleton out = fs.step_c1(c);
        IMatrix d = out.deriv_hull();
        CHECK(d.at(0, 0).contains(std::exp(0.1)));
        CHECK(d.at(1, 1).contains(std::exp(-0.1)));
        CHECK(d.at(0, 1).contains(0.0));
        CHECK(d.at(0, 0).width() < 1e-12);
    }
    {
        FlowStepper fs(make_harmonic_system(), make_harmonic_variational_system(),
                       StepParams{12, 0.2, 1e-2, 20});
        C1Doubleton c = C1Doubleton::identity(Doubleton::from_box(point_vec({0.3, -0.2})));
        C1Doubleton out = fs.step_c1(c);
        IMatrix d = out.deriv_hull();
        CHECK(d.at(0, 0).contains(std::cos(0.2)));
        CHECK(d.at(0, 1).contains(std::sin(0.2)));
        CHECK(d.at(1, 0).contains(-std::sin(0.2)));
        CHECK(d.at(1, 1).contains(std::cos(0.2)));
    }
}

TEST_CASE("c0 step contains sampled three-body trajectories") {
    const SystemParams p = SystemParams::oterma();
    FlowStepper fs = FlowStepper::pcr3bp(p, StepParams{8, 0.02, 1e-2, 20});
    IVector box(4);
    box[0] = Interval(0.95 - 1e-8, 0.95 + 1e-8);
    box[1] = Interval(0.02 - 1e-8, 0.02 + 1e-8);
    box[2] = Interval(0.1 - 1e-8, 0.1 + 1e-8);
    box[3] = Interval(-0.05 - 1e-8, -0.05 + 1e-8);
    Doubleton s = Doubleton::from_box(box);
    StepData data;
    Doubleton out = fs.step_c0(s, &data);
    IVector oh = out.hull();

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        LState start;
        for (int i = 0; i < 4; ++i)
            start[i] = box[i].mid() + u(rng) * (box[i].rad() * 0.999);
        LState end = rk4_flow(start, (long double)data.h, 400);
        for (int i = 0; i < 4; ++i) CHECK(oh[i].contains(double(end[i])));
        // Dense output must cover intermediate times too.
        LState half = rk4_flow(start, (long double)data.h / 2, 200);
        IVector dense = eval_poly(data.poly, data.rem, Interval(data.h / 2));
        for (int i = 0; i < 4; ++i) CHECK(dense[i].contains(double(half[i])));
        for (int i = 0; i < 4; ++i) CHECK(data.rough[i].contains(double(half[i])));
    }
}

TEST_CASE("c1 step contains finite-difference flow derivatives") {
    const SystemParams p = SystemParams::oterma();
    FlowStepper fs = FlowStepper::pcr3bp(p, StepParams{8, 0.02, 1e-2, 20});
    const std::array<double, 4> base = {0.95, 0.02, 0.1, -0.05};
    C1Doubleton c = C1Doubleton::identity(
        Doubleton::from_box(point_vec({base[0], base[1], base[2], base[3]})));
    StepData data;
    C1Doubleton out = fs.step_c1(c, &data);
    IMatrix d = out.deriv_hull();
    const long double eps = 1e-7L;
    for (int j = 0; j < 4; ++j) {
        LState sp = {base[0], base[1], base[2], base[3]};
        LState sm = sp;
        sp[j] += eps;
        sm[j] -= eps;
        LState fp = rk4_flow(sp, (long double)data.h, 400);
        LState fm = rk4_flow(sm, (long double)data.h, 400);
        for (int i = 0; i < 4; ++i) {
            double fd = double((fp[i] - fm[i]) / (2 * eps));
            Interval padded = d.at(i, j) + Interval(-1e-9, 1e-9);
            CHECK(padded.contains(fd));
        }
    }
}

TEST_CASE("backward then forward step returns over the start") {
    const SystemParams p = SystemParams::oterma();
    FlowStepper fs = FlowStepper::pcr3bp(p, StepParams{8, 0.02, 1e-2, 20});
    IVector x = point_vec({0.95, 0.02, 0.1, -0.05});
    Doubleton s = Doubleton::from_box(x);
    StepData d1, d2;
    Doubleton back = fs.step_c0(s, -0.01, &d1);
    REQUIRE(d1.h == -0.01);
    Doubleton again = fs.step_c0(back, 0.01, &d2);
    REQUIRE(d2.h == 0.01);
    IVector h = again.hull();
    for (int i = 0; i < 4; ++i) CHECK(h[i].contains(x[i].mid()));
}

TEST_CASE("jacobi constant is preserved across fifty steps") {
    const SystemParams p = SystemParams::oterma();
    FlowStepper fs = FlowStepper::pcr3bp(p, StepParams{8, 0.01, 1e-2, 20});
    IVector box(4);
    box[0] = Interval(0.95 - 1e-9, 0.95 + 1e-9);
    box[1] = Interval(0.0);
    box[2] = Interval(0.0);
    box[3] = Interval(0.1 - 1e-9, 0.1 + 1e-9);
    Doubleton s = Doubleton::from_box(box);
    IVector h0 = s.hull();
    Interval c_in = jacobi(p, State4{h0[0], h0[1], h0[2], h0[3]});
    for (int n = 0; n < 50; ++n) s = fs.step_c0(s);
    IVector h1 = s.hull();
    Interval c_out = jacobi(p, State4{h1[0], h1[1], h1[2], h1[3]});
    CHECK(intersect(c_in, c_out).has_value());
}

TEST_CASE("nested inputs give nested outputs") {
    const SystemParams p = SystemParams::oterma();
    FlowStepper fs = FlowStepper::pcr3bp(p, StepParams{8, 0.02, 1e-2, 20});
    IVector big(4), small(4);
    const std::array<double, 4> c = {0.95, 0.02, 0.1, -0.05};
    for (int i = 0; i < 4; ++i) {
        big[i] = Interval(c[i] - 1e-7, c[i] + 1e-7);
        small[i] = Interval(c[i] - 1e-8, c[i] + 1e-8);
    }
    IVector ob = fs.step_c0(Doubleton::from_box(big)).hull();
    IVector os = fs.step_c0(Doubleton::from_box(small)).hull();
    for (int i = 0; i < 4; ++i) {
        Interval padded = ob[i] + Interval(-1e-12, 1e-12);
        CHECK(padded.contains(os[i]));
    }
}

TEST_CASE("remainder scales with the step at the method order") {
    // On the harmonic hook with a point start, output width is dominated by
    // the Lagrange term, so halving the step must shrink it by about 2^order.
    FlowStepper fs(make_harmonic_system(), make_harmonic_variational_system(),
                   StepParams{6, 0.5, 1e-2, 20});
    Doubleton s = Doubleton::from_box(point_vec({1.0, 0.0}));
    Doubleton o1 = fs.step_c0(s, 0.5);
    Doubleton o2 = fs.step_c0(s, 0.25);
    double w1 = std::max(o1.hull()[0].width(), o1.hull()[1].width());
    double w2 = std::max(o2.hull()[0].width(), o2.hull()[1].width());
    CHECK(w1 / w2 >= std::pow(2.0, 6));
}

TEST_CASE("orthonormalize produces orthonormal columns") {
    IMatrix m(3, 3);
    const double vals[3][3] = {{2, 1, 0}, {0, 1, 1}, {1, 0, 3}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = Interval(vals[i][j]);
    IMatrix q = orthonormalize_columns(m, {1.0, 1.0, 1.0});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double dot = 0;
            for (int i = 0; i < 3; ++i) dot += q.at(i, a).mid() * q.at(i, b).mid();
            CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 5e-15);
        }
    // Rank-deficient input still yields a full orthonormal frame.
    IMatrix r(2, 2);
    r.at(0, 0) = Interval(1.0);
    r.at(0, 1) = Interval(2.0);
    r.at(1, 0) = Interval(0.5);
    r.at(1, 1) = Interval(1.0);
    IMatrix q2 = orthonormalize_columns(r, {1.0, 1.0});
    double det = q2.at(0, 0).mid() * q2.at(1, 1).mid()
               - q2.at(0, 1).mid() * q2.at(1, 0).mid();
    CHECK(std::fabs(std::fabs(det) - 1.0) < 1e-12);
}
