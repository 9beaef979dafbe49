#include "rigor3bp/taylor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace rigor3bp {

DagBuilder::DagBuilder(int dim) {
    sys_.dim = dim;
    sys_.rhs.assign(dim, -1);
    for (int i = 0; i < dim; ++i) {
        Node n;
        n.kind = NodeKind::Var;
        sys_.nodes.push_back(n);
    }
}

int DagBuilder::cst(const Interval& v) {
    Node n;
    n.kind = NodeKind::Const;
    n.cval = v;
    sys_.nodes.push_back(n);
    return int(sys_.nodes.size()) - 1;
}

namespace {

int push2(OdeSystem& s, NodeKind k, int a, int b) {
    Node n;
    n.kind = k;
    n.a = a;
    n.b = b;
    s.nodes.push_back(n);
    return int(s.nodes.size()) - 1;
}

} // namespace

int DagBuilder::add(int a, int b) { return push2(sys_, NodeKind::Add, a, b); }
int DagBuilder::sub(int a, int b) { return push2(sys_, NodeKind::Sub, a, b); }
int DagBuilder::mul(int a, int b) { return push2(sys_, NodeKind::Mul, a, b); }
int DagBuilder::div(int a, int b) { return push2(sys_, NodeKind::Div, a, b); }
int DagBuilder::neg(int a) { return push2(sys_, NodeKind::Neg, a, -1); }

int DagBuilder::scale(const Interval& c, int a) {
    int i = push2(sys_, NodeKind::Scale, a, -1);
    sys_.nodes[i].cval = c;
    return i;
}

int DagBuilder::powq(int a, double q) {
    assert(std::nearbyint(2 * q) == 2 * q);
    int i = push2(sys_, NodeKind::PowQ, a, -1);
    sys_.nodes[i].q = q;
    return i;
}

OdeSystem make_exponential_system() {
    DagBuilder b(1);
    b.set_rhs(0, b.var(0));
    return b.take();
}

OdeSystem make_exponential_variational_system() {
    DagBuilder b(2);
    b.set_rhs(0, b.var(0));
    b.set_rhs(1, b.var(1));  // D' = 1 * D
    return b.take();
}

OdeSystem make_riccati_system() {
    DagBuilder b(1);
    b.set_rhs(0, b.mul(b.var(0), b.var(0)));
    return b.take();
}

OdeSystem make_riccati_variational_system() {
    DagBuilder b(2);
    b.set_rhs(0, b.mul(b.var(0), b.var(0)));
    b.set_rhs(1, b.scale(Interval(2.0), b.mul(b.var(0), b.var(1))));
    return b.take();
}

OdeSystem make_harmonic_system() {
    DagBuilder b(2);
    b.set_rhs(0, b.var(1));
    b.set_rhs(1, b.neg(b.var(0)));
    return b.take();
}

OdeSystem make_harmonic_variational_system() {
    DagBuilder b(6);
    b.set_rhs(0, b.var(1));
    b.set_rhs(1, b.neg(b.var(0)));
    for (int j = 0; j < 2; ++j) {
        b.set_rhs(2 + j, b.var(4 + j));         // D0j' = D1j
        b.set_rhs(4 + j, b.neg(b.var(2 + j)));  // D1j' = -D0j
    }
    return b.take();
}

OdeSystem make_diag_linear_system() {
    DagBuilder b(2);
    b.set_rhs(0, b.var(0));
    b.set_rhs(1, b.neg(b.var(1)));
    return b.take();
}

OdeSystem make_diag_linear_variational_system() {
    DagBuilder b(6);
    b.set_rhs(0, b.var(0));
    b.set_rhs(1, b.neg(b.var(1)));
    for (int j = 0; j < 2; ++j) {
        b.set_rhs(2 + j, b.var(2 + j));
        b.set_rhs(4 + j, b.neg(b.var(4 + j)));
    }
    return b.take();
}

namespace {

// Shared scaffolding of the three-body DAG; second-order nodes only when the
// variational block is present.
struct Pcr3bpNodes {
    int ox, oy;                 // Omega_x, Omega_y
    int oxx, oxy, oyy;          // second partials (variational build only)
};

Pcr3bpNodes build_pcr3bp_field(DagBuilder& b, const SystemParams& p, bool second_order) {
    const Interval one(1.0);
    const Interval mu = p.mu;
    const Interval omu = one - mu;

    const int x = b.var(0), y = b.var(1), vx = b.var(2), vy = b.var(3);
    const int dx1 = b.add(x, b.cst(mu));
    const int dx2 = b.sub(x, b.cst(omu));  // x - 1 + mu
    const int y2 = b.mul(y, y);
    const int dx1sq = b.mul(dx1, dx1);
    const int dx2sq = b.mul(dx2, dx2);
    const int r1s = b.add(dx1sq, y2);
    const int r2s = b.add(dx2sq, y2);
    const int ir13 = b.powq(r1s, -1.5);
    const int ir23 = b.powq(r2s, -1.5);

    Pcr3bpNodes out{};
    out.ox = b.sub(b.sub(x, b.scale(omu, b.mul(dx1, ir13))),
                   b.scale(mu, b.mul(dx2, ir23)));
    out.oy = b.mul(y, b.sub(b.sub(b.cst(one), b.scale(omu, ir13)), b.scale(mu, ir23)));

    b.set_rhs(0, vx);
    b.set_rhs(1, vy);
    b.set_rhs(2, b.add(out.ox, b.scale(Interval(2.0), vy)));
    b.set_rhs(3, b.sub(out.oy, b.scale(Interval(2.0), vx)));

    if (second_order) {
        const Interval three(3.0);
        const int ir15 = b.powq(r1s, -2.5);
        const int ir25 = b.powq(r2s, -2.5);
        out.oxx = b.sub(b.sub(b.cst(one),
                              b.scale(omu, b.sub(ir13, b.scale(three, b.mul(dx1sq, ir15))))),
                        b.scale(mu, b.sub(ir23, b.scale(three, b.mul(dx2sq, ir25)))));
        out.oxy = b.mul(y, b.add(b.scale(three * omu, b.mul(dx1, ir15)),
                                 b.scale(three * mu, b.mul(dx2, ir25))));
        out.oyy = b.sub(b.sub(b.cst(one),
                              b.scale(omu, b.sub(ir13, b.scale(three, b.mul(y2, ir15))))),
                        b.scale(mu, b.sub(ir23, b.scale(three, b.mul(y2, ir25)))));
    }
    return out;
}

} // namespace

OdeSystem make_pcr3bp_system(const SystemParams& p) {
    DagBuilder b(4);
    build_pcr3bp_field(b, p, false);
    return b.take();
}

OdeSystem make_pcr3bp_variational_system(const SystemParams& p) {
    DagBuilder b(20);
    Pcr3bpNodes n = build_pcr3bp_field(b, p, true);
    auto dv = [&](int i, int j) { return b.var(4 + 4 * i + j); };
    const Interval two(2.0);
    for (int j = 0; j < 4; ++j) {
        b.set_rhs(4 + 0 * 4 + j, dv(2, j));
        b.set_rhs(4 + 1 * 4 + j, dv(3, j));
        b.set_rhs(4 + 2 * 4 + j,
                  b.add(b.add(b.mul(n.oxx, dv(0, j)), b.mul(n.oxy, dv(1, j))),
                        b.scale(two, dv(3, j))));
        b.set_rhs(4 + 3 * 4 + j,
                  b.sub(b.add(b.mul(n.oxy, dv(0, j)), b.mul(n.oyy, dv(1, j))),
                        b.scale(two, dv(2, j))));
    }
    return b.take();
}

namespace {

using Coeffs = std::vector<std::vector<Interval>>;  // [node][order]

// PowQ base value u0^q for half-integer q, requiring u0 strictly positive.
Interval powq_base(const Interval& u0, double q) {
    if (u0.lo <= 0.0) throw SingularityError();
    const long p2 = std::lround(2 * q);
    if (p2 % 2 == 0) return pow_int(u0, int(p2 / 2));
    return pow_int(u0, int((p2 - 1) / 2)) * sqrt(u0);
}

void eval_node_order(const OdeSystem& sys, Coeffs& c, int ni, int k) {
    const Node& nd = sys.nodes[ni];
    switch (nd.kind) {
        case NodeKind::Var:
            break;  // set by the driver
        case NodeKind::Const:
            c[ni][k] = k == 0 ? nd.cval : Interval();
            break;
        case NodeKind::Add:
            c[ni][k] = c[nd.a][k] + c[nd.b][k];
            break;
        case NodeKind::Sub:
            c[ni][k] = c[nd.a][k] - c[nd.b][k];
            break;
        case NodeKind::Neg:
            c[ni][k] = -c[nd.a][k];
            break;
        case NodeKind::Scale:
            c[ni][k] = nd.cval * c[nd.a][k];
            break;
        case NodeKind::Mul: {
            Interval acc;
            for (int j = 0; j <= k; ++j) acc += c[nd.a][j] * c[nd.b][k - j];
            c[ni][k] = acc;
            break;
        }
        case NodeKind::Div: {
            const Interval& b0 = c[nd.b][0];
            if (!excludes_zero(b0)) throw SingularityError();
            Interval acc = c[nd.a][k];
            for (int j = 0; j < k; ++j) acc -= c[ni][j] * c[nd.b][k - j];
            c[ni][k] = acc / b0;
            break;
        }
        case NodeKind::PowQ: {
            const Interval& u0 = c[nd.a][0];
            if (k == 0) {
                c[ni][0] = powq_base(u0, nd.q);
            } else {
                // z_k = (1/(k u0)) sum_{j<k} (q(k-j) - j) u_{k-j} z_j
                if (u0.lo <= 0.0) throw SingularityError();
                Interval acc;
                for (int j = 0; j < k; ++j) {
                    const Interval w(nd.q * (k - j) - j);  // exact for half-integer q
                    acc += w * c[nd.a][k - j] * c[ni][j];
                }
                c[ni][k] = acc / (Interval(double(k)) * u0);
                break;
            }
            break;
        }
    }
}

void run_jet(const OdeSystem& sys, const IVector& x, int order, Coeffs& c) {
    const int n_nodes = int(sys.nodes.size());
    c.assign(n_nodes, std::vector<Interval>(order + 1));
    for (int i = 0; i < sys.dim; ++i) c[i][0] = x[i];
    for (int ni = sys.dim; ni < n_nodes; ++ni) eval_node_order(sys, c, ni, 0);
    for (int k = 0; k < order; ++k) {
        for (int i = 0; i < sys.dim; ++i)
            c[i][k + 1] = c[sys.rhs[i]][k] / Interval(double(k + 1));
        if (k + 1 < order)
            for (int ni = sys.dim; ni < n_nodes; ++ni) eval_node_order(sys, c, ni, k + 1);
    }
}

} // namespace

std::vector<IVector> taylor_coeffs(const OdeSystem& sys, const IVector& x, int order) {
    assert(int(x.size()) == sys.dim);
    assert(order >= 1);
    Coeffs c;
    try {
        run_jet(sys, x, order, c);
    } catch (const DivByZeroInterval&) {
        throw SingularityError();
    } catch (const DomainError&) {
        throw SingularityError();
    }
    std::vector<IVector> out(order + 1, IVector(sys.dim));
    for (int k = 0; k <= order; ++k)
        for (int i = 0; i < sys.dim; ++i) out[k][i] = c[i][k];
    return out;
}

IVector field_values(const OdeSystem& sys, const IVector& x) {
    assert(int(x.size()) == sys.dim);
    Coeffs c;
    const int n_nodes = int(sys.nodes.size());
    c.assign(n_nodes, std::vector<Interval>(1));
    for (int i = 0; i < sys.dim; ++i) c[i][0] = x[i];
    try {
        for (int ni = sys.dim; ni < n_nodes; ++ni) eval_node_order(sys, c, ni, 0);
    } catch (const DivByZeroInterval&) {
        throw SingularityError();
    } catch (const DomainError&) {
        throw SingularityError();
    }
    IVector f(sys.dim);
    for (int i = 0; i < sys.dim; ++i) f[i] = c[sys.rhs[i]][0];
    return f;
}

IVector eval_poly(const std::vector<IVector>& c, const Interval& t) {
    IVector acc = c.back();
    for (int k = int(c.size()) - 2; k >= 0; --k) acc = c[k] + t * acc;
    return acc;
}

IVector eval_poly(const std::vector<IVector>& c, const IVector& rem, const Interval& t) {
    IVector acc = rem;
    for (int k = int(c.size()) - 1; k >= 0; --k) acc = c[k] + t * acc;
    return acc;
}

RoughEnclosure rough_enclosure(const OdeSystem& sys, const IVector& x, double step,
                               double inflate, int max_retries) {
    auto puff = [&](const IVector& v) {
        IVector out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double pad = inflate * v[i].width() + 1e-17;
            out[i] = v[i] + Interval(-pad, pad);
        }
        return out;
    };
    double h = step;
    for (int bis = 0; bis < 3; ++bis, h /= 2) {
        const Interval tspan(std::min(0.0, h), std::max(0.0, h));
        IVector cand = puff(hull(x, x + tspan * field_values(sys, x)));
        for (int retry = 0; retry < max_retries; ++retry) {
            IVector img;
            try {
                img = x + tspan * field_values(sys, cand);
            } catch (const SingularityError&) {
                break;  // candidate swallowed a primary; try a shorter step
            }
            if (contains_interior(cand, img)) return {img, h};
            cand = puff(hull(cand, img));
        }
    }
    throw ValidationFailed();
}

IVector Doubleton::hull() const {
    return x0 + mat_vec(C, r0) + mat_vec(B, r);
}

Doubleton Doubleton::from_box(const IVector& box) {
    const std::size_t n = box.size();
    Doubleton d;
    d.x0 = mid(box);
    d.C = IMatrix::identity(n);
    d.r0 = box - d.x0;
    d.B = IMatrix::identity(n);
    d.r = IVector(n);
    return d;
}

IMatrix C1Doubleton::deriv_hull() const {
    return D0 + mat_mul(B0, R);
}

C1Doubleton C1Doubleton::identity(const Doubleton& s) {
    const std::size_t n = s.x0.size();
    C1Doubleton c;
    c.set = s;
    c.D0 = IMatrix::identity(n);
    c.B0 = IMatrix::identity(n);
    c.R = IMatrix(n, n);
    return c;
}

IMatrix orthonormalize_columns(const IMatrix& m, const std::vector<double>& weights) {
    const std::size_t n = m.nr;
    assert(m.nc == n && weights.size() == n);
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    std::vector<double> score(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cols[j][i] = m.at(i, j).mid();
            s += cols[j][i] * cols[j][i];
        }
        score[j] = std::sqrt(s) * weights[j];
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    std::vector<std::vector<double>> q;
    auto project_out = [&](std::vector<double> v) {
        for (const auto& u : q) {
            double d = 0;
            for (std::size_t i = 0; i < n; ++i) d += v[i] * u[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
        }
        return v;
    };
    auto norm = [&](const std::vector<double>& v) {
        double s = 0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> v = project_out(cols[order[j]]);
        double nv = norm(v);
        if (nv < 1e-150) {
            // Degenerate column: substitute the basis vector with the largest
            // residual outside the span built so far.
            double best = -1;
            for (std::size_t e = 0; e < n; ++e) {
                std::vector<double> cand(n, 0.0);
                cand[e] = 1.0;
                cand = project_out(cand);
                double nc = norm(cand);
                if (nc > best) {
                    best = nc;
                    v = cand;
                    nv = nc;
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) v[i] /= nv;
        q.push_back(std::move(v));
    }
    IMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) out.at(i, j) = Interval(q[j][i]);
    return out;
}

FlowStepper::FlowStepper(OdeSystem base_sys, OdeSystem var_sys, StepParams sp)
    : base_(std::move(base_sys)), var_(std::move(var_sys)), sp_(sp) {
    assert(var_.dim == base_.dim + base_.dim * base_.dim);
}

FlowStepper FlowStepper::pcr3bp(const SystemParams& p, const StepParams& sp) {
    return FlowStepper(make_pcr3bp_system(p), make_pcr3bp_variational_system(p), sp);
}

namespace {

IMatrix mat_horner(const std::vector<IMatrix>& vk, const IMatrix& vrem, const Interval& t) {
    IMatrix acc = vrem;
    for (int k = int(vk.size()) - 1; k >= 0; --k) acc = vk[k] + t * acc;
    return acc;
}

IVector concat_state_matrix(const IVector& x, const IMatrix& d) {
    IVector out(x.size() + d.e.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    for (std::size_t i = 0; i < d.e.size(); ++i) out[x.size() + i] = d.e[i];
    return out;
}

} // namespace

// Core of one accepted step: rough enclosures, the three jets, and the
// transport matrix.  `u` is the enclosure of phi(h, x0).
struct StepCore {
    StepData data;
    IVector u;
};

namespace {

StepCore advance(const OdeSystem& base, const OdeSystem& var, const StepParams& sp,
                 const IVector& x0, const IVector& hull_x, double h_req) {
    const int nb = base.dim;
    const int n = sp.order;

    RoughEnclosure re = rough_enclosure(base, hull_x, h_req, sp.rough_inflate, sp.max_retries);
    double h = re.h;

    // Enclosure of the accumulated flow derivative over the step from the
    // logarithmic-norm bound |V(t) - Id| <= e^{Lt} - 1 <= Lt/(1 - Lt).
    IMatrix df(nb, nb);
    {
        const IVector vx = concat_state_matrix(re.w, IMatrix::identity(nb));
        const IVector dfv = field_values(var, vx);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) df.at(i, j) = dfv[nb + nb * i + j];
    }
    double big_l = 0.0;
    for (int i = 0; i < nb; ++i) {
        Interval row;
        for (int j = 0; j < nb; ++j) row += Interval(df.at(i, j).abs_sup());
        big_l = std::max(big_l, row.hi);
    }
    int halvings = 0;
    while ((Interval(big_l) * Interval(std::fabs(h))).hi >= 0.9) {
        if (++halvings > 6) throw ValidationFailed();
        h /= 2;  // W stays valid: [0,h/2]*f(W) is contained in [0,h]*f(W)
    }
    const Interval lh = Interval(big_l) * Interval(std::fabs(h));
    const double rho = (lh / (Interval(1.0) - lh)).hi;
    IMatrix wv = IMatrix::identity(nb);
    for (auto& e : wv.e) e += Interval(-rho, rho);

    // Jet over the set hull: dense-output coefficients and V_k.
    StepCore out;
    StepData& d = out.data;
    d.h = h;
    d.rough = re.w;
    {
        const auto jc = taylor_coeffs(var, concat_state_matrix(hull_x, IMatrix::identity(nb)), n);
        d.poly.assign(n + 1, IVector(nb));
        d.vpoly.assign(n + 1, IMatrix(nb, nb));
        for (int k = 0; k <= n; ++k) {
            for (int i = 0; i < nb; ++i) d.poly[k][i] = jc[k][i];
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j) d.vpoly[k].at(i, j) = jc[k][nb + nb * i + j];
        }
    }
    // Remainder jet over the rough enclosures.
    {
        const auto jr = taylor_coeffs(var, concat_state_matrix(re.w, wv), n + 1);
        d.rem = IVector(nb);
        d.vrem = IMatrix(nb, nb);
        for (int i = 0; i < nb; ++i) d.rem[i] = jr[n + 1][i];
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) d.vrem.at(i, j) = jr[n + 1][nb + nb * i + j];
    }
    const Interval hi(h);
    d.transport = mat_horner(d.vpoly, d.vrem, hi);

    // Center transport with the same Lagrange remainder (W covers x0's orbit).
    const auto jm = taylor_coeffs(base, x0, n);
    out.u = eval_poly(jm, d.rem, hi);
    return out;
}

Doubleton assemble_c0(const Doubleton& s, const IMatrix& a, const IVector& u) {
    Doubleton next;
    next.x0 = mid(u);
    const IVector delta = u - next.x0;
    const IMatrix ca = mat_mul(a, s.C);
    next.C = mid(ca);
    const IMatrix dc = ca - next.C;
    next.r0 = s.r0;

    const IMatrix ba = mat_mul(a, s.B);
    std::vector<double> w(s.r.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = s.r[j].rad() + 1e-300;
    const IMatrix q = orthonormalize_columns(mid(ba), w);
    const IMatrix qi = inverse(q);
    next.B = q;
    next.r = mat_vec(mat_mul(qi, ba), s.r) + mat_vec(qi, delta)
           + mat_vec(mat_mul(qi, dc), s.r0);
    return next;
}

} // namespace

Doubleton FlowStepper::step_c0(const Doubleton& s, StepData* data) const {
    return step_c0(s, sp_.step, data);
}

Doubleton FlowStepper::step_c0(const Doubleton& s, double h, StepData* data) const {
    StepCore core = advance(base_, var_, sp_, s.x0, s.hull(), h);
    Doubleton next = assemble_c0(s, core.data.transport, core.u);
    if (data) *data = std::move(core.data);
    return next;
}

C1Doubleton FlowStepper::step_c1(const C1Doubleton& s, StepData* data) const {
    return step_c1(s, sp_.step, data);
}

C1Doubleton FlowStepper::step_c1(const C1Doubleton& s, double h, StepData* data) const {
    StepCore core = advance(base_, var_, sp_, s.set.x0, s.set.hull(), h);
    const IMatrix& a = core.data.transport;

    C1Doubleton next;
    next.set = assemble_c0(s.set, a, core.u);

    const IMatrix da = mat_mul(a, s.D0);
    next.D0 = mid(da);
    const IMatrix dd = da - next.D0;
    const IMatrix b0a = mat_mul(a, s.B0);
    std::vector<double> w(s.R.nr);
    for (std::size_t j = 0; j < w.size(); ++j) {
        double sup = 0;
        for (std::size_t k = 0; k < s.R.nc; ++k) sup = std::max(sup, s.R.at(j, k).abs_sup());
        w[j] = sup + 1e-300;
    }
    const IMatrix q0 = orthonormalize_columns(mid(b0a), w);
    const IMatrix q0i = inverse(q0);
    next.B0 = q0;
    next.R = mat_mul(mat_mul(q0i, b0a), s.R) + mat_mul(q0i, dd);
    if (data) *data = std::move(core.data);
    return next;
}

}  // namespace rigor3bp
