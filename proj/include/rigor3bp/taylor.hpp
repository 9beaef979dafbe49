// Rigorous time stepping.  Taylor coefficients of ODE solutions are generated
// by automatic differentiation over a small expression DAG, validated over a
// rough enclosure, and advanced with the C0/C1 Lohner algorithms on doubleton
// set representations x = x0 + C*r0 + B*r (derivative block D = D0 + B0*R).
//
// The AD kernel is generic over the DAG, so scalar and oscillator systems
// exercise it independently of the three-body field.

#pragma once

#include "rigor3bp/pcr3bp.hpp"

namespace rigor3bp {

struct ValidationFailed : std::runtime_error {
    ValidationFailed()
        : std::runtime_error("rough enclosure not validated; shrink step or subdivide") {}
};

enum class NodeKind { Var, Const, Add, Sub, Mul, Div, Neg, Scale, PowQ };

struct Node {
    NodeKind kind = NodeKind::Const;
    int a = -1, b = -1;  // operand node indices
    Interval cval;       // Const value or Scale factor
    double q = 0.0;      // PowQ exponent; 2q must be an integer
};

// First `dim` nodes are the state variables; `rhs[i]` names the node holding
// f_i.  Nodes are stored in evaluation (topological) order.
struct OdeSystem {
    int dim = 0;
    std::vector<Node> nodes;
    std::vector<int> rhs;
};

// Convenience builder used by the system factories and tests.
class DagBuilder {
  public:
    explicit DagBuilder(int dim);
    int var(int i) const { return i; }
    int cst(const Interval& v);
    int add(int a, int b);
    int sub(int a, int b);
    int mul(int a, int b);
    int div(int a, int b);
    int neg(int a);
    int scale(const Interval& c, int a);
    int powq(int a, double q);
    void set_rhs(int i, int node) { sys_.rhs[i] = node; }
    OdeSystem take() { return std::move(sys_); }

  private:
    OdeSystem sys_;
};

// u' = u (solution e^t), u' = u^2 (solution 1/(1-t)), the harmonic
// oscillator, and x' = diag(1,-1) x; each with a variational extension whose
// extra variables hold the flow-derivative entries row-major.
OdeSystem make_exponential_system();
OdeSystem make_exponential_variational_system();
OdeSystem make_riccati_system();
OdeSystem make_riccati_variational_system();
OdeSystem make_harmonic_system();
OdeSystem make_harmonic_variational_system();
OdeSystem make_diag_linear_system();
OdeSystem make_diag_linear_variational_system();

// The three-body field (dim 4) and its variational extension (dim 20:
// the state plus the 16 entries of D with D' = Df(x) D).
OdeSystem make_pcr3bp_system(const SystemParams& p);
OdeSystem make_pcr3bp_variational_system(const SystemParams& p);

// coeffs[k] encloses the k-th Taylor coefficient (time-power basis) of every
// solution starting in x.  Throws SingularityError when a divisor or PowQ
// base encloses zero.
std::vector<IVector> taylor_coeffs(const OdeSystem& sys, const IVector& x, int order);

// Enclosure of the vector field itself (order-1 coefficient).
IVector field_values(const OdeSystem& sys, const IVector& x);

// Horner evaluation of sum c_k t^k (+ rem * t^{order+1} when rem nonempty).
IVector eval_poly(const std::vector<IVector>& c, const Interval& t);
IVector eval_poly(const std::vector<IVector>& c, const IVector& rem, const Interval& t);

struct RoughEnclosure {
    IVector w;  // phi([0,h], x) subset of w (time range signed)
    double h;   // achieved signed step; |h| <= |requested| after bisection
};

// First phase of the Lohner method: find W with x + [0,h]*f(W) contained in
// the interior of W, retrying with inflation and step bisection.
RoughEnclosure rough_enclosure(const OdeSystem& sys, const IVector& x, double step,
                               double inflate = 1e-2, int max_retries = 20);

struct StepParams {
    int order = 5;
    double step = 0.01;  // signed; negative integrates backward
    double rough_inflate = 1e-2;
    int max_retries = 20;
};

struct Doubleton {
    IVector x0;  // point-like center
    IMatrix C;   // initial-error transport, dim x m
    IVector r0;  // initial-error box, contains 0
    IMatrix B;   // accumulated-error frame, dim x dim
    IVector r;   // accumulated-error box, contains 0

    IVector hull() const;
    static Doubleton from_box(const IVector& box);
};

struct C1Doubleton {
    Doubleton set;
    IMatrix D0, B0, R;  // derivative block D = D0 + B0*R

    IMatrix deriv_hull() const;
    static C1Doubleton identity(const Doubleton& s);
};

// Everything a caller needs to interrogate one accepted step: the achieved
// signed step, the rough enclosure, and the dense-output polynomials
//   phi(t, X)  in  sum poly[k] t^k + rem t^{n+1}
//   Dphi(t, X) in  sum vpoly[k] t^k + vrem t^{n+1}
// valid for t between 0 and h.
struct StepData {
    double h = 0.0;
    IVector rough;
    std::vector<IVector> poly;
    IVector rem;
    std::vector<IMatrix> vpoly;
    IMatrix vrem;
    IMatrix transport;  // [A]: enclosure of Dphi(h, hull X)
};

class FlowStepper {
  public:
    // var_sys must extend base_sys with base_dim^2 derivative variables.
    FlowStepper(OdeSystem base_sys, OdeSystem var_sys, StepParams sp);

    static FlowStepper pcr3bp(const SystemParams& p, const StepParams& sp);

    // One Lohner step of the requested signed size (default sp.step).  The
    // achieved step may be shorter when rough-enclosure validation bisects;
    // read it from data->h.
    Doubleton step_c0(const Doubleton& s, StepData* data = nullptr) const;
    Doubleton step_c0(const Doubleton& s, double h, StepData* data = nullptr) const;
    C1Doubleton step_c1(const C1Doubleton& s, StepData* data = nullptr) const;
    C1Doubleton step_c1(const C1Doubleton& s, double h, StepData* data = nullptr) const;

    const StepParams& params() const { return sp_; }
    int dim() const { return base_.dim; }

  private:
    OdeSystem base_, var_;
    StepParams sp_;
};

// Gram-Schmidt on the columns of a point matrix, processed in decreasing
// order of column norm times weight; returns a point orthonormal matrix.
IMatrix orthonormalize_columns(const IMatrix& m, const std::vector<double>& weights);

}  // namespace rigor3bp
