// Planar circular restricted three-body problem in rotating (synodical)
// coordinates: effective potential and its partials through second order,
// the vector field and its variational extension, the Jacobi integral,
// the lift from the y=0 section onto an energy surface, and the symmetry
// R(x, xdot) = (x, -xdot).

#pragma once

#include "rigor3bp/interval.hpp"

namespace rigor3bp {

struct SingularityError : std::runtime_error {
    SingularityError() : std::runtime_error("state enclosure touches a primary body") {}
};

struct NegativeDiscriminant : std::runtime_error {
    NegativeDiscriminant()
        : std::runtime_error("section point lies outside the energy surface") {}
};

struct AmbiguousDiscriminant : std::runtime_error {
    AmbiguousDiscriminant()
        : std::runtime_error("lift discriminant straddles zero; subdivide the input") {}
};

struct SystemParams {
    Interval mu;        // mass ratio of the smaller primary
    Interval jacobi_c;  // Jacobi constant of the energy surface

    // Sun-Jupiter mass ratio and the energy level studied throughout.
    static SystemParams oterma();
};

struct State4 {
    Interval x, y, xdot, ydot;

    IVector to_vec() const { return IVector{x, y, xdot, ydot}; }
    static State4 from_vec(const IVector& v);
};

enum class Branch { Plus, Minus };  // sign of ydot on the section y = 0

inline int branch_sign(Branch b) { return b == Branch::Plus ? 1 : -1; }
inline Branch opposite(Branch b) { return b == Branch::Plus ? Branch::Minus : Branch::Plus; }

struct SectionPoint {
    Interval x, xdot;
    Branch branch = Branch::Plus;
};

struct VarState {
    State4 base;
    IMatrix deriv;  // 4x4 flow derivative with respect to the initial state

    static VarState identity_at(const State4& s);
};

// Effective potential Omega(x,y) = (x^2+y^2)/2 + (1-mu)/r1 + mu/r2 + mu(1-mu)/2
// and its partial derivatives in closed form.  All throw SingularityError when
// the enclosure of r1^2 or r2^2 touches zero.
Interval omega(const SystemParams& p, const Interval& x, const Interval& y);
Interval omega_x(const SystemParams& p, const Interval& x, const Interval& y);
Interval omega_y(const SystemParams& p, const Interval& x, const Interval& y);
Interval omega_xx(const SystemParams& p, const Interval& x, const Interval& y);
Interval omega_xy(const SystemParams& p, const Interval& x, const Interval& y);
Interval omega_yy(const SystemParams& p, const Interval& x, const Interval& y);

// f(x, y, xdot, ydot) = (xdot, ydot, Omega_x + 2 ydot, Omega_y - 2 xdot).
IVector vector_field(const SystemParams& p, const State4& s);

// Jacobian Df of the vector field at s.
IMatrix jacobian(const SystemParams& p, const State4& s);

// (f(base), Df(base) * deriv): right-hand side of the variational equations.
std::pair<IVector, IMatrix> variational_field(const SystemParams& p, const VarState& v);

// C = -(xdot^2 + ydot^2) + 2 Omega(x, y).
Interval jacobi(const SystemParams& p, const State4& s);

// T_branch(x, xdot) = (x, 0, xdot, sign * sqrt(2 Omega(x,0) - xdot^2 - C)).
// Throws NegativeDiscriminant when the discriminant is provably negative and
// AmbiguousDiscriminant when its enclosure straddles zero.
State4 lift(const SystemParams& p, const SectionPoint& q);

SectionPoint sym_r(const SectionPoint& q);  // (x, xdot) -> (x, -xdot), branch kept
State4 sym_r(const State4& s);              // (x, y, xdot, ydot) -> (x, -y, -xdot, ydot)

}  // namespace rigor3bp
