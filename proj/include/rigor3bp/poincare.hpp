// Rigorous Poincare maps on the section y = 0.  A planar point (x, xdot)
// with a branch sign is lifted onto the energy surface, flowed with the
// validated integrator while section crossings are counted through certified
// sign changes of y, and the final crossing is localized by interval Newton
// on the dense output of the bracketing step.  The planar derivative comes
// from the variational enclosure composed with the section projection and
// the lift Jacobian.

#pragma once

#include "rigor3bp/pcr3bp.hpp"
#include "rigor3bp/taylor.hpp"

namespace rigor3bp {

// The flow left the region where the map is defined: no certified return
// within the budget, a lost root bracket, or an inconsistent landing.
struct DomainFailure : std::runtime_error {
    explicit DomainFailure(const std::string& what) : std::runtime_error(what) {}
};

// The y = 0 intersection could not be certified transversal.
struct NonTransversal : std::runtime_error {
    explicit NonTransversal(const std::string& what) : std::runtime_error(what) {}
};

// Enclosure of a Poincare map image.  deriv is the 2x2 planar derivative in
// (x, xdot) and stays 0x0 unless the derivative was requested.
struct PoincareEnclosure {
    SectionPoint image;     // landing (x, xdot) with the certified ydot branch
    Interval ydot;          // section-normal velocity at the landing
    Interval return_time;   // signed; lo > 0 forward, hi < 0 backward
    IMatrix deriv;
    Interval jacobi_image;  // Jacobi constant of the 4D landing enclosure
    int crossings = 0;
    int steps = 0;          // accepted integrator steps
};

struct PoincareParams {
    StepParams step;
    double guard = 1e-6;      // |y| band to leave before crossings count
    double max_time = 400.0;  // abort bound on the accumulated |time|
    int max_steps = 2000000;  // abort bound on accepted steps
};

class PoincareEngine {
  public:
    PoincareEngine(const SystemParams& p, const PoincareParams& pp);
    PoincareEngine(const SystemParams& p, const StepParams& sp);

    // Flow the lifted box to its crossings-th transversal intersection with
    // y = 0 (1 = half map, 2 = full return map).  dir = +1 integrates
    // forward, -1 backward (the inverse map).  with_deriv selects the C1
    // computation.  Throws DomainFailure, NonTransversal, or the lift and
    // integrator errors when certification fails.
    PoincareEnclosure map_box(const SectionPoint& src, int crossings, int dir,
                              bool with_deriv) const;

    const SystemParams& system() const { return p_; }
    const PoincareParams& params() const { return pp_; }

  private:
    PoincareEnclosure resolve(const StepData& d, const IMatrix& d_in, const State4& s0,
                              const Interval& jac_src, const SectionPoint& src,
                              const Interval& t_acc, int dir, int start_sign,
                              int crossings, int steps, bool with_deriv) const;

    SystemParams p_;
    PoincareParams pp_;
    FlowStepper stepper_;
};

}  // namespace rigor3bp
