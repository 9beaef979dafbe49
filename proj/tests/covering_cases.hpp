// Analytic toy-map table for the covering checkers: twelve cases whose
// verdicts are decidable by hand (linear hyperbolic maps, a rotation, a
// shear, a cubic with a non-monotone first coordinate, translated targets,
// and a thin fuzzy family).  Shared by the unit tests and the acceptance
// harness, which both demand an exact match.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigor3bp/covering.hpp"

namespace rigor3bp::toycases {

// Section map built from closures; branch bookkeeping is trivial.
class ToyMap : public SectionMap {
public:
    using BoxFn = std::function<PlaneBox(const PlaneBox&)>;
    using DerivFn = std::function<IMatrix(const PlaneBox&)>;

    ToyMap(BoxFn fwd, BoxFn inv, DerivFn d, DerivFn dinv = nullptr)
        : fwd_(std::move(fwd)), inv_(std::move(inv)), deriv_(std::move(d)),
          deriv_inv_(std::move(dinv)) {}

    PlaneBox image(const PlaneBox& b, Branch, int dir, int, double) const override {
        return dir >= 0 ? fwd_(b) : inv_(b);
    }
    IMatrix derivative(const PlaneBox& b, Branch, int dir, int, double) const override {
        if (dir >= 0) return deriv_(b);
        if (!deriv_inv_) throw std::logic_error("toy map has no inverse derivative");
        return deriv_inv_(b);
    }
    Branch branch_after(Branch src) const override { return src; }

private:
    BoxFn fwd_;
    BoxFn inv_;
    DerivFn deriv_;
    DerivFn deriv_inv_;
};

inline ToyMap linear_map(double a11, double a12, double a21, double a22) {
    auto apply = [](double m11, double m12, double m21, double m22) {
        return [=](const PlaneBox& b) {
            return PlaneBox{Interval(m11) * b.x + Interval(m12) * b.xdot,
                            Interval(m21) * b.x + Interval(m22) * b.xdot};
        };
    };
    const double det = a11 * a22 - a12 * a21;
    IMatrix d(2, 2);
    d.at(0, 0) = Interval(a11);
    d.at(0, 1) = Interval(a12);
    d.at(1, 0) = Interval(a21);
    d.at(1, 1) = Interval(a22);
    // Backward images apply these rounded coefficients, so the same point
    // matrix is their exact derivative.
    IMatrix di(2, 2);
    di.at(0, 0) = Interval(a22 / det);
    di.at(0, 1) = Interval(-a12 / det);
    di.at(1, 0) = Interval(-a21 / det);
    di.at(1, 1) = Interval(a11 / det);
    return ToyMap(apply(a11, a12, a21, a22),
                  apply(a22 / det, -a12 / det, -a21 / det, a11 / det),
                  [d](const PlaneBox&) { return d; }, [di](const PlaneBox&) { return di; });
}

// First coordinate t^3 - t: non-monotone on [-1,1].  Not injective, so the
// inverse is a stub landing far away; only the monotonicity condition is
// meaningful for this specimen.
inline ToyMap cubic_map() {
    return ToyMap(
        [](const PlaneBox& b) {
            return PlaneBox{b.x * b.x * b.x - b.x, Interval(0.5) * b.xdot};
        },
        [](const PlaneBox&) { return PlaneBox{Interval(50.0), Interval(50.0)}; },
        [](const PlaneBox& b) {
            IMatrix d(2, 2);
            d.at(0, 0) = Interval(3.0) * sqr(b.x) - Interval(1.0);
            d.at(0, 1) = Interval(0.0);
            d.at(1, 0) = Interval(0.0);
            d.at(1, 1) = Interval(0.5);
            return d;
        });
}

inline HSet unit_square_at(double cx, double cv) {
    return HSet{Interval(cx), Interval(cv), PlaneVec{1.0, 0.0}, PlaneVec{0.0, 1.0}};
}

struct ExpectedVerdict {
    bool holds = false;
    Orientation orientation = Orientation::Unknown;
    // Only the listed conditions are compared.
    std::vector<std::pair<std::string, CondStatus>> conditions;
};

struct ToyCaseResult {
    std::string name;
    bool matched = false;
    std::string detail;
};

inline bool verdict_matches(const CoveringVerdict& got, const ExpectedVerdict& want,
                            std::string& why) {
    if (got.holds != want.holds) {
        why = "holds mismatch";
        return false;
    }
    if (got.orientation != want.orientation) {
        why = "orientation mismatch";
        return false;
    }
    for (const auto& [name, st] : want.conditions) {
        if (got.condition(name) != st) {
            why = "condition " + name + " mismatch";
            return false;
        }
    }
    return true;
}

// The twelve-case table.  Every row's expectation is derivable by hand from
// the definitions of the side, strip, monotonicity, anchor and disjointness
// conditions.
inline std::vector<ToyCaseResult> run_toy_covering_cases() {
    std::vector<ToyCaseResult> out;
    const HSet unit = unit_square_at(0.0, 0.0);
    CheckParams fwd;  // defaults: every family grid 1, forward steps
    CheckParams bwd;
    bwd.horizontal.step = -0.01;

    auto run = [&](const std::string& name, const CoveringVerdict& got,
                   const ExpectedVerdict& want) {
        ToyCaseResult r;
        r.name = name;
        r.matched = verdict_matches(got, want, r.detail);
        out.push_back(std::move(r));
    };

    const ToyMap hyper = linear_map(2.0, 0.0, 0.0, 0.5);
    run("hyperbolic direct", check_covering_direct(hyper, unit, unit, fwd),
        {true, Orientation::BPlus, {{"b", CondStatus::Pass}, {"a'", CondStatus::Pass}}});

    run("mirrored direct", check_covering_direct(linear_map(-2.0, 0.0, 0.0, 0.5), unit, unit, fwd),
        {true, Orientation::BMinus, {{"b", CondStatus::Pass}, {"a'", CondStatus::Pass}}});

    run("identity fails the side condition",
        check_covering_direct(linear_map(1.0, 0.0, 0.0, 1.0), unit, unit, fwd),
        {false, Orientation::Unknown, {{"b", CondStatus::Fail}}});

    run("target above fails the strip condition",
        check_covering_direct(hyper, unit, unit_square_at(0.0, 10.0), fwd),
        {false, Orientation::BPlus, {{"b", CondStatus::Pass}, {"a'", CondStatus::Fail}}});

    run("target aside fails the side condition",
        check_covering_direct(hyper, unit, unit_square_at(10.0, 0.0), fwd),
        {false, Orientation::Unknown, {{"b", CondStatus::Fail}, {"a'", CondStatus::Pass}}});

    run("rotation fails the side condition",
        check_covering_direct(linear_map(0.0, -1.0, 1.0, 0.0), unit, unit, fwd),
        {false, Orientation::Unknown, {{"b", CondStatus::Fail}}});

    run("shear direct", check_covering_direct(linear_map(2.0, 0.5, 0.0, 0.3), unit, unit, fwd),
        {true, Orientation::BPlus, {{"b", CondStatus::Pass}, {"a'", CondStatus::Pass}}});

    run("hyperbolic backward", check_covering_backward(hyper, unit, unit, bwd),
        {true,
         Orientation::BPlus,
         {{"b", CondStatus::Pass},
          {"a1", CondStatus::Pass},
          {"a2", CondStatus::Pass},
          {"a3", CondStatus::Pass}}});

    CheckParams bwd4 = bwd;
    bwd4.mono_grid = 4;
    run("cubic fails monotonicity", check_covering_backward(cubic_map(), unit, unit, bwd4),
        {false,
         Orientation::Unknown,
         {{"b", CondStatus::Fail}, {"a1", CondStatus::Fail}, {"a2", CondStatus::Pass}}});

    run("expanding map fails disjointness",
        check_covering_backward(linear_map(2.0, 0.0, 0.0, 2.0), unit, unit, bwd),
        {false,
         Orientation::BPlus,
         {{"b", CondStatus::Pass},
          {"a1", CondStatus::Pass},
          {"a2", CondStatus::Pass},
          {"a3", CondStatus::Fail}}});

    run("target above fails the anchor condition",
        check_covering_backward(hyper, unit, unit_square_at(0.0, 10.0), bwd),
        {false,
         Orientation::BPlus,
         {{"b", CondStatus::Pass},
          {"a1", CondStatus::Pass},
          {"a2", CondStatus::Fail},
          {"a3", CondStatus::Pass}}});

    FuzzyHSet family;
    family.family = unit;
    family.family.cx = Interval(-0.01, 0.01);
    run("thin fuzzy family backward",
        check_covering_fuzzy(hyper, family, family, bwd, CoverMode::Backward),
        {true,
         Orientation::BPlus,
         {{"b", CondStatus::Pass},
          {"a1", CondStatus::Pass},
          {"a2", CondStatus::Pass},
          {"a3", CondStatus::Pass}}});

    return out;
}

}  // namespace rigor3bp::toycases
