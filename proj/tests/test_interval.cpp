// Unit tests for the outward-rounded interval core: containment of exact
// values, inclusion isotonicity under random sampling, exact decimal parsing,
// and the interval linear-algebra helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rigor3bp/interval.hpp"

using namespace rigor3bp;

namespace {

std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);

double rand_double(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

Interval rand_interval() {
    double c = rand_double(-10.0, 10.0);
    double r = std::fabs(rand_double(0.0, 1.0));
    return Interval(c - r, c + r);
}

double rand_point_in(const Interval& a) {
    double t = rand_double(0.0, 1.0);
    double p = a.lo + t * (a.hi - a.lo);
    if (p < a.lo) p = a.lo;
    if (p > a.hi) p = a.hi;
    return p;
}

int ulps_apart(double lo, double hi) {
    int n = 0;
    while (lo < hi && n < 64) { lo = next_up(lo); ++n; }
    return n;
}

} // namespace

TEST_CASE("one third is strictly enclosed with at most 2 ulp width") {
    const Interval third = Interval(1.0) / Interval(3.0);
    // Exact check: lo < 1/3 < hi  <=>  3*lo < 1 < 3*hi, evaluated in long
    // double where the products of doubles by 3 are exact.
    const long double lo3 = 3.0L * static_cast<long double>(third.lo);
    const long double hi3 = 3.0L * static_cast<long double>(third.hi);
    CHECK(lo3 < 1.0L);
    CHECK(hi3 > 1.0L);
    CHECK(ulps_apart(third.lo, third.hi) <= 2);
}

TEST_CASE("basic operations enclose exactly representable results") {
    const Interval a(0.25), b(0.5);
    CHECK((a + b).contains(0.75));
    CHECK((a - b).contains(-0.25));
    CHECK((a * b).contains(0.125));
    CHECK((a / b).contains(0.5));
    Interval s = sqr(Interval(-3.0, 2.0));
    CHECK(s.lo == 0.0);
    CHECK(s.contains(9.0));
    CHECK(ulps_apart(9.0, s.hi) <= 1);
    CHECK(sqrt(Interval(4.0)).contains(2.0));
    CHECK(pow_int(Interval(2.0), 10).contains(1024.0));
    CHECK(pow_int(Interval(2.0), -2).contains(0.25));
    CHECK(pow_int(Interval(-2.0, 1.0), 2).lo == 0.0);
}

TEST_CASE("division by zero-straddling interval throws") {
    CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), DivByZeroInterval);
    CHECK_THROWS_AS(Interval(1.0) / Interval(0.0, 1.0), DivByZeroInterval);
    CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(intersect_nonempty(Interval(0.0, 1.0), Interval(2.0, 3.0)),
                    EmptyIntersection);
}

TEST_CASE("inclusion isotonicity on random samples") {
    // Point results of every operation must land inside the interval result.
    const int kCases = 100000;
    int divisions = 0;
    for (int i = 0; i < kCases; ++i) {
        Interval a = rand_interval();
        Interval b = rand_interval();
        double x = rand_point_in(a);
        double y = rand_point_in(b);

        CHECK((a + b).contains(x + y));
        CHECK((a - b).contains(x - y));
        CHECK((a * b).contains(x * y));
        CHECK(sqr(a).contains(x * x));
        if (excludes_zero(b)) {
            ++divisions;
            CHECK((a / b).contains(x / y));
        }
        Interval h = hull(a, b);
        CHECK(h.contains(a));
        CHECK(h.contains(b));
        auto isect = intersect(a, b);
        if (a.contains(x) && b.contains(x)) {
            REQUIRE(isect.has_value());
            CHECK(isect->contains(x));
        }
    }
    CHECK(divisions > 0);
}

TEST_CASE("sqrt and pow are isotone on nonnegative samples") {
    for (int i = 0; i < 20000; ++i) {
        double c = rand_double(0.0, 10.0);
        double r = rand_double(0.0, 1.0);
        Interval a(std::max(0.0, c - r), c + r);
        double x = rand_point_in(a);
        CHECK(sqrt(a).contains(std::sqrt(x)));
        CHECK(pow_int(a, 3).contains(x * x * x));
    }
}

TEST_CASE("decimal parsing is exact for representable literals") {
    CHECK(interval_from_decimal("0.5").is_point());
    CHECK(interval_from_decimal("0.5").lo == 0.5);
    CHECK(interval_from_decimal("1").is_point());
    CHECK(interval_from_decimal("-2.25").lo == -2.25);
    CHECK(interval_from_decimal("-2.25").is_point());
    CHECK(interval_from_decimal("1e5").is_point());
    CHECK(interval_from_decimal("1e5").lo == 100000.0);
    CHECK(interval_from_decimal("0").is_point());
    CHECK(interval_from_decimal("0").lo == 0.0);
}

TEST_CASE("decimal parsing widens non-representable literals minimally") {
    // 0.1 is not a binary double; the result must be the two neighbouring
    // representables around the exact value.
    Interval d = interval_from_decimal("0.1");
    CHECK(!d.is_point());
    CHECK(ulps_apart(d.lo, d.hi) == 1);
    // The exact value of 0.1 lies strictly inside: compare 10*lo < 1 < 10*hi
    // via long double products that are exact for these magnitudes.
    CHECK(10.0L * static_cast<long double>(d.lo) < 1.0L);
    CHECK(10.0L * static_cast<long double>(d.hi) > 1.0L);

    Interval e = interval_from_decimal("6e-14");
    CHECK(ulps_apart(e.lo, e.hi) <= 1);
    CHECK(e.contains(6e-14));

    Interval x1 = interval_from_decimal("0.9208034913207400196");
    CHECK(ulps_apart(x1.lo, x1.hi) <= 1);
    CHECK(x1.contains(0.9208034913207400196));

    Interval neg = interval_from_decimal("-0.1");
    CHECK(ulps_apart(neg.lo, neg.hi) == 1);
    CHECK(neg.hi < 0.0);

    CHECK_THROWS_AS(interval_from_decimal(""), DomainError);
    CHECK_THROWS_AS(interval_from_decimal("abc"), DomainError);
    CHECK_THROWS_AS(interval_from_decimal("1.2.3"), DomainError);
}

TEST_CASE("parsed literal intervals are consistent with strtod rounding") {
    // For a sample of literals, the strtod double must be an endpoint.
    for (const char* lit : {"0.1", "2.71828182845904523536", "1e-13",
                            "0.9208034913207400196", "1.081929486841799903",
                            "2.5733011", "3.03", "0.0009537"}) {
        Interval v = interval_from_decimal(lit);
        double d = std::strtod(lit, nullptr);
        CHECK((v.lo == d || v.hi == d));
        CHECK(v.width() <= 2.0 * std::fabs(d) * 1e-15);
    }
}

TEST_CASE("split covers the interval with shared endpoints") {
    Interval a(-1.0, 2.0);
    for (int n : {1, 2, 3, 7, 13}) {
        auto parts = split(a, n);
        REQUIRE(parts.size() == static_cast<std::size_t>(n));
        CHECK(parts.front().lo == a.lo);
        CHECK(parts.back().hi == a.hi);
        for (std::size_t i = 1; i < parts.size(); ++i)
            CHECK(parts[i].lo == parts[i - 1].hi);
        for (int s = 0; s <= 100; ++s) {
            double p = a.lo + (a.hi - a.lo) * (s / 100.0);
            bool covered = false;
            for (const auto& q : parts) covered = covered || q.contains(p);
            CHECK(covered);
        }
    }
    CHECK(split(Interval(1.5), 4).size() == 4);
    CHECK_THROWS_AS(split(a, 0), DomainError);
}

TEST_CASE("interval vectors and matrices") {
    IVector v{Interval(1.0), Interval(2.0)};
    IVector w{Interval(0.5), Interval(-1.0)};
    CHECK((v + w)[0].contains(1.5));
    CHECK((v - w)[1].contains(3.0));
    CHECK((Interval(2.0) * v)[1].contains(4.0));
    CHECK(contains(hull(v, w), v));
    CHECK(contains(hull(v, w), w));

    IMatrix m(2, 2);
    m.at(0, 0) = Interval(1.0); m.at(0, 1) = Interval(2.0);
    m.at(1, 0) = Interval(3.0); m.at(1, 1) = Interval(4.0);
    IVector mv = mat_vec(m, v);
    CHECK(mv[0].contains(5.0));
    CHECK(mv[1].contains(11.0));

    IMatrix p = mat_mul(m, IMatrix::identity(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(p.at(i, j).contains(m.at(i, j).mid()));

    CHECK(det2(m).contains(-2.0));
    IMatrix t = transpose(m);
    CHECK(t.at(0, 1).contains(3.0));
}

TEST_CASE("2x2 inverse and gaussian solve enclose exact solutions") {
    IMatrix m(2, 2);
    m.at(0, 0) = Interval(2.0); m.at(0, 1) = Interval(1.0);
    m.at(1, 0) = Interval(1.0); m.at(1, 1) = Interval(3.0);
    // Exact inverse is (1/5)*[[3,-1],[-1,2]].
    IMatrix inv2 = inverse2x2(m);
    CHECK(inv2.at(0, 0).contains(0.6));
    CHECK(inv2.at(0, 1).contains(-0.2));
    CHECK(inv2.at(1, 0).contains(-0.2));
    CHECK(inv2.at(1, 1).contains(0.4));

    IMatrix invg = inverse(m);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(invg.at(i, j).contains(inv2.at(i, j).mid()));

    IVector b{Interval(4.0), Interval(7.0)};
    IVector x = solve(m, b);  // exact solution (1, 2)
    CHECK(x[0].contains(1.0));
    CHECK(x[1].contains(2.0));

    // Product A * A^-1 must enclose the identity.
    IMatrix prod = mat_mul(m, invg);
    CHECK(prod.at(0, 0).contains(1.0));
    CHECK(prod.at(0, 1).contains(0.0));
    CHECK(prod.at(1, 0).contains(0.0));
    CHECK(prod.at(1, 1).contains(1.0));

    IMatrix sing(2, 2);
    sing.at(0, 0) = Interval(1.0); sing.at(0, 1) = Interval(2.0);
    sing.at(1, 0) = Interval(2.0); sing.at(1, 1) = Interval(4.0);
    CHECK_THROWS_AS(inverse2x2(sing), SingularIntervalMatrix);
    CHECK_THROWS_AS(inverse(sing), SingularIntervalMatrix);
}

TEST_CASE("gaussian solve random 4x4 systems enclose sampled solutions") {
    for (int rep = 0; rep < 200; ++rep) {
        IMatrix a(4, 4);
        std::vector<double> xs(4);
        for (auto& x : xs) x = rand_double(-2.0, 2.0);
        bool diag_dom;
        do {
            diag_dom = true;
            for (std::size_t i = 0; i < 4; ++i) {
                double row = 0;
                for (std::size_t j = 0; j < 4; ++j) {
                    double v = rand_double(-1.0, 1.0);
                    if (i == j) v += (v >= 0 ? 4.0 : -4.0);
                    a.at(i, j) = Interval(v);
                    if (i != j) row += std::fabs(v);
                }
                if (std::fabs(a.at(i, i).mid()) <= row) diag_dom = false;
            }
        } while (!diag_dom);
        // Build rhs = A*x in interval arithmetic, then solve and check x in X.
        IVector xv(4);
        for (std::size_t i = 0; i < 4; ++i) xv[i] = Interval(xs[i]);
        IVector b = mat_vec(a, xv);
        IVector enc = solve(a, b);
        for (std::size_t i = 0; i < 4; ++i) CHECK(enc[i].contains(xs[i]));
    }
}

TEST_CASE("midpoint, radius and width are sound") {
    for (int i = 0; i < 20000; ++i) {
        Interval a = rand_interval();
        double m = a.mid();
        CHECK(a.contains(m));
        CHECK(a.rad() >= std::fabs(a.hi - m));
        CHECK(a.rad() >= std::fabs(m - a.lo));
        CHECK(a.width() >= a.hi - a.lo);
        CHECK(a.abs_sup() >= std::fabs(a.lo));
        CHECK(a.abs_sup() >= std::fabs(a.hi));
        if (excludes_zero(a)) CHECK(a.abs_inf() > 0.0);
    }
    CHECK(Interval(-1.0, 2.0).abs_inf() == 0.0);
    CHECK(Interval(3.0, 5.0).abs_inf() == 3.0);
    CHECK(Interval(-5.0, -3.0).abs_inf() == 3.0);
}

TEST_CASE("next_up and next_down bracket every sample tightly") {
    for (int i = 0; i < 20000; ++i) {
        double x = rand_double(-1e6, 1e6);
        CHECK(next_up(x) > x);
        CHECK(next_down(x) < x);
        CHECK(next_down(next_up(x)) == x);
    }
    CHECK(next_up(0.0) > 0.0);
    CHECK(next_down(0.0) < 0.0);
}
