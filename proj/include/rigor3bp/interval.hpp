// Directed-rounding interval arithmetic on IEEE doubles.
//
// Every primitive result is computed in round-to-nearest and then widened by
// one ulp on the relevant side (next_up / next_down), which strictly encloses
// the exact value since nearest rounding is off by less than one spacing.
// No global rounding-mode state is touched, so all operations are thread-safe
// and remain sound under compiler FP contraction.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rigor3bp {

struct DivByZeroInterval : std::runtime_error {
    DivByZeroInterval() : std::runtime_error("division by interval containing zero") {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyIntersection : std::runtime_error {
    EmptyIntersection() : std::runtime_error("empty interval intersection") {}
};

struct SingularIntervalMatrix : std::runtime_error {
    SingularIntervalMatrix() : std::runtime_error("interval matrix has no verified inverse") {}
};

// Next representable double above / below x.  next_up(0) is the smallest
// positive subnormal; infinities and NaN map to themselves.
double next_up(double x) noexcept;
double next_down(double x) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit by design
    Interval(double l, double h);         // throws DomainError if l > h

    double mid() const noexcept;      // a representable point inside [lo,hi]
    double rad() const noexcept;      // upper bound on max(|mid-lo|,|hi-mid|)
    double width() const noexcept;    // upper bound on hi-lo
    double abs_sup() const noexcept;  // max |x| over the interval
    double abs_inf() const noexcept;  // min |x| over the interval (0 if it straddles)

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
    bool contains_interior(const Interval& o) const noexcept { return lo < o.lo && o.hi < hi; }
    bool is_point() const noexcept { return lo == hi; }

    bool operator==(const Interval& o) const noexcept { return lo == o.lo && hi == o.hi; }
};

Interval operator+(const Interval& a, const Interval& b) noexcept;
Interval operator-(const Interval& a, const Interval& b) noexcept;
Interval operator-(const Interval& a) noexcept;
Interval operator*(const Interval& a, const Interval& b) noexcept;
Interval operator/(const Interval& a, const Interval& b);  // throws DivByZeroInterval

Interval& operator+=(Interval& a, const Interval& b) noexcept;
Interval& operator-=(Interval& a, const Interval& b) noexcept;
Interval& operator*=(Interval& a, const Interval& b) noexcept;

Interval sqr(const Interval& a) noexcept;
Interval sqrt(const Interval& a);  // throws DomainError if a.lo < 0
Interval pow_int(const Interval& a, int n);

Interval hull(const Interval& a, const Interval& b) noexcept;
std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept;
Interval intersect_nonempty(const Interval& a, const Interval& b);  // throws EmptyIntersection

inline bool certainly_lt(const Interval& a, const Interval& b) noexcept { return a.hi < b.lo; }
inline bool certainly_gt(const Interval& a, const Interval& b) noexcept { return a.lo > b.hi; }
inline bool excludes_zero(const Interval& a) noexcept { return a.lo > 0.0 || a.hi < 0.0; }

// Covering of a by n closed subintervals with shared endpoints (their union
// equals a exactly), used for sound grid subdivision.
std::vector<Interval> split(const Interval& a, int n);

// Smallest machine interval containing the exact value of a decimal literal
// such as "0.1" or "6e-14".  A point interval when the literal is exactly
// representable.  Throws DomainError on malformed input.
Interval interval_from_decimal(std::string_view text);

std::string to_string(const Interval& a);

struct IVector {
    std::vector<Interval> e;

    IVector() = default;
    explicit IVector(std::size_t n) : e(n) {}
    IVector(std::initializer_list<Interval> init) : e(init) {}

    std::size_t size() const noexcept { return e.size(); }
    Interval& operator[](std::size_t i) { return e[i]; }
    const Interval& operator[](std::size_t i) const { return e[i]; }
};

IVector operator+(const IVector& a, const IVector& b);
IVector operator-(const IVector& a, const IVector& b);
IVector operator*(const Interval& s, const IVector& a);
IVector mid(const IVector& a);
IVector hull(const IVector& a, const IVector& b);
bool contains(const IVector& a, const IVector& b);
bool contains_interior(const IVector& a, const IVector& b);

struct IMatrix {
    std::size_t nr = 0, nc = 0;
    std::vector<Interval> e;  // row-major

    IMatrix() = default;
    IMatrix(std::size_t rows, std::size_t cols) : nr(rows), nc(cols), e(rows * cols) {}

    Interval& at(std::size_t i, std::size_t j) { return e[i * nc + j]; }
    const Interval& at(std::size_t i, std::size_t j) const { return e[i * nc + j]; }

    static IMatrix identity(std::size_t n);
};

IMatrix operator+(const IMatrix& a, const IMatrix& b);
IMatrix operator-(const IMatrix& a, const IMatrix& b);
IMatrix operator*(const Interval& s, const IMatrix& a);
IMatrix mat_mul(const IMatrix& a, const IMatrix& b);
IVector mat_vec(const IMatrix& a, const IVector& v);
IMatrix transpose(const IMatrix& a);
IMatrix mid(const IMatrix& a);
IMatrix hull(const IMatrix& a, const IMatrix& b);

Interval det2(const IMatrix& a);
IMatrix inverse2x2(const IMatrix& a);  // throws SingularIntervalMatrix
IMatrix inverse(const IMatrix& a);     // interval Gaussian elimination
IVector solve(const IMatrix& a, const IVector& b);

}  // namespace rigor3bp
