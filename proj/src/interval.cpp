#include "rigor3bp/interval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cassert>
#include <limits>

namespace rigor3bp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Round-to-nearest result r of a primitive op differs from the exact value by
// less than one spacing, so stepping one ulp outward gives a strict bound.
inline double up1(double r) noexcept { return next_up(r); }
inline double dn1(double r) noexcept { return next_down(r); }

} // namespace

double next_up(double x) noexcept {
    if (std::isnan(x) || x == kInf) return x;
    if (x == 0.0) return std::numeric_limits<double>::denorm_min();
    std::uint64_t b = std::bit_cast<std::uint64_t>(x);
    b = (x > 0.0) ? b + 1 : b - 1;
    return std::bit_cast<double>(b);
}

double next_down(double x) noexcept {
    if (std::isnan(x) || x == -kInf) return x;
    if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
    std::uint64_t b = std::bit_cast<std::uint64_t>(x);
    b = (x > 0.0) ? b - 1 : b + 1;
    return std::bit_cast<double>(b);
}

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw DomainError("interval endpoints out of order");
}

double Interval::mid() const noexcept {
    if (lo == hi) return lo;
    double m = 0.5 * (lo + hi);
    if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
    if (m < lo) m = lo;
    if (m > hi) m = hi;
    return m;
}

double Interval::rad() const noexcept {
    double m = mid();
    return std::max(up1(m - lo), up1(hi - m));
}

double Interval::width() const noexcept { return up1(hi - lo); }

double Interval::abs_sup() const noexcept { return std::max(std::fabs(lo), std::fabs(hi)); }

double Interval::abs_inf() const noexcept {
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
}

namespace {

inline bool is_zero(const Interval& a) noexcept { return a.lo == 0.0 && a.hi == 0.0; }

} // namespace

Interval operator+(const Interval& a, const Interval& b) noexcept {
    if (is_zero(a)) return b;  // adding exact zero never needs widening
    if (is_zero(b)) return a;
    Interval r;
    r.lo = dn1(a.lo + b.lo);
    r.hi = up1(a.hi + b.hi);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) noexcept {
    if (is_zero(b)) return a;
    if (is_zero(a)) return -b;
    Interval r;
    r.lo = dn1(a.lo - b.hi);
    r.hi = up1(a.hi - b.lo);
    return r;
}

Interval operator-(const Interval& a) noexcept {
    Interval r;
    r.lo = -a.hi;
    r.hi = -a.lo;
    return r;
}

Interval operator*(const Interval& a, const Interval& b) noexcept {
    if (is_zero(a) || is_zero(b)) return Interval();
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    Interval r;
    r.lo = dn1(std::min(std::min(p1, p2), std::min(p3, p4)));
    r.hi = up1(std::max(std::max(p1, p2), std::max(p3, p4)));
    // 0*inf products give nan only in degenerate unbounded inputs, which we
    // never construct; keep a cheap guard in debug builds.
    assert(!std::isnan(r.lo) && !std::isnan(r.hi));
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && 0.0 <= b.hi) throw DivByZeroInterval();
    if (is_zero(a)) return Interval();
    const double q1 = a.lo / b.lo;
    const double q2 = a.lo / b.hi;
    const double q3 = a.hi / b.lo;
    const double q4 = a.hi / b.hi;
    Interval r;
    r.lo = dn1(std::min(std::min(q1, q2), std::min(q3, q4)));
    r.hi = up1(std::max(std::max(q1, q2), std::max(q3, q4)));
    return r;
}

Interval& operator+=(Interval& a, const Interval& b) noexcept { a = a + b; return a; }
Interval& operator-=(Interval& a, const Interval& b) noexcept { a = a - b; return a; }
Interval& operator*=(Interval& a, const Interval& b) noexcept { a = a * b; return a; }

Interval sqr(const Interval& a) noexcept {
    if (is_zero(a)) return Interval();
    const double p1 = a.lo * a.lo;
    const double p2 = a.hi * a.hi;
    Interval r;
    if (a.lo <= 0.0 && 0.0 <= a.hi) {
        r.lo = 0.0;
        r.hi = up1(std::max(p1, p2));
    } else {
        r.lo = dn1(std::min(p1, p2));
        r.hi = up1(std::max(p1, p2));
    }
    return r;
}

Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw DomainError("sqrt of interval with negative part");
    Interval r;
    r.lo = a.lo == 0.0 ? 0.0 : std::max(0.0, dn1(std::sqrt(a.lo)));
    r.hi = up1(std::sqrt(a.hi));
    return r;
}

Interval pow_int(const Interval& a, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / pow_int(a, -n);
    Interval r(1.0);
    Interval base = a;
    int k = n;
    while (k > 0) { // exponentiation by squaring; sqr() keeps even powers tight
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base = sqr(base);
    }
    if (n % 2 == 0 && a.lo <= 0.0 && 0.0 <= a.hi && r.lo < 0.0) r.lo = 0.0;
    return r;
}

Interval hull(const Interval& a, const Interval& b) noexcept {
    Interval r;
    r.lo = std::min(a.lo, b.lo);
    r.hi = std::max(a.hi, b.hi);
    return r;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    Interval r;
    r.lo = lo;
    r.hi = hi;
    return r;
}

Interval intersect_nonempty(const Interval& a, const Interval& b) {
    auto r = intersect(a, b);
    if (!r) throw EmptyIntersection();
    return *r;
}

std::vector<Interval> split(const Interval& a, int n) {
    if (n < 1) throw DomainError("split requires n >= 1");
    std::vector<Interval> parts;
    parts.reserve(static_cast<std::size_t>(n));
    const Interval w = Interval(a.hi) - Interval(a.lo);
    double prev = a.lo;
    for (int j = 1; j <= n; ++j) {
        double cut;
        if (j == n) {
            cut = a.hi;
        } else {
            // Interval evaluation plus clamping keeps the cut inside [lo,hi]
            // and the union of parts equal to the full interval.
            cut = (Interval(a.lo) + Interval(double(j)) * w / Interval(double(n))).hi;
            cut = std::min(std::max(cut, prev), a.hi);
        }
        Interval p;
        p.lo = prev;
        p.hi = cut;
        parts.push_back(p);
        prev = cut;
    }
    return parts;
}

namespace {

// Exact comparison of a double against n*10^p (n >= 0) using 128-bit integers.
// Returns -1/0/+1, or 2 when the magnitudes overflow the exact window.
int cmp_double_decimal(double d, unsigned __int128 n, int p) {
    if (d < 0.0) return -1; // callers pass |value| semantics; negative means below
    if (d == 0.0) return n == 0 ? 0 : -1;
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
    const std::uint64_t frac = bits & ((std::uint64_t(1) << 52) - 1);
    const int ebits = int((bits >> 52) & 0x7ff);
    unsigned __int128 m;
    int a; // d = m * 2^a exactly
    if (ebits == 0) {
        m = frac;
        a = -1074;
    } else {
        m = frac | (std::uint64_t(1) << 52);
        a = ebits - 1075;
    }
    // Compare m*2^a with n*5^p*2^p.
    unsigned __int128 lhs = m, rhs = n;
    int shift2 = a - p; // lhs carries 2^shift2
    int pow5 = p;       // rhs carries 5^pow5
    if (pow5 > 0) {
        for (int i = 0; i < pow5; ++i) {
            if (rhs > (~(unsigned __int128)0) / 5) return 2;
            rhs *= 5;
        }
    } else if (pow5 < 0) {
        for (int i = 0; i < -pow5; ++i) {
            if (lhs > (~(unsigned __int128)0) / 5) return 2;
            lhs *= 5;
        }
    }
    auto shl_checked = [](unsigned __int128& v, int s) -> bool {
        while (s > 0) {
            int step = std::min(s, 32);
            if (v >> (128 - step)) return false;
            v <<= step;
            s -= step;
        }
        return true;
    };
    if (shift2 > 0) {
        if (!shl_checked(lhs, shift2)) return 2;
    } else if (shift2 < 0) {
        if (!shl_checked(rhs, -shift2)) return 2;
    }
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

} // namespace

Interval interval_from_decimal(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw DomainError("empty decimal literal");
    const char* cs = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(cs, &end);
    if (end == cs || *end != '\0' || !std::isfinite(d))
        throw DomainError("invalid decimal literal: " + s);

    // Decompose the literal into sign * digits * 10^p.
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    unsigned __int128 digits = 0;
    int frac_digits = 0;
    bool seen_dot = false, overflow = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') { seen_dot = true; continue; }
        if (c == 'e' || c == 'E') break;
        if (c < '0' || c > '9') throw DomainError("invalid decimal literal: " + s);
        if (digits > (~(unsigned __int128)0 - 9) / 10) { overflow = true; break; }
        digits = digits * 10 + unsigned(c - '0');
        if (seen_dot) ++frac_digits;
    }
    int expo = 0;
    if (!overflow && i < s.size() && (s[i] == 'e' || s[i] == 'E'))
        expo = std::atoi(s.c_str() + i + 1);
    const int p = expo - frac_digits;

    int cmp = 2;
    if (!overflow) cmp = cmp_double_decimal(std::fabs(d), digits, p);
    if (neg && cmp != 2) cmp = -cmp;

    Interval r;
    switch (cmp) {
        case 0: r.lo = d; r.hi = d; break;                       // exact
        case 1: r.lo = next_down(d); r.hi = d; break;            // |d| above exact value
        case -1: r.lo = d; r.hi = next_up(d); break;             // |d| below exact value
        default: r.lo = next_down(d); r.hi = next_up(d); break;  // undecided: widen both ways
    }
    return r;
}

std::string to_string(const Interval& a) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", a.lo, a.hi);
    return buf;
}

IVector operator+(const IVector& a, const IVector& b) {
    assert(a.size() == b.size());
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVector operator-(const IVector& a, const IVector& b) {
    assert(a.size() == b.size());
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVector operator*(const Interval& s, const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

IVector mid(const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Interval(a[i].mid());
    return r;
}

IVector hull(const IVector& a, const IVector& b) {
    assert(a.size() == b.size());
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

bool contains(const IVector& a, const IVector& b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].contains(b[i])) return false;
    return true;
}

bool contains_interior(const IVector& a, const IVector& b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].contains_interior(b[i])) return false;
    return true;
}

IMatrix IMatrix::identity(std::size_t n) {
    IMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Interval(1.0);
    return m;
}

IMatrix operator+(const IMatrix& a, const IMatrix& b) {
    assert(a.nr == b.nr && a.nc == b.nc);
    IMatrix r(a.nr, a.nc);
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

IMatrix operator-(const IMatrix& a, const IMatrix& b) {
    assert(a.nr == b.nr && a.nc == b.nc);
    IMatrix r(a.nr, a.nc);
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

IMatrix operator*(const Interval& s, const IMatrix& a) {
    IMatrix r(a.nr, a.nc);
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = s * a.e[i];
    return r;
}

IMatrix mat_mul(const IMatrix& a, const IMatrix& b) {
    assert(a.nc == b.nr);
    IMatrix r(a.nr, b.nc);
    for (std::size_t i = 0; i < a.nr; ++i)
        for (std::size_t k = 0; k < a.nc; ++k) {
            const Interval& aik = a.at(i, k);
            if (aik.lo == 0.0 && aik.hi == 0.0) continue;
            for (std::size_t j = 0; j < b.nc; ++j)
                r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

IVector mat_vec(const IMatrix& a, const IVector& v) {
    assert(a.nc == v.size());
    IVector r(a.nr);
    for (std::size_t i = 0; i < a.nr; ++i) {
        Interval acc;
        for (std::size_t j = 0; j < a.nc; ++j) acc += a.at(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

IMatrix transpose(const IMatrix& a) {
    IMatrix r(a.nc, a.nr);
    for (std::size_t i = 0; i < a.nr; ++i)
        for (std::size_t j = 0; j < a.nc; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

IMatrix mid(const IMatrix& a) {
    IMatrix r(a.nr, a.nc);
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = Interval(a.e[i].mid());
    return r;
}

IMatrix hull(const IMatrix& a, const IMatrix& b) {
    assert(a.nr == b.nr && a.nc == b.nc);
    IMatrix r(a.nr, a.nc);
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = hull(a.e[i], b.e[i]);
    return r;
}

Interval det2(const IMatrix& a) {
    assert(a.nr == 2 && a.nc == 2);
    return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
}

IMatrix inverse2x2(const IMatrix& a) {
    const Interval d = det2(a);
    if (!excludes_zero(d)) throw SingularIntervalMatrix();
    IMatrix r(2, 2);
    r.at(0, 0) = a.at(1, 1) / d;
    r.at(0, 1) = -a.at(0, 1) / d;
    r.at(1, 0) = -a.at(1, 0) / d;
    r.at(1, 1) = a.at(0, 0) / d;
    return r;
}

namespace {

// Interval Gaussian elimination with mignitude pivoting.  Sound for any input;
// throws when no pivot provably excludes zero.
IMatrix gauss_solve_block(const IMatrix& a, IMatrix rhs) {
    assert(a.nr == a.nc && a.nr == rhs.nr);
    const std::size_t n = a.nr;
    IMatrix m = a;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = m.at(col, col).abs_inf();
        for (std::size_t i = col + 1; i < n; ++i) {
            const double cand = m.at(i, col).abs_inf();
            if (cand > best) { best = cand; piv = i; }
        }
        if (best == 0.0) throw SingularIntervalMatrix();
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
            for (std::size_t j = 0; j < rhs.nc; ++j) std::swap(rhs.at(col, j), rhs.at(piv, j));
        }
        const Interval pivot = m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Interval f = m.at(i, col) / pivot;
            m.at(i, col) = Interval(0.0);
            for (std::size_t j = col + 1; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
            for (std::size_t j = 0; j < rhs.nc; ++j) rhs.at(i, j) -= f * rhs.at(col, j);
        }
    }
    IMatrix x(n, rhs.nc);
    for (std::size_t col = 0; col < rhs.nc; ++col) {
        for (std::size_t ii = n; ii-- > 0;) {
            Interval acc = rhs.at(ii, col);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= m.at(ii, j) * x.at(j, col);
            x.at(ii, col) = acc / m.at(ii, ii);
        }
    }
    return x;
}

} // namespace

IMatrix inverse(const IMatrix& a) {
    if (a.nr != a.nc) throw SingularIntervalMatrix();
    return gauss_solve_block(a, IMatrix::identity(a.nr));
}

IVector solve(const IMatrix& a, const IVector& b) {
    IMatrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
    const IMatrix x = gauss_solve_block(a, rhs);
    IVector r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = x.at(i, 0);
    return r;
}

} // namespace rigor3bp
