#pragma once

#include <optional>
#include <ostream>

namespace ivelvp {

/// Closed bounded real interval [lo, hi] with finite endpoints.
///
/// Construction rejects lo > hi and non-finite endpoints (throws
/// Error of kind InvalidArgument); malformed intervals are never repaired.
class Interval {
public:
    constexpr Interval() noexcept = default;
    Interval(double lo, double hi);

    /// Degenerate interval [v, v].
    static Interval point(double v) { return Interval(v, v); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double width() const noexcept { return hi_ - lo_; }
    constexpr double mid() const noexcept { return 0.5 * (lo_ + hi_); }
    constexpr bool degenerate() const noexcept { return lo_ == hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Outcome of comparing two intervals under the componentwise orders.
/// `le` is the weak order (both endpoints <=), `lt` the strict one (both <).
struct OrderVerdict {
    bool le = false;
    bool lt = false;

    bool not_le() const noexcept { return !le; }
    bool not_lt() const noexcept { return !lt; }
};

Interval add(const Interval& a, const Interval& b);
Interval scalar_mul(double lambda, const Interval& a);

/// Generalized Hukuhara difference; always exists.
Interval gh_diff(const Interval& a, const Interval& b);

/// Hukuhara difference C with A = B + C. Exists only when
/// width(A) >= width(B) - tol; within the tolerance band a slightly inverted
/// result collapses to its midpoint.
std::optional<Interval> hukuhara_diff(const Interval& a, const Interval& b, double tol = 0.0);

double hausdorff(const Interval& a, const Interval& b);

OrderVerdict compare(const Interval& a, const Interval& b);

inline bool weakly_below(const Interval& a, const Interval& b) { return compare(a, b).le; }
inline bool strictly_below(const Interval& a, const Interval& b) { return compare(a, b).lt; }

bool contains_zero(const Interval& a, double tol = 0.0);

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator*(double lambda, const Interval& a) { return scalar_mul(lambda, a); }
inline Interval operator-(const Interval& a) { return scalar_mul(-1.0, a); }

/// a + [s, s]; the shift used by every Ekeland-type penalty term.
inline Interval shifted(const Interval& a, double s) { return Interval(a.lo() + s, a.hi() + s); }

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace ivelvp
