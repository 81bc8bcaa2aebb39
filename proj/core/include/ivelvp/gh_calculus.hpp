#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivelvp/interval.hpp"
#include "ivelvp/ivfunc.hpp"

namespace ivelvp {

/// Geometric step schedule t_k = first * 2^-k, k = 0..count-1, and the
/// d_H tolerance between successive quotients that declares convergence.
struct StepSchedule {
    double first = 1e-2;
    int count = 21;
    double tol = 1e-6;

    double step(int k) const;
};

struct GHDerivative {
    Interval value;
    std::vector<double> t_sequence;
    bool converged = false;
    double residual = 0.0;
};

/// One-sided directional derivative lim_{t->0+} (f(x+th) (-)gH f(x)) / t.
///
/// Quotients are formed along the schedule until two successive ones are
/// within tol in d_H. The reported value is the Richardson-extrapolated
/// pair 2 Q(t_{k+1}) - Q(t_k) endpointwise, falling back to Q(t_{k+1}) if
/// extrapolation inverts the endpoints. Non-convergence is reported through
/// `converged`, never thrown.
GHDerivative gateaux(const IntervalFn& f, std::span<const double> x, std::span<const double> h,
                     const StepSchedule& schedule = {});

/// Interval-valued curve t -> [lower(t), upper(t)] on [a, b].
struct IntervalCurve {
    std::function<double(double)> lower;
    std::function<double(double)> upper;
    double a = 0.0;
    double b = 1.0;

    Interval operator()(double t) const;
};

enum class DiffMode { I, II };

std::string to_string(DiffMode m);

struct GeneralizedDerivative {
    std::optional<Interval> value;
    /// Why the derivative does not exist (empty when it does).
    std::string failure;
    std::vector<double> h_sequence;
};

/// Generalized derivative in mode (i) (h > 0) or (ii) (h < 0): both
/// Hukuhara quotient families must exist along the schedule, converge, and
/// agree within the schedule tolerance.
GeneralizedDerivative generalized_derivative(const IntervalCurve& c, double t0, DiffMode mode,
                                             const StepSchedule& schedule = {});

/// Composite Simpson rule for a scalar function (n_panels rounded up to even).
double simpson(const std::function<double(double)>& g, double a, double b, std::size_t n_panels);

/// Aumann integral via independent endpoint quadrature.
Interval aumann_integral(const IntervalCurve& c, double a, double b, std::size_t n_panels = 1024);

}  // namespace ivelvp
