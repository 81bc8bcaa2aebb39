#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ivelvp/ekeland.hpp"
#include "ivelvp/gh_calculus.hpp"
#include "ivelvp/interval.hpp"

namespace ivelvp {

/// Endpoint function of (t, xl, xu, u).
using StateFn = std::function<double(double t, double xl, double xu, std::span<const double> u)>;

/// Piecewise-constant control on a uniform partition of [0, T].
class PiecewiseConstantControl {
public:
    PiecewiseConstantControl() = default;
    PiecewiseConstantControl(std::vector<Point> pieces, double horizon);

    /// Constant control with no pieces split.
    static PiecewiseConstantControl constant(Point value, double horizon);

    std::size_t pieces() const noexcept { return pieces_.size(); }
    std::size_t dim() const noexcept { return pieces_.empty() ? 0 : pieces_.front().size(); }
    const Point& piece(std::size_t k) const { return pieces_[k]; }
    const std::vector<Point>& values() const noexcept { return pieces_; }
    double horizon() const noexcept { return horizon_; }
    /// Value on the piece containing t (right-continuous, last piece closed).
    const Point& at(double t) const;
    /// Flattened piece values.
    Point flatten() const;

private:
    std::vector<Point> pieces_;
    double horizon_ = 1.0;
};

/// Sup-norm distance: max over pieces of the Euclidean distance.
double control_distance(const PiecewiseConstantControl& a, const PiecewiseConstantControl& b);

struct IntervalIVP {
    StateFn lower;
    StateFn upper;
    Interval x0;
    double horizon = 1.0;
    DiffMode mode = DiffMode::I;
    /// 0 selects horizon / 1000.
    double step = 0.0;
};

struct IntervalTrajectory {
    std::vector<double> times;
    std::vector<Interval> states;
    DiffMode mode = DiffMode::I;
    /// Last grid time with a valid state.
    double valid_until = 0.0;
    bool complete = false;
    /// Grid steps per control piece (even).
    std::size_t steps_per_piece = 0;
};

/// Fixed-step RK4 on the endpoint system. Mode (i): xl' = f_lower,
/// xu' = f_upper. Mode (ii): xl' = f_upper, xu' = f_lower, truncated at the
/// first step where xl > xu. The step is shrunk so that every control piece
/// spans an even number of steps.
IntervalTrajectory solve_ivp(const IntervalIVP& p, const PiecewiseConstantControl& u);

struct StateRegion {
    Interval t;
    Interval xl;
    Interval xu;
    Point u_lower;
    Point u_upper;
};

struct LipschitzEstimate {
    double k1 = 0.0;
    double k2 = 0.0;
};

/// Largest observed ratios over seeded random pairs: k1 with t, u fixed and
/// the state varied, k2 with t, x fixed and u varied.
LipschitzEstimate lipschitz_estimate(const IntervalIVP& p, const StateRegion& region, std::size_t samples = 2000,
                                     std::uint64_t seed = 0);

struct CostFn {
    StateFn lower;
    StateFn upper;
};

/// Integral of the cost along a complete trajectory over grid indices
/// [begin, end), Simpson per control piece.
Interval integrate_cost(const IntervalTrajectory& x, const PiecewiseConstantControl& u, const CostFn& L,
                        std::size_t begin, std::size_t end);

/// F(u) = integral over [0, T] of L(t, x(t), u(t)). Rejects a truncated
/// trajectory (Domain) and a negative cost endpoint (Hypothesis).
Interval cost_functional(const IntervalIVP& p, const PiecewiseConstantControl& u, const CostFn& L);

/// Quantized family: K pieces, each a point of a grid with `levels` values
/// per axis of the box [lower, upper].
struct ControlFamily {
    std::size_t pieces = 1;
    Point lower;
    Point upper;
    std::size_t levels = 2;
    double horizon = 1.0;

    std::size_t size() const;
    double level(std::size_t axis, std::size_t j) const;
    PiecewiseConstantControl member(std::size_t index) const;
    /// Index of a control whose pieces sit on the grid (within 1e-9).
    std::size_t index_of(const PiecewiseConstantControl& u) const;
};

inline constexpr std::size_t kMaxFamilySize = 10000;

struct ExcludedControl {
    std::size_t index = 0;
    std::string reason;
};

struct ControlSearchResult {
    PiecewiseConstantControl control;
    std::size_t index = 0;
    Interval cost;
    EkelandCertificate certificate;  // points are flattened piece values
    std::vector<ExcludedControl> excluded;
    std::size_t family_size = 0;
};

ControlSearchResult epsilon_minimal_control(const IntervalIVP& p, const CostFn& L, double epsilon,
                                            const ControlFamily& family, const PiecewiseConstantControl& u0);

}  // namespace ivelvp
