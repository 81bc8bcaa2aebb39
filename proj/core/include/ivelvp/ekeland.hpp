#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivelvp/domain.hpp"
#include "ivelvp/gh_calculus.hpp"
#include "ivelvp/interval.hpp"
#include "ivelvp/ivfunc.hpp"

namespace ivelvp {

/// Metric on an indexed finite set.
using IndexMetric = std::function<double(std::size_t, std::size_t)>;

/// Interval-valued bifunction on an indexed finite set.
using IndexBifunction = std::function<Interval(std::size_t, std::size_t)>;

inline constexpr std::size_t kBoxIterationCap = 100000;

// ---------------------------------------------------------------------------
// Descent on a finite indexed set
// ---------------------------------------------------------------------------

struct DescentResult {
    std::size_t x_bar = 0;
    /// Visited indices, starting with the start index and ending with x_bar.
    std::vector<std::size_t> path;
    /// The iteration cap was hit; x_bar is then the last iterate.
    bool capped = false;
};

/// Ekeland descent. At x, S(x) = {y : values[y] + eps d(x,y) <= values[x]};
/// the next iterate is the argmin of lo + hi over S(x) \ {x} (lowest index
/// on ties). Stops when S(x) = {x} or after max_iterations steps.
DescentResult ekeland_descent(std::span<const Interval> values, const IndexMetric& dist, double epsilon,
                              std::size_t start, std::size_t max_iterations);

/// Certificate evidence expressed in indices of the evaluated set.
struct IndexCertificate {
    std::size_t x_bar = 0;
    std::size_t x0 = 0;
    double epsilon = 0.0;
    double distance = 0.0;  // d(x0, x_bar)
    bool premise_holds = false;
    bool cond_a = false;
    std::optional<bool> cond_b;
    std::optional<std::size_t> cond_c_witness;
    /// f(x) + [eps d, eps d] is not strictly below f(x_bar) for every x,
    /// including x_bar itself.
    bool strict_c = false;
    Interval infimum;
};

/// Brute-force verification of the three Ekeland conclusions for a given
/// x_bar. Conclusion (b) is only evaluated when x0 is eps-approximately
/// minimal for both endpoints over the set.
IndexCertificate certify_ekeland(std::span<const Interval> values, const IndexMetric& dist, double epsilon,
                                 std::size_t x0, std::size_t x_bar);

// ---------------------------------------------------------------------------
// Point-level solvers
// ---------------------------------------------------------------------------

struct EkelandCertificate {
    Point x_bar;
    Point x0;
    double epsilon = 0.0;
    Interval value_x_bar;
    Interval value_x0;
    Interval infimum;  // over the evaluated set
    double distance = 0.0;
    bool premise_holds = false;
    bool cond_a = false;
    std::optional<bool> cond_b;
    std::optional<Point> cond_c_witness;
    bool strict_c = false;
    std::string verified_over;
    std::size_t evaluated = 0;
    std::vector<Point> trace;

    bool verified() const { return cond_a && cond_b.value_or(true) && !cond_c_witness && strict_c; }
};

/// Epsilon-minimization of f from x0. On a box the evaluated set is the grid
/// plus x0; on a finite space it is the whole space.
EkelandCertificate ekeland_minimize(const IntervalFn& f, double epsilon, std::span<const double> x0);

/// Same on an explicit evaluated set with precomputed values.
EkelandCertificate ekeland_minimize(std::span<const Point> points, std::span<const Interval> values,
                                    const IndexMetric& dist, double epsilon, std::size_t x0,
                                    std::size_t max_iterations, const std::string& description);
EkelandCertificate ekeland_minimize(const PointSet& set, std::span<const Interval> values, double epsilon,
                                    std::size_t x0, std::size_t max_iterations = kBoxIterationCap);

// ---------------------------------------------------------------------------
// Bifunction form
// ---------------------------------------------------------------------------

struct TriangleCheck {
    bool holds = true;
    bool exhaustive = true;
    std::size_t triples_checked = 0;
    /// (x, y, z) with F(x,z) not below F(x,y) + F(y,z).
    std::optional<std::array<std::size_t, 3>> witness;
};

/// Checks F(x,z) <= F(x,y) + F(y,z) on every triple when n <= exhaustive_limit,
/// otherwise on `samples` seeded random triples plus every diagonal triple.
TriangleCheck check_triangle(std::size_t n, const IndexBifunction& F, std::uint64_t seed = 0,
                             std::size_t exhaustive_limit = 1000, std::size_t samples = 10000);

struct BifunctionCertificate {
    std::size_t x_bar = 0;
    std::size_t x0 = 0;
    double epsilon = 0.0;
    TriangleCheck triangle;
    bool cond_a = false;                        // F(x0, x_bar) <= F(x0, x0)
    std::optional<std::size_t> cond_b_witness;  // x != x_bar with F(x_bar,x) + eps d <= [0,0]
    bool strict_b = false;                      // F(x_bar,x) + eps d not strictly below [0,0], all x
    std::vector<std::size_t> trace;

    bool verified() const { return cond_a && !cond_b_witness && strict_b; }
};

struct BifunctionOptions {
    /// Throw Hypothesis on a triangle violation (otherwise solve anyway and
    /// leave the violation in the certificate).
    bool require_triangle = true;
    std::uint64_t seed = 0;
    std::size_t max_iterations = kBoxIterationCap;
};

BifunctionCertificate ekeland_bifunction(std::size_t n, const IndexBifunction& F, const IndexMetric& dist,
                                         double epsilon, std::size_t x0, const BifunctionOptions& options = {});

// ---------------------------------------------------------------------------
// Fixed points and minimal solutions
// ---------------------------------------------------------------------------

struct CaristiResult {
    Point fixed_point;
    std::size_t index = 0;
    EkelandCertificate certificate;
};

/// Caristi fixed point of a set-valued map T on a finite space, given as
/// T[i] = indices of the images of point i. Rejects (Hypothesis, witness
/// pair) when some y in T(x) has f(y) + [d(x,y), d(x,y)] not below f(x).
CaristiResult caristi_fixed_point(const std::vector<std::vector<std::size_t>>& T, const IntervalFn& f,
                                  std::size_t start = 0);

struct TakahashiResult {
    Point minimal_point;
    std::size_t index = 0;
    EkelandCertificate certificate;
};

/// Takahashi minimization on a finite space. Rejects (Hypothesis, stuck
/// point) when a non-minimal x has no y != x with f(y) + d(x,y) <= f(x).
TakahashiResult takahashi_minimize(const IntervalFn& f, std::size_t start = 0);

// ---------------------------------------------------------------------------
// Derivative-based checks
// ---------------------------------------------------------------------------

enum class CriticalVerdict { Critical, NotCritical, Inconclusive };
std::string to_string(CriticalVerdict v);

struct DirectionReport {
    Point direction;
    GHDerivative derivative;
    bool contains_zero = false;
};

struct CriticalReport {
    CriticalVerdict verdict = CriticalVerdict::Inconclusive;
    std::vector<DirectionReport> directions;
};

CriticalReport critical_point_check(const IntervalFn& f, std::span<const double> x, std::span<const Point> directions,
                                    double tol, const StepSchedule& schedule = {});

/// +/- unit vectors along every axis of R^n.
std::vector<Point> axis_directions(std::size_t n);

struct StationaryDirection {
    Point direction;
    GHDerivative derivative;
    bool contains_zero = false;
    bool within_band = false;       // -eps <= lo <= hi <= eps
    bool not_below_band = false;    // not strictly below [-eps, -eps], up to the derivative residual
    bool disjunction() const { return contains_zero || within_band; }
};

struct StationaryIterate {
    double epsilon = 0.0;
    Point x;
    Interval value;
    bool near_infimum = false;  // value <= infimum + [eps, eps]
    EkelandCertificate certificate;
    std::vector<StationaryDirection> directions;
};

struct StationaryReport {
    Interval infimum;
    std::vector<StationaryIterate> iterates;
    double final_value_gap = 0.0;       // d_H(f(x_N), infimum)
    double final_derivative_gap = 0.0;  // max_h d_H(f'(x_N)(h), [0,0])
};

/// Runs epsilon-minimization for each epsilon in a decreasing schedule, each
/// started from the previous iterate, and records values and directional
/// derivatives along the way.
StationaryReport stationary_sequence(const IntervalFn& f, std::span<const double> epsilons, std::span<const double> start,
                                     const StepSchedule& schedule = {});

enum class ProbeVerdict { HeuristicPass, Fail };
std::string to_string(ProbeVerdict v);

struct PalaisSmaleOptions {
    std::optional<Interval> level;  // the C of the (PS)_C form
    double cluster_tol = 1e-3;
    double value_tol = 1e-2;
    double derivative_tol = 1e-2;
    std::vector<Point> directions;  // default: axis directions
    StepSchedule schedule;
};

struct PalaisSmaleReport {
    ProbeVerdict bounded = ProbeVerdict::HeuristicPass;     // (i)
    ProbeVerdict derivative = ProbeVerdict::HeuristicPass;  // (ii)
    ProbeVerdict cluster = ProbeVerdict::HeuristicPass;     // (iii)
    std::optional<std::array<std::size_t, 2>> cluster_pair;
    /// False when the sequence satisfies (i) and (ii) but shows no cluster.
    bool passed = true;
    std::size_t cutoff = 0;
};

/// Palais-Smale probe on a finite prefix of a sequence. Conditions are
/// checked on the tail starting at the cutoff (second half).
PalaisSmaleReport palais_smale_probe(const IntervalFn& f, std::span<const Point> sequence,
                                     const PalaisSmaleOptions& options = {});

}  // namespace ivelvp
