#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ivelvp/domain.hpp"
#include "ivelvp/interval.hpp"
#include "ivelvp/ivfunc.hpp"

namespace ivelvp {

/// Piecewise-linear path p0 -> nodes -> p1.
struct PathSpec {
    Point p0;
    Point p1;
    std::vector<Point> nodes;

    std::vector<Point> vertices() const;
};

/// Phi(l) = [max lower(f(l(t))), max upper(f(l(t)))] with the points where
/// each endpoint maximum is attained.
struct PathValue {
    Interval value;
    Point argmax_lower;
    Point argmax_upper;
};

struct MountainPassOptions {
    std::size_t nodes = 4;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    /// Path evaluations allowed per endpoint objective and restart.
    std::size_t budget = 4000;
    double min_step = 1e-6;
    /// Samples per segment before golden-section refinement.
    std::size_t segment_samples = 64;
    /// Grid points per axis on each face of the boundary of omega.
    std::size_t boundary_grid = 41;
};

struct MountainPassResult {
    Interval alpha;
    Interval value;  // C = [best max of lower, best max of upper]
    Point argmax_lower;
    Point argmax_upper;
    PathSpec path_lower;
    PathSpec path_upper;
    bool stabilized = false;
    std::size_t paths_evaluated = 0;
    /// Evaluated paths whose value is not above alpha.
    std::size_t alpha_violations = 0;
};

PathValue path_value(const IntervalFn& f, const PathSpec& path, const Box& omega, std::size_t segment_samples = 64);

/// Sampled alpha = [inf lower, inf upper] over the boundary of omega.
Interval boundary_infimum(const IntervalFn& f, const Box& omega, std::size_t boundary_grid);

/// Discretized mountain pass: minimizes Phi over paths with `nodes` free
/// interior vertices by coordinate descent with seeded restarts (restart 0
/// starts from the straight segment). Rejects with Hypothesis when f(p0) or
/// f(p1) is not strictly below alpha. `omega` is an open box containing p0
/// but not p1.
MountainPassResult mountain_pass(const IntervalFn& f, const Point& p0, const Point& p1, const Box& omega,
                                 const MountainPassOptions& options = {});

}  // namespace ivelvp
