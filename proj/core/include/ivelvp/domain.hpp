#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ivelvp/error.hpp"

namespace ivelvp {

using Matrix = std::vector<std::vector<double>>;

double euclidean(std::span<const double> a, std::span<const double> b);

/// Finite metric space: labeled points with coordinates and an explicit
/// distance matrix (Euclidean on the coordinates when none is supplied).
struct FinitePoints {
    std::vector<std::string> labels;
    std::vector<Point> coords;
    Matrix dist;
};

/// Axis-aligned box in R^n, probed on a regular grid with `grid_per_dim`
/// points per axis (endpoints included). Metric is Euclidean.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t grid_per_dim = 2;
};

/// The finite set of points a solver actually evaluates, with its metric.
/// Every certificate produced by this library refers to one of these.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<Point> points, std::vector<std::string> labels, std::optional<Matrix> matrix,
             std::string description);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::string& description() const noexcept { return description_; }

    double dist(std::size_t i, std::size_t j) const;

    /// Index of a point with exactly these coordinates.
    std::optional<std::size_t> find(std::span<const double> p) const;
    /// Like find() but throws a Domain error naming the point.
    std::size_t index_of(std::span<const double> p) const;

private:
    std::vector<Point> points_;
    std::vector<std::string> labels_;
    std::optional<Matrix> matrix_;
    std::string description_;
};

class Domain {
public:
    /// Validates that `dist` is a metric (square, zero diagonal, symmetric,
    /// positive off the diagonal, triangle inequality) within `tol`.
    static Domain finite(std::vector<std::string> labels, std::vector<Point> coords, Matrix dist,
                         double tol = 1e-12);
    static Domain finite_euclidean(std::vector<Point> coords, std::vector<std::string> labels = {});
    static Domain box(std::vector<double> lower, std::vector<double> upper, std::size_t grid_per_dim);

    bool is_finite() const noexcept { return std::holds_alternative<FinitePoints>(data_); }
    bool is_box() const noexcept { return std::holds_alternative<Box>(data_); }
    const FinitePoints& finite_points() const { return std::get<FinitePoints>(data_); }
    const Box& box() const { return std::get<Box>(data_); }

    std::size_t dim() const;
    bool contains(std::span<const double> p) const;

    /// Evaluated point set: all points of a finite space, or the grid of a box
    /// (lexicographic order, first coordinate most significant). Extra points
    /// are merged into a box grid keeping lexicographic order; for a finite
    /// space they must already be members.
    PointSet enumerate(std::span<const Point> extra = {}) const;

    /// Grid spacing along each axis of a box.
    std::vector<double> spacing() const;

private:
    explicit Domain(std::variant<FinitePoints, Box> d) : data_(std::move(d)) {}
    std::variant<FinitePoints, Box> data_;
};

}  // namespace ivelvp
