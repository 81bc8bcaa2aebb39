#include "ivelvp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ivelvp {

namespace {

std::string format_point(std::span<const double> p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) os << ", ";
        os << p[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

PointSet::PointSet(std::vector<Point> points, std::vector<std::string> labels, std::optional<Matrix> matrix,
                   std::string description)
    : points_(std::move(points)),
      labels_(std::move(labels)),
      matrix_(std::move(matrix)),
      description_(std::move(description)) {
    if (labels_.size() != points_.size()) {
        labels_.resize(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (labels_[i].empty()) labels_[i] = std::to_string(i);
        }
    }
}

double PointSet::dist(std::size_t i, std::size_t j) const {
    if (matrix_) return (*matrix_)[i][j];
    return euclidean(points_[i], points_[j]);
}

std::optional<std::size_t> PointSet::find(std::span<const double> p) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::equal(points_[i].begin(), points_[i].end(), p.begin(), p.end())) return i;
    }
    return std::nullopt;
}

std::size_t PointSet::index_of(std::span<const double> p) const {
    if (auto i = find(p)) return *i;
    throw Error(ErrorKind::Domain, "point " + format_point(p) + " is not in the evaluated set",
                Witness{{Point(p.begin(), p.end())}, {}});
}

Domain Domain::finite(std::vector<std::string> labels, std::vector<Point> coords, Matrix dist, double tol) {
    const std::size_t n = coords.size();
    if (n == 0) throw Error(ErrorKind::Domain, "finite domain has no points");
    if (!labels.empty() && labels.size() != n) {
        throw Error(ErrorKind::Domain, "label count does not match point count");
    }
    if (labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    const std::size_t d = coords.front().size();
    for (const auto& c : coords) {
        if (c.size() != d) throw Error(ErrorKind::Domain, "points have inconsistent dimensions");
    }
    if (dist.size() != n) throw Error(ErrorKind::Domain, "distance matrix must be square with one row per point");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) throw Error(ErrorKind::Domain, "distance matrix must be square");
    }
    auto pair_witness = [&](std::size_t i, std::size_t j) { return Witness{{coords[i], coords[j]}, {}}; };
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(dist[i][i]) > tol) {
            throw Error(ErrorKind::Domain, "distance matrix has nonzero diagonal at " + labels[i],
                        pair_witness(i, i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(dist[i][j]) || dist[i][j] < 0.0) {
                throw Error(ErrorKind::Domain, "distance matrix has a negative or non-finite entry",
                            pair_witness(i, j));
            }
            if (std::abs(dist[i][j] - dist[j][i]) > tol) {
                throw Error(ErrorKind::Domain, "distance matrix is not symmetric between " + labels[i] +
                                                   " and " + labels[j],
                            pair_witness(i, j));
            }
            if (i != j && dist[i][j] <= 0.0) {
                throw Error(ErrorKind::Domain, "distinct points " + labels[i] + " and " + labels[j] +
                                                   " are at distance zero",
                            pair_witness(i, j));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (dist[i][k] > dist[i][j] + dist[j][k] + tol) {
                    throw Error(ErrorKind::Domain,
                                "triangle inequality fails for " + labels[i] + ", " + labels[j] + ", " + labels[k],
                                Witness{{coords[i], coords[j], coords[k]}, {}});
                }
            }
        }
    }
    return Domain(FinitePoints{std::move(labels), std::move(coords), std::move(dist)});
}

Domain Domain::finite_euclidean(std::vector<Point> coords, std::vector<std::string> labels) {
    Matrix dist(coords.size(), std::vector<double>(coords.size(), 0.0));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t j = 0; j < coords.size(); ++j) dist[i][j] = euclidean(coords[i], coords[j]);
    }
    return finite(std::move(labels), std::move(coords), std::move(dist));
}

Domain Domain::box(std::vector<double> lower, std::vector<double> upper, std::size_t grid_per_dim) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw Error(ErrorKind::Domain, "box corners must be nonempty and of equal dimension");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) throw Error(ErrorKind::Domain, "box lower corner must be below upper corner");
    }
    if (grid_per_dim < 2) throw Error(ErrorKind::Domain, "box grid needs at least 2 points per axis");
    return Domain(Box{std::move(lower), std::move(upper), grid_per_dim});
}

std::size_t Domain::dim() const {
    if (is_box()) return box().lower.size();
    return finite_points().coords.front().size();
}

bool Domain::contains(std::span<const double> p) const {
    if (p.size() != dim()) return false;
    if (is_box()) {
        const auto& b = box();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < b.lower[i] || p[i] > b.upper[i]) return false;
        }
        return true;
    }
    for (const auto& c : finite_points().coords) {
        if (std::equal(c.begin(), c.end(), p.begin(), p.end())) return true;
    }
    return false;
}

std::vector<double> Domain::spacing() const {
    const auto& b = box();
    std::vector<double> h(b.lower.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = (b.upper[i] - b.lower[i]) / static_cast<double>(b.grid_per_dim - 1);
    }
    return h;
}

PointSet Domain::enumerate(std::span<const Point> extra) const {
    if (is_finite()) {
        const auto& fp = finite_points();
        for (const auto& e : extra) {
            if (!contains(e)) {
                throw Error(ErrorKind::Domain, "point " + format_point(e) + " is not in the finite space",
                            Witness{{e}, {}});
            }
        }
        return PointSet(fp.coords, fp.labels, fp.dist,
                        "all " + std::to_string(fp.coords.size()) + " points of the finite space");
    }
    const auto& b = box();
    const std::size_t n = b.lower.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= b.grid_per_dim;
    const auto h = spacing();
    std::vector<Point> pts;
    pts.reserve(total + extra.size());
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t k = 0; k < total; ++k) {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = idx[i] + 1 == b.grid_per_dim ? b.upper[i] : b.lower[i] + h[i] * static_cast<double>(idx[i]);
        }
        pts.push_back(std::move(p));
        for (std::size_t i = n; i-- > 0;) {
            if (++idx[i] < b.grid_per_dim) break;
            idx[i] = 0;
        }
    }
    std::ostringstream desc;
    desc << "grid of " << total << " points (" << b.grid_per_dim << " per axis) on box [";
    for (std::size_t i = 0; i < n; ++i) desc << (i ? ", " : "") << b.lower[i];
    desc << "] x [";
    for (std::size_t i = 0; i < n; ++i) desc << (i ? ", " : "") << b.upper[i];
    desc << "]";
    std::size_t added = 0;
    for (const auto& e : extra) {
        if (e.size() != n) throw Error(ErrorKind::Domain, "extra point has wrong dimension", Witness{{e}, {}});
        auto pos = std::lower_bound(pts.begin(), pts.end(), e);
        if (pos != pts.end() && *pos == e) continue;
        pts.insert(pos, e);
        ++added;
    }
    if (added > 0) desc << " plus " << added << " supplied point(s)";
    return PointSet(std::move(pts), {}, std::nullopt, desc.str());
}

}  // namespace ivelvp
