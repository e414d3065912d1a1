#include "proxima/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "proxima/error.hpp"
#include "proxima/expr.hpp"

namespace proxima {

double chebyshev_distance(const Point& a, const Point& b) {
    if (a.dimension() != b.dimension()) throw InstanceError("dimension mismatch between points");
    double d = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

bool same_point(const Point& a, const Point& b, double tolerance) {
    return chebyshev_distance(a, b) <= tolerance;
}

std::string to_string(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        if (i) out += ", ";
        out += expr::format_real(p[i]);
    }
    return out + ")";
}

PointSet::PointSet(std::string label, std::vector<Point> points, PointSetSource source)
    : label_(std::move(label)), points_(std::move(points)), source_(std::move(source)) {
    if (points_.empty()) throw InstanceError("point set '" + label_ + "' is empty");
    const std::size_t dim = points_.front().dimension();
    if (dim == 0) throw InstanceError("point set '" + label_ + "' has zero-dimensional points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Point& p = points_[i];
        if (p.dimension() != dim)
            throw InstanceError("point set '" + label_ + "' mixes dimensions " +
                                std::to_string(dim) + " and " + std::to_string(p.dimension()));
        for (double c : p.coords())
            if (!std::isfinite(c))
                throw InstanceError("point set '" + label_ + "' has a non-finite coordinate");
        for (std::size_t j = 0; j < i; ++j)
            if (same_point(points_[j], p))
                throw InstanceError("point set '" + label_ + "' has duplicate points at indices " +
                                    std::to_string(j) + " and " + std::to_string(i));
    }
}

PointSet PointSet::from_points(std::string label, std::vector<Point> points) {
    return PointSet(std::move(label), std::move(points), ExplicitSource{});
}

PointSet PointSet::segment(std::string label, Point from, Point to, std::size_t samples) {
    if (samples == 0) throw InstanceError("segment '" + label + "' needs at least one sample");
    if (from.dimension() != to.dimension())
        throw InstanceError("segment '" + label + "' endpoints differ in dimension");

    std::vector<Point> points;
    points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        if (i + 1 == samples && samples > 1) {
            points.push_back(to);  // exact far endpoint
            continue;
        }
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        std::vector<double> coords(from.dimension());
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = from[k] + t * (to[k] - from[k]);
        points.emplace_back(std::move(coords));
    }
    return PointSet(std::move(label), std::move(points),
                    SegmentSource{std::move(from), std::move(to), samples});
}

std::size_t PointSet::find(const Point& p, double tolerance) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (same_point(points_[i], p, tolerance)) return i;
    return npos;
}

}  // namespace proxima
