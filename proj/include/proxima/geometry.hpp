#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace proxima {

/// Tolerance under which two points are considered the same element.
inline constexpr double kDuplicateTolerance = 1e-12;

/// Element of the ambient space: a fixed-length tuple of finite reals.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// Coordinate-wise maximum distance.
double chebyshev_distance(const Point& a, const Point& b);

/// True when every coordinate differs by at most `tolerance`.
bool same_point(const Point& a, const Point& b, double tolerance = kDuplicateTolerance);

std::string to_string(const Point& p);

struct ExplicitSource {
    friend bool operator==(const ExplicitSource&, const ExplicitSource&) = default;
};

struct SegmentSource {
    Point from;
    Point to;
    std::size_t samples = 0;
    friend bool operator==(const SegmentSource&, const SegmentSource&) = default;
};

using PointSetSource = std::variant<ExplicitSource, SegmentSource>;

/// Finite, indexed, labelled collection of points of one dimension.
/// Invariants: non-empty, common dimension, finite coordinates, no two points
/// within kDuplicateTolerance of each other.
class PointSet {
public:
    static PointSet from_points(std::string label, std::vector<Point> points);

    /// `samples` evenly spaced points from `from` to `to`, both ends included.
    /// A single sample yields `from`.
    static PointSet segment(std::string label, Point from, Point to, std::size_t samples);

    const std::string& label() const noexcept { return label_; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const PointSetSource& source() const noexcept { return source_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dimension() const noexcept { return points_.front().dimension(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// Index of the first member within `tolerance` of `p`, or npos.
    std::size_t find(const Point& p, double tolerance = kDuplicateTolerance) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    PointSet(std::string label, std::vector<Point> points, PointSetSource source);

    std::string label_;
    std::vector<Point> points_;
    PointSetSource source_;
};

}  // namespace proxima
