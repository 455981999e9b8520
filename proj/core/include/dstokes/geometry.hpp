#pragma once

#include <array>
#include <cmath>

namespace dstokes {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
  friend constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
  friend constexpr Point2 operator*(double s, Point2 a) { return a *= s; }
  friend constexpr Point2 operator*(Point2 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

/// Velocity values share the point type; the distinction is only semantic.
using Vec2 = Point2;

/// Row-major 2x2 matrix, row i = gradient of component i.
using Mat2 = std::array<std::array<double, 2>, 2>;

constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }
constexpr Point2 midpoint(const Point2& a, const Point2& b) { return 0.5 * (a + b); }

/// Twice the signed area of the triangle (a, b, c); positive for counter-clockwise order.
constexpr double signed_area2(const Point2& a, const Point2& b, const Point2& c) {
  return cross(b - a, c - a);
}

/// Barycentric coordinates (lambda0, lambda1, lambda2), summing to one.
using Barycentric = std::array<double, 3>;

constexpr Point2 from_barycentric(const std::array<Point2, 3>& v, const Barycentric& l) {
  return l[0] * v[0] + l[1] * v[1] + l[2] * v[2];
}

}  // namespace dstokes
