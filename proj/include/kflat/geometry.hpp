#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kflat {

/// Error raised by every operation whose contract names an error condition.
/// The message carries the condition name (e.g. "invalid cutoff").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  double angle() const { return std::atan2(y, x); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Complex multiplication, used to apply rotations stored as unit vectors.
constexpr Vec2 cmul(Vec2 a, Vec2 b) { return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x}; }
constexpr Vec2 conj(Vec2 a) { return {a.x, -a.y}; }

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

/// exp(2 pi i j / k). Multiples of 30 degrees come out exactly (to the
/// correctly rounded sqrt(3)/2), so k in {1,2,3,4,6,12} produce no drift.
inline Vec2 root_of_unity(int j, int k) {
  j = mod(j, k);
  if ((12 * j) % k == 0) {
    static const double h = std::sqrt(3.0) / 2.0;
    static const Vec2 table[12] = {{1, 0},   {h, 0.5},   {0.5, h},   {0, 1},
                                   {-0.5, h}, {-h, 0.5},  {-1, 0},    {-h, -0.5},
                                   {-0.5, -h}, {0, -1},   {0.5, -h},  {h, -0.5}};
    return table[(12 * j) / k];
  }
  const double a = kTwoPi * j / k;
  return {std::cos(a), std::sin(a)};
}

/// Comparison policy for floating-point coordinates.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-12;
  double angle_eps = 1e-9;

  bool near(double a, double b) const {
    return std::abs(a - b) <= abs_eps + rel_eps * std::max(std::abs(a), std::abs(b));
  }
  bool near(Vec2 a, Vec2 b) const { return near(a.x, b.x) && near(a.y, b.y); }
  bool is_zero(double a) const { return std::abs(a) <= abs_eps; }
  bool valid() const { return abs_eps > 0 && rel_eps > 0 && angle_eps > 0; }
};

/// Angle in [0, 2 pi) swept counterclockwise from direction a to direction b.
inline double ccw_angle(Vec2 a, Vec2 b) {
  double t = std::atan2(cross(a, b), dot(a, b));
  if (t < 0) t += kTwoPi;
  return t;
}

/// Signed angle in (-pi, pi] from a to b.
inline double signed_angle(Vec2 a, Vec2 b) { return std::atan2(cross(a, b), dot(a, b)); }

/// True when segments [a,b] and [c,d] cross at a point interior to both.
inline bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  return ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
         ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps));
}

/// Euclidean distance from p to the segment [a,b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = d.norm2();
  double t = len2 > 0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + d * t)).norm();
}

}  // namespace kflat
