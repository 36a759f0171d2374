#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace sphere_re {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : v{x, y, z} {}

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  constexpr double x() const { return v[0]; }
  constexpr double y() const { return v[1]; }
  constexpr double z() const { return v[2]; }

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
  }
  friend constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) {
    return {a[0] / s, a[1] / s, a[2] / s};
  }
  Vec3& operator+=(const Vec3& b) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += b[i];
    return *this;
  }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Dense 3x3 matrix, row-major. Used for inertia tensors, shape matrices
/// and rotations.
struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  static constexpr Mat3 identity() {
    Mat3 m;
    m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
    return m;
  }
  static constexpr Mat3 diagonal(double d0, double d1, double d2) {
    Mat3 m;
    m.a[0][0] = d0;
    m.a[1][1] = d1;
    m.a[2][2] = d2;
    return m;
  }

  constexpr double& operator()(std::size_t r, std::size_t c) { return a[r][c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return a[r][c]; }

  constexpr double trace() const { return a[0][0] + a[1][1] + a[2][2]; }

  constexpr double determinant() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }

  constexpr Mat3 transposed() const {
    Mat3 t;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) t.a[r][c] = a[c][r];
    return t;
  }

  friend constexpr Vec3 operator*(const Mat3& m, const Vec3& x) {
    return {m.a[0][0] * x[0] + m.a[0][1] * x[1] + m.a[0][2] * x[2],
            m.a[1][0] * x[0] + m.a[1][1] * x[1] + m.a[1][2] * x[2],
            m.a[2][0] * x[0] + m.a[2][1] * x[1] + m.a[2][2] * x[2]};
  }

  friend constexpr Mat3 operator*(const Mat3& m, const Mat3& n) {
    Mat3 p;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        p.a[r][c] = m.a[r][0] * n.a[0][c] + m.a[r][1] * n.a[1][c] +
                    m.a[r][2] * n.a[2][c];
    return p;
  }
};

/// Rotation by `angle` about the unit vector `axis` (Rodrigues).
inline Mat3 rotation_about(const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  Mat3 r;
  r.a = {{{t * u[0] * u[0] + c, t * u[0] * u[1] - s * u[2], t * u[0] * u[2] + s * u[1]},
          {t * u[0] * u[1] + s * u[2], t * u[1] * u[1] + c, t * u[1] * u[2] - s * u[0]},
          {t * u[0] * u[2] - s * u[1], t * u[1] * u[2] + s * u[0], t * u[2] * u[2] + c}}};
  return r;
}

}  // namespace sphere_re
