#ifndef QGRASS_QUATERNION_HPP
#define QGRASS_QUATERNION_HPP

#include <cmath>
#include <complex>
#include <ostream>

#include "qgrass/error.hpp"

namespace qgrass {

/// Quaternion q = w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1.
///
/// Plain aggregate value type. Multiplication is the Hamilton product and is
/// not commutative, so operand order matters everywhere in this library.
template <typename Scalar>
struct Quaternion {
  Scalar w{0};
  Scalar x{0};
  Scalar y{0};
  Scalar z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(Scalar real) : w(real) {}
  /// Embeds a + b i.
  constexpr explicit Quaternion(const std::complex<Scalar>& c) : w(c.real()), x(c.imag()) {}

  static constexpr Quaternion identity() { return Quaternion(Scalar(1), 0, 0, 0); }
  static constexpr Quaternion i() { return Quaternion(0, Scalar(1), 0, 0); }
  static constexpr Quaternion j() { return Quaternion(0, 0, Scalar(1), 0); }
  static constexpr Quaternion k() { return Quaternion(0, 0, 0, Scalar(1)); }

  constexpr Scalar squared_norm() const { return w * w + x * x + y * y + z * z; }
  Scalar norm() const { return std::hypot(std::hypot(w, x), std::hypot(y, z)); }
  constexpr bool is_pure() const { return w == Scalar(0); }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(Scalar s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(Scalar s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

using Quaterniond = Quaternion<double>;

template <typename S>
constexpr Quaternion<S> conjugate(const Quaternion<S>& q) {
  return {q.w, -q.x, -q.y, -q.z};
}

template <typename S>
constexpr Quaternion<S> operator-(const Quaternion<S>& q) {
  return {-q.w, -q.x, -q.y, -q.z};
}

template <typename S>
constexpr Quaternion<S> operator+(Quaternion<S> a, const Quaternion<S>& b) {
  return a += b;
}

template <typename S>
constexpr Quaternion<S> operator-(Quaternion<S> a, const Quaternion<S>& b) {
  return a -= b;
}

/// Hamilton product.
template <typename S>
constexpr Quaternion<S> operator*(const Quaternion<S>& p, const Quaternion<S>& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

template <typename S>
constexpr Quaternion<S> operator*(Quaternion<S> q, S s) {
  return q *= s;
}

template <typename S>
constexpr Quaternion<S> operator*(S s, Quaternion<S> q) {
  return q *= s;
}

template <typename S>
constexpr Quaternion<S> operator/(Quaternion<S> q, S s) {
  return q /= s;
}

template <typename S>
constexpr Quaternion<S> quat_mul(const Quaternion<S>& p, const Quaternion<S>& q) {
  return p * q;
}

template <typename S>
S abs(const Quaternion<S>& q) {
  return q.norm();
}

/// q^{-1} = conj(q) / |q|^2. Throws ZeroQuaternion for |q| < 1e-300.
template <typename S>
Quaternion<S> inverse(const Quaternion<S>& q) {
  const S n = q.norm();
  if (!(n >= S(1e-300))) throw Error(Errc::ZeroQuaternion, "cannot invert a zero quaternion");
  // Scale first so |q|^2 cannot underflow for tiny but nonzero q.
  const Quaternion<S> u = q / n;
  return conjugate(u) / n;
}

template <typename S>
std::ostream& operator<<(std::ostream& os, const Quaternion<S>& q) {
  return os << '(' << q.w << ' ' << q.x << "i " << q.y << "j " << q.z << "k)";
}

}  // namespace qgrass

#endif  // QGRASS_QUATERNION_HPP
