#ifndef QGRASS_QUAT_MATRIX_HPP
#define QGRASS_QUAT_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgrass/error.hpp"
#include "qgrass/quaternion.hpp"

namespace qgrass {

using Eigen::Index;

template <typename Scalar>
using ComplexMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;

/// Dense quaternionic matrix H = H0 + H1 i + H2 j + H3 k.
///
/// The four real parts are stored as separate row-major Eigen matrices, so
/// entry (r, c) of every part lives at offset r * cols + c. Products are
/// evaluated as sixteen real GEMMs, which keeps the left/right order of the
/// Hamilton product explicit and lets Eigen's kernels do the heavy lifting.
template <typename Scalar>
class QuatMatrix {
 public:
  using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Quat = Quaternion<Scalar>;

  QuatMatrix() = default;

  QuatMatrix(Index rows, Index cols)
      : w_(RealMatrix::Zero(rows, cols)),
        x_(RealMatrix::Zero(rows, cols)),
        y_(RealMatrix::Zero(rows, cols)),
        z_(RealMatrix::Zero(rows, cols)) {}

  QuatMatrix(RealMatrix w, RealMatrix x, RealMatrix y, RealMatrix z)
      : w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
    const auto same = [this](const RealMatrix& m) {
      return m.rows() == w_.rows() && m.cols() == w_.cols();
    };
    if (!same(x_) || !same(y_) || !same(z_))
      throw Error(Errc::DimensionMismatch, "quaternion component matrices differ in shape");
  }

  static QuatMatrix Zero(Index rows, Index cols) { return QuatMatrix(rows, cols); }

  static QuatMatrix Identity(Index rows, Index cols) {
    QuatMatrix m(rows, cols);
    m.w_.setIdentity();
    return m;
  }
  static QuatMatrix Identity(Index n) { return Identity(n, n); }

  /// Real matrix embedded as H0.
  static QuatMatrix FromReal(const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& a) {
    QuatMatrix m(a.rows(), a.cols());
    m.w_ = a;
    return m;
  }

  /// Complex matrix embedded as H0 + H1 i.
  static QuatMatrix FromComplex(const ComplexMatrixT<Scalar>& a) {
    QuatMatrix m(a.rows(), a.cols());
    m.w_ = a.real();
    m.x_ = a.imag();
    return m;
  }

  static QuatMatrix Diagonal(const std::vector<Quat>& d) {
    const Index n = static_cast<Index>(d.size());
    QuatMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m.set(i, i, d[static_cast<size_t>(i)]);
    return m;
  }

  Index rows() const { return w_.rows(); }
  Index cols() const { return w_.cols(); }
  Index size() const { return w_.size(); }
  bool is_square() const { return rows() == cols(); }

  Quat operator()(Index r, Index c) const { return {w_(r, c), x_(r, c), y_(r, c), z_(r, c)}; }

  void set(Index r, Index c, const Quat& q) {
    w_(r, c) = q.w;
    x_(r, c) = q.x;
    y_(r, c) = q.y;
    z_(r, c) = q.z;
  }

  const RealMatrix& w() const { return w_; }
  const RealMatrix& x() const { return x_; }
  const RealMatrix& y() const { return y_; }
  const RealMatrix& z() const { return z_; }
  RealMatrix& w() { return w_; }
  RealMatrix& x() { return x_; }
  RealMatrix& y() { return y_; }
  RealMatrix& z() { return z_; }

  QuatMatrix block(Index r, Index c, Index nr, Index nc) const {
    return QuatMatrix(w_.block(r, c, nr, nc), x_.block(r, c, nr, nc), y_.block(r, c, nr, nc),
                      z_.block(r, c, nr, nc));
  }

  void set_block(Index r, Index c, const QuatMatrix& b) {
    w_.block(r, c, b.rows(), b.cols()) = b.w_;
    x_.block(r, c, b.rows(), b.cols()) = b.x_;
    y_.block(r, c, b.rows(), b.cols()) = b.y_;
    z_.block(r, c, b.rows(), b.cols()) = b.z_;
  }

  QuatMatrix col(Index c) const { return block(0, c, rows(), 1); }
  QuatMatrix left_cols(Index n) const { return block(0, 0, rows(), n); }
  void set_col(Index c, const QuatMatrix& v) { set_block(0, c, v); }

  /// Conjugate transpose.
  QuatMatrix adjoint() const {
    return QuatMatrix(w_.transpose(), -x_.transpose(), -y_.transpose(), -z_.transpose());
  }

  Scalar squared_norm() const {
    return w_.squaredNorm() + x_.squaredNorm() + y_.squaredNorm() + z_.squaredNorm();
  }

  /// ||A||_H = sqrt(sum |a_ij|^2).
  Scalar norm() const { return std::sqrt(squared_norm()); }

  /// Real part of the trace, i.e. trace(H0).
  Scalar real_trace() const { return w_.trace(); }

  QuatMatrix& operator+=(const QuatMatrix& o) {
    check_same_shape(o);
    w_ += o.w_; x_ += o.x_; y_ += o.y_; z_ += o.z_;
    return *this;
  }
  QuatMatrix& operator-=(const QuatMatrix& o) {
    check_same_shape(o);
    w_ -= o.w_; x_ -= o.x_; y_ -= o.y_; z_ -= o.z_;
    return *this;
  }
  QuatMatrix& operator*=(Scalar s) {
    w_ *= s; x_ *= s; y_ *= s; z_ *= s;
    return *this;
  }

  friend QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
  friend QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
  friend QuatMatrix operator-(const QuatMatrix& a) {
    return QuatMatrix(-a.w_, -a.x_, -a.y_, -a.z_);
  }
  friend QuatMatrix operator*(QuatMatrix a, Scalar s) { return a *= s; }
  friend QuatMatrix operator*(Scalar s, QuatMatrix a) { return a *= s; }

  friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.cols() != b.rows())
      throw Error(Errc::DimensionMismatch, "product of " + shape(a) + " and " + shape(b));
    QuatMatrix c(a.rows(), b.cols());
    c.w_.noalias() = a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_;
    c.x_.noalias() = a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_;
    c.y_.noalias() = a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_;
    c.z_.noalias() = a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_;
    return c;
  }

  /// Every entry multiplied on the right by q.
  QuatMatrix times_right(const Quat& q) const {
    return QuatMatrix(w_ * q.w - x_ * q.x - y_ * q.y - z_ * q.z,
                      w_ * q.x + x_ * q.w + y_ * q.z - z_ * q.y,
                      w_ * q.y - x_ * q.z + y_ * q.w + z_ * q.x,
                      w_ * q.z + x_ * q.y - y_ * q.x + z_ * q.w);
  }

  friend bool operator==(const QuatMatrix& a, const QuatMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.w_ == b.w_ && a.x_ == b.x_ &&
           a.y_ == b.y_ && a.z_ == b.z_;
  }

  static std::string shape(const QuatMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  }

 private:
  void check_same_shape(const QuatMatrix& o) const {
    if (rows() != o.rows() || cols() != o.cols())
      throw Error(Errc::DimensionMismatch, "shapes " + shape(*this) + " and " + shape(o));
  }

  RealMatrix w_, x_, y_, z_;
};

using QuatMatrixd = QuatMatrix<double>;

template <typename S>
QuatMatrix<S> adjoint(const QuatMatrix<S>& a) {
  return a.adjoint();
}

template <typename S>
QuatMatrix<S> mat_mul(const QuatMatrix<S>& a, const QuatMatrix<S>& b) {
  return a * b;
}

template <typename S>
S frobenius_norm(const QuatMatrix<S>& a) {
  return a.norm();
}

/// Complex adjoint representation [[H0 + H1 i, H2 + H3 i], [-H2 + H3 i, H0 - H1 i]].
template <typename S>
ComplexMatrixT<S> chi(const QuatMatrix<S>& h) {
  const Index n = h.rows();
  const Index m = h.cols();
  ComplexMatrixT<S> c(2 * n, 2 * m);
  for (Index r = 0; r < n; ++r) {
    for (Index k = 0; k < m; ++k) {
      const S h0 = h.w()(r, k), h1 = h.x()(r, k), h2 = h.y()(r, k), h3 = h.z()(r, k);
      c(r, k) = {h0, h1};
      c(r, m + k) = {h2, h3};
      c(n + r, k) = {-h2, h3};
      c(n + r, m + k) = {h0, -h1};
    }
  }
  return c;
}

/// Inverse of chi. The block symmetry C = [[A, B], [-conj(B), conj(A)]] must
/// hold within tol (default 1e-9 * ||C||_F); only the top blocks are read.
template <typename S>
QuatMatrix<S> from_chi(const ComplexMatrixT<S>& c, S tol = S(-1)) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0)
    throw Error(Errc::NotQuaternionicStructure, "complex matrix has odd dimensions");
  const Index n = c.rows() / 2;
  const Index m = c.cols() / 2;
  if (tol < S(0)) tol = S(1e-9) * c.norm();
  const auto a = c.topLeftCorner(n, m);
  const auto b = c.topRightCorner(n, m);
  const S defect = std::sqrt((c.bottomLeftCorner(n, m) + b.conjugate()).squaredNorm() +
                             (c.bottomRightCorner(n, m) - a.conjugate()).squaredNorm());
  if (defect > tol)
    throw Error(Errc::NotQuaternionicStructure,
                "symplectic block defect " + std::to_string(defect) + " exceeds " + std::to_string(tol));
  using RM = typename QuatMatrix<S>::RealMatrix;
  return QuatMatrix<S>(RM(a.real()), RM(a.imag()), RM(b.real()), RM(b.imag()));
}

/// Quaternionic vectors from complex 2n-vectors [u; v] laid out like the first
/// n columns of chi: column c maps to u - conj(v) j. If chi(A) [u; v] = [u; v] l
/// for complex l, the result x satisfies A x = x l.
template <typename S, typename Derived>
QuatMatrix<S> from_chi_columns(const Eigen::MatrixBase<Derived>& y) {
  const Index n = y.rows() / 2;
  using RM = typename QuatMatrix<S>::RealMatrix;
  const auto u = y.topRows(n);
  const auto v = y.bottomRows(n);
  return QuatMatrix<S>(RM(u.real()), RM(u.imag()), RM(-v.real()), RM(v.imag()));
}

/// Entrywise quaternionic inner products a^* b as a quaternion (column vectors).
template <typename S>
Quaternion<S> inner(const QuatMatrix<S>& a, const QuatMatrix<S>& b) {
  const QuatMatrix<S> p = a.adjoint() * b;
  return p(0, 0);
}

template <typename S>
S predicate_tolerance(const QuatMatrix<S>& a) {
  return S(1e-10) * std::max(S(1), a.norm());
}

template <typename S>
bool is_hermitian(const QuatMatrix<S>& a) {
  if (!a.is_square()) return false;
  return (a.adjoint() - a).norm() <= predicate_tolerance(a);
}

template <typename S>
bool is_skew_hermitian(const QuatMatrix<S>& a, S tol) {
  return a.is_square() && (a.adjoint() + a).norm() <= tol;
}

template <typename S>
bool is_unitary(const QuatMatrix<S>& a) {
  if (!a.is_square()) return false;
  const Index n = a.rows();
  return (a.adjoint() * a - QuatMatrix<S>::Identity(n)).norm() <=
         predicate_tolerance(a) * S(std::max<Index>(1, n));
}

template <typename S>
bool is_normal(const QuatMatrix<S>& a) {
  if (!a.is_square()) return false;
  const S t = predicate_tolerance(a);
  return (a * a.adjoint() - a.adjoint() * a).norm() <= t * std::max(S(1), a.norm());
}

/// Same predicates on complex matrices, with the same tolerance conventions.
template <typename S>
bool is_hermitian(const ComplexMatrixT<S>& c) {
  if (c.rows() != c.cols()) return false;
  return (c.adjoint() - c).norm() <= S(1e-10) * std::max(S(1), c.norm());
}

template <typename S>
bool is_unitary(const ComplexMatrixT<S>& c) {
  if (c.rows() != c.cols()) return false;
  const Index n = c.rows();
  return (c.adjoint() * c - ComplexMatrixT<S>::Identity(n, n)).norm() <=
         S(1e-10) * std::max(S(1), c.norm()) * S(std::max<Index>(1, n));
}

template <typename S>
bool is_normal(const ComplexMatrixT<S>& c) {
  if (c.rows() != c.cols()) return false;
  const S t = S(1e-10) * std::max(S(1), c.norm());
  return (c * c.adjoint() - c.adjoint() * c).norm() <= t * std::max(S(1), c.norm());
}

/// Inverse of a square quaternionic matrix via chi. Throws RankDeficient when singular.
QuatMatrixd inverse(const QuatMatrixd& a);

}  // namespace qgrass

#endif  // QGRASS_QUAT_MATRIX_HPP
