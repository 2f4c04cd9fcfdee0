#ifndef QGRASS_HESSENBERG_QR_HPP
#define QGRASS_HESSENBERG_QR_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include "qgrass/error.hpp"

namespace qgrass {

/// Complex Schur decomposition A = Z T Z^* by Householder reduction to upper
/// Hessenberg form followed by implicitly shifted QR sweeps (Wilkinson shift,
/// exceptional shifts after 10 and 20 stalled sweeps).
///
/// With `compute_vectors == false` the matrix is balanced first and only the
/// active window is updated, which is all the eigenvalues need. Throws
/// NoConvergence after 30 * dim sweeps in total.
template <typename Real>
class HessenbergQR {
 public:
  using Complex = std::complex<Real>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  HessenbergQR(const Matrix& a, bool compute_vectors) : t_(a), vectors_(compute_vectors) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "eigenproblem needs a square matrix");
    const Eigen::Index n = a.rows();
    if (vectors_) z_ = Matrix::Identity(n, n);
    if (!vectors_) balance();
    reduce_to_hessenberg();
    reduce_to_triangular();
    eigenvalues_ = t_.diagonal();
  }

  const Vector& eigenvalues() const { return eigenvalues_; }
  /// Upper triangular Schur factor (only meaningful when vectors were requested).
  const Matrix& schur_form() const { return t_; }
  const Matrix& schur_vectors() const { return z_; }
  int sweeps() const { return sweeps_; }

 private:
  static Real abs1(const Complex& c) { return std::abs(c.real()) + std::abs(c.imag()); }

  // Parlett-Reinsch diagonal scaling by powers of two.
  void balance() {
    const Eigen::Index n = t_.rows();
    constexpr Real radix = 2;
    bool converged = false;
    while (!converged) {
      converged = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        Real c = 0, r = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (j == i) continue;
          c += abs1(t_(j, i));
          r += abs1(t_(i, j));
        }
        if (c == 0 || r == 0) continue;
        Real g = r / radix, f = 1;
        const Real s = c + r;
        while (c < g) {
          f *= radix;
          c *= radix * radix;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= radix * radix;
        }
        if ((c + r) / f < Real(0.95) * s) {
          converged = false;
          t_.row(i) /= f;
          t_.col(i) *= f;
        }
      }
    }
  }

  void reduce_to_hessenberg() {
    const Eigen::Index n = t_.rows();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
      const Eigen::Index len = n - k - 1;
      Vector v = t_.col(k).segment(k + 1, len);
      const Real xnorm = v.norm();
      if (xnorm == Real(0)) continue;
      const Complex x0 = v(0);
      const Complex phase = std::abs(x0) == Real(0) ? Complex(1) : x0 / std::abs(x0);
      const Complex alpha = -phase * xnorm;
      v(0) -= alpha;
      const Real vnorm = v.norm();
      if (vnorm == Real(0)) continue;
      v /= vnorm;
      // H <- (I - 2 v v^*) H (I - 2 v v^*)
      auto rows = t_.middleRows(k + 1, len);
      rows -= Real(2) * v * (v.adjoint() * rows);
      auto cols = t_.middleCols(k + 1, len);
      cols -= Real(2) * (cols * v) * v.adjoint();
      t_.col(k).segment(k + 2, len - 1).setZero();
      t_(k + 1, k) = alpha;
      if (vectors_) {
        auto zc = z_.middleCols(k + 1, len);
        zc -= Real(2) * (zc * v) * v.adjoint();
      }
    }
  }

  bool subdiagonal_negligible(Eigen::Index i) const {
    const Real d = abs1(t_(i - 1, i - 1)) + abs1(t_(i, i));
    const Real scale = d == Real(0) ? norm_ : d;
    return abs1(t_(i, i - 1)) <= std::numeric_limits<Real>::epsilon() * scale ||
           abs1(t_(i, i - 1)) < std::numeric_limits<Real>::min();
  }

  Complex shift(Eigen::Index iu, int iter) const {
    if (iter == 10 || iter == 20) {
      const Real ex = std::abs(t_(iu, iu - 1).real()) +
                      (iu >= 2 ? std::abs(t_(iu - 1, iu - 2).real()) : Real(0));
      return t_(iu, iu) + Complex(ex);
    }
    // Eigenvalue of the trailing 2x2 block closest to t(iu, iu).
    Eigen::Matrix<Complex, 2, 2> b = t_.template block<2, 2>(iu - 1, iu - 1);
    const Real scale = b.cwiseAbs().sum();
    if (scale == Real(0)) return Complex(0);
    b /= scale;
    const Complex off = b(0, 1) * b(1, 0);
    const Complex half_gap = (b(0, 0) - b(1, 1)) / Real(2);
    const Complex disc = std::sqrt(half_gap * half_gap + off);
    const Complex mean = (b(0, 0) + b(1, 1)) / Real(2);
    Complex e1 = mean + disc;
    Complex e2 = mean - disc;
    const Complex det = b(0, 0) * b(1, 1) - off;
    // Recover the smaller-magnitude root from the determinant to avoid cancellation.
    if (std::abs(e1) > std::abs(e2)) {
      if (std::abs(e1) > Real(0)) e2 = det / e1;
    } else if (std::abs(e2) > Real(0)) {
      e1 = det / e2;
    }
    const Complex pick = std::abs(e1 - b(1, 1)) < std::abs(e2 - b(1, 1)) ? e1 : e2;
    return scale * pick;
  }

  // Applies g to rows/columns p, p+1; columns left of first_col are already reduced.
  void rotate(const Eigen::JacobiRotation<Complex>& g, Eigen::Index p, Eigen::Index first_col,
              Eigen::Index il, Eigen::Index iu) {
    const Eigen::Index n = t_.rows();
    const Eigen::Index col_lo = first_col;
    const Eigen::Index col_hi = vectors_ ? n - 1 : iu;
    t_.middleCols(col_lo, col_hi - col_lo + 1).applyOnTheLeft(p, p + 1, g.adjoint());
    const Eigen::Index row_lo = vectors_ ? 0 : il;
    const Eigen::Index row_hi = std::min(p + 2, iu);
    t_.middleRows(row_lo, row_hi - row_lo + 1).applyOnTheRight(p, p + 1, g);
    if (vectors_) z_.applyOnTheRight(p, p + 1, g);
  }

  void reduce_to_triangular() {
    const Eigen::Index n = t_.rows();
    if (n == 0) return;
    norm_ = t_.cwiseAbs().sum();
    const int max_sweeps = 30 * static_cast<int>(std::max<Eigen::Index>(n, 1));
    Eigen::Index iu = n - 1;
    int iter = 0;
    while (true) {
      while (iu > 0 && subdiagonal_negligible(iu)) {
        t_(iu, iu - 1) = Complex(0);
        --iu;
        iter = 0;
      }
      if (iu == 0) break;
      ++iter;
      if (++sweeps_ > max_sweeps)
        throw Error(Errc::NoConvergence,
                    "shifted QR did not converge within " + std::to_string(max_sweeps) + " sweeps");

      Eigen::Index il = iu - 1;
      while (il > 0 && !subdiagonal_negligible(il)) --il;
      if (il > 0) t_(il, il - 1) = Complex(0);

      const Complex mu = shift(iu, iter);
      Eigen::JacobiRotation<Complex> g;
      g.makeGivens(t_(il, il) - mu, t_(il + 1, il));
      rotate(g, il, il, il, iu);
      for (Eigen::Index i = il + 1; i < iu; ++i) {
        g.makeGivens(t_(i, i - 1), t_(i + 1, i - 1), &t_(i, i - 1));
        t_(i + 1, i - 1) = Complex(0);
        rotate(g, i, i, il, iu);
      }
    }
  }

  Matrix t_;
  Matrix z_;
  Vector eigenvalues_;
  bool vectors_;
  Real norm_ = 0;
  int sweeps_ = 0;
};

}  // namespace qgrass

#endif  // QGRASS_HESSENBERG_QR_HPP
