#ifndef QGRASS_QUAT_EIG_HPP
#define QGRASS_QUAT_EIG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qgrass/quat_matrix.hpp"

namespace qgrass {

namespace tol {
/// Conjugate-pair matching radius, relative to ||chi(A)||_F.
inline constexpr double pair = 1e-7;
/// |Im| below this (relative to ||chi(A)||_F) counts as a real eigenvalue.
inline constexpr double imag = 1e-9;
/// Allowed drift of a unitary eigenvalue off the unit circle.
inline constexpr double circle = 1e-6;
/// Phase / singular-value gap below which eigenvectors are treated as one cluster.
inline constexpr double cluster = 1e-6;
/// Singular values <= rank * sigma_1 count as zero.
inline constexpr double rank = 1e-10;
/// Distance of an eigenphase from pi that puts a pair on the cut locus.
inline constexpr double branch = 1e-9;
}  // namespace tol

/// The n standard eigenvalues of an n x n quaternionic matrix: the upper
/// half-plane members of the spectrum of chi(A), sorted by descending real
/// part, then descending imaginary part. Imaginary parts are clamped to >= 0.
struct StandardSpectrum {
  std::vector<std::complex<double>> values;

  std::size_t size() const { return values.size(); }
  const std::complex<double>& operator[](std::size_t i) const { return values[i]; }
};

struct ComplexSchur {
  ComplexVector eigenvalues;
  ComplexMatrix T;
  ComplexMatrix Z;
};

/// Eigenvalues of a square complex matrix (balanced Hessenberg QR).
ComplexVector complex_eigenvalues(const ComplexMatrix& c);

/// Full Schur form C = Z T Z^*.
ComplexSchur complex_schur(const ComplexMatrix& c);

/// Reduces a conjugation-closed spectrum of size 2n to its n standard
/// representatives. `scale` is ||chi(A)||_F and sets the pairing tolerances.
StandardSpectrum select_standard(const ComplexVector& spectrum, double scale);

StandardSpectrum standard_eigenvalues(const QuatMatrixd& a);

/// Quaternionic SVD stored the way U A V = diag(sigma) reads, so
/// A = U^* diag(sigma) V^*. The left singular vectors are the columns of U^*.
struct Qsvd {
  QuatMatrixd U;
  Eigen::VectorXd singular_values;
  QuatMatrixd V;

  Eigen::Index rank() const;
  QuatMatrixd left_singular_vectors() const { return U.adjoint(); }
  QuatMatrixd reconstruct() const;
};

Qsvd qsvd(const QuatMatrixd& a);

/// Spectral decomposition A V = V diag(lambda) of a quaternionic unitary
/// matrix, with lambda the standard eigenvalues on the unit circle.
struct UnitaryEig {
  QuatMatrixd V;
  StandardSpectrum lambda;
};

UnitaryEig unitary_eig(const QuatMatrixd& a);

/// Principal logarithm V diag(i a) V^* with a = arg(lambda) in [0, pi].
QuatMatrixd unitary_log(const QuatMatrixd& a);

/// Matrix exponential by scaling and squaring on chi(A), mapped back to H.
QuatMatrixd expm(const QuatMatrixd& a);

}  // namespace qgrass

#endif  // QGRASS_QUAT_EIG_HPP
