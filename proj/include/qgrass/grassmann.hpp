#ifndef QGRASS_GRASSMANN_HPP
#define QGRASS_GRASSMANN_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgrass/quat_eig.hpp"
#include "qgrass/quat_matrix.hpp"

namespace qgrass {

/// A point of the quaternionic Grassmannian Gr_{n,k}(H), i.e. a rank-k
/// Hermitian idempotent P in H^{n x n}.
///
/// A point built from an orthonormal frame X keeps X and forms P = X X^* on
/// demand; a point built from a projector keeps P only. Both are immutable.
class GrassmannPoint {
 public:
  /// P = X X^*. Requires ||X^* X - I_k||_H <= 1e-8.
  static GrassmannPoint from_frame(QuatMatrixd frame);

  /// Validates idempotence, Hermitian symmetry and an integral real trace.
  static GrassmannPoint from_projector(QuatMatrixd projector);

  Index n() const { return n_; }
  Index k() const { return k_; }

  QuatMatrixd projector() const;
  /// I - 2P, the reflection through the subspace complement.
  QuatMatrixd reflection() const;

  bool has_frame() const { return frame_.has_value(); }
  const QuatMatrixd& frame() const { return *frame_; }

 private:
  GrassmannPoint() = default;

  Index n_ = 0;
  Index k_ = 0;
  std::optional<QuatMatrixd> frame_;
  std::optional<QuatMatrixd> projector_;
};

/// 1/2 * sqrt(sum arg^2(lambda_i)) over a standard spectrum on the unit
/// circle; each eigenvalue is renormalized before its argument is taken.
double distance_from_spectrum(const StandardSpectrum& spectrum);

/// Shortest geodesic distance from the standard eigenvalues of
/// W = (I - 2Q)(I - 2P). Uses the frames when both points carry one: W is the
/// identity off span[X_P, X_Q], so only its restriction to that span (at most
/// 2k quaternionic dimensions) needs an eigensolve.
double geodesic_distance(const GrassmannPoint& p, const GrassmannPoint& q);

/// Same quantity from the full n x n product W, no frames used.
double geodesic_distance_full(const GrassmannPoint& p, const GrassmannPoint& q);

/// gamma(t) = exp(tX) P exp(-tX) with exp(2X) = (I - 2Q)(I - 2P). Throws
/// CutLocus when W has a standard eigenvalue within tol::branch of -1.
GrassmannPoint geodesic_interpolate(const GrassmannPoint& p, const GrassmannPoint& q, double t);

/// Symmetric matrix of pairwise geodesic distances with zero diagonal.
struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd d;

  Index size() const { return d.rows(); }
};

/// Pairwise distances over up to `threads` workers (0 = auto). Output does
/// not depend on the thread count. Labels default to "0", "1", ...
DistanceMatrix distance_matrix(const std::vector<GrassmannPoint>& points,
                               std::vector<std::string> labels = {}, unsigned threads = 1);

}  // namespace qgrass

#endif  // QGRASS_GRASSMANN_HPP
