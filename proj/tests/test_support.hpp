#ifndef QGRASS_TEST_SUPPORT_HPP
#define QGRASS_TEST_SUPPORT_HPP

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgrass/grassmann.hpp"
#include "qgrass/imageset.hpp"
#include "qgrass/quat_matrix.hpp"

namespace qgrass::testing {

using Rng = std::mt19937_64;

inline Quaterniond random_quat(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng), n(rng)};
}

inline QuatMatrixd random_quat_matrix(Index rows, Index cols, Rng& rng) {
  QuatMatrixd m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m.set(r, c, random_quat(rng));
  return m;
}

// Orthonormal columns from a random quaternionic matrix.
inline QuatMatrixd random_frame(Index n, Index k, Rng& rng) {
  return mgs_orthonormalize(random_quat_matrix(n, k, rng));
}

inline QuatMatrixd random_unitary(Index n, Rng& rng) { return random_frame(n, n, rng); }

inline GrassmannPoint random_point(Index n, Index k, Rng& rng) {
  return GrassmannPoint::from_frame(random_frame(n, k, rng));
}

inline Eigen::MatrixXd random_real_frame(Index n, Index k, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd a(n, k);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = nd(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
}

// sqrt(2)*||theta|| with theta the principal angles between real frames.
inline double principal_angle_distance(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x1.transpose() * x2);
  double s = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    const double theta = std::acos(std::clamp(svd.singularValues()(i), -1.0, 1.0));
    s += theta * theta;
  }
  return std::sqrt(2.0 * s);
}

// Line in R^2 at angle theta, as a point of Gr(2,1).
inline GrassmannPoint line(double theta) {
  Eigen::MatrixXd x(2, 1);
  x << std::cos(theta), std::sin(theta);
  return GrassmannPoint::from_frame(QuatMatrixd::FromReal(x));
}

inline std::vector<std::complex<double>> sorted(std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

// Greedy multiset distance: max over a of min over unused b of |a-b|.
inline double multiset_distance(const std::vector<std::complex<double>>& a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const auto& x : a) {
    auto best = std::min_element(b.begin(), b.end(),
                                  [&](auto p, auto q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

}  // namespace qgrass::testing

#endif  // QGRASS_TEST_SUPPORT_HPP
