#include "qgrass/quat_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qgrass/hessenberg_qr.hpp"
#include "quat_basis.hpp"

namespace qgrass {

namespace {

using cd = std::complex<double>;

void sort_standard(std::vector<cd>& v) {
  std::stable_sort(v.begin(), v.end(), [](const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

// Indices grouped into runs whose consecutive keys differ by at most gap.
std::vector<std::vector<Index>> cluster_by_key(const std::vector<double>& key, double gap) {
  std::vector<Index> order(key.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return key[a] < key[b]; });
  std::vector<std::vector<Index>> clusters;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || key[order[i]] - key[order[i - 1]] > gap) clusters.emplace_back();
    clusters.back().push_back(order[i]);
  }
  return clusters;
}

}  // namespace

ComplexVector complex_eigenvalues(const ComplexMatrix& c) {
  return HessenbergQR<double>(c, false).eigenvalues();
}

ComplexSchur complex_schur(const ComplexMatrix& c) {
  HessenbergQR<double> qr(c, true);
  return {qr.eigenvalues(), qr.schur_form(), qr.schur_vectors()};
}

StandardSpectrum select_standard(const ComplexVector& spectrum, double scale) {
  const Index total = spectrum.size();
  if (total % 2 != 0)
    throw Error(Errc::PairingFailure, "spectrum of odd length " + std::to_string(total));
  const double tau_pair = tol::pair * scale;
  const double tau_im = tol::imag * scale;

  std::vector<bool> used(static_cast<std::size_t>(total), false);
  std::vector<cd> out;
  out.reserve(static_cast<std::size_t>(total / 2));

  // Strictly upper values claim their nearest conjugate partner, in index order.
  for (Index i = 0; i < total; ++i) {
    if (used[i] || !(spectrum(i).imag() > tau_im)) continue;
    const cd target = std::conj(spectrum(i));
    Index best = -1;
    double best_dist = 0;
    for (Index j = 0; j < total; ++j) {
      if (j == i || used[j]) continue;
      const double d = std::abs(spectrum(j) - target);
      if (best < 0 || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best < 0 || best_dist > tau_pair)
      throw Error(Errc::PairingFailure, "no conjugate partner for eigenvalue (" +
                                            std::to_string(spectrum(i).real()) + ", " +
                                            std::to_string(spectrum(i).imag()) + ")");
    used[i] = used[best] = true;
    out.push_back(spectrum(i));
  }

  // What is left must be real and come with even multiplicity.
  std::vector<double> reals;
  for (Index i = 0; i < total; ++i) {
    if (used[i]) continue;
    if (std::abs(spectrum(i).imag()) > tau_im)
      throw Error(Errc::PairingFailure, "unpaired lower half-plane eigenvalue");
    reals.push_back(spectrum(i).real());
  }
  if (reals.size() % 2 != 0)
    throw Error(Errc::PairingFailure, "odd number of real eigenvalues");
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i < reals.size(); i += 2) out.emplace_back(0.5 * (reals[i] + reals[i + 1]), 0.0);

  for (auto& v : out) v = {v.real(), std::max(0.0, v.imag())};
  sort_standard(out);
  return {std::move(out)};
}

StandardSpectrum standard_eigenvalues(const QuatMatrixd& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "standard eigenvalues need a square matrix");
  const ComplexMatrix c = chi(a);
  return select_standard(complex_eigenvalues(c), c.norm());
}

Index Qsvd::rank() const {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cut = tol::rank * singular_values(0);
  return static_cast<Index>((singular_values.array() > cut).count());
}

QuatMatrixd Qsvd::reconstruct() const {
  const Index n = U.rows();
  const Index m = V.rows();
  QuatMatrixd d(n, m);
  for (Index i = 0; i < singular_values.size(); ++i) d.w()(i, i) = singular_values(i);
  return U.adjoint() * d * V.adjoint();
}

Qsvd qsvd(const QuatMatrixd& a) {
  const Index n = a.rows();
  const Index m = a.cols();
  const Index p = std::min(n, m);
  const ComplexMatrix c = chi(a);
  Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();

  // chi doubles every singular value; keep one of each pair.
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(p);
  for (Index i = 0; i < p; ++i) sigma(i) = s(2 * i);
  const double sigma1 = p > 0 ? sigma(0) : 0.0;

  // Right singular vectors: the 2m columns of chi's V group by singular
  // value (zeros padded); each group is J-invariant and yields half as many
  // quaternionic directions. J-partners agree to rounding, hence the tight gap.
  std::vector<double> key(static_cast<std::size_t>(2 * m), 0.0);
  for (Index i = 0; i < std::min<Index>(s.size(), 2 * m); ++i) key[i] = -s(i);
  const double gap = 1e-9 * std::max(1.0, sigma1);
  detail::QuatBasis vb(m, m);
  std::vector<double> picked_sigma;
  for (const auto& cl : cluster_by_key(key, gap)) {
    std::vector<QuatMatrixd> cand;
    for (Index i : cl) cand.push_back(from_chi_columns<double>(svd.matrixV().col(i)));
    const Index want = static_cast<Index>(cl.size() / 2);
    const auto picked = vb.extend_pivoted(std::move(cand), want);
    if (cl.size() % 2 != 0 || static_cast<Index>(picked.size()) != want)
      throw Error(Errc::PairingFailure, "right singular vectors are not quaternionic");
    for (Index idx : picked) picked_sigma.push_back(-key[cl[idx]]);
  }
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return picked_sigma[i] > picked_sigma[j]; });
  const QuatMatrixd unsorted = vb.matrix();
  QuatMatrixd right(m, m);
  for (Index c = 0; c < m; ++c) right.set_col(c, unsorted.col(order[c]));
  for (Index i = 0; i < p; ++i) sigma(i) = picked_sigma[order[i]];

  detail::QuatBasis ub(n, n);
  const Index r = [&] {
    Index k = 0;
    while (k < p && sigma(k) > tol::rank * sigma1 && sigma1 > 0) ++k;
    return k;
  }();
  for (Index i = 0; i < r; ++i) {
    QuatMatrixd u = ub.project_out(a * right.col(i) * (1.0 / sigma(i)));
    if (u.norm() <= 1e-8)
      throw Error(Errc::PairingFailure, "left singular vector collapsed");
    ub.push_normalized(u);
  }
  if (r < n) {
    std::vector<QuatMatrixd> cand;
    for (Index i = 0; i < 2 * n; ++i) cand.push_back(from_chi_columns<double>(svd.matrixU().col(i)));
    if (ub.extend_pivoted(std::move(cand), n - r).size() != static_cast<std::size_t>(n - r))
      throw Error(Errc::PairingFailure, "could not complete the left singular basis");
  }
  return {ub.matrix().adjoint(), sigma, right};
}

UnitaryEig unitary_eig(const QuatMatrixd& a) {
  if (!is_unitary(a)) throw Error(Errc::NotUnitary, "matrix is not quaternionic unitary");
  const Index n = a.rows();
  const ComplexSchur schur = complex_schur(chi(a));
  const Index total = 2 * n;

  std::vector<double> phase(static_cast<std::size_t>(total));
  std::vector<double> key(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) {
    const cd mu = schur.eigenvalues(i);
    if (std::abs(std::abs(mu) - 1.0) > tol::circle)
      throw Error(Errc::NotUnitary, "eigenvalue off the unit circle by " + std::to_string(std::abs(std::abs(mu) - 1.0)));
    phase[i] = std::arg(mu);
    key[i] = std::abs(phase[i]);
  }

  detail::QuatBasis basis(n, n);
  std::vector<cd> lambda;
  for (const auto& cl : cluster_by_key(key, tol::cluster)) {
    const double lo = key[cl.front()];
    const double hi = key[cl.back()];
    const bool real_cluster = hi <= tol::cluster || lo >= std::numbers::pi - tol::cluster;
    std::vector<QuatMatrixd> cand;
    std::vector<Index> source;
    Index lower = 0;
    for (Index i : cl) {
      if (real_cluster || phase[i] > 0) {
        cand.push_back(from_chi_columns<double>(schur.Z.col(i)));
        source.push_back(i);
      } else {
        ++lower;
      }
    }
    Index want;
    if (real_cluster) {
      if (cl.size() % 2 != 0) throw Error(Errc::PairingFailure, "odd real eigenvalue cluster");
      want = static_cast<Index>(cl.size() / 2);
    } else {
      want = static_cast<Index>(cand.size());
      if (want != lower) throw Error(Errc::PairingFailure, "unbalanced conjugate eigenvalue cluster");
    }
    const auto picked = basis.extend_pivoted(std::move(cand), want);
    if (static_cast<Index>(picked.size()) != want)
      throw Error(Errc::PairingFailure, "eigenvector cluster is rank deficient");
    for (Index idx : picked) {
      const double ang = key[source[idx]];
      lambda.push_back(std::polar(1.0, ang));
    }
  }

  // Order columns like the standard spectrum.
  const QuatMatrixd v = basis.matrix();
  std::vector<Index> order(lambda.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    if (lambda[i].real() != lambda[j].real()) return lambda[i].real() > lambda[j].real();
    return lambda[i].imag() > lambda[j].imag();
  });
  UnitaryEig out{QuatMatrixd(n, n), {}};
  for (Index c = 0; c < n; ++c) {
    out.V.set_col(c, v.col(order[c]));
    out.lambda.values.push_back(lambda[order[c]]);
  }
  return out;
}

QuatMatrixd unitary_log(const QuatMatrixd& a) {
  const UnitaryEig eig = unitary_eig(a);
  const Index n = a.rows();
  QuatMatrixd scaled = eig.V;
  for (Index c = 0; c < n; ++c) {
    const double ang = std::atan2(eig.lambda[c].imag(), eig.lambda[c].real());
    scaled.set_col(c, eig.V.col(c).times_right(Quaterniond(0, ang, 0, 0)));
  }
  return scaled * eig.V.adjoint();
}

QuatMatrixd expm(const QuatMatrixd& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "exponential needs a square matrix");
  const ComplexMatrix e = chi(a).exp();
  return from_chi(e);
}

QuatMatrixd inverse(const QuatMatrixd& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "inverse needs a square matrix");
  const ComplexMatrix c = chi(a);
  Eigen::FullPivLU<ComplexMatrix> lu(c);
  if (!lu.isInvertible()) throw Error(Errc::RankDeficient, "matrix is singular");
  return from_chi(ComplexMatrix(lu.inverse()));
}

}  // namespace qgrass
