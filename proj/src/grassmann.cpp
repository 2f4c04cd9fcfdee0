#include "qgrass/grassmann.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qgrass/parallel.hpp"
#include "quat_basis.hpp"

namespace qgrass {

namespace {

void check_compatible(const GrassmannPoint& p, const GrassmannPoint& q) {
  if (p.n() != q.n() || p.k() != q.k())
    throw Error(Errc::DimensionMismatch,
                "Gr(" + std::to_string(p.n()) + "," + std::to_string(p.k()) + ") vs Gr(" +
                    std::to_string(q.n()) + "," + std::to_string(q.k()) + ")");
}

// Columns of frame within this residual of the running span are dropped.
constexpr double kSpanDrop = 1e-10;

}  // namespace

GrassmannPoint GrassmannPoint::from_frame(QuatMatrixd frame) {
  const Index k = frame.cols();
  const double defect = (frame.adjoint() * frame - QuatMatrixd::Identity(k)).norm();
  if (!(defect <= 1e-8))
    throw Error(Errc::NotOrthonormalFrame, "||X^*X - I|| = " + std::to_string(defect));
  GrassmannPoint pt;
  pt.n_ = frame.rows();
  pt.k_ = k;
  pt.frame_ = std::move(frame);
  return pt;
}

GrassmannPoint GrassmannPoint::from_projector(QuatMatrixd p) {
  if (!p.is_square()) throw Error(Errc::NotProjector, "projector must be square");
  const Index n = p.rows();
  const double scale = static_cast<double>(std::max<Index>(n, 1));
  const double herm = (p.adjoint() - p).norm();
  if (!(herm <= 1e-10 * scale))
    throw Error(Errc::NotProjector, "||P^* - P|| = " + std::to_string(herm));
  const double idem = (p * p - p).norm();
  if (!(idem <= 1e-8 * scale))
    throw Error(Errc::NotProjector, "||P^2 - P|| = " + std::to_string(idem));
  const double tr = p.real_trace();
  const double k = std::round(tr);
  if (std::abs(tr - k) > 1e-6)
    throw Error(Errc::NotProjector, "trace " + std::to_string(tr) + " is not integral");
  const double imag_tr = std::abs(p.x().trace()) + std::abs(p.y().trace()) + std::abs(p.z().trace());
  if (imag_tr > 1e-8) throw Error(Errc::NotProjector, "trace has imaginary part");
  GrassmannPoint pt;
  pt.n_ = n;
  pt.k_ = static_cast<Index>(k);
  pt.projector_ = std::move(p);
  return pt;
}

QuatMatrixd GrassmannPoint::projector() const {
  if (projector_) return *projector_;
  return *frame_ * frame_->adjoint();
}

QuatMatrixd GrassmannPoint::reflection() const {
  return QuatMatrixd::Identity(n_) - 2.0 * projector();
}

double distance_from_spectrum(const StandardSpectrum& spectrum) {
  double sum = 0;
  for (const auto& lambda : spectrum.values) {
    const double r = std::abs(lambda);
    if (r == 0.0) throw Error(Errc::NotUnitary, "zero eigenvalue in a unitary spectrum");
    const std::complex<double> u = lambda / r;
    const double a = std::atan2(std::max(0.0, u.imag()), u.real());
    sum += a * a;
  }
  return 0.5 * std::sqrt(sum);
}

double geodesic_distance_full(const GrassmannPoint& p, const GrassmannPoint& q) {
  check_compatible(p, q);
  const QuatMatrixd w = q.reflection() * p.reflection();
  return distance_from_spectrum(standard_eigenvalues(w));
}

double geodesic_distance(const GrassmannPoint& p, const GrassmannPoint& q) {
  check_compatible(p, q);
  if (!p.has_frame() || !q.has_frame()) return geodesic_distance_full(p, q);

  const QuatMatrixd& xp = p.frame();
  const QuatMatrixd& xq = q.frame();
  const Index k = p.k();
  detail::QuatBasis basis(p.n(), 2 * k);
  for (const QuatMatrixd* x : {&xp, &xq}) {
    for (Index c = 0; c < k; ++c) {
      QuatMatrixd v = basis.project_out(x->col(c));
      if (v.norm() > kSpanDrop) basis.push_normalized(v);
    }
  }
  if (basis.size() == 0) return 0.0;
  const QuatMatrixd b = basis.matrix();
  // W b = (I - 2Q)(I - 2P) b, evaluated through the frames.
  const QuatMatrixd t = b - 2.0 * (xp * (xp.adjoint() * b));
  const QuatMatrixd wb = t - 2.0 * (xq * (xq.adjoint() * t));
  const QuatMatrixd restricted = b.adjoint() * wb;
  return distance_from_spectrum(standard_eigenvalues(restricted));
}

GrassmannPoint geodesic_interpolate(const GrassmannPoint& p, const GrassmannPoint& q, double t) {
  check_compatible(p, q);
  const QuatMatrixd w = q.reflection() * p.reflection();
  const UnitaryEig eig = unitary_eig(w);
  for (const auto& lambda : eig.lambda.values) {
    if (std::arg(lambda) >= std::numbers::pi - tol::branch)
      throw Error(Errc::CutLocus, "(I-2Q)(I-2P) has eigenvalue -1; shortest geodesic is not unique");
  }
  // X = log(W) / 2, so exp(tX) = V diag(exp(i t a / 2)) V^*.
  QuatMatrixd scaled = eig.V;
  for (Index c = 0; c < p.n(); ++c) {
    const double a = std::atan2(eig.lambda[c].imag(), eig.lambda[c].real());
    scaled.set_col(c, eig.V.col(c).times_right(Quaterniond(0, 0.5 * t * a, 0, 0)));
  }
  const QuatMatrixd tx = scaled * eig.V.adjoint();
  const QuatMatrixd forward = expm(tx);
  if (p.has_frame()) return GrassmannPoint::from_frame(forward * p.frame());
  const QuatMatrixd backward = expm(-tx);
  return GrassmannPoint::from_projector(forward * p.projector() * backward);
}

DistanceMatrix distance_matrix(const std::vector<GrassmannPoint>& points, std::vector<std::string> labels,
                               unsigned threads) {
  const Index count = static_cast<Index>(points.size());
  if (labels.empty())
    for (Index i = 0; i < count; ++i) labels.push_back(std::to_string(i));
  if (static_cast<Index>(labels.size()) != count)
    throw Error(Errc::DimensionMismatch, "label count differs from point count");
  for (Index i = 1; i < count; ++i) check_compatible(points[0], points[static_cast<std::size_t>(i)]);

  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < count; ++i)
    for (Index j = i + 1; j < count; ++j) pairs.emplace_back(i, j);

  DistanceMatrix out{std::move(labels), Eigen::MatrixXd::Zero(count, count)};
  parallel_for(pairs.size(), threads, [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    try {
      const double d = geodesic_distance(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      out.d(i, j) = d;
      out.d(j, i) = d;
    } catch (const Error& e) {
      throw Error(e.code(), "pair (" + out.labels[static_cast<std::size_t>(i)] + ", " +
                                out.labels[static_cast<std::size_t>(j)] + "): " + e.what());
    }
  });
  return out;
}

}  // namespace qgrass
