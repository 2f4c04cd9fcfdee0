#include "qgrass/imageset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgrass/quat_eig.hpp"

namespace qgrass {

ColorImage::ColorImage(Channel r, Channel g, Channel b) : r_(std::move(r)), g_(std::move(g)), b_(std::move(b)) {
  if (g_.rows() != r_.rows() || g_.cols() != r_.cols() || b_.rows() != r_.rows() || b_.cols() != r_.cols())
    throw Error(Errc::ImageSizeMismatch, "color channels differ in size");
  for (const Channel* ch : {&r_, &g_, &b_}) {
    if (ch->size() > 0 && (ch->minCoeff() < 0.0 || ch->maxCoeff() > 255.0))
      throw Error(Errc::InvalidArgument, "channel values must lie in [0, 255]");
  }
}

ColorImage ColorImage::from_gray(const Channel& gray) { return ColorImage(gray, gray, gray); }

namespace {

ColorImage::Channel resample(const ColorImage::Channel& src, Index rows, Index cols) {
  ColorImage::Channel dst(rows, cols);
  const double sy = static_cast<double>(src.rows()) / static_cast<double>(rows);
  const double sx = static_cast<double>(src.cols()) / static_cast<double>(cols);
  const Index max_r = src.rows() - 1;
  const Index max_c = src.cols() - 1;
  for (Index r = 0; r < rows; ++r) {
    const double fy = std::clamp((static_cast<double>(r) + 0.5) * sy - 0.5, 0.0, static_cast<double>(max_r));
    const Index y0 = static_cast<Index>(std::floor(fy));
    const Index y1 = std::min(y0 + 1, max_r);
    const double wy = fy - static_cast<double>(y0);
    for (Index c = 0; c < cols; ++c) {
      const double fx = std::clamp((static_cast<double>(c) + 0.5) * sx - 0.5, 0.0, static_cast<double>(max_c));
      const Index x0 = static_cast<Index>(std::floor(fx));
      const Index x1 = std::min(x0 + 1, max_c);
      const double wx = fx - static_cast<double>(x0);
      const double top = (1 - wx) * src(y0, x0) + wx * src(y0, x1);
      const double bot = (1 - wx) * src(y1, x0) + wx * src(y1, x1);
      dst(r, c) = (1 - wy) * top + wy * bot;
    }
  }
  return dst;
}

}  // namespace

ColorImage resize_bilinear(const ColorImage& img, Index rows, Index cols) {
  if (rows < 1 || cols < 1) throw Error(Errc::InvalidArgument, "resize target must be at least 1x1");
  if (img.height() < 1 || img.width() < 1) throw Error(Errc::InvalidArgument, "cannot resize an empty image");
  if (img.height() == rows && img.width() == cols) return img;
  return ColorImage(resample(img.r(), rows, cols), resample(img.g(), rows, cols), resample(img.b(), rows, cols));
}

QuatMatrixd image_to_pure_quat(const ColorImage& img) {
  using RM = QuatMatrixd::RealMatrix;
  return QuatMatrixd(RM::Zero(img.height(), img.width()), RM(img.r()), RM(img.g()), RM(img.b()));
}

QuatMatrixd vectorize(const QuatMatrixd& m) {
  const Index n = m.rows();
  QuatMatrixd v(n * m.cols(), 1);
  for (Index j = 0; j < m.cols(); ++j) v.set_block(j * n, 0, m.col(j));
  return v;
}

QuatMatrixd unvectorize(const QuatMatrixd& v, Index rows, Index cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw Error(Errc::DimensionMismatch, "cannot reshape " + QuatMatrixd::shape(v));
  QuatMatrixd m(rows, cols);
  for (Index j = 0; j < cols; ++j) m.set_col(j, v.block(j * rows, 0, rows, 1));
  return m;
}

QuatMatrixd quaternion_pca(const QuatMatrixd& data, Index t) {
  const Index count = data.cols();
  if (t < 1 || t > count)
    throw Error(Errc::InvalidComponentCount,
                "asked for " + std::to_string(t) + " components from " + std::to_string(count) + " columns");

  QuatMatrixd centered = data;
  const double inv = 1.0 / static_cast<double>(count);
  const auto center = [&](QuatMatrixd::RealMatrix& part) {
    const Eigen::VectorXd mean = part.rowwise().sum() * inv;
    part.colwise() -= mean;
  };
  center(centered.w());
  center(centered.x());
  center(centered.y());
  center(centered.z());

  const QuatMatrixd gram = centered.adjoint() * centered;
  const Qsvd svd = qsvd(gram);
  const double s1 = svd.singular_values.size() > 0 ? svd.singular_values(0) : 0.0;
  if (!(s1 > 0.0) || svd.singular_values(t - 1) <= tol::rank * s1)
    throw Error(Errc::RankDeficient, "centered data has fewer than " + std::to_string(t) +
                                         " independent directions");
  return centered * svd.left_singular_vectors().left_cols(t);
}

QuatMatrixd mgs_orthonormalize(const QuatMatrixd& vs) {
  QuatMatrixd out(vs.rows(), vs.cols());
  for (Index i = 0; i < vs.cols(); ++i) {
    QuatMatrixd q = vs.col(i);
    const double scale = q.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < i; ++j) {
        const QuatMatrixd qj = out.col(j);
        q -= qj * (qj.adjoint() * q);
      }
      const double residual = q.norm();
      if (pass == 0 && !(residual > 1e-10 * scale))
        throw Error(Errc::LinearlyDependent,
                    "Zero norm encountered. Check input vectors for linear dependence (column " +
                        std::to_string(i) + ")");
    }
    out.set_col(i, q * (1.0 / q.norm()));
  }
  return out;
}

GrassmannPoint set_to_grassmann(const ImageSet& set, Index k, Index rows, Index cols) {
  const Index p = static_cast<Index>(set.images.size());
  if (p == 0) throw Error(Errc::EmptyImageSet, "image set '" + set.object_id + "' has no images");
  const Index h = set.images.front().height();
  const Index w = set.images.front().width();
  for (const auto& img : set.images)
    if (img.height() != h || img.width() != w)
      throw Error(Errc::ImageSizeMismatch, "image set '" + set.object_id + "' mixes image sizes");
  if (k < 1) throw Error(Errc::InvalidComponentCount, "k must be positive");
  if (p < k + 1)
    throw Error(Errc::RankDeficient, "image set '" + set.object_id + "' has " + std::to_string(p) +
                                         " images; need at least k+1 = " + std::to_string(k + 1));

  QuatMatrixd data(rows * cols, p);
  for (Index i = 0; i < p; ++i) {
    const ColorImage resized = resize_bilinear(set.images[static_cast<std::size_t>(i)], rows, cols);
    data.set_col(i, vectorize(image_to_pure_quat(resized)));
  }
  return GrassmannPoint::from_frame(mgs_orthonormalize(quaternion_pca(data, k)));
}

}  // namespace qgrass
