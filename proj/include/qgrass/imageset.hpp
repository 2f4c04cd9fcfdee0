#ifndef QGRASS_IMAGESET_HPP
#define QGRASS_IMAGESET_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgrass/grassmann.hpp"
#include "qgrass/quat_matrix.hpp"

namespace qgrass {

/// RGB image with channels stored as doubles in [0, 255].
class ColorImage {
 public:
  using Channel = Eigen::MatrixXd;

  ColorImage() = default;
  ColorImage(Channel r, Channel g, Channel b);

  /// Grayscale promoted by replicating the channel.
  static ColorImage from_gray(const Channel& gray);

  Index height() const { return r_.rows(); }
  Index width() const { return r_.cols(); }
  const Channel& r() const { return r_; }
  const Channel& g() const { return g_; }
  const Channel& b() const { return b_; }

 private:
  Channel r_, g_, b_;
};

/// Bilinear resampling with pixel-center alignment and edge clamping.
ColorImage resize_bilinear(const ColorImage& img, Index rows, Index cols);

struct ImageSet {
  std::vector<ColorImage> images;
  std::string label;
  std::string object_id;
};

/// Each pixel becomes the pure quaternion r i + g j + b k.
QuatMatrixd image_to_pure_quat(const ColorImage& img);

/// Column-major stacking of an n x m matrix into an nm x 1 column.
QuatMatrixd vectorize(const QuatMatrixd& m);

/// Inverse of vectorize.
QuatMatrixd unvectorize(const QuatMatrixd& v, Index rows, Index cols);

/// Projects the column-centered data D_c onto the top-t right singular
/// directions of its Gram matrix D_c^* D_c; returns D_c V_t (m x t).
QuatMatrixd quaternion_pca(const QuatMatrixd& data, Index t);

/// Modified Gram-Schmidt over H with one reorthogonalization sweep.
/// Throws LinearlyDependent when a column's residual falls to 1e-10 of its norm.
QuatMatrixd mgs_orthonormalize(const QuatMatrixd& vs);

/// Images -> resize -> pure quaternions -> vectorize -> PCA(k) -> MGS -> P.
GrassmannPoint set_to_grassmann(const ImageSet& set, Index k, Index rows, Index cols);

}  // namespace qgrass

#endif  // QGRASS_IMAGESET_HPP
