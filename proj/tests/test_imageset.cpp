#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <png.h>

#include "qgrass/image_io.hpp"
#include "qgrass/imageset.hpp"
#include "qgrass/quat_eig.hpp"
#include "test_support.hpp"

using namespace qgrass;
using namespace qgrass::testing;
namespace fs = std::filesystem;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

ColorImage random_image(Index h, Index w, Rng& rng) {
  std::uniform_int_distribution<int> px(0, 255);
  ColorImage::Channel r(h, w), g(h, w), b(h, w);
  for (Index i = 0; i < r.size(); ++i) {
    r.data()[i] = px(rng);
    g.data()[i] = px(rng);
    b.data()[i] = px(rng);
  }
  return {r, g, b};
}

QuatMatrixd projector_of(const QuatMatrixd& x) { return GrassmannPoint::from_frame(mgs_orthonormalize(x)).projector(); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qgrass_img_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(ColorImage, Validation) {
  ColorImage::Channel a = ColorImage::Channel::Zero(2, 2);
  EXPECT_EQ(code_of([&] { ColorImage(a, a, ColorImage::Channel::Zero(2, 3)); }), Errc::ImageSizeMismatch);
  ColorImage::Channel hot = a;
  hot(0, 0) = 256;
  EXPECT_EQ(code_of([&] { ColorImage(hot, a, a); }), Errc::InvalidArgument);
  const auto g = ColorImage::from_gray(ColorImage::Channel::Constant(2, 2, 7));
  EXPECT_EQ(g.r(), g.b());
  EXPECT_EQ(g.g()(1, 1), 7);
}

TEST(ImageToPureQuat, Examples) {
  const ColorImage::Channel z = ColorImage::Channel::Zero(1, 1);
  EXPECT_EQ(image_to_pure_quat(ColorImage(z, z, z)), QuatMatrixd::Zero(1, 1));
  const auto red = image_to_pure_quat(ColorImage(ColorImage::Channel::Constant(1, 1, 255), z, z));
  EXPECT_EQ(red(0, 0), Quaterniond(0, 255, 0, 0));

  ColorImage::Channel r(2, 1), g(2, 1), b(2, 1);
  r << 1, 4;
  g << 2, 5;
  b << 3, 6;
  const auto q = image_to_pure_quat(ColorImage(r, g, b));
  EXPECT_EQ(q(0, 0), Quaterniond(0, 1, 2, 3));
  EXPECT_EQ(q(1, 0), Quaterniond(0, 4, 5, 6));

  Rng rng(51);
  const auto m = image_to_pure_quat(random_image(4, 3, rng));
  EXPECT_EQ(m.w().norm(), 0.0);
}

TEST(Vectorize, ColumnMajor) {
  QuatMatrixd m(2, 2);
  const Quaterniond a(1, 0, 0, 0), b(0, 1, 0, 0), c(0, 0, 1, 0), d(0, 0, 0, 1);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 0, c);
  m.set(1, 1, d);
  const auto v = vectorize(m);
  ASSERT_EQ(v.rows(), 4);
  EXPECT_EQ(v(0, 0), a);
  EXPECT_EQ(v(1, 0), c);
  EXPECT_EQ(v(2, 0), b);
  EXPECT_EQ(v(3, 0), d);

  Rng rng(52);
  const auto col = random_quat_matrix(5, 1, rng);
  EXPECT_EQ(vectorize(col), col);
  const auto r = random_quat_matrix(3, 4, rng);
  EXPECT_EQ(unvectorize(vectorize(r), 3, 4), r);
  EXPECT_EQ(code_of([&] { unvectorize(vectorize(r), 5, 4); }), Errc::DimensionMismatch);
}

TEST(Resize, Bilinear) {
  ColorImage::Channel c(2, 2);
  c << 0, 100, 100, 200;
  const auto img = ColorImage::from_gray(c);
  EXPECT_EQ(resize_bilinear(img, 2, 2).r(), c);
  const auto one = resize_bilinear(img, 1, 1);
  EXPECT_DOUBLE_EQ(one.r()(0, 0), 100.0);
  const auto big = resize_bilinear(ColorImage::from_gray(ColorImage::Channel::Constant(3, 5, 42)), 7, 2);
  EXPECT_EQ(big.height(), 7);
  EXPECT_EQ(big.width(), 2);
  EXPECT_LE((big.g().array() - 42).abs().maxCoeff(), 1e-12);
  // upsampling stays within the source range
  const auto up = resize_bilinear(img, 5, 5);
  EXPECT_GE(up.r().minCoeff(), 0.0);
  EXPECT_LE(up.r().maxCoeff(), 200.0);
}

TEST(QuaternionPca, ConstantColumnsAreRankDeficient) {
  Rng rng(53);
  const auto v = random_quat_matrix(6, 1, rng);
  QuatMatrixd d(6, 2);
  d.set_col(0, v);
  d.set_col(1, v);
  EXPECT_EQ(code_of([&] { quaternion_pca(d, 1); }), Errc::RankDeficient);
  EXPECT_EQ(code_of([&] { quaternion_pca(d, 3); }), Errc::InvalidComponentCount);
  EXPECT_EQ(code_of([&] { quaternion_pca(d, 0); }), Errc::InvalidComponentCount);
}

TEST(QuaternionPca, OrthogonalCenteredColumns) {
  // centered columns 3 e1 q, 2 e2, 1 e3, and their negatives (so the mean is zero)
  QuatMatrixd d(5, 6);
  const Quaterniond q(0, 0.6, 0, 0.8);
  d.set(0, 0, 3.0 * q);
  d.set(1, 1, Quaterniond(2));
  d.set(2, 2, Quaterniond(0, 0, 1, 0));
  d.set(0, 3, -3.0 * q);
  d.set(1, 4, Quaterniond(-2));
  d.set(2, 5, Quaterniond(0, 0, -1, 0));
  const auto out = quaternion_pca(d, 2);
  ASSERT_EQ(out.cols(), 2);
  EXPECT_LE((projector_of(out) - GrassmannPoint::from_frame(QuatMatrixd::Identity(5, 2)).projector()).norm(), 1e-8);
}

TEST(QuaternionPca, MatchesFullQsvdOracle) {
  Rng rng(54);
  for (int t = 0; t < 10; ++t) {
    const auto d = random_quat_matrix(12, 7, rng);
    const auto out = quaternion_pca(d, 3);
    // oracle: top-3 left singular vectors of the centered data
    QuatMatrixd dc = d;
    for (Index r = 0; r < 12; ++r) {
      const double n = 7;
      const double mw = d.w().row(r).sum() / n, mx = d.x().row(r).sum() / n, my = d.y().row(r).sum() / n,
                   mz = d.z().row(r).sum() / n;
      dc.w().row(r).array() -= mw;
      dc.x().row(r).array() -= mx;
      dc.y().row(r).array() -= my;
      dc.z().row(r).array() -= mz;
    }
    const Qsvd s = qsvd(dc);
    const QuatMatrixd top = s.left_singular_vectors().left_cols(3);
    EXPECT_LE((projector_of(out) - projector_of(top)).norm(), 1e-8);
    // span(out) lies in span(Dc)
    const QuatMatrixd pc = projector_of(s.left_singular_vectors().left_cols(6));
    const QuatMatrixd x = mgs_orthonormalize(out);
    EXPECT_LE((pc * x - x).norm(), 1e-8);
  }
}

TEST(Mgs, Examples) {
  Rng rng(55);
  const auto x = random_frame(6, 3, rng);
  EXPECT_LE((mgs_orthonormalize(x) - x).norm(), 1e-12);

  QuatMatrixd v(2, 2);
  v.set(0, 0, Quaterniond(1));
  v.set(0, 1, Quaterniond(1));
  v.set(1, 1, Quaterniond(1));
  EXPECT_LE((mgs_orthonormalize(v) - QuatMatrixd::Identity(2)).norm(), 1e-15);

  QuatMatrixd dep(2, 2);
  dep.set(0, 0, Quaterniond::i());
  dep.set(0, 1, 2.0 * Quaterniond::i());
  try {
    mgs_orthonormalize(dep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LinearlyDependent);
    EXPECT_NE(std::string(e.what()).find("Zero norm encountered"), std::string::npos);
  }
}

TEST(Mgs, RightModuleDependence) {
  // second column is the first times a quaternion on the right: dependent over H
  Rng rng(56);
  const auto a = random_quat_matrix(4, 1, rng);
  QuatMatrixd v(4, 2);
  v.set_col(0, a);
  v.set_col(1, a.times_right(Quaterniond(0.3, -1, 2, 0.5)));
  EXPECT_EQ(code_of([&] { mgs_orthonormalize(v); }), Errc::LinearlyDependent);
}

TEST(Mgs, OrthonormalAndSpanPreserving) {
  Rng rng(57);
  for (int t = 0; t < 20; ++t) {
    const auto v = random_quat_matrix(8, 4, rng);
    const auto x = mgs_orthonormalize(v);
    EXPECT_LE((x.adjoint() * x - QuatMatrixd::Identity(4)).norm(), 1e-10);
    const Qsvd s = qsvd(v);
    EXPECT_LE((x * x.adjoint() - projector_of(s.left_singular_vectors().left_cols(4))).norm(), 1e-8);
  }
}

TEST(SetToGrassmann, Pipeline) {
  Rng rng(58);
  ImageSet set{{}, "cup", "1"};
  for (int i = 0; i < 6; ++i) set.images.push_back(random_image(9, 7, rng));
  const auto p = set_to_grassmann(set, 3, 4, 5);
  EXPECT_EQ(p.n(), 20);
  EXPECT_EQ(p.k(), 3);
  EXPECT_NEAR(p.projector().real_trace(), 3.0, 1e-6);
  EXPECT_LE(geodesic_distance(p, set_to_grassmann(set, 3, 4, 5)), 1e-7);

  ImageSet shuffled = set;
  std::reverse(shuffled.images.begin(), shuffled.images.end());
  std::swap(shuffled.images[0], shuffled.images[2]);
  EXPECT_LE((set_to_grassmann(shuffled, 3, 4, 5).projector() - p.projector()).norm(), 1e-8);
}

TEST(SetToGrassmann, Errors) {
  Rng rng(59);
  ImageSet empty{{}, "a", "b"};
  EXPECT_EQ(code_of([&] { set_to_grassmann(empty, 1, 2, 2); }), Errc::EmptyImageSet);
  ImageSet few{{random_image(3, 3, rng), random_image(3, 3, rng), random_image(3, 3, rng)}, "a", "b"};
  EXPECT_EQ(code_of([&] { set_to_grassmann(few, 3, 3, 3); }), Errc::RankDeficient);
  EXPECT_EQ(code_of([&] { set_to_grassmann(few, 0, 3, 3); }), Errc::InvalidComponentCount);
  ImageSet mixed{{random_image(3, 3, rng), random_image(4, 3, rng), random_image(3, 3, rng)}, "a", "b"};
  EXPECT_EQ(code_of([&] { set_to_grassmann(mixed, 1, 3, 3); }), Errc::ImageSizeMismatch);
}

TEST(ImageIo, PngRoundTrip) {
  TempDir dir;
  Rng rng(60);
  const auto img = random_image(5, 8, rng);
  write_png(dir.path / "a.png", img);
  const auto back = load_image(dir.path / "a.png");
  EXPECT_EQ(back.r(), img.r());
  EXPECT_EQ(back.g(), img.g());
  EXPECT_EQ(back.b(), img.b());
}

TEST(ImageIo, JpegRoundTrip) {
  TempDir dir;
  const auto img = ColorImage::from_gray(ColorImage::Channel::Constant(16, 16, 120));
  write_jpeg(dir.path / "a.jpg", img, 100);
  const auto back = load_image(dir.path / "a.jpg");
  EXPECT_EQ(back.height(), 16);
  EXPECT_LE((back.r().array() - 120).abs().maxCoeff(), 2.0);
}

TEST(ImageIo, GrayPngIsPromoted) {
  TempDir dir;
  const unsigned char px[6] = {0, 50, 100, 150, 200, 250};
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = 3;
  img.height = 2;
  img.format = PNG_FORMAT_GRAY;
  const std::string path = (dir.path / "g.png").string();
  ASSERT_TRUE(png_image_write_to_file(&img, path.c_str(), 0, px, 0, nullptr));
  const auto back = load_image(path);
  ASSERT_EQ(back.height(), 2);
  ASSERT_EQ(back.width(), 3);
  EXPECT_EQ(back.r()(1, 2), 250);
  EXPECT_EQ(back.r(), back.g());
  EXPECT_EQ(back.g(), back.b());
}

TEST(ImageIo, DecodeErrorNamesFile) {
  TempDir dir;
  {
    std::ofstream(dir.path / "bad.png") << "\x89PNG\r\n\x1a\n garbage";
    std::ofstream(dir.path / "bad.jpg") << "\xff\xd8\xff garbage";
  }
  for (const char* name : {"bad.png", "bad.jpg"}) {
    try {
      load_image(dir.path / name);
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::DecodeError);
      EXPECT_NE(std::string(e.what()).find(name), std::string::npos);
    }
  }
}

TEST(ImageIo, DatasetScan) {
  TempDir dir;
  Rng rng(61);
  for (const char* obj : {"b/2", "a/1", "a/3"}) {
    fs::create_directories(dir.path / obj);
    write_png(dir.path / obj / "v1.png", random_image(3, 3, rng));
  }
  fs::create_directories(dir.path / "a/empty");
  std::ofstream(dir.path / "a/1/.hidden.png") << "x";
  std::ofstream(dir.path / "a/1/notes.txt") << "x";
  const auto objects = scan_dataset(dir.path);
  ASSERT_EQ(objects.size(), 4u);
  EXPECT_EQ(objects[0].label + "/" + objects[0].object_id, "a/1");
  EXPECT_EQ(objects[3].label + "/" + objects[3].object_id, "b/2");
  EXPECT_EQ(list_images(dir.path / "a/1").size(), 1u);
  EXPECT_EQ(code_of([&] { load_image_set(dir.path / "a/empty", "a", "empty"); }), Errc::EmptyObjectDirectory);
  const auto set = load_image_set(dir.path / "a/3", "a", "3");
  EXPECT_EQ(set.images.size(), 1u);
  EXPECT_EQ(set.label, "a");
}
