#include <numbers>

#include <gtest/gtest.h>

#include "qgrass/grassmann.hpp"
#include "qgrass/quat_eig.hpp"
#include "test_support.hpp"

using namespace qgrass;
using namespace qgrass::testing;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

GrassmannPoint conjugated(const QuatMatrixd& u, const GrassmannPoint& p) {
  return GrassmannPoint::from_frame(u * p.frame());
}

}  // namespace

TEST(GrassmannPoint, FromFrame) {
  const auto p0 = GrassmannPoint::from_frame(QuatMatrixd::Identity(5, 2));
  EXPECT_EQ(p0.projector(), QuatMatrixd::Diagonal({Quaterniond(1), Quaterniond(1), Quaterniond(), Quaterniond(),
                                                   Quaterniond()}));
  EXPECT_EQ(p0.n(), 5);
  EXPECT_EQ(p0.k(), 2);

  const auto p = line(pi / 4).projector();
  for (Index r = 0; r < 2; ++r)
    for (Index c = 0; c < 2; ++c) EXPECT_NEAR(p(r, c).w, 0.5, 1e-15);

  Rng rng(31);
  const auto x = random_frame(6, 3, rng);
  const auto r = random_unitary(3, rng);
  EXPECT_LE((GrassmannPoint::from_frame(x * r).projector() - GrassmannPoint::from_frame(x).projector()).norm(),
            1e-10);

  EXPECT_EQ(code_of([] { GrassmannPoint::from_frame(2.0 * QuatMatrixd::Identity(3, 1)); }),
            Errc::NotOrthonormalFrame);
}

TEST(GrassmannPoint, Invariants) {
  Rng rng(32);
  const auto p = random_point(7, 3, rng);
  const auto pp = p.projector();
  EXPECT_LE((pp * pp - pp).norm(), 1e-8 * 7);
  EXPECT_LE((pp.adjoint() - pp).norm(), 1e-10 * 7);
  EXPECT_NEAR(pp.real_trace(), 3.0, 1e-6);
  EXPECT_LE(std::abs(pp.x().trace()) + std::abs(pp.y().trace()) + std::abs(pp.z().trace()), 1e-8);
}

TEST(GrassmannPoint, FromProjector) {
  Rng rng(33);
  const auto p = random_point(5, 2, rng);
  const auto q = GrassmannPoint::from_projector(p.projector());
  EXPECT_EQ(q.k(), 2);
  EXPECT_FALSE(q.has_frame());
  EXPECT_LE(geodesic_distance(p, q), 1e-7);
  EXPECT_EQ(code_of([] { GrassmannPoint::from_projector(0.5 * QuatMatrixd::Identity(2)); }), Errc::NotProjector);
  auto bad = QuatMatrixd::Identity(2);
  bad.set(0, 1, Quaterniond::i());
  EXPECT_EQ(code_of([&] { GrassmannPoint::from_projector(bad); }), Errc::NotProjector);
}

TEST(GeodesicDistance, Examples) {
  Rng rng(34);
  const auto p = random_point(6, 2, rng);
  EXPECT_LE(geodesic_distance(p, p), 1e-7);
  EXPECT_LE(geodesic_distance_full(p, p), 1e-7);

  const double d45 = geodesic_distance(line(0), line(pi / 4));
  EXPECT_NEAR(d45, sqrt2 * pi / 4, 1e-12);
  EXPECT_NEAR(d45, 1.110721, 1e-6);
  const double d90 = geodesic_distance(line(0), line(pi / 2));
  EXPECT_NEAR(d90, pi / sqrt2, 1e-12);
  EXPECT_NEAR(d90, 2.221441, 1e-6);
  EXPECT_NEAR(geodesic_distance_full(line(0), line(pi / 4)), sqrt2 * pi / 4, 1e-12);
  EXPECT_NEAR(geodesic_distance_full(line(0), line(pi / 2)), pi / sqrt2, 1e-12);
}

TEST(GeodesicDistance, W_IsRotationOracle) {
  // direct 2x2 computation: W = R(2 theta) has eigenvalues exp(+-2 i theta)
  for (double theta : {0.1, 0.5, 1.0, 1.4}) {
    const auto w = line(theta).reflection() * line(0).reflection();
    EXPECT_NEAR(w(0, 0).w, std::cos(2 * theta), 1e-14);
    EXPECT_NEAR(w(1, 0).w, std::sin(2 * theta), 1e-14);
    const double expect = 0.5 * std::sqrt(2 * (2 * theta) * (2 * theta));
    EXPECT_NEAR(geodesic_distance(line(0), line(theta)), expect, 1e-12);
  }
}

TEST(GeodesicDistance, PrincipalAngleOracle) {
  Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const auto x1 = random_real_frame(6, 2, rng);
    const auto x2 = random_real_frame(6, 2, rng);
    const auto p = GrassmannPoint::from_frame(QuatMatrixd::FromReal(x1));
    const auto q = GrassmannPoint::from_frame(QuatMatrixd::FromReal(x2));
    const double oracle = principal_angle_distance(x1, x2);
    EXPECT_NEAR(geodesic_distance(p, q), oracle, 1e-8 * oracle);
    EXPECT_NEAR(geodesic_distance_full(p, q), oracle, 1e-8 * oracle);
  }
}

TEST(GeodesicDistance, ComplexFramesMatchPrincipalAngles) {
  // complex frames embedded as w + x i: principal angles from the complex cross-Gram
  Rng rng(36);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a(5, 2), b(5, 2);
    for (Index i = 0; i < 10; ++i) {
      a.data()[i] = {nd(rng), nd(rng)};
      b.data()[i] = {nd(rng), nd(rng)};
    }
    const ComplexMatrix qa = Eigen::HouseholderQR<ComplexMatrix>(a).householderQ() * ComplexMatrix::Identity(5, 2);
    const ComplexMatrix qb = Eigen::HouseholderQR<ComplexMatrix>(b).householderQ() * ComplexMatrix::Identity(5, 2);
    const Eigen::VectorXd s = Eigen::JacobiSVD<ComplexMatrix>(qa.adjoint() * qb).singularValues();
    double sum = 0;
    for (Index i = 0; i < s.size(); ++i) sum += std::pow(std::acos(std::min(1.0, s(i))), 2);
    const double oracle = std::sqrt(2 * sum);
    const auto p = GrassmannPoint::from_frame(QuatMatrixd::FromComplex(qa));
    const auto q = GrassmannPoint::from_frame(QuatMatrixd::FromComplex(qb));
    EXPECT_NEAR(geodesic_distance(p, q), oracle, 1e-8 * oracle);
  }
}

TEST(GeodesicDistance, CompactMatchesFull) {
  Rng rng(37);
  for (auto [n, k] : {std::pair<Index, Index>{4, 1}, {6, 2}, {8, 3}, {9, 5}, {6, 3}}) {
    for (int t = 0; t < 5; ++t) {
      const auto p = random_point(n, k, rng);
      const auto q = random_point(n, k, rng);
      const double full = geodesic_distance_full(p, q);
      EXPECT_NEAR(geodesic_distance(p, q), full, 1e-9 * std::max(1.0, full)) << n << "," << k;
    }
  }
  // overlapping subspaces: shared directions
  const auto x = random_frame(8, 4, rng);
  const auto p = GrassmannPoint::from_frame(x.left_cols(3));
  QuatMatrixd y(8, 3);
  y.set_col(0, x.col(0));
  y.set_col(1, x.col(1));
  y.set_col(2, x.col(3));
  const auto q = GrassmannPoint::from_frame(y);
  EXPECT_NEAR(geodesic_distance(p, q), pi / sqrt2, 1e-9);
  EXPECT_NEAR(geodesic_distance_full(p, q), pi / sqrt2, 1e-9);
}

TEST(GeodesicDistance, MetricAxioms) {
  Rng rng(38);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_point(8, 3, rng);
    const auto q = random_point(8, 3, rng);
    const auto r = random_point(8, 3, rng);
    const double pq = geodesic_distance(p, q);
    const double qp = geodesic_distance(q, p);
    const double qr = geodesic_distance(q, r);
    const double rp = geodesic_distance(r, p);
    EXPECT_GE(pq, 0.0);
    EXPECT_NEAR(pq, qp, 1e-10);
    EXPECT_LE(pq, qr + rp + 1e-8);
    EXPECT_LE(pq, 0.5 * std::sqrt(8.0) * pi);
    EXPECT_GT(pq, 1e-7);
  }
}

TEST(GeodesicDistance, UnitaryInvariance) {
  Rng rng(39);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_point(6, 2, rng);
    const auto q = random_point(6, 2, rng);
    const auto u = random_unitary(6, rng);
    EXPECT_NEAR(geodesic_distance(conjugated(u, p), conjugated(u, q)), geodesic_distance(p, q), 1e-8);
  }
}

TEST(GeodesicDistance, DimensionMismatch) {
  Rng rng(40);
  const auto a = random_point(5, 2, rng);
  const auto b = random_point(5, 3, rng);
  const auto c = random_point(6, 2, rng);
  EXPECT_EQ(code_of([&] { geodesic_distance(a, b); }), Errc::DimensionMismatch);
  EXPECT_EQ(code_of([&] { geodesic_distance(a, c); }), Errc::DimensionMismatch);
  EXPECT_EQ(code_of([&] { geodesic_interpolate(a, c, 0.5); }), Errc::DimensionMismatch);
}

TEST(GeodesicInterpolate, Endpoints) {
  Rng rng(41);
  const auto p = random_point(6, 2, rng);
  const auto q = random_point(6, 2, rng);
  EXPECT_LE((geodesic_interpolate(p, q, 0.0).projector() - p.projector()).norm(), 1e-10);
  EXPECT_LE((geodesic_interpolate(p, q, 1.0).projector() - q.projector()).norm(), 1e-6);
  EXPECT_EQ(code_of([] { geodesic_interpolate(line(0), line(pi / 2), 0.5); }), Errc::CutLocus);
}

TEST(GeodesicInterpolate, ConstantSpeed) {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_point(6, 2, rng);
    const auto q = random_point(6, 2, rng);
    const double d = geodesic_distance(p, q);
    for (double s : {0.25, 0.5, 0.75}) {
      const auto g = geodesic_interpolate(p, q, s);
      EXPECT_NEAR(geodesic_distance(p, g), s * d, 1e-6);
      EXPECT_NEAR(geodesic_distance(g, q), (1 - s) * d, 1e-6);
      EXPECT_EQ(g.k(), 2);
    }
  }
}

TEST(GeodesicInterpolate, ProjectorOnlyInputs) {
  Rng rng(43);
  const auto p = GrassmannPoint::from_projector(random_point(5, 2, rng).projector());
  const auto q = GrassmannPoint::from_projector(random_point(5, 2, rng).projector());
  const auto g = geodesic_interpolate(p, q, 0.5);
  EXPECT_NEAR(geodesic_distance(p, g), 0.5 * geodesic_distance(p, q), 1e-6);
  EXPECT_LE((geodesic_interpolate(p, q, 1.0).projector() - q.projector()).norm(), 1e-6);
}

TEST(GeodesicInterpolate, RealLineRotates) {
  const auto g = geodesic_interpolate(line(0), line(pi / 3), 0.5);
  EXPECT_LE((g.projector() - line(pi / 6).projector()).norm(), 1e-10);
}

TEST(DistanceMatrix, Examples) {
  Rng rng(44);
  const auto p = random_point(4, 2, rng);
  const auto one = distance_matrix({p});
  EXPECT_EQ(one.size(), 1);
  EXPECT_EQ(one.d(0, 0), 0.0);
  EXPECT_EQ(one.labels.size(), 1u);

  const auto two = distance_matrix({p, p});
  EXPECT_LE(two.d.cwiseAbs().maxCoeff(), 1e-7);

  const auto col = distance_matrix({line(0), line(pi / 8), line(pi / 4)}, {"a", "b", "c"});
  EXPECT_NEAR(col.d(0, 1), sqrt2 * pi / 8, 1e-12);
  EXPECT_NEAR(col.d(1, 2), sqrt2 * pi / 8, 1e-12);
  EXPECT_NEAR(col.d(0, 2), sqrt2 * pi / 4, 1e-12);
  EXPECT_NEAR(col.d(0, 1) + col.d(1, 2), col.d(0, 2), 1e-12);
  EXPECT_EQ(col.labels[2], "c");
}

TEST(DistanceMatrix, SymmetricAndThreadIndependent) {
  Rng rng(45);
  std::vector<GrassmannPoint> pts;
  for (int i = 0; i < 9; ++i) pts.push_back(random_point(7, 2, rng));
  const auto a = distance_matrix(pts, {}, 1);
  const auto b = distance_matrix(pts, {}, 4);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.d, a.d.transpose());
  EXPECT_EQ(a.d.diagonal().norm(), 0.0);
  EXPECT_GE(a.d.minCoeff(), 0.0);
}

TEST(DistanceMatrix, MixedDimensionsNamePair) {
  Rng rng(46);
  try {
    distance_matrix({random_point(4, 2, rng), random_point(4, 1, rng)}, {"x", "y"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}
