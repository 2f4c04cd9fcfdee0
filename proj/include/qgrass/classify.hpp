#ifndef QGRASS_CLASSIFY_HPP
#define QGRASS_CLASSIFY_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qgrass/grassmann.hpp"

namespace qgrass {

struct LabeledPoint {
  GrassmannPoint point;
  std::string label;
  std::string object_id;
};

/// Class whose training points have the smallest mean distance to the test
/// point. `distances[i]` pairs with `labels[i]`. Ties go to the smallest
/// class id in lexicographic order.
std::string nearest_cluster_from_distances(const std::vector<double>& distances,
                                           const std::vector<std::string>& labels);

std::string nearest_cluster_classify(const GrassmannPoint& test, const std::vector<LabeledPoint>& train);

/// Verdict for three image sets from two classes: the closest pair shares a class.
struct ThreeSetVerdict {
  std::array<int, 2> same;  // indices into (A, B, C) = (0, 1, 2)
  int other;
  double d_ab;
  double d_ac;
  double d_bc;
};

/// Ties are broken in pair order AB < AC < BC.
ThreeSetVerdict three_set_recognition(const GrassmannPoint& a, const GrassmannPoint& b, const GrassmannPoint& c);

struct Protocol {
  int train_per_class = 5;
  int trials = 10;
  int k = 9;
  int resize_rows = 20;
  int resize_cols = 20;
};

struct TrialReport {
  Protocol protocol;
  std::uint64_t seed = 0;
  std::vector<double> per_trial_accuracy;  // percent
  double mean = 0;
  double stddev = 0;  // sample standard deviation, percent
};

/// Repeated random-split evaluation on a precomputed distance matrix.
/// `labels[i]` is the class of row i. Every class needs more than
/// protocol.train_per_class members. Trial j draws its per-class shuffles
/// from mt19937_64 seeded with seed_seq{seed_lo, seed_hi, j}.
TrialReport cross_validate(const DistanceMatrix& distances, const std::vector<std::string>& labels,
                           const Protocol& protocol, std::uint64_t seed);

/// Same, computing the distance matrix first.
TrialReport cross_validate(const std::vector<LabeledPoint>& points, const Protocol& protocol, std::uint64_t seed,
                           unsigned threads = 1);

/// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t bounded_draw(std::uint64_t bound, std::mt19937_64& rng);

}  // namespace qgrass

#endif  // QGRASS_CLASSIFY_HPP
