#include "qgrass/classify.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "qgrass/parallel.hpp"

namespace qgrass {

std::string nearest_cluster_from_distances(const std::vector<double>& distances,
                                           const std::vector<std::string>& labels) {
  if (distances.empty() || distances.size() != labels.size())
    throw Error(Errc::InvalidArgument, "need one label per training distance");
  std::map<std::string, std::pair<double, int>> sums;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    auto& s = sums[labels[i]];
    s.first += distances[i];
    s.second += 1;
  }
  // std::map iterates classes in lexicographic order; strict < keeps the first on ties.
  std::string best;
  double best_mean = std::numeric_limits<double>::infinity();
  for (const auto& [label, s] : sums) {
    const double mean = s.first / s.second;
    if (mean < best_mean || best.empty()) {
      best = label;
      best_mean = mean;
    }
  }
  return best;
}

std::string nearest_cluster_classify(const GrassmannPoint& test, const std::vector<LabeledPoint>& train) {
  if (train.empty()) throw Error(Errc::InvalidArgument, "training set is empty");
  std::vector<double> d;
  std::vector<std::string> labels;
  for (const auto& lp : train) {
    d.push_back(geodesic_distance(test, lp.point));
    labels.push_back(lp.label);
  }
  return nearest_cluster_from_distances(d, labels);
}

ThreeSetVerdict three_set_recognition(const GrassmannPoint& a, const GrassmannPoint& b, const GrassmannPoint& c) {
  ThreeSetVerdict v{};
  v.d_ab = geodesic_distance(a, b);
  v.d_ac = geodesic_distance(a, c);
  v.d_bc = geodesic_distance(b, c);
  v.same = {0, 1};
  v.other = 2;
  double best = v.d_ab;
  if (v.d_ac < best) {
    best = v.d_ac;
    v.same = {0, 2};
    v.other = 1;
  }
  if (v.d_bc < best) {
    v.same = {1, 2};
    v.other = 0;
  }
  return v;
}

std::uint64_t bounded_draw(std::uint64_t bound, std::mt19937_64& rng) {
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

TrialReport cross_validate(const DistanceMatrix& distances, const std::vector<std::string>& labels,
                           const Protocol& protocol, std::uint64_t seed) {
  const Index n = distances.size();
  if (static_cast<Index>(labels.size()) != n)
    throw Error(Errc::DimensionMismatch, "one class label per distance-matrix row is required");
  if (protocol.trials < 1 || protocol.train_per_class < 1)
    throw Error(Errc::InvalidArgument, "trials and train_per_class must be positive");

  std::map<std::string, std::vector<Index>> members;
  for (Index i = 0; i < n; ++i) members[labels[static_cast<std::size_t>(i)]].push_back(i);
  for (const auto& [label, idx] : members) {
    if (static_cast<int>(idx.size()) <= protocol.train_per_class)
      throw Error(Errc::InsufficientClassSize, "class '" + label + "' has " + std::to_string(idx.size()) +
                                                   " points; need more than " +
                                                   std::to_string(protocol.train_per_class));
  }

  TrialReport report;
  report.protocol = protocol;
  report.seed = seed;
  for (int trial = 0; trial < protocol.trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);

    std::vector<Index> train, test;
    for (const auto& [label, idx] : members) {
      std::vector<Index> shuffled = idx;
      for (std::size_t i = shuffled.size() - 1; i > 0; --i)
        std::swap(shuffled[i], shuffled[bounded_draw(i + 1, rng)]);
      const auto split = shuffled.begin() + protocol.train_per_class;
      train.insert(train.end(), shuffled.begin(), split);
      test.insert(test.end(), split, shuffled.end());
    }

    std::vector<std::string> train_labels;
    for (Index t : train) train_labels.push_back(labels[static_cast<std::size_t>(t)]);
    int correct = 0;
    std::vector<double> d(train.size());
    for (Index q : test) {
      for (std::size_t i = 0; i < train.size(); ++i) d[i] = distances.d(q, train[i]);
      if (nearest_cluster_from_distances(d, train_labels) == labels[static_cast<std::size_t>(q)]) ++correct;
    }
    report.per_trial_accuracy.push_back(100.0 * correct / static_cast<double>(test.size()));
  }

  const auto& acc = report.per_trial_accuracy;
  const double count = static_cast<double>(acc.size());
  report.mean = std::accumulate(acc.begin(), acc.end(), 0.0) / count;
  double ss = 0;
  for (double a : acc) ss += (a - report.mean) * (a - report.mean);
  report.stddev = acc.size() > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
  return report;
}

TrialReport cross_validate(const std::vector<LabeledPoint>& points, const Protocol& protocol, std::uint64_t seed,
                           unsigned threads) {
  std::vector<GrassmannPoint> pts;
  std::vector<std::string> labels, ids;
  for (const auto& lp : points) {
    pts.push_back(lp.point);
    labels.push_back(lp.label);
    ids.push_back(lp.label + "/" + lp.object_id);
  }
  return cross_validate(distance_matrix(pts, ids, threads), labels, protocol, seed);
}

}  // namespace qgrass
