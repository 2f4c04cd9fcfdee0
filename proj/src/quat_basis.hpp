#ifndef QGRASS_SRC_QUAT_BASIS_HPP
#define QGRASS_SRC_QUAT_BASIS_HPP

#include <vector>

#include "qgrass/quat_matrix.hpp"

namespace qgrass::detail {

/// Growing orthonormal set of columns in H^n (right H-module sense).
class QuatBasis {
 public:
  explicit QuatBasis(Index dim, Index capacity) : store_(dim, capacity) {}

  Index dim() const { return store_.rows(); }
  Index size() const { return size_; }

  QuatMatrixd matrix() const { return store_.left_cols(size_); }

  /// v - B (B^* v), applied twice.
  QuatMatrixd project_out(QuatMatrixd v) const {
    if (size_ == 0) return v;
    const QuatMatrixd b = matrix();
    const QuatMatrixd bh = b.adjoint();
    for (int pass = 0; pass < 2; ++pass) v -= b * (bh * v);
    return v;
  }

  /// Normalizes and appends v; the caller guarantees ||v|| > 0.
  void push_normalized(const QuatMatrixd& v) {
    if (size_ == store_.cols()) {
      QuatMatrixd grown(dim(), std::max<Index>(1, 2 * store_.cols()));
      grown.set_block(0, 0, store_);
      store_ = std::move(grown);
    }
    store_.set_col(size_++, v * (1.0 / v.norm()));
  }

  /// Adds `count` vectors chosen from `candidates` by repeatedly taking the
  /// candidate with the largest residual against the current basis. Returns
  /// the candidate index behind each added vector, or fewer entries if the
  /// candidates run out of independent directions (residual <= floor).
  std::vector<Index> extend_pivoted(std::vector<QuatMatrixd> candidates, Index count,
                                    double floor = 1e-8) {
    std::vector<Index> picked;
    std::vector<bool> used(candidates.size(), false);
    for (auto& c : candidates) c = project_out(std::move(c));
    while (static_cast<Index>(picked.size()) < count) {
      Index best = -1;
      double best_norm = floor;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (used[i]) continue;
        const double nrm = candidates[i].norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = static_cast<Index>(i);
        }
      }
      if (best < 0) break;
      used[static_cast<std::size_t>(best)] = true;
      const QuatMatrixd v = project_out(candidates[static_cast<std::size_t>(best)]);
      push_normalized(v);
      picked.push_back(best);
      const QuatMatrixd u = store_.col(size_ - 1);
      const QuatMatrixd uh = u.adjoint();
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (!used[i]) candidates[i] -= u * (uh * candidates[i]);
    }
    return picked;
  }

 private:
  QuatMatrixd store_;
  Index size_ = 0;
};

}  // namespace qgrass::detail

#endif  // QGRASS_SRC_QUAT_BASIS_HPP
