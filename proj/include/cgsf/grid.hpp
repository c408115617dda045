#pragma once

#include <cstddef>
#include <cmath>

namespace cgsf {

// Finite sample of the index set (0,1]: eps_k = base^-k for k in [k_min, k_max].
// Index 0 is the largest epsilon; the tail half holds the smallest ones.
class EpsilonGrid {
 public:
  EpsilonGrid() : EpsilonGrid(2.0, 4, 48) {}
  EpsilonGrid(double base, int k_min, int k_max);

  double base() const { return base_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  std::size_t size() const { return static_cast<std::size_t>(k_max_ - k_min_ + 1); }

  double eps(std::size_t i) const { return std::exp(log_eps(i)); }
  double log_eps(std::size_t i) const {
    return -static_cast<double>(k_min_ + static_cast<int>(i)) * std::log(base_);
  }

  // First index of the tail half and of the last third of that tail.
  std::size_t tail_begin() const { return size() / 2; }
  std::size_t late_tail_begin() const { return size() - (size() - tail_begin()) / 3; }

  friend bool operator==(const EpsilonGrid& a, const EpsilonGrid& b) = default;

 private:
  double base_;
  int k_min_;
  int k_max_;
};

// Thresholds shared by every sampled decision.
struct DecisionConfig {
  int m_max = 12;
  double v_cut = 12.0;
  double residual_threshold = 0.1;
  // Distance from a threshold below which a sampled valuation is not trusted.
  double margin = 0.05;
};

struct NetConfig {
  EpsilonGrid grid;
  DecisionConfig decide;
};

}  // namespace cgsf
