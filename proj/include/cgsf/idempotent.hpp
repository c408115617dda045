#pragma once

#include <vector>

#include "cgsf/number.hpp"

namespace cgsf {

// A representable subset S of (0,1]; e_S is the class of its indicator net.
class IdempotentSet {
 public:
  enum class Family { IntervalUnion, DyadicAlternating, HarmonicAlternating, Finite };

  struct Interval {
    double lo;  // open end
    double hi;  // closed end
  };

  // Union of intervals (lo, hi] inside (0,1].
  static IdempotentSet intervals(std::vector<Interval> parts);
  static IdempotentSet full() { return intervals({{0.0, 1.0}}); }
  static IdempotentSet empty() { return intervals({}); }
  // eps in S iff floor(log2(1/eps)) has the given parity.
  static IdempotentSet dyadic_alternating(int parity);
  // eps in S iff eps lies in [1/(n+1), 1/n) with n of the given parity.
  static IdempotentSet harmonic_alternating(int parity);
  // An explicit finite set of epsilons.
  static IdempotentSet finite(std::vector<double> points);

  bool contains(double eps) const;
  IdempotentSet complement() const;

  Family family() const { return family_; }
  bool zero_in_closure() const;
  bool zero_in_closure_of_complement() const;

 private:
  Family family_ = Family::IntervalUnion;
  bool negated_ = false;
  int parity_ = 0;
  std::vector<Interval> intervals_;
  std::vector<double> points_;
};

GeneralizedNumber idempotent(const IdempotentSet& s, const EpsilonGrid& grid);

// Sum over j of e_{S_j} * a_j; the parts must partition the grid.
GeneralizedNumber interleave(const std::vector<GeneralizedNumber>& points,
                             const std::vector<IdempotentSet>& parts, const EpsilonGrid& grid);
GenVec interleave(const std::vector<GenVec>& points, const std::vector<IdempotentSet>& parts,
                  const EpsilonGrid& grid);

}  // namespace cgsf
