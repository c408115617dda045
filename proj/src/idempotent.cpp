#include "cgsf/idempotent.hpp"

#include <algorithm>
#include <cmath>

#include "cgsf/errors.hpp"

namespace cgsf {

IdempotentSet IdempotentSet::intervals(std::vector<Interval> parts) {
  for (auto& p : parts) {
    p.lo = std::max(p.lo, 0.0);
    p.hi = std::min(p.hi, 1.0);
  }
  std::erase_if(parts, [](const Interval& p) { return !(p.lo < p.hi); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& p : parts) {
    if (!merged.empty() && p.lo <= merged.back().hi) merged.back().hi = std::max(merged.back().hi, p.hi);
    else merged.push_back(p);
  }
  IdempotentSet s;
  s.family_ = Family::IntervalUnion;
  s.intervals_ = std::move(merged);
  return s;
}

IdempotentSet IdempotentSet::dyadic_alternating(int parity) {
  IdempotentSet s;
  s.family_ = Family::DyadicAlternating;
  s.parity_ = parity & 1;
  return s;
}

IdempotentSet IdempotentSet::harmonic_alternating(int parity) {
  IdempotentSet s;
  s.family_ = Family::HarmonicAlternating;
  s.parity_ = parity & 1;
  return s;
}

IdempotentSet IdempotentSet::finite(std::vector<double> points) {
  IdempotentSet s;
  s.family_ = Family::Finite;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  s.points_ = std::move(points);
  return s;
}

bool IdempotentSet::contains(double eps) const {
  bool in = false;
  switch (family_) {
    case Family::IntervalUnion:
      in = std::any_of(intervals_.begin(), intervals_.end(),
                       [eps](const Interval& p) { return p.lo < eps && eps <= p.hi; });
      break;
    case Family::DyadicAlternating: {
      // Round first so that exact powers of two land in their own block.
      long block = static_cast<long>(std::floor(std::log2(1.0 / eps) + 1e-9));
      in = (block & 1) == parity_;
      break;
    }
    case Family::HarmonicAlternating: {
      long n = static_cast<long>(std::ceil(1.0 / eps - 1e-9)) - 1;
      in = (n & 1) == parity_;
      break;
    }
    case Family::Finite:
      in = std::any_of(points_.begin(), points_.end(),
                       [eps](double p) { return std::fabs(p - eps) <= 1e-12 * p; });
      break;
  }
  return in != negated_;
}

IdempotentSet IdempotentSet::complement() const {
  IdempotentSet s = *this;
  s.negated_ = !negated_;
  return s;
}

bool IdempotentSet::zero_in_closure() const {
  bool base = false;    // 0 in closure of the underlying family
  bool base_c = false;  // 0 in closure of its complement
  switch (family_) {
    case Family::IntervalUnion: {
      bool starts_at_zero = !intervals_.empty() && intervals_.front().lo <= 0.0;
      base = starts_at_zero;
      base_c = !starts_at_zero;
      break;
    }
    case Family::DyadicAlternating:
    case Family::HarmonicAlternating:
      base = base_c = true;
      break;
    case Family::Finite:
      base = false;
      base_c = true;
      break;
  }
  return negated_ ? base_c : base;
}

bool IdempotentSet::zero_in_closure_of_complement() const { return complement().zero_in_closure(); }

GeneralizedNumber idempotent(const IdempotentSet& s, const EpsilonGrid& grid) {
  std::vector<LogReal> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    v[i] = s.contains(grid.eps(i)) ? LogReal(1, 0.0) : LogReal();
  auto gen = std::make_shared<const Generator>(
      [s](double log_eps) { return s.contains(std::exp(log_eps)) ? LogReal(1, 0.0) : LogReal(); });
  return SampledNet(grid, std::move(v), std::move(gen));
}

namespace {

std::vector<std::size_t> owner_per_index(const std::vector<IdempotentSet>& parts, const EpsilonGrid& grid) {
  std::vector<std::size_t> owner(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (parts[j].contains(grid.eps(i))) {
        owner[i] = j;
        ++hits;
      }
    }
    if (hits != 1)
      throw PartitionError("parts do not partition the grid at eps index " + std::to_string(i));
  }
  return owner;
}

}  // namespace

GeneralizedNumber interleave(const std::vector<GeneralizedNumber>& points,
                             const std::vector<IdempotentSet>& parts, const EpsilonGrid& grid) {
  if (points.size() != parts.size() || points.empty())
    throw PartitionError("points and parts must have equal nonzero length");
  auto owner = owner_per_index(parts, grid);
  if (points.size() == 1) return points.front();
  std::vector<LogReal> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = points[owner[i]].log_value_at(grid, i);
  return SampledNet(grid, std::move(v));
}

GenVec interleave(const std::vector<GenVec>& points, const std::vector<IdempotentSet>& parts,
                  const EpsilonGrid& grid) {
  if (points.empty()) throw PartitionError("no points to interleave");
  GenVec out(points.front().size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    std::vector<GeneralizedNumber> comp;
    for (const auto& p : points) {
      if (p.size() != out.size()) throw PreconditionError("dimension mismatch");
      comp.push_back(p[d]);
    }
    out[d] = interleave(comp, parts, grid);
  }
  return out;
}

}  // namespace cgsf
