#pragma once

#include <optional>
#include <vector>

#include "cgsf/number.hpp"

namespace cgsf {

// Closed axis-aligned box whose corners are generalized numbers.
struct Box {
  GenVec lo;
  GenVec hi;
};

// Numeric corners of a box at one epsilon; `empty` when some lo > hi there.
struct BoxAt {
  std::vector<double> lo;
  std::vector<double> hi;
  bool empty = false;
};

// A net of finite unions of closed boxes. Every box must be nonempty for
// small epsilon; construction rejects boxes that are eventually empty.
class BoxNet {
 public:
  explicit BoxNet(std::size_t dim) : dim_(dim) {}
  BoxNet(std::size_t dim, std::vector<Box> boxes, const DecisionConfig& cfg = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  bool all_exact() const;

  std::vector<BoxAt> at(const EpsilonGrid& grid, std::size_t i) const;

 private:
  std::size_t dim_;
  std::vector<Box> boxes_;
};

// The internal set [K_eps] generated by a box net.
class InternalSet {
 public:
  explicit InternalSet(BoxNet net) : net_(std::move(net)) {}
  const BoxNet& net() const { return net_; }
  std::size_t dim() const { return net_.dim(); }

 private:
  BoxNet net_;
};

// An internal set that is sharply bounded: every corner is at most eps^-N.
class FunctionallyCompactSet {
 public:
  const InternalSet& internal() const { return internal_; }
  const BoxNet& net() const { return internal_.net(); }
  std::size_t dim() const { return internal_.dim(); }
  int sharp_bound() const { return sharp_bound_; }

 private:
  friend FunctionallyCompactSet make_functionally_compact(const InternalSet&, const DecisionConfig&);
  FunctionallyCompactSet(InternalSet s, int n) : internal_(std::move(s)), sharp_bound_(n) {}
  InternalSet internal_;
  int sharp_bound_;
};

// Strongly internal set generated by open boxes, or the whole space.
class StronglyInternalSet {
 public:
  explicit StronglyInternalSet(BoxNet open_boxes) : dim_(open_boxes.dim()), net_(std::move(open_boxes)) {}
  static StronglyInternalSet whole(std::size_t dim) { return StronglyInternalSet(dim); }

  std::size_t dim() const { return dim_; }
  bool is_whole() const { return !net_.has_value(); }
  const BoxNet& net() const { return *net_; }

 private:
  explicit StronglyInternalSet(std::size_t dim) : dim_(dim) {}
  std::size_t dim_;
  std::optional<BoxNet> net_;
};

// Least N in [0, m_max] with every corner bounded by eps^-N, if any.
std::optional<int> is_functionally_compact(const InternalSet& k, const DecisionConfig& cfg = {});
FunctionallyCompactSet make_functionally_compact(const InternalSet& k, const DecisionConfig& cfg = {});

Tri member_internal(const GenVec& x, const InternalSet& k, const NetConfig& cfg = {});
inline Tri member_internal(const GenVec& x, const FunctionallyCompactSet& k, const NetConfig& cfg = {}) {
  return member_internal(x, k.internal(), cfg);
}

struct ExteriorResult {
  Tri decision = Tri::Undecidable;
  // q with dist(x_eps, K_eps) >= eps^q eventually, when decision is True.
  std::optional<int> q;
};

ExteriorResult member_exterior(const GenVec& x, const FunctionallyCompactSet& k, const NetConfig& cfg = {});

// Distance from x to the box union, as a generalized number.
GeneralizedNumber distance_to(const GenVec& x, const BoxNet& k, const EpsilonGrid& grid);

FunctionallyCompactSet interleaving_union(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                          const DecisionConfig& cfg = {});
FunctionallyCompactSet intersection(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                    const NetConfig& cfg = {});
FunctionallyCompactSet product(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                               const DecisionConfig& cfg = {});
FunctionallyCompactSet interval(const GeneralizedNumber& a, const GeneralizedNumber& b,
                                const DecisionConfig& cfg = {});
// Box [lo_1,hi_1] x ... x [lo_n,hi_n] with the given corners.
FunctionallyCompactSet box_set(const GenVec& lo, const GenVec& hi, const DecisionConfig& cfg = {});

struct HausdorffResult {
  Tri equal = Tri::Undecidable;
  // Per-epsilon Hausdorff distance.
  GeneralizedNumber distance;
  // True in dimension one, where the candidate set provably contains the maximiser.
  bool exact = true;
};

HausdorffResult hausdorff_equal(const InternalSet& k, const InternalSet& l, const NetConfig& cfg = {});

// Decides d(x_eps, U_eps^c) >= eps^q eventually through the largest box margin.
Positivity member_strongly_internal(const GenVec& x, const StronglyInternalSet& u, const NetConfig& cfg = {});

// Least N such that the centre of the first box is a member with margin eps^N
// and modulus at most eps^-N.
int moderateness_witness(const StronglyInternalSet& u, const DecisionConfig& cfg = {});

// {x : d(x, U_eps^c) >= eps^j, |x|_inf <= eps^-j} as a box net.
FunctionallyCompactSet exhaustion(const StronglyInternalSet& u, int j, const DecisionConfig& cfg = {});

struct CoveringIndex {
  int j = 0;
  int margin_index = 0;  // least j with eps^j below the distance of K to the complement of U
  int bound_index = 0;   // sharp bound of K
  int witness = 0;       // moderateness witness of U
};

CoveringIndex find_covering_index(const FunctionallyCompactSet& k, const StronglyInternalSet& u,
                                  const DecisionConfig& cfg = {});

// A union of strongly internal sets; not itself strongly internal in general.
struct SharpUnion {
  std::vector<StronglyInternalSet> parts;
};

Tri member_sharp_union(const GenVec& x, const SharpUnion& u, const NetConfig& cfg = {});

}  // namespace cgsf
