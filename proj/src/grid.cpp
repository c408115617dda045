#include "cgsf/grid.hpp"

#include "cgsf/errors.hpp"

namespace cgsf {

EpsilonGrid::EpsilonGrid(double base, int k_min, int k_max)
    : base_(base), k_min_(k_min), k_max_(k_max) {
  if (!(base > 1.0)) throw PreconditionError("grid base must exceed 1");
  if (k_min < 0) throw PreconditionError("grid k_min must be nonnegative so that eps <= 1");
  if (k_max - k_min + 1 < 8) throw PreconditionError("grid needs at least 8 points");
}

}  // namespace cgsf
