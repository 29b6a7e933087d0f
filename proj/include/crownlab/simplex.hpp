#pragma once

#include "crownlab/types.hpp"

namespace crownlab {

/// Phase-one simplex (Bland's rule) for the feasibility problem
/// A w = b, w >= 0. Returns the minimal total infeasibility, which is zero
/// (up to rounding) exactly when the system is feasible.
double simplex_infeasibility(const RealMat& A, const RealVec& b);

}  // namespace crownlab
