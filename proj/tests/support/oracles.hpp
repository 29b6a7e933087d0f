#pragma once

#include <vector>

#include "crownlab/types.hpp"

namespace oracle {

using crownlab::cplx;

/// Spherical function of SL(2,C)/SU(2) in closed form,
///   phi(z) = sinh(s r) / (s sinh r),  cosh r = tr(Z)/2,
/// for lambda = (s, -s). Independent of the series and of the K-integral.
cplx sl2c_spherical(cplx s, const crownlab::ComplexMat& Z);

/// A1 coefficients Gamma_{k alpha}(lambda), lambda = (s, -s), k = 0..max_k,
/// by expanding the recursion symbolically as polynomials in s over a
/// common denominator and evaluating at the end.
std::vector<cplx> a1_unrolled_gamma(int multiplicity, cplx s, int max_k);

/// Polynomial with complex coefficients, lowest degree first.
struct Poly {
  std::vector<cplx> c;
  cplx operator()(cplx x) const;
};
Poly operator*(const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);

}  // namespace oracle
