#pragma once

#include <map>
#include <vector>

#include "crownlab/rootsys.hpp"
#include "crownlab/types.hpp"

namespace crownlab {

/// Complex covector in ambient coordinates; `regular` caches whether
/// <lambda, alpha> is nonzero for every root.
struct SpectralParameter {
  ComplexVec coords;
  bool regular = false;

  static SpectralParameter make(const RootSystem& rs, const ComplexVec& coords);
  /// i * nu for a real covector nu.
  static SpectralParameter imaginary(const RootSystem& rs, const RealVec& nu);
};

/// Point exp(H + iC) of the complexified torus.
struct ToralPoint {
  RealVec H;
  RealVec C;
};

/// Harish-Chandra coefficients Gamma_mu for every mu in the root semigroup
/// with degree <= max_degree, in breadth-first (degree) order.
///
/// The coefficients are those of the expansion
///   phi_lambda(a) = sum_w c(w lambda) a^{w lambda - rho} Psi_{w lambda}(a),
///   Psi_lambda(a) = sum_mu Gamma_mu(lambda) a^{-mu},
/// so they satisfy
///   (<mu,mu> - 2<mu,lambda>) Gamma_mu
///     = 2 sum_{a>0} m_a sum_{k>=1} Gamma_{mu-2ka} (<mu + rho - 2ka, a> - <a, lambda>).
class CoefficientTable {
 public:
  struct Entry {
    Eigen::VectorXi coeffs;  // over the simple roots
    int degree = 0;
    RealVec mu;  // ambient vector
    cplx value;
  };

  CoefficientTable(const RootSystem& rs, ComplexVec lambda, int max_degree);

  const RootSystem& root_system() const { return *rs_; }
  const ComplexVec& lambda() const { return lambda_; }
  int max_degree() const { return max_degree_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Entry index for a coefficient vector, or -1 if it lies outside the
  /// semigroup or beyond max_degree.
  int index_of(const Eigen::VectorXi& coeffs) const;
  cplx value(const Eigen::VectorXi& coeffs) const;

  /// max_mu |Gamma_mu| e^{-mu(H)}: the empirical constant of the growth
  /// bound |Gamma_mu| <= C_H e^{mu(H)}.
  double growth_constant(const RealVec& H) const;

 private:
  friend CoefficientTable gamma_coeffs(const RootSystem&, const SpectralParameter&, int);
  friend CoefficientTable limit_coeffs(const RootSystem&, const SpectralParameter&, int);

  const RootSystem* rs_;
  ComplexVec lambda_;
  int max_degree_;
  std::vector<Entry> entries_;
  std::map<std::vector<int>, int> index_;
};

/// Coefficients by the recursion above. Throws
/// NumericalGuard(SingularRecursion) naming mu when |<mu,mu> - 2<mu,lambda>|
/// drops below 1e-12.
CoefficientTable gamma_coeffs(const RootSystem& rs, const SpectralParameter& lambda, int max_degree);

/// Limits Gamma_mu[lambda0] = lim_{t->inf} Gamma_mu(t lambda0), computed by
/// the leading-order recursion
///   Gamma_mu[l0] = (1/<mu,l0>) sum_a m_a sum_k Gamma_{mu-2ka}[l0] <a, l0>.
CoefficientTable limit_coeffs(const RootSystem& rs, const SpectralParameter& lambda0, int max_degree);

struct PsiValue {
  cplx value;
  double tail_estimate = 0.0;  // heuristic: uses the empirical growth constant
  bool converged = false;      // tail_estimate <= 1e-8 |value|
};

/// Truncated Psi(a) = sum_mu Gamma_mu a^{-mu}. Requires a(H) > 0 for all
/// simple roots, else NumericalGuard(NotInPositiveChamber).
///
/// Tail estimate: with C = growth_constant(H/2) and q = max_i e^{-a_i(H)/2},
/// every omitted term is bounded by C e^{-mu(H)/2} <= C q^{deg mu}, giving
/// C * sum_{d > D} #{mu : deg mu = d} q^d.
PsiValue psi(const CoefficientTable& table, const ToralPoint& a);

/// Default truncation: 40 for rank <= 2, 24 above.
int default_max_degree(const RootSystem& rs);

}  // namespace crownlab
