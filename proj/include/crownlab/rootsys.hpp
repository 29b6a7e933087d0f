#pragma once

#include <vector>

#include "crownlab/types.hpp"

namespace crownlab {

enum class RootFamily { TypeASplit, TypeAComplex, Explicit };

/// Reduced root system with multiplicities, realized in an ambient Euclidean
/// space. Positive roots are stored together with their coefficients over the
/// simple roots; the Weyl group is stored as explicit orthogonal matrices.
struct RootSystem {
  RootFamily family = RootFamily::Explicit;
  int rank = 0;
  int ambient_dim = 0;
  std::vector<RealVec> positive_roots;
  std::vector<int> multiplicities;
  std::vector<int> simple_roots;  // indices into positive_roots
  /// simple_coeffs[j] expresses positive_roots[j] over the simple roots.
  std::vector<Eigen::VectorXi> simple_coeffs;
  RealVec rho;
  std::vector<RealMat> weyl_group;  // weyl_group[0] is the identity

  bool type_a() const { return family != RootFamily::Explicit; }
  int num_positive() const { return static_cast<int>(positive_roots.size()); }
  const RealVec& simple_root(int i) const { return positive_roots[simple_roots[i]]; }
  /// Real dimension of N, i.e. the multiplicity-weighted count of positive roots.
  int dim_n() const;
};

/// Positive element of the root semigroup, written over the simple roots.
struct SemigroupElement {
  Eigen::VectorXi coeffs;
  int degree = 0;
};

/// n is the matrix size for the type A families; for Explicit pass the data
/// through build_explicit_root_system instead.
RootSystem build_root_system(RootFamily family, int n);

/// Validates reducedness, integrality over the detected simple roots, closure
/// of the root set under simple reflections and W-invariance of multiplicities.
/// Throws std::invalid_argument on inconsistent input.
RootSystem build_explicit_root_system(const std::vector<RealVec>& positive_roots,
                                      const std::vector<int>& multiplicities);

/// Recomputes rho = 1/2 * sum m_a a.
RealVec rho_from_definition(const RootSystem& rs);

/// Ambient vector of a semigroup element.
RealVec semigroup_vector(const RootSystem& rs, const Eigen::VectorXi& coeffs);

/// exp(sigma(H + iC)) with sigma applied as the bilinear pairing.
cplx character_exponent(const RealVec& H, const RealVec& C, const ComplexVec& sigma);

/// Subtracts the mean so that a type A vector lies in the root span.
RealVec project_zero_sum(const RealVec& v);

std::vector<RealVec> weyl_orbit(const RootSystem& rs, const RealVec& y);

struct Margin {
  bool member = false;
  double margin = 0.0;
};

/// Signed margin min_a (scale*pi/2 - |a(Y)|); membership iff margin > 0.
Margin in_crown_omega(const RootSystem& rs, const RealVec& Y, double scale = 1.0);

bool is_regular(const RootSystem& rs, const RealVec& Y, double tol = 1e-12);
bool is_regular(const RootSystem& rs, const ComplexVec& lambda, double tol = 1e-12);

/// Unique element of W*v in the closed positive chamber.
RealVec dominant_representative(const RootSystem& rs, const RealVec& v);

/// Membership of x in conv(W y). Type A uses majorization; other systems are
/// decided by LP feasibility over the orbit vertices. The margin is always
/// the dominance-cone margin: the smallest simple-root coefficient of
/// dom(y) - dom(x), penalized by any component of x - y outside the root span
/// or (type A) any difference of coordinate sums.
Margin in_weyl_hull(const RootSystem& rs, const RealVec& x, const RealVec& y,
                    double tol = kGeomTol);

/// Brute-force LP feasibility of x = sum w_i v_i, w >= 0, sum w_i = 1 over the
/// orbit vertices of y. Independent of the majorization path.
bool in_weyl_hull_lp(const RootSystem& rs, const RealVec& x, const RealVec& y,
                     double tol = kGeomTol);

/// Type A fast path on raw coordinates (no root system needed).
double majorization_margin(const RealVec& x, const RealVec& y);

}  // namespace crownlab
