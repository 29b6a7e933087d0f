#include "crownlab/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "crownlab/simplex.hpp"

namespace crownlab {

namespace {

constexpr double kOrbitTol = 1e-12;

RealMat reflection_matrix(const RealVec& alpha) {
  const auto d = alpha.size();
  return RealMat::Identity(d, d) - 2.0 * alpha * alpha.transpose() / alpha.squaredNorm();
}

std::vector<RealMat> generate_weyl_group(const RootSystem& rs) {
  std::vector<RealMat> gens;
  for (int i = 0; i < rs.rank; ++i) gens.push_back(reflection_matrix(rs.simple_root(i)));

  std::vector<RealMat> group{RealMat::Identity(rs.ambient_dim, rs.ambient_dim)};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& s : gens) {
      RealMat cand = s * group[head];
      const bool seen = std::any_of(group.begin(), group.end(), [&](const RealMat& g) {
        return (g - cand).cwiseAbs().maxCoeff() < 1e-9;
      });
      if (!seen) group.push_back(std::move(cand));
      if (group.size() > 100000) throw std::invalid_argument("Weyl group too large");
    }
  }
  return group;
}

bool lex_less(const RealVec& a, const RealVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - kOrbitTol) return true;
    if (a(i) > b(i) + kOrbitTol) return false;
  }
  return false;
}

bool approx_equal(const RealVec& a, const RealVec& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kOrbitTol;
}

void fill_rho(RootSystem& rs) { rs.rho = rho_from_definition(rs); }

}  // namespace

int RootSystem::dim_n() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

RealVec rho_from_definition(const RootSystem& rs) {
  RealVec rho = RealVec::Zero(rs.ambient_dim);
  for (int j = 0; j < rs.num_positive(); ++j) rho += 0.5 * rs.multiplicities[j] * rs.positive_roots[j];
  return rho;
}

RootSystem build_root_system(RootFamily family, int n) {
  if (family == RootFamily::Explicit) {
    throw std::invalid_argument("explicit root systems are built from root data");
  }
  if (n < 2) throw std::invalid_argument("type A requires n >= 2");

  RootSystem rs;
  rs.family = family;
  rs.rank = n - 1;
  rs.ambient_dim = n;
  const int mult = family == RootFamily::TypeASplit ? 1 : 2;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RealVec a = RealVec::Zero(n);
      a(i) = 1.0;
      a(j) = -1.0;
      Eigen::VectorXi c = Eigen::VectorXi::Zero(n - 1);
      c.segment(i, j - i).setOnes();
      if (j == i + 1) rs.simple_roots.push_back(static_cast<int>(rs.positive_roots.size()));
      rs.positive_roots.push_back(a);
      rs.simple_coeffs.push_back(c);
      rs.multiplicities.push_back(mult);
    }
  }
  fill_rho(rs);
  rs.weyl_group = generate_weyl_group(rs);
  return rs;
}

RootSystem build_explicit_root_system(const std::vector<RealVec>& positive_roots,
                                      const std::vector<int>& multiplicities) {
  if (positive_roots.empty()) throw std::invalid_argument("root system: no roots");
  if (positive_roots.size() != multiplicities.size()) {
    throw std::invalid_argument("root system: multiplicities do not match roots");
  }
  const auto dim = positive_roots.front().size();
  for (std::size_t j = 0; j < positive_roots.size(); ++j) {
    if (positive_roots[j].size() != dim) throw std::invalid_argument("root system: ragged roots");
    if (positive_roots[j].norm() < 1e-12) throw std::invalid_argument("root system: zero root");
    if (multiplicities[j] < 1) throw std::invalid_argument("root system: multiplicity must be positive");
  }
  const int np = static_cast<int>(positive_roots.size());

  // Reducedness: no two roots proportional (up to sign, which would
  // contradict positivity anyway).
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      const auto& a = positive_roots[i];
      const auto& b = positive_roots[j];
      const double cosang = a.dot(b) / (a.norm() * b.norm());
      if (std::abs(std::abs(cosang) - 1.0) < 1e-12) {
        throw std::invalid_argument("root system: proportional roots (" + std::to_string(i) + ", " +
                                    std::to_string(j) + "); only reduced systems are supported");
      }
    }
  }

  RootSystem rs;
  rs.family = RootFamily::Explicit;
  rs.ambient_dim = static_cast<int>(dim);
  rs.positive_roots = positive_roots;
  rs.multiplicities = multiplicities;

  auto find_root = [&](const RealVec& v) -> int {
    for (int k = 0; k < np; ++k) {
      if ((positive_roots[k] - v).cwiseAbs().maxCoeff() < 1e-9) return k;
    }
    return -1;
  };

  // Simple roots are the positive roots that are not sums of two positive roots.
  for (int k = 0; k < np; ++k) {
    bool decomposable = false;
    for (int i = 0; i < np && !decomposable; ++i) {
      if (i == k) continue;
      if (find_root(positive_roots[k] - positive_roots[i]) >= 0) decomposable = true;
    }
    if (!decomposable) rs.simple_roots.push_back(k);
  }
  rs.rank = static_cast<int>(rs.simple_roots.size());

  RealMat S(dim, rs.rank);
  for (int i = 0; i < rs.rank; ++i) S.col(i) = rs.simple_root(i);
  Eigen::FullPivLU<RealMat> lu(S);
  if (lu.rank() != rs.rank) throw std::invalid_argument("root system: simple roots are dependent");

  const RealMat gram = S.transpose() * S;
  for (int k = 0; k < np; ++k) {
    const RealVec c = gram.ldlt().solve(S.transpose() * positive_roots[k]);
    if ((S * c - positive_roots[k]).norm() > 1e-9) {
      throw std::invalid_argument("root system: root outside the span of the simple roots");
    }
    Eigen::VectorXi ci(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
      const double r = std::round(c(i));
      if (std::abs(c(i) - r) > 1e-9 || r < 0) {
        throw std::invalid_argument("root system: root is not a nonnegative integer combination of simple roots");
      }
      ci(i) = static_cast<int>(r);
    }
    rs.simple_coeffs.push_back(ci);
  }

  // Closure under simple reflections and W-invariance of multiplicities.
  for (int i = 0; i < rs.rank; ++i) {
    const RealMat s = reflection_matrix(rs.simple_root(i));
    for (int k = 0; k < np; ++k) {
      const RealVec img = s * positive_roots[k];
      int hit = find_root(img);
      if (hit < 0) hit = find_root(-img);
      if (hit < 0) throw std::invalid_argument("root system: not closed under reflections");
      if (multiplicities[hit] != multiplicities[k]) {
        throw std::invalid_argument("root system: multiplicities are not Weyl invariant");
      }
      const double cartan = 2.0 * positive_roots[k].dot(rs.simple_root(i)) / rs.simple_root(i).squaredNorm();
      if (std::abs(cartan - std::round(cartan)) > 1e-9) {
        throw std::invalid_argument("root system: non-integral Cartan number");
      }
    }
  }

  fill_rho(rs);
  rs.weyl_group = generate_weyl_group(rs);
  return rs;
}

RealVec semigroup_vector(const RootSystem& rs, const Eigen::VectorXi& coeffs) {
  RealVec v = RealVec::Zero(rs.ambient_dim);
  for (int i = 0; i < rs.rank; ++i) v += coeffs(i) * rs.simple_root(i);
  return v;
}

cplx character_exponent(const RealVec& H, const RealVec& C, const ComplexVec& sigma) {
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < sigma.size(); ++i) s += sigma(i) * cplx(H(i), C(i));
  return std::exp(s);
}

RealVec project_zero_sum(const RealVec& v) {
  return v.array() - v.mean();
}

std::vector<RealVec> weyl_orbit(const RootSystem& rs, const RealVec& y) {
  if (y.size() != rs.ambient_dim) throw std::invalid_argument("weyl_orbit: dimension mismatch");
  std::vector<RealVec> orbit;
  orbit.reserve(rs.weyl_group.size());
  for (const auto& w : rs.weyl_group) orbit.push_back(w * y);
  std::sort(orbit.begin(), orbit.end(), lex_less);
  orbit.erase(std::unique(orbit.begin(), orbit.end(), approx_equal), orbit.end());
  return orbit;
}

Margin in_crown_omega(const RootSystem& rs, const RealVec& Y, double scale) {
  double margin = scale * kPi / 2;
  for (const auto& a : rs.positive_roots) margin = std::min(margin, scale * kPi / 2 - std::abs(a.dot(Y)));
  return {margin > 0.0, margin};
}

bool is_regular(const RootSystem& rs, const RealVec& Y, double tol) {
  return std::all_of(rs.positive_roots.begin(), rs.positive_roots.end(),
                     [&](const RealVec& a) { return std::abs(a.dot(Y)) > tol; });
}

bool is_regular(const RootSystem& rs, const ComplexVec& lambda, double tol) {
  return std::all_of(rs.positive_roots.begin(), rs.positive_roots.end(), [&](const RealVec& a) {
    return std::abs(a.cast<cplx>().dot(lambda)) > tol;
  });
}

RealVec dominant_representative(const RootSystem& rs, const RealVec& v) {
  if (rs.type_a()) {
    RealVec d = v;
    std::sort(d.data(), d.data() + d.size(), std::greater<>());
    return d;
  }
  RealVec d = v;
  for (int guard = 0; guard < 10000; ++guard) {
    bool moved = false;
    for (int i = 0; i < rs.rank; ++i) {
      const RealVec& a = rs.simple_root(i);
      const double p = a.dot(d);
      if (p < -1e-14) {
        d -= 2.0 * p / a.squaredNorm() * a;
        moved = true;
      }
    }
    if (!moved) return d;
  }
  throw std::runtime_error("dominant_representative: no convergence");
}

double majorization_margin(const RealVec& x, const RealVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("majorization: dimension mismatch");
  std::vector<double> xs(x.data(), x.data() + x.size());
  std::vector<double> ys(y.data(), y.data() + y.size());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double px = 0, py = 0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    margin = std::min(margin, py - px);
  }
  px += xs.back();
  py += ys.back();
  // the full sums must agree; only a real trace mismatch counts against the margin
  double scale = 1.0;
  for (double v : ys) scale += std::abs(v);
  const double drift = std::abs(py - px);
  return drift > 1e-12 * scale ? std::min(margin, -drift) : margin;
}

Margin in_weyl_hull(const RootSystem& rs, const RealVec& x, const RealVec& y, double tol) {
  if (x.size() != rs.ambient_dim || y.size() != rs.ambient_dim) {
    throw std::invalid_argument("in_weyl_hull: dimension mismatch");
  }
  if (rs.type_a()) {
    const double m = majorization_margin(x, y);
    return {m >= -tol, m};
  }
  const RealVec d = dominant_representative(rs, y) - dominant_representative(rs, x);
  RealMat S(rs.ambient_dim, rs.rank);
  for (int i = 0; i < rs.rank; ++i) S.col(i) = rs.simple_root(i);
  const RealVec c = (S.transpose() * S).ldlt().solve(S.transpose() * d);
  const double margin = c.minCoeff() - (d - S * c).norm();
  return {in_weyl_hull_lp(rs, x, y, tol), margin};
}

bool in_weyl_hull_lp(const RootSystem& rs, const RealVec& x, const RealVec& y, double tol) {
  if (x.size() != rs.ambient_dim || y.size() != rs.ambient_dim) {
    throw std::invalid_argument("in_weyl_hull_lp: dimension mismatch");
  }
  const auto verts = weyl_orbit(rs, y);
  const auto k = static_cast<Eigen::Index>(verts.size());
  RealMat A(rs.ambient_dim + 1, k);
  RealVec b(rs.ambient_dim + 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    A.col(j).head(rs.ambient_dim) = verts[j];
    A(rs.ambient_dim, j) = 1.0;
  }
  b.head(rs.ambient_dim) = x;
  b(rs.ambient_dim) = 1.0;
  return simplex_infeasibility(A, b) <= tol;
}

}  // namespace crownlab
