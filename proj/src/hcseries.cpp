#include "crownlab/hcseries.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "crownlab/errors.hpp"

namespace crownlab {

namespace {

constexpr double kSingularTol = 1e-12;

// All coefficient vectors of length `rank` with entries summing to `degree`,
// in lexicographically decreasing order.
void compositions(int rank, int degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const auto pos = cur.size();
  if (static_cast<int>(pos) == rank - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = degree; v >= 0; --v) {
    cur.push_back(v);
    compositions(rank, degree - v, cur, out);
    cur.pop_back();
  }
}

cplx pair(const RealVec& a, const ComplexVec& b) {
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

std::string describe(const Eigen::VectorXi& c) {
  std::ostringstream os;
  os << "mu = (";
  for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c(i);
  os << ") over simple roots";
  return os.str();
}

void check_lambda(const RootSystem& rs, const ComplexVec& lambda) {
  if (lambda.size() != rs.ambient_dim) throw std::invalid_argument("spectral parameter: dimension mismatch");
}

}  // namespace

SpectralParameter SpectralParameter::make(const RootSystem& rs, const ComplexVec& coords) {
  check_lambda(rs, coords);
  return {coords, is_regular(rs, coords)};
}

SpectralParameter SpectralParameter::imaginary(const RootSystem& rs, const RealVec& nu) {
  return make(rs, cplx(0.0, 1.0) * nu.cast<cplx>());
}

CoefficientTable::CoefficientTable(const RootSystem& rs, ComplexVec lambda, int max_degree)
    : rs_(&rs), lambda_(std::move(lambda)), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  check_lambda(rs, lambda_);
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<std::vector<int>> level;
    std::vector<int> cur;
    compositions(rs.rank, d, cur, level);
    for (auto& c : level) {
      Entry e;
      e.coeffs = Eigen::Map<Eigen::VectorXi>(c.data(), static_cast<Eigen::Index>(c.size()));
      e.degree = d;
      e.mu = semigroup_vector(rs, e.coeffs);
      e.value = 0.0;
      index_.emplace(std::move(c), static_cast<int>(entries_.size()));
      entries_.push_back(std::move(e));
    }
  }
}

int CoefficientTable::index_of(const Eigen::VectorXi& coeffs) const {
  if (coeffs.minCoeff() < 0) return -1;
  const auto it = index_.find(std::vector<int>(coeffs.data(), coeffs.data() + coeffs.size()));
  return it == index_.end() ? -1 : it->second;
}

cplx CoefficientTable::value(const Eigen::VectorXi& coeffs) const {
  const int i = index_of(coeffs);
  if (i < 0) return 0.0;
  return entries_[i].value;
}

double CoefficientTable::growth_constant(const RealVec& H) const {
  double c = 0.0;
  for (const auto& e : entries_) c = std::max(c, std::abs(e.value) * std::exp(-e.mu.dot(H)));
  return c;
}

namespace {

// Shared driver: `step` receives (entry, root index, shifted coefficient
// index, k) and returns the contribution of Gamma_{mu - 2k alpha}; `denom`
// maps an entry to the prefactor's denominator.
template <class Term, class Denom>
void run_recursion(CoefficientTable& table, std::vector<CoefficientTable::Entry>& entries, Term term,
                   Denom denom) {
  const RootSystem& rs = table.root_system();
  entries[0].value = 1.0;
  for (std::size_t idx = 1; idx < entries.size(); ++idx) {
    auto& e = entries[idx];
    cplx sum{0.0, 0.0};
    for (int j = 0; j < rs.num_positive(); ++j) {
      const Eigen::VectorXi& ca = rs.simple_coeffs[j];
      cplx inner{0.0, 0.0};
      for (int k = 1;; ++k) {
        const Eigen::VectorXi shifted = e.coeffs - 2 * k * ca;
        if (shifted.minCoeff() < 0) break;  // left the semigroup
        const int s = table.index_of(shifted);
        if (s < 0) break;
        inner += term(e, j, entries[s].value, k);
      }
      sum += static_cast<double>(rs.multiplicities[j]) * inner;
    }
    const cplx den = denom(e);
    if (std::abs(den) < kSingularTol) {
      throw NumericalGuard(ErrorKind::SingularRecursion,
                           "vanishing recursion denominator at " + describe(e.coeffs));
    }
    e.value = sum / den;
  }
}

}  // namespace

CoefficientTable gamma_coeffs(const RootSystem& rs, const SpectralParameter& lambda, int max_degree) {
  CoefficientTable table(rs, lambda.coords, max_degree);
  const ComplexVec& lam = table.lambda();
  std::vector<cplx> alpha_lambda(rs.num_positive());
  for (int j = 0; j < rs.num_positive(); ++j) alpha_lambda[j] = pair(rs.positive_roots[j], lam);

  run_recursion(
      table, table.entries_,
      [&](const CoefficientTable::Entry& e, int j, cplx prev, int k) {
        const RealVec& a = rs.positive_roots[j];
        const double shift = (e.mu + rs.rho - 2.0 * k * a).dot(a);
        return prev * (shift - alpha_lambda[j]);
      },
      [&](const CoefficientTable::Entry& e) { return 0.5 * (e.mu.squaredNorm() - 2.0 * pair(e.mu, lam)); });
  return table;
}

CoefficientTable limit_coeffs(const RootSystem& rs, const SpectralParameter& lambda0, int max_degree) {
  CoefficientTable table(rs, lambda0.coords, max_degree);
  const ComplexVec& lam = table.lambda();
  std::vector<cplx> alpha_lambda(rs.num_positive());
  for (int j = 0; j < rs.num_positive(); ++j) alpha_lambda[j] = pair(rs.positive_roots[j], lam);

  run_recursion(
      table, table.entries_,
      [&](const CoefficientTable::Entry&, int j, cplx prev, int) { return prev * alpha_lambda[j]; },
      [&](const CoefficientTable::Entry& e) { return pair(e.mu, lam); });
  return table;
}

PsiValue psi(const CoefficientTable& table, const ToralPoint& a) {
  const RootSystem& rs = table.root_system();
  if (a.H.size() != rs.ambient_dim || a.C.size() != rs.ambient_dim) {
    throw std::invalid_argument("psi: dimension mismatch");
  }
  double q = 0.0;
  for (int i = 0; i < rs.rank; ++i) {
    const double ah = rs.simple_root(i).dot(a.H);
    if (!(ah > 0.0)) {
      throw NumericalGuard(ErrorKind::NotInPositiveChamber,
                           "simple root " + std::to_string(i) + " has a(H) = " + std::to_string(ah));
    }
    q = std::max(q, std::exp(-0.5 * ah));
  }

  PsiValue out;
  out.value = 0.0;
  for (const auto& e : table.entries()) {
    if (e.value == cplx(0.0, 0.0)) continue;
    out.value += e.value * std::exp(-cplx(e.mu.dot(a.H), e.mu.dot(a.C)));
  }

  const double c = table.growth_constant(0.5 * a.H);
  // #{mu : deg mu = d} = binom(d + r - 1, r - 1)
  auto count = [&](int d) {
    double n = 1.0;
    for (int i = 1; i < rs.rank; ++i) n *= static_cast<double>(d + i) / i;
    return n;
  };
  double tail = 0.0;
  for (int d = table.max_degree() + 1; d < table.max_degree() + 100000; ++d) {
    const double term = count(d) * std::pow(q, d);
    tail += term;
    if (term < 1e-18 * tail || term < 1e-300) break;
  }
  out.tail_estimate = c * tail;
  out.converged = out.tail_estimate <= 1e-8 * std::abs(out.value);
  return out;
}

int default_max_degree(const RootSystem& rs) { return rs.rank <= 2 ? 40 : 24; }

}  // namespace crownlab
