#include "qbounds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qbounds/errors.hpp"

namespace qbounds {

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool SymMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

double Spectrum::sum_top(int m) const {
  m = std::clamp(m, 0, static_cast<int>(values.size()));
  // Summed smallest-first so the result does not depend on how large the
  // leading eigenvalues are relative to the tail.
  double s = 0.0;
  for (int i = m - 1; i >= 0; --i) s += values[static_cast<std::size_t>(i)];
  return s;
}

double Spectrum::sum_bottom(int m) const {
  m = std::clamp(m, 0, static_cast<int>(values.size()));
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += values[values.size() - 1 - static_cast<std::size_t>(i)];
  return s;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct JacobiResult {
  std::vector<double> diag;
  std::vector<double> vectors;  // column k is the eigenvector of diag[k]; empty unless requested
  double off = 0.0;
  double norm = 0.0;
};

double off_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
  }
  return std::sqrt(s);
}

JacobiResult jacobi(const SymMatrix& m, bool want_vectors) {
  const int n = m.order();
  if (n < 1) throw PreconditionError("sym_eigenvalues: empty matrix");
  for (double x : m.data()) {
    if (!std::isfinite(x)) throw PreconditionError("sym_eigenvalues: non-finite entry");
  }
  if (!m.is_symmetric()) throw PreconditionError("sym_eigenvalues: matrix is not symmetric");

  std::vector<double> a = m.data();
  JacobiResult res;
  if (want_vectors) {
    res.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) res.vectors[i * n + i] = 1.0;
  }
  double frob = 0.0;
  for (double x : a) frob += x * x;
  res.norm = std::sqrt(frob);

  int sweep = 0;
  for (;; ++sweep) {
    res.off = off_norm(a, n);
    if (res.off <= 1e-15 * res.norm || res.off == 0.0) break;
    if (sweep == kMaxSweeps) throw SolverError("Jacobi: no convergence", res.off);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          const double np = c * akp - s * akq;
          const double nq = s * akp + c * akq;
          a[k * n + p] = a[p * n + k] = np;
          a[k * n + q] = a[q * n + k] = nq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vp = res.vectors[k * n + p];
            const double vq = res.vectors[k * n + q];
            res.vectors[k * n + p] = c * vp - s * vq;
            res.vectors[k * n + q] = s * vp + c * vq;
          }
        }
      }
    }
  }
  res.diag.resize(n);
  for (int i = 0; i < n; ++i) res.diag[i] = a[i * n + i];
  return res;
}

double guaranteed_tol(const JacobiResult& r, int n) {
  // Weyl bound from the residual off-diagonal mass plus accumulated rounding.
  return r.off + 64.0 * n * kEps * std::max(1.0, r.norm);
}

}  // namespace

Spectrum sym_eigenvalues(const SymMatrix& a) {
  JacobiResult r = jacobi(a, false);
  Spectrum s;
  s.values = std::move(r.diag);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  s.tol = guaranteed_tol(r, a.order());
  return s;
}

EigenPair top_eigenpair(const SymMatrix& a) {
  JacobiResult r = jacobi(a, true);
  const int n = a.order();
  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (r.diag[i] > r.diag[best]) best = i;
  }
  EigenPair ep;
  ep.value = r.diag[best];
  ep.vector.resize(n);
  double norm = 0.0;
  for (int k = 0; k < n; ++k) {
    ep.vector[k] = r.vectors[k * n + best];
    norm += ep.vector[k] * ep.vector[k];
  }
  norm = std::sqrt(norm);
  // Fix the sign so the largest-magnitude entry is positive.
  int pivot = 0;
  for (int k = 1; k < n; ++k) {
    if (std::abs(ep.vector[k]) > std::abs(ep.vector[pivot])) pivot = k;
  }
  const double sign = ep.vector[pivot] < 0 ? -1.0 : 1.0;
  for (double& x : ep.vector) x *= sign / norm;
  return ep;
}

RationalMatrix::RationalMatrix(int n, const std::vector<std::vector<long long>>& rows) : RationalMatrix(n) {
  if (static_cast<int>(rows.size()) != n) throw PreconditionError("RationalMatrix: row count mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw PreconditionError("RationalMatrix: matrix is not square");
    for (int j = 0; j < n; ++j) (*this)(i, j) = rows[i][j];
  }
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

void RationalPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long long>(k);
  return RationalPoly(std::move(d));
}

std::string RationalPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) {
      os << mag;
      if (k > 0) os << "*";
    }
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

RationalPoly char_poly_exact(const RationalMatrix& m) {
  const int n = m.order();
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  c[n] = 1;
  RationalMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    RationalMatrix next(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int l = 0; l < n; ++l) s += m(i, l) * mk(l, j);
        next(i, j) = s;
      }
      next(i, i) += c[n - k + 1];
    }
    mk = std::move(next);
    Rational tr = 0;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) tr += m(i, l) * mk(l, i);
    }
    c[n - k] = -tr / k;
  }
  return RationalPoly(std::move(c));
}

Rational eval_poly(const RationalPoly& p, const Rational& x) {
  Rational acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const RationalPoly& p, const Rational& x) {
  const Rational v = eval_poly(p, x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

namespace {

void divmod(const RationalPoly& a, const RationalPoly& b, RationalPoly* quot, RationalPoly* rem) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<Rational> q(r.size() >= bc.size() ? r.size() - bc.size() + 1 : 0);
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[k] == 0) continue;
    const Rational f = r[k] / bc[db];
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * bc[j];
  }
  if (quot) *quot = RationalPoly(std::move(q));
  if (rem) *rem = RationalPoly(std::move(r));
}

RationalPoly quotient_of(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly q;
  divmod(a, b, &q, nullptr);
  return q;
}

RationalPoly monic(const RationalPoly& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> c = p.coefficients();
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return RationalPoly(std::move(c));
}

RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r;
    divmod(a, b, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

RationalPoly subtract(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t k = 0; k < a.coefficients().size(); ++k) c[k] += a.coefficients()[k];
  for (std::size_t k = 0; k < b.coefficients().size(); ++k) c[k] -= b.coefficients()[k];
  return RationalPoly(std::move(c));
}

// Yun's square-free factorization: p = prod factors[i]^(i+1) up to a constant.
std::vector<RationalPoly> square_free_factors(const RationalPoly& p) {
  std::vector<RationalPoly> factors;
  if (p.degree() < 1) return factors;
  const RationalPoly dp = p.derivative();
  const RationalPoly a0 = gcd(p, dp);
  RationalPoly b = quotient_of(p, a0);
  RationalPoly c = quotient_of(dp, a0);
  RationalPoly d = subtract(c, b.derivative());
  while (b.degree() >= 1) {
    const RationalPoly a = gcd(b, d);
    factors.push_back(a);
    b = quotient_of(b, a);
    c = quotient_of(d, a);
    d = subtract(c, b.derivative());
  }
  return factors;
}

int variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  std::vector<RationalPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() >= 1) {
    RationalPoly r;
    divmod(chain[chain.size() - 2], chain.back(), nullptr, &r);
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coefficients();
    for (auto& x : neg) x = -x;
    chain.emplace_back(std::move(neg));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int variations_at(const std::vector<RationalPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign_at(q, x));
  return variations(s);
}

int variations_at_infinity(const std::vector<RationalPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int lead = sign_of(q.coefficients().back());
    if (!positive && q.degree() % 2 == 1) lead = -lead;
    s.push_back(lead);
  }
  return variations(s);
}

// Distinct roots of a square-free polynomial strictly above / below x.
int distinct_roots_beyond(RationalPoly f, const Rational& x, bool above) {
  if (f.degree() < 1) return 0;
  if (eval_poly(f, x) == 0) f = quotient_of(f, RationalPoly({-x, Rational(1)}));
  if (f.degree() < 1) return 0;
  const auto chain = sturm_chain(f);
  const int vx = variations_at(chain, x);
  return above ? vx - variations_at_infinity(chain, true) : variations_at_infinity(chain, false) - vx;
}

int count_beyond(const RationalPoly& p, const Rational& x, bool above) {
  const auto factors = square_free_factors(p);
  int total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    total += static_cast<int>(i + 1) * distinct_roots_beyond(factors[i], x, above);
  }
  return total;
}

}  // namespace

int count_roots_above(const RationalPoly& p, const Rational& x) { return count_beyond(p, x, true); }

int count_roots_below(const RationalPoly& p, const Rational& x) { return count_beyond(p, x, false); }

int root_multiplicity(const RationalPoly& p, const Rational& x) {
  int mult = 0;
  RationalPoly q = p;
  const RationalPoly lin({-x, Rational(1)});
  while (q.degree() >= 1 && eval_poly(q, x) == 0) {
    q = quotient_of(q, lin);
    ++mult;
  }
  return mult;
}

Rational dyadic(double value, int bits) {
  if (!std::isfinite(value)) throw PreconditionError("dyadic: non-finite value");
  const double scaled = std::ldexp(value, bits);
  if (std::abs(scaled) > 9.0e18) throw PreconditionError("dyadic: value out of range");
  const long long num = std::llround(scaled);
  boost::multiprecision::cpp_int den = 1;
  den <<= bits;
  return Rational(boost::multiprecision::cpp_int(num), den);
}

}  // namespace qbounds
