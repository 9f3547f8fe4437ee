#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace qbounds {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Dense symmetric matrix, row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int order() const noexcept { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  // Writes both (i,j) and (j,i).
  void set(int i, int j, double value) {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }
  double trace() const;
  bool is_symmetric() const;
  const std::vector<double>& data() const noexcept { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Eigenvalues in descending order together with the absolute accuracy the
// solver guarantees for each of them.
struct Spectrum {
  std::vector<double> values;
  double tol = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  // 1-based accessor matching q_1 >= ... >= q_n.
  double at1(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
  double sum_top(int m) const;
  double sum_bottom(int m) const;
  double sum() const { return sum_top(static_cast<int>(values.size())); }
};

// Cyclic Jacobi. Throws PreconditionError for non-finite or asymmetric input
// and SolverError when the sweep cap is exhausted.
Spectrum sym_eigenvalues(const SymMatrix& a);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
};

// Largest eigenvalue with a normalized eigenvector (same Jacobi iteration,
// rotations accumulated).
EigenPair top_eigenpair(const SymMatrix& a);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  RationalMatrix(int n, const std::vector<std::vector<long long>>& rows);

  int order() const noexcept { return n_; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  Rational trace() const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

// Monic polynomial, coefficients[k] multiplies x^k.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  const Rational& coefficient(int k) const { return c_.at(static_cast<std::size_t>(k)); }
  bool is_zero() const noexcept { return c_.empty(); }
  RationalPoly derivative() const;
  std::string to_string() const;

  bool operator==(const RationalPoly&) const = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

// det(xI - m), computed exactly by Faddeev-LeVerrier.
RationalPoly char_poly_exact(const RationalMatrix& m);

Rational eval_poly(const RationalPoly& p, const Rational& x);
int sign_at(const RationalPoly& p, const Rational& x);

// Number of real roots strictly greater than x, counted with multiplicity.
int count_roots_above(const RationalPoly& p, const Rational& x);
// Number of real roots strictly less than x, counted with multiplicity.
int count_roots_below(const RationalPoly& p, const Rational& x);
// Multiplicity of x as a root (0 if not a root).
int root_multiplicity(const RationalPoly& p, const Rational& x);

// Nearest rational to a double with denominator 2^k for the given k.
Rational dyadic(double value, int bits = 40);

}  // namespace qbounds
