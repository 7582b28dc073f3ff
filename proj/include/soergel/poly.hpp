#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soergel/perm.hpp"

namespace soergel {

// Hard cap on the number of variables x_1 .. x_kMaxVars.
constexpr int kMaxVars = 12;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  static Monomial var(int i, int power = 1);
  int degree() const;
  int exp(int i) const { return e[i - 1]; }
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;
  std::string str() const;  // "x1^2*x3", "1" for the unit
};

// Graded lexicographic order with x1 > x2 > ...; lower degree sorts first.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const;
};

// Polynomial with rational coefficients. Terms are kept sorted by GrlexLess
// with no zero coefficients.
class Poly {
 public:
  using Term = std::pair<Monomial, mpq_class>;

  Poly() = default;
  Poly(long c);  // NOLINT
  Poly(const mpq_class& c);  // NOLINT
  static Poly var(int i);
  static Poly monomial(const Monomial& m, const mpq_class& c = 1);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.degree() == 0); }
  mpq_class constant_term() const;
  mpq_class coeff(const Monomial& m) const;
  // Largest total degree counted in variables; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  Poly homogeneous_part(int d) const;
  // Largest variable index present, 0 if none.
  int max_var() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const mpq_class& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const mpq_class& c) { return a *= c; }
  friend Poly operator*(const mpq_class& c, Poly a) { return a *= c; }
  friend Poly operator*(long c, Poly a) { return a *= mpq_class(c); }
  friend Poly operator*(Poly a, long c) { return a *= mpq_class(c); }
  Poly operator-() const;
  bool operator==(const Poly& o) const = default;

  // Highest terms first, e.g. "x1^2*x2 - 3/2*x3 + 1".
  std::string str() const;
  static Poly parse(std::string_view text);

  // Builds from unsorted terms, combining duplicates.
  static Poly from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> t_;
};

// Variables x_1 .. x_{n+1}. In quotient mode x_{n+1} is eliminated using
// x_1 + ... + x_{n+1} = 0.
struct Ring {
  int n = 1;
  bool quotient = false;
  int nvars() const { return n + 1; }
  Poly reduce(const Poly& f) const;
  bool operator==(const Ring&) const = default;
};

// w acts by x_i -> x_{w(i)}.
Poly act(const Perm& w, const Poly& f);
// s_i f, swapping x_i and x_{i+1}.
Poly swap_vars(int i, const Poly& f);
// (f - s_i f) / (x_i - x_{i+1})
Poly demazure(int i, const Poly& f);
// f - x_i * demazure(i, f), which is s_i-invariant.
Poly p_part(int i, const Poly& f);
// Substitutes x_{n+1} = -(x_1 + ... + x_n).
Poly quotient_reduce(const Poly& f, int n);

// Parabolic subgroup generated by one simple reflection or by two.
class ParabolicSubgroup {
 public:
  enum class Kind { Single, Distant, Adjacent };

  static ParabolicSubgroup single(int i);
  static ParabolicSubgroup pair(int i, int j);

  Kind kind() const { return kind_; }
  int first() const { return a_; }
  int second() const { return b_; }
  std::vector<int> generators() const;
  bool is_single() const { return kind_ == Kind::Single; }

  // Basis of R as a module over the invariants R^W, as monomials:
  // single {1, x_i}; distant {1, x_i, x_j, x_i x_j};
  // adjacent {x_i^a x_{i+1}^b : a <= 2, b <= 1} ordered by degree.
  const std::vector<Monomial>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }
  bool is_invariant(const Poly& f) const;
  // Length of the longest element: shifts the grading of R tensored over R^W.
  int longest_length() const { return kind_ == Kind::Single ? 1 : kind_ == Kind::Distant ? 2 : 3; }
  int max_var() const;

  std::string str() const;  // "2" or "w{2,3}"
  bool operator==(const ParabolicSubgroup&) const = default;

 private:
  Kind kind_ = Kind::Single;
  int a_ = 1, b_ = 0;
  std::vector<Monomial> basis_;
};

// Coefficients g_k, invariant under W, with f = sum_k basis[k] * g_k.
// Computed with one exact linear system per homogeneous degree in the local
// variables, cached per thread.
std::vector<Poly> decompose_invariant(const Poly& f, const ParabolicSubgroup& W);
// Same, followed by reduction of each coefficient in the ring.
std::vector<Poly> decompose_invariant(const Poly& f, const ParabolicSubgroup& W, const Ring& ring);

// All monomials of a given degree in variables x_1..x_nvars, grlex order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

}  // namespace soergel
