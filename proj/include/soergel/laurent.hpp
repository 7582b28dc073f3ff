#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace soergel {

// Integer Laurent polynomial in t. Zero coefficients are never stored, so
// structural equality is mathematical equality. Arithmetic throws
// std::overflow_error instead of wrapping.
class LaurentPoly {
 public:
  using Coeff = long long;

  LaurentPoly() = default;
  LaurentPoly(Coeff c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(Coeff c, int exp);
  static LaurentPoly t(int exp = 1) { return monomial(1, exp); }

  const std::map<int, Coeff>& coeffs() const { return c_; }
  Coeff coeff(int exp) const;
  bool is_zero() const { return c_.empty(); }
  int min_exp() const;
  int max_exp() const;

  // t -> t^-1
  LaurentPoly bar() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r *= b;
    return r;
  }
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const = default;

  // Highest power first, e.g. "t^2 - 1 + 3t^-1". Zero prints as "0".
  std::string str() const;
  // Accepts the printed form, optional '*' between coefficient and t,
  // and parentheses around the whole expression.
  static LaurentPoly parse(std::string_view text);

 private:
  void add_term(int exp, Coeff c);
  std::map<int, Coeff> c_;
};

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace soergel
