#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "soergel/laurent.hpp"
#include "soergel/perm.hpp"

namespace soergel {

// Element of the Hecke algebra of S_{n+1} over Z[t, t^-1], stored in the
// standard basis T_w with T_s^2 = (t^2 - 1) T_s + t^2.
class HeckeElt {
 public:
  explicit HeckeElt(int n = 1) : n_(n) {}
  static HeckeElt one(int n);
  static HeckeElt T(const Perm& w);
  static HeckeElt T_simple(int i, int n);
  // b_i = t^-1 (T_i + 1)
  static HeckeElt b(int i, int n);
  static HeckeElt scalar(const LaurentPoly& c, int n);

  int n() const { return n_; }
  const std::map<Perm, LaurentPoly>& terms() const { return terms_; }
  LaurentPoly coeff(const Perm& w) const;
  void add_term(const Perm& w, const LaurentPoly& c);
  bool is_zero() const { return terms_.empty(); }

  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const LaurentPoly& c, const HeckeElt& x);
  bool operator==(const HeckeElt& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  // "(t^2 - 1)*T[2,1,3] + t^2*T[1,2,3]", longest permutations first.
  std::string str() const;
  // Sum of terms "coeff*T[w]" or "coeff*b(i,j,...)"; the coefficient and '*'
  // are optional.
  static HeckeElt parse(std::string_view text, int n);

 private:
  int n_;
  std::map<Perm, LaurentPoly> terms_;
};

HeckeElt mul_T(const HeckeElt& x, const HeckeElt& y);
inline HeckeElt operator*(const HeckeElt& x, const HeckeElt& y) { return mul_T(x, y); }

// b_{i_1} b_{i_2} ... b_{i_d}; the empty sequence gives 1.
HeckeElt b_monomial(const std::vector<int>& seq, int n);

// Ring involution: t -> t^-1, T_w -> (T_{w^-1})^-1.
HeckeElt bar(const HeckeElt& x);
// Antilinear anti-involution fixing every b_i.
HeckeElt omega(const HeckeElt& x);
// Coefficient of T_e.
LaurentPoly tau(const HeckeElt& x);
LaurentPoly epsilon(const HeckeElt& x);
// (x, y) = bar(tau(x * omega(y)))
LaurentPoly pairing(const HeckeElt& x, const HeckeElt& y);

// tau(b_seq) computed purely by rewriting inside the trace: rotation,
// commutation of distant letters, b_i b_i = (t + t^-1) b_i and
// b_i b_j b_i = b_j b_i b_j + b_i - b_j for |i - j| = 1. Words with pairwise
// distinct letters are brought to increasing order, where the trace is
// t^-length. Throws std::runtime_error past 10 * 4^d rewrite steps.
LaurentPoly tau_monomial_by_cycling(const std::vector<int>& seq, int n,
                                    long* steps_used = nullptr);

}  // namespace soergel
