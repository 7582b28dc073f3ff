#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "soergel/poly.hpp"

namespace soergel {

// R tensor_{R^W1} R tensor_{R^W2} ... R with a grading shift. Ordinary
// Bott-Samelson shapes use single-color separators with shift -d; the
// auxiliary shapes use one two-color separator with shift -2 (distant) or
// -3 (adjacent).
class Shape {
 public:
  Shape() = default;  // R itself
  Shape(std::vector<ParabolicSubgroup> seps, int shift);
  static Shape bs(const std::vector<int>& colors);
  static Shape aux(int i, int j);

  const std::vector<ParabolicSubgroup>& separators() const { return seps_; }
  int shift() const { return shift_; }
  int length() const { return static_cast<int>(seps_.size()); }
  size_t basis_size() const { return basis_size_; }
  bool is_bs() const;
  // Colors of a Bott-Samelson shape; throws for auxiliary shapes.
  std::vector<int> colors() const;
  int max_var() const;

  // Mixed radix, first separator most significant.
  std::vector<int> decode(size_t idx) const;
  size_t encode(const std::vector<int>& digits) const;
  Monomial basis_monomial(size_t idx, int sep) const;
  // Graded degree of 1 (x) basis tuple, with deg x_i = 2, shift included.
  int basis_degree(size_t idx) const;

  Shape concat(const Shape& o) const;
  std::string str() const;  // "B(1,2,1)", "B(1,w{2,3},1)", "B()" for R
  std::string tuple_str(size_t idx) const;  // "<x1|1|x3>"
  static Shape parse(std::string_view text);
  bool operator==(const Shape& o) const { return shift_ == o.shift_ && seps_ == o.seps_; }

 private:
  std::vector<ParabolicSubgroup> seps_;
  int shift_ = 0;
  size_t basis_size_ = 1;
};

// Element in left-basis normal form: coords[idx] is the left coefficient of
// 1 (x) basis tuple idx.
class BSElement {
 public:
  BSElement() = default;
  explicit BSElement(Shape shape);
  static BSElement basis(const Shape& shape, size_t idx);
  static BSElement one_tensor(const Shape& shape) { return basis(shape, 0); }

  const Shape& shape() const { return shape_; }
  const std::vector<Poly>& coords() const { return coords_; }
  const Poly& coord(size_t idx) const { return coords_[idx]; }
  Poly& coord(size_t idx) { return coords_[idx]; }
  bool is_zero() const;

  BSElement& operator+=(const BSElement& o);
  BSElement& operator-=(const BSElement& o);
  friend BSElement operator+(BSElement a, const BSElement& b) { return a += b; }
  friend BSElement operator-(BSElement a, const BSElement& b) { return a -= b; }
  BSElement operator-() const;
  BSElement scaled(const mpq_class& c) const;
  bool operator==(const BSElement& o) const { return shape_ == o.shape_ && coords_ == o.coords_; }

  bool is_homogeneous() const;
  // Graded degree; throws for zero or inhomogeneous elements.
  int degree() const;
  BSElement homogeneous_part(int degree) const;
  std::vector<int> degrees() const;

  // "(x1 + x2) * <1> - <x1>"
  std::string str() const;
  // Terms "poly * <p1|p2|...>" where each slot may hold any polynomial.
  static BSElement parse(std::string_view text, const Shape& shape, const Ring& ring);

 private:
  Shape shape_;
  std::vector<Poly> coords_ = std::vector<Poly>(1);
};

// slots[0] (x) slots[1] (x) ... (x) slots[d]
using RawTensor = std::vector<Poly>;

BSElement normalize(const RawTensor& rt, const Shape& shape, const Ring& ring);
BSElement right_mul(const BSElement& e, const Poly& f, const Ring& ring);
BSElement left_mul(const BSElement& e, const Poly& f, const Ring& ring);
// Concatenation of shapes; b's left coefficients meet a's rightmost slot.
BSElement tensor_elements(const BSElement& a, const BSElement& b, const Ring& ring);

// Coordinates with respect to the alternative residue basis {1, x_{i+1}}
// at every single-color separator (two-color separators keep their basis).
// Entry idx is the left coefficient of 1 (x) alternative tuple idx.
std::vector<Poly> alternative_residue_coords(const BSElement& e, const Ring& ring);

// e = sum left * gens[gen] * right
struct GenTerm {
  Poly left;
  size_t gen;
  Poly right;
};

// Exact expression of e as an R-bimodule combination of the given
// homogeneous generators, found by a degree-bounded linear solve. Throws
// std::domain_error when e is not in the sub-bimodule they generate.
std::vector<GenTerm> express_in_generators(const BSElement& e, const std::vector<BSElement>& gens, const Ring& ring);
BSElement reassemble(const std::vector<GenTerm>& terms, const std::vector<BSElement>& gens, const Ring& ring);

// Canonical bimodule spanning set of a Bott-Samelson shape: for every subset
// of consecutive same-color separator pairs (r, s), the residue x_c sits in
// the slot right after separator r.
std::vector<BSElement> spanning_set(const Shape& shape, const Ring& ring);
// express_in_generators over spanning_set; rejects auxiliary shapes.
std::vector<GenTerm> generator_form(const BSElement& e, const Ring& ring);

}  // namespace soergel
