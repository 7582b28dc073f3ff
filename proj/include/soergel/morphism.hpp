#pragma once

#include <string>
#include <utility>
#include <vector>

#include "soergel/bimodule.hpp"
#include "soergel/parallel.hpp"

namespace soergel {

// Left R-linear map between shapes. Column s holds the image of the basis
// vector 1 (x) tuple s as sparse (target tuple, coefficient) pairs.
class MorphismMatrix {
 public:
  using Column = std::vector<std::pair<size_t, Poly>>;  // sorted by target

  MorphismMatrix() = default;
  MorphismMatrix(Shape source, Shape target, int degree);
  static MorphismMatrix identity(const Shape& shape);

  const Shape& source() const { return source_; }
  const Shape& target() const { return target_; }
  int degree() const { return degree_; }
  void set_degree(int d) { degree_ = d; }

  const Column& column(size_t s) const { return cols_[s]; }
  Poly at(size_t t, size_t s) const;
  void set_column(size_t s, const BSElement& image);
  BSElement image(size_t s) const;
  BSElement apply(const BSElement& e, const Ring& ring) const;
  bool is_zero() const;
  // Every nonzero entry has 2 deg(p) + deg(t) = deg(s) + degree.
  bool is_homogeneous() const;

  MorphismMatrix& operator+=(const MorphismMatrix& o);
  MorphismMatrix& operator-=(const MorphismMatrix& o);
  friend MorphismMatrix operator+(MorphismMatrix a, const MorphismMatrix& b) { return a += b; }
  friend MorphismMatrix operator-(MorphismMatrix a, const MorphismMatrix& b) { return a -= b; }
  MorphismMatrix scaled(const mpq_class& c) const;
  // Shapes and entries agree; the declared degree of a zero map is ignored.
  bool operator==(const MorphismMatrix& o) const;

  // One line per nonzero entry: "(<target tuple>, <source tuple>) = poly".
  std::string dump() const;

 private:
  Shape source_, target_;
  int degree_ = 0;
  std::vector<Column> cols_ = std::vector<Column>(1);
};

MorphismMatrix compose_v(const MorphismMatrix& g, const MorphismMatrix& f, const Ring& ring, Exec exec = Exec::Serial);
MorphismMatrix compose_h(const MorphismMatrix& f, const MorphismMatrix& g, const Ring& ring);
bool check_bimodule(const MorphismMatrix& m, const Ring& ring);

// Map determined by images of bimodule generators of the source.
MorphismMatrix from_generator_images(const Shape& source, const Shape& target, int degree, const std::vector<BSElement>& gens,
                                     const std::vector<BSElement>& images, const Ring& ring);

enum class Gen {
  Id,
  EndDot,
  StartDot,
  Merge,
  Split,
  Cup,
  Cap,
  Box,
  Four,
  Six,
  IJUp,
  IJDown,
  IpiUp,
  IpiDown,
  PipUp,
  PipDown,
};

// A generating morphism with its colors: Id, dots, Merge, Split, Cup, Cap
// and the ipi/pip maps take one color i; Four takes (i, j) going i j -> j i;
// Six takes (a, b) going a b a -> b a b; IJUp/IJDown take (i, j); Box takes
// a homogeneous polynomial.
struct GenToken {
  Gen kind = Gen::Id;
  std::vector<int> colors;
  Poly poly;

  Shape source() const;
  Shape target() const;
  int degree() const;
  std::string str() const;
  // Throws std::invalid_argument for bad adjacency or colors outside 1..n.
  void validate(int n) const;
};

GenToken id_token(int i);
GenToken end_dot(int i);
GenToken start_dot(int i);
GenToken merge_token(int i);
GenToken split_token(int i);
GenToken cup_token(int i);
GenToken cap_token(int i);
GenToken box_token(const Poly& f);
GenToken four_token(int i, int j);
GenToken six_token(int a, int b);
GenToken aux_token(Gen kind, std::vector<int> colors);

// Matrix of the token on its own boundary, cached per thread.
const MorphismMatrix& gen_matrix(const GenToken& token, const Ring& ring);
// id_left (x) token (x) id_right.
MorphismMatrix gen_matrix(const GenToken& token, const std::vector<int>& left, const std::vector<int>& right, const Ring& ring);

// Moves one boundary strand between target and source with a cup or cap.
enum class Twist {
  TopRightDown,   // X -> Y i  becomes  X i -> Y
  TopLeftDown,    // X -> i Y  becomes  i X -> Y
  BottomRightUp,  // X i -> Y  becomes  X -> Y i
  BottomLeftUp,   // i X -> Y  becomes  X -> i Y
};
MorphismMatrix twist(const MorphismMatrix& m, Twist how, const Ring& ring);

}  // namespace soergel
