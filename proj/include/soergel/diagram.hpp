#pragma once

#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soergel/morphism.hpp"
#include "soergel/rewrite.hpp"

namespace soergel {

// A diagram read bottom to top as horizontal slices of generator tokens.
// Text form: slices separated by ';', tokens by spaces, e.g.
// "dot_s:1 ; split:1" or "id:1 box:(x1 - x2) id:1 ; merge:1".
class Diagram {
 public:
  using Slice = std::vector<GenToken>;

  Diagram() = default;  // the empty diagram on R (one empty slice)
  explicit Diagram(std::vector<Slice> slices);  // throws on boundary mismatch
  static Diagram identity(const std::vector<int>& colors);
  static Diagram token(const GenToken& t);
  static Diagram parse(std::string_view text);

  const std::vector<Slice>& slices() const { return slices_; }
  std::vector<int> domain() const;
  std::vector<int> codomain() const;
  int degree() const;
  std::string str() const;
  std::string to_json() const;

  // Colors of the lower / upper boundary of one slice.
  static std::vector<int> lower(const Slice& s);
  static std::vector<int> upper(const Slice& s);

 private:
  std::vector<Slice> slices_ = std::vector<Slice>(1);
};

// d2 drawn on top of d1.
Diagram stack(const Diagram& d1, const Diagram& d2);
// d1 to the left of d2; the shorter one is padded with identity slices.
Diagram beside(const Diagram& d1, const Diagram& d2);

struct LinearCombo {
  std::vector<int> domain, codomain;
  std::vector<std::pair<mpq_class, Diagram>> terms;

  LinearCombo(std::vector<int> dom, std::vector<int> cod) : domain(std::move(dom)), codomain(std::move(cod)) {}
  explicit LinearCombo(const Diagram& d);
  // Throws std::invalid_argument when d has other boundaries.
  LinearCombo& add(const mpq_class& c, const Diagram& d);
  std::string str() const;
};

MorphismMatrix evaluate(const Diagram& d, const Ring& ring, Exec exec = Exec::Serial);
MorphismMatrix evaluate_combo(const LinearCombo& c, const Ring& ring, Exec exec = Exec::Serial);

// Strands of color i with six-valent vertices turned into trivalent ones and
// crossings with other colors erased. Boundary points are listed bottom left
// to right, then top right to left.
OneColorGraph i_graph(const Diagram& d, int i);

std::string render_svg(const Diagram& d);

struct RandomDiagramOptions {
  int max_width = 4;   // strands on any slice boundary
  int max_slices = 4;
  int max_box_degree = 1;
};
// A random well-formed diagram using colors 1..n.
Diagram random_diagram(int n, std::mt19937_64& rng, const RandomDiagramOptions& opt = {});
// A random diagram with the given lower boundary.
Diagram random_diagram_from(const std::vector<int>& domain, int n, std::mt19937_64& rng, const RandomDiagramOptions& opt = {});

}  // namespace soergel
