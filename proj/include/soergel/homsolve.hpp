#pragma once

#include <string>
#include <vector>

#include "soergel/morphism.hpp"

namespace soergel {

struct HomQuery {
  std::vector<int> source, target;  // color sequences
  int degree = 0;
};

// Dimension over Q of the degree-m bimodule maps B_source -> B_target. Maps
// are parameterized by the images of the left basis vectors and constrained
// to commute with right multiplication by every variable. Polynomial ring
// only; the quotient ring is rejected.
int hom_dimension(const HomQuery& q, const Ring& ring);
// A basis of the same space as matrices.
std::vector<MorphismMatrix> hom_basis(const HomQuery& q, const Ring& ring);

// Coefficient of t^m in (b_source, b_target) / (1 - t^2)^(n+1).
long long predicted_dimension(const HomQuery& q, int n);

struct CompareLine {
  HomQuery query;
  int solver = 0;
  long long hecke = 0;
  bool ok() const { return solver == hecke; }
  // "<i-seq> <j-seq> deg=<m> solver=<d> hecke=<d> OK|MISMATCH"; the empty
  // sequence prints as "-".
  std::string str() const;
};

// Both sides for every degree in [lo, hi], in degree order. Degrees are
// solved concurrently under Exec::Parallel.
std::vector<CompareLine> compare(const std::vector<int>& source, const std::vector<int>& target, int lo, int hi, int n,
                                 Exec exec = Exec::Serial);
// Many pairs at once, flattened pair-major then by degree.
std::vector<CompareLine> compare_all(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs, int lo, int hi,
                                     int n, Exec exec = Exec::Serial);

// All color sequences over 1..n of length at most len, shortest first.
std::vector<std::vector<int>> sequences_up_to(int n, int len);

std::string seq_str(const std::vector<int>& s);  // "1,2,1" or "-"
std::vector<int> parse_seq(std::string_view text);  // accepts "", "-", "1,2,1"

}  // namespace soergel
