#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace soergel {

// Permutation of {1..m} in one-line notation: images()[k-1] = w(k).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int m);
  // The simple transposition s_i = (i, i+1) in S_m.
  static Perm simple(int i, int m);

  int size() const { return static_cast<int>(w_.size()); }
  int operator()(int k) const { return w_[k - 1]; }
  const std::vector<int>& images() const { return w_; }

  int length() const;  // number of inversions
  bool is_identity() const;
  Perm inverse() const;
  // Composition with (v * w)(k) = v(w(k)).
  Perm operator*(const Perm& w) const;
  // w * s_i swaps the entries in positions i and i+1.
  Perm times_simple(int i) const;
  // True when l(w s_i) < l(w).
  bool has_right_descent(int i) const { return w_[i - 1] > w_[i]; }
  // Reduced word j_1 .. j_k with w = s_{j_1} ... s_{j_k}.
  std::vector<int> reduced_word() const;

  std::string str() const;  // "[2,1,3]"
  static Perm parse(std::string_view text);

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> w_;
};

}  // namespace soergel
