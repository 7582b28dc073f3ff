#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace soergel {

using SparseRow = std::vector<std::pair<int, mpq_class>>;  // sorted by column

// Incremental row echelon form over Q. Each added row carries a right-hand
// side value, so the same object answers rank, consistency and solution
// questions.
class Eliminator {
 public:
  explicit Eliminator(int ncols) : ncols_(ncols) {}

  // Returns true when the row was independent of the rows seen so far.
  bool add_row(SparseRow row, mpq_class rhs = 0);
  int rank() const { return static_cast<int>(pivots_.size()); }
  int ncols() const { return ncols_; }
  bool consistent() const { return consistent_; }
  // One solution with every free variable set to zero.
  std::optional<std::vector<mpq_class>> solution() const;
  // Basis of the null space of the homogeneous system.
  std::vector<std::vector<mpq_class>> kernel_basis() const;

 private:
  struct PivotRow {
    SparseRow row;  // leading entry is 1
    mpq_class rhs;
  };
  int ncols_;
  bool consistent_ = true;
  std::map<int, PivotRow> pivots_;
};

SparseRow make_row(const std::map<int, mpq_class>& entries);

}  // namespace soergel

namespace soergel {

using DenseMatrix = std::vector<std::vector<mpq_class>>;

// Inverse of a square matrix by Gauss-Jordan elimination; nullopt if singular.
std::optional<DenseMatrix> dense_inverse(DenseMatrix a);

}  // namespace soergel
