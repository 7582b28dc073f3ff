#include "soergel/linalg.hpp"

#include <stdexcept>

namespace soergel {

namespace {

// a - f * b for sparse rows sorted by column.
SparseRow axpy(const SparseRow& a, const mpq_class& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      mpq_class v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseRow make_row(const std::map<int, mpq_class>& entries) {
  SparseRow row;
  for (const auto& [c, v] : entries)
    if (v != 0) row.emplace_back(c, v);
  return row;
}

bool Eliminator::add_row(SparseRow row, mpq_class rhs) {
  for (const auto& [c, v] : row)
    if (c < 0 || c >= ncols_) throw std::out_of_range("column outside the eliminator");
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) break;
    mpq_class f = row.front().second;
    row = axpy(row, f, it->second.row);
    rhs -= f * it->second.rhs;
  }
  if (row.empty()) {
    if (rhs != 0) consistent_ = false;
    return false;
  }
  mpq_class lead = row.front().second;
  for (auto& [c, v] : row) v /= lead;
  rhs /= lead;
  int col = row.front().first;
  pivots_.emplace(col, PivotRow{std::move(row), std::move(rhs)});
  return true;
}

std::optional<std::vector<mpq_class>> Eliminator::solution() const {
  if (!consistent_) return std::nullopt;
  std::vector<mpq_class> x(ncols_, 0);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [col, pr] = *it;
    mpq_class v = pr.rhs;
    for (size_t k = 1; k < pr.row.size(); ++k) v -= pr.row[k].second * x[pr.row[k].first];
    x[col] = v;
  }
  return x;
}

std::vector<std::vector<mpq_class>> Eliminator::kernel_basis() const {
  std::vector<std::vector<mpq_class>> basis;
  for (int f = 0; f < ncols_; ++f) {
    if (pivots_.count(f)) continue;
    std::vector<mpq_class> x(ncols_, 0);
    x[f] = 1;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [col, pr] = *it;
      mpq_class v = 0;
      for (size_t k = 1; k < pr.row.size(); ++k) v -= pr.row[k].second * x[pr.row[k].first];
      x[col] = v;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<DenseMatrix> dense_inverse(DenseMatrix a) {
  const size_t n = a.size();
  DenseMatrix inv(n, std::vector<mpq_class>(n, 0));
  for (size_t k = 0; k < n; ++k) {
    if (a[k].size() != n) throw std::invalid_argument("dense_inverse needs a square matrix");
    inv[k][k] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    mpq_class p = a[col][col];
    for (size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col];
      for (size_t k = 0; k < n; ++k) {
        if (a[col][k] != 0) a[r][k] -= f * a[col][k];
        if (inv[col][k] != 0) inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace soergel
