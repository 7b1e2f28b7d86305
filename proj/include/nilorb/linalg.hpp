#pragma once
// Dense exact matrices and an incremental row-echelon basis.

#include <stdexcept>
#include <vector>

#include "arith.hpp"

namespace nilorb {

template <class S>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Matrix() = default;
  Matrix(int r, int c, const S& zero) : rows(r), cols(c), a(static_cast<size_t>(r) * c, zero) {}
  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  std::vector<S> row(int i) const { return {a.begin() + i * cols, a.begin() + (i + 1) * cols}; }
};

// Rows are kept reduced against earlier pivots and normalized to pivot 1,
// so reducing a vector in insertion order clears every pivot column.
template <class S>
class EchelonBasis {
 public:
  explicit EchelonBasis(int cols) : cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v in place; returns true when v ends up zero.
  bool reduce(std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch");
    for (size_t k = 0; k < rows_.size(); ++k) {
      const int p = pivots_[k];
      if (is_zero(v[p])) continue;
      const S f = v[p];
      const auto& r = rows_[k];
      for (int j = p; j < cols_; ++j)
        if (!is_zero(r[j])) v[j] -= f * r[j];
    }
    for (const auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  }

  bool contains(std::vector<S> v) const { return reduce(v); }

  // Adds v to the span; returns true when the rank grew.
  bool insert(std::vector<S> v) {
    if (reduce(v)) return false;
    int p = 0;
    while (is_zero(v[p])) ++p;
    const S f = inv(v[p]);
    for (int j = p; j < cols_; ++j) v[j] *= f;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  int cols_;
  std::vector<std::vector<S>> rows_;
  std::vector<int> pivots_;
};

template <class S>
int matrix_rank(const Matrix<S>& m) {
  EchelonBasis<S> e(m.cols);
  for (int i = 0; i < m.rows; ++i) e.insert(m.row(i));
  return e.rank();
}

}  // namespace nilorb
