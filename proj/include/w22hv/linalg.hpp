#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "w22hv/rational.hpp"

namespace w22hv {

/// Dense exact rational matrix, row major.
struct MatQ {
  size_t rows{0}, cols{0};
  std::vector<Rational> a;

  MatQ() = default;
  MatQ(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  Rational& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Rational& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

/// Gauss-Jordan reduction to reduced row echelon form with deterministic
/// pivoting: columns are scanned left to right, and within a column the
/// first row with a nonzero entry is chosen. Returns the pivot columns.
inline std::vector<size_t> rref_in_place(MatQ& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (size_t c = col; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
    Rational inv = Rational(1) / m.at(row, col);
    for (size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(MatQ m) { return rref_in_place(m).size(); }

/// Basis of the right nullspace, one vector per free column in ascending
/// column order.
inline std::vector<std::vector<Rational>> nullspace(MatQ m) {
  std::vector<size_t> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> out;
  for (size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Incrementally built row space kept in reduced row echelon form.
class RowSpace {
 public:
  explicit RowSpace(size_t cols = 0) : cols_(cols) {}

  size_t cols() const { return cols_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::map<size_t, size_t>& pivots() const { return pivot_row_; }

  /// Eliminates the pivot coordinates of v against the space.
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    if (v.size() != cols_) throw std::invalid_argument("RowSpace::reduce: size mismatch");
    for (const auto& [col, ri] : pivot_row_) {
      if (v[col] == 0) continue;
      const Rational f = v[col];
      const auto& row = rows_[ri];
      for (size_t c = col; c < cols_; ++c) v[c] -= f * row[c];
    }
    return v;
  }

  bool contains(std::vector<Rational> v) const {
    v = reduce(std::move(v));
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  /// Inserts v if independent of the current space and returns the row as
  /// stored (pivot normalized to one); nullopt if v was already in the span.
  std::optional<std::vector<Rational>> add(std::vector<Rational> v) {
    v = reduce(std::move(v));
    size_t piv = cols_;
    for (size_t c = 0; c < cols_; ++c)
      if (v[c] != 0) {
        piv = c;
        break;
      }
    if (piv == cols_) return std::nullopt;
    Rational inv = Rational(1) / v[piv];
    for (size_t c = piv; c < cols_; ++c) v[c] *= inv;
    // back-substitute to keep the stored rows fully reduced
    for (auto& row : rows_) {
      if (row[piv] == 0) continue;
      const Rational f = row[piv];
      for (size_t c = piv; c < cols_; ++c) row[c] -= f * v[c];
    }
    rows_.push_back(v);
    pivot_row_[piv] = rows_.size() - 1;
    return v;
  }

 private:
  size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::map<size_t, size_t> pivot_row_;
};

}  // namespace w22hv
