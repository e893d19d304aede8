#pragma once

// Dense matrices over a finite field (usually a prime field GF(p), but any
// table-backed GF(p^k) works, which is how scalar codes over extension
// fields are represented).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace lnc {

class MatF {
 public:
  using value_type = std::uint32_t;

  MatF() = default;
  MatF(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
    if (!field_) throw std::invalid_argument("MatF needs a field");
    if (field_->group_order() >= (1ULL << 32)) throw std::invalid_argument("matrix entries limited to fields below 2^32");
  }

  static MatF identity(Field field, std::size_t n) {
    MatF m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  static MatF scalar(Field field, std::size_t n, u64 value) {
    MatF m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, value);
    return m;
  }
  static MatF from_rows(Field field, const std::vector<std::vector<u64>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    MatF m(std::move(field), r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }
  /// Entries in row-major order.
  static MatF from_entries(Field field, std::size_t rows, std::size_t cols, const std::vector<u64>& entries) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count must equal rows*cols");
    MatF m(std::move(field), rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.set(i / cols, i % cols, entries[i]);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  u64 at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, u64 v) {
    if (field_->group_order() != UINT64_MAX && v > field_->group_order()) throw std::invalid_argument("entry out of range");
    entries_[r * cols_ + c] = static_cast<value_type>(v);
  }
  const std::vector<value_type>& entries() const { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](value_type v) { return v == 0; });
  }
  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  MatF operator+(const MatF& o) const {
    same_shape(o);
    MatF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      r.entries_[i] = static_cast<value_type>(field_->add(entries_[i], o.entries_[i]));
    return r;
  }
  MatF operator-(const MatF& o) const {
    same_shape(o);
    MatF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      r.entries_[i] = static_cast<value_type>(field_->sub(entries_[i], o.entries_[i]));
    return r;
  }
  MatF operator-() const {
    MatF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = static_cast<value_type>(field_->neg(entries_[i]));
    return r;
  }
  MatF operator*(const MatF& o) const {
    same_field(o);
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
    MatF r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const u64 a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const u64 b = o.at(k, j);
          if (b == 0) continue;
          r.entries_[i * o.cols_ + j] =
              static_cast<value_type>(field_->add(r.entries_[i * o.cols_ + j], field_->mul(a, b)));
        }
      }
    }
    return r;
  }
  MatF scaled(u64 s) const {
    MatF r(field_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = static_cast<value_type>(field_->mul(entries_[i], s));
    return r;
  }

  MatF transpose() const {
    MatF r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.entries_[j * rows_ + i] = entries_[i * cols_ + j];
    return r;
  }

  MatF block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
    MatF r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r.entries_[i * nc + j] = entries_[(r0 + i) * cols_ + c0 + j];
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const MatF& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) entries_[(r0 + i) * cols_ + c0 + j] = b.entries_[i * b.cols_ + j];
  }
  /// this += b at offset.
  void add_block(std::size_t r0, std::size_t c0, const MatF& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        auto& e = entries_[(r0 + i) * cols_ + c0 + j];
        e = static_cast<value_type>(field_->add(e, b.entries_[i * b.cols_ + j]));
      }
  }

  /// Rank by Gaussian elimination.
  std::size_t rank() const {
    MatF w = *this;
    return w.eliminate(nullptr);
  }

  u64 det() const {
    if (!square()) throw std::invalid_argument("determinant of non-square matrix");
    MatF w = *this;
    u64 d = 1;
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && w.at(piv, c) == 0) ++piv;
      if (piv == n) return 0;
      if (piv != c) {
        w.swap_rows(piv, c);
        d = field_->neg(d);
      }
      const u64 pv = w.at(c, c);
      d = field_->mul(d, pv);
      const u64 pinv = field_->inv(pv);
      for (std::size_t r = c + 1; r < n; ++r) {
        const u64 f = w.at(r, c);
        if (f == 0) continue;
        w.axpy_row(r, c, field_->neg(field_->mul(f, pinv)), c);
      }
    }
    return d;
  }

  bool invertible() const { return square() && rank() == rows_; }

  MatF inverse() const {
    if (!square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    MatF aug(field_, n, 2 * n);
    aug.set_block(0, 0, *this);
    for (std::size_t i = 0; i < n; ++i) aug.set(i, n + i, 1);
    std::vector<std::size_t> pivots;
    aug.eliminate(&pivots, n, true);
    if (pivots.size() < n) throw std::domain_error("singular matrix has no inverse");
    return aug.block(0, n, n, n);
  }

  MatF pow(u64 e) const {
    if (!square()) throw std::invalid_argument("power of non-square matrix");
    MatF result = identity(field_, rows_);
    MatF base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// D with (*this) * D = I, for a matrix of full row rank.  Rows of D that
  /// correspond to non-pivot columns are zero.
  MatF right_inverse() const {
    const std::size_t n = rows_;
    MatF w = *this;
    std::vector<std::size_t> pivots;
    w.eliminate(&pivots);
    if (pivots.size() < n) throw std::domain_error("matrix lacks full row rank");
    MatF square_part(field_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < n; ++r) square_part.set(r, i, at(r, pivots[i]));
    MatF sinv = square_part.inverse();
    MatF d(field_, cols_, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) d.set(pivots[i], c, sinv.at(i, c));
    return d;
  }

  bool operator==(const MatF& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_ && same_field_spec(o);
  }
  bool operator!=(const MatF& o) const { return !(*this == o); }
  /// Lexicographic on row-major entries (shape compared first).
  bool operator<(const MatF& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return entries_ < o.entries_;
  }

  bool same_field_spec(const MatF& o) const {
    return field_ == o.field_ || (field_ && o.field_ && *field_ == *o.field_);
  }

 private:
  void same_field(const MatF& o) const {
    if (!same_field_spec(o)) throw std::invalid_argument("matrices over different fields");
  }
  void same_shape(const MatF& o) const {
    same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap(entries_[a * cols_ + j], entries_[b * cols_ + j]);
  }
  // row[dst] += f * row[src], starting at column `from`.
  void axpy_row(std::size_t dst, std::size_t src, u64 f, std::size_t from = 0) {
    for (std::size_t j = from; j < cols_; ++j) {
      const u64 s = entries_[src * cols_ + j];
      if (s == 0) continue;
      auto& e = entries_[dst * cols_ + j];
      e = static_cast<value_type>(field_->add(e, field_->mul(f, s)));
    }
  }
  // Row reduction restricted to the first `col_limit` columns; returns rank.
  std::size_t eliminate(std::vector<std::size_t>* pivots, std::size_t col_limit = SIZE_MAX, bool reduced = false) {
    const std::size_t limit = std::min(col_limit, cols_);
    std::size_t row = 0;
    for (std::size_t c = 0; c < limit && row < rows_; ++c) {
      std::size_t piv = row;
      while (piv < rows_ && at(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      swap_rows(piv, row);
      const u64 pinv = field_->inv(at(row, c));
      if (reduced) {
        for (std::size_t j = 0; j < cols_; ++j) entries_[row * cols_ + j] = static_cast<value_type>(field_->mul(entries_[row * cols_ + j], pinv));
      }
      for (std::size_t r = reduced ? 0 : row + 1; r < rows_; ++r) {
        if (r == row) continue;
        const u64 f = at(r, c);
        if (f == 0) continue;
        const u64 scale = reduced ? field_->neg(f) : field_->neg(field_->mul(f, pinv));
        axpy_row(r, row, scale, reduced ? 0 : c);
      }
      if (pivots) pivots->push_back(c);
      ++row;
    }
    return row;
  }

  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> entries_;
};

/// Block-diagonal juxtaposition.
inline MatF block_diag(const std::vector<MatF>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag of nothing");
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    if (!b.same_field_spec(blocks[0])) throw std::invalid_argument("block_diag over different fields");
    r += b.rows();
    c += b.cols();
  }
  MatF out(blocks[0].field(), r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    out.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

/// Columnwise juxtaposition [M_1 M_2 ...].
inline MatF hstack(const std::vector<MatF>& parts) {
  if (parts.empty()) throw std::invalid_argument("hstack of nothing");
  std::size_t c = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts[0].rows()) throw std::invalid_argument("hstack row mismatch");
    c += p.cols();
  }
  MatF out(parts[0].field(), parts[0].rows(), c);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    out.set_block(0, c0, p);
    c0 += p.cols();
  }
  return out;
}

inline MatF vstack(const std::vector<MatF>& parts) {
  if (parts.empty()) throw std::invalid_argument("vstack of nothing");
  std::size_t r = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts[0].cols()) throw std::invalid_argument("vstack column mismatch");
    r += p.rows();
  }
  MatF out(parts[0].field(), r, parts[0].cols());
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    out.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return out;
}

/// Multiplicative order of an invertible matrix, found by stripping prime
/// factors from a known annihilating exponent using repeated squaring.
inline u64 matrix_order(const MatF& m, u64 known_multiple) {
  if (!m.pow(known_multiple).is_identity()) throw std::invalid_argument("exponent does not annihilate matrix");
  u64 order = known_multiple;
  for (auto [r, e] : factorize(known_multiple)) {
    for (int i = 0; i < e; ++i) {
      if (m.pow(order / r).is_identity()) order /= r;
      else break;
    }
  }
  return order;
}

}  // namespace lnc
