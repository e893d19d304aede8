#pragma once

// Bit-packed square matrices over GF(2) of order L <= 8, one byte per row,
// the whole matrix in a single 64-bit word.  Row r lives in bits [8r, 8r+8)
// and column c of that row is bit c of the byte.  These are the carriers
// for the hot loops of the group searches.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "matrix.hpp"
#include "phi.hpp"

namespace lnc {

class Gf2Mat {
 public:
  constexpr Gf2Mat() = default;
  constexpr Gf2Mat(unsigned dim, std::uint64_t bits) : bits_(bits), dim_(static_cast<std::uint8_t>(dim)) {}

  static constexpr Gf2Mat identity(unsigned dim) {
    std::uint64_t b = 0;
    for (unsigned i = 0; i < dim; ++i) b |= std::uint64_t{1} << (8 * i + i);
    return Gf2Mat(dim, b);
  }
  static constexpr Gf2Mat zero(unsigned dim) { return Gf2Mat(dim, 0); }

  constexpr unsigned dim() const { return dim_; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr std::uint8_t row(unsigned r) const { return static_cast<std::uint8_t>(bits_ >> (8 * r)); }
  constexpr bool at(unsigned r, unsigned c) const { return (row(r) >> c) & 1u; }
  constexpr void set(unsigned r, unsigned c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (8 * r + c);
    bits_ = v ? (bits_ | mask) : (bits_ & ~mask);
  }
  constexpr void set_row(unsigned r, std::uint8_t v) {
    bits_ = (bits_ & ~(std::uint64_t{0xFF} << (8 * r))) | (std::uint64_t{v} << (8 * r));
  }

  constexpr Gf2Mat operator+(Gf2Mat o) const { return Gf2Mat(dim_, bits_ ^ o.bits_); }
  constexpr Gf2Mat operator-(Gf2Mat o) const { return Gf2Mat(dim_, bits_ ^ o.bits_); }

  constexpr Gf2Mat operator*(Gf2Mat o) const {
    std::uint64_t out = 0;
    for (unsigned r = 0; r < dim_; ++r) {
      std::uint8_t a = row(r);
      std::uint8_t acc = 0;
      while (a) {
        const unsigned c = static_cast<unsigned>(std::countr_zero(a));
        acc ^= o.row(c);
        a &= static_cast<std::uint8_t>(a - 1);
      }
      out |= std::uint64_t{acc} << (8 * r);
    }
    return Gf2Mat(dim_, out);
  }

  constexpr unsigned rank() const {
    std::array<std::uint8_t, 8> rows{};
    for (unsigned r = 0; r < dim_; ++r) rows[r] = row(r);
    unsigned rk = 0;
    for (unsigned c = 0; c < dim_ && rk < dim_; ++c) {
      const std::uint8_t bit = static_cast<std::uint8_t>(1u << c);
      unsigned piv = rk;
      while (piv < dim_ && !(rows[piv] & bit)) ++piv;
      if (piv == dim_) continue;
      std::swap(rows[piv], rows[rk]);
      for (unsigned r = rk + 1; r < dim_; ++r)
        if (rows[r] & bit) rows[r] ^= rows[rk];
      ++rk;
    }
    return rk;
  }
  constexpr bool full_rank() const { return rank() == dim_; }

  Gf2Mat inverse() const {
    std::array<std::uint8_t, 8> a{}, inv{};
    for (unsigned r = 0; r < dim_; ++r) {
      a[r] = row(r);
      inv[r] = static_cast<std::uint8_t>(1u << r);
    }
    for (unsigned c = 0; c < dim_; ++c) {
      const std::uint8_t bit = static_cast<std::uint8_t>(1u << c);
      unsigned piv = c;
      while (piv < dim_ && !(a[piv] & bit)) ++piv;
      if (piv == dim_) throw std::domain_error("singular GF(2) matrix");
      std::swap(a[piv], a[c]);
      std::swap(inv[piv], inv[c]);
      for (unsigned r = 0; r < dim_; ++r)
        if (r != c && (a[r] & bit)) {
          a[r] ^= a[c];
          inv[r] ^= inv[c];
        }
    }
    Gf2Mat out(dim_, 0);
    for (unsigned r = 0; r < dim_; ++r) out.set_row(r, inv[r]);
    return out;
  }

  Gf2Mat pow(std::uint64_t e) const {
    Gf2Mat result = identity(dim_), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  constexpr bool operator==(const Gf2Mat& o) const { return bits_ == o.bits_ && dim_ == o.dim_; }
  constexpr bool operator!=(const Gf2Mat& o) const { return !(*this == o); }

  /// Lexicographic order of row-major entry vectors (entry (0,0) most significant).
  std::uint64_t lex_key() const {
    std::uint64_t key = 0;
    for (unsigned r = 0; r < dim_; ++r)
      for (unsigned c = 0; c < dim_; ++c) key = (key << 1) | (at(r, c) ? 1u : 0u);
    return key;
  }
  bool lex_less(const Gf2Mat& o) const { return lex_key() < o.lex_key(); }

  MatF to_matf() const {
    MatF m(prime_field(2), dim_, dim_);
    for (unsigned r = 0; r < dim_; ++r)
      for (unsigned c = 0; c < dim_; ++c) m.set(r, c, at(r, c) ? 1 : 0);
    return m;
  }
  static Gf2Mat from_matf(const MatF& m) {
    if (m.field()->p() != 2 || m.field()->k() != 1) throw std::invalid_argument("Gf2Mat needs a GF(2) matrix");
    if (!m.square() || m.rows() > 8) throw std::invalid_argument("Gf2Mat supports square matrices up to 8x8");
    Gf2Mat g(static_cast<unsigned>(m.rows()), 0);
    for (unsigned r = 0; r < m.rows(); ++r)
      for (unsigned c = 0; c < m.cols(); ++c) g.set(r, c, m.at(r, c) != 0);
    return g;
  }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t dim_ = 0;
};

struct Gf2MatHash {
  std::size_t operator()(const Gf2Mat& m) const { return std::hash<std::uint64_t>{}(m.bits() * 0x9E3779B97F4A7C15ULL + m.dim()); }
};

}  // namespace lnc
