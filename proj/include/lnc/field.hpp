#pragma once

// Finite fields GF(p^k) in polynomial basis over a primitive polynomial.
//
// Elements are encoded as integers: c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// where c_i are the coordinates in the basis 1, g, ..., g^{k-1} and g is the
// fixed root of the defining polynomial.  For k = 1 the field is GF(p) and
// the "root" g is the primitive residue -c_0.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "numtheory.hpp"

namespace lnc {

namespace detail {

// Dense polynomials over GF(p), low-degree first, used while searching for
// primitive polynomials and for arithmetic in fields too large for tables.
using CoeffVec = std::vector<u64>;

inline void trim(CoeffVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// a * b mod f, where f is monic of degree k and deg a, deg b < k.
inline CoeffVec mulmod_poly(const CoeffVec& a, const CoeffVec& b, const CoeffVec& f, u64 p) {
  const std::size_t k = f.size() - 1;
  CoeffVec prod(2 * k, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  for (std::size_t d = prod.size(); d-- > k;) {
    const u64 c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < k; ++i) {
      // x^d = x^{d-k} * x^k and x^k = -(f_0 + ... + f_{k-1} x^{k-1})
      prod[d - k + i] = (prod[d - k + i] + p - mul_mod(c, f[i], p)) % p;
    }
  }
  prod.resize(k);
  return prod;
}

inline CoeffVec powmod_poly(CoeffVec base, u64 exp, const CoeffVec& f, u64 p) {
  const std::size_t k = f.size() - 1;
  CoeffVec result(k, 0);
  result[0] = 1;
  base.resize(k, 0);
  while (exp > 0) {
    if (exp & 1) result = mulmod_poly(result, base, f, p);
    base = mulmod_poly(base, base, f, p);
    exp >>= 1;
  }
  return result;
}

inline bool is_one(const CoeffVec& a) {
  if (a.empty() || a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0) return false;
  return true;
}

/// A monic f of degree k with f(0) != 0 is primitive iff x has order exactly
/// p^k - 1 modulo f (the quotient ring is then a field).
inline bool is_primitive_poly(const CoeffVec& f, u64 p, u64 group_order,
                              const std::vector<std::pair<u64, int>>& order_factors) {
  const std::size_t k = f.size() - 1;
  if (f[0] == 0) return false;
  if (k == 1) {
    const u64 root = (p - f[0]) % p;
    if (root == 0) return false;
    if (pow_mod(root, group_order, p) != 1) return false;
    for (auto [r, e] : order_factors)
      if (pow_mod(root, group_order / r, p) == 1) return false;
    return true;
  }
  CoeffVec x(k, 0);
  x[1] = 1;
  if (!is_one(powmod_poly(x, group_order, f, p))) return false;
  for (auto [r, e] : order_factors)
    if (is_one(powmod_poly(x, group_order / r, f, p))) return false;
  return true;
}

}  // namespace detail

/// GF(p^k) together with its defining primitive polynomial.  Immutable once
/// built; share it through `Field`.
class FieldSpec {
 public:
  /// `poly` holds k+1 coefficients, low degree first, monic.
  FieldSpec(u64 p, std::vector<u64> poly) : p_(p), poly_(std::move(poly)) {
    if (!is_prime_u64(p_)) throw std::invalid_argument("field characteristic must be prime");
    if (poly_.size() < 2) throw std::invalid_argument("field polynomial must have degree >= 1");
    if (poly_.back() != 1) throw std::invalid_argument("field polynomial must be monic");
    for (u64 c : poly_)
      if (c >= p_) throw std::invalid_argument("polynomial coefficient out of range");
    k_ = static_cast<unsigned>(poly_.size() - 1);
    u128 q = 1;
    for (unsigned i = 0; i < k_; ++i) {
      q *= p_;
      if (q > (static_cast<u128>(1) << 64)) throw std::invalid_argument("field size exceeds 2^64");
    }
    group_order_ = static_cast<u64>(q - 1);
    order_factors_ = group_order_ > 1 ? factorize(group_order_) : std::vector<std::pair<u64, int>>{};
    if (!detail::is_primitive_poly(poly_, p_, group_order_, order_factors_))
      throw std::invalid_argument("polynomial is not primitive");
    if (k_ == 1) {
      generator_ = (p_ - poly_[0]) % p_;
    } else {
      generator_ = p_;  // the element x
    }
    if (group_order_ + 1 <= kTableLimit) build_tables();
  }

  static constexpr u64 kTableLimit = 1ULL << 16;

  u64 p() const { return p_; }
  unsigned k() const { return k_; }
  const std::vector<u64>& poly() const { return poly_; }
  /// p^k - 1, the order of the multiplicative group.
  u64 group_order() const { return group_order_; }
  /// Field size p^k; only valid while it fits in 64 bits.
  u64 size() const {
    if (group_order_ == UINT64_MAX) throw std::overflow_error("field size does not fit in 64 bits");
    return group_order_ + 1;
  }
  const std::vector<std::pair<u64, int>>& group_order_factors() const { return order_factors_; }
  bool is_prime_field() const { return k_ == 1; }
  bool has_tables() const { return !exp_.empty(); }

  /// The fixed primitive element g.
  u64 generator() const { return generator_; }

  std::vector<u64> coords(u64 a) const {
    std::vector<u64> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }
  u64 from_coords(const std::vector<u64>& c) const {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i] % p_;
    return v;
  }

  u64 add(u64 a, u64 b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) return (a + b) % p_;
    if (!add_table_.empty()) return add_table_[a * (group_order_ + 1) + b];
    return digitwise(a, b, false);
  }
  u64 sub(u64 a, u64 b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) return (a + p_ - b) % p_;
    return digitwise(a, b, true);
  }
  u64 neg(u64 a) const { return sub(0, a); }

  u64 mul(u64 a, u64 b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return mul_mod(a, b, p_);
    if (has_tables()) {
      u64 e = log_[a] + log_[b];
      if (e >= group_order_) e -= group_order_;
      return exp_[e];
    }
    return from_coords(detail::mulmod_poly(coords(a), coords(b), poly_, p_));
  }

  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (k_ == 1) return pow_mod(a, p_ - 2, p_);
    if (has_tables()) return exp_[(group_order_ - log_[a]) % group_order_];
    return pow(a, group_order_ - 1);
  }

  u64 pow(u64 a, u64 e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (k_ == 1) return pow_mod(a, e, p_);
    if (has_tables()) return exp_[static_cast<u64>((static_cast<u128>(log_[a]) * e) % group_order_)];
    return from_coords(detail::powmod_poly(coords(a), e, poly_, p_));
  }

  /// g^e for the fixed primitive element g.
  u64 gen_pow(u64 e) const {
    e %= group_order_ == 0 ? 1 : group_order_;
    if (has_tables()) return exp_[e];
    return pow(generator_, e);
  }

  /// Discrete log base g; requires tables.
  u64 log(u64 a) const {
    if (a == 0) throw std::domain_error("log of zero");
    if (!has_tables()) throw std::logic_error("discrete log needs table-backed field");
    return log_[a];
  }

  /// Multiplicative order of a nonzero element.
  u64 element_order(u64 a) const {
    if (a == 0) throw std::domain_error("order of zero");
    u64 order = group_order_;
    for (auto [r, e] : order_factors_) {
      for (int i = 0; i < e; ++i) {
        if (pow(a, order / r) == 1) order /= r;
        else break;
      }
    }
    return order;
  }

  bool operator==(const FieldSpec& o) const { return p_ == o.p_ && poly_ == o.poly_; }

 private:
  u64 digitwise(u64 a, u64 b, bool subtract) const {
    u64 r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const u64 x = a % p_, y = b % p_;
      a /= p_;
      b /= p_;
      const u64 d = subtract ? (x + p_ - y) % p_ : (x + y) % p_;
      r += d * scale;
      scale *= p_;
    }
    return r;
  }

  void build_tables() {
    const u64 q = group_order_ + 1;
    exp_.assign(group_order_ == 0 ? 1 : group_order_, 0);
    log_.assign(q, 0);
    u64 cur = 1;
    for (u64 e = 0; e < group_order_; ++e) {
      exp_[e] = cur;
      log_[cur] = e;
      cur = k_ == 1 ? mul_mod(cur, generator_, p_) : times_generator(cur);
    }
    if (p_ != 2 && k_ > 1 && q <= 1024) {
      add_table_.resize(q * q);
      for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b) add_table_[a * q + b] = digitwise(a, b, false);
    }
  }

  // Multiplication by x in the polynomial basis.
  u64 times_generator(u64 a) const {
    auto c = coords(a);
    const u64 top = c[k_ - 1];
    for (unsigned i = k_ - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    for (unsigned i = 0; i < k_; ++i) c[i] = (c[i] + p_ - mul_mod(top, poly_[i], p_)) % p_;
    return from_coords(c);
  }

  u64 p_;
  unsigned k_ = 0;
  std::vector<u64> poly_;
  u64 group_order_ = 0;
  std::vector<std::pair<u64, int>> order_factors_;
  u64 generator_ = 0;
  std::vector<u64> exp_, log_;
  std::vector<std::uint16_t> add_table_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// GF(p^k) over the lexicographically smallest primitive polynomial, where
/// coefficient lists [c_0, ..., c_{k-1}, 1] are compared from c_0 upward.
inline Field make_field(u64 p, unsigned k) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_field: p must be prime");
  if (k == 0) throw std::invalid_argument("make_field: degree must be >= 1");
  u128 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > (static_cast<u128>(1) << 64)) throw std::invalid_argument("make_field: p^k exceeds 2^64");
  }
  const u64 group_order = static_cast<u64>(q - 1);
  const auto order_factors = group_order > 1 ? factorize(group_order) : std::vector<std::pair<u64, int>>{};
  // Odometer over (c_0, ..., c_{k-1}) with c_0 most significant; c_0 != 0.
  std::vector<u64> coeffs(k, 0);
  coeffs[0] = 1;
  while (true) {
    detail::CoeffVec f(coeffs);
    f.push_back(1);
    if (detail::is_primitive_poly(f, p, group_order, order_factors)) return std::make_shared<const FieldSpec>(p, f);
    unsigned pos = k;
    while (pos-- > 0) {
      if (++coeffs[pos] < p) break;
      coeffs[pos] = 0;
      if (pos == 0) throw std::logic_error("make_field: no primitive polynomial found");
    }
  }
}

inline Field make_field_with_poly(u64 p, std::vector<u64> poly) {
  return std::make_shared<const FieldSpec>(p, std::move(poly));
}

/// A field element bound to its field.
class Felt {
 public:
  Felt(Field field, u64 value) : field_(std::move(field)), value_(value) {
    if (!field_) throw std::invalid_argument("Felt without field");
    if (field_->group_order() != UINT64_MAX && value_ > field_->group_order())
      throw std::invalid_argument("element out of range");
  }
  static Felt from_coords(Field field, const std::vector<u64>& c) {
    if (c.size() != field->k()) throw std::invalid_argument("coordinate count must equal extension degree");
    for (u64 x : c)
      if (x >= field->p()) throw std::invalid_argument("coordinate out of range");
    const u64 v = field->from_coords(c);
    return Felt(std::move(field), v);
  }
  static Felt zero(Field f) { return Felt(std::move(f), 0); }
  static Felt one(Field f) { return Felt(std::move(f), 1); }
  static Felt generator(Field f) {
    const u64 g = f->generator();
    return Felt(std::move(f), g);
  }

  const Field& field() const { return field_; }
  u64 value() const { return value_; }
  std::vector<u64> coords() const { return field_->coords(value_); }
  bool is_zero() const { return value_ == 0; }

  Felt operator+(const Felt& o) const { return Felt(field_, field_->add(value_, check(o))); }
  Felt operator-(const Felt& o) const { return Felt(field_, field_->sub(value_, check(o))); }
  Felt operator*(const Felt& o) const { return Felt(field_, field_->mul(value_, check(o))); }
  Felt operator-() const { return Felt(field_, field_->neg(value_)); }
  Felt inv() const { return Felt(field_, field_->inv(value_)); }
  Felt pow(u64 e) const { return Felt(field_, field_->pow(value_, e)); }

  bool operator==(const Felt& o) const { return value_ == check(o); }
  bool operator!=(const Felt& o) const { return !(*this == o); }

 private:
  u64 check(const Felt& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_)) throw std::invalid_argument("mixed field specs");
    return o.value_;
  }
  Field field_;
  u64 value_;
};

}  // namespace lnc
