#pragma once

// Matrix representation of GF(p^k) inside k x k matrices over GF(p).
//
// Convention: a data symbol is a row vector of coordinates, and
// coords(a) * C = coords(a * g), where g is the field's primitive element.
// Hence the companion matrix C has ones on the superdiagonal and its last
// row holds the negated low-order coefficients -c_0, ..., -c_{k-1} of the
// defining polynomial.

#include <map>
#include <mutex>

#include "field.hpp"
#include "matrix.hpp"

namespace lnc {

/// Canonical GF(p) shared by every matrix over the prime field.
inline Field prime_field(u64 p) {
  static std::mutex mu;
  static std::map<u64, Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  Field f = make_field(p, 1);
  cache.emplace(p, f);
  return f;
}

inline MatF companion_matrix(const FieldSpec& spec) {
  const u64 p = spec.p();
  const unsigned k = spec.k();
  MatF c(prime_field(p), k, k);
  if (k == 1) {
    c.set(0, 0, spec.generator());
    return c;
  }
  for (unsigned i = 0; i + 1 < k; ++i) c.set(i, i + 1, 1);
  for (unsigned j = 0; j < k; ++j) c.set(k - 1, j, (p - spec.poly()[j]) % p);
  return c;
}

/// Phi(x): the matrix of right multiplication by x on coordinate row vectors.
inline MatF phi_lift(const Felt& x) {
  const FieldSpec& spec = *x.field();
  const unsigned k = spec.k();
  MatF m(prime_field(spec.p()), k, k);
  if (x.is_zero()) return m;
  u64 basis = 1;  // g^i
  for (unsigned i = 0; i < k; ++i) {
    const auto row = spec.coords(spec.mul(x.value(), basis));
    for (unsigned j = 0; j < k; ++j) m.set(i, j, row[j]);
    basis = spec.mul(basis, spec.generator());
  }
  return m;
}

inline MatF phi_lift(const Field& field, u64 value) { return phi_lift(Felt(field, value)); }

/// Componentwise Phi of a matrix over GF(p^k), giving a (rows*k) x (cols*k)
/// matrix over GF(p).
inline MatF phi_lift_matrix(const MatF& m) {
  const Field& f = m.field();
  const unsigned k = f->k();
  MatF out(prime_field(f->p()), m.rows() * k, m.cols() * k);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) out.set_block(i * k, j * k, phi_lift(f, m.at(i, j)));
  return out;
}

/// Coordinate row vector over GF(p) of a row vector over GF(p^k).
inline MatF phi_coords(const MatF& row) {
  if (row.rows() != 1) throw std::invalid_argument("phi_coords needs a row vector");
  const Field& f = row.field();
  const unsigned k = f->k();
  MatF out(prime_field(f->p()), 1, row.cols() * k);
  for (std::size_t j = 0; j < row.cols(); ++j) {
    const auto c = f->coords(row.at(0, j));
    for (unsigned i = 0; i < k; ++i) out.set(0, j * k + i, c[i]);
  }
  return out;
}

}  // namespace lnc
