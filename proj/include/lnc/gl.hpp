#pragma once

// Enumeration of GL(L,p), fixed-point-free elements, and conjugacy classes
// keyed by invariant factors of the characteristic matrix xI - B.
//
// Enumeration order is lexicographic on row-major entry vectors: row 0 is
// most significant, and inside a row column 0 is most significant.  Work can
// be split by the value of row 0 and merged back deterministically.

#include <algorithm>
#include <array>
#include <bitset>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "budget.hpp"
#include "gf2.hpp"
#include "matrix.hpp"
#include "phi.hpp"
#include "poly.hpp"

namespace lnc {

/// |GL(L,p)| = prod_{i<L} (p^L - p^i).
inline u64 gl_order(unsigned L, u64 p) {
  const u64 pl = ipow(p, L);
  u64 n = 1;
  for (unsigned i = 0; i < L; ++i) {
    const u64 f = pl - ipow(p, i);
    if (n > UINT64_MAX / f) throw std::overflow_error("|GL(L,p)| overflows 64 bits");
    n *= f;
  }
  return n;
}

inline void check_gl_budget(unsigned L, u64 p, const Budget& budget) {
  if (L == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  const double bits = double(L) * double(L) * std::log2(double(p));
  if (bits > budget.gl_enumeration_bits + 1e-9)
    throw BudgetExceeded("GL(" + std::to_string(L) + "," + std::to_string(p) + ") enumeration needs " +
                         std::to_string(bits) + " bits, cap is " + std::to_string(budget.gl_enumeration_bits));
}

namespace detail {

/// Byte whose bit c holds the entry in column c, for a row given by its
/// lexicographic value (column 0 most significant).
inline std::uint8_t gf2_row_from_lex(unsigned L, unsigned v) {
  std::uint8_t b = 0;
  for (unsigned c = 0; c < L; ++c)
    if ((v >> (L - 1 - c)) & 1u) b |= static_cast<std::uint8_t>(1u << c);
  return b;
}

template <class Fn>
bool gl2_dfs(unsigned L, unsigned depth, Gf2Mat& m, const std::vector<std::uint8_t>& span,
             const std::array<std::uint8_t, 256>& lex_rows, unsigned row0_begin, unsigned row0_end, Fn& fn) {
  std::bitset<256> in_span;
  for (auto s : span) in_span.set(s);
  const unsigned lo = depth == 0 ? row0_begin : 1;
  const unsigned hi = depth == 0 ? row0_end : (1u << L);
  for (unsigned v = lo; v < hi; ++v) {
    const std::uint8_t row = lex_rows[v];
    if (in_span.test(row)) continue;
    m.set_row(depth, row);
    if (depth + 1 == L) {
      if (!fn(static_cast<const Gf2Mat&>(m))) return false;
      continue;
    }
    std::vector<std::uint8_t> next(span);
    next.reserve(span.size() * 2);
    for (auto s : span) next.push_back(static_cast<std::uint8_t>(s ^ row));
    if (!gl2_dfs(L, depth + 1, m, next, lex_rows, row0_begin, row0_end, fn)) return false;
  }
  m.set_row(depth, 0);
  return true;
}

}  // namespace detail

/// Visit every element of GL(L,2) whose row 0 has lexicographic value in
/// [row0_begin, row0_end), in lexicographic order.  fn returns false to stop.
/// Returns false when stopped early.
template <class Fn>
bool for_each_gl2(unsigned L, Fn&& fn, unsigned row0_begin = 1, unsigned row0_end = 0) {
  if (L == 0 || L > 8) throw std::invalid_argument("GF(2) enumeration supports 1 <= L <= 8");
  if (row0_end == 0) row0_end = 1u << L;
  std::array<std::uint8_t, 256> lex_rows{};
  for (unsigned v = 0; v < (1u << L); ++v) lex_rows[v] = detail::gf2_row_from_lex(L, v);
  Gf2Mat m(L, 0);
  std::vector<std::uint8_t> span{0};
  return detail::gl2_dfs(L, 0, m, span, lex_rows, std::max(1u, row0_begin), row0_end, fn);
}

/// Visit every element of GL(L,p) in lexicographic order as MatF.
template <class Fn>
bool for_each_gl(unsigned L, u64 p, Fn&& fn) {
  const Field f = prime_field(p);
  const u64 count = ipow(p, L);
  std::vector<std::vector<u64>> rows(L, std::vector<u64>(L, 0));
  // Echelon basis per depth: reduced rows and their pivot columns.
  struct Basis {
    std::vector<std::vector<u64>> rows;
    std::vector<unsigned> pivots;
  };
  auto reduce = [&](const Basis& b, std::vector<u64> v) {
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
      const u64 c = v[b.pivots[i]];
      if (c == 0) continue;
      for (unsigned j = 0; j < L; ++j) v[j] = (v[j] + (p - c) * b.rows[i][j]) % p;
    }
    return v;
  };
  auto decode = [&](u64 value) {
    std::vector<u64> r(L);
    for (unsigned c = L; c-- > 0;) {
      r[c] = value % p;
      value /= p;
    }
    return r;
  };
  std::function<bool(unsigned, const Basis&)> dfs = [&](unsigned depth, const Basis& basis) -> bool {
    for (u64 v = 1; v < count; ++v) {
      std::vector<u64> row = decode(v);
      std::vector<u64> red = reduce(basis, row);
      auto it = std::find_if(red.begin(), red.end(), [](u64 x) { return x != 0; });
      if (it == red.end()) continue;
      rows[depth] = row;
      if (depth + 1 == L) {
        std::vector<u64> entries;
        for (const auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
        if (!fn(MatF::from_entries(f, L, L, entries))) return false;
        continue;
      }
      Basis next = basis;
      const unsigned piv = static_cast<unsigned>(it - red.begin());
      const u64 inv = pow_mod(red[piv], p - 2, p);
      for (auto& x : red) x = x * inv % p;
      for (auto& br : next.rows) {
        const u64 c = br[piv];
        if (c == 0) continue;
        for (unsigned j = 0; j < L; ++j) br[j] = (br[j] + (p - c) * red[j]) % p;
      }
      next.rows.push_back(red);
      next.pivots.push_back(piv);
      if (!dfs(depth + 1, next)) return false;
    }
    return true;
  };
  return dfs(0, Basis{});
}

/// Stream of GL(L,p) as MatF (GF(2) uses the packed engine internally).
template <class Fn>
u64 gl_enumerate(unsigned L, u64 p, Fn&& fn, const Budget& budget = {}) {
  check_gl_budget(L, p, budget);
  u64 n = 0;
  if (p == 2) {
    for_each_gl2(L, [&](const Gf2Mat& m) {
      ++n;
      return fn(m.to_matf());
    });
  } else {
    for_each_gl(L, p, [&](const MatF& m) {
      ++n;
      return fn(m);
    });
  }
  return n;
}

/// Number of elements of GL(L,p), counted by enumeration (GF(2) split over threads).
inline u64 gl_count(unsigned L, u64 p, unsigned threads = 1, const Budget& budget = {}) {
  check_gl_budget(L, p, budget);
  if (p != 2) {
    u64 n = 0;
    for_each_gl(L, p, [&](const MatF&) {
      ++n;
      return true;
    });
    return n;
  }
  const unsigned rows = 1u << L;
  threads = std::max(1u, std::min(threads, rows - 1));
  std::vector<u64> counts(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const unsigned lo = 1 + (rows - 1) * t / threads, hi = 1 + (rows - 1) * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] {
      for_each_gl2(L, [&](const Gf2Mat&) {
        ++counts[t];
        return true;
      }, lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  u64 n = 0;
  for (u64 c : counts) n += c;
  return n;
}

inline bool is_fixed_point_free(const MatF& b) {
  return b.invertible() && (MatF::identity(b.field(), b.rows()) - b).rank() == b.rows();
}
inline bool is_fixed_point_free(const Gf2Mat& b) { return (b + Gf2Mat::identity(b.dim())).full_rank(); }

/// The fixed-point-free elements (rank(I - B) = L) of GL(L,p), lexicographic.
inline std::vector<MatF> fixed_point_free_list(unsigned L, u64 p, const Budget& budget = {}) {
  check_gl_budget(L, p, budget);
  std::vector<MatF> out;
  if (p == 2) {
    for_each_gl2(L, [&](const Gf2Mat& m) {
      if (is_fixed_point_free(m)) out.push_back(m.to_matf());
      return true;
    });
  } else {
    for_each_gl(L, p, [&](const MatF& m) {
      if (is_fixed_point_free(m)) out.push_back(m);
      return true;
    });
  }
  return out;
}

inline u64 fixed_point_free_count(unsigned L, u64 p, unsigned threads = 1, const Budget& budget = {}) {
  check_gl_budget(L, p, budget);
  if (p != 2) return fixed_point_free_list(L, p, budget).size();
  const unsigned rows = 1u << L;
  threads = std::max(1u, std::min(threads, rows - 1));
  std::vector<u64> counts(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const unsigned lo = 1 + (rows - 1) * t / threads, hi = 1 + (rows - 1) * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] {
      for_each_gl2(L, [&](const Gf2Mat& m) {
        if (is_fixed_point_free(m)) ++counts[t];
        return true;
      }, lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  u64 n = 0;
  for (u64 c : counts) n += c;
  return n;
}

/// Characteristic polynomial det(xI - M) of a square matrix over GF(p),
/// via reduction to upper Hessenberg form.
inline Poly charpoly(std::vector<u64> a, unsigned n, u64 p) {
  auto at = [&](unsigned i, unsigned j) -> u64& { return a[i * n + j]; };
  auto inv = [&](u64 x) { return pow_mod(x, p - 2, p); };
  for (unsigned j = 0; j + 2 < n; ++j) {
    unsigned piv = j + 1;
    while (piv < n && at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (unsigned c = 0; c < n; ++c) std::swap(at(piv, c), at(j + 1, c));
      for (unsigned r = 0; r < n; ++r) std::swap(at(r, piv), at(r, j + 1));
    }
    const u64 hinv = inv(at(j + 1, j));
    for (unsigned k = j + 2; k < n; ++k) {
      const u64 u = at(k, j) * hinv % p;
      if (u == 0) continue;
      for (unsigned c = 0; c < n; ++c) at(k, c) = (at(k, c) + (p - u) * at(j + 1, c)) % p;
      for (unsigned r = 0; r < n; ++r) at(r, j + 1) = (at(r, j + 1) + u * at(r, k)) % p;
    }
  }
  std::vector<Poly> ps(n + 1);
  ps[0] = {1};
  for (unsigned m = 1; m <= n; ++m) {
    Poly cur(m + 1, 0);
    const u64 h = at(m - 1, m - 1);
    for (unsigned i = 0; i < ps[m - 1].size(); ++i) {
      cur[i + 1] = (cur[i + 1] + ps[m - 1][i]) % p;
      cur[i] = (cur[i] + (p - h) * ps[m - 1][i]) % p;
    }
    u64 t = 1;
    for (unsigned i = 1; i < m; ++i) {
      t = t * at(m - i, m - i - 1) % p;
      const u64 c = t * at(m - i - 1, m - 1) % p;
      if (c == 0) continue;
      for (unsigned k = 0; k < ps[m - i - 1].size(); ++k) cur[k] = (cur[k] + (p - c) * ps[m - i - 1][k]) % p;
    }
    ps[m] = cur;
  }
  return ps[n];
}

inline Poly charpoly(const MatF& m) {
  if (!m.square() || !m.field()->is_prime_field()) throw std::invalid_argument("charpoly needs a square matrix over GF(p)");
  std::vector<u64> a(m.entries().begin(), m.entries().end());
  return charpoly(std::move(a), static_cast<unsigned>(m.rows()), m.field()->p());
}

inline MatF poly_eval(const Poly& f, const MatF& b) {
  MatF r(b.field(), b.rows(), b.cols());
  const MatF id = MatF::identity(b.field(), b.rows());
  for (std::size_t i = f.size(); i-- > 0;) r = r * b + id.scaled(f[i]);
  return r;
}

inline Gf2Mat poly_eval(const Poly& f, const Gf2Mat& b) {
  Gf2Mat r = Gf2Mat::zero(b.dim());
  const Gf2Mat id = Gf2Mat::identity(b.dim());
  for (std::size_t i = f.size(); i-- > 0;) {
    r = r * b;
    if (f[i] & 1) r = r + id;
  }
  return r;
}

inline std::size_t mat_rank(const MatF& m) { return m.rank(); }
inline std::size_t mat_rank(const Gf2Mat& m) { return m.rank(); }
inline MatF mat_mul(const MatF& a, const MatF& b) { return a * b; }
inline Gf2Mat mat_mul(const Gf2Mat& a, const Gf2Mat& b) { return a * b; }

/// Similarity data of one matrix: for each irreducible factor f of the
/// characteristic polynomial, the partition of block sizes of f.
struct SimilarityType {
  std::vector<std::pair<Poly, std::vector<unsigned>>> parts;

  /// Invariant factors d_1 | d_2 | ... (only non-constant ones), ascending.
  std::vector<Poly> invariant_factors(u64 p) const {
    std::size_t count = 0;
    for (const auto& [f, lam] : parts) count = std::max(count, lam.size());
    std::vector<Poly> out(count, Poly{1});
    for (const auto& [f, lam] : parts)
      for (std::size_t i = 0; i < lam.size(); ++i) {
        // lam is descending; the largest block goes to the last invariant factor
        out[count - 1 - i] = poly::mul(out[count - 1 - i], poly::pow(f, lam[i], p), p);
      }
    return out;
  }

  std::string key() const {
    std::string k;
    for (const auto& [f, lam] : parts) {
      for (u64 c : f) k.push_back(static_cast<char>(c + 1));
      k.push_back('|');
      for (unsigned x : lam) k.push_back(static_cast<char>(x + 1));
      k.push_back(';');
    }
    return k;
  }
};

/// Computes similarity types with a cache of characteristic-polynomial
/// factorizations.  Not thread-safe; use one per worker.
class SimilarityClassifier {
 public:
  SimilarityClassifier(unsigned L, u64 p) : L_(L), p_(p), irreducibles_(poly::monic_irreducibles(p, L)) {}

  template <class Mat>
  SimilarityType classify(const Mat& b, const Poly& cp) {
    auto it = cache_.find(cp);
    if (it == cache_.end()) it = cache_.emplace(cp, poly::factor(cp, irreducibles_, p_)).first;
    SimilarityType t;
    for (const auto& [f, e] : it->second) {
      std::vector<unsigned> lam;
      if (e == 1) {
        lam = {1};
      } else {
        // r_j = rank f(B)^j; the number of blocks of size >= j is (r_{j-1} - r_j) / deg f
        const unsigned deg = static_cast<unsigned>(poly::degree(f));
        const Mat fb = poly_eval(f, b);
        std::vector<unsigned> ge;
        unsigned prev = L_;
        Mat power = fb;
        const unsigned target = L_ - e * deg;
        for (unsigned j = 1;; ++j) {
          const unsigned r = static_cast<unsigned>(mat_rank(power));
          ge.push_back((prev - r) / deg);
          prev = r;
          if (r == target) break;
          power = mat_mul(power, fb);
        }
        // conjugate partition of ge
        for (unsigned i = 0; i < ge[0]; ++i) {
          unsigned size = 0;
          for (unsigned x : ge)
            if (x > i) ++size;
          lam.push_back(size);
        }
      }
      t.parts.emplace_back(f, lam);
    }
    return t;
  }

 private:
  unsigned L_;
  u64 p_;
  std::vector<Poly> irreducibles_;
  std::map<Poly, std::vector<std::pair<Poly, unsigned>>> cache_;
};

inline Poly charpoly(const Gf2Mat& m) {
  std::vector<u64> a(m.dim() * m.dim());
  for (unsigned r = 0; r < m.dim(); ++r)
    for (unsigned c = 0; c < m.dim(); ++c) a[r * m.dim() + c] = m.at(r, c);
  return charpoly(std::move(a), m.dim(), 2);
}

struct ConjClassInfo {
  MatF rep;
  u64 size = 0;
  u64 order = 0;
  std::vector<Poly> invariant_factors;
  bool fixed_point_free = false;
};

/// Partition GL(L,p), or its fixed-point-free subset, into conjugacy classes.
/// Classes are returned sorted by representative (lexicographically smallest member).
inline std::vector<ConjClassInfo> conjugacy_classify(unsigned L, u64 p, bool restrict_fpf, unsigned threads = 1,
                                                     const Budget& budget = {}) {
  check_gl_budget(L, p, budget);
  struct Acc {
    u64 count = 0;
    MatF rep;
    SimilarityType type;
  };
  using Table = std::map<std::string, Acc>;
  const u64 group = gl_order(L, p);
  std::vector<Table> tables;

  if (p == 2) {
    const unsigned rows = 1u << L;
    threads = std::max(1u, std::min(threads, rows - 1));
    tables.resize(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const unsigned lo = 1 + (rows - 1) * t / threads, hi = 1 + (rows - 1) * (t + 1) / threads;
      pool.emplace_back([&, t, lo, hi] {
        SimilarityClassifier cls(L, 2);
        Table& table = tables[t];
        for_each_gl2(L, [&](const Gf2Mat& m) {
          if (restrict_fpf && !is_fixed_point_free(m)) return true;
          SimilarityType type = cls.classify(m, charpoly(m));
          Acc& acc = table[type.key()];
          if (acc.count++ == 0) {
            acc.rep = m.to_matf();
            acc.type = std::move(type);
          }
          return true;
        }, lo, hi);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    tables.resize(1);
    SimilarityClassifier cls(L, p);
    for_each_gl(L, p, [&](const MatF& m) {
      if (restrict_fpf && !is_fixed_point_free(m)) return true;
      SimilarityType type = cls.classify(m, charpoly(m));
      Acc& acc = tables[0][type.key()];
      if (acc.count++ == 0) {
        acc.rep = m;
        acc.type = std::move(type);
      }
      return true;
    });
  }

  // Threads cover increasing row-0 ranges, so the first table holding a key
  // also holds its lexicographically smallest member.
  Table merged;
  for (auto& table : tables)
    for (auto& [k, acc] : table) {
      auto it = merged.find(k);
      if (it == merged.end()) merged.emplace(k, std::move(acc));
      else it->second.count += acc.count;
    }

  std::vector<ConjClassInfo> out;
  for (auto& [k, acc] : merged) {
    ConjClassInfo info;
    info.rep = acc.rep;
    info.size = acc.count;
    info.order = matrix_order(acc.rep, group);
    info.invariant_factors = acc.type.invariant_factors(p);
    info.fixed_point_free = is_fixed_point_free(acc.rep);
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(), [](const ConjClassInfo& a, const ConjClassInfo& b) { return a.rep < b.rep; });
  return out;
}

/// Minimum rank(A_i - A_j) over all pairs i < j.
inline std::size_t rank_distance_spectrum(const std::vector<MatF>& set) {
  if (set.size() < 2) throw std::invalid_argument("rank distance needs at least two matrices");
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) best = std::min(best, (set[i] - set[j]).rank());
  return best;
}

}  // namespace lnc
