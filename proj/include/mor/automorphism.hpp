#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "mor/unitriangular.hpp"

namespace mor {

/// Conjugation by the diagonal matrix diag(w_1..w_n): a_{ij} -> w_i^{-1} a_{ij} w_j.
struct DiagonalAut {
  std::vector<FieldElement> w;

  bool operator==(const DiagonalAut&) const = default;
};

/// Conjugation x -> h^{-1} x h.
struct InnerAut {
  UTMatrix h;

  bool operator==(const InnerAut&) const = default;
};

/// x -> x (1 + (sum_r lambda_r(a_{r,r+1})) e_{1,n}) with Z_p-linear lambda_r.
struct CentralAut {
  std::vector<AdditiveEndo> lambdas;

  bool operator==(const CentralAut&) const = default;
};

using AutFactor = std::variant<DiagonalAut, InnerAut, CentralAut>;

/// Ordered factorization of an automorphism, applied left to right.
struct AutWord {
  std::vector<AutFactor> factors;
};

/// An automorphism presented by its action on the canonical generators.
/// This is the public form; a factored AutWord stays private.
struct GenImageTable {
  std::vector<UTMatrix> images;

  bool operator==(const GenImageTable&) const = default;
};

struct OrderBound {
  u128 N = 1;
};

/// Dense square matrix over Z_p.
struct ZpMatrix {
  unsigned size = 0;
  std::vector<u64> a;

  u64 at(unsigned r, unsigned c) const { return a[static_cast<std::size_t>(r) * size + c]; }
  u64& at(unsigned r, unsigned c) { return a[static_cast<std::size_t>(r) * size + c]; }

  static ZpMatrix ident(unsigned size) {
    ZpMatrix m{size, std::vector<u64>(static_cast<std::size_t>(size) * size, 0)};
    for (unsigned r = 0; r < size; ++r) m.at(r, r) = 1;
    return m;
  }
};

namespace detail {

/// Gaussian elimination mod p. Returns the unique solution of M x = rhs or
/// throws SingularLayer.
inline std::vector<u64> zp_solve(ZpMatrix m, std::vector<u64> rhs, u64 p) {
  unsigned n = m.size;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularLayer("layer matrix is singular");
    if (pivot != col) {
      for (unsigned c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      std::swap(rhs[pivot], rhs[col]);
    }
    u64 inv = modmath::inv_mod(m.at(col, col), p);
    for (unsigned c = col; c < n; ++c) m.at(col, c) = modmath::mul_mod(m.at(col, c), inv, p);
    rhs[col] = modmath::mul_mod(rhs[col], inv, p);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      u64 f = m.at(r, col);
      for (unsigned c = col; c < n; ++c)
        m.at(r, c) = modmath::sub_mod(m.at(r, c), modmath::mul_mod(f, m.at(col, c), p), p);
      rhs[r] = modmath::sub_mod(rhs[r], modmath::mul_mod(f, rhs[col], p), p);
    }
  }
  return rhs;
}

inline bool zp_invertible(ZpMatrix m, u64 p) {
  unsigned n = m.size;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col)
      for (unsigned c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
    u64 inv = modmath::inv_mod(m.at(col, col), p);
    for (unsigned c = col; c < n; ++c) m.at(col, c) = modmath::mul_mod(m.at(col, c), inv, p);
    for (unsigned r = col + 1; r < n; ++r) {
      u64 f = m.at(r, col);
      if (f == 0) continue;
      for (unsigned c = col; c < n; ++c)
        m.at(r, c) = modmath::sub_mod(m.at(r, c), modmath::mul_mod(f, m.at(col, c), p), p);
    }
  }
  return true;
}

} // namespace detail

inline UTMatrix apply_diagonal(const UnitriangularGroup& G, const DiagonalAut& d,
                               const UTMatrix& x) {
  const Field& f = G.field();
  if (d.w.size() != G.n()) throw ParamMismatch("diagonal weight count must equal n");
  for (const FieldElement& wi : d.w)
    if (f.is_zero(wi)) throw InvalidParams("diagonal weights must be nonzero");
  UTMatrix y = G.identity();
  for (unsigned i = 1; i < G.n(); ++i)
    for (unsigned j = i + 1; j <= G.n(); ++j)
      G.set_entry(y, i, j,
                  f.mul(f.inv(d.w[i - 1]), f.mul(G.entry(x, i, j), d.w[j - 1])));
  return y;
}

inline UTMatrix apply_inner(const UnitriangularGroup& G, const InnerAut& inn,
                            const UTMatrix& x) {
  return G.mul(G.mul(G.inv(inn.h), x), inn.h);
}

inline UTMatrix apply_central(const UnitriangularGroup& G, const CentralAut& c,
                              const UTMatrix& x) {
  const Field& f = G.field();
  if (G.n() < 3) throw Unsupported("central automorphisms need n >= 3");
  if (c.lambdas.size() != G.n() - 1)
    throw ParamMismatch("central automorphism needs n-1 endomorphisms");
  FieldElement offset = f.zero();
  for (unsigned r = 1; r < G.n(); ++r)
    offset = f.add(offset, f.apply(c.lambdas[r - 1], G.entry(x, r, r + 1)));
  return G.mul(x, G.elementary(1, G.n(), offset));
}

inline UTMatrix apply_factor(const UnitriangularGroup& G, const AutFactor& a,
                             const UTMatrix& x) {
  if (const auto* d = std::get_if<DiagonalAut>(&a)) return apply_diagonal(G, *d, x);
  if (const auto* inn = std::get_if<InnerAut>(&a)) return apply_inner(G, *inn, x);
  return apply_central(G, std::get<CentralAut>(a), x);
}

/// Factors apply left to right: the first factor acts first.
inline UTMatrix apply_word(const UnitriangularGroup& G, const AutWord& word,
                           const UTMatrix& x) {
  UTMatrix y = x;
  for (const AutFactor& fac : word.factors) y = apply_factor(G, fac, y);
  return y;
}

inline GenImageTable identity_table(const UnitriangularGroup& G) {
  GenImageTable t;
  t.images.reserve(G.gen_count());
  for (std::size_t s = 0; s < G.gen_count(); ++s)
    t.images.push_back(G.generator_matrix(G.gen_at(s)));
  return t;
}

inline GenImageTable to_table(const UnitriangularGroup& G, const AutWord& word) {
  GenImageTable t;
  t.images.reserve(G.gen_count());
  for (std::size_t s = 0; s < G.gen_count(); ++s)
    t.images.push_back(apply_word(G, word, G.generator_matrix(G.gen_at(s))));
  return t;
}

inline GenImageTable to_table(const UnitriangularGroup& G, const DiagonalAut& d) {
  return to_table(G, AutWord{{d}});
}
inline GenImageTable to_table(const UnitriangularGroup& G, const InnerAut& inn) {
  return to_table(G, AutWord{{inn}});
}
inline GenImageTable to_table(const UnitriangularGroup& G, const CentralAut& c) {
  return to_table(G, AutWord{{c}});
}

/// Collect x, substitute each generator by its image, multiply back out.
inline UTMatrix apply_table(const UnitriangularGroup& G, const GenImageTable& t,
                            const UTMatrix& x) {
  if (t.images.size() != G.gen_count())
    throw ParamMismatch("image table length must equal generator count");
  CollectedWord w = G.collect(x);
  UTMatrix out = G.identity();
  for (std::size_t s = 0; s < w.exps.size(); ++s) {
    if (w.exps[s] == 0) continue;
    out = G.mul(out, G.pow(t.images[s], w.exps[s]));
  }
  return out;
}

/// (f . g)(x) = g(f(x)): f acts first.
inline GenImageTable compose(const UnitriangularGroup& G, const GenImageTable& f,
                             const GenImageTable& g) {
  if (f.images.size() != g.images.size())
    throw ParamMismatch("cannot compose tables of different lengths");
  GenImageTable out;
  out.images.reserve(f.images.size());
  for (const UTMatrix& img : f.images) out.images.push_back(apply_table(G, g, img));
  return out;
}

inline GenImageTable table_pow(const UnitriangularGroup& G, GenImageTable f, u128 e) {
  GenImageTable acc = identity_table(G);
  while (e > 0) {
    if (e & 1) acc = compose(G, acc, f);
    e >>= 1;
    if (e > 0) f = compose(G, f, f);
  }
  return acc;
}

/// Induced Z_p-linear action on the distance-d quotient: column c is the
/// distance-d exponent slice of the image of the c-th distance-d generator.
inline ZpMatrix layer_matrix(const UnitriangularGroup& G, const GenImageTable& t,
                             unsigned d) {
  if (d < 1 || d >= G.n()) throw InvalidParams("layer distance out of range");
  if (t.images.size() != G.gen_count())
    throw ParamMismatch("image table length must equal generator count");
  unsigned gamma = G.field().gamma();
  unsigned size = gamma * (G.n() - d);
  std::size_t base = G.gen_linear(GenIndex{d, 1, 1});
  ZpMatrix m{size, std::vector<u64>(static_cast<std::size_t>(size) * size, 0)};
  for (unsigned c = 0; c < size; ++c) {
    CollectedWord w = G.collect(t.images[base + c]);
    for (unsigned r = 0; r < size; ++r) m.at(r, c) = w.exps[base + r];
  }
  return m;
}

inline bool table_is_valid(const UnitriangularGroup& G, const GenImageTable& t) {
  if (t.images.size() != G.gen_count()) return false;
  for (const UTMatrix& img : t.images)
    if (img.entries.size() != G.entry_count()) return false;
  for (unsigned d = 1; d < G.n(); ++d)
    if (!detail::zp_invertible(layer_matrix(G, t, d), G.field().p())) return false;
  return true;
}

/// The unique a with apply_table(t, a) = c. Layer peeling: automorphisms in
/// the supported families preserve the distance filtration, so each layer is
/// a linear solve against layer_matrix(t, d) followed by dividing out the
/// image of the recovered partial word.
inline UTMatrix invert_apply(const UnitriangularGroup& G, const GenImageTable& t,
                             const UTMatrix& c) {
  const Field& f = G.field();
  unsigned gamma = f.gamma();
  UTMatrix residual = c;
  UTMatrix out = G.identity();
  for (unsigned d = 1; d < G.n(); ++d) {
    unsigned size = gamma * (G.n() - d);
    std::vector<u64> rhs(size);
    for (unsigned i = 1; i + d <= G.n(); ++i) {
      const FieldElement& e = G.entry(residual, i, i + d);
      for (unsigned k = 0; k < gamma; ++k) rhs[(i - 1) * gamma + k] = e.coeffs[k];
    }
    std::vector<u64> alpha = detail::zp_solve(layer_matrix(G, t, d), std::move(rhs), f.p());
    CollectedWord w{std::vector<u64>(G.gen_count(), 0)};
    std::size_t base = G.gen_linear(GenIndex{d, 1, 1});
    for (unsigned c2 = 0; c2 < size; ++c2) w.exps[base + c2] = alpha[c2];
    UTMatrix part = G.expand(w);
    out = G.mul(out, part);
    residual = G.mul(G.inv(apply_table(G, t, part)), residual);
  }
  return out;
}

/// Order of the composed subgroup (inner x central) semidirect diagonal. The
/// central factor only exists for n >= 4; for n = 2 only the diagonal action
/// survives.
inline OrderBound order_bound(const UTParams& params) {
  Field f(params.field);
  unsigned n = params.n;
  if (n < 2) throw InvalidParams("matrix dimension must be at least 2");
  u128 q = f.q();
  if (n == 2) return OrderBound{q - 1};
  u128 N = modmath::checked_pow(q, (static_cast<u64>(n) * n - n - 2) / 2);
  N = modmath::checked_mul(N, modmath::checked_pow(q - 1, n - 1));
  if (n >= 4)
    N = modmath::checked_mul(N, modmath::checked_pow(q, static_cast<u64>(f.gamma()) * (n - 3)));
  return OrderBound{N};
}

} // namespace mor
