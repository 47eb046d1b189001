#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mor/field.hpp"
#include "mor/rng.hpp"

namespace mor {

struct UTParams {
  FieldParams field;
  unsigned n = 2;

  bool operator==(const UTParams&) const = default;
};

/// Unitriangular matrix 1 + sum_{i<j} a_{ij} e_{ij}. Only the strictly
/// upper entries are stored, row-major: (1,2),(1,3),...,(1,n),(2,3),...
struct UTMatrix {
  std::vector<FieldElement> entries;

  bool operator==(const UTMatrix&) const = default;
};

/// Label of the polycyclic generator 1 + delta_k e_{i,i+d}.
struct GenIndex {
  unsigned d = 1;
  unsigned i = 1;
  unsigned k = 1;

  bool operator==(const GenIndex&) const = default;
};

/// Exponent vector over the canonical generator sequence, each exponent
/// in [0, p).
struct CollectedWord {
  std::vector<u64> exps;

  bool operator==(const CollectedWord&) const = default;
};

class UnitriangularGroup {
public:
  UnitriangularGroup(const Field& field, unsigned n) : f_(field), n_(n) {
    if (n < 2) throw InvalidParams("matrix dimension must be at least 2");
  }
  explicit UnitriangularGroup(const UTParams& params)
      : UnitriangularGroup(Field(params.field), params.n) {}

  const Field& field() const { return f_; }
  unsigned n() const { return n_; }
  UTParams params() const { return UTParams{f_.params(), n_}; }

  std::size_t entry_count() const {
    return static_cast<std::size_t>(n_) * (n_ - 1) / 2;
  }

  /// Storage slot of a_{ij}, 1-based, i < j.
  std::size_t entry_index(unsigned i, unsigned j) const {
    if (i < 1 || j <= i || j > n_) throw InvalidParams("entry index out of range");
    // rows 1..i-1 contribute n-1, n-2, ..., n-i+1 slots
    std::size_t before = (static_cast<std::size_t>(i) - 1) * (2 * n_ - i) / 2;
    return before + (j - i - 1);
  }

  const FieldElement& entry(const UTMatrix& x, unsigned i, unsigned j) const {
    return x.entries[entry_index(i, j)];
  }
  void set_entry(UTMatrix& x, unsigned i, unsigned j, FieldElement v) const {
    x.entries[entry_index(i, j)] = std::move(v);
  }

  UTMatrix identity() const {
    return UTMatrix{std::vector<FieldElement>(entry_count(), f_.zero())};
  }

  /// 1 + a e_{ij}.
  UTMatrix elementary(unsigned i, unsigned j, const FieldElement& a) const {
    UTMatrix x = identity();
    set_entry(x, i, j, f_.element(a.coeffs));
    return x;
  }

  bool is_identity(const UTMatrix& x) const {
    check(x);
    for (const FieldElement& e : x.entries)
      if (!f_.is_zero(e)) return false;
    return true;
  }

  /// True iff every entry except a_{1,n} vanishes.
  bool is_central(const UTMatrix& x) const {
    check(x);
    std::size_t corner = entry_index(1, n_);
    for (std::size_t s = 0; s < x.entries.size(); ++s)
      if (s != corner && !f_.is_zero(x.entries[s])) return false;
    return true;
  }

  UTMatrix mul(const UTMatrix& x, const UTMatrix& y) const {
    check(x);
    check(y);
    UTMatrix z = identity();
    for (unsigned i = 1; i < n_; ++i) {
      for (unsigned j = i + 1; j <= n_; ++j) {
        FieldElement acc = f_.add(entry(x, i, j), entry(y, i, j));
        for (unsigned k = i + 1; k < j; ++k)
          acc = f_.add(acc, f_.mul(entry(x, i, k), entry(y, k, j)));
        set_entry(z, i, j, std::move(acc));
      }
    }
    return z;
  }

  UTMatrix inv(const UTMatrix& x) const {
    check(x);
    UTMatrix y = identity();
    // back-substitution by diagonal distance; referenced y entries are closer
    // to the diagonal than the one being solved
    for (unsigned d = 1; d < n_; ++d) {
      for (unsigned i = 1; i + d <= n_; ++i) {
        unsigned j = i + d;
        FieldElement acc = entry(x, i, j);
        for (unsigned k = i + 1; k < j; ++k)
          acc = f_.add(acc, f_.mul(entry(x, i, k), entry(y, k, j)));
        set_entry(y, i, j, f_.neg(acc));
      }
    }
    return y;
  }

  UTMatrix pow(const UTMatrix& x, u128 e) const {
    check(x);
    UTMatrix acc = identity();
    UTMatrix base = x;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      e >>= 1;
      if (e > 0) base = mul(base, base);
    }
    return acc;
  }

  /// x^{-1} y^{-1} x y.
  UTMatrix commutator(const UTMatrix& x, const UTMatrix& y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  std::size_t gen_count() const { return entry_count() * f_.gamma(); }

  /// Canonical sequence position of a generator label.
  std::size_t gen_linear(const GenIndex& g) const {
    if (g.d < 1 || g.d >= n_ || g.i < 1 || g.i + g.d > n_ || g.k < 1 ||
        g.k > f_.gamma())
      throw InvalidParams("generator index out of range");
    std::size_t pos = 0;
    for (unsigned d = 1; d < g.d; ++d)
      pos += static_cast<std::size_t>(n_ - d) * f_.gamma();
    pos += static_cast<std::size_t>(g.i - 1) * f_.gamma();
    return pos + (g.k - 1);
  }

  GenIndex gen_at(std::size_t pos) const {
    if (pos >= gen_count()) throw InvalidParams("generator position out of range");
    for (unsigned d = 1; d < n_; ++d) {
      std::size_t layer = static_cast<std::size_t>(n_ - d) * f_.gamma();
      if (pos < layer) {
        unsigned i = 1 + static_cast<unsigned>(pos / f_.gamma());
        unsigned k = 1 + static_cast<unsigned>(pos % f_.gamma());
        return GenIndex{d, i, k};
      }
      pos -= layer;
    }
    throw InvalidParams("generator position out of range");
  }

  UTMatrix generator_matrix(const GenIndex& g) const {
    gen_linear(g);
    return elementary(g.i, g.i + g.d, f_.basis(g.k));
  }

  std::vector<std::pair<GenIndex, UTMatrix>> generators() const {
    std::vector<std::pair<GenIndex, UTMatrix>> out;
    out.reserve(gen_count());
    for (std::size_t s = 0; s < gen_count(); ++s) {
      GenIndex g = gen_at(s);
      out.emplace_back(g, generator_matrix(g));
    }
    return out;
  }

  /// Exponents of x over the canonical generator sequence, by diagonal
  /// peeling: the d-th superdiagonal of the residual holds the layer's
  /// coefficient vectors once shallower layers are stripped.
  CollectedWord collect(const UTMatrix& x) const {
    check(x);
    CollectedWord w{std::vector<u64>(gen_count(), 0)};
    UTMatrix residual = x;
    std::size_t pos = 0;
    for (unsigned d = 1; d < n_; ++d) {
      // the layer word is the exact product of elementaries in canonical
      // order; its cross terms fall on deeper diagonals and are peeled later
      UTMatrix layer = identity();
      for (unsigned i = 1; i + d <= n_; ++i) {
        const FieldElement& e = entry(residual, i, i + d);
        for (unsigned k = 0; k < f_.gamma(); ++k)
          w.exps[pos + k] = e.coeffs[k];
        layer = mul(layer, elementary(i, i + d, e));
        pos += f_.gamma();
      }
      residual = mul(inv(layer), residual);
    }
    return w;
  }

  /// Product of generator powers in canonical order. Each power is the
  /// single elementary matrix 1 + e·delta_k·e_{i,i+d}.
  UTMatrix expand(const CollectedWord& w) const {
    if (w.exps.size() != gen_count())
      throw ParamMismatch("word length does not match generator count");
    UTMatrix acc = identity();
    for (std::size_t s = 0; s < w.exps.size(); ++s) {
      u64 e = w.exps[s];
      if (e >= f_.p()) throw ExponentOutOfRange("word exponent must lie in [0, p)");
      if (e == 0) continue;
      GenIndex g = gen_at(s);
      acc = mul(acc, elementary(g.i, g.i + g.d,
                                f_.scalar_mul(e, f_.basis(g.k))));
    }
    return acc;
  }

  UTMatrix random(DeterministicRng& rng) const {
    UTMatrix x = identity();
    for (FieldElement& e : x.entries) e = rng.element(f_);
    return x;
  }

private:
  void check(const UTMatrix& x) const {
    if (x.entries.size() != entry_count())
      throw ParamMismatch("matrix entry count does not match dimension");
  }

  Field f_;
  unsigned n_;
};

} // namespace mor
