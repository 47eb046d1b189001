#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mor/errors.hpp"
#include "mor/modmath.hpp"

namespace mor {

using modmath::u128;
using modmath::u64;

/// Parameters of F_q = F_{p^gamma}. `modulus` holds the gamma+1 coefficients
/// (constant term first, leading 1 last) of the monic irreducible polynomial
/// defining the extension; it is empty when gamma == 1.
struct FieldParams {
  u64 p = 0;
  unsigned gamma = 1;
  std::vector<u64> modulus;

  bool operator==(const FieldParams&) const = default;
};

/// Element of F_q as its gamma coefficients over Z_p in the polynomial basis
/// delta_1 = 1, delta_2 = x, ..., delta_gamma = x^{gamma-1}.
struct FieldElement {
  std::vector<u64> coeffs;

  bool operator==(const FieldElement&) const = default;
};

/// Z_p-linear endomorphism of F_q^+, as a gamma x gamma matrix acting on
/// basis coefficient vectors. Stored row-major.
struct AdditiveEndo {
  unsigned gamma = 1;
  std::vector<u64> mat;

  u64 at(unsigned row, unsigned col) const { return mat[row * gamma + col]; }

  bool operator==(const AdditiveEndo&) const = default;
};

namespace detail {

// Dense polynomials over Z_p, coefficients low-to-high, trimmed.
using Poly = std::vector<u64>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = modmath::add_mod(c[i + j], modmath::mul_mod(a[i], b[j], p), p);
  }
  poly_trim(c);
  return c;
}

// a mod f, f monic
inline Poly poly_mod(Poly a, const Poly& f, u64 p) {
  const std::size_t deg_f = f.size() - 1;
  while (a.size() > deg_f) {
    u64 lead = a.back();
    std::size_t shift = a.size() - 1 - deg_f;
    if (lead != 0) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        u64 sub = modmath::mul_mod(lead, f[i], p);
        a[shift + i] = modmath::sub_mod(a[shift + i], sub, p);
      }
    }
    a.pop_back();
  }
  poly_trim(a);
  return a;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

inline Poly poly_pow_mod(Poly base, u64 exp, const Poly& f, u64 p) {
  Poly result{1};
  while (exp) {
    if (exp & 1) result = poly_mul_mod(result, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    exp >>= 1;
  }
  return result;
}

inline Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = modmath::sub_mod(a[i], b[i], p);
  poly_trim(a);
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
  while (!b.empty()) {
    // a mod b, scaling by the inverse of b's leading coefficient
    u64 lead_inv = modmath::inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
      u64 q = modmath::mul_mod(a.back(), lead_inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = modmath::sub_mod(a[shift + i], modmath::mul_mod(q, b[i], p), p);
      poly_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

// Extended Euclid: returns u with u*a = 1 (mod f); a nonzero mod f, f irreducible.
inline Poly poly_inv_mod(Poly a, const Poly& f, u64 p) {
  Poly r0 = f, r1 = std::move(a);
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    // divide r0 by r1
    Poly q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    u64 lead_inv = modmath::inv_mod(r1.back(), p);
    Poly rem = r0;
    while (rem.size() >= r1.size()) {
      u64 c = modmath::mul_mod(rem.back(), lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = modmath::sub_mod(rem[shift + i], modmath::mul_mod(c, r1[i], p), p);
      poly_trim(rem);
    }
    poly_trim(q);
    Poly new_t = poly_sub(t0, poly_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(new_t);
  }
  // r0 = gcd, a unit for irreducible f and a != 0
  if (r0.size() != 1) throw DivisionByZero("element not invertible");
  u64 scale = modmath::inv_mod(r0[0], p);
  for (u64& c : t0) c = modmath::mul_mod(c, scale, p);
  return poly_mod(std::move(t0), f, p);
}

/// Rabin's test: f (monic, degree gamma >= 2) is irreducible over Z_p iff
/// x^{p^gamma} = x (mod f) and gcd(x^{p^{gamma/d}} - x, f) = 1 for every
/// prime d | gamma.
inline bool poly_irreducible(const Poly& f, u64 p) {
  const unsigned gamma = static_cast<unsigned>(f.size() - 1);
  const Poly x{0, 1};
  // frobenius[j] = x^{p^{j+1}} mod f
  std::vector<Poly> frobenius(gamma);
  frobenius[0] = poly_pow_mod(x, p, f, p);
  for (unsigned j = 1; j < gamma; ++j)
    frobenius[j] = poly_pow_mod(frobenius[j - 1], p, f, p);
  if (frobenius[gamma - 1] != poly_mod(x, f, p)) return false;
  unsigned rem = gamma;
  for (unsigned d = 2; d <= rem; ++d) {
    if (rem % d != 0) continue;
    Poly diff = poly_sub(frobenius[gamma / d - 1], x, p);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
    while (rem % d == 0) rem /= d;
  }
  return true;
}

} // namespace detail

/// Exact arithmetic in F_q with a validated FieldParams. All operations are
/// pure; elements are plain coefficient vectors owned by the caller.
class Field {
public:
  explicit Field(u64 p) : Field(FieldParams{p, 1, {}}) {}

  Field(u64 p, std::vector<u64> modulus)
      : Field(FieldParams{p, static_cast<unsigned>(modulus.empty() ? 1 : modulus.size() - 1),
                          std::move(modulus)}) {}

  explicit Field(FieldParams params) : params_(std::move(params)) {
    if (!modmath::is_prime_u64(params_.p)) throw InvalidParams("p is not prime");
    if (params_.p >> 62) throw InvalidParams("p exceeds 62 bits");
    if (params_.gamma == 0) throw InvalidParams("gamma must be >= 1");
    if (params_.gamma == 1) {
      params_.modulus.clear();
    } else {
      auto& f = params_.modulus;
      if (f.size() != params_.gamma + 1)
        throw InvalidParams("modulus must have gamma+1 coefficients");
      for (u64 c : f)
        if (c >= params_.p) throw InvalidParams("modulus coefficient out of range");
      if (f.back() != 1) throw InvalidParams("modulus must be monic");
      if (!detail::poly_irreducible(f, params_.p))
        throw InvalidParams("modulus is reducible over Z_p");
    }
  }

  const FieldParams& params() const { return params_; }
  u64 p() const { return params_.p; }
  unsigned gamma() const { return params_.gamma; }

  bool same_params(const Field& other) const { return params_ == other.params_; }

  /// q = p^gamma, when it fits 128 bits.
  u128 q() const {
    return modmath::checked_pow(static_cast<u128>(params_.p), params_.gamma);
  }

  bool q_fits_u64() const {
    u128 q = 1;
    for (unsigned i = 0; i < params_.gamma; ++i) {
      q *= params_.p;
      if (q >> 64) return false;
    }
    return true;
  }

  u64 q_u64() const {
    if (!q_fits_u64()) throw Unsupported("q exceeds 64 bits");
    return static_cast<u64>(q());
  }

  FieldElement zero() const { return FieldElement{std::vector<u64>(params_.gamma, 0)}; }

  FieldElement one() const { return from_uint(1); }

  FieldElement from_uint(u64 v) const {
    auto e = zero();
    e.coeffs[0] = v % params_.p;
    return e;
  }

  /// delta_k, 1-based: the k-th polynomial-basis element.
  FieldElement basis(unsigned k) const {
    if (k < 1 || k > params_.gamma) throw ParamMismatch("basis index out of range");
    auto e = zero();
    e.coeffs[k - 1] = 1;
    return e;
  }

  /// Validates and reduces an externally supplied coefficient vector.
  FieldElement element(std::vector<u64> coeffs) const {
    if (coeffs.size() != params_.gamma) throw ParamMismatch("coefficient count != gamma");
    for (u64& c : coeffs) c %= params_.p;
    return FieldElement{std::move(coeffs)};
  }

  bool is_zero(const FieldElement& a) const {
    for (u64 c : a.coeffs)
      if (c != 0) return false;
    return true;
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement r = a;
    for (unsigned i = 0; i < params_.gamma; ++i)
      r.coeffs[i] = modmath::add_mod(r.coeffs[i], b.coeffs[i], params_.p);
    return r;
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement r = a;
    for (unsigned i = 0; i < params_.gamma; ++i)
      r.coeffs[i] = modmath::sub_mod(r.coeffs[i], b.coeffs[i], params_.p);
    return r;
  }

  FieldElement neg(const FieldElement& a) const {
    check(a);
    FieldElement r = a;
    for (u64& c : r.coeffs) c = c == 0 ? 0 : params_.p - c;
    return r;
  }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (params_.gamma == 1)
      return FieldElement{{modmath::mul_mod(a.coeffs[0], b.coeffs[0], params_.p)}};
    detail::Poly prod = detail::poly_mul(a.coeffs, b.coeffs, params_.p);
    prod = detail::poly_mod(std::move(prod), params_.modulus, params_.p);
    prod.resize(params_.gamma, 0);
    return FieldElement{std::move(prod)};
  }

  /// Z_p-scalar multiple s * a (s-fold addition).
  FieldElement scalar_mul(u64 s, const FieldElement& a) const {
    check(a);
    s %= params_.p;
    FieldElement r = a;
    for (u64& c : r.coeffs) c = modmath::mul_mod(c, s, params_.p);
    return r;
  }

  FieldElement inv(const FieldElement& a) const {
    check(a);
    if (is_zero(a)) throw DivisionByZero("inverse of zero");
    if (params_.gamma == 1) return FieldElement{{modmath::inv_mod(a.coeffs[0], params_.p)}};
    detail::Poly ap = a.coeffs;
    detail::poly_trim(ap);
    detail::Poly u = detail::poly_inv_mod(std::move(ap), params_.modulus, params_.p);
    u.resize(params_.gamma, 0);
    return FieldElement{std::move(u)};
  }

  /// a^e by square-and-multiply; 0^0 is defined as 1.
  FieldElement pow(const FieldElement& a, u128 e) const {
    check(a);
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  AdditiveEndo endo(std::vector<u64> mat) const {
    if (mat.size() != static_cast<std::size_t>(params_.gamma) * params_.gamma)
      throw ParamMismatch("endomorphism matrix must be gamma x gamma");
    for (u64& c : mat) c %= params_.p;
    return AdditiveEndo{params_.gamma, std::move(mat)};
  }

  /// Scalar multiplication by b, as an AdditiveEndo (the gamma = 1 lambda form).
  AdditiveEndo scalar_endo(u64 b) const {
    std::vector<u64> mat(static_cast<std::size_t>(params_.gamma) * params_.gamma, 0);
    AdditiveEndo e{params_.gamma, std::move(mat)};
    // column k = coefficients of b * delta_k
    FieldElement bf = from_uint(b);
    for (unsigned k = 0; k < params_.gamma; ++k) {
      FieldElement col = mul(bf, basis(k + 1));
      for (unsigned r = 0; r < params_.gamma; ++r) e.mat[r * params_.gamma + k] = col.coeffs[r];
    }
    return e;
  }

  FieldElement apply(const AdditiveEndo& l, const FieldElement& a) const {
    check(a);
    if (l.gamma != params_.gamma) throw ParamMismatch("endomorphism shape mismatch");
    FieldElement r = zero();
    for (unsigned row = 0; row < params_.gamma; ++row) {
      u64 acc = 0;
      for (unsigned col = 0; col < params_.gamma; ++col)
        acc = modmath::add_mod(acc, modmath::mul_mod(l.at(row, col), a.coeffs[col], params_.p),
                               params_.p);
      r.coeffs[row] = acc;
    }
    return r;
  }

private:
  void check(const FieldElement& a) const {
    if (a.coeffs.size() != params_.gamma) throw ParamMismatch("element has wrong gamma");
  }

  FieldParams params_;
};

} // namespace mor
