#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mor/automorphism.hpp"
#include "mor/modmath.hpp"
#include "mor/rng.hpp"
#include "mor/unitriangular.hpp"

namespace mor {

struct MorPublicKey {
  UTParams params;
  GenImageTable phi;
  GenImageTable phi_m;
};

struct MorPrivateKey {
  UTParams params;
  u128 m = 0;
  std::optional<AutWord> factors;
};

struct MorKeyPair {
  MorPublicKey pub;
  MorPrivateKey priv;
};

struct MorCiphertext {
  GenImageTable phi_r;
  UTMatrix c;
};

/// Samples the private factorization central.inner.diagonal, tabulates phi
/// and phi_m = phi^m. For n = 2 the central family does not exist and the
/// word is inner.diagonal. The w_i are pairwise distinct nonzero, which
/// needs q > n.
inline MorKeyPair keygen(const UnitriangularGroup& G, DeterministicRng& rng,
                         std::optional<u128> m_opt = std::nullopt) {
  const Field& f = G.field();
  unsigned n = G.n();
  u128 N = order_bound(G.params()).N;
  if (m_opt && (*m_opt < 1 || *m_opt >= N))
    throw InvalidParams("m must lie in [1, N)");
  if (f.q_fits_u64() && f.q_u64() <= n)
    throw ParamsTooSmall("need q > n to pick n distinct nonzero diagonal weights");

  AutWord word;
  if (n >= 3) {
    CentralAut cen;
    for (unsigned r = 1; r < n; ++r) {
      AdditiveEndo e{f.gamma(), std::vector<u64>(static_cast<std::size_t>(f.gamma()) * f.gamma())};
      for (u64& v : e.mat) v = rng.below(f.p());
      cen.lambdas.push_back(std::move(e));
    }
    word.factors.emplace_back(std::move(cen));
  }
  word.factors.emplace_back(InnerAut{G.random(rng)});
  DiagonalAut dia;
  while (dia.w.size() < n) {
    FieldElement w = rng.nonzero_element(f);
    bool fresh = true;
    for (const FieldElement& prev : dia.w)
      if (prev == w) fresh = false;
    if (fresh) dia.w.push_back(std::move(w));
  }
  word.factors.emplace_back(std::move(dia));

  u128 m;
  if (m_opt) {
    m = *m_opt;
  } else {
    if (N <= 2) throw ParamsTooSmall("order bound leaves no room to sample m from [2, N)");
    m = 2 + rng.below(N - 2);
  }
  GenImageTable phi = to_table(G, word);
  GenImageTable phi_m = table_pow(G, phi, m);
  return MorKeyPair{MorPublicKey{G.params(), std::move(phi), std::move(phi_m)},
                    MorPrivateKey{G.params(), m, std::move(word)}};
}

inline MorCiphertext encrypt(const UnitriangularGroup& G, const MorPublicKey& pk,
                             const UTMatrix& a, DeterministicRng& rng,
                             std::optional<u128> r_opt = std::nullopt) {
  if (a.entries.size() != G.entry_count())
    throw ParamMismatch("plaintext matrix does not match key parameters");
  u128 N = order_bound(pk.params).N;
  if (r_opt && (*r_opt < 1 || *r_opt >= N))
    throw InvalidParams("r must lie in [1, N)");
  u128 r = r_opt ? *r_opt : 1 + rng.below(N - 1);
  return MorCiphertext{table_pow(G, pk.phi, r),
                       apply_table(G, table_pow(G, pk.phi_m, r), a)};
}

inline UTMatrix decrypt(const UnitriangularGroup& G, const MorPrivateKey& sk,
                        const MorCiphertext& ct) {
  GenImageTable eta = table_pow(G, ct.phi_r, sk.m);
  try {
    return invert_apply(G, eta, ct.c);
  } catch (const SingularLayer&) {
    throw MalformedCiphertext("phi_r is not an automorphism");
  }
}

namespace detail {

inline modmath::BigUint entry_radix_bound(const Field& f, std::size_t digits) {
  modmath::BigUint bound = modmath::BigUint::from_u64(1);
  for (std::size_t i = 0; i < digits; ++i) bound.mul_add_small(f.p(), 0);
  return bound;
}

} // namespace detail

/// Longest byte string that fits: 256^{len+1} <= p^{digits} with one byte
/// reserved for the length prefix, and never beyond the prefix range.
inline std::size_t message_capacity(const UnitriangularGroup& G) {
  std::size_t digits = G.entry_count() * G.field().gamma();
  std::size_t bits = detail::entry_radix_bound(G.field(), digits).bit_length();
  std::size_t whole = (bits - 1) / 8;
  std::size_t cap = whole > 0 ? whole - 1 : 0;
  return cap > 255 ? 255 : cap;
}

inline UTMatrix encode_message(const UnitriangularGroup& G,
                               const std::vector<std::uint8_t>& bytes) {
  const Field& f = G.field();
  if (bytes.size() > message_capacity(G))
    throw MessageTooLong("message exceeds the capacity of these parameters");
  std::vector<std::uint8_t> buf;
  buf.reserve(bytes.size() + 1);
  buf.push_back(static_cast<std::uint8_t>(bytes.size()));
  buf.insert(buf.end(), bytes.begin(), bytes.end());
  modmath::BigUint v = modmath::BigUint::from_bytes_le(buf);
  UTMatrix x = G.identity();
  std::size_t digits = G.entry_count() * f.gamma();
  for (std::size_t t = 0; t < digits; ++t) {
    u64 digit = v.divmod_small(f.p());
    x.entries[t / f.gamma()].coeffs[t % f.gamma()] = digit;
  }
  return x;
}

inline std::vector<std::uint8_t> decode_message(const UnitriangularGroup& G,
                                                const UTMatrix& x) {
  const Field& f = G.field();
  if (x.entries.size() != G.entry_count())
    throw ParamMismatch("matrix does not match parameters");
  std::size_t digits = G.entry_count() * f.gamma();
  modmath::BigUint v = modmath::BigUint::from_u64(0);
  for (std::size_t t = digits; t > 0; --t) {
    u64 digit = x.entries[(t - 1) / f.gamma()].coeffs[(t - 1) % f.gamma()];
    v.mul_add_small(f.p(), digit);
  }
  std::vector<std::uint8_t> bytes = v.to_bytes_le();
  std::size_t len = bytes.empty() ? 0 : bytes[0];
  if (len > message_capacity(G) || bytes.size() > len + 1)
    throw MalformedMessage("matrix does not hold a length-prefixed payload");
  bytes.resize(len + 1, 0);
  return std::vector<std::uint8_t>(bytes.begin() + 1, bytes.end());
}

struct ElGamalPublicKey {
  FieldParams params;
  FieldElement g;
  FieldElement h;
};

struct ElGamalPrivateKey {
  FieldParams params;
  u128 s = 0;
};

struct ElGamalKeyPair {
  ElGamalPublicKey pub;
  ElGamalPrivateKey priv;
};

struct ElGamalCiphertext {
  FieldElement c1;
  FieldElement c2;
};

/// Textbook El-Gamal over the multiplicative group of F_q.
inline ElGamalKeyPair elgamal_keygen(const Field& f, DeterministicRng& rng) {
  if (f.q() <= 3) throw ParamsTooSmall("El-Gamal baseline needs q > 3");
  u128 group = f.q() - 1;
  FieldElement g = rng.nonzero_element(f);
  u128 s = 1 + rng.below(group - 1);
  FieldElement h = f.pow(g, s);
  return ElGamalKeyPair{ElGamalPublicKey{f.params(), std::move(g), std::move(h)},
                        ElGamalPrivateKey{f.params(), s}};
}

inline ElGamalCiphertext elgamal_encrypt(const Field& f, const ElGamalPublicKey& pk,
                                         const FieldElement& a, DeterministicRng& rng,
                                         std::optional<u128> r_opt = std::nullopt) {
  if (f.is_zero(a)) throw InvalidParams("El-Gamal plaintext must be nonzero");
  u128 group = f.q() - 1;
  if (r_opt && (*r_opt < 1 || *r_opt >= group))
    throw InvalidParams("r must lie in [1, q-1)");
  u128 r = r_opt ? *r_opt : 1 + rng.below(group - 1);
  return ElGamalCiphertext{f.pow(pk.g, r), f.mul(a, f.pow(pk.h, r))};
}

inline FieldElement elgamal_decrypt(const Field& f, const ElGamalPrivateKey& sk,
                                    const ElGamalCiphertext& ct) {
  return f.mul(ct.c2, f.inv(f.pow(ct.c1, sk.s)));
}

} // namespace mor
