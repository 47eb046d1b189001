#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mor/protocol.hpp"

namespace mor {

/// Self-exponent of one generator in phi and phi_m: the d-distance entry of
/// the image normalized by delta_k, so k equals w_i^{-1} w_{i+d} and
/// k_prime equals its m-th power.
struct ExponentPair {
  FieldElement k;
  FieldElement k_prime;
  GenIndex gen;
};

struct DlpResult {
  u64 residue = 0;
  u64 modulus = 1;
};

namespace detail {

struct FieldElementHash {
  std::size_t operator()(const FieldElement& e) const {
    std::size_t h = 1469598103934665603ull;
    for (u64 c : e.coeffs) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline std::vector<std::pair<u64, unsigned>> factor_u64(u64 x) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= x; d += (d == 2 ? 1 : 2)) {
    if (x % d) continue;
    unsigned e = 0;
    while (x % d == 0) {
      x /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

/// Baby-step giant-step in the subgroup of prime order ell generated by g.
inline u64 bsgs_prime(const Field& f, const FieldElement& g, const FieldElement& h,
                      u64 ell) {
  u64 steps = static_cast<u64>(std::sqrt(static_cast<double>(ell)));
  while (steps > 1 && (steps - 1) * (steps - 1) >= ell) --steps;
  while (steps * steps < ell) ++steps;
  std::unordered_map<FieldElement, u64, FieldElementHash> baby;
  baby.reserve(steps);
  FieldElement cur = f.one();
  for (u64 j = 0; j < steps; ++j) {
    baby.emplace(cur, j);
    cur = f.mul(cur, g);
  }
  FieldElement giant = f.inv(cur);
  FieldElement probe = h;
  for (u64 i = 0; i <= steps; ++i) {
    auto it = baby.find(probe);
    if (it != baby.end()) {
      u64 d = i * steps + it->second;
      if (d < ell) return d;
    }
    probe = f.mul(probe, giant);
  }
  throw NoSolution("target is not a power of the base");
}

inline u64 crt_coprime(u64 r1, u64 m1, u64 r2, u64 m2) {
  u64 inv = modmath::inv_mod(m1 % m2, m2);
  u64 diff = (r2 + m2 - r1 % m2) % m2;
  u64 k = modmath::mul_mod(diff, inv, m2);
  return r1 + m1 * k;
}

} // namespace detail

/// Pohlig-Hellman over the factored order of the base, BSGS inside each
/// prime subgroup. modulus of the result is ord(base).
inline DlpResult solve_dlp(const Field& f, const FieldElement& base,
                           const FieldElement& target) {
  if (f.is_zero(base) || f.is_zero(target))
    throw InvalidParams("discrete logs need nonzero base and target");
  if (!f.q_fits_u64() || f.q_u64() - 1 >= (1ull << 48))
    throw Unsupported("trial-division factoring is limited to q below 2^48");
  u64 group = f.q_u64() - 1;

  std::vector<std::pair<u64, unsigned>> group_factors = detail::factor_u64(group);
  u64 ord = group;
  for (auto [ell, e] : group_factors)
    for (unsigned i = 0; i < e && ord % ell == 0; ++i) {
      if (f.pow(base, ord / ell) != f.one()) break;
      ord /= ell;
    }
  if (f.pow(target, ord) != f.one())
    throw NoSolution("target lies outside the subgroup generated by the base");

  FieldElement base_inv = f.inv(base);
  u64 residue = 0;
  u64 modulus = 1;
  for (auto [ell, e_max] : detail::factor_u64(ord)) {
    FieldElement g_ell = f.pow(base, ord / ell);
    u64 x = 0;
    u64 ell_pow = 1;
    for (unsigned j = 0; j < e_max; ++j) {
      FieldElement shifted = f.mul(target, f.pow(base_inv, x));
      FieldElement h = f.pow(shifted, ord / (ell_pow * ell));
      u64 digit = detail::bsgs_prime(f, g_ell, h, ell);
      x += digit * ell_pow;
      ell_pow *= ell;
    }
    residue = detail::crt_coprime(residue, modulus, x, ell_pow);
    modulus *= ell_pow;
  }
  return DlpResult{residue, modulus};
}

/// One pair per canonical generator. The inner and central factors only add
/// deeper-distance terms, so the normalized self-entry always equals the
/// diagonal part w_i^{-1} w_{i+d}; zero entries (impossible for valid keys)
/// are skipped.
inline std::vector<ExponentPair> extract_pairs(const UnitriangularGroup& G,
                                               const MorPublicKey& pk) {
  const Field& f = G.field();
  if (pk.phi.images.size() != G.gen_count() || pk.phi_m.images.size() != G.gen_count())
    throw ParamMismatch("key tables do not match parameters");
  std::vector<ExponentPair> out;
  for (std::size_t s = 0; s < G.gen_count(); ++s) {
    GenIndex gi = G.gen_at(s);
    FieldElement delta_inv = f.inv(f.basis(gi.k));
    FieldElement k = f.mul(G.entry(pk.phi.images[s], gi.i, gi.i + gi.d), delta_inv);
    FieldElement kp = f.mul(G.entry(pk.phi_m.images[s], gi.i, gi.i + gi.d), delta_inv);
    if (f.is_zero(k) || f.is_zero(kp)) continue;
    out.push_back(ExponentPair{std::move(k), std::move(kp), gi});
  }
  return out;
}

/// Combines the per-pair DLP residues into m mod lcm(orders), then walks the
/// lifts m0 + t*lcm until phi^m = phi_m. Every m consistent with the pairs
/// has this form, so the walk finds the smallest valid exponent.
inline u128 recover_secret(const UnitriangularGroup& G, const MorPublicKey& pk) {
  const Field& f = G.field();
  u64 residue = 0;
  u64 modulus = 1;
  for (const ExponentPair& pair : extract_pairs(G, pk)) {
    DlpResult d;
    try {
      d = solve_dlp(f, pair.k, pair.k_prime);
    } catch (const NoSolution&) {
      throw AttackFailed("pair admits no discrete log; key tables are inconsistent");
    }
    u64 g = modmath::gcd_u64(modulus, d.modulus);
    if (residue % g != d.residue % g)
      throw AttackFailed("pairs give contradictory residues; key tables are inconsistent");
    // merge x = residue (mod modulus), x = d.residue (mod d.modulus) into
    // x mod lcm; the quotient congruence has modulus d.modulus/g coprime to
    // the retained factor
    u64 mg = d.modulus / g;
    if (mg > 1) {
      u64 diff = (d.residue % d.modulus + d.modulus - residue % d.modulus) % d.modulus;
      u64 k = modmath::mul_mod((diff / g) % mg, modmath::inv_mod((modulus / g) % mg, mg), mg);
      residue += modulus * k;
      modulus *= mg;
    }
  }

  u128 N = order_bound(G.params()).N;
  u128 m = residue == 0 ? modulus : residue;
  GenImageTable cur = table_pow(G, pk.phi, m);
  GenImageTable step = table_pow(G, pk.phi, modulus);
  while (m < N) {
    if (cur == pk.phi_m) return m;
    cur = compose(G, cur, step);
    m += modulus;
  }
  throw AttackFailed("no exponent below the order bound maps phi to phi_m");
}

/// Additive read-off on the first nonzero superdiagonal entry: g^m carries
/// m*a_{i,i+1} there, so one coefficient ratio gives m mod p.
inline u64 attack_inner_only(const UnitriangularGroup& G, const UTMatrix& g,
                             const UTMatrix& g_m) {
  const Field& f = G.field();
  for (unsigned i = 1; i < G.n(); ++i) {
    const FieldElement& a = G.entry(g, i, i + 1);
    if (f.is_zero(a)) continue;
    const FieldElement& b = G.entry(g_m, i, i + 1);
    for (unsigned k = 0; k < f.gamma(); ++k)
      if (a.coeffs[k] != 0)
        return modmath::mul_mod(b.coeffs[k], modmath::inv_mod(a.coeffs[k], f.p()), f.p());
  }
  throw AllSuperdiagonalZero("conjugator acts trivially on every superdiagonal slot");
}

/// Central-only keys leak m through the e_{1,n} offset: phi adds b there and
/// phi^m adds m*b. Offsets are measured against the untouched generator.
inline u64 attack_central_only(const UnitriangularGroup& G, const GenImageTable& phi,
                               const GenImageTable& phi_m) {
  const Field& f = G.field();
  if (phi.images.size() != G.gen_count() || phi_m.images.size() != G.gen_count())
    throw ParamMismatch("tables do not match parameters");
  for (std::size_t s = 0; s < G.gen_count(); ++s) {
    GenIndex gi = G.gen_at(s);
    UTMatrix gen = G.generator_matrix(gi);
    FieldElement b = f.sub(G.entry(phi.images[s], 1, G.n()), G.entry(gen, 1, G.n()));
    if (f.is_zero(b)) continue;
    FieldElement bp = f.sub(G.entry(phi_m.images[s], 1, G.n()), G.entry(gen, 1, G.n()));
    for (unsigned k = 0; k < f.gamma(); ++k)
      if (b.coeffs[k] != 0)
        return modmath::mul_mod(bp.coeffs[k], modmath::inv_mod(b.coeffs[k], f.p()), f.p());
  }
  throw AllCentralOffsetsZero("phi fixes every generator; the exponent is undetermined");
}

} // namespace mor
