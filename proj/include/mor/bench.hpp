#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "mor/attack.hpp"
#include "mor/protocol.hpp"

namespace mor {

struct BenchRow {
  unsigned n = 0;
  u128 q = 0;
  std::string op;
  unsigned trials = 0;
  u64 median_ns = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

namespace detail {

inline u64 median_ns_of(std::vector<u64> samples) {
  std::sort(samples.begin(), samples.end());
  std::size_t mid = samples.size() / 2;
  if (samples.size() % 2) return samples[mid];
  return (samples[mid - 1] + samples[mid]) / 2;
}

/// Runs body once to warm up, then times `trials` runs. The checksum sink
/// keeps the calls observable.
template <typename F>
u64 time_median(unsigned trials, volatile u64& sink, F&& body) {
  sink = sink + body();
  std::vector<u64> samples;
  samples.reserve(trials);
  for (unsigned t = 0; t < trials; ++t) {
    auto t0 = std::chrono::steady_clock::now();
    sink = sink + body();
    auto t1 = std::chrono::steady_clock::now();
    samples.push_back(static_cast<u64>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  }
  return median_ns_of(std::move(samples));
}

inline u64 matrix_checksum(const UTMatrix& m) {
  u64 acc = 0;
  for (const FieldElement& e : m.entries)
    for (u64 c : e.coeffs) acc += c;
  return acc;
}

} // namespace detail

/// One fixture per size: a key pair with a small exponent, a random message,
/// and its ciphertext; the six ops are then timed against it. Streams derive
/// from (seed, row, op) so rows are independent and reproducible.
inline BenchReport bench_run(const std::vector<UTParams>& sizes, unsigned trials,
                             u64 seed) {
  if (sizes.empty()) throw InvalidParams("need at least one size");
  if (trials < 1) throw InvalidParams("need at least one trial");
  BenchReport rep;
  DeterministicRng base(seed);
  volatile u64 sink = 0;
  for (std::size_t row = 0; row < sizes.size(); ++row) {
    UnitriangularGroup G(sizes[row]);
    const Field& f = G.field();
    DeterministicRng fixture_rng = base.derive(row);

    u128 N = order_bound(G.params()).N;
    u128 m = N <= 3 ? 1 : 2 + fixture_rng.below(static_cast<u64>(N > 252 ? 250 : N - 2));
    MorKeyPair kp = keygen(G, fixture_rng, m);
    UTMatrix msg = G.random(fixture_rng);
    MorCiphertext ct = encrypt(G, kp.pub, msg, fixture_rng);
    ElGamalKeyPair ekp = elgamal_keygen(f, fixture_rng);
    FieldElement emsg = fixture_rng.nonzero_element(f);
    ElGamalCiphertext ect = elgamal_encrypt(f, ekp.pub, emsg, fixture_rng);

    unsigned n = G.n();
    u128 q = f.q();
    auto push = [&](const char* op, u64 median) {
      rep.rows.push_back(BenchRow{n, q, op, trials, median});
    };

    DeterministicRng keygen_rng = base.derive(row).derive(1);
    push("keygen", detail::time_median(trials, sink, [&] {
      return detail::matrix_checksum(keygen(G, keygen_rng, m).pub.phi.images[0]);
    }));
    DeterministicRng encrypt_rng = base.derive(row).derive(2);
    push("encrypt", detail::time_median(trials, sink, [&] {
      return detail::matrix_checksum(encrypt(G, kp.pub, msg, encrypt_rng).c);
    }));
    push("decrypt", detail::time_median(trials, sink, [&] {
      return detail::matrix_checksum(decrypt(G, kp.priv, ct));
    }));
    push("attack", detail::time_median(trials, sink, [&] {
      return static_cast<u64>(recover_secret(G, kp.pub));
    }));
    DeterministicRng eg_rng = base.derive(row).derive(3);
    push("elgamal_encrypt", detail::time_median(trials, sink, [&] {
      ElGamalCiphertext c = elgamal_encrypt(f, ekp.pub, emsg, eg_rng);
      return c.c1.coeffs[0] + c.c2.coeffs[0];
    }));
    push("elgamal_decrypt", detail::time_median(trials, sink, [&] {
      return elgamal_decrypt(f, ekp.priv, ect).coeffs[0];
    }));
  }
  return rep;
}

inline std::string bench_csv(const BenchReport& rep) {
  std::string out = "n,q,op,trials,median_ns\n";
  for (const BenchRow& r : rep.rows) {
    out += std::to_string(r.n);
    out += ',';
    out += modmath::to_string(r.q);
    out += ',';
    out += r.op;
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.median_ns);
    out += '\n';
  }
  return out;
}

} // namespace mor
