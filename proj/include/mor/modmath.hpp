#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mor/errors.hpp"

namespace mor::modmath {

// Moduli stay below 2^62 so a*b fits in unsigned __int128.
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b; // a, b < m < 2^62: no wrap
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 pow_mod(u64 base, u128 exp, u64 m) {
  u64 result = 1 % m;
  u64 b = base % m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo prime m. Throws DivisionByZero when a == 0 (mod m).
inline u64 inv_mod(u64 a, u64 m) {
  a %= m;
  if (a == 0) throw DivisionByZero("inverse of zero");
  std::int64_t t = 0, new_t = 1;
  u64 r = m, new_r = a;
  while (new_r != 0) {
    u64 q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    u64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw DivisionByZero("element not invertible");
  return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

inline u128 parse_u128(std::string_view s) {
  if (s.empty()) throw Error("empty integer literal");
  u128 v = 0;
  constexpr u128 max = ~static_cast<u128>(0);
  for (char c : s) {
    if (c < '0' || c > '9') throw Error("invalid integer literal");
    unsigned digit = static_cast<unsigned>(c - '0');
    if (v > (max - digit) / 10) throw Error("integer literal exceeds 128 bits");
    v = v * 10 + digit;
  }
  return v;
}

/// a*b, throwing past 128 bits.
inline u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw ExponentOutOfRange("value exceeds 128 bits");
  return out;
}

inline u128 checked_pow(u128 base, u64 exp) {
  u128 r = 1;
  for (u64 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

/// Little-endian unsigned integer with just the operations the message codec
/// needs: radix conversion between base 256 and base p.
class BigUint {
public:
  BigUint() = default;

  static BigUint from_u64(u64 v) {
    BigUint b;
    if (v) b.limbs_.push_back(v);
    return b;
  }

  static BigUint from_bytes_le(const std::vector<std::uint8_t>& bytes) {
    BigUint v;
    v.limbs_.reserve((bytes.size() + 7) / 8);
    for (std::size_t i = 0; i < bytes.size(); i += 8) {
      u64 limb = 0;
      for (std::size_t j = 0; j < 8 && i + j < bytes.size(); ++j)
        limb |= static_cast<u64>(bytes[i + j]) << (8 * j);
      v.limbs_.push_back(limb);
    }
    v.trim();
    return v;
  }

  std::vector<std::uint8_t> to_bytes_le() const {
    std::vector<std::uint8_t> out;
    out.reserve(limbs_.size() * 8);
    for (u64 limb : limbs_)
      for (int j = 0; j < 8; ++j) out.push_back(static_cast<std::uint8_t>(limb >> (8 * j)));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  bool is_zero() const { return limbs_.empty(); }

  // *this = *this * mult + add, with mult, add < 2^63
  void mul_add_small(u64 mult, u64 add) {
    u128 carry = add;
    for (u64& limb : limbs_) {
      u128 cur = static_cast<u128>(limb) * mult + carry;
      limb = static_cast<u64>(cur);
      carry = cur >> 64;
    }
    while (carry) {
      limbs_.push_back(static_cast<u64>(carry));
      carry >>= 64;
    }
  }

  // *this /= div; returns the remainder
  u64 divmod_small(u64 div) {
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      u128 cur = (rem << 64) | limbs_[i];
      limbs_[i] = static_cast<u64>(cur / div);
      rem = cur % div;
    }
    trim();
    return static_cast<u64>(rem);
  }

  std::size_t bit_length() const {
    if (limbs_.empty()) return 0;
    u64 top = limbs_.back();
    return (limbs_.size() - 1) * 64 + (64 - static_cast<std::size_t>(__builtin_clzll(top)));
  }

private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<u64> limbs_;
};

} // namespace mor::modmath
