#pragma once

#include <array>
#include <string>
#include <vector>

#include "mor/attack.hpp"
#include "mor/protocol.hpp"

namespace mor {

struct SelfTestCheck {
  std::string name;
  bool pass = false;
};

namespace selftest_data {

// Golden instance over UT(4, 1297): central offsets, conjugator word,
// diagonal weights, and the resulting generator-image tables, each row a
// collected word over a_1..a_6.
inline constexpr std::array<u64, 3> kMap1Offsets{984, 807, 452};
inline constexpr std::array<u64, 6> kConjugatorWord{83, 462, 1202, 1209, 793, 152};
inline constexpr std::array<u64, 4> kDiagonalWeights{624, 155, 538, 126};
inline constexpr std::array<u64, 6> kDiagonalRatios{576, 1267, 574, 878, 938, 736};

inline constexpr std::array<std::array<u64, 6>, 6> kMap2Rows{{
    {1, 0, 0, 462, 0, 1001},
    {0, 1, 0, 1214, 1202, 103},
    {0, 0, 1, 0, 835, 88},
    {0, 0, 0, 1, 0, 1202},
    {0, 0, 0, 0, 1, 1214},
    {0, 0, 0, 0, 0, 1},
}};

inline constexpr std::array<std::array<u64, 6>, 6> kPhiRows{{
    {576, 0, 0, 972, 0, 538},
    {0, 1267, 0, 1055, 383, 508},
    {0, 0, 574, 0, 1139, 558},
    {0, 0, 0, 878, 0, 118},
    {0, 0, 0, 0, 938, 1168},
    {0, 0, 0, 0, 0, 736},
}};

inline constexpr std::array<std::array<u64, 6>, 6> kPhi65Rows{{
    {450, 0, 0, 1145, 0, 618},
    {0, 1263, 0, 1269, 1242, 1093},
    {0, 0, 526, 0, 708, 279},
    {0, 0, 0, 264, 0, 1190},
    {0, 0, 0, 0, 274, 836},
    {0, 0, 0, 0, 0, 85},
}};

} // namespace selftest_data

namespace detail {

inline GenImageTable table_from_rows(const UnitriangularGroup& G,
                                     const std::array<std::array<u64, 6>, 6>& rows) {
  GenImageTable t;
  for (const auto& row : rows)
    t.images.push_back(G.expand(CollectedWord{{row.begin(), row.end()}}));
  return t;
}

} // namespace detail

/// Rebuilds the worked 4x4 example over F_1297 end to end and checks every
/// published intermediate. Pure; callers render the pass/fail lines.
inline std::vector<SelfTestCheck> run_paper_selftest() {
  namespace data = selftest_data;
  std::vector<SelfTestCheck> out;
  Field f(FieldParams{1297, 1, {}});
  UnitriangularGroup G(f, 4);

  CentralAut map1;
  for (u64 lam : data::kMap1Offsets)
    map1.lambdas.push_back(AdditiveEndo{1, {lam}});
  InnerAut map2{G.expand(CollectedWord{{data::kConjugatorWord.begin(),
                                        data::kConjugatorWord.end()}})};
  DiagonalAut map3;
  for (u64 w : data::kDiagonalWeights) map3.w.push_back(f.from_uint(w));

  bool map1_ok = true;
  for (unsigned r = 1; r <= 3; ++r) {
    UTMatrix gen = G.generator_matrix(GenIndex{1, r, 1});
    UTMatrix want = G.mul(gen, G.elementary(1, 4, f.from_uint(data::kMap1Offsets[r - 1])));
    if (apply_central(G, map1, gen) != want) map1_ok = false;
  }
  out.push_back({"map1 adds offsets [984, 807, 452] on the corner", map1_ok});

  GenImageTable map2_golden = detail::table_from_rows(G, data::kMap2Rows);
  out.push_back({"map2 table matches all six published rows",
                 to_table(G, map2) == map2_golden});

  GenImageTable map3_table = to_table(G, map3);
  bool ratios_ok = true;
  for (std::size_t s = 0; s < 6; ++s) {
    GenIndex gi = G.gen_at(s);
    UTMatrix want = G.elementary(gi.i, gi.i + gi.d, f.from_uint(data::kDiagonalRatios[s]));
    if (map3_table.images[s] != want) ratios_ok = false;
  }
  out.push_back({"map3 exponent table is {576, 1267, 574, 878, 938, 736}", ratios_ok});

  AutWord word{{map1, map2, map3}};
  GenImageTable phi = to_table(G, word);
  GenImageTable phi_golden = detail::table_from_rows(G, data::kPhiRows);
  out.push_back({"phi table matches all six published rows", phi == phi_golden});

  GenImageTable phi65 = table_pow(G, phi, 65);
  GenImageTable phi65_golden = detail::table_from_rows(G, data::kPhi65Rows);
  out.push_back({"phi^65 table matches all six published rows", phi65 == phi65_golden});

  out.push_back({"576^65 mod 1297 = 450",
                 f.pow(f.from_uint(576), 65) == f.from_uint(450)});

  bool recovered_ok = false;
  try {
    recovered_ok = recover_secret(G, MorPublicKey{G.params(), phi, phi65}) == 65;
  } catch (const Error&) {
    recovered_ok = false;
  }
  out.push_back({"recovered m = 65", recovered_ok});

  return out;
}

} // namespace mor
