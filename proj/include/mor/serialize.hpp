#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mor/attack.hpp"
#include "mor/protocol.hpp"

namespace mor {

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw MalformedFile(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline u64 require_u64(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned())
    throw MalformedFile(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<u64>();
}

inline json coeffs_to_json(const FieldElement& e) {
  json a = json::array();
  for (u64 c : e.coeffs) a.push_back(c);
  return a;
}

inline FieldElement coeffs_from_json(const json& j, const Field& f, const char* where) {
  if (!j.is_array() || j.size() != f.gamma())
    throw MalformedFile(std::string(where) + ": entry must hold exactly gamma coefficients");
  FieldElement e{std::vector<u64>(f.gamma())};
  for (unsigned k = 0; k < f.gamma(); ++k) {
    if (!j[k].is_number_unsigned() || j[k].get<u64>() >= f.p())
      throw MalformedFile(std::string(where) + ": coefficient out of range [0, p)");
    e.coeffs[k] = j[k].get<u64>();
  }
  return e;
}

inline json matrix_to_json(const UTMatrix& m) {
  json a = json::array();
  for (const FieldElement& e : m.entries) a.push_back(coeffs_to_json(e));
  return a;
}

inline UTMatrix matrix_from_json(const json& j, const UnitriangularGroup& G,
                                 const char* where) {
  if (!j.is_array() || j.size() != G.entry_count())
    throw MalformedFile(std::string(where) + ": matrix must hold n(n-1)/2 entries");
  UTMatrix m;
  m.entries.reserve(G.entry_count());
  for (const json& e : j) m.entries.push_back(coeffs_from_json(e, G.field(), where));
  return m;
}

inline json table_to_json(const GenImageTable& t) {
  json a = json::array();
  for (const UTMatrix& m : t.images) a.push_back(matrix_to_json(m));
  return a;
}

inline GenImageTable table_from_json(const json& j, const UnitriangularGroup& G,
                                     const char* where) {
  if (!j.is_array() || j.size() != G.gen_count())
    throw MalformedFile(std::string(where) + ": table must hold one image per generator");
  GenImageTable t;
  t.images.reserve(G.gen_count());
  for (const json& m : j) t.images.push_back(matrix_from_json(m, G, where));
  if (!table_is_valid(G, t))
    throw MalformedFile(std::string(where) + ": table has a singular layer, not an automorphism");
  return t;
}

inline json params_to_json(const UTParams& p) {
  json j;
  j["p"] = p.field.p;
  j["gamma"] = p.field.gamma;
  j["modulus"] = p.field.modulus;
  j["n"] = p.n;
  return j;
}

inline UTParams params_from_json(const json& j) {
  UTParams p;
  p.field.p = require_u64(j, "p");
  u64 gamma = require_u64(j, "gamma");
  u64 n = require_u64(j, "n");
  if (gamma == 0 || gamma > 64) throw MalformedFile("params: gamma out of range");
  if (n < 2 || n > 64) throw MalformedFile("params: n out of range");
  p.field.gamma = static_cast<unsigned>(gamma);
  p.n = static_cast<unsigned>(n);
  json mod = require(j, "modulus");
  if (!mod.is_array()) throw MalformedFile("params: modulus must be an array");
  for (const json& c : mod) {
    if (!c.is_number_unsigned()) throw MalformedFile("params: modulus coefficient must be a nonnegative integer");
    p.field.modulus.push_back(c.get<u64>());
  }
  return p;
}

/// Field/group construction with file-level error reporting.
inline UnitriangularGroup group_from_json(const json& j) {
  UTParams p = params_from_json(require(j, "params"));
  try {
    return UnitriangularGroup(p);
  } catch (const Error& e) {
    throw MalformedFile(std::string("params: ") + e.what());
  }
}

inline json word_to_json(const AutWord& w) {
  json a = json::array();
  for (const AutFactor& fac : w.factors) {
    json f;
    if (const auto* d = std::get_if<DiagonalAut>(&fac)) {
      f["type"] = "diagonal";
      json ws = json::array();
      for (const FieldElement& e : d->w) ws.push_back(coeffs_to_json(e));
      f["w"] = ws;
    } else if (const auto* inn = std::get_if<InnerAut>(&fac)) {
      f["type"] = "inner";
      f["h"] = matrix_to_json(inn->h);
    } else {
      const auto& c = std::get<CentralAut>(fac);
      f["type"] = "central";
      json ls = json::array();
      for (const AdditiveEndo& e : c.lambdas) ls.push_back(e.mat);
      f["lambdas"] = ls;
    }
    a.push_back(std::move(f));
  }
  return a;
}

inline AutWord word_from_json(const json& j, const UnitriangularGroup& G) {
  if (!j.is_array()) throw MalformedFile("factors: must be an array");
  const Field& f = G.field();
  AutWord w;
  for (const json& fac : j) {
    std::string type = require(fac, "type").is_string() ? fac.at("type").get<std::string>() : "";
    if (type == "diagonal") {
      json ws = require(fac, "w");
      if (!ws.is_array() || ws.size() != G.n())
        throw MalformedFile("factors: diagonal needs n weights");
      DiagonalAut d;
      for (const json& e : ws) d.w.push_back(coeffs_from_json(e, f, "factors"));
      w.factors.emplace_back(std::move(d));
    } else if (type == "inner") {
      w.factors.emplace_back(InnerAut{matrix_from_json(require(fac, "h"), G, "factors")});
    } else if (type == "central") {
      json ls = require(fac, "lambdas");
      if (!ls.is_array() || ls.size() != G.n() - 1)
        throw MalformedFile("factors: central needs n-1 endomorphisms");
      CentralAut c;
      for (const json& e : ls) {
        if (!e.is_array() || e.size() != static_cast<std::size_t>(f.gamma()) * f.gamma())
          throw MalformedFile("factors: endomorphism must hold gamma^2 entries");
        AdditiveEndo endo{f.gamma(), {}};
        for (const json& v : e) {
          if (!v.is_number_unsigned() || v.get<u64>() >= f.p())
            throw MalformedFile("factors: endomorphism entry out of range [0, p)");
          endo.mat.push_back(v.get<u64>());
        }
        c.lambdas.push_back(std::move(endo));
      }
      w.factors.emplace_back(std::move(c));
    } else {
      throw MalformedFile("factors: unknown factor type");
    }
  }
  return w;
}

inline json parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedFile(e.what());
  }
  u64 version = require_u64(j, "version");
  if (version != 1) throw VersionUnsupported("only version 1 files are supported");
  return j;
}

} // namespace detail

inline std::string serialize_public_key(const MorPublicKey& pk) {
  detail::json j;
  j["version"] = 1;
  j["params"] = detail::params_to_json(pk.params);
  j["phi"] = detail::table_to_json(pk.phi);
  j["phi_m"] = detail::table_to_json(pk.phi_m);
  return j.dump();
}

inline MorPublicKey parse_public_key(const std::string& text) {
  detail::json j = detail::parse_document(text);
  UnitriangularGroup G = detail::group_from_json(j);
  MorPublicKey pk;
  pk.params = G.params();
  pk.phi = detail::table_from_json(detail::require(j, "phi"), G, "phi");
  pk.phi_m = detail::table_from_json(detail::require(j, "phi_m"), G, "phi_m");
  return pk;
}

/// Private key files carry the public tables plus m; the factored word is
/// included unless stripped.
inline std::string serialize_private_key(const MorPublicKey& pk, const MorPrivateKey& sk,
                                         bool include_factors = true) {
  detail::json j;
  j["version"] = 1;
  j["params"] = detail::params_to_json(pk.params);
  j["phi"] = detail::table_to_json(pk.phi);
  j["phi_m"] = detail::table_to_json(pk.phi_m);
  j["m"] = modmath::to_string(sk.m);
  if (include_factors && sk.factors) j["factors"] = detail::word_to_json(*sk.factors);
  return j.dump();
}

inline MorKeyPair parse_private_key(const std::string& text) {
  detail::json j = detail::parse_document(text);
  UnitriangularGroup G = detail::group_from_json(j);
  MorKeyPair kp;
  kp.pub.params = G.params();
  kp.pub.phi = detail::table_from_json(detail::require(j, "phi"), G, "phi");
  kp.pub.phi_m = detail::table_from_json(detail::require(j, "phi_m"), G, "phi_m");
  kp.priv.params = G.params();
  detail::json m = detail::require(j, "m");
  if (!m.is_string()) throw MalformedFile("field 'm' must be a decimal string");
  try {
    kp.priv.m = modmath::parse_u128(m.get<std::string>());
  } catch (const std::exception&) {
    throw MalformedFile("field 'm' must be a decimal string");
  }
  if (kp.priv.m < 1 || kp.priv.m >= order_bound(G.params()).N)
    throw MalformedFile("field 'm' out of range [1, N)");
  if (j.contains("factors")) {
    AutWord w = detail::word_from_json(j.at("factors"), G);
    if (to_table(G, w) != kp.pub.phi)
      throw MalformedFile("factors do not reproduce the phi table");
    kp.priv.factors = std::move(w);
  }
  return kp;
}

inline std::string serialize_ciphertext(const UTParams& params, const MorCiphertext& ct) {
  detail::json j;
  j["version"] = 1;
  j["params"] = detail::params_to_json(params);
  j["phi_r"] = detail::table_to_json(ct.phi_r);
  j["c"] = detail::matrix_to_json(ct.c);
  return j.dump();
}

inline std::pair<UTParams, MorCiphertext> parse_ciphertext(const std::string& text) {
  detail::json j = detail::parse_document(text);
  UnitriangularGroup G = detail::group_from_json(j);
  MorCiphertext ct;
  ct.phi_r = detail::table_from_json(detail::require(j, "phi_r"), G, "phi_r");
  ct.c = detail::matrix_from_json(detail::require(j, "c"), G, "c");
  return {G.params(), std::move(ct)};
}

} // namespace mor
