#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mor/mor.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mor::MalformedFile("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw mor::MalformedFile("cannot read '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw mor::Error("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out.good()) throw mor::Error("cannot write '" + path + "'");
}

mor::u64 resolve_seed(const std::optional<mor::u64>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MOR_SEED")) {
    mor::u128 v = mor::modmath::parse_u128(env);
    if (v >> 64) throw mor::InvalidParams("MOR_SEED must fit in 64 bits");
    return static_cast<mor::u64>(v);
  }
  return 0;
}

std::optional<mor::u128> parse_exponent_flag(const std::string& text, const char* name) {
  if (text.empty()) return std::nullopt;
  try {
    return mor::modmath::parse_u128(text);
  } catch (const std::exception&) {
    throw mor::InvalidParams(std::string("--") + name + " must be a decimal integer");
  }
}

mor::UTParams parse_size(const std::string& text) {
  auto split = text.find('x');
  if (split == std::string::npos)
    throw mor::InvalidParams("--sizes entries must look like NxQ, e.g. 4x1297");
  mor::UTParams params;
  try {
    params.n = static_cast<unsigned>(std::stoul(text.substr(0, split)));
    params.field.p = std::stoull(text.substr(split + 1));
  } catch (const std::exception&) {
    throw mor::InvalidParams("--sizes entries must look like NxQ, e.g. 4x1297");
  }
  params.field.gamma = 1;
  return params;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::string from_bytes(const std::vector<std::uint8_t>& b) {
  return std::string(b.begin(), b.end());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOR public-key cryptosystem over unitriangular matrix groups"};
  app.require_subcommand(1);
  int status = 0;

  // keygen
  auto* kg = app.add_subcommand("keygen", "Generate a key pair and write key files");
  mor::u64 kg_p = 0;
  unsigned kg_gamma = 1;
  std::vector<mor::u64> kg_modulus;
  unsigned kg_n = 4;
  std::string kg_m;
  std::optional<mor::u64> kg_seed;
  std::string kg_pk, kg_sk;
  bool kg_strip = false;
  kg->add_option("--p", kg_p, "Field characteristic (prime)")->required();
  kg->add_option("--gamma", kg_gamma, "Field extension degree");
  kg->add_option("--modulus", kg_modulus,
                 "Irreducible polynomial coefficients, constant first, monic")
      ->delimiter(',');
  kg->add_option("--n", kg_n, "Matrix dimension")->required();
  kg->add_option("--m", kg_m, "Secret exponent (decimal; sampled when absent)");
  kg->add_option("--seed", kg_seed, "RNG seed (falls back to MOR_SEED, then 0)");
  kg->add_option("--pk", kg_pk, "Public key output path")->required();
  kg->add_option("--sk", kg_sk, "Private key output path")->required();
  kg->add_flag("--strip", kg_strip, "Omit the factored automorphism from the private key file");
  kg->callback([&] {
    mor::UTParams params{mor::FieldParams{kg_p, kg_gamma, kg_modulus}, kg_n};
    mor::UnitriangularGroup G(params);
    mor::DeterministicRng rng(resolve_seed(kg_seed));
    mor::MorKeyPair kp = mor::keygen(G, rng, parse_exponent_flag(kg_m, "m"));
    write_file(kg_pk, mor::serialize_public_key(kp.pub));
    write_file(kg_sk, mor::serialize_private_key(kp.pub, kp.priv, !kg_strip));
  });

  // encrypt
  auto* en = app.add_subcommand("encrypt", "Encrypt a message file under a public key");
  std::string en_pk, en_in, en_ct, en_r;
  std::optional<mor::u64> en_seed;
  en->add_option("--pk", en_pk, "Public key file")->required()->check(CLI::ExistingFile);
  en->add_option("--in", en_in, "Message file (raw bytes)")->required()->check(CLI::ExistingFile);
  en->add_option("--ct", en_ct, "Ciphertext output path")->required();
  en->add_option("--r", en_r, "Encryption exponent (decimal; sampled when absent)");
  en->add_option("--seed", en_seed, "RNG seed (falls back to MOR_SEED, then 0)");
  en->callback([&] {
    mor::MorPublicKey pk = mor::parse_public_key(read_file(en_pk));
    mor::UnitriangularGroup G(pk.params);
    mor::DeterministicRng rng(resolve_seed(en_seed));
    mor::UTMatrix msg = mor::encode_message(G, to_bytes(read_file(en_in)));
    mor::MorCiphertext ct =
        mor::encrypt(G, pk, msg, rng, parse_exponent_flag(en_r, "r"));
    write_file(en_ct, mor::serialize_ciphertext(pk.params, ct));
  });

  // decrypt
  auto* de = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  std::string de_sk, de_ct, de_out;
  de->add_option("--sk", de_sk, "Private key file")->required()->check(CLI::ExistingFile);
  de->add_option("--ct", de_ct, "Ciphertext file")->required()->check(CLI::ExistingFile);
  de->add_option("--out", de_out, "Decrypted message output path")->required();
  de->callback([&] {
    mor::MorKeyPair kp = mor::parse_private_key(read_file(de_sk));
    auto [params, ct] = mor::parse_ciphertext(read_file(de_ct));
    if (params != kp.pub.params)
      throw mor::MalformedFile("ciphertext parameters do not match the key");
    mor::UnitriangularGroup G(params);
    mor::UTMatrix msg = mor::decrypt(G, kp.priv, ct);
    write_file(de_out, from_bytes(mor::decode_message(G, msg)));
  });

  // attack
  auto* at = app.add_subcommand("attack", "Recover the secret exponent from a public key");
  std::string at_pk;
  at->add_option("--pk", at_pk, "Public key file")->required()->check(CLI::ExistingFile);
  at->callback([&] {
    mor::MorPublicKey pk = mor::parse_public_key(read_file(at_pk));
    mor::UnitriangularGroup G(pk.params);
    std::cout << mor::modmath::to_string(mor::recover_secret(G, pk)) << "\n";
  });

  // selftest-paper
  auto* st = app.add_subcommand("selftest-paper",
                                "Re-derive the published 4x4/F_1297 worked example");
  st->callback([&] {
    for (const mor::SelfTestCheck& c : mor::run_paper_selftest()) {
      std::cout << c.name << " : " << (c.pass ? "PASS" : "FAIL") << "\n";
      if (!c.pass) status = 1;
    }
  });

  // bench
  auto* be = app.add_subcommand("bench", "Time MOR against El-Gamal and emit CSV");
  std::vector<std::string> be_sizes;
  unsigned be_trials = 5;
  std::optional<mor::u64> be_seed;
  std::string be_out;
  be->add_option("--sizes", be_sizes, "Comma-separated NxQ list, e.g. 4x1297,2x1297")
      ->required()
      ->delimiter(',');
  be->add_option("--trials", be_trials, "Timed runs per operation");
  be->add_option("--seed", be_seed, "RNG seed (falls back to MOR_SEED, then 0)");
  be->add_option("--out", be_out, "CSV output path (stdout when absent)");
  be->callback([&] {
    std::vector<mor::UTParams> sizes;
    for (const std::string& s : be_sizes) sizes.push_back(parse_size(s));
    mor::BenchReport rep = mor::bench_run(sizes, be_trials, resolve_seed(be_seed));
    std::string csv = mor::bench_csv(rep);
    if (be_out.empty())
      std::cout << csv;
    else
      write_file(be_out, csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const mor::MalformedFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mor::VersionUnsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mor::MalformedCiphertext& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mor::MalformedMessage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mor::AttackFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
