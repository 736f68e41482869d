#pragma once

// Run manifests, input size caps and atomic output for the command line.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/determinantal.hpp"
#include "rainbow/error.hpp"
#include "rainbow/hilbert.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/term_order.hpp"

namespace rainbow {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to rerun a command; no timestamps, so equal manifests
/// give byte-identical outputs.
struct RunManifest {
  std::string command;
  int n = 0;
  int m = 0;
  std::optional<TermOrder> order;
  std::uint64_t prime = kDefaultPrime;
  std::optional<PureComplex> delta;
  std::optional<PureComplex> dual;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json j{{"tool", "rainbow"}, {"version", kToolVersion}, {"command", command},
                     {"n", n},           {"m", m},                   {"prime", prime}};
    j["order"] = order ? order->to_json() : nlohmann::json(nullptr);
    j["delta"] = delta ? delta->to_json() : nlohmann::json(nullptr);
    j["dual"] = dual ? dual->to_json() : nlohmann::json(nullptr);
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    return j;
  }
};

struct SizeLimits {
  int max_n = 4;
  int max_m = 8;
  std::int64_t max_minors = 70;
};

/// Throws SizeCap when the shape exceeds the limits.
inline void check_size(int n, int m, const SizeLimits& limits = {}) {
  if (n < 1 || m < n) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= m, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  const std::int64_t minors = detail::binomial(m, n);
  if (n > limits.max_n || m > limits.max_m || minors > limits.max_minors) {
    throw Error(ErrorCode::SizeCap, std::to_string(n) + "x" + std::to_string(m) + " with " + std::to_string(minors) +
                                        " minors is over the caps n<=" + std::to_string(limits.max_n) +
                                        ", m<=" + std::to_string(limits.max_m) +
                                        ", C(m,n)<=" + std::to_string(limits.max_minors));
  }
}

/// Prime from RAINBOW_PRIME if set, else the default.
inline std::uint64_t prime_from_env() {
  const char* s = std::getenv("RAINBOW_PRIME");
  if (s == nullptr || *s == '\0') return kDefaultPrime;
  char* end = nullptr;
  const unsigned long long p = std::strtoull(s, &end, 10);
  if (*end != '\0') throw Error(ErrorCode::ParseError, std::string("RAINBOW_PRIME is not a number: ") + s);
  if (p > UINT32_MAX) throw Error(ErrorCode::NotPrime, "RAINBOW_PRIME does not fit in 32 bits");
  static_cast<void>(PrimeField(static_cast<std::uint32_t>(p)));  // validates
  return p;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

/// Write to a sibling temporary and rename over the target.
inline void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace rainbow
