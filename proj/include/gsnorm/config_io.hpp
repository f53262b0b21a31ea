// Copyright 2026 The gsnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSNORM_CONFIG_IO_HPP_
#define GSNORM_CONFIG_IO_HPP_

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "gsnorm/experiments.hpp"
#include "gsnorm/psi.hpp"
#include "gsnorm/trial.hpp"

namespace gsnorm {

inline constexpr const char* kVersion = "1.0.0";

/*
 * Flat "key = value" text. '#' starts a comment, blank lines are skipped,
 * keys may appear once. Lists are comma separated.
 */
using KeyValues = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.push_back({});
  return out;
}

// %.17g round-trips every double.
inline std::string exact_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_floating_point_v<T>) out += exact_real(x);
    else if constexpr (std::is_arithmetic_v<T>) out += std::to_string(x);
    else out += x;
  }
  return out;
}

}  // namespace detail

inline KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::stringstream ss{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number), "expected key = value");
    }
    const std::string key = detail::trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number), "empty key");
    if (!kv.emplace(key, detail::trim(std::string_view(t).substr(eq + 1))).second) {
      throw ConfigError(key, "given more than once");
    }
  }
  return kv;
}

inline double parse_real(const std::string& field, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(field, "'" + v + "' is not a number");
  }
  return out;
}

inline long long parse_integer(const std::string& field, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(field, "'" + v + "' is not an integer");
  }
  return out;
}

inline int parse_int(const std::string& field, const std::string& v) {
  const long long x = parse_integer(field, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(field, "'" + v + "' is out of range");
  }
  return static_cast<int>(x);
}

/// Keys written into manifests next to the configuration. The config reader
/// skips them so a manifest can be fed back as a config file.
inline const std::set<std::string>& manifest_keys() {
  static const std::set<std::string> keys = {"command", "seed", "reps", "version", "output",
                                             "threads", "sampling", "grid", "quantile"};
  return keys;
}

/*
 * Trial configuration keys: mu, sigma, gamma, looks, n, psi.kind, psi.C,
 * psi.p. psi.kind is one of one_sided, two_sided, left_indicator, constant;
 * psi.C belongs to the threshold rules and psi.p to constant. Missing keys
 * take the TrialConfig defaults (psi.C and psi.p default to 0).
 */
inline TrialConfig parse_trial_config(std::string_view text) {
  const KeyValues kv = parse_key_values(text);
  static const std::set<std::string> known = {"mu", "sigma", "gamma", "looks", "n",
                                              "psi.kind", "psi.C", "psi.p"};
  for (const auto& [k, v] : kv) {
    if (!known.count(k) && !manifest_keys().count(k)) throw ConfigError(k, "unknown key");
  }
  TrialConfig c;
  if (auto it = kv.find("mu"); it != kv.end()) c.mu = parse_real("mu", it->second);
  if (auto it = kv.find("sigma"); it != kv.end()) c.sigma = parse_real("sigma", it->second);
  if (auto it = kv.find("gamma"); it != kv.end()) c.gamma = parse_real("gamma", it->second);
  if (auto it = kv.find("n"); it != kv.end()) c.n = parse_int("n", it->second);
  if (auto it = kv.find("looks"); it != kv.end()) {
    c.looks.clear();
    for (const auto& item : detail::split_list(it->second)) c.looks.push_back(parse_int("looks", item));
  }
  const std::string kind = kv.count("psi.kind") ? kv.at("psi.kind") : "constant";
  const bool has_c = kv.count("psi.C"), has_p = kv.count("psi.p");
  const double C = has_c ? parse_real("psi.C", kv.at("psi.C")) : 0.0;
  const double p = has_p ? parse_real("psi.p", kv.at("psi.p")) : 0.0;
  const bool threshold = kind == "one_sided" || kind == "two_sided";
  if (has_c && !threshold) throw ConfigError("psi.C", "only applies to one_sided and two_sided");
  if (has_p && kind != "constant") throw ConfigError("psi.p", "only applies to constant");
  try {
    if (kind == "one_sided") c.psi = PsiSpec::one_sided(C);
    else if (kind == "two_sided") c.psi = PsiSpec::two_sided(C);
    else if (kind == "left_indicator") c.psi = PsiSpec::left_indicator();
    else if (kind == "constant") c.psi = PsiSpec::constant(p);
    else throw ConfigError("psi.kind", "'" + kind + "' is not one of one_sided, two_sided, left_indicator, constant");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(threshold ? "psi.C" : "psi.p", e.what());
  }
  c.validate();
  return c;
}

/// All configuration keys with every default written out.
inline std::vector<std::pair<std::string, std::string>> config_entries(const TrialConfig& c) {
  std::vector<std::pair<std::string, std::string>> e = {
      {"mu", detail::exact_real(c.mu)},
      {"sigma", detail::exact_real(c.sigma)},
      {"gamma", detail::exact_real(c.gamma)},
      {"looks", detail::join(c.looks)},
      {"n", std::to_string(c.n)},
      {"psi.kind", c.psi.kind()},
  };
  if (auto C = c.psi.threshold()) e.emplace_back("psi.C", detail::exact_real(*C));
  if (auto p = c.psi.probability()) e.emplace_back("psi.p", detail::exact_real(*p));
  return e;
}

inline std::string serialize_trial_config(const TrialConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
  return out;
}

/*
 * Study grid keys: mus, ns, Cs, gammas, sides, looks, sigma. Missing keys
 * keep the defaults of the reference grid.
 */
inline StudyGrid parse_study_grid(std::string_view text) {
  const KeyValues kv = parse_key_values(text);
  static const std::set<std::string> known = {"mus", "ns", "Cs", "gammas", "sides", "looks",
                                              "sigma"};
  for (const auto& [k, v] : kv) {
    if (!known.count(k) && !manifest_keys().count(k)) throw ConfigError(k, "unknown key");
  }
  StudyGrid g;
  const auto reals = [&](const char* key, std::vector<double>& dst) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    dst.clear();
    if (it->second.empty()) return;
    for (const auto& item : detail::split_list(it->second)) dst.push_back(parse_real(key, item));
  };
  const auto ints = [&](const char* key, std::vector<int>& dst) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    dst.clear();
    if (it->second.empty()) return;
    for (const auto& item : detail::split_list(it->second)) dst.push_back(parse_int(key, item));
  };
  reals("mus", g.mus);
  ints("ns", g.ns);
  reals("Cs", g.Cs);
  reals("gammas", g.gammas);
  ints("looks", g.looks);
  if (auto it = kv.find("sides"); it != kv.end()) {
    g.sides.clear();
    if (!it->second.empty()) g.sides = detail::split_list(it->second);
  }
  if (auto it = kv.find("sigma"); it != kv.end()) g.sigma = parse_real("sigma", it->second);
  g.validate();
  return g;
}

inline std::vector<std::pair<std::string, std::string>> grid_entries(const StudyGrid& g) {
  return {{"mus", detail::join(g.mus)},       {"ns", detail::join(g.ns)},
          {"Cs", detail::join(g.Cs)},         {"gammas", detail::join(g.gammas)},
          {"sides", detail::join(g.sides)},   {"looks", detail::join(g.looks)},
          {"sigma", detail::exact_real(g.sigma)}};
}

/// What produced an output directory, in the same key = value format.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::vector<std::pair<std::string, std::string>> extra;  // e.g. sampling, threads
  std::vector<std::string> outputs;
  std::string version = kVersion;

  std::string to_text() const {
    std::string out = "command = " + command + "\n";
    for (const auto& [k, v] : config) out += k + " = " + v + "\n";
    out += "seed = " + std::to_string(seed) + "\n";
    out += "reps = " + std::to_string(reps) + "\n";
    for (const auto& [k, v] : extra) out += k + " = " + v + "\n";
    out += "output = " + detail::join(outputs) + "\n";
    out += "version = " + version + "\n";
    return out;
  }
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace gsnorm

#endif  // GSNORM_CONFIG_IO_HPP_
