#pragma once

#include "gc3/integrate/monte_carlo.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

namespace gc3 {

inline constexpr const char* code_version = "gc3-1.0";

/// Append-only JSON-lines store of integration results.
/// Exact results match on (key, omega); Monte Carlo results also need equal samples and seed.
class IntegralCache {
 public:
  IntegralCache() = default;
  explicit IntegralCache(std::string path) : path_(std::move(path)) { load(); }

  bool persistent() const { return !path_.empty(); }

  std::optional<IntegralResult> find(const std::string& key, const std::string& omega, std::uint64_t samples,
                                     std::uint64_t seed) const {
    std::lock_guard lock(mutex_);
    auto it = exact_.find({key, omega});
    if (it != exact_.end()) return it->second;
    auto jt = sampled_.find({key, omega, samples, seed});
    if (jt != sampled_.end()) return jt->second;
    return std::nullopt;
  }

  void store(const std::string& key, const std::string& omega, const IntegralResult& r) {
    std::lock_guard lock(mutex_);
    insert(key, omega, r);
    if (path_.empty()) return;
    nlohmann::json j = {{"key", key},
                        {"omega", omega},
                        {"method", method_name(r.method)},
                        {"value", r.value},
                        {"std_error", r.std_error},
                        {"samples", r.samples},
                        {"seed", r.seed},
                        {"code_version", code_version}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to cache " + path_);
    out << j.dump() << '\n';
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return exact_.size() + sampled_.size();
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;  // created on first store
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        auto j = nlohmann::json::parse(line);
        if (j.at("code_version").get<std::string>() != code_version) continue;
        IntegralResult r;
        r.method = parse_method(j.at("method").get<std::string>());
        r.value = j.at("value").get<double>();
        r.std_error = j.at("std_error").get<double>();
        r.samples = j.at("samples").get<std::uint64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("reason")) r.reason = j["reason"].get<std::string>();
        insert(j.at("key").get<std::string>(), j.at("omega").get<std::string>(), r);
      } catch (const std::exception& e) {
        throw std::runtime_error(path_ + ":" + std::to_string(lineno) + ": bad cache line: " + e.what());
      }
    }
  }

  void insert(const std::string& key, const std::string& omega, const IntegralResult& r) {
    if (r.method == IntegralMethod::monte_carlo)
      sampled_[{key, omega, r.samples, r.seed}] = r;
    else
      exact_[{key, omega}] = r;
  }

  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, IntegralResult> exact_;
  std::map<std::tuple<std::string, std::string, std::uint64_t, std::uint64_t>, IntegralResult> sampled_;
};

}  // namespace gc3
