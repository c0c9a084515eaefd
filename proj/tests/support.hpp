#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "renas/lexical/normalize.hpp"

namespace renas::test {

inline std::string fixture(const std::string& name) { return std::string(RENAS_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("renas-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& child = "") const { return child.empty() ? path_.string() : (path_ / child).string(); }

 private:
  std::filesystem::path path_;
};

// A normalized name whose words are their own lemmas.
inline lexical::NormalizedName plain_name(const std::vector<std::string>& words) {
  lexical::NormalizedName n;
  for (const auto& w : words) {
    n.raw += w;
    n.tokens.push_back({w, w, lexical::Inflection::kNone, std::nullopt, lexical::ExpansionStep::kNone});
  }
  return n;
}

// Dice over word multisets, counted with a map.
inline double dice_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, int> ca;
  std::map<std::string, int> cb;
  for (const auto& w : a) ++ca[w];
  for (const auto& w : b) ++cb[w];
  int common = 0;
  for (const auto& [w, n] : ca) {
    auto it = cb.find(w);
    if (it != cb.end()) common += std::min(n, it->second);
  }
  return 2.0 * common / static_cast<double>(a.size() + b.size());
}

// Straight-line average precision: sum of precision@k at every relevant hit.
inline double ap_oracle(const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  double total = 0;
  for (std::size_t k = 1; k <= ranking.size(); ++k) {
    if (!relevant.count(ranking[k - 1])) continue;
    int hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += relevant.count(ranking[j]) ? 1 : 0;
    total += static_cast<double>(hits) / static_cast<double>(k);
  }
  return total / static_cast<double>(relevant.size());
}

inline double rr_oracle(const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    if (relevant.count(ranking[k])) return 1.0 / static_cast<double>(k + 1);
  }
  return 0.0;
}

inline double f1_oracle(const std::set<std::string>& recommended, const std::set<std::string>& relevant) {
  std::vector<std::string> both;
  std::set_intersection(recommended.begin(), recommended.end(), relevant.begin(), relevant.end(),
                        std::back_inserter(both));
  const double tp = static_cast<double>(both.size());
  const double p = recommended.empty() ? 0 : tp / static_cast<double>(recommended.size());
  const double r = tp / static_cast<double>(relevant.size());
  return p + r == 0 ? 0 : 2 * p * r / (p + r);
}

}  // namespace renas::test
