#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace spl {

// one [section] of the paper values file
struct CheckSpec {
  std::string id;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  const std::string& get(const std::string& key) const;  // throws when missing
  std::string get(const std::string& key, const std::string& dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
  int criterion() const { return static_cast<int>(get_u64("criterion", 0)); }
};

struct PaperValues {
  std::map<std::string, std::string> header;  // keys before the first section
  std::vector<CheckSpec> checks;
};

PaperValues parse_paper_values(const std::string& text);
PaperValues load_paper_values(const std::string& path);
std::string default_paper_values_path();

enum class CheckStatus { pass, fail, skipped_budget };
std::string status_name(CheckStatus s);

struct CheckRecord {
  std::string id, anchor, quantity, group, cls, suite;
  int criterion = 0;
  std::string expected, computed, note;
  CheckStatus status = CheckStatus::fail;
  bool documented = false;  // a known, explained discrepancy
  double wall_ms = 0;
};

struct VerifyOptions {
  std::string suite = "core";  // core | extended
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t budget = 200000000;
  std::string cache_dir;
  std::set<int> criteria;  // empty = all
  bool timing = true;      // false: wall times reported as 0
  std::function<void(const CheckRecord&)> on_check;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  std::size_t passed = 0, failed = 0, documented = 0, skipped = 0;
  std::string values_version;
  // no failures other than documented ones
  bool ok() const { return failed == documented; }
};

VerifyReport run_verify(const PaperValues& pv, const VerifyOptions& opt);
nlohmann::json report_json(const VerifyReport& rep, const VerifyOptions& opt);

// expected-value forms shared with the tests
struct Multiplicity {
  std::uint64_t length = 0, mult = 0;
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
  friend auto operator<=>(const Multiplicity&, const Multiplicity&) = default;
};
std::vector<Multiplicity> parse_multiset(const std::string& text);  // "1x1 3x2"
std::string multiset_str(std::vector<Multiplicity> m);

}  // namespace spl
