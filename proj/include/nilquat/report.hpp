#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace nilquat {

enum class CheckStatus { pass, fail, info };
std::string status_name(CheckStatus s);

struct Check {
  std::string id;
  std::string claim;
  CheckStatus status = CheckStatus::info;
  std::string detail;
};

// Checks are kept sorted by id; ids are unique.
class Report {
 public:
  Report(std::string suite, int m, std::uint64_t seed);

  const std::string& suite() const { return suite_; }
  int m() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Check>& checks() const { return checks_; }

  // Throws std::logic_error on a duplicate id.
  void add(Check c);
  void expect(const std::string& id, const std::string& claim, bool ok, const std::string& detail = "");
  void info(const std::string& id, const std::string& claim, const std::string& detail);
  void merge(const Report& other);

  bool passed() const;
  std::size_t count(CheckStatus s) const;
  const Check* find(const std::string& id) const;

  // Wall time is shown in text output only, so JSON stays reproducible.
  void set_seconds(double s) { seconds_ = s; }

  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::string suite_;
  int m_;
  std::uint64_t seed_;
  std::vector<Check> checks_;
  double seconds_ = -1;
};

}  // namespace nilquat
