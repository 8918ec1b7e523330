#include "nilquat/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nilquat {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
  }
  return "info";
}

Report::Report(std::string suite, int m, std::uint64_t seed) : suite_(std::move(suite)), m_(m), seed_(seed) {}

void Report::add(Check c) {
  auto it = std::lower_bound(checks_.begin(), checks_.end(), c.id,
                             [](const Check& x, const std::string& id) { return x.id < id; });
  if (it != checks_.end() && it->id == c.id) throw std::logic_error("Report: duplicate check id " + c.id);
  checks_.insert(it, std::move(c));
}

void Report::expect(const std::string& id, const std::string& claim, bool ok, const std::string& detail) {
  add({id, claim, ok ? CheckStatus::pass : CheckStatus::fail, detail});
}

void Report::info(const std::string& id, const std::string& claim, const std::string& detail) {
  add({id, claim, CheckStatus::info, detail});
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks_) add(c);
}

bool Report::passed() const { return count(CheckStatus::fail) == 0; }

std::size_t Report::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.status == s; }));
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_)
    if (c.id == id) return &c;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_)
    checks.push_back({{"id", c.id}, {"claim", c.claim}, {"status", status_name(c.status)}, {"detail", c.detail}});
  return {{"suite", suite_},
          {"m", m_},
          {"seed", seed_},
          {"status", passed() ? "pass" : "fail"},
          {"summary",
           {{"pass", count(CheckStatus::pass)}, {"fail", count(CheckStatus::fail)}, {"info", count(CheckStatus::info)}}},
          {"checks", checks}};
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "suite " << suite_ << "  m=" << m_ << "  seed=" << seed_ << "\n";
  for (const auto& c : checks_) {
    os << "[" << status_name(c.status) << "] " << c.id << "\n";
    os << "    claim:  " << c.claim << "\n";
    if (!c.detail.empty()) os << "    detail: " << c.detail << "\n";
  }
  os << count(CheckStatus::pass) << " pass, " << count(CheckStatus::fail) << " fail, " << count(CheckStatus::info)
     << " info";
  if (seconds_ >= 0) os << "  (" << std::fixed << std::setprecision(2) << seconds_ << " s)";
  os << "\n";
  return os.str();
}

}  // namespace nilquat
