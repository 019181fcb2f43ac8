#pragma once

#include <string>
#include <vector>

namespace fiberres {

enum class Status { Pass, Fail, UnknownWindow };

inline const char* status_name(Status s) {
  return s == Status::Pass ? "pass" : s == Status::Fail ? "fail" : "unknown-window";
}

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

inline Check make_check(std::string name, bool ok, std::string detail = {}) {
  return Check{std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)};
}

/// Pass only if no check failed; unknown-window entries do not fail a report.
inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return false;
  return true;
}

}  // namespace fiberres
