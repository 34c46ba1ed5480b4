#pragma once
// Result model for the verification harness: per-check outcomes with
// theorem tags, expected-vs-actual counts, failure witnesses, and timings,
// rendered as JSON or plain text.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace splash {

struct CheckResult {
  std::string id;       // stable slug, unique within its suite
  std::string theorem;  // statement tag, e.g. "Thm 6.4"
  bool pass = true;
  std::map<std::string, int64_t> counts;  // "<name> expected" twins on checks
  std::string witness;                    // filled on failure only
  int64_t ms = 0;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct RunReport {
  uint16_t q = 0;
  std::string tower;
  std::vector<SuiteResult> suites;

  bool pass() const;
  void zero_times();  // byte-stable output for golden files
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace splash
