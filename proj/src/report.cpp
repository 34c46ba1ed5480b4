#include "splash/report.hpp"

#include <json.hpp>
#include <sstream>

namespace splash {

bool SuiteResult::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

bool RunReport::pass() const {
  for (const SuiteResult& s : suites)
    if (!s.pass()) return false;
  return true;
}

void RunReport::zero_times() {
  for (SuiteResult& s : suites)
    for (CheckResult& c : s.checks) c.ms = 0;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["tower"] = tower;
  j["suites"] = nlohmann::ordered_json::array();
  for (const SuiteResult& s : suites) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : s.checks) {
      nlohmann::ordered_json jc;
      jc["id"] = c.id;
      jc["theorem"] = c.theorem;
      jc["pass"] = c.pass;
      jc["counts"] = nlohmann::ordered_json::object();
      for (const auto& [name, value] : c.counts) jc["counts"][name] = value;
      jc["witness"] = c.witness;
      jc["ms"] = c.ms;
      js["checks"].push_back(std::move(jc));
    }
    j["suites"].push_back(std::move(js));
  }
  j["pass"] = pass();
  return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "q=" << q << " tower=" << tower << "\n";
  for (const SuiteResult& s : suites) {
    out << s.name << "\n";
    for (const CheckResult& c : s.checks) {
      out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << " ("
          << c.theorem << ")";
      for (const auto& [name, value] : c.counts)
        out << " " << name << "=" << value;
      out << " " << c.ms << "ms";
      if (!c.pass) out << "\n         witness: " << c.witness;
      out << "\n";
    }
  }
  out << "overall: " << (pass() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace splash
