// Acceptance gate: one line per criterion, wall-clock budgets enforced.
// Exit status is nonzero if any criterion fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "splash/report.hpp"
#include "splash/suites.hpp"

using namespace splash;

namespace {

using Clock = std::chrono::steady_clock;

int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

class Harness {
 public:
  const World& world(uint16_t q) {
    auto it = worlds_.find(q);
    if (it == worlds_.end())
      it = worlds_
               .emplace(q, make_world(FieldTower::make(q), {"covers"}))
               .first;
    return *it->second;
  }

  SuiteResult suite(uint16_t q, const std::string& name) {
    return run_suite(world(q), name);
  }

  static bool check_ok(const SuiteResult& s, const std::string& id) {
    for (const CheckResult& c : s.checks)
      if (c.id == id) return c.pass;
    return false;
  }

  static int64_t check_count(const SuiteResult& s, const std::string& id,
                             const std::string& key) {
    for (const CheckResult& c : s.checks)
      if (c.id == id) {
        auto it = c.counts.find(key);
        return it == c.counts.end() ? -1 : it->second;
      }
    return -1;
  }

  void criterion(int num, bool pass, const std::string& desc,
                 const std::vector<std::string>& analysis = {}) {
    std::printf("criterion %2d %s  %s\n", num, pass ? "PASS" : "FAIL",
                desc.c_str());
    for (const std::string& a : analysis)
      std::printf("              %s\n", a.c_str());
    if (!pass) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  std::map<uint16_t, std::unique_ptr<World>> worlds_;
  int failures_ = 0;
};

constexpr std::array<uint16_t, 4> kDeskFields = {2, 3, 4, 5};

}  // namespace

int main() {
  Harness h;

  {
    bool ok = true;
    for (uint16_t q : kDeskFields) {
      auto t0 = Clock::now();
      ok = ok && h.suite(q, "subplane").pass();
      ok = ok && ms_since(t0) < 1000;
    }
    h.criterion(1, ok,
                "splash of the exterior subplane matches the closed form "
                "(q=2,3,4,5; under 1s each)");
  }

  {
    bool ok = true;
    int64_t q4_ms = 0;
    for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)}) {
      auto t0 = Clock::now();
      ok = ok && h.suite(q, "quadrics").pass();
      if (q == 4) q4_ms = ms_since(t0);
    }
    ok = ok && q4_ms < 60000;
    h.criterion(2, ok,
                "nine quadrics cut out exactly the subplane image over the "
                "full affine scan (q=2,3,4; q=4 under 60s)");
  }

  {
    bool ok = true;
    for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)})
      ok = ok && h.suite(q, "tangents").pass();
    h.criterion(3, ok,
                "polar and twisted-cubic tangent routes agree and traces "
                "biject onto the tangent cover (q=2,3,4)");
  }

  {
    bool ok = true;
    for (uint16_t q : kDeskFields) {
      SuiteResult s = h.suite(q, "covers");
      ok = ok && Harness::check_ok(s, "family-axioms") &&
           Harness::check_ok(s, "same-label-meets");
    }
    h.criterion(4, ok,
                "tangent and conic covers partition the splash point set and "
                "meet in the marked points (q=2,3,4,5)");
  }

  {
    bool ok = true;
    for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)})
      ok = ok && Harness::check_ok(h.suite(q, "covers"), "theta-action");
    h.criterion(5, ok,
                "the collineation Theta fixes the spread and rotates each "
                "cover in a single orbit (q=2,3,4)");
  }

  {
    bool ok = true;
    int64_t q3_ms = 0;
    for (uint16_t q : {uint16_t(2), uint16_t(3)}) {
      auto t0 = Clock::now();
      SuiteResult s = h.suite(q, "transversals");
      ok = ok && Harness::check_ok(s, "search-spread") &&
           Harness::check_ok(s, "search-tangent") &&
           Harness::check_ok(s, "search-conic");
      if (q == 3) q3_ms = ms_since(t0);
    }
    ok = ok && q3_ms < 120000;
    h.criterion(6, ok,
                "exhaustive search finds exactly three transversal lines per "
                "family (q=2,3; q=3 under 120s)");
  }

  {
    bool ok = true;
    for (uint16_t q : kDeskFields) {
      SuiteResult s = h.suite(q, "transversals");
      ok = ok && Harness::check_ok(s, "spread-marked-points") &&
           Harness::check_ok(s, "cover-marked-points");
    }
    h.criterion(7, ok,
                "every transversal meets its planes in the closed-form "
                "marked points (q=2,3,4,5)");
  }

  {
    bool ok = true;
    for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)})
      ok = ok && h.suite(q, "carriers").pass();
    h.criterion(8, ok,
                "exactly the two carrier planes meet all nine transversal "
                "lines (q=2,3,4)");
  }

  {
    bool ok = true;
    for (uint16_t q : kDeskFields) ok = ok && h.suite(q, "disjoint").pass();
    h.criterion(9, ok,
                "coset splashes partition the nonzero labels and share the "
                "cover transversals (q=3,4,5; q=2 degenerates to one coset)");
  }

  {
    SuiteResult q3 = h.suite(3, "sublines");
    SuiteResult q2 = h.suite(2, "sublines");
    bool ok = q3.pass() && q2.pass();
    std::vector<std::string> analysis;
    if (!q2.pass()) {
      analysis.push_back(
          "q=3 passes: 26 sublines, 13 pencil and 13 dual conic.");
      analysis.push_back(
          "q=2 fails the stated census: the collineation group of PG(1,8) is "
          "sharply 3-transitive, so every 3-subset of the 7 splash labels is "
          "an order-2 subline. The verifier finds " +
          std::to_string(Harness::check_count(q2, "enumeration", "sublines")) +
          " sublines: 7 pencil, 7 dual conic, and " +
          std::to_string(
              Harness::check_count(q2, "classification", "unclassified reguli")) +
          " whose sections are conics in both covers.");
      analysis.push_back(
          "The census 2(q^2+q+1) with an even split therefore needs q > 2; "
          "the q=2 report carries the true counts.");
    }
    h.criterion(10, ok,
                "order-q sublines of the splash number 2(q^2+q+1), split "
                "evenly between pencils and dual conics (q=2,3)");
    for (const std::string& a : analysis)
      std::printf("              %s\n", a.c_str());
  }

  {
    bool ok = true;
    int64_t q4_ms = 0;
    for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)}) {
      auto t0 = Clock::now();
      ok = ok && h.suite(q, "special-conics").pass();
      if (q == 4) q4_ms = ms_since(t0);
    }
    ok = ok && q4_ms < 300000;
    h.criterion(11, ok,
                "every conic section of a classified regulus is special for "
                "its cover (q=2,3,4; q=4 under 5min)");
  }

  {
    SuiteResult s = h.suite(3, "replacement");
    bool ok = Harness::check_ok(s, "uniform-regular") &&
              Harness::check_ok(s, "mixed-nonregular");
    h.criterion(12, ok,
                "hyperregulus replacement yields a regular spread exactly "
                "for the uniform choices (q=3, all 9 combinations)");
  }

  {
    bool ok = true;
    for (uint16_t q : {uint16_t(2), uint16_t(3)}) {
      std::string base_vec;
      for (const Triple& t : FieldTower::all_primitive_polys(q)) {
        FieldTower tw = FieldTower::make(q, t);
        std::vector<std::string> names = default_suites(q);
        std::unique_ptr<World> w = make_world(tw, names);
        auto render = [&] {
          RunReport rep;
          rep.q = tw.q();
          rep.tower = tw.token();
          for (const std::string& n : names)
            rep.suites.push_back(run_suite(*w, n));
          rep.zero_times();
          std::string vec;
          for (const SuiteResult& s : rep.suites)
            for (const CheckResult& c : s.checks) vec += c.pass ? 'T' : 'F';
          return std::pair<std::string, std::string>(rep.to_json(), vec);
        };
        auto [j1, v1] = render();
        auto [j2, v2] = render();
        ok = ok && j1 == j2 && v1 == v2 && !j1.empty();
        if (base_vec.empty())
          base_vec = v1;
        else
          ok = ok && v1 == base_vec;
      }
    }
    h.criterion(13, ok,
                "reports are byte-stable across reruns and verdicts agree "
                "across every primitive cubic (q=2,3)");
  }

  std::printf("acceptance: %d of 13 criteria pass\n", 13 - h.failures());
  return h.failures() == 0 ? 0 : 1;
}
