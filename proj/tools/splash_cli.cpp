// Verification CLI: runs check suites against one field tower and emits a
// deterministic report, or dumps a named geometry artifact as CSV.
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "splash/report.hpp"
#include "splash/suites.hpp"

namespace {

using namespace splash;

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

// Suites are independent; workers claim indices, slots keep report order.
std::vector<SuiteResult> run_suites(const World& w,
                                    const std::vector<std::string>& names,
                                    unsigned jobs) {
  std::vector<SuiteResult> slots(names.size());
  if (jobs <= 1 || names.size() <= 1) {
    for (size_t i = 0; i < names.size(); ++i) slots[i] = run_suite(w, names[i]);
    return slots;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < names.size();
         i = next.fetch_add(1))
      slots[i] = run_suite(w, names[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<size_t>(jobs, names.size()); ++t)
    pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return slots;
}

RunReport run_tower(const FieldTower& tower,
                    const std::vector<std::string>& names, unsigned jobs) {
  RunReport rep;
  rep.q = tower.q();
  rep.tower = tower.token();
  try {
    std::unique_ptr<World> w = make_world(tower, names);
    rep.suites = [&] {
      std::vector<SuiteResult> slots = run_suites(*w, names, jobs);
      return slots;
    }();
  } catch (const std::exception& e) {
    SuiteResult s;
    s.name = "construction";
    CheckResult c;
    c.id = "world";
    c.theorem = "§2";
    c.pass = false;
    c.witness = e.what();
    s.checks.push_back(std::move(c));
    rep.suites.push_back(std::move(s));
  }
  return rep;
}

int write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  f << content;
  return f.good() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bruck-Bose splash verifier: builds PG(6,q) models of the exterior "
      "subplane of PG(2,q^3) and checks their structure exhaustively"};

  unsigned q = 3;
  std::string poly, format = "json", out_path, dump;
  std::vector<std::string> suites;
  unsigned jobs = 1;
  bool all_towers = false, deterministic = false;

  app.add_option("--q", q, "base field order (2,3,4,5,7,8,9)");
  app.add_option("--poly", poly,
                 "field tower token p^d:b0,...,bd:t0,t1,t2 (overrides --q)");
  app.add_option("--suite", suites,
                 "suite to run (repeatable): " + join(suite_names(), ", "));
  app.add_option("--format", format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--jobs", jobs, "worker threads for suites");
  app.add_flag("--all-towers", all_towers,
               "run every primitive cubic for q and compare verdicts");
  app.add_flag("--deterministic", deterministic,
               "zero timing fields for byte-identical reports");
  app.add_option("--dump", dump,
                 "write a CSV artifact instead of running checks: " +
                     join(artifact_names(), ", "));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace splash;
  if (jobs == 0) jobs = 1;

  std::optional<FieldTower> tower;
  try {
    if (!poly.empty()) {
      tower.emplace(FieldTower::parse(poly));
    } else {
      const std::vector<uint16_t>& sup = FieldTower::supported();
      if (std::find(sup.begin(), sup.end(), uint16_t(q)) == sup.end()) {
        std::cerr << "unsupported field order: " << q << "\n";
        return 2;
      }
      tower.emplace(FieldTower::make(uint16_t(q)));
    }
  } catch (const std::exception& e) {
    std::cerr << "invalid tower: " << e.what() << "\n";
    return 2;
  }

  if (!dump.empty()) {
    const auto& arts = artifact_names();
    if (std::find(arts.begin(), arts.end(), dump) == arts.end()) {
      std::cerr << "unknown artifact: " << dump << "\n";
      return 2;
    }
    std::string layer = "covers";
    if (dump == "spread") layer = "spread";
    if (dump == "subplane" || dump == "quadrics") layer = "subplane";
    std::string csv;
    try {
      std::unique_ptr<World> w = make_world(*tower, {layer});
      csv = dump_artifact(*w, dump);
    } catch (const std::exception& e) {
      std::cerr << "dump failed: " << e.what() << "\n";
      return 1;
    }
    if (out_path.empty()) out_path = dump + (dump == "transversals" ? "9.csv" : ".csv");
    return write_out(out_path, csv);
  }

  std::vector<std::string> names = suites.empty()
                                       ? default_suites(tower->q())
                                       : suites;
  for (const std::string& s : names)
    if (!is_suite_name(s)) {
      std::cerr << "unknown suite: " << s << "\n";
      return 2;
    }

  bool all_pass = true;
  std::string rendered;

  if (all_towers) {
    std::vector<RunReport> reports;
    std::vector<Triple> polys = FieldTower::all_primitive_polys(tower->q());
    for (const Triple& t : polys)
      reports.push_back(
          run_tower(FieldTower::make(tower->q(), t), names, jobs));
    // verdict vectors must agree across towers: the model is independent
    // of the primitive cubic chosen
    std::vector<char> base;
    bool uniform = true;
    for (size_t r = 0; r < reports.size(); ++r) {
      std::vector<char> verdicts;
      for (const SuiteResult& s : reports[r].suites)
        for (const CheckResult& c : s.checks) verdicts.push_back(c.pass);
      if (r == 0)
        base = verdicts;
      else
        uniform = uniform && verdicts == base;
      all_pass = all_pass && reports[r].pass();
    }
    all_pass = all_pass && uniform;
    if (deterministic)
      for (RunReport& r : reports) r.zero_times();
    if (format == "json") {
      std::string body;
      for (size_t i = 0; i < reports.size(); ++i) {
        std::string one = reports[i].to_json();
        if (!one.empty() && one.back() == '\n') one.pop_back();
        body += (i ? ",\n" : "") + one;
      }
      rendered = "{\"q\": " + std::to_string(tower->q()) +
                 ", \"towers\": [\n" + body + "\n], \"uniform\": " +
                 (uniform ? "true" : "false") + ", \"pass\": " +
                 (all_pass ? "true" : "false") + "}\n";
    } else {
      for (const RunReport& r : reports) rendered += r.to_text() + "\n";
      rendered += std::string("towers agree: ") + (uniform ? "yes" : "no") +
                  "\noverall: " + (all_pass ? "pass" : "fail") + "\n";
    }
  } else {
    RunReport rep = run_tower(*tower, names, jobs);
    all_pass = rep.pass();
    if (deterministic) rep.zero_times();
    rendered = format == "json" ? rep.to_json() : rep.to_text();
  }

  int werr = write_out(out_path, rendered);
  if (werr != 0) return werr;
  return all_pass ? 0 : 1;
}
