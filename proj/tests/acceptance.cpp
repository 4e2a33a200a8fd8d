// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "gform/suites.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

using gform::suites::RunConfig;
using gform::suites::SuiteResult;

namespace {

int failed = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

std::size_t count_failures(const SuiteResult& r, const std::string& needle, bool containing) {
  std::size_t k = 0;
  for (const auto& f : r.failures)
    if ((f.find(needle) != std::string::npos) == containing) ++k;
  return k;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const RunConfig defaults;
  std::vector<SuiteResult> run;
  auto t0 = std::chrono::steady_clock::now();
  const std::string first = gform::suites::run_report(defaults, &run).dump(2);
  const double full_secs = seconds_since(t0);
  std::map<std::string, const SuiteResult*> by;
  for (const auto& r : run) by[r.suite] = &r;

  {
    RunConfig one = defaults;
    one.vars = 1;
    auto t1 = std::chrono::steady_clock::now();
    const SuiteResult r1 = gform::suites::run_hkr(one);
    const double secs = seconds_since(t1);
    const SuiteResult& r2 = *by.at("hkr");
    report(1, r1.ok() && r2.ok() && r1.checked > 0 && r2.checked > 0,
           "HKR dims and class ranks, n=1,2: " + std::to_string(r1.checked + r2.checked) + " checks, " +
               std::to_string(r1.failures.size() + r2.failures.size()) + " failures (n=1 in " +
               std::to_string(secs) + " s)");
  }
  {
    const SuiteResult& r = *by.at("braces");
    const std::size_t rand_fail = count_failures(r, "trial", true) + count_failures(r, "sign table", true);
    const std::size_t grid_fail = r.failures.size() - rand_fail;
    const std::size_t triples = r.dims.at("jacobi_triples").get<std::size_t>();
    report(2, grid_fail == 0 && triples > 0,
           "d^2, Jacobi, derivation on the exhaustive grid: " + std::to_string(triples) + " Jacobi triples, " +
               std::to_string(grid_fail) + " failures");
    report(3, rand_fail == 0 && r.dims.at("homotopy_survivors").size() == 1,
           "pre-Jacobi and homotopy on 20 seeded triples, sign table survivors " +
               r.dims.at("homotopy_survivors").dump());
  }
  {
    const SuiteResult& r = *by.at("obstruction");
    bool full = true;
    for (const char* k : {"vff", "vfv"})
      full = full && r.dims.at(k).at("rank") == r.dims.at(k).at("unknowns");
    report(4, r.ok() && full, "obstruction systems at n=3: " + r.dims.dump());
  }
  {
    const SuiteResult& r = *by.at("xi");
    report(5, r.ok() && r.checked > 0,
           "Xi differential, constraint, filtration: " + std::to_string(r.checked) + " checks, " +
               std::to_string(r.failures.size()) + " failures");
  }
  {
    const SuiteResult& r = *by.at("sigma");
    report(6, r.ok() && r.checked > 0,
           "sigma structure constants and chain map: " + std::to_string(r.checked) + " checks, " +
               std::to_string(r.failures.size()) + " failures");
  }
  {
    const SuiteResult& r = *by.at("cobar");
    report(7, r.ok() && r.checked > 0,
           "cobar d^2, nu, eta: " + std::to_string(r.checked) + " checks, " + std::to_string(r.failures.size()) +
               " failures");
  }
  {
    RunConfig h = defaults;
    h.vars = 1;
    h.max_weight = 3;
    h.max_word_len = 3;
    const SuiteResult r = gform::suites::run_harrison(h);
    bool covered = true;
    for (int w = 1; w <= 3; ++w) {
      bool seen = false;
      for (const auto& row : r.dims.at("window"))
        if (row.at("weight") == w) seen = row.at("complete").get<bool>() && row.at("dim_A") == 1;
      covered = covered && seen;
    }
    report(8, r.ok() && covered, "Harrison window n=1 weights 1-3: " + r.dims.at("window").dump());
  }
  {
    const SuiteResult& r = *by.at("witt");
    report(9, r.ok() && r.checked > 0,
           "Lyndon ranks and reconstruction: " + std::to_string(r.checked) + " checks, " +
               std::to_string(r.failures.size()) + " failures");
  }
  {
    const std::string second = gform::suites::run_report(defaults).dump(2);
    report(10, first == second && full_secs < 600.0,
           std::string("repeat run ") + (first == second ? "byte-identical" : "differs") + ", default run " +
               std::to_string(full_secs) + " s");
  }
  return failed == 0 ? 0 : 1;
}
