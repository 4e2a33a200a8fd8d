#include "gform/suites.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using gform::suites::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"gform: exact checks for the polyvector / Hochschild formality chain"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--vars", cfg.vars, "number of variables")->check(CLI::Range(1, 4));
  verify->add_option("--max-weight", cfg.max_weight, "weight cap")->check(CLI::Range(0, 8));
  verify->add_option("--max-arity", cfg.max_arity, "cochain arity cap")->check(CLI::Range(0, 6));
  verify->add_option("--max-factors", cfg.max_factors, "symmetric factors per Xi monomial")->check(CLI::Range(1, 6));
  verify->add_option("--max-word-len", cfg.max_word_len, "letters per word")->check(CLI::Range(1, 6));
  verify->add_option("--max-coef-deg", cfg.max_coef_deg, "total coefficient degree")->check(CLI::Range(0, 6));
  verify->add_option("--seed", cfg.seed, "seed for randomized checks");
  verify->add_option("--suite", cfg.suites, "suite to run (repeatable, default all)")
      ->check(CLI::IsMember(gform::suites::suite_names()));
  verify->add_option("--json", json_path, "write the JSON report to PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::vector<gform::suites::SuiteResult> results;
    const auto t0 = std::chrono::steady_clock::now();
    const nlohmann::json report = gform::suites::run_report(cfg, &results);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "cannot write " << json_path << "\n";
        return 2;
      }
      out << report.dump(2) << "\n";
    }

    bool ok = true;
    for (const auto& r : results) {
      std::cout << (r.ok() ? "ok   " : "FAIL ") << r.suite << "  checked=" << r.checked
                << " failures=" << r.failures.size() << "\n";
      for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) std::cout << "       " << r.failures[i] << "\n";
      ok = ok && r.ok();
    }
    std::cerr << "elapsed " << secs << " s\n";
    return ok ? 0 : 1;
  } catch (const gform::InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
