// Full-scale acceptance run at 100,000 zeros. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fails. The zero table is cached in
// --cache-dir and re-verified on every run.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "digest.hpp"
#include "oracle.hpp"
#include "shankslab/analytic.hpp"
#include "shankslab/arithmetic.hpp"
#include "shankslab/moments.hpp"
#include "shankslab/zeros.hpp"

namespace fs = std::filesystem;
using namespace shankslab;

namespace {

constexpr std::size_t kZeros = 100'000;

struct Criterion {
  std::string name;
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    notes.push_back((ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* format, auto... values) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, values...);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ZeroTable load_or_compute(const fs::path& path, unsigned threads) {
  if (fs::exists(path)) {
    ZeroTable table = import_zeros(path, ZeroFormat::binary);
    if (table.size() == kZeros) {
      std::cerr << "using cached table " << path << '\n';
      return table;
    }
  }
  std::cerr << "computing " << kZeros << " zeros (cached afterwards in " << path << ")\n";
  FindOptions options;
  options.threads = threads;
  ZeroTable table = find_zeros(kZeros, {}, options);
  fs::create_directories(path.parent_path());
  export_zeros(table, path, ZeroFormat::binary);
  return table;
}

Criterion engine_correctness() {
  Criterion c{"engine correctness"};
  const double z2 = zeta_em({2.0, 0.0}).real();
  c.check(std::fabs(z2 - std::numbers::pi * std::numbers::pi / 6) <= 1e-12,
          fmt("zeta(2) - pi^2/6 = %.3e (tol 1e-12)", z2 - std::numbers::pi * std::numbers::pi / 6));
  const double d2 = zeta_deriv_em({2.0, 0.0}, 1).real();
  const double d2_oracle = oracle::zeta_prime_at_2(10'000'000);
  c.check(std::fabs(d2 - d2_oracle) <= 1e-10 && std::fabs(d2 + 0.9375482543) <= 1e-10,
          fmt("zeta'(2) = %.12f, direct series %.12f (tol 1e-10)", d2, d2_oracle));
  double worst = 0.0;
  for (double t : {100.0, 1000.0, 10000.0}) {
    for (int n = 0; n <= 4; ++n) {
      const ComplexValue s{0.5, t};
      worst = std::max(worst, std::abs(zeta_deriv_em(s, n) - zeta_deriv_cauchy(s, n, 0.45, 128)));
    }
  }
  c.check(worst <= 1e-8, fmt("max |EM - Cauchy| over n <= 4, t in {1e2,1e3,1e4} = %.3e (tol 1e-8)", worst));
  return c;
}

Criterion zero_table(const ZeroTable& table, unsigned threads) {
  Criterion c{"zero table"};
  double worst = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const double g = table.entries[i].gamma;
    const double lo = i == 0 ? g - 0.5 : 0.5 * (table.entries[i - 1].gamma + g);
    const double hi = 0.5 * (g + table.entries[i + 1].gamma);
    worst = std::max(worst, std::fabs(g - oracle::bisect_zero(lo, hi)));
  }
  c.check(worst <= 1e-9, fmt("first 100 ordinates vs quad bisection: max error %.3e (tol 1e-9)", worst));
  VerifyOptions options;
  options.threads = threads;
  const VerificationReport report = verify_table(table, {}, options);
  c.check(report.passed, report.passed ? fmt("verify_table K=%zu passed", table.size())
                                       : "verify_table failed: " + report.failure_kind + ": " + report.message);
  c.check(report.passed && report.checkpoints_checked > 100,
          fmt("zero counts match round(theta/pi + 1) at %zu checkpoints (%zu ambiguous skipped)",
              report.checkpoints_checked, report.checkpoints_skipped));
  return c;
}

Criterion shanks_n1(const ZeroDerivatives& values) {
  Criterion c{"Shanks n=1"};
  const ShanksVerdict v = shanks_verdict(1, values, kZeros);
  c.check(v.mean.real() > 0.0, fmt("Re mean zeta'(rho) = %.6f > 0", v.mean.real()));
  c.check(std::fabs(v.mean.imag()) <= 0.05 * v.mean.real(),
          fmt("|Im mean| / Re mean = %.3e (tol 0.05)", v.im_ratio));
  return c;
}

Criterion fujii_agreement(const ZeroTable& table, const ZeroDerivatives& values) {
  Criterion c{"Fujii agreement"};
  const double T = table.entries[kZeros - 1].gamma;
  const double s1 = sum_derivatives(values, 1, kZeros).real();
  const double fujii = fujii_prediction(T, laurent_constants());
  const double leading = leading_term(1, T);
  c.check(std::fabs(s1 / fujii - 1) <= 0.02,
          fmt("T=gamma_100000=%.4f: S1/fujii - 1 = %.3e (tol 0.02)", T, s1 / fujii - 1));
  c.check(std::fabs(s1 / leading - 1) <= 0.15, fmt("S1/leading - 1 = %.3e (tol 0.15)", s1 / leading - 1));
  return c;
}

Criterion generalised_shanks(const std::vector<MomentSeries>& series) {
  Criterion c{"generalised Shanks n=2,3"};
  for (int n = 2; n <= 3; ++n) {
    const MomentSeries& s = series[static_cast<std::size_t>(n - 1)];
    const double expected = n % 2 == 1 ? 1.0 : -1.0;
    std::size_t checked = 0, good = 0;
    for (const MomentCheckpoint& p : s.checkpoints) {
      if (p.T < 100.0) continue;
      ++checked;
      if (p.empirical.real() * expected > 0) ++good;
    }
    c.check(checked > 0 && good == checked, fmt("n=%d: sign (-1)^(n+1) at %zu/%zu auto checkpoints", n, good, checked));
    const MomentCheckpoint& end = s.checkpoints.back();
    const double rel = end.empirical.real() / end.leading - 1;
    c.check(std::fabs(rel) <= 0.4, fmt("n=%d: S_n/leading - 1 = %.3e at T=%.4f (tol 0.4)", n, rel, end.T));
  }
  return c;
}

Criterion true_value_oracle(const std::vector<MomentSeries>& series) {
  Criterion c{"true-value oracle"};
  for (const MomentSeries& s : series) {
    const MomentCheckpoint& end = s.checkpoints.back();
    const double rel = std::fabs(end.residual_true) / std::fabs(end.leading);
    c.check(rel <= 0.02, fmt("n=%d: |Re S_n - (-1)^(n+1) D_n| / |leading| = %.3e (tol 0.02)", s.n, rel));
  }
  return c;
}

Criterion landau_gonek_check(const ZeroTable& table, unsigned threads) {
  Criterion c{"Landau-Gonek"};
  const double T = table.entries[kZeros - 1].gamma;
  for (std::uint64_t m : {2, 3, 4, 5, 7, 8, 9}) {
    const LGReport r = landau_gonek(m, table, T, threads);
    c.check(r.ratio <= 10.0, fmt("m=%llu: |emp - pred| / bound = %.3f (tol 10)", static_cast<unsigned long long>(m), r.ratio));
  }
  for (std::uint64_t m : {6, 10, 12}) {
    const LGReport r = landau_gonek(m, table, T, threads);
    const double ratio = std::abs(r.empirical) / r.bound;
    c.check(r.predicted == 0.0 && ratio <= 10.0,
            fmt("m=%llu: predicted 0, |emp| / bound = %.3f (tol 10)", static_cast<unsigned long long>(m), ratio));
  }
  return c;
}

Criterion heuristic_chain_check(const ZeroTable& table, unsigned threads) {
  Criterion c{"heuristic chain"};
  const SieveTable sieve;
  ChainOptions options;
  options.threads = threads;
  for (int n = 1; n <= 3; ++n) {
    const ChainReport r = heuristic_chain(n, table, 1000.0, sieve, {}, options);
    c.check(r.rel_dev_A_B <= 1e-9, fmt("n=%d T=1e3: |A - B| / |A| = %.3e (tol 1e-9)", n, r.rel_dev_A_B));
    c.check(r.dev_A_S <= r.tail_budget,
            fmt("n=%d T=1e3: |A - S_n| = %.4g within tail budget %.4g", n, r.dev_A_S, r.tail_budget));
  }
  for (int n = 1; n <= 3; ++n) {
    for (double T : {1e3, 1e4, 1e5}) {
      const double ratio = error_bound_diag(n, T) / std::fabs(leading_term(n, T));
      c.check(ratio > 1.0, fmt("n=%d T=%.0e: diag bound / |leading| = %.2f > 1", n, T, ratio));
    }
  }
  return c;
}

// Runs the command line tool in-process and returns the digests of the CSVs
// it wrote.
std::string cli_digests(const fs::path& table_path, const fs::path& dir, unsigned threads,
                        std::string& failure) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string j = std::to_string(threads);
  const std::string table = table_path.string();
  const std::string out = dir.string();
  const std::vector<std::vector<std::string>> commands = {
      {"-j", j, "moments", "--n", "1,2,3", "--table", table, "--checkpoints", "auto", "--out", out},
      {"-j", j, "landau-gonek", "--m", "2,3,4,5,6,7,8,9,10,12", "--table", table, "--out", out},
      {"-j", j, "chain", "--n", "1,2,3", "--T", "1000", "--table", table, "--out", out},
      {"-j", j, "diag", "--n", "1,2,3", "--T", "1000,10000,100000", "--out", out},
  };
  for (const auto& args : commands) {
    std::ostringstream sink, err;
    const int code = cli::run(args, sink, err);
    if (code != 0) {
      failure = args[2] + " exited " + std::to_string(code) + ": " + err.str();
      return {};
    }
  }
  std::string all;
  for (const char* name : {"moments_n1.csv", "moments_n2.csv", "moments_n3.csv", "scatter_n1.csv",
                           "scatter_n2.csv", "scatter_n3.csv", "landau_gonek.csv", "chain.csv", "diag.csv"}) {
    all += std::string(name) + ":" + cli::sha256_file(dir / name) + "\n";
  }
  return all;
}

Criterion determinism(const fs::path& table_path, const fs::path& work) {
  Criterion c{"determinism"};
  const unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
  std::string reference;
  for (unsigned threads : {1u, 4u, max_threads}) {
    std::string failure;
    const std::string digests = cli_digests(table_path, work / ("threads_" + std::to_string(threads)), threads, failure);
    if (!failure.empty()) {
      c.check(false, fmt("threads=%u: ", threads) + failure);
      continue;
    }
    if (reference.empty()) {
      reference = digests;
      c.check(true, fmt("threads=%u: 9 CSV digests recorded", threads));
    } else {
      c.check(digests == reference, fmt("threads=%u: CSV digests %s", threads,
                                        digests == reference ? "identical" : "DIFFER"));
    }
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run at 100,000 zeros"};
  fs::path cache_dir = "acceptance_cache";
  unsigned threads = 0;
  bool verbose = false;
  app.add_option("--cache-dir", cache_dir, "Where the zero table and CLI outputs are kept");
  app.add_option("-j,--threads", threads, "Worker threads for the library-level checks");
  app.add_flag("-v,--verbose", verbose, "Print every individual check");
  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  std::vector<Criterion> results;
  try {
    results.push_back(engine_correctness());
    const fs::path table_path = cache_dir / "zeros_100k.ztbl";
    const ZeroTable table = load_or_compute(table_path, threads);
    results.push_back(zero_table(table, threads));
    std::cerr << "evaluating derivatives at " << kZeros << " zeros (" << seconds_since(start) << " s so far)\n";
    const ZeroDerivatives values = evaluate_derivatives(table, kZeros, 3, {}, threads);
    results.push_back(shanks_n1(values));
    results.push_back(fujii_agreement(table, values));
    const SieveTable sieve;
    const MomentContext context{sieve, laurent_constants(), threads};
    std::vector<MomentSeries> series;
    for (int n = 1; n <= 3; ++n) series.push_back(moment_series(n, table, values, auto_checkpoints(table), context));
    results.push_back(generalised_shanks(series));
    results.push_back(true_value_oracle(series));
    results.push_back(landau_gonek_check(table, threads));
    results.push_back(heuristic_chain_check(table, threads));
    std::cerr << "determinism runs (" << seconds_since(start) << " s so far)\n";
    results.push_back(determinism(table_path, cache_dir / "runs"));
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance run aborted: " << e.what() << '\n';
    return 1;
  }

  bool all = true;
  for (const Criterion& c : results) {
    all = all && c.passed;
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << '\n';
    for (const std::string& note : c.notes) {
      if (verbose || !c.passed) std::cout << "        " << note << '\n';
    }
  }
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << fmt(" (%.0f s)", seconds_since(start))
            << '\n';
  return all ? 0 : 1;
}
