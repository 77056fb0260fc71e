#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "digest.hpp"
#include "shankslab/arithmetic.hpp"
#include "shankslab/errors.hpp"
#include "shankslab/moments.hpp"
#include "shankslab/parallel.hpp"
#include "shankslab/zeros.hpp"

#ifndef SHANKSLAB_VERSION
#define SHANKSLAB_VERSION "0.0.0"
#endif

namespace shankslab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Bad arguments discovered after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

constexpr const char* kThreadsEnv = "SHANKSLAB_THREADS";
constexpr const char* kDefaultTableName = "zeros.ztbl";
constexpr const char* kStateName = "moments.state";
constexpr std::size_t kMomentBlock = 4096;

struct RunConfig {
  unsigned threads = 0;
  std::uint64_t sieve_limit = kDefaultSieveLimit;
  EvalParams params;
  std::string output_dir = ".";
};

std::string num(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string brief(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", x);
  return buffer;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc{} || result.ptr != end || !std::isfinite(value)) {
    throw UsageError("invalid " + what + " '" + text + "'");
  }
  return value;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_real(part, what));
  if (values.empty()) throw UsageError("empty " + what + " list");
  return values;
}

class Manifest {
 public:
  Manifest(std::string command, const RunConfig& config) : command_(std::move(command)) {
    config_["thread_count"] = config.threads;
    config_["sieve_limit"] = config.sieve_limit;
    config_["em_cutoff_factor"] = config.params.em_cutoff_factor;
    config_["bernoulli_order"] = config.params.bernoulli_order;
    config_["target_abs_error"] = config.params.target_abs_error;
    config_["output_dir"] = config.output_dir;
  }

  template <class V>
  void set(const std::string& key, const V& value) {
    config_[key] = value;
  }
  void input(const fs::path& path) { inputs_[path.string()] = sha256_file(path); }
  void output(const fs::path& path) { outputs_[path.filename().string()] = sha256_file(path); }

  template <class F>
  auto timed(const std::string& stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      Manifest& self;
      const std::string& stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        self.stages_[stage] = self.stages_.value(stage, 0.0) + elapsed.count();
      }
    } record{*this, stage, start};
    return body();
  }

  fs::path write(const fs::path& dir) const {
    json doc;
    doc["command"] = command_;
    doc["tool_version"] = SHANKSLAB_VERSION;
    doc["config"] = config_;
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    doc["stage_seconds"] = stages_;
    std::string name = command_;
    std::replace(name.begin(), name.end(), ' ', '-');
    const fs::path path = dir / (name + ".manifest.json");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
    return path;
  }

 private:
  std::string command_;
  json config_ = json::object();
  json inputs_ = json::object();
  json outputs_ = json::object();
  json stages_ = json::object();
};

fs::path prepare_dir(const std::string& dir) {
  const fs::path path = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create output directory " + path.string());
  return path;
}

ZeroFormat detect_format(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  return (in.gcount() == 4 && std::memcmp(magic, "ZTBL", 4) == 0) ? ZeroFormat::binary
                                                                   : ZeroFormat::plain_text;
}

ZeroFormat format_from(const std::string& name) {
  try {
    return parse_zero_format(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void print_report(std::ostream& out, const ZeroTable& table, const VerificationReport& report) {
  if (report.passed) {
    out << "verification PASS: " << table.size() << " zeros, t_max=" << brief(table.t_max) << ", "
        << report.checkpoints_checked << " checkpoints checked, " << report.checkpoints_skipped
        << " skipped\n";
  } else {
    out << "verification FAIL (" << report.failure_kind << ") at index " << report.failure_index
        << ", height " << brief(report.failure_height) << ": " << report.message << '\n';
  }
}

VerificationReport verify_or_throw(std::ostream& out, const ZeroTable& table, const RunConfig& config,
                                   Manifest& manifest) {
  VerifyOptions options;
  options.threads = config.threads;
  const VerificationReport report =
      manifest.timed("verify", [&] { return verify_table(table, config.params, options); });
  print_report(out, table, report);
  if (!report.passed) throw VerificationFailure("zero table failed verification");
  return report;
}

ZeroTable find_covering(double T, const RunConfig& config, Manifest& manifest) {
  FindOptions options;
  options.threads = config.threads;
  auto K = static_cast<std::size_t>(std::max(1.0, std::round(count_zeros_rvm(std::max(T, 10.0)))));
  return manifest.timed("find", [&] {
    for (;; K += 16) {
      ZeroTable table = find_zeros(K, config.params, options);
      if (table.t_max >= T) return table;
    }
  });
}

// The table named by --table, else the default table in the output
// directory, else (when T is known) a freshly computed one reaching T.
ZeroTable obtain_table(std::ostream& out, const std::string& table_path, double needed_T,
                       const RunConfig& config, Manifest& manifest) {
  fs::path path = table_path;
  if (path.empty()) {
    const fs::path fallback = fs::path(config.output_dir) / kDefaultTableName;
    if (fs::exists(fallback)) {
      path = fallback;
    } else if (needed_T > 0.0) {
      ZeroTable table = find_covering(needed_T, config, manifest);
      out << "computed " << table.size() << " zeros up to t_max=" << brief(table.t_max) << '\n';
      manifest.set("zero_count", table.size());
      verify_or_throw(out, table, config, manifest);
      return table;
    } else {
      throw UsageError("no zero table: pass --table or run 'zeros find' first");
    }
  }
  ZeroTable table = import_zeros(path, detect_format(path));
  manifest.input(path);
  verify_or_throw(out, table, config, manifest);
  return table;
}

void check_height(const ZeroTable& table, double T) {
  if (T > table.t_max) {
    throw UsageError("T = " + brief(T) + " exceeds the zero table range t_max = " +
                     brief(table.t_max));
  }
}

void check_orders(const std::vector<int>& orders, int max_order) {
  if (orders.empty()) throw UsageError("--n needs at least one derivative order");
  for (int n : orders) {
    if (n < 1) {
      throw UsageError("invalid --n " + std::to_string(n) + ": derivative order must be n ≥ 1");
    }
    if (n > max_order) {
      throw UsageError("invalid --n " + std::to_string(n) + ": derivative order must be n ≤ " +
                       std::to_string(max_order));
    }
  }
}

std::ofstream open_report(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_report(std::ofstream& file, const fs::path& path) {
  file.close();
  if (!file) throw IoError("write failed for " + path.string());
}

// ---- zeros ----------------------------------------------------------------

struct ZerosArgs {
  std::size_t count = 0;
  std::string file;
  std::string table;
  std::string format;
};

int zeros_find(std::ostream& out, const RunConfig& config, const ZerosArgs& args) {
  if (args.count < 1) throw UsageError("--count must be >= 1");
  const fs::path dir = prepare_dir(config.output_dir);
  const fs::path path = args.file.empty() ? dir / kDefaultTableName : fs::path(args.file);
  const ZeroFormat format = format_from(args.format.empty() ? "binary" : args.format);

  Manifest manifest("zeros find", config);
  manifest.set("zero_count", args.count);
  FindOptions options;
  options.threads = config.threads;
  const ZeroTable table =
      manifest.timed("find", [&] { return find_zeros(args.count, config.params, options); });
  out << "found " << table.size() << " zeros, gamma_1=" << brief(table.entries.front().gamma)
      << ", gamma_K=" << brief(table.entries.back().gamma) << '\n';
  verify_or_throw(out, table, config, manifest);
  manifest.timed("export", [&] { export_zeros(table, path, format); });
  manifest.output(path);
  manifest.write(path.has_parent_path() ? path.parent_path() : dir);
  out << "wrote " << path.string() << " (" << to_string(format) << ")\n";
  return kExitOk;
}

int zeros_import(std::ostream& out, const RunConfig& config, const ZerosArgs& args) {
  const ZeroFormat format = format_from(args.format.empty() ? "plain-text" : args.format);
  const fs::path dir = prepare_dir(config.output_dir);
  const fs::path target = args.table.empty() ? dir / kDefaultTableName : fs::path(args.table);

  Manifest manifest("zeros import", config);
  const ZeroTable table =
      manifest.timed("import", [&] { return import_zeros(args.file, format); });
  manifest.input(args.file);
  out << "imported " << table.size() << " zeros from " << args.file << '\n';
  if (table.empty()) throw VerificationFailure("imported table is empty");
  verify_or_throw(out, table, config, manifest);
  export_zeros(table, target, ZeroFormat::binary);
  manifest.output(target);
  manifest.write(target.has_parent_path() ? target.parent_path() : dir);
  out << "wrote " << target.string() << " (binary)\n";
  return kExitOk;
}

int zeros_verify(std::ostream& out, const RunConfig& config, const ZerosArgs& args) {
  const fs::path path = args.file;
  const ZeroFormat format = args.format.empty() ? detect_format(path) : format_from(args.format);
  Manifest manifest("zeros verify", config);
  const ZeroTable table = manifest.timed("import", [&] { return import_zeros(path, format); });
  manifest.input(path);
  if (table.empty()) {
    out << "verification FAIL: table is empty\n";
    return kExitVerification;
  }
  VerifyOptions options;
  options.threads = config.threads;
  const VerificationReport report =
      manifest.timed("verify", [&] { return verify_table(table, config.params, options); });
  print_report(out, table, report);
  manifest.set("verification", report.passed ? "pass" : "fail");
  manifest.write(prepare_dir(config.output_dir));
  return report.passed ? kExitOk : kExitVerification;
}

int zeros_export(std::ostream& out, const RunConfig& config, const ZerosArgs& args) {
  const fs::path dir = prepare_dir(config.output_dir);
  const fs::path source = args.table.empty() ? dir / kDefaultTableName : fs::path(args.table);
  const fs::path target = args.file;
  const ZeroFormat format = format_from(args.format);
  Manifest manifest("zeros export", config);
  const ZeroTable table = import_zeros(source, detect_format(source));
  manifest.input(source);
  manifest.timed("export", [&] { export_zeros(table, target, format); });
  manifest.output(target);
  manifest.write(target.has_parent_path() ? target.parent_path() : dir);
  out << "wrote " << table.size() << " zeros to " << target.string() << " (" << to_string(format)
      << ")\n";
  return kExitOk;
}

// ---- moments --------------------------------------------------------------

struct MomentsArgs {
  std::vector<int> orders;
  std::string table;
  std::string checkpoints = "auto";
  std::string out;
  std::size_t max_blocks = 0;
};

// Derivative values are appended block by block to a state file keyed by the
// table digest and evaluation settings, so an interrupted run resumes where
// it stopped. Values per zero do not depend on the blocking.
class MomentState {
 public:
  MomentState(fs::path path, std::string key, int max_order)
      : path_(std::move(path)), key_(std::move(key)), record_(16 * static_cast<std::size_t>(max_order)) {}

  std::vector<ComplexValue> load() {
    std::vector<ComplexValue> values;
    std::ifstream in(path_, std::ios::binary);
    std::string header;
    if (!in || !std::getline(in, header) || header != key_) {
      fresh();
      return values;
    }
    const std::size_t offset = key_.size() + 1;
    const std::size_t size = fs::file_size(path_);
    const std::size_t zeros = (size - offset) / record_;
    values.resize(zeros * record_ / sizeof(ComplexValue));
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(zeros * record_));
    if (static_cast<std::size_t>(in.gcount()) != zeros * record_) {
      fresh();
      return {};
    }
    in.close();
    fs::resize_file(path_, offset + zeros * record_);  // drop a torn final record
    return values;
  }

  void append(const std::vector<ComplexValue>& block) {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size() * sizeof(ComplexValue)));
    if (!out) throw IoError("write failed for " + path_.string());
  }

  void remove() { fs::remove(path_); }

 private:
  void fresh() {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << key_ << '\n';
    if (!out) throw IoError("cannot write " + path_.string());
  }

  fs::path path_;
  std::string key_;
  std::size_t record_;
};

int cmd_moments(std::ostream& out, const RunConfig& config, const MomentsArgs& args) {
  check_orders(args.orders, kMaxMomentOrder);
  const fs::path dir = prepare_dir(args.out.empty() ? config.output_dir : args.out);
  Manifest manifest("moments", config);
  std::vector<int> orders = args.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  const int max_order = orders.back();
  manifest.set("n", orders);

  RunConfig local = config;
  local.output_dir = dir.string();
  const ZeroTable table = obtain_table(out, args.table, 0.0, local, manifest);
  std::vector<double> checkpoints =
      args.checkpoints == "auto" ? auto_checkpoints(table) : parse_reals(args.checkpoints, "checkpoint");
  for (double T : checkpoints) check_height(table, T);
  std::sort(checkpoints.begin(), checkpoints.end());
  manifest.set("checkpoint_list", checkpoints);
  manifest.set("zero_count", table.size());

  std::string key_source = "moments-v1";
  for (const Zero& z : table.entries) key_source += num(z.gamma) + ',';
  key_source += "|" + std::to_string(max_order) + "|" + num(config.params.em_cutoff_factor) + "|" +
                std::to_string(config.params.bernoulli_order) + "|" +
                num(config.params.target_abs_error);
  MomentState state(dir / kStateName, sha256_hex(key_source), max_order);
  std::vector<ComplexValue> raw = state.load();
  const auto stride = static_cast<std::size_t>(max_order);
  std::size_t done = raw.size() / stride;
  if (done > 0) out << "resuming after " << done << " of " << table.size() << " zeros\n";

  std::size_t blocks = 0;
  manifest.timed("derivatives", [&] {
    while (done < table.size() && (args.max_blocks == 0 || blocks < args.max_blocks)) {
      const std::size_t len = std::min(kMomentBlock, table.size() - done);
      const auto block =
          evaluate_derivative_block(table, done, len, max_order, config.params, config.threads);
      state.append(block);
      raw.insert(raw.end(), block.begin(), block.end());
      done += len;
      ++blocks;
    }
  });
  if (done < table.size()) {
    out << "incomplete: " << done << " of " << table.size()
        << " zeros evaluated; rerun the same command to resume\n";
    return kExitIncomplete;
  }

  const ZeroDerivatives values(max_order, std::move(raw));
  const SieveTable sieve(config.sieve_limit);
  const MomentContext context{sieve, laurent_constants(), config.threads};
  for (int n : orders) {
    const MomentSeries series = manifest.timed(
        "series", [&] { return moment_series(n, table, values, checkpoints, context); });
    const fs::path series_path = dir / ("moments_n" + std::to_string(n) + ".csv");
    const fs::path scatter_path = dir / ("scatter_n" + std::to_string(n) + ".csv");
    write_moment_series_csv(series, series_path);
    write_scatter_csv(n, table, values, scatter_path);
    manifest.output(series_path);
    manifest.output(scatter_path);

    const ShanksVerdict verdict = shanks_verdict(n, values, table.size(), config.threads);
    out << "n=" << n << ": mean over " << verdict.count << " zeros = " << brief(verdict.mean.real())
        << (verdict.mean.imag() < 0 ? " - " : " + ") << brief(std::fabs(verdict.mean.imag()))
        << "i, sign " << (verdict.sign_ok ? "OK" : "WRONG")
        << ", im_ratio=" << brief(verdict.im_ratio) << '\n';
  }
  state.remove();
  manifest.write(dir);
  return kExitOk;
}

// ---- landau-gonek, chain, diag --------------------------------------------

struct LandauGonekArgs {
  std::vector<long long> ms;
  std::string table;
  double T = 0.0;
  std::string out;
};

int cmd_landau_gonek(std::ostream& out, const RunConfig& config, const LandauGonekArgs& args) {
  if (args.ms.empty()) throw UsageError("--m needs at least one integer");
  for (long long m : args.ms) {
    if (m < 2) throw UsageError("invalid --m " + std::to_string(m) + ": requires m >= 2");
  }
  const fs::path dir = prepare_dir(args.out.empty() ? config.output_dir : args.out);
  Manifest manifest("landau-gonek", config);
  manifest.set("m", args.ms);
  RunConfig local = config;
  local.output_dir = dir.string();
  const ZeroTable table = obtain_table(out, args.table, args.T, local, manifest);
  const double T = args.T > 0.0 ? args.T : table.t_max;
  check_height(table, T);
  manifest.set("T", T);

  const fs::path path = dir / "landau_gonek.csv";
  std::ofstream csv = open_report(path);
  csv << "m,T,empirical_re,empirical_im,predicted,bound,ratio\n";
  for (long long m : args.ms) {
    const LGReport r = manifest.timed(
        "landau_gonek", [&] { return landau_gonek(static_cast<std::uint64_t>(m), table, T, config.threads); });
    csv << r.m << ',' << num(r.T) << ',' << num(r.empirical.real()) << ',' << num(r.empirical.imag())
        << ',' << num(r.predicted) << ',' << num(r.bound) << ',' << num(r.ratio) << '\n';
    out << "m=" << r.m << ": empirical=" << brief(r.empirical.real()) << "+" << brief(r.empirical.imag())
        << "i predicted=" << brief(r.predicted) << " bound=" << brief(r.bound)
        << " ratio=" << brief(r.ratio) << '\n';
  }
  close_report(csv, path);
  manifest.output(path);
  manifest.write(dir);
  return kExitOk;
}

struct ChainArgs {
  std::vector<int> orders;
  double T = 0.0;
  std::string table;
  std::string out;
  double max_height = 1e4;
  bool allow_expensive = false;
};

int cmd_chain(std::ostream& out, const RunConfig& config, const ChainArgs& args) {
  check_orders(args.orders, 3);
  if (!(args.T >= 2.0)) throw UsageError("--T must be >= 2");
  if (args.T > args.max_height && !args.allow_expensive) {
    throw UsageError("--T " + brief(args.T) + " is above the chain cost limit " +
                     brief(args.max_height) + "; pass --allow-expensive to run anyway");
  }
  const fs::path dir = prepare_dir(args.out.empty() ? config.output_dir : args.out);
  Manifest manifest("chain", config);
  manifest.set("n", args.orders);
  manifest.set("T", args.T);
  RunConfig local = config;
  local.output_dir = dir.string();
  const ZeroTable table = obtain_table(out, args.table, args.T, local, manifest);
  check_height(table, args.T);
  const SieveTable sieve(config.sieve_limit);
  ChainOptions options;
  options.threads = config.threads;
  options.max_height = args.max_height;
  options.allow_expensive = args.allow_expensive;

  const fs::path path = dir / "chain.csv";
  std::ofstream csv = open_report(path);
  csv << "n,T,stage_A_re,stage_A_im,stage_B_re,stage_B_im,stage_C,S_n_re,S_n_im,tail_budget,"
         "dev_A_B,rel_dev_A_B,dev_A_S,dev_C_S,dev_C_A\n";
  for (int n : args.orders) {
    const ChainReport r = manifest.timed(
        "chain", [&] { return heuristic_chain(n, table, args.T, sieve, config.params, options); });
    csv << r.n << ',' << num(r.T) << ',' << num(r.stage_A.real()) << ',' << num(r.stage_A.imag())
        << ',' << num(r.stage_B.real()) << ',' << num(r.stage_B.imag()) << ',' << num(r.stage_C)
        << ',' << num(r.S_n.real()) << ',' << num(r.S_n.imag()) << ',' << num(r.tail_budget) << ','
        << num(r.dev_A_B) << ',' << num(r.rel_dev_A_B) << ',' << num(r.dev_A_S) << ','
        << num(r.dev_C_S) << ',' << num(r.dev_C_A) << '\n';
    out << "n=" << r.n << " T=" << brief(r.T) << ": A=" << brief(r.stage_A.real())
        << " B=" << brief(r.stage_B.real()) << " C=" << brief(r.stage_C)
        << " S=" << brief(r.S_n.real()) << " |A-B|/|A|=" << brief(r.rel_dev_A_B)
        << " |A-S|=" << brief(r.dev_A_S) << " tail_budget=" << brief(r.tail_budget) << '\n';
  }
  close_report(csv, path);
  manifest.output(path);
  manifest.write(dir);
  return kExitOk;
}

struct DiagArgs {
  std::vector<int> orders;
  std::string heights;
  std::string out;
};

int cmd_diag(std::ostream& out, const RunConfig& config, const DiagArgs& args) {
  check_orders(args.orders, kMaxDerivativeOrder);
  const std::vector<double> heights = parse_reals(args.heights, "--T value");
  for (double T : heights) {
    if (!(T >= 3.0) || T > 1e7) throw UsageError("--T values must lie in [3, 1e7]");
  }
  const fs::path dir = prepare_dir(args.out.empty() ? config.output_dir : args.out);
  Manifest manifest("diag", config);
  manifest.set("n", args.orders);
  manifest.set("T", heights);

  const fs::path path = dir / "diag.csv";
  std::ofstream csv = open_report(path);
  csv << "n,T,bound,leading,ratio\n";
  for (int n : args.orders) {
    for (double T : heights) {
      const double bound = error_bound_diag(n, T);
      const double leading = leading_term(n, T);
      const double ratio = bound / std::fabs(leading);
      csv << n << ',' << num(T) << ',' << num(bound) << ',' << num(leading) << ',' << num(ratio)
          << '\n';
      out << "n=" << n << " T=" << brief(T) << ": bound/|leading| = " << brief(ratio)
          << (ratio > 1.0 ? " (bound dominates)" : "") << '\n';
    }
  }
  close_report(csv, path);
  manifest.output(path);
  manifest.write(dir);
  return kExitOk;
}

bool flag_given(int argc, const char* const* argv, const std::string& name) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == name || arg.rfind(name + "=", 0) == 0) return true;
  }
  return false;
}

unsigned threads_from_env(unsigned fallback) {
  const char* value = std::getenv(kThreadsEnv);
  if (value == nullptr || *value == '\0') return fallback;
  unsigned threads = 0;
  const char* end = value + std::strlen(value);
  const auto result = std::from_chars(value, end, threads);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw UsageError(std::string(kThreadsEnv) + " must be a non-negative integer, got '" + value + "'");
  }
  return threads;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros of zeta, derivatives at the zeros, and their discrete moments", "shankslab"};
  app.set_version_flag("--version", SHANKSLAB_VERSION);
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  RunConfig config;
  app.add_option("-j,--threads", config.threads,
                 "Worker threads, 0 = all hardware threads (env SHANKSLAB_THREADS)");
  app.add_option("--sieve-limit", config.sieve_limit, "Largest m in the von Mangoldt table")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}));
  app.add_option("--em-cutoff-factor", config.params.em_cutoff_factor,
                 "Euler-Maclaurin cutoff multiplier on |t|/2pi");
  app.add_option("--bernoulli-order", config.params.bernoulli_order,
                 "Number of Euler-Maclaurin correction terms");
  app.add_option("--target-abs-error", config.params.target_abs_error,
                 "Requested absolute accuracy of one evaluation");
  app.add_option("--output-dir", config.output_dir, "Directory for tables, reports and manifests");

  // zeros
  ZerosArgs zargs;
  auto* zeros = app.add_subcommand("zeros", "Compute, import, verify or export zero tables");
  zeros->require_subcommand(1);
  auto* find = zeros->add_subcommand("find", "Compute the first K zeros");
  find->add_option("--count", zargs.count, "Number of zeros K")->required();
  find->add_option("--file", zargs.file, "Output table (default OUTPUT_DIR/zeros.ztbl)");
  find->add_option("--format", zargs.format, "binary (default) or plain-text");
  auto* import = zeros->add_subcommand("import", "Import and verify a table");
  import->add_option("--file", zargs.file, "Input table")->required()->check(CLI::ExistingFile);
  import->add_option("--format", zargs.format, "plain-text (default) or binary");
  import->add_option("--table", zargs.table, "Where to store it (default OUTPUT_DIR/zeros.ztbl)");
  auto* verify = zeros->add_subcommand("verify", "Verify a table");
  verify->add_option("--file", zargs.file, "Table to verify")->required()->check(CLI::ExistingFile);
  verify->add_option("--format", zargs.format, "Format, detected from the content by default");
  auto* exporter = zeros->add_subcommand("export", "Write a stored table in another format");
  exporter->add_option("--table", zargs.table, "Source table (default OUTPUT_DIR/zeros.ztbl)");
  exporter->add_option("--file", zargs.file, "Output file")->required();
  exporter->add_option("--format", zargs.format, "plain-text or binary")->required();

  // moments
  MomentsArgs margs;
  auto* moments = app.add_subcommand("moments", "Discrete moments of zeta^(n) over the zeros");
  moments->add_option("--n", margs.orders, "Derivative orders, e.g. 1,2,3")->required()->delimiter(',');
  moments->add_option("--table", margs.table, "Zero table (default OUTPUT_DIR/zeros.ztbl)");
  moments->add_option("--checkpoints", margs.checkpoints, "Comma-separated heights or 'auto'");
  moments->add_option("--out", margs.out, "Output directory (default OUTPUT_DIR)");
  moments->add_option("--max-blocks", margs.max_blocks,
                      "Stop after this many blocks of 4096 zeros (0 = no limit)");

  LandauGonekArgs largs;
  auto* lg = app.add_subcommand("landau-gonek", "Sums of m^{-rho} over zeros against prediction");
  lg->add_option("--m", largs.ms, "Integers m >= 2, e.g. 2,3,4")->required()->delimiter(',');
  lg->add_option("--table", largs.table, "Zero table (default OUTPUT_DIR/zeros.ztbl)");
  lg->add_option("--T", largs.T, "Height (default t_max of the table)");
  lg->add_option("--out", largs.out, "Output directory (default OUTPUT_DIR)");

  ChainArgs cargs;
  auto* chain = app.add_subcommand("chain", "Replay the truncated-series chain at one height");
  chain->add_option("--n", cargs.orders, "Derivative orders in 1..3")->required()->delimiter(',');
  chain->add_option("--T", cargs.T, "Height")->required();
  chain->add_option("--table", cargs.table,
                    "Zero table (default OUTPUT_DIR/zeros.ztbl, else computed)");
  chain->add_option("--out", cargs.out, "Output directory (default OUTPUT_DIR)");
  chain->add_option("--max-height", cargs.max_height, "Cost limit on T");
  chain->add_flag("--allow-expensive", cargs.allow_expensive, "Ignore the cost limit");

  DiagArgs dargs;
  auto* diag = app.add_subcommand("diag", "Size of the summed error bound against the main term");
  diag->add_option("--n", dargs.orders, "Derivative orders")->required()->delimiter(',');
  diag->add_option("--T", dargs.heights, "Comma-separated heights")->required();
  diag->add_option("--out", dargs.out, "Output directory (default OUTPUT_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!flag_given(argc, argv, "--threads") && !flag_given(argc, argv, "-j")) {
      config.threads = threads_from_env(config.threads);
    }
    try {
      config.params.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }

    if (find->parsed()) return zeros_find(out, config, zargs);
    if (import->parsed()) return zeros_import(out, config, zargs);
    if (verify->parsed()) return zeros_verify(out, config, zargs);
    if (exporter->parsed()) return zeros_export(out, config, zargs);
    if (moments->parsed()) return cmd_moments(out, config, margs);
    if (lg->parsed()) return cmd_landau_gonek(out, config, largs);
    if (chain->parsed()) return cmd_chain(out, config, cargs);
    if (diag->parsed()) return cmd_diag(out, config, dargs);
    err << "error: no command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const MissedZeroError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SieveLimitError& e) {
    err << "usage error: " << e.what() << " (raise --sieve-limit)\n";
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("shankslab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace shankslab::cli
