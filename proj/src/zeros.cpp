#include "shankslab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "shankslab/errors.hpp"
#include "shankslab/parallel.hpp"

namespace shankslab {

namespace {

constexpr double kPi = std::numbers::pi;

// Principal branch of Lambert W for z > 0.
double lambert_w(double z) {
  double w = std::log1p(z);
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(w))) break;
  }
  return w;
}

// Gram indices start at -1; g_{-1} is replaced by t = 10, below the first
// zero, where Z < 0 as a good Gram point of index -1 would require.
constexpr double kScanStart = 10.0;

struct GramScan {
  std::vector<double> points;  // points[k + 1] = g_k
  std::vector<double> values;  // Z at those points

  double point(std::int64_t k) const { return points[static_cast<std::size_t>(k + 1)]; }
  double value(std::int64_t k) const { return values[static_cast<std::size_t>(k + 1)]; }
  std::int64_t last_index() const { return static_cast<std::int64_t>(points.size()) - 2; }
};

bool is_good_gram(std::int64_t k, double z) { return (k % 2 == 0) ? z > 0.0 : z < 0.0; }

bool sign_differs(double a, double b) { return (a > 0.0) != (b > 0.0); }

void extend_scan(GramScan& scan, std::int64_t new_last, const EvalParams& params, unsigned threads) {
  const std::size_t old_size = scan.points.size();
  const std::size_t new_size = static_cast<std::size_t>(new_last + 2);
  if (new_size <= old_size) return;
  scan.points.resize(new_size);
  scan.values.resize(new_size);
  for (std::size_t i = old_size; i < new_size; ++i) {
    const std::int64_t k = static_cast<std::int64_t>(i) - 1;
    scan.points[i] = k < 0 ? kScanStart : gram_point(k);
    if (scan.points[i] > kMaxHeight) {
      throw DomainError("find_zeros: the scan would exceed the supported height 1.2e5");
    }
  }
  parallel_for(new_size - old_size, threads, [&](std::size_t j) {
    const std::size_t i = old_size + j;
    scan.values[i] = hardy_z(scan.points[i], params);
  });
}

struct Sample {
  double t;
  double z;
};

struct FoundZero {
  double gamma;
  double residual;
};

std::string describe_block(double a, double b) {
  std::ostringstream out;
  out.precision(12);
  out << "[" << a << ", " << b << "]";
  return out.str();
}

std::size_t count_sign_changes(const std::vector<Sample>& samples) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (sign_differs(samples[i - 1].z, samples[i].z)) ++changes;
  }
  return changes;
}

// Zeros in the Gram block between good Gram points first < last.
std::vector<FoundZero> solve_block(const GramScan& scan, std::int64_t first, std::int64_t last,
                                   const EvalParams& params, const FindOptions& options) {
  const auto expected = static_cast<std::size_t>(last - first);
  auto z = [&](double t) { return hardy_z(t, params); };

  std::vector<Sample> samples;
  for (std::int64_t k = first; k <= last; ++k) {
    samples.push_back({scan.point(k), scan.value(k)});
    if (k < last && options.scan_points_per_gram > 1) {
      const double a = scan.point(k);
      const double b = scan.point(k + 1);
      for (int j = 1; j < options.scan_points_per_gram; ++j) {
        const double t = a + (b - a) * j / options.scan_points_per_gram;
        samples.push_back({t, z(t)});
      }
    }
  }

  const double start = scan.point(first);
  const double end = scan.point(last);
  static constexpr int kLevels[] = {8, 16, 64, 256, 1024};
  std::size_t changes = count_sign_changes(samples);
  for (int level : kLevels) {
    if (changes >= expected) break;
    if (static_cast<std::size_t>(level) < samples.size()) continue;
    std::vector<Sample> refined;
    refined.reserve(samples.size() + static_cast<std::size_t>(level));
    std::size_t next = 0;
    for (int j = 0; j <= level; ++j) {
      const double t = (j == level) ? end : start + (end - start) * j / level;
      while (next < samples.size() && samples[next].t <= t) refined.push_back(samples[next++]);
      if (refined.back().t != t) refined.push_back({t, z(t)});
    }
    samples.swap(refined);
    changes = count_sign_changes(samples);
  }
  if (changes != expected) {
    throw MissedZeroError("find_zeros: Gram block " + describe_block(start, end) + " (indices " +
                              std::to_string(first) + ".." + std::to_string(last) + ") has " +
                              std::to_string(changes) + " sign changes, expected " +
                              std::to_string(expected),
                          start, end);
  }

  std::vector<FoundZero> found;
  found.reserve(expected);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Sample& a = samples[i - 1];
    const Sample& b = samples[i];
    if (!sign_differs(a.z, b.z)) continue;
    const RootBracket root = refine_root(z, a.t, b.t, a.z, b.z, options.bracket_width);
    const double residual = std::fabs(root.f_root);
    if (!(residual <= options.residual_tolerance)) {
      throw ConsistencyError("find_zeros: residual " + std::to_string(residual) + " at t = " +
                             std::to_string(root.root) + " exceeds tolerance");
    }
    found.push_back({root.root, residual});
  }
  return found;
}

}  // namespace

std::size_t ZeroTable::count_upto(double T) const {
  const auto it = std::upper_bound(entries.begin(), entries.end(), T,
                                   [](double value, const Zero& z) { return value < z.gamma; });
  return static_cast<std::size_t>(it - entries.begin());
}

std::vector<double> ZeroTable::gammas() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const Zero& z : entries) out.push_back(z.gamma);
  return out;
}

double count_zeros_rvm(double T) { return theta(T) / kPi + 1.0; }

double gram_point(std::int64_t k) {
  if (k < 0) throw DomainError("gram_point: index must be >= 0");
  const double a = static_cast<double>(k) + 0.125;
  double t = 2.0 * kPi * a / lambert_w(a / std::numbers::e);
  const double target = kPi * static_cast<double>(k);
  for (int i = 0; i < 20; ++i) {
    const double step = (theta_series(t) - target) / theta_derivative(t);
    t -= step;
    if (std::fabs(step) <= 1e-13 * t) break;
  }
  return t;
}

ZeroTable find_zeros(std::size_t K, const EvalParams& params, const FindOptions& options) {
  if (K < 1) throw DomainError("find_zeros: K must be >= 1");
  if (options.scan_points_per_gram < 1) {
    throw DomainError("find_zeros: scan_points_per_gram must be >= 1");
  }
  params.validate();
  const unsigned threads = resolve_threads(options.threads);
  const auto target = static_cast<std::int64_t>(K);

  GramScan scan;
  extend_scan(scan, target + 16, params, threads);
  if (!(scan.value(-1) < 0.0)) throw ConsistencyError("find_zeros: Z(10) is not negative");

  // Good Gram points up to the first one with index >= K; N(g_k) = k + 1
  // there, so the blocks below it hold at least K + 1 zeros.
  std::vector<std::int64_t> good;
  for (;;) {
    good.clear();
    for (std::int64_t k = -1; k <= scan.last_index(); ++k) {
      if (k == -1 || is_good_gram(k, scan.value(k))) {
        good.push_back(k);
        if (k >= target) break;
      }
    }
    if (good.back() >= target) break;
    extend_scan(scan, scan.last_index() + 64, params, threads);
  }

  std::vector<std::vector<FoundZero>> per_block(good.size() - 1);
  parallel_for(per_block.size(), threads, [&](std::size_t b) {
    per_block[b] = solve_block(scan, good[b], good[b + 1], params, options);
  });

  std::vector<FoundZero> all;
  for (auto& block : per_block) all.insert(all.end(), block.begin(), block.end());
  if (all.size() < K + 1) throw ConsistencyError("find_zeros: scan ended with too few zeros");

  ZeroTable table;
  table.entries.reserve(K);
  for (std::size_t i = 0; i < K; ++i) {
    table.entries.push_back({i + 1, all[i].gamma, all[i].residual, ZeroSource::computed});
  }
  table.t_max = 0.5 * (all[K - 1].gamma + all[K].gamma);
  return table;
}

VerificationReport verify_table(const ZeroTable& table, const EvalParams& params,
                                const VerifyOptions& options) {
  VerificationReport report;
  auto fail = [&](std::string kind, std::size_t index, double height, std::string message) {
    report.passed = false;
    report.failure_kind = std::move(kind);
    report.failure_index = index;
    report.failure_height = height;
    report.message = std::move(message);
    return report;
  };

  if (table.empty()) return fail("range", 0, 0.0, "empty table");
  const auto& entries = table.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index != i + 1) {
      return fail("index", i + 1, entries[i].gamma,
                  "entry " + std::to_string(i + 1) + " carries index " +
                      std::to_string(entries[i].index));
    }
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!(entries[i].gamma > entries[i - 1].gamma)) {
      return fail("monotonicity", i + 1, entries[i].gamma,
                  "ordinate " + std::to_string(i + 1) + " is not above its predecessor");
    }
  }
  if (!(entries.front().gamma > 14.0)) {
    return fail("range", 1, entries.front().gamma, "first ordinate is not above 14");
  }
  if (!(entries.back().gamma <= table.t_max) || !(table.t_max <= kMaxHeight)) {
    return fail("range", entries.size(), table.t_max, "t_max inconsistent with the ordinates");
  }

  const unsigned threads = resolve_threads(options.threads);
  std::vector<double> residuals(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    const Zero& z = entries[i];
    residuals[i] = (z.source == ZeroSource::computed && z.residual)
                       ? *z.residual
                       : std::fabs(hardy_z(z.gamma, params));
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(residuals[i] <= options.residual_tolerance)) {
      return fail("residual", i + 1, entries[i].gamma,
                  "|Z(gamma)| = " + std::to_string(residuals[i]) + " at entry " +
                      std::to_string(i + 1));
    }
  }

  // Checkpoint ladder in Gram indices.
  std::set<std::int64_t> targets;
  for (std::int64_t decade = 1; decade <= 100000000; decade *= 10) {
    for (std::int64_t m : {1, 2, 5}) targets.insert(m * decade);
  }
  for (std::int64_t k = options.checkpoint_stride; options.checkpoint_stride > 0; k += options.checkpoint_stride) {
    if (gram_point(k) > table.t_max) break;
    targets.insert(k);
  }
  std::vector<std::int64_t> ladder;
  for (std::int64_t k : targets) {
    if (gram_point(k) <= table.t_max) ladder.push_back(k);
  }

  struct Outcome {
    bool checked = false;
    std::size_t skipped = 0;
    std::int64_t gram_index = 0;
    double height = 0.0;
    std::size_t found = 0;
    std::int64_t expected = 0;
  };
  std::vector<Outcome> outcomes(ladder.size());
  parallel_for(ladder.size(), threads, [&](std::size_t i) {
    Outcome& out = outcomes[i];
    for (std::int64_t k = ladder[i]; k < ladder[i] + 32; ++k) {
      const double g = gram_point(k);
      if (g > table.t_max) break;
      const std::size_t below = table.count_upto(g);
      double distance = std::numeric_limits<double>::infinity();
      if (below > 0) distance = std::min(distance, g - entries[below - 1].gamma);
      if (below < entries.size()) distance = std::min(distance, entries[below].gamma - g);
      if (distance < options.ambiguity_margin || !is_good_gram(k, hardy_z(g, params))) {
        ++out.skipped;
        continue;
      }
      out.checked = true;
      out.gram_index = k;
      out.height = g;
      out.found = below;
      out.expected = std::llround(count_zeros_rvm(g));
      return;
    }
  });
  for (const Outcome& out : outcomes) {
    report.checkpoints_skipped += out.skipped;
    if (!out.checked) continue;
    ++report.checkpoints_checked;
    if (static_cast<std::int64_t>(out.found) != out.expected) {
      std::ostringstream message;
      message.precision(12);
      message << "count mismatch at Gram point g_" << out.gram_index << " = " << out.height
              << ": table has " << out.found << " ordinates, theta/pi + 1 rounds to "
              << out.expected;
      return fail("count", static_cast<std::size_t>(out.gram_index), out.height, message.str());
    }
  }
  return report;
}

}  // namespace shankslab
