#include "shankslab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "phase_kernel.hpp"
#include "shankslab/errors.hpp"
#include "shankslab/parallel.hpp"
#include "shankslab/summation.hpp"

namespace shankslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_moment_order(int n) {
  if (n < 1 || n > kMaxMomentOrder) {
    throw DomainError("moments: derivative order " + std::to_string(n) + " outside [1, 5]");
  }
}

void check_height(const ZeroTable& table, double T) {
  if (!(T <= table.t_max)) {
    throw RangeError("moments: T = " + std::to_string(T) + " exceeds the table range t_max = " +
                     std::to_string(table.t_max));
  }
}

double sign_for(int n) { return (n % 2 == 1) ? 1.0 : -1.0; }  // (-1)^{n+1}

std::string csv_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

ZeroDerivatives::ZeroDerivatives(int max_order, std::vector<ComplexValue> values)
    : max_order_(max_order), values_(std::move(values)) {
  if (max_order < 1 || max_order > kMaxDerivativeOrder) {
    throw DomainError("ZeroDerivatives: max_order out of range");
  }
  if (values_.size() % static_cast<std::size_t>(max_order) != 0) {
    throw DomainError("ZeroDerivatives: value count is not a multiple of max_order");
  }
}

std::size_t ZeroDerivatives::count() const noexcept {
  return max_order_ == 0 ? 0 : values_.size() / static_cast<std::size_t>(max_order_);
}

ComplexValue ZeroDerivatives::at(std::size_t zero, int n) const {
  if (n < 1 || n > max_order_) throw DomainError("ZeroDerivatives: order not evaluated");
  if (zero >= count()) throw RangeError("ZeroDerivatives: zero index beyond evaluated range");
  return values_[zero * static_cast<std::size_t>(max_order_) + static_cast<std::size_t>(n - 1)];
}

std::vector<ComplexValue> evaluate_derivative_block(const ZeroTable& table, std::size_t first,
                                                    std::size_t count, int max_order,
                                                    const EvalParams& params, unsigned threads) {
  if (max_order < 1 || max_order > kMaxDerivativeOrder) {
    throw DomainError("evaluate_derivatives: max_order out of range");
  }
  if (first + count > table.size()) throw RangeError("evaluate_derivatives: beyond table end");
  const auto stride = static_cast<std::size_t>(max_order);
  std::vector<ComplexValue> out(count * stride);
  parallel_for(count, threads, [&](std::size_t i) {
    const double gamma = table.entries[first + i].gamma;
    const auto values = zeta_derivs_em({0.5, gamma}, max_order, params);
    std::copy(values.begin() + 1, values.end(), out.begin() + static_cast<std::ptrdiff_t>(i * stride));
  });
  return out;
}

ZeroDerivatives evaluate_derivatives(const ZeroTable& table, std::size_t count, int max_order,
                                     const EvalParams& params, unsigned threads) {
  return ZeroDerivatives(max_order,
                         evaluate_derivative_block(table, 0, count, max_order, params, threads));
}

ComplexValue sum_derivatives(const ZeroDerivatives& values, int n, std::size_t count,
                             unsigned threads) {
  if (n < 1 || n > values.max_order()) throw DomainError("sum_derivatives: order not evaluated");
  if (count > values.count()) throw RangeError("sum_derivatives: more zeros than evaluated");
  return ordered_sum<ComplexValue>(count, threads, [&](std::size_t i) { return values.at(i, n); });
}

ComplexValue discrete_sum(int n, const ZeroTable& table, double T, const EvalParams& params,
                          unsigned threads) {
  check_moment_order(n);
  check_height(table, T);
  const std::size_t count = table.count_upto(T);
  const ZeroDerivatives values = evaluate_derivatives(table, count, n, params, threads);
  return sum_derivatives(values, n, count, threads);
}

double leading_term(int n, double T) {
  if (n < 1) throw DomainError("leading_term: n must be >= 1");
  if (!(T > kTwoPi)) throw DomainError("leading_term: T must exceed 2 pi");
  const double x = T / kTwoPi;
  return sign_for(n) / (n + 1) * x * std::pow(std::log(x), n + 1);
}

double fujii_prediction(double T, const StieltjesConstants& consts) {
  if (!(T > kTwoPi)) throw DomainError("fujii_prediction: T must exceed 2 pi");
  const double x = T / kTwoPi;
  const double L = std::log(x);
  const double c0 = consts.c0;
  const double c1 = consts.c1;
  return leading_term(1, T) + (-1.0 + c0) * x * L + (1.0 - c0 - c0 * c0 + 3.0 * c1) * x;
}

LGReport landau_gonek(std::uint64_t m, const ZeroTable& table, double T, unsigned threads) {
  if (m < 2) throw DomainError("landau_gonek: m must be >= 2");
  if (!(T > 1.0)) throw DomainError("landau_gonek: T must exceed 1");
  check_height(table, T);
  const std::size_t count = table.count_upto(T);

  double log_hi, log_lo;
  detail::log_dd(m, log_hi, log_lo);
  const ComplexValue phase_sum = ordered_sum<ComplexValue>(count, threads, [&](std::size_t i) {
    const double gamma = table.entries[i].gamma;
    const double p = gamma * log_hi;
    double c, s;
    detail::sincos_dd(p, std::fma(gamma, log_hi, -p) + gamma * log_lo, c, s);
    return ComplexValue{c, -s};
  });

  const auto md = static_cast<double>(m);
  LGReport report;
  report.m = m;
  report.T = T;
  report.empirical = phase_sum / std::sqrt(md);
  report.predicted = -(T / kTwoPi) * von_mangoldt(m) / md;
  report.bound = std::log(2.0 * md * T) * std::log(std::log(3.0 * md));
  report.ratio = std::abs(report.empirical - report.predicted) / report.bound;
  return report;
}

ChainReport heuristic_chain(int n, const ZeroTable& table, double T, const SieveTable& sieve,
                            const EvalParams& params, const ChainOptions& options) {
  if (n < 1 || n > 3) throw DomainError("heuristic_chain: n must be in [1, 3]");
  if (!(T >= 2.0)) throw DomainError("heuristic_chain: T must be >= 2");
  check_height(table, T);
  if (T > options.max_height && !options.allow_expensive) {
    throw RangeError("heuristic_chain: T = " + std::to_string(T) + " above the cost limit " +
                     std::to_string(options.max_height) + " (allow_expensive overrides)");
  }
  const unsigned threads = resolve_threads(options.threads);
  const std::size_t count = table.count_upto(T);
  const auto& entries = table.entries;

  ChainReport report;
  report.n = n;
  report.T = T;

  report.stage_A = ordered_sum<ComplexValue>(count, threads, [&](std::size_t i) {
    const double gamma = entries[i].gamma;
    const auto cutoff = static_cast<std::size_t>(std::floor(gamma));
    return dirichlet_partial_derivs({0.5, gamma}, cutoff, n)[static_cast<std::size_t>(n)];
  });
  report.tail_budget = ordered_sum<double>(count, threads, [&](std::size_t i) {
    const double gamma = entries[i].gamma;
    const auto cutoff = static_cast<std::size_t>(std::floor(gamma)) + 1;
    return em_tail_bound({0.5, gamma}, n, cutoff);
  });

  // Stage B: for each m, the zeros with m < gamma <= T.
  const auto m_max = static_cast<std::size_t>(std::floor(T));
  const std::vector<double> gammas = table.gammas();
  const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
  const ComplexValue inner_total =
      ordered_sum<ComplexValue>(m_max >= 2 ? m_max - 1 : 0, threads, [&](std::size_t i) {
        const std::size_t m = i + 2;
        const std::size_t begin = table.count_upto(static_cast<double>(m));
        if (begin >= count) return ComplexValue{};
        double log_hi, log_lo;
        detail::log_dd(m, log_hi, log_lo);
        constexpr std::size_t kBlock = 256;
        double c[kBlock];
        double s[kBlock];
        CompensatedComplexSum acc;
        for (std::size_t first = begin; first < count; first += kBlock) {
          const std::size_t len = std::min(kBlock, count - first);
          detail::phases_fixed_log(gammas.data() + first, log_hi, log_lo, len, c, s);
          for (std::size_t j = 0; j < len; ++j) acc.add({c[j], -s[j]});
        }
        const double weight = std::pow(log_hi, n) / std::sqrt(static_cast<double>(m));
        return acc.value() * weight;
      });
  report.stage_B = sign_n * inner_total;

  const double x = T / kTwoPi;
  report.stage_C = sign_for(n) * (x * weighted_sum(sieve, n, T) - unweighted_sum(sieve, n, T) / kTwoPi);
  report.S_n = discrete_sum(n, table, T, params, threads);

  report.dev_A_B = std::abs(report.stage_A - report.stage_B);
  report.rel_dev_A_B = report.dev_A_B / std::abs(report.stage_A);
  report.dev_A_S = std::abs(report.stage_A - report.S_n);
  report.dev_C_S = std::fabs(report.stage_C - report.S_n.real());
  report.dev_C_A = std::fabs(report.stage_C - report.stage_A.real());
  return report;
}

double error_bound_diag(int n, double T) {
  if (n < 1) throw DomainError("error_bound_diag: n must be >= 1");
  if (!(T >= 3.0)) throw DomainError("error_bound_diag: T must be >= 3");
  const auto m_max = static_cast<std::uint64_t>(std::floor(T));
  CompensatedSum acc;
  for (std::uint64_t m = 2; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    acc.add(std::pow(std::log(md), n) * std::log(std::log(3.0 * md)));
  }
  return std::log(T) * acc.value();
}

namespace {

ShanksVerdict make_verdict(int n, ComplexValue sum, std::size_t count) {
  if (count < 100) {
    throw InsufficientDataError("shanks_verdict: " + std::to_string(count) +
                                " zeros below T, at least 100 required");
  }
  ShanksVerdict verdict;
  verdict.n = n;
  verdict.count = count;
  verdict.mean = sum / static_cast<double>(count);
  const double re = verdict.mean.real();
  verdict.sign_ok = (n % 2 == 1) ? re > 0.0 : re < 0.0;
  verdict.im_ratio = std::fabs(verdict.mean.imag()) / std::fabs(re);
  return verdict;
}

}  // namespace

ShanksVerdict shanks_verdict(int n, const ZeroTable& table, double T, const EvalParams& params,
                             unsigned threads) {
  check_moment_order(n);
  check_height(table, T);
  const std::size_t count = table.count_upto(T);
  if (count < 100) return make_verdict(n, {}, count);
  return make_verdict(n, discrete_sum(n, table, T, params, threads), count);
}

ShanksVerdict shanks_verdict(int n, const ZeroDerivatives& values, std::size_t count,
                             unsigned threads) {
  check_moment_order(n);
  if (count < 100) return make_verdict(n, {}, count);
  return make_verdict(n, sum_derivatives(values, n, count, threads), count);
}

MomentSeries moment_series(int n, const ZeroTable& table, const std::vector<double>& checkpoints,
                           const EvalParams& params, const MomentContext& context) {
  check_moment_order(n);
  double top = 0.0;
  for (double T : checkpoints) {
    check_height(table, T);
    top = std::max(top, T);
  }
  const ZeroDerivatives values =
      evaluate_derivatives(table, table.count_upto(top), n, params, context.threads);
  return moment_series(n, table, values, checkpoints, context);
}

MomentSeries moment_series(int n, const ZeroTable& table, const ZeroDerivatives& values,
                           const std::vector<double>& checkpoints, const MomentContext& context) {
  check_moment_order(n);
  std::vector<double> heights = checkpoints;
  std::sort(heights.begin(), heights.end());

  MomentSeries series;
  series.n = n;
  for (double T : heights) {
    check_height(table, T);
    MomentCheckpoint point;
    point.T = T;
    point.zero_count = table.count_upto(T);
    point.empirical = sum_derivatives(values, n, point.zero_count, context.threads);
    point.leading = leading_term(n, T);
    if (n == 1) point.fujii = fujii_prediction(T, context.consts);
    point.true_value = sign_for(n) * true_value_D(context.sieve, n, T / kTwoPi);
    point.residual_leading = point.empirical.real() - point.leading;
    point.residual_true = point.empirical.real() - point.true_value;
    series.checkpoints.push_back(point);
  }
  return series;
}

std::vector<double> auto_checkpoints(const ZeroTable& table) {
  std::vector<double> out;
  for (int step = 0;; ++step) {
    const auto k = static_cast<std::size_t>(std::llround(std::pow(10.0, 2.0 + 0.5 * step)));
    if (k >= table.size()) break;
    out.push_back(0.5 * (table.entries[k - 1].gamma + table.entries[k].gamma));
  }
  if (!table.empty()) out.push_back(table.t_max);
  return out;
}

void write_scatter_csv(int n, const ZeroTable& table, const ZeroDerivatives& values,
                       const std::filesystem::path& path) {
  std::ofstream out = open_csv(path);
  out << "index,gamma,re,im\n";
  for (std::size_t i = 0; i < values.count(); ++i) {
    const ComplexValue v = values.at(i, n);
    out << table.entries[i].index << ',' << csv_number(table.entries[i].gamma) << ','
        << csv_number(v.real()) << ',' << csv_number(v.imag()) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void scatter_export(int n, const ZeroTable& table, const std::filesystem::path& path,
                    const EvalParams& params, unsigned threads) {
  check_moment_order(n);
  const ZeroDerivatives values = evaluate_derivatives(table, table.size(), n, params, threads);
  write_scatter_csv(n, table, values, path);
}

void write_moment_series_csv(const MomentSeries& series, const std::filesystem::path& path) {
  std::ofstream out = open_csv(path);
  out << "T,n,empirical_re,empirical_im,leading,fujii,true_value,residual_leading,residual_true\n";
  for (const MomentCheckpoint& p : series.checkpoints) {
    out << csv_number(p.T) << ',' << series.n << ',' << csv_number(p.empirical.real()) << ','
        << csv_number(p.empirical.imag()) << ',' << csv_number(p.leading) << ','
        << (p.fujii ? csv_number(*p.fujii) : std::string()) << ',' << csv_number(p.true_value)
        << ',' << csv_number(p.residual_leading) << ',' << csv_number(p.residual_true) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace shankslab
