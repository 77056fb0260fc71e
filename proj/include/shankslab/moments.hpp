#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "shankslab/analytic.hpp"
#include "shankslab/arithmetic.hpp"
#include "shankslab/zeros.hpp"

namespace shankslab {

inline constexpr int kMaxMomentOrder = 5;

// zeta^(j)(rho_i) for j = 1..max_order at the first `count` zeros of a table.
class ZeroDerivatives {
 public:
  ZeroDerivatives() = default;
  ZeroDerivatives(int max_order, std::vector<ComplexValue> values);

  int max_order() const noexcept { return max_order_; }
  std::size_t count() const noexcept;
  ComplexValue at(std::size_t zero, int n) const;
  const std::vector<ComplexValue>& raw() const noexcept { return values_; }

 private:
  int max_order_ = 0;
  std::vector<ComplexValue> values_;  // zero-major, orders 1..max_order
};

// Evaluates derivatives for zeros [first, first + count) of the table.
std::vector<ComplexValue> evaluate_derivative_block(const ZeroTable& table, std::size_t first,
                                                    std::size_t count, int max_order,
                                                    const EvalParams& params, unsigned threads);

ZeroDerivatives evaluate_derivatives(const ZeroTable& table, std::size_t count, int max_order,
                                     const EvalParams& params, unsigned threads = 0);

// sum of zeta^(n)(rho_i) over the first `count` zeros in fixed index order
// with compensated, thread-count independent reduction.
ComplexValue sum_derivatives(const ZeroDerivatives& values, int n, std::size_t count,
                             unsigned threads = 0);

// S_n(T) = sum_{0 < gamma <= T} zeta^(n)(rho), 1 <= n <= 5, T <= t_max.
ComplexValue discrete_sum(int n, const ZeroTable& table, double T, const EvalParams& params = {},
                          unsigned threads = 0);

// (-1)^{n+1}/(n+1) (T/2pi) log(T/2pi)^{n+1}; DomainError for T <= 2pi.
double leading_term(int n, double T);

// Three-term asymptotic for S_1(T) with the Laurent constants of zeta at 1.
double fujii_prediction(double T, const StieltjesConstants& consts);

struct LGReport {
  std::uint64_t m = 0;
  double T = 0.0;
  ComplexValue empirical;  // sum_{0 < gamma <= T} m^{-rho}
  double predicted = 0.0;  // -(T/2pi) Lambda(m)/m
  double bound = 0.0;      // log(2mT) loglog(3m)
  double ratio = 0.0;      // |empirical - predicted| / bound
};

LGReport landau_gonek(std::uint64_t m, const ZeroTable& table, double T, unsigned threads = 0);

struct ChainOptions {
  unsigned threads = 0;
  // Stages A and B cost ~ T N(T); refuse larger T unless allowed.
  double max_height = 1e4;
  bool allow_expensive = false;
};

struct ChainReport {
  int n = 0;
  double T = 0.0;
  ComplexValue stage_A;  // zeros outer, truncated Dirichlet series inner
  ComplexValue stage_B;  // m outer
  double stage_C = 0.0;  // Landau-Gonek substitution
  ComplexValue S_n;      // discrete_sum
  double tail_budget = 0.0;  // sum over zeros of em_tail_bound at cutoff floor(gamma)+1
  // deviations
  double dev_A_B = 0.0;     // |A - B|
  double rel_dev_A_B = 0.0; // |A - B| / |A|
  double dev_A_S = 0.0;     // |A - S_n|
  double dev_C_S = 0.0;     // |C - Re S_n|
  double dev_C_A = 0.0;     // |C - Re A|
};

ChainReport heuristic_chain(int n, const ZeroTable& table, double T, const SieveTable& sieve,
                            const EvalParams& params = {}, const ChainOptions& options = {});

// log T * sum_{m <= T} (log m)^n loglog(3m).
double error_bound_diag(int n, double T);

struct ShanksVerdict {
  int n = 0;
  std::size_t count = 0;
  ComplexValue mean;
  bool sign_ok = false;  // sign(Re mean) == (-1)^{n+1}
  double im_ratio = 0.0; // |Im mean| / |Re mean|
};

// Requires at least 100 zeros below T.
ShanksVerdict shanks_verdict(int n, const ZeroTable& table, double T, const EvalParams& params = {},
                             unsigned threads = 0);
ShanksVerdict shanks_verdict(int n, const ZeroDerivatives& values, std::size_t count,
                             unsigned threads = 0);

struct MomentCheckpoint {
  double T = 0.0;
  std::size_t zero_count = 0;
  ComplexValue empirical;
  double leading = 0.0;
  std::optional<double> fujii;  // n = 1 only
  // Signed truth oracle (-1)^{n+1} D_n(T/2pi).
  double true_value = 0.0;
  double residual_leading = 0.0;  // empirical.re - leading
  double residual_true = 0.0;     // empirical.re - true_value
};

struct MomentSeries {
  int n = 0;
  std::vector<MomentCheckpoint> checkpoints;
};

struct MomentContext {
  const SieveTable& sieve;
  StieltjesConstants consts;
  unsigned threads = 0;
};

MomentSeries moment_series(int n, const ZeroTable& table, const std::vector<double>& checkpoints,
                           const EvalParams& params, const MomentContext& context);
MomentSeries moment_series(int n, const ZeroTable& table, const ZeroDerivatives& values,
                           const std::vector<double>& checkpoints, const MomentContext& context);

// Heights just above the zeros of index ~100, 316, 1000, 3162, ... that the
// table contains, plus t_max.
std::vector<double> auto_checkpoints(const ZeroTable& table);

// CSV with header "index,gamma,re,im", one row per zero, 17 significant digits.
void scatter_export(int n, const ZeroTable& table, const std::filesystem::path& path,
                    const EvalParams& params = {}, unsigned threads = 0);
void write_scatter_csv(int n, const ZeroTable& table, const ZeroDerivatives& values,
                       const std::filesystem::path& path);

// Header "T,n,empirical_re,empirical_im,leading,fujii,true_value,residual_leading,residual_true".
void write_moment_series_csv(const MomentSeries& series, const std::filesystem::path& path);

}  // namespace shankslab
