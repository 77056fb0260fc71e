#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace shankslab {

// Enough for sums up to T/2pi with T ~ 1.2e5.
inline constexpr std::uint64_t kDefaultSieveLimit = 20000;

// Lambda(m) for m in [1, limit]: log p when m = p^k, else 0. Immutable after
// construction.
class SieveTable {
 public:
  explicit SieveTable(std::uint64_t limit = kDefaultSieveLimit);

  std::uint64_t limit() const noexcept { return limit_; }

  // Table lookup up to the limit, trial-division probe beyond it.
  double von_mangoldt(std::uint64_t m) const;

  // Prime powers p^k <= limit in increasing order, with Lambda at each.
  std::span<const std::uint32_t> prime_powers() const noexcept { return prime_powers_; }
  std::span<const double> prime_power_lambdas() const noexcept { return lambdas_; }

 private:
  std::uint64_t limit_;
  std::vector<double> lambda_;  // indexed by m, lambda_[0] unused
  std::vector<std::uint32_t> prime_powers_;
  std::vector<double> lambdas_;
};

// Lambda(m) by direct factor probing; no table needed.
double von_mangoldt(std::uint64_t m);

// C(x) = sum_{m <= x} Lambda(m)/m. Throws SieveLimitError when x > limit.
double chebyshev_C(const SieveTable& sieve, double x);

// sum_{m <= T} (log m)^n Lambda(m) / m.
double weighted_sum(const SieveTable& sieve, int n, double T);

// sum_{m <= T} (log m)^n Lambda(m).
double unweighted_sum(const SieveTable& sieve, int n, double T);

// D_n(X) = sum_{l m <= X} Lambda(m) (log m)^n, evaluated as
// sum_{m <= X} Lambda(m) (log m)^n floor(X/m).
double true_value_D(const SieveTable& sieve, int n, double X);

// Laurent coefficients of zeta about s = 1:
// zeta(s) = 1/(s-1) + c0 + c1 (s-1) + ...
// c0 is Euler's constant and c1 = -gamma_1 (gamma_1 the first Stieltjes
// constant, about -0.0728).
struct StieltjesConstants {
  double c0;
  double c1;
};

// Coefficient of (s-1)^k in zeta(s) - 1/(s-1), k in {0, 1}.
double stieltjes(int k);
StieltjesConstants laurent_constants();

}  // namespace shankslab
