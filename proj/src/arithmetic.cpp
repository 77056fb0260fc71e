#include "shankslab/arithmetic.hpp"

#include <array>
#include <cmath>
#include <string>

#include "shankslab/errors.hpp"
#include "shankslab/summation.hpp"

namespace shankslab {

namespace {

void check_limit(const SieveTable& sieve, double x, const char* what) {
  if (!(x >= 1.0)) throw DomainError(std::string(what) + ": argument must be >= 1");
  if (x > static_cast<double>(sieve.limit())) {
    throw SieveLimitError(std::string(what) + ": argument " + std::to_string(x) +
                          " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

void check_order(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": n must be >= 0");
}

// sum over prime powers m <= x of Lambda(m) * weight(m)
template <class Weight>
double prime_power_sum(const SieveTable& sieve, double x, Weight&& weight) {
  const auto powers = sieve.prime_powers();
  const auto lambdas = sieve.prime_power_lambdas();
  CompensatedSum acc;
  for (std::size_t i = 0; i < powers.size() && powers[i] <= x; ++i) {
    acc.add(lambdas[i] * weight(static_cast<double>(powers[i])));
  }
  return acc.value();
}

}  // namespace

SieveTable::SieveTable(std::uint64_t limit) : limit_(limit), lambda_(limit + 1, 0.0) {
  if (limit < 1) throw DomainError("SieveTable: limit must be >= 1");
  if (limit > 0xffffffffu) throw DomainError("SieveTable: limit must fit in 32 bits");

  // Linear sieve for the smallest prime factor.
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t m = 2; m <= limit; ++m) {
    if (spf[m] == 0) {
      spf[m] = static_cast<std::uint32_t>(m);
      primes.push_back(static_cast<std::uint32_t>(m));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[m] || m * p > limit) break;
      spf[m * p] = p;
    }
  }
  for (std::uint64_t m = 2; m <= limit; ++m) {
    const std::uint64_t p = spf[m];
    std::uint64_t rest = m;
    while (rest % p == 0) rest /= p;
    if (rest == 1) {
      lambda_[m] = std::log(static_cast<double>(p));
      prime_powers_.push_back(static_cast<std::uint32_t>(m));
      lambdas_.push_back(lambda_[m]);
    }
  }
}

double SieveTable::von_mangoldt(std::uint64_t m) const {
  if (m == 0) throw DomainError("von_mangoldt: m must be >= 1");
  return m <= limit_ ? lambda_[m] : shankslab::von_mangoldt(m);
}

double von_mangoldt(std::uint64_t m) {
  if (m == 0) throw DomainError("von_mangoldt: m must be >= 1");
  if (m == 1) return 0.0;
  std::uint64_t p = 0;
  if (m % 2 == 0) {
    p = 2;
  } else {
    for (std::uint64_t d = 3; d <= m / d; d += 2) {
      if (m % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = m;
  }
  std::uint64_t rest = m;
  while (rest % p == 0) rest /= p;
  return rest == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

double chebyshev_C(const SieveTable& sieve, double x) {
  check_limit(sieve, x, "chebyshev_C");
  return prime_power_sum(sieve, x, [](double m) { return 1.0 / m; });
}

double weighted_sum(const SieveTable& sieve, int n, double T) {
  check_order(n, "weighted_sum");
  check_limit(sieve, T, "weighted_sum");
  return prime_power_sum(sieve, T, [n](double m) { return std::pow(std::log(m), n) / m; });
}

double unweighted_sum(const SieveTable& sieve, int n, double T) {
  check_order(n, "unweighted_sum");
  check_limit(sieve, T, "unweighted_sum");
  return prime_power_sum(sieve, T, [n](double m) { return std::pow(std::log(m), n); });
}

double true_value_D(const SieveTable& sieve, int n, double X) {
  check_order(n, "true_value_D");
  check_limit(sieve, X, "true_value_D");
  return prime_power_sum(sieve, X,
                         [n, X](double m) { return std::pow(std::log(m), n) * std::floor(X / m); });
}

double stieltjes(int k) {
  if (k != 0 && k != 1) throw DomainError("stieltjes: only k = 0 and k = 1 are supported");

  // gamma_k = lim (sum_{m<=x} (log m)^k / m - (log x)^{k+1}/(k+1)), with the
  // tail beyond N replaced by its Euler-Maclaurin expansion.
  constexpr int kCutoff = 100;
  constexpr std::array<long double, 10> kBernoulli = {
      1.0L / 6,      -1.0L / 30,        1.0L / 42,         -1.0L / 30,     5.0L / 66,
      -691.0L / 2730, 7.0L / 6,         -3617.0L / 510,    43867.0L / 798, -174611.0L / 330,
  };

  const long double n = kCutoff;
  const long double log_n = std::log(n);
  long double sum = 0.0L;
  for (int m = kCutoff; m >= 1; --m) {
    const long double lm = std::log(static_cast<long double>(m));
    sum += (k == 0 ? 1.0L : lm) / m;
  }
  const long double integral = k == 0 ? log_n : 0.5L * log_n * log_n;
  const long double f_n = (k == 0 ? 1.0L : log_n) / n;

  // f^(r)(x) = (-1)^r r! / x^(r+1)                  for f = 1/x
  // f^(r)(x) = (-1)^r r! (log x - H_r) / x^(r+1)     for f = log(x)/x
  long double correction = 0.0L;
  long double factorial_2j = 1.0L;
  long double r_factorial = 1.0L;
  long double harmonic = 0.0L;
  int r = 0;
  for (int j = 1; j <= static_cast<int>(kBernoulli.size()); ++j) {
    factorial_2j *= (2.0L * j - 1.0L) * (2.0L * j);
    while (r < 2 * j - 1) {
      ++r;
      r_factorial *= r;
      harmonic += 1.0L / r;
    }
    const long double sign = (r % 2 == 0) ? 1.0L : -1.0L;
    const long double derivative =
        sign * r_factorial * (k == 0 ? 1.0L : (log_n - harmonic)) / std::pow(n, r + 1);
    correction += kBernoulli[j - 1] / factorial_2j * derivative;
  }
  const long double gamma_k = sum - integral - 0.5L * f_n - correction;
  return static_cast<double>(k == 0 ? gamma_k : -gamma_k);
}

StieltjesConstants laurent_constants() { return {stieltjes(0), stieltjes(1)}; }

}  // namespace shankslab
