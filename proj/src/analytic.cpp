#include "shankslab/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "phase_kernel.hpp"
#include "shankslab/errors.hpp"
#include "shankslab/summation.hpp"

namespace shankslab {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr int kJetSize = kMaxDerivativeOrder + 1;

// theta(t) ~ t/2 log(t/2pi) - t/2 - pi/8 + sum_k a_k / t^(2k-1),
// a_k = (1 - 2^(1-2k)) |B_2k| / (4k (2k-1)).
constexpr std::array<long double, 6> kThetaCoefficients = {
    1.0L / 48.0L,
    7.0L / 5760.0L,
    31.0L / 80640.0L,
    127.0L / 430080.0L,
    511.0L / 1216512.0L,
    1414477.0L / 1476034560.0L,
};

long double theta_tail(long double t) {
  const long double inv = 1.0L / t;
  const long double inv2 = inv * inv;
  long double power = inv;
  long double sum = 0.0L;
  for (long double a : kThetaCoefficients) {
    sum += a * power;
    power *= inv2;
  }
  return sum;
}

long double theta_extended(long double t) {
  return 0.5L * t * std::log(t / kTwoPiL) - 0.5L * t - kPiL / 8.0L + theta_tail(t);
}

// B_2k / (2k)! = (-1)^(k+1) 2 zeta(2k) / (2 pi)^(2k), for k = 1..kMaxBernoulliOrder+1.
const std::array<double, kMaxBernoulliOrder + 2>& bernoulli_factors() {
  static const auto table = [] {
    std::array<double, kMaxBernoulliOrder + 2> out{};
    for (int k = 1; k <= kMaxBernoulliOrder + 1; ++k) {
      long double zeta2k;
      if (k == 1) {
        zeta2k = kPiL * kPiL / 6.0L;
      } else if (k == 2) {
        zeta2k = std::pow(kPiL, 4) / 90.0L;
      } else if (k == 3) {
        zeta2k = std::pow(kPiL, 6) / 945.0L;
      } else {
        zeta2k = 0.0L;
        for (int m = 2000; m >= 1; --m) zeta2k += std::pow(static_cast<long double>(m), -2.0L * k);
      }
      const long double magnitude = 2.0L * zeta2k / std::pow(kTwoPiL, 2.0L * k);
      out[k] = static_cast<double>(k % 2 == 1 ? magnitude : -magnitude);
    }
    return out;
  }();
  return table;
}

// Truncated Taylor series in h of f(s + h): c[j] = f^(j)(s) / j!.
class Jet {
 public:
  explicit Jet(int order) : order_(order) {}

  ComplexValue& operator[](int j) { return c_[j]; }
  ComplexValue operator[](int j) const { return c_[j]; }
  int order() const { return order_; }

  // (a + h) as a jet.
  static Jet linear(int order, ComplexValue a) {
    Jet out(order);
    out[0] = a;
    if (order >= 1) out[1] = 1.0;
    return out;
  }

  Jet& operator+=(const Jet& other) {
    for (int j = 0; j <= order_; ++j) c_[j] += other.c_[j];
    return *this;
  }

  Jet& operator*=(ComplexValue factor) {
    for (int j = 0; j <= order_; ++j) c_[j] *= factor;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out(a.order_);
    for (int j = 0; j <= a.order_; ++j) {
      ComplexValue acc = a.c_[0] * b.c_[j];
      for (int i = 1; i <= j; ++i) acc += a.c_[i] * b.c_[j - i];
      out.c_[j] = acc;
    }
    return out;
  }

 private:
  int order_;
  std::array<ComplexValue, kJetSize> c_{};
};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Neumaier sums kept in independent lanes so the block loop vectorizes.
// Lane assignment is by position within a block, which keeps the summation
// order a function of the term count only.
class LaneSums {
 public:
  static constexpr std::size_t kLanes = 8;

  void add_block(const double* __restrict x, std::size_t len) {
    for (std::size_t i = 0; i < len; i += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double v = x[i + l];
        const double s = sum_[l];
        const double t = s + v;
        comp_[l] += (std::fabs(s) >= std::fabs(v)) ? ((s - t) + v) : ((v - t) + s);
        sum_[l] = t;
      }
    }
  }

  double total() const {
    CompensatedSum acc;
    for (std::size_t l = 0; l < kLanes; ++l) {
      acc.add(sum_[l]);
      acc.add(comp_[l]);
    }
    return acc.value();
  }

 private:
  alignas(64) double sum_[kLanes] = {};
  alignas(64) double comp_[kLanes] = {};
};

constexpr std::size_t kBlock = 512;

// out[j] = sum_{m=1}^{count} (-log m)^j m^{-sigma - i t}.
void main_sum(double sigma, double t, std::size_t count, int max_order, ComplexValue* out) {
  std::array<LaneSums, kJetSize> re_sums;
  std::array<LaneSums, kJetSize> im_sums;
  alignas(64) double hi[kBlock];
  alignas(64) double lo[kBlock];
  alignas(64) double w[kBlock];
  alignas(64) double c[kBlock];
  alignas(64) double s[kBlock];
  alignas(64) double vr[kBlock];
  alignas(64) double vi[kBlock];

  const detail::LogTable& table = detail::log_table();
  const bool critical = sigma == 0.5;

  for (std::size_t first = 1; first <= count; first += kBlock) {
    const std::size_t len = std::min(kBlock, count - first + 1);
    const std::size_t padded = (len + LaneSums::kLanes - 1) / LaneSums::kLanes * LaneSums::kLanes;
    detail::fill_logs(first, len, hi, lo);
    if (critical) {
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t m = first + i;
        w[i] = m < detail::LogTable::kCapacity ? table.rsqrt[m]
                                               : 1.0 / std::sqrt(static_cast<double>(m));
      }
    } else {
      for (std::size_t i = 0; i < len; ++i) w[i] = std::exp(-sigma * hi[i]);
    }
    detail::phases_scaled_logs(t, hi, lo, len, c, s);
    for (std::size_t i = 0; i < len; ++i) {
      vr[i] = w[i] * c[i];
      vi[i] = -(w[i] * s[i]);
    }
    for (std::size_t i = len; i < padded; ++i) vr[i] = vi[i] = hi[i] = 0.0;

    for (int j = 0; j <= max_order; ++j) {
      re_sums[j].add_block(vr, padded);
      im_sums[j].add_block(vi, padded);
      if (j < max_order) {
        for (std::size_t i = 0; i < padded; ++i) {
          vr[i] *= -hi[i];
          vi[i] *= -hi[i];
        }
      }
    }
  }
  for (int j = 0; j <= max_order; ++j) out[j] = {re_sums[j].total(), im_sums[j].total()};
}

// The pieces of the Euler-Maclaurin tail sum_{m >= N} m^{-s-h} as jets.
struct TailJets {
  Jet integral;              // N^{1-s-h} / (s + h - 1)
  Jet half;                  // N^{-s-h} / 2
  std::vector<Jet> bernoulli;  // B_2k/(2k)! (s+h)...(s+h+2k-2) N^{-s-h-2k+1}, k = 1..K+1
};

TailJets tail_jets(ComplexValue s, std::size_t cutoff, int order, int terms) {
  const double sigma = s.real();
  const double t = s.imag();
  double log_hi, log_lo;
  detail::log_dd(cutoff, log_hi, log_lo);
  const double log_n = log_hi;
  const double n_real = static_cast<double>(cutoff);

  // N^{-s} = N^{-sigma} e^{-i t log N}
  double c, sn;
  {
    const double p = t * log_hi;
    detail::sincos_dd(p, std::fma(t, log_hi, -p) + t * log_lo, c, sn);
  }
  const double scale = std::exp(-sigma * log_n);
  Jet power(order);
  {
    ComplexValue coefficient{scale * c, -(scale * sn)};
    for (int j = 0; j <= order; ++j) {
      power[j] = coefficient;
      coefficient *= -log_n / static_cast<double>(j + 1);
    }
  }

  Jet inverse(order);
  {
    const ComplexValue u = 1.0 / (s - 1.0);
    ComplexValue coefficient = u;
    for (int j = 0; j <= order; ++j) {
      inverse[j] = coefficient;
      coefficient *= -u;
    }
  }

  TailJets out{power * inverse, power, {}};
  out.integral *= n_real;
  out.half *= 0.5;

  const auto& factors = bernoulli_factors();
  const double inv_n = 1.0 / n_real;
  const double inv_n2 = inv_n * inv_n;
  Jet rising = Jet::linear(order, s);
  rising *= inv_n;
  out.bernoulli.reserve(static_cast<std::size_t>(terms));
  for (int k = 1; k <= terms; ++k) {
    Jet term = rising * power;
    term *= factors[k];
    out.bernoulli.push_back(term);
    if (k < terms) {
      rising = rising * Jet::linear(order, s + static_cast<double>(2 * k - 1));
      rising = rising * Jet::linear(order, s + static_cast<double>(2 * k));
      rising *= inv_n2;
    }
  }
  return out;
}

void check_domain(ComplexValue s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError("zeta: non-finite argument");
  }
  if (!(s.real() > 0.0 && s.real() <= 3.0)) {
    throw DomainError("zeta: Re(s) = " + std::to_string(s.real()) + " outside (0, 3]");
  }
  if (std::fabs(s.imag()) > kMaxHeight) {
    throw DomainError("zeta: |Im(s)| = " + std::to_string(std::fabs(s.imag())) +
                      " exceeds 1.2e5");
  }
  if (std::abs(s - 1.0) < 1e-6) throw PoleError("zeta: s within 1e-6 of the pole at s = 1");
}

void check_order(int n) {
  if (n < 0 || n > kMaxDerivativeOrder) {
    throw DomainError("zeta: derivative order " + std::to_string(n) + " outside [0, 8]");
  }
}

std::array<ComplexValue, kJetSize> em_evaluate(ComplexValue s, int max_order,
                                              const EvalParams& params) {
  params.validate();
  check_domain(s);
  check_order(max_order);

  const std::size_t cutoff = em_cutoff(s.imag(), params);
  std::array<ComplexValue, kJetSize> main{};
  main_sum(s.real(), s.imag(), cutoff - 1, max_order, main.data());

  const TailJets tail = tail_jets(s, cutoff, max_order, params.bernoulli_order + 1);

  double estimate = 0.0;
  const Jet& first_unused = tail.bernoulli.back();
  for (int j = 0; j <= max_order; ++j) {
    estimate = std::max(estimate, factorial(j) * std::abs(first_unused[j]));
  }
  if (!(estimate <= params.target_abs_error)) {
    throw AccuracyError("zeta: Euler-Maclaurin remainder estimate " + std::to_string(estimate) +
                            " exceeds target " + std::to_string(params.target_abs_error),
                        estimate);
  }

  Jet correction = tail.integral;
  correction += tail.half;
  for (int k = 0; k < params.bernoulli_order; ++k) correction += tail.bernoulli[k];

  std::array<ComplexValue, kJetSize> out{};
  for (int j = 0; j <= max_order; ++j) {
    out[j] = main[j] + factorial(j) * correction[j];
    if (!std::isfinite(out[j].real()) || !std::isfinite(out[j].imag())) {
      throw DomainError("zeta: non-finite result");
    }
  }
  return out;
}

}  // namespace

void EvalParams::validate() const {
  if (!(em_cutoff_factor >= 1.0) || !std::isfinite(em_cutoff_factor)) {
    throw DomainError("EvalParams: em_cutoff_factor must be >= 1");
  }
  if (bernoulli_order < 1 || bernoulli_order > kMaxBernoulliOrder) {
    throw DomainError("EvalParams: bernoulli_order must be in [1, 40]");
  }
  if (!(target_abs_error > 0.0) || !std::isfinite(target_abs_error)) {
    throw DomainError("EvalParams: target_abs_error must be > 0");
  }
}

double theta_series(double t) {
  if (!(t > 0.0)) throw DomainError("theta: t must be positive");
  return static_cast<double>(theta_extended(t));
}

double theta(double t) {
  if (!(t >= kMinThetaHeight)) {
    throw DomainError("theta: t = " + std::to_string(t) + " below the supported range t >= 10");
  }
  return theta_series(t);
}

double theta_derivative(double t) {
  if (!(t > 0.0)) throw DomainError("theta_derivative: t must be positive");
  const long double tl = t;
  const long double inv2 = 1.0L / (tl * tl);
  long double power = inv2;
  long double sum = 0.0L;
  int exponent = 1;
  for (long double a : kThetaCoefficients) {
    sum -= exponent * a * power;
    power *= inv2;
    exponent += 2;
  }
  return static_cast<double>(0.5L * std::log(tl / kTwoPiL) + sum);
}

double theta_mod_2pi(double t) {
  const long double th = theta_extended(t);
  const long double reduced = th - kTwoPiL * std::nearbyint(th / kTwoPiL);
  return static_cast<double>(reduced);
}

std::size_t em_cutoff(double t, const EvalParams& params) {
  const double height = std::max(std::fabs(t) / (2.0 * std::numbers::pi), 10.0);
  return static_cast<std::size_t>(std::ceil(params.em_cutoff_factor * height));
}

ComplexValue zeta_em(ComplexValue s, const EvalParams& params) {
  return em_evaluate(s, 0, params)[0];
}

ComplexValue zeta_deriv_em(ComplexValue s, int n, const EvalParams& params) {
  check_order(n);
  return em_evaluate(s, n, params)[n];
}

std::vector<ComplexValue> zeta_derivs_em(ComplexValue s, int max_order, const EvalParams& params) {
  check_order(max_order);
  const auto values = em_evaluate(s, max_order, params);
  return {values.begin(), values.begin() + max_order + 1};
}

ComplexValue zeta_deriv_cauchy(ComplexValue s, int n, double radius, int points,
                               const EvalParams& params) {
  check_order(n);
  if (points < 64) throw DomainError("zeta_deriv_cauchy: at least 64 points required");
  if (!(radius > 0.0)) throw DomainError("zeta_deriv_cauchy: radius must be positive");
  if (!(s.real() - radius > 0.0 && s.real() + radius <= 3.0 &&
        std::fabs(s.imag()) + radius <= kMaxHeight)) {
    throw DomainError("zeta_deriv_cauchy: circle leaves the Euler-Maclaurin domain");
  }
  if (std::abs(s - 1.0) <= radius + 1e-6) {
    throw PoleError("zeta_deriv_cauchy: circle encloses or touches the pole at s = 1");
  }

  CompensatedComplexSum acc;
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / points;
    const ComplexValue node = std::polar(1.0, phi);
    const ComplexValue value = zeta_em(s + radius * node, params);
    acc.add(value * std::polar(1.0, -n * phi));
  }
  return acc.value() * (factorial(n) / (points * std::pow(radius, n)));
}

double hardy_z(double t, const EvalParams& params) {
  if (!(t >= kMinThetaHeight)) {
    throw DomainError("hardy_z: t = " + std::to_string(t) + " below the supported range t >= 10");
  }
  const ComplexValue z = zeta_em({0.5, t}, params);
  const ComplexValue rotated = std::polar(1.0, theta_mod_2pi(t)) * z;
  if (std::fabs(rotated.imag()) > 100.0 * params.target_abs_error) {
    throw ConsistencyError("hardy_z: imaginary part " + std::to_string(rotated.imag()) +
                           " at t = " + std::to_string(t));
  }
  return rotated.real();
}

std::vector<ComplexValue> dirichlet_partial_derivs(ComplexValue s, std::size_t count,
                                                   int max_order) {
  check_order(max_order);
  std::array<ComplexValue, kJetSize> out{};
  main_sum(s.real(), s.imag(), count, max_order, out.data());
  return {out.begin(), out.begin() + max_order + 1};
}

double em_tail_bound(ComplexValue s, int n, std::size_t first_omitted, int bernoulli_order) {
  check_order(n);
  if (first_omitted < 1) throw DomainError("em_tail_bound: cutoff must be >= 1");
  if (bernoulli_order < 1 || bernoulli_order > kMaxBernoulliOrder) {
    throw DomainError("em_tail_bound: bernoulli_order must be in [1, 40]");
  }
  if (std::abs(s - 1.0) < 1e-6) throw PoleError("em_tail_bound: s too close to 1");
  const TailJets tail = tail_jets(s, first_omitted, n, bernoulli_order + 1);
  const double scale = factorial(n);
  double bound = std::abs(tail.integral[n]) + std::abs(tail.half[n]);
  for (const Jet& term : tail.bernoulli) bound += std::abs(term[n]);
  return scale * bound;
}

}  // namespace shankslab
