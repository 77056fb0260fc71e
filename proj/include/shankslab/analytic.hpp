#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace shankslab {

using ComplexValue = std::complex<double>;

inline constexpr int kMaxDerivativeOrder = 8;
inline constexpr int kMaxBernoulliOrder = 40;
// Largest |Im s| the engine accepts.
inline constexpr double kMaxHeight = 1.2e5;
// theta() and hardy_z() are asymptotic-series based and start here.
inline constexpr double kMinThetaHeight = 10.0;

// Controls one Euler-Maclaurin evaluation of zeta or its derivatives.
//
// The main sum runs to N - 1 with N = ceil(em_cutoff_factor * max(|t|/2pi, 10)).
// bernoulli_order correction terms follow; the first omitted one serves as
// the remainder estimate and must not exceed target_abs_error.
struct EvalParams {
  double em_cutoff_factor = 2.0;
  int bernoulli_order = 28;
  double target_abs_error = 1e-10;

  // Throws DomainError when a field is outside its documented range.
  void validate() const;
};

// Riemann-Siegel theta for t >= 10, asymptotic series with remainder below
// 1e-14 there. Throws DomainError for smaller t.
double theta(double t);

// The same series without the domain guard (any t > 0). Accuracy degrades
// below t = 10 like the first omitted term, ~1e-8 / t^13.
double theta_series(double t);

double theta_derivative(double t);

// theta(t) reduced to (-pi, pi], evaluated in extended precision so the
// phase stays accurate to ~1e-13 even where theta(t) itself is ~1e5.
double theta_mod_2pi(double t);

// Euler-Maclaurin cutoff N for height t.
std::size_t em_cutoff(double t, const EvalParams& params);

// zeta(s) for 0 < Re s <= 3, |Im s| <= 1.2e5. Throws PoleError within 1e-6 of
// s = 1, AccuracyError when the remainder estimate exceeds the target.
ComplexValue zeta_em(ComplexValue s, const EvalParams& params = {});

// n-th derivative, 0 <= n <= 8, by termwise differentiation of every
// Euler-Maclaurin component. n = 0 is bit-identical to zeta_em.
ComplexValue zeta_deriv_em(ComplexValue s, int n, const EvalParams& params = {});

// zeta^(j)(s) for j = 0..max_order from a single pass over the main sum.
// Entry j is bit-identical to zeta_deriv_em(s, j, params) provided the
// accuracy check passes for max_order.
std::vector<ComplexValue> zeta_derivs_em(ComplexValue s, int max_order,
                                         const EvalParams& params = {});

// n-th derivative from the trapezoidal Cauchy integral over `points` equally
// spaced nodes on the circle |z - s| = radius, using zeta_em on the circle.
// Independent of the symbolic differentiation in zeta_deriv_em.
ComplexValue zeta_deriv_cauchy(ComplexValue s, int n, double radius, int points,
                               const EvalParams& params = {});

// Hardy's Z(t) = Re(e^{i theta(t)} zeta(1/2 + it)) for t >= 10. Throws
// ConsistencyError if the discarded imaginary part exceeds
// 100 * target_abs_error.
double hardy_z(double t, const EvalParams& params = {});

// Derivatives of the truncated Dirichlet series:
// out[j] = sum_{m <= count} (-log m)^j m^{-s}, for j = 0..max_order.
std::vector<ComplexValue> dirichlet_partial_derivs(ComplexValue s, std::size_t count,
                                                   int max_order);

// Bound on |zeta^(n)(s) - (-1)^n sum_{m < first_omitted} (log m)^n m^{-s}|:
// the sum of magnitudes of the n-th derivatives of the Euler-Maclaurin tail
// terms at cutoff first_omitted plus the first unused correction.
double em_tail_bound(ComplexValue s, int n, std::size_t first_omitted,
                     int bernoulli_order = 12);

}  // namespace shankslab
