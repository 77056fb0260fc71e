#include "oracle.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

using quad = __float128;

struct cq {
  quad re = 0;
  quad im = 0;
};

cq operator+(cq a, cq b) { return {a.re + b.re, a.im + b.im}; }
cq operator-(cq a, cq b) { return {a.re - b.re, a.im - b.im}; }
cq operator*(cq a, cq b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
cq operator*(quad a, cq b) { return {a * b.re, a * b.im}; }
cq operator/(cq a, cq b) {
  const quad d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
cq clog(cq z) { return {logq(hypotq(z.re, z.im)), atan2q(z.im, z.re)}; }
cq cexp(cq z) {
  quad s, c;
  sincosq(z.im, &s, &c);
  const quad r = expq(z.re);
  return {r * c, r * s};
}

const quad kPi = M_PIq;

// B_2k, k = 1..25, as exact fractions.
constexpr std::array<std::array<const char*, 2>, 25> kBernoulli = {{
    {"1", "6"},
    {"-1", "30"},
    {"1", "42"},
    {"-1", "30"},
    {"5", "66"},
    {"-691", "2730"},
    {"7", "6"},
    {"-3617", "510"},
    {"43867", "798"},
    {"-174611", "330"},
    {"854513", "138"},
    {"-236364091", "2730"},
    {"8553103", "6"},
    {"-23749461029", "870"},
    {"8615841276005", "14322"},
    {"-7709321041217", "510"},
    {"2577687858367", "6"},
    {"-26315271553053477373", "1919190"},
    {"2929993913841559", "6"},
    {"-261082718496449122051", "13530"},
    {"1520097643918070802691", "1806"},
    {"-27833269579301024235023", "690"},
    {"596451111593912163277961", "282"},
    {"-5609403368997817686249127547", "46410"},
    {"495057205241079648212477525", "66"},
}};

quad bernoulli(int k) {
  return strtoflt128(kBernoulli[k - 1][0], nullptr) / strtoflt128(kBernoulli[k - 1][1], nullptr);
}

// Im log Gamma(z) for Re z > 0.
quad im_log_gamma(cq z) {
  constexpr int kShift = 24;
  quad arg_sum = 0;
  cq w = z;
  for (int k = 0; k < kShift; ++k) {
    arg_sum += atan2q(w.im, w.re);
    w.re += 1;
  }
  const cq log_w = clog(w);
  cq stirling = (cq{w.re - 0.5Q, w.im} * log_w) - w;
  const cq w2 = w * w;
  cq power = w;  // w^{2k-1}
  for (int k = 1; k <= 20; ++k) {
    const quad coef = bernoulli(k) / ((2 * k) * (2 * k - 1));
    stirling = stirling + cq{coef, 0} / power;
    power = power * w2;
  }
  return stirling.im - arg_sum;
}

quad theta_q(quad t) {
  return im_log_gamma({0.25Q, t / 2}) - t / 2 * logq(kPi);
}

// zeta(1/2 + it) in quad precision.
cq zeta_half(quad t) {
  const cq s{0.5Q, t};
  const auto N = static_cast<long>(ceilq(2 * t)) + 40;
  quad re = 0, im = 0;
  for (long m = N - 1; m >= 1; --m) {
    const quad lm = logq(static_cast<quad>(m));
    quad sn, cs;
    sincosq(t * lm, &sn, &cs);
    const quad r = 1 / sqrtq(static_cast<quad>(m));
    re += r * cs;
    im -= r * sn;
  }
  cq sum{re, im};
  const quad log_n = logq(static_cast<quad>(N));
  const cq n_minus_s = cexp(cq{-0.5Q * log_n, -t * log_n});
  sum = sum + (static_cast<quad>(N) * n_minus_s) / (s - cq{1, 0});
  sum = sum + 0.5Q * n_minus_s;
  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cq rising = s;  // s (s+1) ... (s+2k-2)
  cq npow = n_minus_s * cq{1 / static_cast<quad>(N), 0};
  quad factorial = 2;
  const quad inv_n2 = 1 / (static_cast<quad>(N) * N);
  for (int k = 1; k <= 22; ++k) {
    sum = sum + (bernoulli(k) / factorial) * (rising * npow);
    rising = rising * (s + cq{static_cast<quad>(2 * k - 1), 0}) * (s + cq{static_cast<quad>(2 * k), 0});
    npow = npow * cq{inv_n2, 0};
    factorial *= (2 * k + 1) * (2 * k + 2);
  }
  return sum;
}

}  // namespace

double theta(double t) { return static_cast<double>(theta_q(t)); }

__float128 hardy_z(__float128 t) {
  const quad th = theta_q(t);
  const cq z = zeta_half(t);
  quad s, c;
  sincosq(th, &s, &c);
  return c * z.re - s * z.im;
}

double hardy_z(double t) { return static_cast<double>(hardy_z(static_cast<quad>(t))); }

double bisect_zero(double a, double b) {
  quad lo = a, hi = b;
  quad f_lo = hardy_z(lo);
  const quad f_hi = hardy_z(hi);
  if ((f_lo > 0) == (f_hi > 0)) throw std::invalid_argument("bisect_zero: no sign change");
  while (hi - lo > 1e-15Q) {
    const quad mid = (lo + hi) / 2;
    const quad f_mid = hardy_z(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

double zeta_eta(double sigma) {
  // Borwein: d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  constexpr int n = 60;
  std::array<quad, n + 1> d{};
  quad term = 1 / static_cast<quad>(n);  // i = 0 term, (n-1)!/n! = 1/n
  quad acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= static_cast<quad>(n + i - 1) * (n - i + 1) * 4 / ((2 * i - 1) * (2 * i));
    acc += term;
    d[i] = n * acc;
  }
  const quad s = sigma;
  quad sum = 0;
  for (int k = 0; k < n; ++k) {
    const quad sign = (k % 2 == 0) ? 1 : -1;
    sum += sign * (d[k] - d[n]) / powq(static_cast<quad>(k + 1), s);
  }
  const quad eta = -sum / d[n];
  return static_cast<double>(eta / (1 - powq(2, 1 - s)));
}

double zeta_prime_at_2(std::size_t terms) {
  const std::size_t M = terms + 1;
  long double sum = 0.0L;
  for (std::size_t m = terms; m >= 2; --m) {
    const long double x = static_cast<long double>(m);
    sum += std::log(x) / (x * x);
  }
  // sum_{m >= M} f(m) ~ int_M^inf f + f(M)/2 - f'(M)/12, f = log x / x^2
  const long double x = static_cast<long double>(M);
  const long double lx = std::log(x);
  const long double integral = (lx + 1.0L) / x;
  const long double f = lx / (x * x);
  const long double df = (1.0L - 2.0L * lx) / (x * x * x);
  return static_cast<double>(-(sum + integral + 0.5L * f - df / 12.0L));
}

std::vector<std::complex<double>> dirichlet_derivs(std::complex<double> s_in, int max_order,
                                                   std::size_t terms) {
  using cl = std::complex<long double>;
  const cl s(s_in.real(), s_in.imag());
  std::vector<cl> sums(max_order + 1, cl{});
  for (std::size_t m = terms; m >= 1; --m) {
    const long double lm = std::log(static_cast<long double>(m));
    const cl base = std::exp(-s * lm);
    long double power = 1.0L;
    for (int n = 0; n <= max_order; ++n) {
      sums[n] += power * base;
      power *= -lm;
    }
  }
  // Tail over m > terms, with M = terms + 1:
  // int_M^inf (log x)^n x^{-s} dx = M^{1-s} sum_k n!/(n-k)! L^{n-k} / (s-1)^{k+1}
  // plus f(M)/2 - f'(M)/12.
  const long double M = static_cast<long double>(terms + 1);
  const long double L = std::log(M);
  const cl a = s - cl(1.0L);
  const cl m_pow = std::exp(-a * L);  // M^{1-s}
  std::vector<std::complex<double>> out;
  for (int n = 0; n <= max_order; ++n) {
    cl integral{};
    long double falling = 1.0L;  // n!/(n-k)!
    cl a_pow = a;
    for (int k = 0; k <= n; ++k) {
      integral += falling * std::pow(L, static_cast<long double>(n - k)) / a_pow;
      falling *= static_cast<long double>(n - k);
      a_pow *= a;
    }
    integral *= m_pow;
    const cl f = std::pow(L, static_cast<long double>(n)) * std::exp(-s * L);
    const cl df = std::exp(-(s + cl(1.0L)) * L) *
                  ((n > 0 ? n * std::pow(L, static_cast<long double>(n - 1)) : 0.0L) -
                   s * std::pow(L, static_cast<long double>(n)));
    const long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
    const cl total = sums[n] + sign * (integral + 0.5L * f - df / 12.0L);
    out.emplace_back(static_cast<double>(total.real()), static_cast<double>(total.imag()));
  }
  return out;
}

int count_sign_changes(double lo, double hi, int steps) {
  int changes = 0;
  quad prev = hardy_z(static_cast<quad>(lo));
  for (int i = 1; i <= steps; ++i) {
    const quad t = lo + (hi - lo) * static_cast<quad>(i) / steps;
    const quad value = hardy_z(t);
    if ((value > 0) != (prev > 0)) ++changes;
    prev = value;
  }
  return changes;
}

}  // namespace oracle
