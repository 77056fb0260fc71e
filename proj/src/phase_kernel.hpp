#pragma once

// Batched cos/sin of products t * log(m) with the product carried in
// double-double. The loops are written so GCC vectorizes them; a libm call
// per term would cost several times more in the main Euler-Maclaurin sum.

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace shankslab::detail {

inline constexpr double kTwoOverPi = 0.63661977236758134308;
// pi/2 split into three parts (fdlibm pio2_1, pio2_1t-style split).
inline constexpr double kPio2Hi = 1.57079632679489655800e+00;
inline constexpr double kPio2Mid = 6.12323399573676603587e-17;
inline constexpr double kPio2Lo = -1.4973849048591698329e-33;

// Minimax kernels on [-pi/4, pi/4] (fdlibm __kernel_sin / __kernel_cos).
inline void sincos_kernel(double r, double& s, double& c) noexcept {
  const double z = r * r;
  const double ps =
      -1.66666666666666324348e-01 +
      z * (8.33333333332248946124e-03 +
           z * (-1.98412698298579493134e-04 +
                z * (2.75573137070700676789e-06 +
                     z * (-2.50507602534068634195e-08 + z * 1.58969099521155010221e-10))));
  const double pc =
      4.16666666666666019037e-02 +
      z * (-1.38888888888741095749e-03 +
           z * (2.48015872894767294178e-05 +
                z * (-2.75573143513906633035e-07 +
                     z * (2.08757232129817482790e-09 + z * -1.13596475577881948265e-11))));
  s = r + (r * z) * ps;
  c = (1.0 - 0.5 * z) + (z * z) * pc;
}

// cos and sin of (p + e) where p is a double and e a small correction
// (|e| << ulp(p) * 2^10). Valid for |p| < 2^30.
inline void sincos_dd(double p, double e, double& c, double& s) noexcept {
  const double q = std::nearbyint(p * kTwoOverPi);
  double r = std::fma(-q, kPio2Hi, p);
  r = std::fma(-q, kPio2Mid, r);
  r = std::fma(-q, kPio2Lo, r) + e;
  double sr, cr;
  sincos_kernel(r, sr, cr);
  const auto quadrant = static_cast<std::int64_t>(q) & 3;
  const double ss = (quadrant & 1) ? cr : sr;
  const double cc = (quadrant & 1) ? sr : cr;
  s = (quadrant & 2) ? -ss : ss;
  c = ((quadrant + 1) & 2) ? -cc : cc;
}

// c[i] + i s[i] = exp(i t (hi[i] + lo[i])).
inline void phases_scaled_logs(double t, const double* __restrict hi, const double* __restrict lo,
                               std::size_t len, double* __restrict c,
                               double* __restrict s) noexcept {
#pragma GCC ivdep
  for (std::size_t i = 0; i < len; ++i) {
    const double p = t * hi[i];
    const double e = std::fma(t, hi[i], -p) + t * lo[i];
    sincos_dd(p, e, c[i], s[i]);
  }
}

// c[i] + i s[i] = exp(i t[i] (hi + lo)).
inline void phases_fixed_log(const double* __restrict t, double hi, double lo, std::size_t len,
                             double* __restrict c, double* __restrict s) noexcept {
#pragma GCC ivdep
  for (std::size_t i = 0; i < len; ++i) {
    const double p = t[i] * hi;
    const double e = std::fma(t[i], hi, -p) + t[i] * lo;
    sincos_dd(p, e, c[i], s[i]);
  }
}

// Double-double log m, and m^{-1/2}, for m up to a fixed capacity.
struct LogTable {
  static constexpr std::size_t kCapacity = std::size_t{1} << 17;
  const double* hi;
  const double* lo;
  const double* rsqrt;
};

// Built once on first use; immutable afterwards.
const LogTable& log_table();

// Double-double log m for m in [first, first + len), from the table where it
// reaches, computed otherwise.
void fill_logs(std::size_t first, std::size_t len, double* hi, double* lo);

// Double-double log of a single positive integer.
void log_dd(std::size_t m, double& hi, double& lo);

}  // namespace shankslab::detail
