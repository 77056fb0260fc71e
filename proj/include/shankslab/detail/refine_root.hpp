#pragma once

#include <cmath>
#include <utility>

#include "shankslab/errors.hpp"

namespace shankslab {

template <class F>
RootBracket refine_root(F&& f, double a, double b, double fa, double fb, double width) {
  if ((fa > 0.0) == (fb > 0.0)) throw DomainError("refine_root: endpoints do not bracket a root");
  constexpr int kMaxIterations = 200;
  const double tol1 = 0.5 * width;

  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  int evaluations = 0;
  for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) {
      return {b, fb, std::min(b, c), std::max(b, c), evaluations};
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double bound1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double bound2 = std::fabs(e * q);
      if (2.0 * p < std::min(bound1, bound2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    ++evaluations;
  }
  throw ConsistencyError("refine_root: no convergence");
}

}  // namespace shankslab
