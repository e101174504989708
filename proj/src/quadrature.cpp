#include "dwrates/quadrature.hpp"

#include <cmath>

namespace dw {
namespace {

double refine(const std::function<double(double)>& f, double a, double b, double fa,
              double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  // Eight starting panels guard against a lucky agreement on a coarse kink.
  constexpr int panels = 8;
  const double h = (b - a) / panels;
  double total = 0.0;
  double fa = f(a);
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * h;
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += refine(f, lo, hi, fa, fm, fb, whole, tol / panels, max_depth);
    fa = fb;
  }
  return total;
}

}  // namespace dw
