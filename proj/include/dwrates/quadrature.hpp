#pragma once

#include <functional>

namespace dw {

// Adaptive Simpson with Richardson correction; tol is absolute over [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-9, int max_depth = 40);

}  // namespace dw
