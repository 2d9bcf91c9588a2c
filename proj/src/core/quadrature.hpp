#pragma once

#include <functional>
#include <vector>

#include "asymptote.hpp"

namespace reartool {

/// A nonnegative function on (0, R) together with its leading behaviour at both
/// ends. Convergence at 0+ and +inf is decided from `head`/`tail`, never numerically.
struct Integrand {
    std::function<double(double)> f;
    Asymptote head;
    Asymptote tail;
    std::vector<double> breaks;  // points where f is not smooth
};

/// Integral of g over (a, b), 0 <= a < b <= inf. Returns +inf when the integral
/// diverges at an unbounded end (0 or inf).
double integrate(const Integrand& g, double a, double b);

/// Adaptive Gauss-Kronrod on [a, b] with 0 < a < b < inf, in the variable u = ln t.
double integrate_log_segment(const std::function<double(double)>& f, double a, double b);

}  // namespace reartool
