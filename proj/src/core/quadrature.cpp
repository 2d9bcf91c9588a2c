#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace reartool {

namespace {

constexpr double kTol = 1e-13;

// f(e^u) e^u, falling back to the asymptote where t under/overflows or the
// product of factors does.
double log_integrand(const std::function<double(double)>& f, const Asymptote& fallback,
                     double u) {
    const double t = std::exp(u);
    if (t == 0.0 || !std::isfinite(t)) return fallback.eval_dt(u);
    const double v = f(t) * t;
    if (!std::isfinite(v)) return fallback.eval_dt(u);
    return v;
}

boost::math::quadrature::exp_sinh<double>& half_line_rule() {
    thread_local boost::math::quadrature::exp_sinh<double> rule;
    return rule;
}

double head_integral(const Integrand& g, double b) {
    const auto F = [&](double u) { return log_integrand(g.f, g.head, u); };
    try {
        return half_line_rule().integrate(F, -std::numeric_limits<double>::infinity(),
                                          std::log(b), 1e-12);
    } catch (const std::exception& e) {
        fail(ErrorCode::NonIntegrable, std::string("quadrature near 0+ failed: ") + e.what());
    }
}

double tail_integral(const Integrand& g, double a) {
    const auto F = [&](double u) { return log_integrand(g.f, g.tail, u); };
    try {
        return half_line_rule().integrate(F, std::log(a),
                                          std::numeric_limits<double>::infinity(), 1e-12);
    } catch (const std::exception& e) {
        fail(ErrorCode::NonIntegrable, std::string("quadrature near inf failed: ") + e.what());
    }
}

}  // namespace

double integrate_log_segment(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    const auto F = [&](double u) { return f(std::exp(u)) * std::exp(u); };
    const double ua = std::log(a), ub = std::log(b);
    if (!(ub > ua)) return 0.0;
    // Boost compares the error on [-1,1] against a tolerance already scaled by
    // the half-width, so the requested tolerance is divided by it here.
    const double half = 0.5 * (ub - ua);
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(F, ua, ub, 15,
                                                                        kTol / half, &err);
}

double integrate(const Integrand& g, double a, double b) {
    require(a >= 0.0 && b >= a, ErrorCode::InvalidArgument, "integrate: need 0 <= a <= b");
    if (a == b) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    if (a == 0.0 && !integrable_at(g.head, End::Zero)) return inf;
    if (b == inf && !integrable_at(g.tail, End::Infinity)) return inf;

    std::vector<double> cuts;
    cuts.reserve(g.breaks.size() + 3);
    cuts.push_back(a);
    for (double x : g.breaks)
        if (x > a && x < b) cuts.push_back(x);
    if (1.0 > a && 1.0 < b) cuts.push_back(1.0);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (lo == 0.0 && hi == inf) {
            total += head_integral(g, 1.0) + tail_integral(g, 1.0);
        } else if (lo == 0.0) {
            total += head_integral(g, hi);
        } else if (hi == inf) {
            total += tail_integral(g, lo);
        } else {
            total += integrate_log_segment(g.f, lo, hi);
        }
    }
    return total;
}

}  // namespace reartool
