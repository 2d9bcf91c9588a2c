#include "asymptote.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace reartool {

const char* to_string(End end) { return end == End::Zero ? "0+" : "inf"; }

bool exponents_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

double log_scale(double t) { return std::numbers::e + std::abs(std::log(t)); }

// Sign of the exponent once comparisons within rounding are collapsed to zero.
int exponent_sign(double x) {
    if (exponents_equal(x, 0.0)) return 0;
    return x > 0 ? 1 : -1;
}

}  // namespace

double Asymptote::eval(double t) const {
    if (coef == 0.0) return 0.0;
    const double L = log_scale(t);
    double v = coef * std::pow(t, power);
    if (log_power != 0.0) v *= std::pow(L, log_power);
    if (loglog_power != 0.0) v *= std::pow(std::log(L), loglog_power);
    return v;
}

double Asymptote::eval_dt(double u) const {
    if (coef == 0.0) return 0.0;
    const double L = std::numbers::e + std::abs(u);
    double v = coef * std::exp((power + 1.0) * u);
    if (log_power != 0.0) v *= std::pow(L, log_power);
    if (loglog_power != 0.0) v *= std::pow(std::log(L), loglog_power);
    return v;
}

std::string Asymptote::describe() const {
    if (coef == 0.0) return "0";
    std::ostringstream os;
    os.precision(6);
    os << coef;
    if (power != 0.0) os << "*t^" << power;
    if (log_power != 0.0) os << "*L^" << log_power;
    if (loglog_power != 0.0) os << "*lnL^" << loglog_power;
    return os.str();
}

Asymptote operator*(const Asymptote& a, const Asymptote& b) {
    if (a.is_zero() || b.is_zero()) return Asymptote::zero();
    return {a.coef * b.coef, a.power + b.power, a.log_power + b.log_power,
            a.loglog_power + b.loglog_power};
}

Asymptote pow(const Asymptote& a, double k) {
    if (k == 0.0) return Asymptote::constant(1.0);
    if (a.is_zero()) {
        require(k > 0, ErrorCode::NonIntegrable, "negative power of a vanishing function");
        return a;
    }
    return {std::pow(a.coef, k), a.power * k, a.log_power * k, a.loglog_power * k};
}

Asymptote reciprocal(const Asymptote& a) { return pow(a, -1.0); }

double LimitValue::as_double() const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Finite: return value;
        case Kind::Infinite: return INFINITY;
    }
    return 0.0;
}

LimitValue limit(const Asymptote& a, End end) {
    using K = LimitValue::Kind;
    if (a.is_zero()) return {K::Zero, 0.0};
    // t^power shrinks at 0+ for positive powers and grows at infinity; L grows at both ends.
    const int ps = exponent_sign(a.power) * (end == End::Zero ? -1 : 1);
    if (ps > 0) return {K::Infinite, INFINITY};
    if (ps < 0) return {K::Zero, 0.0};
    const int ls = exponent_sign(a.log_power);
    if (ls > 0) return {K::Infinite, INFINITY};
    if (ls < 0) return {K::Zero, 0.0};
    const int lls = exponent_sign(a.loglog_power);
    if (lls > 0) return {K::Infinite, INFINITY};
    if (lls < 0) return {K::Zero, 0.0};
    return {K::Finite, a.coef};
}

int compare_order(const Asymptote& a, const Asymptote& b, End end) {
    if (a.is_zero() && b.is_zero()) return 0;
    if (a.is_zero()) return -1;
    if (b.is_zero()) return 1;
    const Asymptote r{1.0, a.power - b.power, a.log_power - b.log_power,
                      a.loglog_power - b.loglog_power};
    switch (limit(r, end).kind) {
        case LimitValue::Kind::Infinite: return 1;
        case LimitValue::Kind::Zero: return -1;
        default: return 0;
    }
}

Asymptote dominant_sum(const Asymptote& a, const Asymptote& b, End end) {
    const int c = compare_order(a, b, end);
    if (c > 0) return a;
    if (c < 0) return b;
    Asymptote s = a;
    s.coef += b.coef;
    return s;
}

bool integrable_at(const Asymptote& a, End end) {
    if (a.is_zero()) return true;
    const int side = end == End::Zero ? 1 : -1;
    const double g = a.power + 1.0;
    if (!exponents_equal(g, 0.0)) return side * g > 0;
    if (!exponents_equal(a.log_power, -1.0)) return a.log_power < -1.0;
    return a.loglog_power < -1.0 && !exponents_equal(a.loglog_power, -1.0);
}

Asymptote primitive(const Asymptote& a, End end) {
    if (a.is_zero()) return a;
    const double g = a.power + 1.0;
    if (!exponents_equal(g, 0.0))
        return {a.coef / std::abs(g), g, a.log_power, a.loglog_power};
    const double b = a.log_power + 1.0;
    if (!exponents_equal(b, 0.0))
        return {a.coef / std::abs(b), 0.0, b, a.loglog_power};
    const double c = a.loglog_power + 1.0;
    require(!exponents_equal(c, 0.0), ErrorCode::Unsupported,
            "iterated-logarithm primitive beyond ln ln L at " + std::string(to_string(end)));
    return {a.coef / std::abs(c), 0.0, 0.0, c};
}

Asymptote derivative(const Asymptote& a, End end) {
    if (a.is_zero()) return a;
    const double sigma = end == End::Zero ? -1.0 : 1.0;
    if (!exponents_equal(a.power, 0.0))
        return {a.coef * a.power, a.power - 1.0, a.log_power, a.loglog_power};
    if (!exponents_equal(a.log_power, 0.0))
        return {a.coef * a.log_power * sigma, -1.0, a.log_power - 1.0, a.loglog_power};
    if (!exponents_equal(a.loglog_power, 0.0))
        return {a.coef * a.loglog_power * sigma, -1.0, -1.0, a.loglog_power - 1.0};
    return Asymptote::zero();
}

}  // namespace reartool
