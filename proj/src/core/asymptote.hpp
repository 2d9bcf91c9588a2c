#pragma once

#include <string>

namespace reartool {

enum class End { Zero, Infinity };

const char* to_string(End end);

/// Leading-order behaviour of a positive function near 0+ or +inf on the scale
///
///     coef * t^power * L(t)^log_power * (ln L(t))^loglog_power,   L(t) = e + |ln t|.
///
/// A zero coefficient means the function vanishes identically near the end.
struct Asymptote {
    double coef = 0.0;
    double power = 0.0;
    double log_power = 0.0;
    double loglog_power = 0.0;

    static Asymptote constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static Asymptote zero() { return {}; }

    bool is_zero() const { return coef == 0.0; }
    double eval(double t) const;
    /// Value at t = e^u multiplied by t, i.e. the integrand after t = e^u.
    double eval_dt(double u) const;
    std::string describe() const;
};

bool exponents_equal(double a, double b);

Asymptote operator*(const Asymptote& a, const Asymptote& b);
Asymptote pow(const Asymptote& a, double k);
Asymptote reciprocal(const Asymptote& a);

/// +1 when a is of strictly larger order than b near `end`, -1 when smaller, 0 when comparable.
int compare_order(const Asymptote& a, const Asymptote& b, End end);

/// Leading term of a + b.
Asymptote dominant_sum(const Asymptote& a, const Asymptote& b, End end);

struct LimitValue {
    enum class Kind { Zero, Finite, Infinite };
    Kind kind = Kind::Zero;
    double value = 0.0;

    bool infinite() const { return kind == Kind::Infinite; }
    double as_double() const;
};

LimitValue limit(const Asymptote& a, End end);

bool integrable_at(const Asymptote& a, End end);

/// Leading term of the integral of `a` between t and `end` when that integral
/// converges, otherwise of the integral between a fixed point and t.
Asymptote primitive(const Asymptote& a, End end);

/// Leading term of the derivative; exact for a single power-log term.
Asymptote derivative(const Asymptote& a, End end);

}  // namespace reartool
