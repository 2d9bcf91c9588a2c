#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "asymptote.hpp"
#include "quadrature.hpp"

namespace reartool {

/// The interval (0, R); R may be +inf.
struct Domain {
    double R = INFINITY;

    static Domain half_line() { return {INFINITY}; }
    bool bounded() const { return std::isfinite(R); }
    bool operator==(const Domain&) const = default;
};

Domain make_domain(double R);

/// coef * t^power * (e + |ln t|)^log_power
struct Term {
    double coef = 0.0;
    double power = 0.0;
    double log_power = 0.0;

    double eval(double t) const;
    Asymptote asymptote() const { return {coef, power, log_power, 0.0}; }
};

/// Exact when log_power == 0 or power == -1; Gauss-Kronrod/exp-sinh otherwise.
double integrate(const Term& term, double a, double b);

/// A positive function that may appear as a factor inside a piece, e.g. 1/phi.
class PositiveFn {
public:
    virtual ~PositiveFn() = default;
    virtual double value(double t) const = 0;
    virtual Asymptote head() const = 0;
    virtual Asymptote tail() const = 0;
};

/// (sum of terms) * factor^factor_power
struct Piece {
    std::vector<Term> terms;
    std::shared_ptr<const PositiveFn> factor;
    double factor_power = 1.0;

    static Piece constant(double v);
    static Piece power(double coef, double power, double log_power = 0.0);

    double eval(double t) const;
    bool is_zero() const { return terms.empty(); }
    Asymptote asymptote(End end) const;
};

/// Piecewise function on (0, R). Piece k lives on [breaks[k-1], breaks[k]) with
/// breaks[-1] = 0 and breaks[n] = R, so evaluation is right-continuous.
class PiecewiseFn {
public:
    PiecewiseFn() : pieces_(1) {}
    PiecewiseFn(Domain domain, std::vector<double> breaks, std::vector<Piece> pieces);

    static PiecewiseFn single(Domain domain, Piece piece);
    static PiecewiseFn power(Domain domain, double coef, double power, double log_power = 0.0);

    double operator()(double t) const;

    const Domain& domain() const { return domain_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    std::size_t piece_index(double t) const;
    double piece_lo(std::size_t k) const { return k == 0 ? 0.0 : breaks_[k - 1]; }
    double piece_hi(std::size_t k) const { return k == breaks_.size() ? domain_.R : breaks_[k]; }

    Asymptote head() const { return pieces_.front().asymptote(End::Zero); }
    Asymptote tail() const { return pieces_.back().asymptote(End::Infinity); }

    Integrand integrand() const;
    PiecewiseFn scaled(double c) const;

private:
    Domain domain_;
    std::vector<double> breaks_;
    std::vector<Piece> pieces_;
};

/// Pointwise product. Factor-carrying pieces multiply only when they share the factor.
PiecewiseFn multiply(const PiecewiseFn& f, const PiecewiseFn& g);

/// Pointwise sum; same factor rule as multiply().
PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g);

/// t^k * f(t)
PiecewiseFn multiply_power(const PiecewiseFn& f, double k);

/// Integral over (a, b), 0 <= a < b <= R; +inf when divergent at 0 or inf.
double integrate(const PiecewiseFn& f, double a, double b);

/// Same as integrate(), but throws NonIntegrable instead of returning +inf.
double integrate_finite(const PiecewiseFn& f, double a, double b);

/// Step function: value values[i] on [ends[i-1], ends[i]) with ends[-1] = 0 and
/// zero beyond ends.back().
class StepFn {
public:
    StepFn() = default;
    StepFn(Domain domain, std::vector<double> ends, std::vector<double> values);

    double operator()(double t) const;
    const Domain& domain() const { return domain_; }
    const std::vector<double>& ends() const { return ends_; }
    const std::vector<double>& values() const { return values_; }
    double support_end() const { return ends_.empty() ? 0.0 : ends_.back(); }

    /// Lebesgue measure of {|f| > lambda}.
    double measure_above(double lambda) const;
    /// integral of |f|^p
    double integral_pow(double p) const;
    PiecewiseFn to_piecewise() const;
    StepFn scaled(double c) const;

private:
    Domain domain_;
    std::vector<double> ends_;
    std::vector<double> values_;
};

StepFn add(const StepFn& f, const StepFn& g);

/// Nonnegative, nonincreasing step function in canonical form (no zero-length
/// pieces, adjacent values distinct, no trailing zero piece). The canonical carrier for f*.
class MonotoneStepFn {
public:
    MonotoneStepFn() = default;
    MonotoneStepFn(Domain domain, std::vector<double> ends, std::vector<double> values);

    static MonotoneStepFn indicator(Domain domain, double a, double height = 1.0);

    double operator()(double t) const;
    /// f(t-), the value approached from the left.
    double left_limit(double t) const;

    const Domain& domain() const { return domain_; }
    const std::vector<double>& ends() const { return ends_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool is_zero() const { return values_.empty(); }
    double support_end() const { return ends_.empty() ? 0.0 : ends_.back(); }
    double sup() const { return values_.empty() ? 0.0 : values_.front(); }

    /// integral of f over (0, t)
    double cumulative(double t) const;
    double l1() const { return cumulative(support_end()); }
    /// f**(t) = cumulative(t) / t
    double double_star(double t) const;

    StepFn as_step() const { return StepFn(domain_, ends_, values_); }
    MonotoneStepFn scaled(double c) const;
    /// t -> f(r t), with zero outside the domain.
    MonotoneStepFn dilated(double r) const;
    /// min(f, level) and (f - level)_+
    MonotoneStepFn truncated_below(double level) const;
    MonotoneStepFn excess_over(double level) const;

private:
    Domain domain_;
    std::vector<double> ends_;
    std::vector<double> values_;
    std::vector<double> prefix_;  // prefix_[i] = integral over (0, ends[i])
};

MonotoneStepFn rearrange(const StepFn& f);

/// Exact f** for a rearranged step function: v_i + k_i/t on each piece.
PiecewiseFn maximal(const MonotoneStepFn& fstar);

/// t -> (1/t) * integral of g over (0, t), for a nonnegative PiecewiseFn g.
class HardyAverage {
public:
    explicit HardyAverage(PiecewiseFn g);

    double operator()(double t) const;
    double cumulative(double t) const;
    double total() const { return total_; }
    const PiecewiseFn& base() const { return g_; }
    const std::vector<double>& breaks() const { return g_.breaks(); }

    Asymptote head() const;
    Asymptote tail() const;

private:
    PiecewiseFn g_;
    std::vector<double> prefix_;
    double total_ = 0.0;
};

/// Log-spaced points covering (0, R) away from the ends: [max(1e-9, 1e-9 R), min(R(1-1e-9), 1e9)].
std::vector<double> log_grid(const Domain& domain, std::size_t n);

}  // namespace reartool
