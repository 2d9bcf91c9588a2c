#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asymptote.hpp"
#include "funcspace.hpp"
#include "sup_ratio.hpp"

namespace reartool {

/// d * 1_{t>0} + c * t^alpha * (e + |ln t|)^beta
struct ClosedForm {
    double jump = 0.0;
    double scale = 1.0;
    double alpha = 1.0;
    double beta = 0.0;
};

/// Strictly positive samples, interpolated linearly in log-log coordinates.
struct Sampled {
    std::vector<double> grid;
    std::vector<double> values;
};

/// Validated quasiconcave function on [0,R): phi(0) = 0, phi nondecreasing,
/// phi(t)/t nonincreasing. Cheap to copy.
class QuasiconcaveFn {
public:
    class Impl;

    static QuasiconcaveFn closed_form(Domain domain, ClosedForm form);
    static QuasiconcaveFn sampled(Domain domain, Sampled samples);
    static QuasiconcaveFn power(Domain domain, double alpha, double scale = 1.0);

    double operator()(double t) const;
    double derivative(double t) const;
    /// phi(0+); positive exactly when phi jumps at the origin.
    double at_zero() const;
    bool continuous() const { return at_zero() == 0.0; }
    bool is_sampled() const;
    const Domain& domain() const;

    /// t / phi(t)
    QuasiconcaveFn complementary() const;
    QuasiconcaveFn scaled(double m) const;

    /// The function as a single power-log term when it is one.
    std::optional<Term> as_term() const;
    Asymptote head() const;
    Asymptote tail() const;
    Asymptote derivative_asymptote(End end) const;

    /// Smallest t with phi(t) >= y, clamped to [0, R].
    double inverse(double y) const;

    /// Points where phi is not smooth (sample nodes, t = 1 for log factors).
    std::vector<double> kinks() const;

    std::shared_ptr<const PositiveFn> as_factor() const;
    std::string describe() const;

    /// Underlying closed form when not complemented or rescaled.
    std::optional<ClosedForm> closed() const;

private:
    explicit QuasiconcaveFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct MethodVerdict {
    std::string method;
    bool holds = false;
    double constant = 0.0;  // INFINITY when the sup diverges
    std::string witness;
    std::string reason;
};

struct BReport {
    bool holds = false;
    double constant = 0.0;
    std::string witness;
    bool grid_limited = false;
    std::vector<MethodVerdict> methods;
    // Dilation data: first dyadic c and the inf ratio it achieves.
    std::optional<double> dilation_c;
    std::optional<double> dilation_ratio;
};

enum class BMethod { Integral, TildeIntegral, Dilation };

const char* to_string(BMethod m);
BMethod parse_b_method(const std::string& s);

BReport b_check(const QuasiconcaveFn& phi, BMethod method, std::size_t grid_size = 0);

/// All three characterizations; throws CharacterizationDisagreement if they differ.
BReport b_consensus(const QuasiconcaveFn& phi, std::size_t grid_size = 0);

/// The bound on the integral constant implied by a dilation ratio r at c.
double dilation_bound(double c, double r);

}  // namespace reartool
