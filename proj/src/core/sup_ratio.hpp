#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asymptote.hpp"
#include "funcspace.hpp"
#include "quadrature.hpp"

namespace reartool {

/// Default number of log-grid points for every sup/inf sweep.
std::size_t default_grid_size();
void set_default_grid_size(std::size_t n);

/// A positive pointwise factor with known leading behaviour at 0+ and inf.
struct Multiplier {
    std::function<double(double)> f;
    Asymptote head = Asymptote::constant(1.0);
    Asymptote tail = Asymptote::constant(1.0);

    static Multiplier one();
    static Multiplier power(double k);  // t^k
};

enum class Inner { None, Below, Above };

/// mult(t) * (1 | integral of g over (0,t) | integral of g over (t,R)).
struct Component {
    Multiplier mult;
    Inner inner = Inner::None;
    Integrand g;
};

struct RatioProblem {
    Domain domain;
    std::vector<Component> num;
    std::vector<Component> den;
    std::size_t grid_size = 0;  // 0 = default_grid_size()
    bool grid_limited = false;  // asymptotes are extrapolated rather than known
};

struct SubVerdict {
    std::string name;
    bool finite = true;
    double sup_value = 0.0;
    std::string witness;
};

struct ConditionReport {
    bool finite = true;
    double sup_value = 0.0;
    std::optional<double> witness_t;
    std::string witness_tag;  // "0+", "inf" or "R-" when the sup is a limit
    std::optional<double> numerator;
    std::optional<double> denominator;
    std::size_t grid_points = 0;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    int refinement_rounds = 0;
    bool grid_limited = false;
    std::string reason;
    std::vector<std::string> warnings;
    std::vector<SubVerdict> parts;  // component criteria evaluated alongside

    std::string witness() const;
};

/// sup over (0,R) of N(t)/D(t), with the end behaviour decided from asymptotes.
ConditionReport sup_ratio(const RatioProblem& problem);

/// Evaluates N or D of a problem at arbitrary t; exposed for tests and witnesses.
class RatioSide {
public:
    RatioSide(const Domain& domain, const std::vector<Component>& parts,
              const std::vector<double>& grid);

    double at_index(std::size_t i) const;
    double operator()(double t) const;
    /// Leading behaviour at an end; infinite() when some integral diverges for every t.
    Asymptote asymptote(End end) const;
    bool infinite_everywhere() const { return !diverging_.empty(); }
    const std::string& diverging() const { return diverging_; }

private:
    struct Table {
        std::vector<double> below;  // integral over (0, grid[i])
        std::vector<double> above;  // integral over (grid[i], R)
        double total = 0.0;
    };

    double inner_at(std::size_t c, double t) const;

    Domain domain_;
    std::vector<Component> parts_;
    std::vector<double> grid_;
    std::vector<Table> tables_;
    std::string diverging_;
};

}  // namespace reartool
