#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "funcspace.hpp"
#include "norms.hpp"
#include "quasiconcave.hpp"

namespace reartool {

/// Seeded random step functions: 1-64 pieces, breakpoints log-uniform over 12
/// decades, values log-uniform over 6 decades, in random order.
class StepSampler {
public:
    StepSampler(Domain domain, std::uint64_t seed);
    StepFn next();

private:
    Domain domain_;
    std::mt19937_64 rng_;
};

struct SampleConfig {
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    double slack = 1e-6;  // relative tolerance on proven bounds
};

struct SubCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;  // max observed ratio
    std::optional<double> bound;
    std::string detail;
};

enum class Direction { Sufficiency, Necessity };
const char* to_string(Direction d);

struct LemmaVerdict {
    std::string lemma;
    Direction direction = Direction::Sufficiency;
    bool passed = false;
    double max_ratio = 0.0;
    std::optional<double> bound;  // proven bound the ratios are checked against
    double doubled_max_ratio = 0.0;  // max over twice the samples (stability probe)
    bool stable = false;
    std::size_t samples = 0;  // sufficiency: requested count; twice as many are drawn
    std::vector<double> parameters;  // necessity: family parameter per level
    std::vector<double> sequence;    // necessity: ratio per level
    std::string witness;
    std::vector<SubCheck> checks;
    std::vector<std::string> notes;
};

/// sup phi f* over (0,R) for a step f*.
double one_star_sup(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar);

LemmaVerdict verify_one_star(const QuasiconcaveFn& phi, const SampleConfig& cfg);

enum class Endpoint { TL1, TM, SM, SLinf };
const char* to_string(Endpoint e);
Endpoint parse_endpoint(const std::string& s);

LemmaVerdict verify_endpoints(Endpoint which, const QuasiconcaveFn& phi, const SampleConfig& cfg);

enum class Starfall { Tff, Tstar, Sstar, Sff, Combined };
const char* to_string(Starfall s);
Starfall parse_starfall(const std::string& s);

LemmaVerdict verify_starfalls(Starfall which, const QuasiconcaveFn& phi,
                              const QuasiconcaveFn& psi, const SampleConfig& cfg);

/// Operators used to exercise the interpolation theorem. All are linear (K = 1)
/// and map a rearranged step function to the nonincreasing (Tf)*.
class DemoOperator {
public:
    enum class Kind { HardyAverage, Identity, Dilation, Sum };

    static DemoOperator parse(const std::string& tag);  // hardy-average, identity, dilation:r, sum
    explicit DemoOperator(Kind kind, double r = 2.0);

    Kind kind() const { return kind_; }
    double dilation() const { return r_; }
    double quasilinearity() const { return 1.0; }
    std::string name() const;
    PiecewiseFn apply(const MonotoneStepFn& fstar) const;

private:
    Kind kind_;
    double r_;
};

LemmaVerdict verify_interpolation(const DemoOperator& op, double p, const QuasiconcaveFn& phi,
                                  const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                                  const PiecewiseFn& w2, const SampleConfig& cfg);

/// Evaluates phi(s) f**(s) and its one-sided suprema, so that
/// S_phi f**(t) = below(t) / phi(t) and T_phi f**(t) = above(t) / phi(t).
class PhiDoubleStar {
public:
    PhiDoubleStar(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar);

    double h(double s) const;
    double below(double t) const;  // sup over (0,t)
    double above(double t) const;  // sup over (t,R)

private:
    double sup_on(double lo, double hi) const;

    QuasiconcaveFn phi_;
    MonotoneStepFn f_;
    std::vector<double> edge_;    // 0, ends...
    std::vector<double> prefix_;  // prefix_[i]: sup over pieces before i
    std::vector<double> suffix_;  // suffix_[i]: sup over pieces from i on, tail included
};

}  // namespace reartool
