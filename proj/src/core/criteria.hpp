#pragma once

#include <memory>
#include <string>

#include "norms.hpp"
#include "quasiconcave.hpp"
#include "sup_ratio.hpp"

namespace reartool {

/// Weighted integral pieces shared by the criteria; all are exact building blocks
/// for RatioProblem.
Integrand weight_integrand(const PiecewiseFn& w);
/// phi(s)^-p w(s)
Integrand weighted_by(const QuasiconcaveFn& phi, double p, const PiecewiseFn& w);
/// phi(t)^p
Multiplier phi_power(const QuasiconcaveFn& phi, double p);

/// int_0^t w1 + t^p int_t^R s^-p w1
std::vector<Component> fundamental_components(double p, const PiecewiseFn& w);

ConditionReport sgg_condition(double p, const QuasiconcaveFn& phi, const PiecewiseFn& w1,
                              const PiecewiseFn& w2, std::size_t grid = 0);
ConditionReport tgg_condition(double p, const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                              const PiecewiseFn& w2, std::size_t grid = 0);
/// Also evaluates sgg and tgg (in `parts`) and checks the two dominations.
ConditionReport stgg_condition(double p, const QuasiconcaveFn& phi, const QuasiconcaveFn& psi,
                               const PiecewiseFn& w1, const PiecewiseFn& w2,
                               std::size_t grid = 0);

enum class WeightKind { S, T };

/// S: w = p phi^(p-1) phi' int_t^R phi^-p w2
/// T: w = w2 + p psi^(p-1) psi' int_0^t psi^-p w2
class DerivedWeight {
public:
    DerivedWeight(WeightKind kind, double p, const QuasiconcaveFn& phi, const PiecewiseFn& w2,
                  std::size_t grid = 0);

    WeightKind kind() const;
    const Domain& domain() const;
    double operator()(double t) const;
    Integrand integrand() const;

    /// int_0^t w by quadrature of w itself.
    double cumulative(double t) const;
    /// The same integral via integration by parts:
    ///   S: int_0^t w2 + phi^p(t) int_t^R phi^-p w2 - lim_{s->0+} phi^p(s) int_s^R phi^-p w2
    ///   T: psi^p(t) int_0^t psi^-p w2
    double by_parts(double t) const;
    /// The subtracted limit term of the S identity (0 for T).
    double boundary_term() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

enum class HardyKind { Neugebauer, Ghs, Gl };
const char* to_string(HardyKind k);
HardyKind parse_hardy_kind(const std::string& s);

/// sup of int_0^t w / fundamental(w1)
ConditionReport neugebauer_condition(double p, const DerivedWeight& w, const PiecewiseFn& w1,
                                     std::size_t grid = 0);
/// sup of fundamental(w2) / fundamental(w1)
ConditionReport ghs_condition(double p, const PiecewiseFn& w1, const PiecewiseFn& w2,
                              std::size_t grid = 0);
/// sup of psi^p int_0^t psi^-p w2 / fundamental(w1)
ConditionReport gl_condition(double p, const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                             const PiecewiseFn& w2, std::size_t grid = 0);

}  // namespace reartool
