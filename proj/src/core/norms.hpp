#pragma once

#include <functional>
#include <optional>
#include <string>

#include "funcspace.hpp"
#include "quasiconcave.hpp"

namespace reartool {

enum class NormMethod { Exact, Quadrature };
const char* to_string(NormMethod m);

struct NormValue {
    double value = 0.0;
    NormMethod method = NormMethod::Exact;
    double error_bound = 0.0;  // relative
};

/// Golden-section maximisation of h over [a, b] in the variable u = ln t.
double golden_max(const std::function<double(double)>& h, double a, double b, double* arg);
/// Samples h at log-spaced points on [a,b] and refines around the best one.
double search_max(const std::function<double(double)>& h, double a, double b, int samples);

/// sup phi(t) f**(t)
NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const StepFn& f);
NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar);
/// sup phi(t) g**(t) for g** given as a Hardy average (operator outputs).
NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const HardyAverage& gss);

/// Lorentz gamma space: exponent p and weight w on (0,R).
class GammaSpace {
public:
    GammaSpace(double p, PiecewiseFn weight);

    double p() const { return p_; }
    const PiecewiseFn& weight() const { return w_; }
    const Domain& domain() const { return w_.domain(); }

    /// Empty when nontrivial, otherwise which clause failed.
    std::optional<std::string> triviality() const;
    void require_nontrivial() const;

private:
    double p_;
    PiecewiseFn w_;
};

/// (int (f**)^p w)^(1/p)
NormValue gamma_norm(const GammaSpace& space, const StepFn& f);
NormValue gamma_norm(const GammaSpace& space, const MonotoneStepFn& fstar);
NormValue gamma_norm(const GammaSpace& space, const HardyAverage& gss);

/// int_0^t w + t^p int_t^R s^-p w; the p-th power of the fundamental function.
double gamma_fundamental(const GammaSpace& space, double t);

struct EmbeddingReport {
    bool holds = false;
    double limit = 0.0;     // lim_{t->0+} t^p int_t^R s^-p w
    double grid_min = 0.0;  // same quantity at the smallest grid point
    std::string reason;
};

EmbeddingReport linfty_embedding(const GammaSpace& space);
bool linfty_embedding_check(const GammaSpace& space);

/// int_0^R phi^-p w < inf; reported true when phi is continuous.
bool s_nontriviality_check(const GammaSpace& space, const QuasiconcaveFn& phi);

}  // namespace reartool
