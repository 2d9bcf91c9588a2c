#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

void check_spaces(double p, const PiecewiseFn& w1, const PiecewiseFn& w2) {
    require(w1.domain() == w2.domain(), ErrorCode::DomainMismatch,
            "weights w1 and w2 live on different domains");
    GammaSpace(p, w1).require_nontrivial();
    GammaSpace(p, w2).require_nontrivial();
}

void check_domain(const QuasiconcaveFn& phi, const PiecewiseFn& w, const char* name) {
    require(phi.domain() == w.domain(), ErrorCode::DomainMismatch,
            std::string(name) + " and the weights live on different domains");
}

void warn_unless_b(const QuasiconcaveFn& phi, const char* name, ConditionReport& rep) {
    try {
        const BReport b = b_consensus(phi);
        if (!b.holds)
            rep.warnings.push_back(std::string(name) +
                                   " does not satisfy the B-condition; the boundedness theorem "
                                   "does not apply to this verdict");
    } catch (const Error& e) {
        rep.warnings.push_back(std::string(name) + ": B-condition undecided: " + e.what());
    }
}

// Extra hypotheses when phi jumps at the origin.
void require_jump_conditions(double p, const QuasiconcaveFn& phi, const PiecewiseFn& w1,
                             const PiecewiseFn& w2) {
    if (phi.continuous()) return;
    const EmbeddingReport emb = linfty_embedding(GammaSpace(p, w1));
    require(emb.holds, ErrorCode::PreconditionViolated,
            "phi is discontinuous at 0 and w1 violates lim_{t->0+} t^p int_t^R s^-p w1 > 0 (" +
                emb.reason + ")");
    require(s_nontriviality_check(GammaSpace(p, w2), phi), ErrorCode::PreconditionViolated,
            "phi is discontinuous at 0 and int_0^R phi^-p w2 diverges");
}

RatioProblem base_problem(double p, const PiecewiseFn& w1, std::size_t grid, bool limited) {
    RatioProblem prob;
    prob.domain = w1.domain();
    prob.grid_size = grid;
    prob.grid_limited = limited;
    prob.den = fundamental_components(p, w1);
    return prob;
}

SubVerdict sub(const std::string& name, const ConditionReport& r) {
    return {name, r.finite, r.sup_value, r.witness()};
}

}  // namespace

Integrand weight_integrand(const PiecewiseFn& w) { return w.integrand(); }

Integrand weighted_by(const QuasiconcaveFn& phi, double p, const PiecewiseFn& w) {
    return Integrand{[phi, p, w](double s) {
                         const double v = w(s);
                         return v == 0.0 ? 0.0 : std::pow(phi(s), -p) * v;
                     },
                     pow(phi.head(), -p) * w.head(), pow(phi.tail(), -p) * w.tail(),
                     merged(w.breaks(), phi.kinks())};
}

Multiplier phi_power(const QuasiconcaveFn& phi, double p) {
    return {[phi, p](double t) { return std::pow(phi(t), p); }, pow(phi.head(), p),
            pow(phi.tail(), p)};
}

std::vector<Component> fundamental_components(double p, const PiecewiseFn& w) {
    return {{Multiplier::one(), Inner::Below, weight_integrand(w)},
            {Multiplier::power(p), Inner::Above, weight_integrand(multiply_power(w, -p))}};
}

ConditionReport sgg_condition(double p, const QuasiconcaveFn& phi, const PiecewiseFn& w1,
                              const PiecewiseFn& w2, std::size_t grid) {
    check_spaces(p, w1, w2);
    check_domain(phi, w1, "phi");
    require_jump_conditions(p, phi, w1, w2);
    RatioProblem prob = base_problem(p, w1, grid, phi.is_sampled());
    prob.num = {{Multiplier::one(), Inner::Below, weight_integrand(w2)},
                {phi_power(phi, p), Inner::Above, weighted_by(phi, p, w2)}};
    ConditionReport rep = sup_ratio(prob);
    warn_unless_b(phi, "phi", rep);
    return rep;
}

ConditionReport tgg_condition(double p, const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                              const PiecewiseFn& w2, std::size_t grid) {
    check_spaces(p, w1, w2);
    check_domain(psi, w1, "psi");
    RatioProblem prob = base_problem(p, w1, grid, psi.is_sampled());
    prob.num = {{phi_power(psi, p), Inner::Below, weighted_by(psi, p, w2)},
                {Multiplier::power(p), Inner::Above, weight_integrand(multiply_power(w2, -p))}};
    ConditionReport rep = sup_ratio(prob);
    warn_unless_b(psi, "psi", rep);
    return rep;
}

ConditionReport stgg_condition(double p, const QuasiconcaveFn& phi, const QuasiconcaveFn& psi,
                               const PiecewiseFn& w1, const PiecewiseFn& w2, std::size_t grid) {
    check_spaces(p, w1, w2);
    check_domain(phi, w1, "phi");
    check_domain(psi, w1, "psi");
    require_jump_conditions(p, phi, w1, w2);
    RatioProblem prob = base_problem(p, w1, grid, phi.is_sampled() || psi.is_sampled());
    prob.num = {{phi_power(psi, p), Inner::Below, weighted_by(psi, p, w2)},
                {phi_power(phi, p), Inner::Above, weighted_by(phi, p, w2)}};
    ConditionReport rep = sup_ratio(prob);
    warn_unless_b(phi, "phi", rep);
    warn_unless_b(psi, "psi", rep);

    const ConditionReport s = sgg_condition(p, phi, w1, w2, grid);
    const ConditionReport t = tgg_condition(p, psi, w1, w2, grid);
    rep.parts.push_back(sub("sgg", s));
    rep.parts.push_back(sub("tgg", t));
    if (rep.finite != (s.finite && t.finite))
        rep.warnings.push_back("finite(stgg) differs from finite(sgg) && finite(tgg)");

    // int_0^t w2 <= psi^p int_0^t psi^-p w2 and t^p int_t s^-p w2 <= phi^p int_t phi^-p w2.
    const Integrand a = weight_integrand(w2), b = weighted_by(psi, p, w2);
    const Integrand c = weight_integrand(multiply_power(w2, -p)), d = weighted_by(phi, p, w2);
    const double R = w2.domain().R;
    for (double x : log_grid(w2.domain(), 33)) {
        const double l1 = integrate(a, 0.0, x), r1 = std::pow(psi(x), p) * integrate(b, 0.0, x);
        const double l2 = std::pow(x, p) * integrate(c, x, R);
        const double r2 = std::pow(phi(x), p) * integrate(d, x, R);
        if (l1 > r1 * (1.0 + 1e-9) || l2 > r2 * (1.0 + 1e-9)) {
            rep.warnings.push_back("domination of the sgg/tgg numerators fails at t=" +
                                   std::to_string(x));
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct DerivedWeight::Impl {
    WeightKind kind;
    double p;
    QuasiconcaveFn phi;
    PiecewiseFn w2;
    Integrand inner;             // phi^-p w2
    std::unique_ptr<RatioSide> side;  // I(t) = int_t^R (S) or J(t) = int_0^t (T)
    Asymptote head, tail;
    double boundary = 0.0;

    Impl(WeightKind k, double p_, const QuasiconcaveFn& f, const PiecewiseFn& w)
        : kind(k), p(p_), phi(f), w2(w), inner(weighted_by(f, p_, w)) {}

    double integral(double t) const { return (*side)(t); }

    double value(double t) const {
        const double lead = p * std::pow(phi(t), p - 1.0) * phi.derivative(t);
        const double extra = lead == 0.0 ? 0.0 : lead * integral(t);
        return kind == WeightKind::S ? extra : w2(t) + extra;
    }
};

DerivedWeight::DerivedWeight(WeightKind kind, double p, const QuasiconcaveFn& phi,
                             const PiecewiseFn& w2, std::size_t grid) {
    require(phi.domain() == w2.domain(), ErrorCode::DomainMismatch,
            "derived weight: phi and w2 live on different domains");
    require(std::isfinite(p) && p >= 1.0, ErrorCode::InvalidArgument, "p must lie in [1, inf)");
    auto impl = std::make_shared<Impl>(kind, p, phi, w2);
    const Inner side = kind == WeightKind::S ? Inner::Above : Inner::Below;
    impl->side = std::make_unique<RatioSide>(
        w2.domain(), std::vector<Component>{{Multiplier::one(), side, impl->inner}},
        log_grid(w2.domain(), grid ? grid : default_grid_size()));
    require(!impl->side->infinite_everywhere(), ErrorCode::NonIntegrable,
            "derived weight: " + impl->side->diverging());
    const Asymptote pc = Asymptote::constant(p);
    for (End end : {End::Zero, End::Infinity}) {
        const Asymptote f = end == End::Zero ? phi.head() : phi.tail();
        const Asymptote lead = pc * pow(f, p - 1.0) * phi.derivative_asymptote(end);
        Asymptote a = lead * impl->side->asymptote(end);
        if (kind == WeightKind::T) a = dominant_sum(end == End::Zero ? w2.head() : w2.tail(), a, end);
        (end == End::Zero ? impl->head : impl->tail) = a;
    }
    if (kind == WeightKind::S) {
        const LimitValue lim =
            limit(pow(phi.head(), p) * impl->side->asymptote(End::Zero), End::Zero);
        require(!lim.infinite(), ErrorCode::NonIntegrable,
                "derived weight: phi^p(s) int_s^R phi^-p w2 is unbounded as s -> 0+");
        impl->boundary = lim.as_double();
    }
    impl_ = impl;
}

WeightKind DerivedWeight::kind() const { return impl_->kind; }
const Domain& DerivedWeight::domain() const { return impl_->w2.domain(); }
double DerivedWeight::operator()(double t) const { return impl_->value(t); }

Integrand DerivedWeight::integrand() const {
    auto impl = impl_;
    return Integrand{[impl](double t) { return impl->value(t); }, impl->head, impl->tail,
                     merged(impl->w2.breaks(), impl->phi.kinks())};
}

double DerivedWeight::cumulative(double t) const { return integrate(integrand(), 0.0, t); }

double DerivedWeight::by_parts(double t) const {
    const Impl& m = *impl_;
    const double ft = std::pow(m.phi(t), m.p);
    if (m.kind == WeightKind::T) return ft * m.integral(t);
    return integrate(m.w2, 0.0, t) + ft * m.integral(t) - m.boundary;
}

double DerivedWeight::boundary_term() const { return impl_->boundary; }

// ---------------------------------------------------------------------------

const char* to_string(HardyKind k) {
    switch (k) {
        case HardyKind::Neugebauer: return "neugebauer";
        case HardyKind::Ghs: return "ghs";
        case HardyKind::Gl: return "gl";
    }
    return "?";
}

HardyKind parse_hardy_kind(const std::string& s) {
    if (s == "neugebauer") return HardyKind::Neugebauer;
    if (s == "ghs") return HardyKind::Ghs;
    if (s == "gl") return HardyKind::Gl;
    fail(ErrorCode::InvalidArgument, "unknown Hardy condition '" + s + "'");
}

ConditionReport neugebauer_condition(double p, const DerivedWeight& w, const PiecewiseFn& w1,
                                     std::size_t grid) {
    require(w.domain() == w1.domain(), ErrorCode::DomainMismatch,
            "derived weight and w1 live on different domains");
    GammaSpace(p, w1).require_nontrivial();
    RatioProblem prob = base_problem(p, w1, grid, false);
    prob.num = {{Multiplier::one(), Inner::Below, w.integrand()}};
    return sup_ratio(prob);
}

ConditionReport ghs_condition(double p, const PiecewiseFn& w1, const PiecewiseFn& w2,
                              std::size_t grid) {
    check_spaces(p, w1, w2);
    RatioProblem prob = base_problem(p, w1, grid, false);
    prob.num = fundamental_components(p, w2);
    return sup_ratio(prob);
}

ConditionReport gl_condition(double p, const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                             const PiecewiseFn& w2, std::size_t grid) {
    check_spaces(p, w1, w2);
    check_domain(psi, w1, "psi");
    RatioProblem prob = base_problem(p, w1, grid, psi.is_sampled());
    prob.num = {{phi_power(psi, p), Inner::Below, weighted_by(psi, p, w2)}};
    return sup_ratio(prob);
}

}  // namespace reartool
