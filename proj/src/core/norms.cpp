#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "sup_ratio.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSearchTol = 1e-6;

bool exact_for_marcinkiewicz(const QuasiconcaveFn& phi) {
    // phi * f** is then a sum of exponentials of linear functions of ln t on
    // each piece, hence convex in ln t, and the sup sits at a breakpoint.
    const auto c = phi.closed();
    return c && c->beta == 0.0;
}

bool exact_term(const Term& t) {
    return exponents_equal(t.log_power, 0.0) || exponents_equal(t.power, -1.0);
}

}  // namespace

double golden_max(const std::function<double(double)>& h, double a, double b, double* arg) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::log(a), hi = std::log(b);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = h(std::exp(x1)), f2 = h(std::exp(x2));
    while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = h(std::exp(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = h(std::exp(x1));
        }
    }
    const double best = std::max(f1, f2);
    if (arg) *arg = std::exp(f1 >= f2 ? x1 : x2);
    return best;
}

double search_max(const std::function<double(double)>& h, double a, double b, int samples) {
    double best = std::max(h(a), h(b)), best_t = a;
    const double la = std::log(a), lb = std::log(b);
    for (int j = 1; j < samples; ++j) {
        const double t = std::exp(la + (lb - la) * j / samples);
        const double v = h(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double step = (lb - la) / samples;
    const double lo = std::max(a, std::exp(std::log(best_t) - step));
    const double hi = std::min(b, std::exp(std::log(best_t) + step));
    if (hi > lo) best = std::max(best, golden_max(h, lo, hi, nullptr));
    return best;
}

const char* to_string(NormMethod m) { return m == NormMethod::Exact ? "exact" : "quadrature"; }

NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const StepFn& f) {
    return marcinkiewicz_norm(phi, rearrange(f));
}

NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar) {
    require(phi.domain() == fstar.domain(), ErrorCode::DomainMismatch,
            "Marcinkiewicz norm: phi and f live on different domains");
    if (fstar.is_zero()) return {0.0, NormMethod::Exact, 0.0};
    const bool exact = exact_for_marcinkiewicz(phi);
    const auto h = [&](double t) { return phi(t) * fstar.double_star(t); };
    double best = 0.0;
    for (double a : fstar.ends()) best = std::max(best, h(a));
    if (!exact) {
        for (std::size_t i = 1; i < fstar.size(); ++i)
            best = std::max(best, search_max(h, fstar.ends()[i - 1], fstar.ends()[i], 64));
    }
    return {best, exact ? NormMethod::Exact : NormMethod::Quadrature, exact ? 0.0 : kSearchTol};
}

NormValue marcinkiewicz_norm(const QuasiconcaveFn& phi, const HardyAverage& gss) {
    const Domain& dom = phi.domain();
    require(dom == gss.base().domain(), ErrorCode::DomainMismatch,
            "Marcinkiewicz norm: phi and g live on different domains");
    if (gss.total() == 0.0) return {0.0, NormMethod::Exact, 0.0};
    const LimitValue at0 = limit(phi.head() * gss.head(), End::Zero);
    if (at0.infinite()) return {kInf, NormMethod::Exact, 0.0};
    double best = at0.as_double();
    if (dom.bounded()) {
        best = std::max(best, phi(dom.R) * gss(dom.R));
    } else {
        const LimitValue atinf = limit(phi.tail() * gss.tail(), End::Infinity);
        if (atinf.infinite()) return {kInf, NormMethod::Exact, 0.0};
        best = std::max(best, atinf.as_double());
    }
    std::vector<double> pts = log_grid(dom, default_grid_size());
    for (double b : gss.breaks()) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    const auto h = [&](double t) { return phi(t) * gss(t); };
    std::size_t arg = 0;
    double grid_best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double v = h(pts[i]);
        if (v > grid_best) {
            grid_best = v;
            arg = i;
        }
    }
    const double lo = pts[arg > 0 ? arg - 1 : 0], hi = pts[std::min(arg + 1, pts.size() - 1)];
    if (hi > lo) grid_best = std::max(grid_best, golden_max(h, lo, hi, nullptr));
    return {std::max(best, grid_best), NormMethod::Quadrature, kSearchTol};
}

// ---------------------------------------------------------------------------

GammaSpace::GammaSpace(double p, PiecewiseFn weight) : p_(p), w_(std::move(weight)) {
    require(std::isfinite(p) && p >= 1.0, ErrorCode::InvalidArgument, "p must lie in [1, inf)");
    bool any = false;
    for (const Piece& piece : w_.pieces()) {
        for (const Term& t : piece.terms)
            require(t.coef >= 0.0, ErrorCode::InvalidArgument, "weight must be nonnegative");
        any = any || !piece.is_zero();
    }
    require(any, ErrorCode::InvalidArgument, "weight vanishes identically");
}

std::optional<std::string> GammaSpace::triviality() const {
    const Asymptote k{1.0, -p_, 0.0, 0.0};
    if (!domain().bounded()) {
        if (!integrable_at(w_.tail() * k, End::Infinity))
            return "Gamma^p_w = {0}: integral of s^-p w(s) over (1,inf) diverges (w ~ " +
                   w_.tail().describe() + " at inf)";
    } else {
        if (integrable_at(w_.head() * k, End::Zero))
            return "Gamma^p_w = L^1: integral of s^-p w(s) over (0,R) is finite (w ~ " +
                   w_.head().describe() + " at 0+)";
    }
    return std::nullopt;
}

void GammaSpace::require_nontrivial() const {
    if (const auto why = triviality()) fail(ErrorCode::TrivialSpace, *why);
}

NormValue gamma_norm(const GammaSpace& space, const StepFn& f) {
    return gamma_norm(space, rearrange(f));
}

NormValue gamma_norm(const GammaSpace& space, const MonotoneStepFn& fstar) {
    space.require_nontrivial();
    require(space.domain() == fstar.domain(), ErrorCode::DomainMismatch,
            "gamma norm: weight and f live on different domains");
    if (fstar.is_zero()) return {0.0, NormMethod::Exact, 0.0};
    const double p = space.p();
    const PiecewiseFn fss = maximal(fstar);
    const PiecewiseFn& w = space.weight();
    const bool integer_p = p == std::round(p) && p <= 4.0;
    const bool plain_weight = std::none_of(w.pieces().begin(), w.pieces().end(),
                                           [](const Piece& pc) { return bool(pc.factor); });
    if (integer_p && plain_weight) {
        PiecewiseFn g = fss;
        for (int k = 1; k < static_cast<int>(p); ++k) g = multiply(g, fss);
        const PiecewiseFn prod = multiply(g, w);
        bool exact = true;
        for (const Piece& pc : prod.pieces())
            for (const Term& t : pc.terms) exact = exact && exact_term(t);
        const double v = integrate(prod, 0.0, space.domain().R);
        return {std::pow(v, 1.0 / p), exact ? NormMethod::Exact : NormMethod::Quadrature,
                exact ? 1e-12 : 1e-8};
    }
    std::vector<double> breaks = fss.breaks();
    breaks.insert(breaks.end(), w.breaks().begin(), w.breaks().end());
    Integrand g{[&](double t) { return std::pow(fss(t), p) * w(t); },
                pow(fss.head(), p) * w.head(), pow(fss.tail(), p) * w.tail(), breaks};
    return {std::pow(integrate(g, 0.0, space.domain().R), 1.0 / p), NormMethod::Quadrature, 1e-8};
}

NormValue gamma_norm(const GammaSpace& space, const HardyAverage& gss) {
    space.require_nontrivial();
    require(space.domain() == gss.base().domain(), ErrorCode::DomainMismatch,
            "gamma norm: weight and g live on different domains");
    if (gss.total() == 0.0) return {0.0, NormMethod::Exact, 0.0};
    const double p = space.p();
    const PiecewiseFn& w = space.weight();
    std::vector<double> breaks = gss.breaks();
    breaks.insert(breaks.end(), w.breaks().begin(), w.breaks().end());
    Integrand g{[&](double t) { return std::pow(gss(t), p) * w(t); },
                pow(gss.head(), p) * w.head(), pow(gss.tail(), p) * w.tail(), breaks};
    return {std::pow(integrate(g, 0.0, space.domain().R), 1.0 / p), NormMethod::Quadrature, 1e-8};
}

double gamma_fundamental(const GammaSpace& space, double t) {
    space.require_nontrivial();
    const double R = space.domain().R;
    require(t > 0.0 && t <= R, ErrorCode::InvalidArgument, "fundamental function needs t in (0,R]");
    const double below = integrate(space.weight(), 0.0, t);
    if (t >= R) return below;
    const double above = integrate(multiply_power(space.weight(), -space.p()), t, R);
    return below + std::pow(t, space.p()) * above;
}

EmbeddingReport linfty_embedding(const GammaSpace& space) {
    space.require_nontrivial();
    EmbeddingReport rep;
    const double p = space.p();
    const Asymptote g = space.weight().head() * Asymptote{1.0, -p, 0.0, 0.0};
    if (integrable_at(g, End::Zero)) {
        rep.limit = 0.0;
        rep.reason = "s^-p w is integrable at 0+, so t^p times its tail integral tends to 0";
    } else {
        const Asymptote lead = primitive(g, End::Zero) * Asymptote{1.0, p, 0.0, 0.0};
        rep.limit = limit(lead, End::Zero).as_double();
        rep.reason = "t^p int_t^R s^-p w ~ " + lead.describe() + " at 0+";
    }
    rep.holds = rep.limit > 0.0;
    const double t0 = log_grid(space.domain(), 2).front();
    rep.grid_min = std::pow(t0, p) * integrate(multiply_power(space.weight(), -p), t0,
                                               space.domain().R);
    return rep;
}

bool linfty_embedding_check(const GammaSpace& space) { return linfty_embedding(space).holds; }

bool s_nontriviality_check(const GammaSpace& space, const QuasiconcaveFn& phi) {
    if (phi.continuous()) return true;
    const double p = space.p();
    const PiecewiseFn& w = space.weight();
    if (!integrable_at(pow(phi.head(), -p) * w.head(), End::Zero)) return false;
    if (!space.domain().bounded() && !integrable_at(pow(phi.tail(), -p) * w.tail(), End::Infinity))
        return false;
    return true;
}

}  // namespace reartool
