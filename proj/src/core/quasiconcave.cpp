#include "quasiconcave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "error.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;
constexpr std::size_t kValidationGrid = 2048;

double log_scale(double t) { return std::numbers::e + std::abs(std::log(t)); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(8);
    os << x;
    return os.str();
}

Asymptote complement_of(const Asymptote& a) {
    return {1.0 / a.coef, 1.0 - a.power, -a.log_power, -a.loglog_power};
}

}  // namespace

class QuasiconcaveFn::Impl : public PositiveFn {
public:
    Domain domain;
    std::variant<ClosedForm, Sampled> form;
    std::vector<double> slopes;  // log-log slopes between samples
    bool complemented = false;
    double m = 1.0;

    const ClosedForm* cf() const { return std::get_if<ClosedForm>(&form); }
    const Sampled* sf() const { return std::get_if<Sampled>(&form); }

    double base(double t) const {
        if (const ClosedForm* c = cf()) {
            double v = c->scale;
            if (c->alpha != 0.0) v *= std::pow(t, c->alpha);
            if (c->beta != 0.0) v *= std::pow(log_scale(t), c->beta);
            return c->jump + v;
        }
        const Sampled& s = *sf();
        const auto& g = s.grid;
        if (t <= g.front()) return s.values.front() * std::pow(t / g.front(), slopes.front());
        if (t >= g.back()) return s.values.back() * std::pow(t / g.back(), slopes.back());
        const auto k = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), t) - g.begin()) - 1;
        return s.values[k] * std::pow(t / g[k], slopes[k]);
    }

    // d(base)/dt
    double base_derivative(double t) const {
        if (const ClosedForm* c = cf()) {
            if (c->alpha == 0.0 && c->beta == 0.0) return 0.0;
            const double L = log_scale(t);
            const double sign = t < 1.0 ? -1.0 : 1.0;
            return c->scale * std::pow(t, c->alpha - 1.0) * std::pow(L, c->beta) *
                   (c->alpha + c->beta * sign / L);
        }
        const auto& g = sf()->grid;
        double s;
        const auto it = std::lower_bound(g.begin(), g.end(), t);
        if (it == g.begin())
            s = slopes.front();
        else if (it == g.end())
            s = slopes.back();
        else {
            const std::size_t k = static_cast<std::size_t>(it - g.begin());
            // Central difference at a node, exact slope inside a cell.
            s = *it == t && k < slopes.size() ? 0.5 * (slopes[k - 1] + slopes[k]) : slopes[k - 1];
        }
        return base(t) / t * s;
    }

    Asymptote base_head() const {
        if (const ClosedForm* c = cf()) {
            if (c->jump > 0.0) {
                if (c->alpha == 0.0 && c->beta == 0.0) return Asymptote::constant(c->jump + c->scale);
                return Asymptote::constant(c->jump);
            }
            return {c->scale, c->alpha, c->beta, 0.0};
        }
        const Sampled& s = *sf();
        const double a = slopes.front();
        return {s.values.front() / std::pow(s.grid.front(), a), a, 0.0, 0.0};
    }

    Asymptote base_tail() const {
        if (const ClosedForm* c = cf()) {
            if (c->alpha > 0.0 || c->beta > 0.0) return {c->scale, c->alpha, c->beta, 0.0};
            if (c->beta == 0.0) return Asymptote::constant(c->jump + c->scale);
            if (c->jump > 0.0) return Asymptote::constant(c->jump);
            return {c->scale, 0.0, c->beta, 0.0};
        }
        const Sampled& s = *sf();
        const double a = slopes.back();
        return {s.values.back() / std::pow(s.grid.back(), a), a, 0.0, 0.0};
    }

    Asymptote finish(const Asymptote& base) const {
        Asymptote a = complemented ? complement_of(base) : base;
        a.coef *= m;
        return a;
    }

    double value(double t) const override {
        if (t <= 0.0) return 0.0;
        const double b = base(t);
        return m * (complemented ? t / b : b);
    }
    Asymptote head() const override { return finish(base_head()); }
    Asymptote tail() const override { return finish(base_tail()); }
};

namespace {


// Sign conditions of d/dt [t^a L^b] and d/dt [t^(a-1) L^b] on (0,R), which are
// affine in x = 1/L on each side of t = 1.
void check_closed_form_shape(const Domain& dom, const ClosedForm& c) {
    struct Range {
        double sign, x0, x1;
        const char* where;
    };
    std::vector<Range> ranges;
    const double left_end = std::min(1.0, dom.R);
    ranges.push_back({-1.0, 0.0, 1.0 / log_scale(left_end), "on (0, min(1,R))"});
    if (dom.R > 1.0)
        ranges.push_back(
            {1.0, dom.bounded() ? 1.0 / log_scale(dom.R) : 0.0, 1.0 / std::numbers::e, "on (1, R)"});
    for (const Range& r : ranges) {
        for (double x : {r.x0, r.x1}) {
            const double grow = c.alpha + c.beta * r.sign * x;
            require(grow >= -kSlack, ErrorCode::NotQuasiconcave,
                    std::string("phi is not nondecreasing ") + r.where + " (alpha=" + fmt(c.alpha) +
                        ", beta=" + fmt(c.beta) + ")");
            if (c.jump == 0.0) {
                require(grow - 1.0 <= kSlack, ErrorCode::NotQuasiconcave,
                        std::string("phi(t)/t is not nonincreasing ") + r.where + " (alpha=" +
                            fmt(c.alpha) + ", beta=" + fmt(c.beta) + ")");
            }
        }
    }
}

void check_on_grid(const QuasiconcaveFn& phi) {
    const std::vector<double> g = log_grid(phi.domain(), kValidationGrid);
    double prev_t = g.front(), prev = phi(prev_t);
    require(prev > 0.0 && std::isfinite(prev), ErrorCode::NotQuasiconcave,
            "phi must be positive and finite on (0,R); fails at t=" + fmt(prev_t));
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double t = g[i], v = phi(t);
        require(v > 0.0 && std::isfinite(v), ErrorCode::NotQuasiconcave,
                "phi must be positive and finite on (0,R); fails at t=" + fmt(t));
        require(v >= prev * (1.0 - kSlack), ErrorCode::NotQuasiconcave,
                "phi is not nondecreasing near t=" + fmt(t));
        require(v / t <= prev / prev_t * (1.0 + kSlack), ErrorCode::NotQuasiconcave,
                "phi(t)/t is not nonincreasing near t=" + fmt(t));
        prev_t = t;
        prev = v;
    }
}

}  // namespace

QuasiconcaveFn QuasiconcaveFn::closed_form(Domain domain, ClosedForm form) {
    require(std::isfinite(form.jump) && std::isfinite(form.scale) && std::isfinite(form.alpha) &&
                std::isfinite(form.beta),
            ErrorCode::InvalidArgument, "closed form parameters must be finite");
    require(form.scale > 0.0, ErrorCode::NotQuasiconcave, "scale c must be > 0");
    require(form.jump >= 0.0, ErrorCode::NotQuasiconcave, "jump d must be >= 0");
    require(form.alpha >= 0.0 && form.alpha <= 1.0, ErrorCode::NotQuasiconcave,
            "exponent alpha must lie in [0,1], got " + fmt(form.alpha));
    check_closed_form_shape(domain, form);
    auto impl = std::make_shared<Impl>();
    impl->domain = domain;
    impl->form = form;
    QuasiconcaveFn phi(impl);
    check_on_grid(phi);
    return phi;
}

QuasiconcaveFn QuasiconcaveFn::sampled(Domain domain, Sampled s) {
    require(s.grid.size() >= 2 && s.grid.size() == s.values.size(), ErrorCode::InvalidArgument,
            "sampled function needs at least two (t, value) pairs of equal length");
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        require(s.grid[i] > 0.0 && s.grid[i] <= domain.R && std::isfinite(s.grid[i]),
                ErrorCode::DomainMismatch, "sample points must lie in (0,R]");
        require(i == 0 || s.grid[i] > s.grid[i - 1], ErrorCode::InvalidArgument,
                "sample points must be strictly increasing");
        require(s.values[i] > 0.0 && std::isfinite(s.values[i]), ErrorCode::NotQuasiconcave,
                "sampled values must be strictly positive and finite");
    }
    auto impl = std::make_shared<Impl>();
    impl->domain = domain;
    for (std::size_t i = 0; i + 1 < s.grid.size(); ++i) {
        const double k = std::log(s.values[i + 1] / s.values[i]) / std::log(s.grid[i + 1] / s.grid[i]);
        require(k >= -kSlack, ErrorCode::NotQuasiconcave,
                "phi is not nondecreasing between t=" + fmt(s.grid[i]) + " and " + fmt(s.grid[i + 1]));
        require(k <= 1.0 + kSlack, ErrorCode::NotQuasiconcave,
                "phi(t)/t is not nonincreasing between t=" + fmt(s.grid[i]) + " and " +
                    fmt(s.grid[i + 1]));
        impl->slopes.push_back(std::clamp(k, 0.0, 1.0));
    }
    impl->form = std::move(s);
    return QuasiconcaveFn(impl);
}

QuasiconcaveFn QuasiconcaveFn::power(Domain domain, double alpha, double scale) {
    return closed_form(domain, ClosedForm{0.0, scale, alpha, 0.0});
}

double QuasiconcaveFn::operator()(double t) const { return impl_->value(t); }

double QuasiconcaveFn::derivative(double t) const {
    require(t > 0.0, ErrorCode::InvalidArgument, "derivative needs t > 0");
    const double db = impl_->base_derivative(t);
    if (!impl_->complemented) return impl_->m * db;
    const double b = impl_->base(t);
    return impl_->m * (b - t * db) / (b * b);
}

double QuasiconcaveFn::at_zero() const { return limit(head(), End::Zero).as_double(); }

bool QuasiconcaveFn::is_sampled() const { return impl_->sf() != nullptr; }

const Domain& QuasiconcaveFn::domain() const { return impl_->domain; }

QuasiconcaveFn QuasiconcaveFn::complementary() const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->complemented = !impl_->complemented;
    impl->m = 1.0 / impl_->m;
    return QuasiconcaveFn(impl);
}

QuasiconcaveFn QuasiconcaveFn::scaled(double m) const {
    require(m > 0.0 && std::isfinite(m), ErrorCode::InvalidArgument, "scale must be positive");
    auto impl = std::make_shared<Impl>(*impl_);
    impl->m *= m;
    return QuasiconcaveFn(impl);
}

std::optional<Term> QuasiconcaveFn::as_term() const {
    const ClosedForm* c = impl_->cf();
    if (!c) return std::nullopt;
    Term t;
    if (c->jump == 0.0)
        t = {c->scale, c->alpha, c->beta};
    else if (c->alpha == 0.0 && c->beta == 0.0)
        t = {c->jump + c->scale, 0.0, 0.0};
    else
        return std::nullopt;
    if (impl_->complemented) t = {1.0 / t.coef, 1.0 - t.power, -t.log_power};
    t.coef *= impl_->m;
    return t;
}

Asymptote QuasiconcaveFn::head() const { return impl_->head(); }
Asymptote QuasiconcaveFn::tail() const { return impl_->tail(); }

Asymptote QuasiconcaveFn::derivative_asymptote(End end) const {
    const Asymptote a = end == End::Zero ? head() : tail();
    const bool flat = exponents_equal(a.power, 0.0) && exponents_equal(a.log_power, 0.0) &&
                      exponents_equal(a.loglog_power, 0.0);
    if (!flat) return reartool::derivative(a, end);
    // A constant leading term hides the part that actually varies.
    const ClosedForm* c = impl_->cf();
    if (!c || impl_->complemented) return Asymptote::zero();
    if (c->alpha == 0.0 && c->beta == 0.0) return Asymptote::zero();
    return reartool::derivative(Asymptote{impl_->m * c->scale, c->alpha, c->beta, 0.0}, end);
}

double QuasiconcaveFn::inverse(double y) const {
    const Domain& dom = domain();
    if (y <= at_zero()) return 0.0;
    if (const auto t = as_term(); t && t->log_power == 0.0 && t->power > 0.0) {
        const double x = std::pow(y / t->coef, 1.0 / t->power);
        return std::min(x, dom.R);
    }
    double lo = -745.0, hi = dom.bounded() ? std::log(dom.R) : 709.0;
    if ((*this)(std::exp(hi)) < y) return dom.R;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(std::exp(mid)) >= y)
            hi = mid;
        else
            lo = mid;
    }
    return std::exp(hi);
}

std::vector<double> QuasiconcaveFn::kinks() const {
    std::vector<double> k;
    if (const Sampled* s = impl_->sf()) {
        for (double t : s->grid)
            if (t < domain().R) k.push_back(t);
    } else if (impl_->cf()->beta != 0.0 && domain().R > 1.0) {
        k.push_back(1.0);
    }
    return k;
}

std::shared_ptr<const PositiveFn> QuasiconcaveFn::as_factor() const { return impl_; }

std::string QuasiconcaveFn::describe() const {
    std::ostringstream os;
    os.precision(8);
    if (const ClosedForm* c = impl_->cf())
        os << "qconcave(jump=" << c->jump << ", scale=" << c->scale << ", alpha=" << c->alpha
           << ", beta=" << c->beta << ")";
    else
        os << "sampled(" << impl_->sf()->grid.size() << " points)";
    std::string s = os.str();
    if (impl_->m != 1.0) s = fmt(impl_->m) + "*" + s;
    if (impl_->complemented) s = "t/" + s;
    return s;
}

std::optional<ClosedForm> QuasiconcaveFn::closed() const {
    const ClosedForm* c = impl_->cf();
    if (!c || impl_->complemented) return std::nullopt;
    return ClosedForm{c->jump * impl_->m, c->scale * impl_->m, c->alpha, c->beta};
}

// ---------------------------------------------------------------------------

const char* to_string(BMethod m) {
    switch (m) {
        case BMethod::Integral: return "integral";
        case BMethod::TildeIntegral: return "tilde-integral";
        case BMethod::Dilation: return "dilation";
    }
    return "?";
}

BMethod parse_b_method(const std::string& s) {
    if (s == "integral") return BMethod::Integral;
    if (s == "tilde-integral") return BMethod::TildeIntegral;
    if (s == "dilation") return BMethod::Dilation;
    fail(ErrorCode::InvalidArgument, "unknown B-condition method '" + s + "'");
}

double dilation_bound(double c, double r) { return r * std::log(1.0 / c) / (r - 1.0); }

namespace {

const Asymptote kT{1.0, 1.0, 0.0, 0.0};
const Asymptote kInvT{1.0, -1.0, 0.0, 0.0};

MethodVerdict from_report(BMethod m, const ConditionReport& r) {
    MethodVerdict v;
    v.method = to_string(m);
    v.holds = r.finite;
    v.constant = r.sup_value;
    v.witness = r.witness();
    v.reason = r.reason;
    return v;
}

// (1/t) int_0^t ds/phi(s) * phi(t)
ConditionReport integral_ratio(const QuasiconcaveFn& phi, std::size_t n) {
    RatioProblem prob;
    prob.domain = phi.domain();
    prob.grid_size = n;
    prob.grid_limited = phi.is_sampled();
    Integrand g{[phi](double s) { return 1.0 / phi(s); }, reciprocal(phi.head()),
                reciprocal(phi.tail()), phi.kinks()};
    prob.num.push_back({Multiplier::one(), Inner::Below, std::move(g)});
    Multiplier d{[phi](double t) { return t / phi(t); }, kT * reciprocal(phi.head()),
                 kT * reciprocal(phi.tail())};
    prob.den.push_back({std::move(d), Inner::None, {}});
    return sup_ratio(prob);
}

// int_0^t phit(s) ds/s / phit(t)
ConditionReport tilde_ratio(const QuasiconcaveFn& phi, std::size_t n) {
    const QuasiconcaveFn tilde = phi.complementary();
    RatioProblem prob;
    prob.domain = phi.domain();
    prob.grid_size = n;
    prob.grid_limited = phi.is_sampled();
    Integrand g{[tilde](double s) { return tilde(s) / s; }, tilde.head() * kInvT,
                tilde.tail() * kInvT, tilde.kinks()};
    prob.num.push_back({Multiplier::one(), Inner::Below, std::move(g)});
    Multiplier d{[tilde](double t) { return tilde(t); }, tilde.head(), tilde.tail()};
    prob.den.push_back({std::move(d), Inner::None, {}});
    return sup_ratio(prob);
}

struct DilationScan {
    bool holds = false;
    double c = 0.0;
    double ratio = 1.0;
    std::string witness;
    std::string reason;
};

DilationScan dilation_scan(const QuasiconcaveFn& phi, std::size_t n) {
    const QuasiconcaveFn tilde = phi.complementary();
    const Domain& dom = phi.domain();
    const std::vector<double> grid = log_grid(dom, n ? n : default_grid_size());
    DilationScan out;
    double best_inf = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const double c = std::ldexp(1.0, -k);
        double inf = kInf;
        std::string where;
        for (double t : grid) {
            const double r = tilde(t) / tilde(c * t);
            if (r < inf) {
                inf = r;
                where = fmt(t);
            }
        }
        // End behaviour: the ratio tends to c^-a where a is the power exponent there.
        const double at0 = std::pow(c, -tilde.head().power);
        if (at0 <= inf) {
            inf = at0;
            where = "0+";
        }
        if (dom.bounded()) {
            const double atR = tilde(dom.R) / tilde(c * dom.R);
            if (atR < inf) {
                inf = atR;
                where = "R-";
            }
        } else {
            const double atinf = std::pow(c, -tilde.tail().power);
            if (atinf <= inf) {
                inf = atinf;
                where = "inf";
            }
        }
        if (k == 1 || inf > best_inf) {
            best_inf = inf;
            out.witness = where;
            out.c = c;
        }
        if (inf > 1.0 + 1e-3) {
            out.holds = true;
            out.c = c;
            out.ratio = inf;
            out.witness = where;
            out.reason = "inf of phit(t)/phit(ct) = " + fmt(inf) + " at c = 2^-" + std::to_string(k) +
                         " (attained at " + where + ")";
            return out;
        }
    }
    out.ratio = best_inf;
    out.reason = "inf of phit(t)/phit(ct) <= 1 + 1e-3 for every c = 2^-k, k <= 12 (best " +
                 fmt(best_inf) + " at " + out.witness + ")";
    return out;
}

}  // namespace

BReport b_check(const QuasiconcaveFn& phi, BMethod method, std::size_t grid_size) {
    BReport rep;
    rep.grid_limited = phi.is_sampled();
    if (method == BMethod::Dilation) {
        const DilationScan d = dilation_scan(phi, grid_size);
        MethodVerdict v;
        v.method = to_string(method);
        v.holds = d.holds;
        v.constant = d.holds ? dilation_bound(d.c, d.ratio) : kInf;
        v.witness = d.witness;
        v.reason = d.reason;
        rep.holds = v.holds;
        rep.constant = v.constant;
        rep.witness = v.witness;
        if (d.holds) {
            rep.dilation_c = d.c;
            rep.dilation_ratio = d.ratio;
        }
        rep.methods.push_back(std::move(v));
        return rep;
    }
    const ConditionReport r = method == BMethod::Integral ? integral_ratio(phi, grid_size)
                                                          : tilde_ratio(phi, grid_size);
    MethodVerdict v = from_report(method, r);
    rep.holds = v.holds;
    rep.constant = v.constant;
    rep.witness = v.witness;
    rep.methods.push_back(std::move(v));
    return rep;
}

BReport b_consensus(const QuasiconcaveFn& phi, std::size_t grid_size) {
    BReport rep = b_check(phi, BMethod::Integral, grid_size);
    const BReport tilde = b_check(phi, BMethod::TildeIntegral, grid_size);
    const BReport dil = b_check(phi, BMethod::Dilation, grid_size);
    rep.methods.push_back(tilde.methods.front());
    rep.methods.push_back(dil.methods.front());
    rep.dilation_c = dil.dilation_c;
    rep.dilation_ratio = dil.dilation_ratio;
    if (rep.holds != tilde.holds || rep.holds != dil.holds) {
        std::string msg = "B-condition characterizations disagree for " + phi.describe() + ":";
        for (const MethodVerdict& v : rep.methods)
            msg += " " + v.method + "=" + (v.holds ? "holds" : "fails") + " (" + v.reason + ")";
        fail(ErrorCode::CharacterizationDisagreement, msg);
    }
    return rep;
}

}  // namespace reartool
