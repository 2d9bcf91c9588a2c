#include "funcspace.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "error.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_scale(double t) { return std::numbers::e + std::abs(std::log(t)); }

// F(t) = integral over (1, t) of s^-1 L(s)^beta ds.
double log_primitive(double beta, double t) {
    const double b1 = beta + 1.0;
    const double side = t < 1.0 ? -1.0 : 1.0;
    if (t == 0.0 || t == kInf) {
        if (!(b1 < 0.0) || exponents_equal(b1, 0.0)) return side * kInf;
        return side * (-std::pow(std::numbers::e, b1) / b1);
    }
    const double L = log_scale(t);
    if (exponents_equal(b1, 0.0)) return side * std::log(L / std::numbers::e);
    return side * (std::pow(L, b1) - std::pow(std::numbers::e, b1)) / b1;
}

void merge_like_terms(std::vector<Term>& terms) {
    std::vector<Term> out;
    for (const Term& t : terms) {
        if (t.coef == 0.0) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const Term& o) {
            return exponents_equal(o.power, t.power) && exponents_equal(o.log_power, t.log_power);
        });
        if (it == out.end())
            out.push_back(t);
        else
            it->coef += t.coef;
    }
    terms = std::move(out);
}

Piece multiply_pieces(const Piece& a, const Piece& b) {
    Piece out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const Term& x : a.terms)
        for (const Term& y : b.terms)
            out.terms.push_back({x.coef * y.coef, x.power + y.power, x.log_power + y.log_power});
    merge_like_terms(out.terms);
    if (a.factor && b.factor) {
        require(a.factor == b.factor, ErrorCode::Unsupported,
                "product of pieces carrying different factors");
        out.factor = a.factor;
        out.factor_power = a.factor_power + b.factor_power;
    } else if (a.factor) {
        out.factor = a.factor;
        out.factor_power = a.factor_power;
    } else if (b.factor) {
        out.factor = b.factor;
        out.factor_power = b.factor_power;
    }
    return out;
}

Piece add_pieces(const Piece& a, const Piece& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    require(a.factor == b.factor && (!a.factor || a.factor_power == b.factor_power),
            ErrorCode::Unsupported, "sum of pieces carrying different factors");
    Piece out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    merge_like_terms(out.terms);
    return out;
}

double integrate_piece(const Piece& piece, double a, double b) {
    if (piece.is_zero() || a == b) return 0.0;
    if (!piece.factor) {
        double s = 0.0;
        for (const Term& t : piece.terms) s += integrate(t, a, b);
        return s;
    }
    Integrand g{[&piece](double t) { return piece.eval(t); }, piece.asymptote(End::Zero),
                piece.asymptote(End::Infinity), {}};
    return integrate(g, a, b);
}

}  // namespace

Domain make_domain(double R) {
    require(R > 0.0 && !std::isnan(R), ErrorCode::InvalidArgument, "domain length R must be > 0");
    return Domain{R};
}

double Term::eval(double t) const {
    if (coef == 0.0) return 0.0;
    double v = coef;
    if (power != 0.0) v *= std::pow(t, power);
    if (log_power != 0.0) v *= std::pow(log_scale(t), log_power);
    return v;
}

double integrate(const Term& term, double a, double b) {
    require(a >= 0.0 && b >= a, ErrorCode::InvalidArgument, "integrate: need 0 <= a <= b");
    if (term.coef == 0.0 || a == b) return 0.0;
    if (exponents_equal(term.log_power, 0.0)) {
        const double g = term.power + 1.0;
        if (exponents_equal(g, 0.0)) {
            if (a == 0.0 || b == kInf) return kInf;
            return term.coef * std::log(b / a);
        }
        if (a == 0.0 && g < 0.0) return kInf;
        if (b == kInf && g > 0.0) return kInf;
        if (a > 0.0 && b < kInf)
            return term.coef * std::pow(a, g) * std::expm1(g * std::log(b / a)) / g;
        const double hi = b == kInf ? 0.0 : std::pow(b, g);
        const double lo = a == 0.0 ? 0.0 : std::pow(a, g);
        return term.coef * (hi - lo) / g;
    }
    if (exponents_equal(term.power, -1.0)) {
        const double v = log_primitive(term.log_power, b) - log_primitive(term.log_power, a);
        return std::isfinite(v) ? term.coef * v : kInf;
    }
    const Asymptote as = term.asymptote();
    Integrand g{[term](double t) { return term.eval(t); }, as, as, {}};
    return integrate(g, a, b);
}

Piece Piece::constant(double v) {
    Piece p;
    if (v != 0.0) p.terms.push_back({v, 0.0, 0.0});
    return p;
}

Piece Piece::power(double coef, double power, double log_power) {
    Piece p;
    if (coef != 0.0) p.terms.push_back({coef, power, log_power});
    return p;
}

double Piece::eval(double t) const {
    if (terms.empty()) return 0.0;
    double s = 0.0;
    for (const Term& term : terms) s += term.eval(t);
    if (factor) s *= std::pow(factor->value(t), factor_power);
    return s;
}

Asymptote Piece::asymptote(End end) const {
    Asymptote a = Asymptote::zero();
    for (const Term& term : terms) a = dominant_sum(a, term.asymptote(), end);
    if (factor && !a.is_zero())
        a = a * pow(end == End::Zero ? factor->head() : factor->tail(), factor_power);
    return a;
}

PiecewiseFn::PiecewiseFn(Domain domain, std::vector<double> breaks, std::vector<Piece> pieces)
    : domain_(domain), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    require(pieces_.size() == breaks_.size() + 1, ErrorCode::InvalidArgument,
            "piecewise function needs one more piece than breakpoints");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        require(breaks_[i] > 0.0 && breaks_[i] < domain_.R, ErrorCode::DomainMismatch,
                "breakpoint outside (0, R)");
        require(i == 0 || breaks_[i] > breaks_[i - 1], ErrorCode::InvalidArgument,
                "breakpoints must be strictly increasing");
    }
}

PiecewiseFn PiecewiseFn::single(Domain domain, Piece piece) {
    return PiecewiseFn(domain, {}, {std::move(piece)});
}

PiecewiseFn PiecewiseFn::power(Domain domain, double coef, double power, double log_power) {
    return single(domain, Piece::power(coef, power, log_power));
}

std::size_t PiecewiseFn::piece_index(double t) const {
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), t) -
                                    breaks_.begin());
}

double PiecewiseFn::operator()(double t) const { return pieces_[piece_index(t)].eval(t); }

Integrand PiecewiseFn::integrand() const {
    return Integrand{[self = *this](double t) { return self(t); }, head(), tail(), breaks_};
}

PiecewiseFn PiecewiseFn::scaled(double c) const {
    PiecewiseFn out = *this;
    for (Piece& p : out.pieces_) {
        if (c == 0.0) p.terms.clear();
        for (Term& t : p.terms) t.coef *= c;
    }
    return out;
}

namespace {

template <class Combine>
PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g, Combine op) {
    std::vector<double> breaks;
    std::merge(f.breaks().begin(), f.breaks().end(), g.breaks().begin(), g.breaks().end(),
               std::back_inserter(breaks));
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<Piece> pieces;
    pieces.reserve(breaks.size() + 1);
    for (std::size_t k = 0; k <= breaks.size(); ++k) {
        const double lo = k == 0 ? 0.0 : breaks[k - 1];
        const double hi = k == breaks.size() ? f.domain().R : breaks[k];
        // Any interior point identifies the source pieces.
        const double mid = lo == 0.0 ? hi / 2.0 : (hi == kInf ? 2.0 * lo : 0.5 * (lo + hi));
        pieces.push_back(op(f.pieces()[f.piece_index(mid)], g.pieces()[g.piece_index(mid)]));
    }
    return PiecewiseFn(f.domain(), std::move(breaks), std::move(pieces));
}

}  // namespace

PiecewiseFn multiply(const PiecewiseFn& f, const PiecewiseFn& g) {
    require(f.domain() == g.domain(), ErrorCode::DomainMismatch, "multiply: domains differ");
    return combine(f, g, multiply_pieces);
}

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) {
    require(f.domain() == g.domain(), ErrorCode::DomainMismatch, "add: domains differ");
    return combine(f, g, add_pieces);
}

PiecewiseFn multiply_power(const PiecewiseFn& f, double k) {
    return multiply(f, PiecewiseFn::power(f.domain(), 1.0, k));
}

double integrate(const PiecewiseFn& f, double a, double b) {
    require(a >= 0.0 && b >= a && b <= f.domain().R, ErrorCode::InvalidArgument,
            "integrate: need 0 <= a <= b <= R");
    double total = 0.0;
    for (std::size_t k = f.piece_index(a); k < f.pieces().size(); ++k) {
        const double lo = std::max(a, f.piece_lo(k));
        const double hi = std::min(b, f.piece_hi(k));
        if (lo >= b) break;
        total += integrate_piece(f.pieces()[k], lo, hi);
        if (total == kInf) return kInf;
    }
    return total;
}

double integrate_finite(const PiecewiseFn& f, double a, double b) {
    const double v = integrate(f, a, b);
    require(std::isfinite(v), ErrorCode::NonIntegrable, "integral diverges");
    return v;
}

// ---------------------------------------------------------------------------

StepFn::StepFn(Domain domain, std::vector<double> ends, std::vector<double> values)
    : domain_(domain), ends_(std::move(ends)), values_(std::move(values)) {
    require(ends_.size() == values_.size(), ErrorCode::InvalidArgument,
            "step function needs one value per piece");
    for (std::size_t i = 0; i < ends_.size(); ++i) {
        require(ends_[i] > (i == 0 ? 0.0 : ends_[i - 1]), ErrorCode::InvalidArgument,
                "step breakpoints must be strictly increasing and positive");
        require(std::isfinite(values_[i]), ErrorCode::InvalidArgument, "step values must be finite");
    }
    require(ends_.empty() || (std::isfinite(ends_.back()) && ends_.back() <= domain_.R),
            ErrorCode::DomainMismatch, "step function support must be bounded and inside (0, R)");
}

double StepFn::operator()(double t) const {
    const auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end()) return 0.0;
    return values_[static_cast<std::size_t>(it - ends_.begin())];
}

double StepFn::measure_above(double lambda) const {
    double m = 0.0;
    for (std::size_t i = 0; i < ends_.size(); ++i)
        if (std::abs(values_[i]) > lambda) m += ends_[i] - (i == 0 ? 0.0 : ends_[i - 1]);
    return m;
}

double StepFn::integral_pow(double p) const {
    double s = 0.0;
    for (std::size_t i = 0; i < ends_.size(); ++i)
        s += std::pow(std::abs(values_[i]), p) * (ends_[i] - (i == 0 ? 0.0 : ends_[i - 1]));
    return s;
}

PiecewiseFn StepFn::to_piecewise() const {
    std::vector<double> breaks;
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < ends_.size(); ++i) {
        pieces.push_back(Piece::constant(std::abs(values_[i])));
        if (ends_[i] < domain_.R) breaks.push_back(ends_[i]);
    }
    if (pieces.size() == breaks.size()) pieces.push_back(Piece{});
    return PiecewiseFn(domain_, std::move(breaks), std::move(pieces));
}

StepFn StepFn::scaled(double c) const {
    StepFn out = *this;
    for (double& v : out.values_) v *= c;
    return out;
}

StepFn add(const StepFn& f, const StepFn& g) {
    require(f.domain() == g.domain(), ErrorCode::DomainMismatch, "add: domains differ");
    std::vector<double> ends;
    std::merge(f.ends().begin(), f.ends().end(), g.ends().begin(), g.ends().end(),
               std::back_inserter(ends));
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<double> values;
    values.reserve(ends.size());
    double lo = 0.0;
    for (double hi : ends) {
        const double mid = 0.5 * (lo + hi);
        values.push_back(f(mid) + g(mid));
        lo = hi;
    }
    return StepFn(f.domain(), std::move(ends), std::move(values));
}

// ---------------------------------------------------------------------------

MonotoneStepFn::MonotoneStepFn(Domain domain, std::vector<double> ends, std::vector<double> values)
    : domain_(domain) {
    require(ends.size() == values.size(), ErrorCode::InvalidArgument,
            "step function needs one value per piece");
    double lo = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        require(std::isfinite(values[i]) && values[i] >= 0.0, ErrorCode::InvalidArgument,
                "rearranged values must be finite and nonnegative");
        require(ends[i] >= lo, ErrorCode::InvalidArgument, "breakpoints must be nondecreasing");
        require(i == 0 || values[i] <= values[i - 1], ErrorCode::InvalidArgument,
                "values must be nonincreasing");
        if (ends[i] > lo && values[i] > 0.0) {
            if (!values_.empty() && values_.back() == values[i])
                ends_.back() = ends[i];
            else {
                ends_.push_back(ends[i]);
                values_.push_back(values[i]);
            }
        }
        lo = ends[i];
    }
    require(ends_.empty() || (std::isfinite(ends_.back()) && ends_.back() <= domain_.R),
            ErrorCode::DomainMismatch, "support must be bounded and inside (0, R)");
    prefix_.resize(ends_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < ends_.size(); ++i) {
        acc += values_[i] * (ends_[i] - (i == 0 ? 0.0 : ends_[i - 1]));
        prefix_[i] = acc;
    }
}

MonotoneStepFn MonotoneStepFn::indicator(Domain domain, double a, double height) {
    return MonotoneStepFn(domain, {a}, {height});
}

double MonotoneStepFn::operator()(double t) const {
    const auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end()) return 0.0;
    return values_[static_cast<std::size_t>(it - ends_.begin())];
}

double MonotoneStepFn::left_limit(double t) const {
    const auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end()) return 0.0;
    return values_[static_cast<std::size_t>(it - ends_.begin())];
}

double MonotoneStepFn::cumulative(double t) const {
    if (ends_.empty() || t <= 0.0) return 0.0;
    const auto i = static_cast<std::size_t>(std::upper_bound(ends_.begin(), ends_.end(), t) -
                                            ends_.begin());
    if (i == ends_.size()) return prefix_.back();
    const double before = i == 0 ? 0.0 : prefix_[i - 1];
    const double lo = i == 0 ? 0.0 : ends_[i - 1];
    return before + values_[i] * (t - lo);
}

double MonotoneStepFn::double_star(double t) const {
    if (t <= 0.0) return sup();
    return cumulative(t) / t;
}

MonotoneStepFn MonotoneStepFn::scaled(double c) const {
    require(c >= 0.0, ErrorCode::InvalidArgument, "scale must be nonnegative");
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return MonotoneStepFn(domain_, ends_, std::move(v));
}

MonotoneStepFn MonotoneStepFn::dilated(double r) const {
    require(r > 0.0, ErrorCode::InvalidArgument, "dilation factor must be positive");
    std::vector<double> e, v;
    for (std::size_t i = 0; i < ends_.size(); ++i) {
        const double end = std::min(ends_[i] / r, domain_.R);
        e.push_back(end);
        v.push_back(values_[i]);
        if (end == domain_.R) break;
    }
    return MonotoneStepFn(domain_, std::move(e), std::move(v));
}

MonotoneStepFn MonotoneStepFn::truncated_below(double level) const {
    std::vector<double> v = values_;
    for (double& x : v) x = std::min(x, level);
    return MonotoneStepFn(domain_, ends_, std::move(v));
}

MonotoneStepFn MonotoneStepFn::excess_over(double level) const {
    std::vector<double> v = values_;
    for (double& x : v) x = std::max(x - level, 0.0);
    return MonotoneStepFn(domain_, ends_, std::move(v));
}

MonotoneStepFn rearrange(const StepFn& f) {
    // Distribution function is a sum of lengths per distinct |value|; sorting
    // the (value, length) pairs and laying them out left to right realises it.
    std::map<double, double, std::greater<>> lengths;
    double lo = 0.0;
    for (std::size_t i = 0; i < f.ends().size(); ++i) {
        const double v = std::abs(f.values()[i]);
        if (v > 0.0) lengths[v] += f.ends()[i] - lo;
        lo = f.ends()[i];
    }
    std::vector<double> ends, values;
    double at = 0.0;
    for (const auto& [v, len] : lengths) {
        at += len;
        ends.push_back(at);
        values.push_back(v);
    }
    // Rounding in the running sum must not push the support past R.
    if (!ends.empty() && ends.back() > f.domain().R) ends.back() = f.domain().R;
    return MonotoneStepFn(f.domain(), std::move(ends), std::move(values));
}

PiecewiseFn maximal(const MonotoneStepFn& fstar) {
    std::vector<double> breaks;
    std::vector<Piece> pieces;
    double lo = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < fstar.size(); ++i) {
        const double v = fstar.values()[i];
        Piece p = Piece::constant(v);
        const double k = acc - v * lo;
        if (k > 0.0) p.terms.push_back({k, -1.0, 0.0});
        pieces.push_back(std::move(p));
        acc += v * (fstar.ends()[i] - lo);
        lo = fstar.ends()[i];
        if (lo < fstar.domain().R) breaks.push_back(lo);
    }
    if (pieces.size() == breaks.size()) pieces.push_back(Piece::power(acc, -1.0));
    return PiecewiseFn(fstar.domain(), std::move(breaks), std::move(pieces));
}

// ---------------------------------------------------------------------------

HardyAverage::HardyAverage(PiecewiseFn g) : g_(std::move(g)) {
    require(integrable_at(g_.head(), End::Zero), ErrorCode::NonIntegrable,
            "Hardy average: function not integrable at 0+ (head " + g_.head().describe() + ")");
    prefix_.reserve(g_.breaks().size());
    double acc = 0.0;
    for (std::size_t k = 0; k < g_.breaks().size(); ++k) {
        acc += integrate_piece(g_.pieces()[k], g_.piece_lo(k), g_.piece_hi(k));
        prefix_.push_back(acc);
    }
    const std::size_t last = g_.pieces().size() - 1;
    total_ = acc + integrate_piece(g_.pieces()[last], g_.piece_lo(last), g_.piece_hi(last));
}

double HardyAverage::cumulative(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= g_.domain().R) return total_;
    const std::size_t k = g_.piece_index(t);
    const double before = k == 0 ? 0.0 : prefix_[k - 1];
    return before + integrate_piece(g_.pieces()[k], g_.piece_lo(k), t);
}

double HardyAverage::operator()(double t) const { return cumulative(t) / t; }

Asymptote HardyAverage::head() const {
    return primitive(g_.head(), End::Zero) * Asymptote{1.0, -1.0, 0.0, 0.0};
}

Asymptote HardyAverage::tail() const {
    if (integrable_at(g_.tail(), End::Infinity))
        return total_ == 0.0 ? Asymptote::zero() : Asymptote{total_, -1.0, 0.0, 0.0};
    return primitive(g_.tail(), End::Infinity) * Asymptote{1.0, -1.0, 0.0, 0.0};
}

std::vector<double> log_grid(const Domain& domain, std::size_t n) {
    require(n >= 2, ErrorCode::InvalidArgument, "grid needs at least two points");
    const double lo = domain.bounded() ? domain.R * 1e-9 : 1e-9;
    const double hi = domain.bounded() ? domain.R * (1.0 - 1e-9) : 1e9;
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace reartool
