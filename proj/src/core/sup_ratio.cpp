#include "sup_ratio.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
std::atomic<std::size_t> g_grid_size{2048};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

struct EndLimit {
    LimitValue value;
    std::string why;
};

EndLimit ratio_limit(const Asymptote& n, const Asymptote& d, End end) {
    EndLimit out;
    if (n.is_zero()) {
        out.value = {LimitValue::Kind::Zero, 0.0};
    } else if (d.is_zero()) {
        out.value = {LimitValue::Kind::Infinite, kInf};
    } else {
        out.value = limit(n * reciprocal(d), end);
    }
    out.why = "at " + std::string(to_string(end)) + ": numerator ~ " + n.describe() +
              ", denominator ~ " + d.describe() + ", ratio -> " +
              (out.value.infinite() ? std::string("inf") : fmt(out.value.as_double()));
    return out;
}

}  // namespace

std::size_t default_grid_size() { return g_grid_size.load(); }

void set_default_grid_size(std::size_t n) {
    require(n >= 16, ErrorCode::InvalidArgument, "grid size must be at least 16");
    g_grid_size.store(n);
}

Multiplier Multiplier::one() {
    return {[](double) { return 1.0; }, Asymptote::constant(1.0), Asymptote::constant(1.0)};
}

Multiplier Multiplier::power(double k) {
    const Asymptote a{1.0, k, 0.0, 0.0};
    return {[k](double t) { return std::pow(t, k); }, a, a};
}

std::string ConditionReport::witness() const {
    if (!witness_tag.empty()) return witness_tag;
    if (witness_t) return fmt(*witness_t);
    return "";
}

RatioSide::RatioSide(const Domain& domain, const std::vector<Component>& parts,
                     const std::vector<double>& grid)
    : domain_(domain), parts_(parts), grid_(grid), tables_(parts.size()) {
    const std::size_t n = grid_.size();
    for (std::size_t c = 0; c < parts_.size(); ++c) {
        const Component& part = parts_[c];
        if (part.inner == Inner::None) continue;
        Table& tab = tables_[c];
        std::vector<double> cells(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            cells[i] = integrate_log_segment(part.g.f, grid_[i], grid_[i + 1]);
        const double head = integrate(part.g, 0.0, grid_.front());
        const double tail = integrate(part.g, grid_.back(), domain_.R);
        if (part.inner == Inner::Below && head == kInf && diverging_.empty())
            diverging_ = "integral over (0,t) diverges at 0+ for every t (integrand ~ " +
                         part.g.head.describe() + ")";
        if (part.inner == Inner::Above && tail == kInf && diverging_.empty())
            diverging_ = "integral over (t,R) diverges at inf for every t (integrand ~ " +
                         part.g.tail.describe() + ")";
        tab.below.resize(n);
        tab.above.resize(n);
        double acc = head;
        for (std::size_t i = 0; i < n; ++i) {
            tab.below[i] = acc;
            if (i + 1 < n) acc += cells[i];
        }
        acc = tail;
        for (std::size_t i = n; i-- > 0;) {
            tab.above[i] = acc;
            if (i > 0) acc += cells[i - 1];
        }
        tab.total = tab.below.back() + tail;
    }
}

double RatioSide::inner_at(std::size_t c, double t) const {
    const Component& part = parts_[c];
    const Table& tab = tables_[c];
    const bool below = part.inner == Inner::Below;
    if (t >= domain_.R) return below ? tab.total : 0.0;
    const std::size_t n = grid_.size();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    if (it == grid_.begin()) {
        if (below) return integrate(part.g, 0.0, t);
        return integrate(part.g, t, grid_.front()) + tab.above.front();
    }
    const std::size_t k = static_cast<std::size_t>(it - grid_.begin()) - 1;
    if (k == n - 1) {
        if (below) return tab.below.back() + integrate(part.g, grid_.back(), t);
        return integrate(part.g, t, domain_.R);
    }
    if (below) return tab.below[k] + integrate_log_segment(part.g.f, grid_[k], t);
    return integrate_log_segment(part.g.f, t, grid_[k + 1]) + tab.above[k + 1];
}

double RatioSide::at_index(std::size_t i) const {
    double s = 0.0;
    for (std::size_t c = 0; c < parts_.size(); ++c) {
        const Component& part = parts_[c];
        double inner = 1.0;
        if (part.inner == Inner::Below) inner = tables_[c].below[i];
        if (part.inner == Inner::Above) inner = tables_[c].above[i];
        if (inner == 0.0) continue;
        s += part.mult.f(grid_[i]) * inner;
    }
    return s;
}

double RatioSide::operator()(double t) const {
    double s = 0.0;
    for (std::size_t c = 0; c < parts_.size(); ++c) {
        const Component& part = parts_[c];
        const double inner = part.inner == Inner::None ? 1.0 : inner_at(c, t);
        if (inner == 0.0) continue;
        s += part.mult.f(t) * inner;
    }
    return s;
}

Asymptote RatioSide::asymptote(End end) const {
    Asymptote sum = Asymptote::zero();
    for (std::size_t c = 0; c < parts_.size(); ++c) {
        const Component& part = parts_[c];
        const Asymptote m = end == End::Zero ? part.mult.head : part.mult.tail;
        Asymptote inner = Asymptote::constant(1.0);
        const Asymptote& g = end == End::Zero ? part.g.head : part.g.tail;
        const double total = part.inner == Inner::None ? 0.0 : tables_[c].total;
        if (part.inner == Inner::Below) {
            if (end == End::Zero)
                inner = primitive(g, end);
            else
                inner = integrable_at(g, end) ? Asymptote::constant(total) : primitive(g, end);
        } else if (part.inner == Inner::Above) {
            if (end == End::Infinity)
                inner = primitive(g, end);
            else
                inner = integrable_at(g, end) ? Asymptote::constant(total) : primitive(g, end);
        }
        if (inner.is_zero() || (part.inner != Inner::None && total == 0.0)) continue;
        sum = dominant_sum(sum, m * inner, end);
    }
    return sum;
}

ConditionReport sup_ratio(const RatioProblem& problem) {
    ConditionReport rep;
    rep.grid_limited = problem.grid_limited;
    const Domain& dom = problem.domain;
    const std::size_t n = problem.grid_size ? problem.grid_size : default_grid_size();

    std::vector<double> grid = log_grid(dom, n);
    const double lo = grid.front(), hi = grid.back();
    for (const auto* side : {&problem.num, &problem.den})
        for (const Component& c : *side)
            for (double b : c.g.breaks)
                if (b > lo && b < hi) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    rep.grid_points = grid.size();
    rep.grid_lo = lo;
    rep.grid_hi = hi;

    const RatioSide N(dom, problem.num, grid);
    const RatioSide D(dom, problem.den, grid);

    if (N.infinite_everywhere()) {
        rep.finite = false;
        rep.sup_value = kInf;
        rep.witness_tag = N.diverging().find("at 0+") != std::string::npos ? "0+" : "inf";
        rep.reason = "numerator: " + N.diverging();
        return rep;
    }
    if (D.infinite_everywhere()) {
        rep.sup_value = 0.0;
        rep.witness_tag = "0+";
        rep.reason = "denominator: " + D.diverging();
        rep.warnings.push_back("denominator is infinite for every t; ratio vanishes identically");
        return rep;
    }

    const auto ratio = [](double num, double den) {
        if (num == 0.0) return 0.0;
        require(den > 0.0, ErrorCode::PreconditionViolated, "denominator vanishes");
        return num / den;
    };

    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = ratio(N.at_index(i), D.at_index(i));
        if (r > best_val) {
            best_val = r;
            best = i;
        }
    }
    double best_t = grid[best];

    // Local densification around the running argmax.
    double left = best > 0 ? grid[best - 1] : grid[best];
    double right = best + 1 < grid.size() ? grid[best + 1] : grid[best];
    for (int round = 0; round < 3 && right > left; ++round) {
        const int m = 20;
        const double a = std::log(left), b = std::log(right);
        double step_best = best_t;
        for (int j = 0; j <= m; ++j) {
            const double t = std::exp(a + (b - a) * j / m);
            const double r = ratio(N(t), D(t));
            if (r > best_val) {
                best_val = r;
                step_best = t;
            }
        }
        best_t = step_best;
        const double h = (b - a) / m;
        left = std::max(std::exp(std::log(best_t) - h), lo);
        right = std::min(std::exp(std::log(best_t) + h), hi);
        rep.refinement_rounds = round + 1;
    }

    const EndLimit at0 = ratio_limit(N.asymptote(End::Zero), D.asymptote(End::Zero), End::Zero);
    EndLimit atR;
    if (dom.bounded()) {
        const double nr = N(dom.R), dr = D(dom.R);
        atR.value = {LimitValue::Kind::Finite, ratio(nr, dr)};
        atR.why = "at R-: ratio -> " + fmt(atR.value.value);
    } else {
        atR = ratio_limit(N.asymptote(End::Infinity), D.asymptote(End::Infinity), End::Infinity);
    }
    rep.reason = at0.why + "; " + atR.why;

    const auto take_limit = [&](const EndLimit& lim, const char* tag) {
        if (lim.value.infinite()) {
            rep.finite = false;
            rep.sup_value = kInf;
            rep.witness_tag = tag;
            rep.witness_t.reset();
            rep.numerator.reset();
            rep.denominator.reset();
            return true;
        }
        return false;
    };
    if (take_limit(at0, "0+")) return rep;
    if (take_limit(atR, dom.bounded() ? "R-" : "inf")) return rep;

    rep.sup_value = best_val;
    rep.witness_t = best_t;
    rep.numerator = N(best_t);
    rep.denominator = D(best_t);
    const double l0 = at0.value.as_double(), lR = atR.value.as_double();
    if (l0 > best_val && l0 >= lR) {
        rep.sup_value = l0;
        rep.witness_tag = "0+";
    } else if (lR > best_val) {
        rep.sup_value = lR;
        rep.witness_tag = dom.bounded() ? "R-" : "inf";
    }
    if (!rep.witness_tag.empty()) {
        rep.witness_t.reset();
        rep.numerator.reset();
        rep.denominator.reset();
    }
    return rep;
}

}  // namespace reartool
