#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <type_traits>

#include "error.hpp"
#include "supremum.hpp"

namespace reartool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLevels = 5;

// Necessity families live on (0, W].
double window(const Domain& d) { return d.bounded() ? std::min(1.0, 0.5 * d.R) : 1.0; }

double upper(const Domain& d) { return d.bounded() ? d.R * (1.0 - 1e-9) : kInf; }

// Ends, points just left of them, three geometric interior points per piece,
// and a log sweep at 8 points per decade around the support.
std::vector<double> eval_points(const MonotoneStepFn& f) {
    std::vector<double> pts;
    const double top = upper(f.domain());
    double prev = f.ends().front() / 100.0;
    for (double e : f.ends()) {
        pts.push_back(e * (1.0 - 1e-7));
        if (e < top) pts.push_back(e);
        for (double q : {0.25, 0.5, 0.75}) pts.push_back(prev * std::pow(e / prev, q));
        prev = e;
    }
    const double lo = f.ends().front() / 100.0;
    const double hi = std::min(f.support_end() * 100.0, top);
    const int n = std::max(24, static_cast<int>(std::ceil(8.0 * std::log10(hi / lo))));
    for (int j = 0; j <= n; ++j) pts.push_back(lo * std::pow(hi / lo, double(j) / n));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Draws n samples in order, then evaluates them on worker threads. Results keep
// sample order, so verdicts do not depend on scheduling.
template <class F>
auto map_samples(StepSampler& gen, std::size_t n, F&& eval) {
    using R = std::invoke_result_t<F&, const MonotoneStepFn&>;
    std::vector<MonotoneStepFn> fs;
    fs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) fs.push_back(rearrange(gen.next()));
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                out[i] = eval(fs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), (n + 7) / 8);
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

double max_of(const std::vector<double>& v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n && i < v.size(); ++i) m = std::max(m, std::isnan(v[i]) ? kInf : v[i]);
    return m;
}

bool within(double value, std::optional<double> bound, double slack) {
    return !bound || value <= *bound * (1.0 + slack);
}

// Sufficiency runs draw twice the requested samples: the verdict reports the
// max over the first half and is stable when the full set raises it by < 10%.
std::size_t doubled(const SampleConfig& cfg) { return 2 * cfg.samples; }

// Fills the sufficiency fields from per-sample ratios of a doubled run.
void settle(LemmaVerdict& v, const std::vector<double>& r, std::optional<double> bound,
            double slack) {
    v.direction = Direction::Sufficiency;
    v.samples = r.size() / 2;
    v.max_ratio = max_of(r, v.samples);
    v.doubled_max_ratio = max_of(r, r.size());
    v.stable = std::isfinite(v.doubled_max_ratio) && v.max_ratio >= 0.9 * v.doubled_max_ratio;
    v.bound = bound;
    v.passed = v.stable && within(v.doubled_max_ratio, bound, slack);
}

SubCheck sub_check(const std::string& name, const std::vector<double>& r,
                   std::optional<double> bound, double slack) {
    LemmaVerdict tmp;
    settle(tmp, r, bound, slack);
    SubCheck c{name, tmp.passed, tmp.max_ratio, bound, ""};
    if (!tmp.stable)
        c.detail = "max over twice the samples is " + std::to_string(tmp.doubled_max_ratio);
    return c;
}

void settle_necessity(LemmaVerdict& v, std::vector<double> params, std::vector<double> seq) {
    v.direction = Direction::Necessity;
    v.parameters = std::move(params);
    v.sequence = std::move(seq);
    v.samples = v.sequence.size();
    bool increasing = v.sequence.size() >= 3;
    for (std::size_t i = 0; i < v.sequence.size(); ++i) {
        increasing = increasing && std::isfinite(v.sequence[i]);
        if (i > 0) increasing = increasing && v.sequence[i] > v.sequence[i - 1];
    }
    v.max_ratio = v.sequence.empty() ? 0.0 : v.sequence.back();
    v.stable = increasing;
    v.passed = increasing;
}

// Step approximation of 1/phi on (W/n, W) from below, constant on (0, W/n).
MonotoneStepFn reciprocal_family(const QuasiconcaveFn& phi, double W, double n) {
    const int J = static_cast<int>(std::ceil(std::log2(n)));
    std::vector<double> ends, values;
    for (int j = 0; j <= J; ++j) {
        const double e = W * std::ldexp(1.0, j - J);
        ends.push_back(e);
        values.push_back(1.0 / phi(e));
    }
    return MonotoneStepFn(phi.domain(), ends, values);
}

// A step function below the nonincreasing g on (lo, hi), zero elsewhere.
StepFn step_minorant(const PiecewiseFn& g, double lo, double hi) {
    std::vector<double> ends{lo}, values{0.0};
    for (double x = lo; x < hi;) {
        x = std::min(2.0 * x, hi);
        ends.push_back(x);
        values.push_back(g(x * (1.0 - 1e-12)));
    }
    return StepFn(g.domain(), ends, values);
}

// g on (0, W), zero beyond.
PiecewiseFn cut(const PiecewiseFn& g, double W) {
    if (W >= g.domain().R) return g;
    std::vector<double> breaks;
    std::vector<Piece> pieces;
    for (std::size_t k = 0; k < g.pieces().size() && g.piece_lo(k) < W; ++k) {
        pieces.push_back(g.pieces()[k]);
        breaks.push_back(std::min(g.piece_hi(k), W));
    }
    pieces.emplace_back();
    return PiecewiseFn(g.domain(), breaks, pieces);
}

double levels(int k) { return std::pow(10.0, k); }

BReport require_b(const QuasiconcaveFn& phi) { return b_consensus(phi); }

double marc(const QuasiconcaveFn& phi, const PiecewiseFn& g) {
    return marcinkiewicz_norm(phi, HardyAverage(g)).value;
}

}  // namespace

// ---------------------------------------------------------------------------

StepSampler::StepSampler(Domain domain, std::uint64_t seed) : domain_(domain), rng_(seed) {}

StepFn StepSampler::next() {
    std::uniform_int_distribution<int> count(1, 64);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = count(rng_);
    std::vector<double> ends, values;
    for (int i = 0; i < n; ++i) {
        const double x = 1.0 - u(rng_);  // (0, 1]
        ends.push_back(domain_.bounded() ? domain_.R * std::pow(10.0, -12.0 * x)
                                         : std::pow(10.0, 12.0 * x - 6.0));
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    for (std::size_t i = 0; i < ends.size(); ++i)
        values.push_back(std::pow(10.0, 6.0 * u(rng_) - 3.0));
    return StepFn(domain_, ends, values);
}

const char* to_string(Direction d) {
    return d == Direction::Sufficiency ? "sufficiency" : "necessity";
}

// ---------------------------------------------------------------------------

PhiDoubleStar::PhiDoubleStar(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar)
    : phi_(phi), f_(fstar) {
    edge_.push_back(0.0);
    edge_.insert(edge_.end(), f_.ends().begin(), f_.ends().end());
    const std::size_t n = f_.size();
    std::vector<double> piece(n);
    for (std::size_t i = 0; i < n; ++i) piece[i] = sup_on(edge_[i], edge_[i + 1]);
    prefix_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = std::max(prefix_[i], piece[i]);
    suffix_.assign(n + 1, 0.0);
    // Beyond the support h = phi(s) ||f||_1 / s is nonincreasing.
    if (n > 0 && f_.support_end() < phi_.domain().R) suffix_[n] = h(f_.support_end());
    for (std::size_t i = n; i-- > 0;) suffix_[i] = std::max(piece[i], suffix_[i + 1]);
}

double PhiDoubleStar::h(double s) const { return phi_(s) * f_.double_star(s); }

double PhiDoubleStar::sup_on(double lo, double hi) const {
    const double a = lo > 0.0 ? h(lo) : phi_.at_zero() * f_.sup();
    if (!(hi > lo)) return a;
    double best = std::max(a, h(hi));
    const double from = lo > 0.0 ? lo : hi * 1e-12;
    constexpr int n = 8;
    double inner = -1.0;
    int arg = 0;
    for (int j = 1; j < n; ++j) {
        const double v = h(from * std::pow(hi / from, double(j) / n));
        if (v > inner) {
            inner = v;
            arg = j;
        }
    }
    if (inner > best) {
        const auto at = [&](int j) { return from * std::pow(hi / from, double(j) / n); };
        best = std::max(inner, golden_max([this](double s) { return h(s); }, at(arg - 1),
                                          at(arg + 1), nullptr));
    }
    return best;
}

double PhiDoubleStar::below(double t) const {
    const std::size_t n = f_.size();
    const std::size_t i = std::upper_bound(edge_.begin() + 1, edge_.end(), t) - edge_.begin() - 1;
    if (i >= n) return std::max(prefix_[n], n ? h(f_.support_end()) : 0.0);
    return std::max(prefix_[i], sup_on(edge_[i], t));
}

double PhiDoubleStar::above(double t) const {
    const std::size_t n = f_.size();
    const std::size_t i = std::upper_bound(edge_.begin() + 1, edge_.end(), t) - edge_.begin() - 1;
    if (i >= n) return h(t);
    return std::max(sup_on(t, edge_[i + 1]), suffix_[i + 1]);
}

double one_star_sup(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar) {
    double best = 0.0;
    for (std::size_t i = 0; i < fstar.size(); ++i)
        best = std::max(best, fstar.values()[i] * phi(fstar.ends()[i]));
    return best;
}

// ---------------------------------------------------------------------------

LemmaVerdict verify_one_star(const QuasiconcaveFn& phi, const SampleConfig& cfg) {
    LemmaVerdict v;
    v.lemma = "one-star";
    const BReport b = require_b(phi);
    if (b.holds) {
        StepSampler gen(phi.domain(), cfg.seed);
        const std::vector<double> r = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
            return marcinkiewicz_norm(phi, f).value / one_star_sup(phi, f);
        });
        settle(v, r, b.constant, cfg.slack);
        v.notes.push_back("ratio sup phi f** / sup phi f*; bound is the integral B constant");
        return v;
    }
    const double W = window(phi.domain());
    std::vector<double> params, seq;
    for (int k = 1; k <= kLevels; ++k) {
        const MonotoneStepFn f = reciprocal_family(phi, W, levels(k));
        params.push_back(levels(k));
        seq.push_back(marcinkiewicz_norm(phi, f).value / one_star_sup(phi, f));
    }
    settle_necessity(v, params, seq);
    v.witness = "f* = dyadic step minorant of 1/phi on (W/n, W), W = " + std::to_string(W);
    return v;
}

const char* to_string(Endpoint e) {
    switch (e) {
        case Endpoint::TL1: return "T-L1";
        case Endpoint::TM: return "T-M";
        case Endpoint::SM: return "S-M";
        case Endpoint::SLinf: return "S-Linf";
    }
    return "?";
}

Endpoint parse_endpoint(const std::string& s) {
    for (Endpoint e : {Endpoint::TL1, Endpoint::TM, Endpoint::SM, Endpoint::SLinf})
        if (s == to_string(e)) return e;
    fail(ErrorCode::InvalidArgument, "unknown endpoint lemma '" + s + "'");
}

LemmaVerdict verify_endpoints(Endpoint which, const QuasiconcaveFn& phi, const SampleConfig& cfg) {
    LemmaVerdict v;
    v.lemma = std::string("endpoints/") + to_string(which);
    const Domain& dom = phi.domain();
    StepSampler gen(dom, cfg.seed);
    std::vector<double> r;

    if (which == Endpoint::SLinf) {
        r = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
            return apply_S(phi, f).value(f.ends().front() * 1e-3) / f.sup();
        });
        settle(v, r, 1.0, cfg.slack);
        v.notes.push_back("holds for every quasiconcave phi; no necessity family");
        return v;
    }

    const BReport b = require_b(phi);
    const double C = b.constant;
    const double W = window(dom);
    std::vector<double> params, seq;

    switch (which) {
        case Endpoint::TL1:
            if (b.holds) {
                r = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
                    return integrate(apply_T(phi, f).value, 0.0, dom.R) / f.l1();
                });
                settle(v, r, C + 1.0, cfg.slack);
            } else {
                const PiecewiseFn tf = apply_T(phi, MonotoneStepFn::indicator(dom, W)).value;
                for (int k = 1; k <= kLevels; ++k) {
                    const double eps = 1.0 / levels(k);
                    params.push_back(eps);
                    seq.push_back(integrate(tf, eps * W, W) / W);
                }
                settle_necessity(v, params, seq);
                v.witness = "f = chi_(0,W); L1 norm of T f restricted to (eps W, W)";
            }
            break;
        case Endpoint::TM:
            if (b.holds) {
                r = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
                    return marc(phi, apply_T(phi, f).value) / marcinkiewicz_norm(phi, f).value;
                });
                settle(v, r, C, cfg.slack);
            } else {
                const MonotoneStepFn f = MonotoneStepFn::indicator(dom, W);
                const PiecewiseFn tf = apply_T(phi, f).value;
                const double norm = marcinkiewicz_norm(phi, f).value;
                for (int k = 1; k <= kLevels; ++k) {
                    const double eps = 1.0 / levels(k);
                    params.push_back(eps);
                    const StepFn h = step_minorant(tf, eps * W, W);
                    seq.push_back(marcinkiewicz_norm(phi, h).value / norm);
                }
                settle_necessity(v, params, seq);
                v.witness = "f = chi_(0,W); dyadic step minorant of T f on (eps W, W)";
            }
            break;
        case Endpoint::SM:
            if (b.holds) {
                r = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
                    return marc(phi, apply_S(phi, f).value) / marcinkiewicz_norm(phi, f).value;
                });
                settle(v, r, C, cfg.slack);
            } else {
                for (int k = 1; k <= kLevels; ++k) {
                    const double a = W / levels(k);
                    const MonotoneStepFn f = MonotoneStepFn::indicator(dom, a);
                    params.push_back(a);
                    seq.push_back(marc(phi, cut(apply_S(phi, f).value, W)) /
                                  marcinkiewicz_norm(phi, f).value);
                }
                settle_necessity(v, params, seq);
                v.witness = "f = chi_(0,a), a -> 0+; S f restricted to (0, W)";
            }
            break;
        case Endpoint::SLinf: break;
    }
    if (v.direction == Direction::Necessity)
        v.notes.push_back("restricting a nonnegative function lowers every lattice norm, so each "
                          "ratio is a lower bound for the operator norm");
    return v;
}

// ---------------------------------------------------------------------------

const char* to_string(Starfall s) {
    switch (s) {
        case Starfall::Tff: return "Tff";
        case Starfall::Tstar: return "Tstar";
        case Starfall::Sstar: return "Sstar";
        case Starfall::Sff: return "Sff";
        case Starfall::Combined: return "combined";
    }
    return "?";
}

Starfall parse_starfall(const std::string& s) {
    for (Starfall f : {Starfall::Tff, Starfall::Tstar, Starfall::Sstar, Starfall::Sff,
                       Starfall::Combined})
        if (s == to_string(f)) return f;
    fail(ErrorCode::InvalidArgument, "unknown starfall lemma '" + s + "'");
}

namespace {

// Pointwise quantities of one f against phi (S side) and psi (T side).
struct Pointwise {
    MonotoneStepFn f;
    PiecewiseFn fss;
    std::optional<PiecewiseFn> sf, tf;
    std::optional<HardyAverage> sf_ss, tf_ss;
    std::optional<PhiDoubleStar> s_fss, t_fss;

    Pointwise(const MonotoneStepFn& f_, const QuasiconcaveFn& phi, const QuasiconcaveFn& psi,
              Starfall which)
        : f(f_), fss(maximal(f_)) {
        const bool s_side = which != Starfall::Tff && which != Starfall::Tstar;
        const bool t_side = which == Starfall::Tff || which == Starfall::Tstar ||
                            which == Starfall::Combined;
        if (s_side) {
            sf = apply_S(phi, f).value;
            if (which == Starfall::Sstar) sf_ss.emplace(*sf);
            s_fss.emplace(phi, f);
        }
        if (t_side) {
            tf = apply_T(psi, f).value;
            if (which == Starfall::Tff) tf_ss.emplace(*tf);
            if (which != Starfall::Tff) t_fss.emplace(psi, f);
        }
    }
};

// {upper ratio, lower ratio} at t; the lower one is only meaningful for the
// two-sided lemmas.
std::pair<double, double> starfall_ratio(Starfall which, const Pointwise& q,
                                         const QuasiconcaveFn& phi, const QuasiconcaveFn& psi,
                                         double t) {
    switch (which) {
        case Starfall::Tff: return {(*q.tf_ss)(t) / ((*q.tf)(t) + q.fss(t)), 0.0};
        case Starfall::Tstar: {
            const double lhs = q.t_fss->above(t) / psi(t);
            const double rhs = (*q.tf)(t) + q.fss(t);
            return {lhs / rhs, rhs / lhs};
        }
        case Starfall::Sstar: return {(*q.sf_ss)(t) / (q.s_fss->below(t) / phi(t)), 0.0};
        case Starfall::Sff: return {q.s_fss->below(t) / phi(t) / (*q.sf)(t), 0.0};
        case Starfall::Combined: {
            const double lhs = q.s_fss->below(t) / phi(t) + q.t_fss->above(t) / psi(t);
            const double rhs = (*q.sf)(t) + (*q.tf)(t);
            return {lhs / rhs, rhs / lhs};
        }
    }
    return {0.0, 0.0};
}

}  // namespace

LemmaVerdict verify_starfalls(Starfall which, const QuasiconcaveFn& phi,
                              const QuasiconcaveFn& psi, const SampleConfig& cfg) {
    require(phi.domain() == psi.domain(), ErrorCode::DomainMismatch,
            "phi and psi live on different domains");
    LemmaVerdict v;
    v.lemma = std::string("starfalls/") + to_string(which);
    const Domain& dom = phi.domain();
    const bool uses_phi = which != Starfall::Tff && which != Starfall::Tstar;
    const bool uses_psi = which == Starfall::Tff || which == Starfall::Tstar ||
                          which == Starfall::Combined;
    std::optional<BReport> bphi, bpsi;
    if (uses_phi) bphi = require_b(phi);
    if (uses_psi) bpsi = require_b(psi);
    const bool holds = (!bphi || bphi->holds) && (!bpsi || bpsi->holds);
    const bool two_sided = which == Starfall::Tstar || which == Starfall::Combined;

    if (holds) {
        const double Cphi = bphi ? bphi->constant : 0.0, Cpsi = bpsi ? bpsi->constant : 0.0;
        double bound = 0.0, lower_bound = 1.0;
        switch (which) {
            case Starfall::Tff: bound = Cpsi + 1.0; break;
            case Starfall::Tstar:
                bound = std::max(Cpsi, 1.0);
                lower_bound = 2.0;
                break;
            case Starfall::Sstar:
            case Starfall::Sff: bound = Cphi; break;
            case Starfall::Combined: bound = std::max(2.0 * Cphi, Cpsi); break;
        }
        StepSampler gen(dom, cfg.seed);
        const auto both = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
            const Pointwise q(f, phi, psi, which);
            double u = 0.0, d = 0.0;
            for (double t : eval_points(q.f)) {
                const auto [a, b] = starfall_ratio(which, q, phi, psi, t);
                u = std::max(u, std::isnan(a) ? kInf : a);
                d = std::max(d, std::isnan(b) ? kInf : b);
            }
            return std::pair<double, double>(u, d);
        });
        std::vector<double> up, down;
        for (const auto& [u, d] : both) {
            up.push_back(u);
            down.push_back(d);
        }
        settle(v, up, bound, cfg.slack);
        if (two_sided) {
            v.checks.push_back(sub_check("upper", up, bound, cfg.slack));
            v.checks.push_back(sub_check("lower", down, lower_bound, cfg.slack));
            v.passed = v.checks[0].passed && v.checks[1].passed;
        }
        v.notes.push_back("max over log-grid points and breakpoints of each sample");
        return v;
    }

    const double W = window(dom);
    std::vector<double> params, seq;
    for (int k = 1; k <= kLevels; ++k) {
        const double n = levels(k);
        double ratio = 0.0;
        switch (which) {
            case Starfall::Tff: {
                const MonotoneStepFn f = MonotoneStepFn::indicator(dom, W);
                const PiecewiseFn tf = apply_T(psi, f).value;
                const double t = 0.5 * W, eps = 1.0 / n;
                ratio = integrate(tf, eps * t, t) / t / (tf(t) + f.double_star(t));
                params.push_back(eps);
                v.witness = "f = chi_(0,W) at t = W/2; (T f)** averaged over (eps t, t) only";
                break;
            }
            case Starfall::Sstar: {
                const double a = W / n;
                const Pointwise q(MonotoneStepFn::indicator(dom, a), phi, psi, which);
                ratio = starfall_ratio(which, q, phi, psi, W).first;
                params.push_back(a);
                v.witness = "f = chi_(0,a), a -> 0+, at t = W";
                break;
            }
            default: {
                const QuasiconcaveFn& g = bphi && !bphi->holds ? phi : psi;
                const Pointwise q(reciprocal_family(g, W, n), phi, psi, which);
                for (double t : eval_points(q.f))
                    if (t <= W) ratio = std::max(ratio, starfall_ratio(which, q, phi, psi, t).first);
                params.push_back(n);
                v.witness = "f* = dyadic step minorant of 1/" +
                            std::string(&g == &phi ? "phi" : "psi") + " on (W/n, W)";
                break;
            }
        }
        seq.push_back(ratio);
    }
    settle_necessity(v, params, seq);
    return v;
}

// ---------------------------------------------------------------------------

DemoOperator::DemoOperator(Kind kind, double r) : kind_(kind), r_(r) {
    require(std::isfinite(r) && r > 0.0, ErrorCode::InvalidArgument, "dilation factor must be > 0");
}

DemoOperator DemoOperator::parse(const std::string& tag) {
    if (tag == "hardy-average") return DemoOperator(Kind::HardyAverage);
    if (tag == "identity") return DemoOperator(Kind::Identity);
    if (tag == "sum") return DemoOperator(Kind::Sum);
    if (tag == "dilation") return DemoOperator(Kind::Dilation);
    if (tag.rfind("dilation:", 0) == 0) {
        try {
            return DemoOperator(Kind::Dilation, std::stod(tag.substr(9)));
        } catch (const std::logic_error&) {
        }
    }
    fail(ErrorCode::InvalidArgument, "unknown operator '" + tag + "'");
}

std::string DemoOperator::name() const {
    switch (kind_) {
        case Kind::HardyAverage: return "hardy-average";
        case Kind::Identity: return "identity";
        case Kind::Sum: return "sum";
        case Kind::Dilation: {
            std::string s = std::to_string(r_);
            s.erase(s.find_last_not_of('0') + 1);
            if (s.back() == '.') s.pop_back();
            return "dilation:" + s;
        }
    }
    return "?";
}

PiecewiseFn DemoOperator::apply(const MonotoneStepFn& fstar) const {
    switch (kind_) {
        case Kind::HardyAverage: return maximal(fstar);
        case Kind::Identity: return fstar.as_step().to_piecewise();
        case Kind::Dilation: return fstar.dilated(r_).as_step().to_piecewise();
        case Kind::Sum: return add(fstar.as_step().to_piecewise(), maximal(fstar));
    }
    return {};
}

namespace {

// Bound on (Tf)** / S_phi f given f** <= C S_phi f.
double pointwise_bound(const DemoOperator& op, double C) {
    switch (op.kind()) {
        case DemoOperator::Kind::Identity: return C;
        case DemoOperator::Kind::HardyAverage: return C * C;
        case DemoOperator::Kind::Dilation: return C * std::max(1.0, 1.0 / op.dilation());
        case DemoOperator::Kind::Sum: return C + C * C;
    }
    return kInf;
}

// ||g1 + g2||_{Gamma} for nonincreasing g1, g2, via (g1+g2)** = g1** + g2**.
double gamma_of_sum(const GammaSpace& space, const PiecewiseFn& g1, const PiecewiseFn& g2) {
    const HardyAverage a(g1), b(g2);
    const PiecewiseFn& w = space.weight();
    const double p = space.p();
    std::vector<double> breaks = a.breaks();
    breaks.insert(breaks.end(), b.breaks().begin(), b.breaks().end());
    breaks.insert(breaks.end(), w.breaks().begin(), w.breaks().end());
    const Integrand g{[&](double t) { return std::pow(a(t) + b(t), p) * w(t); },
                      pow(dominant_sum(a.head(), b.head(), End::Zero), p) * w.head(),
                      pow(dominant_sum(a.tail(), b.tail(), End::Infinity), p) * w.tail(), breaks};
    return std::pow(integrate(g, 0.0, space.domain().R), 1.0 / p);
}

}  // namespace

LemmaVerdict verify_interpolation(const DemoOperator& op, double p, const QuasiconcaveFn& phi,
                                  const QuasiconcaveFn& psi, const PiecewiseFn& w1,
                                  const PiecewiseFn& w2, const SampleConfig& cfg) {
    LemmaVerdict v;
    v.lemma = "interpolation/" + op.name();
    const Domain& dom = phi.domain();
    const GammaSpace X1(p, w1), X2(p, w2);
    X1.require_nontrivial();
    X2.require_nontrivial();
    const ConditionReport st = stgg_condition(p, phi, psi, w1, w2);
    require(st.finite, ErrorCode::PreconditionViolated,
            "stgg condition is infinite (" + st.witness() + "): " + st.reason);
    v.notes.push_back("stgg sup = " + std::to_string(st.sup_value));
    v.notes.push_back("the sandwich M_phi cap M_psi in X in M_phi + M_psi is not checked; "
                      "X ranges over Gamma^p spaces only");

    // Endpoint boundedness of T on M_phi and M_psi, empirically.
    {
        StepSampler gen(dom, cfg.seed ^ 0x9e3779b97f4a7c15ull);
        double worst = 0.0;
        for (std::size_t i = 0; i < std::min<std::size_t>(cfg.samples, 50); ++i) {
            const MonotoneStepFn f = rearrange(gen.next());
            const PiecewiseFn tf = op.apply(f);
            for (const QuasiconcaveFn* g : {&phi, &psi})
                worst = std::max(worst, marc(*g, tf) / marcinkiewicz_norm(*g, f).value);
        }
        require(std::isfinite(worst), ErrorCode::PreconditionViolated,
                op.name() + " is not bounded on M_phi or M_psi empirically");
        v.notes.push_back("endpoint M_phi/M_psi ratio max = " + std::to_string(worst));
    }

    // (a) truncation bounds, exact on steps.
    {
        StepSampler gen(dom, cfg.seed + 1);
        std::mt19937_64 rng(cfg.seed + 2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const MonotoneStepFn f = rearrange(gen.next());
            const double lo = f.ends().front() / 10.0;
            const double hi = std::min(f.support_end() * 10.0, upper(dom));
            const double t = lo * std::pow(hi / lo, u(rng));
            const double level = f(t), fss_t = f.double_star(t);
            const MonotoneStepFn big = f.excess_over(level), small = f.truncated_below(level);
            std::vector<double> pts = eval_points(f);
            pts.push_back(t);
            for (double s : pts) {
                if (!big.is_zero()) worst = std::max(worst, big.double_star(s) / (t / s * fss_t));
                worst = std::max(worst, small.double_star(s) / fss_t);
            }
        }
        v.checks.push_back({"truncation", worst <= 1.0 + 1e-12, worst, 1.0,
                            "(f^t)**(s) <= (t/s) f**(t) and (f_t)**(s) <= f**(t)"});
    }

    // (b) pointwise (Tf)** <= C (S_phi f + T_psi f) and (c) norm ratios.
    StepSampler gen(dom, cfg.seed);
    struct Sample {
        double pointwise = 0.0, nf = 0.0, nt = 0.0, nst = 0.0;
    };
    const std::vector<Sample> drawn = map_samples(gen, doubled(cfg), [&](const MonotoneStepFn& f) {
        const HardyAverage tss(op.apply(f));
        const PiecewiseFn sf = apply_S(phi, f).value, tpf = apply_T(psi, f).value;
        Sample q;
        for (double t : eval_points(f)) q.pointwise = std::max(q.pointwise, tss(t) / (sf(t) + tpf(t)));
        q.nf = gamma_norm(X1, f).value;
        q.nt = gamma_norm(X2, tss).value;
        q.nst = gamma_of_sum(X2, sf, tpf);
        return q;
    });
    std::vector<double> pointwise, norm_ratio, st_ratio;
    std::vector<std::pair<double, double>> pairs;
    for (const Sample& q : drawn) {
        pointwise.push_back(q.pointwise);
        norm_ratio.push_back(q.nt / q.nf);
        st_ratio.push_back(q.nst / q.nf);
        pairs.emplace_back(q.nt, q.nst);
    }
    const double Cb = max_of(pointwise, pointwise.size());
    {
        // f** <= C_phi S_phi f, since phi S_phi f is nondecreasing.
        const BReport b = require_b(phi);
        const std::optional<double> bound =
            b.holds ? std::optional<double>(pointwise_bound(op, b.constant)) : std::nullopt;
        SubCheck c = sub_check("pointwise", pointwise, bound, cfg.slack);
        c.passed = std::isfinite(Cb) && within(Cb, bound, cfg.slack);
        c.detail = "(Tf)**(t) / (S_phi f(t) + T_psi f(t))" +
                   (c.detail.empty() ? std::string() : "; " + c.detail) +
                   (bound ? "; bound from the B constant of phi" : "; phi not in B, no bound");
        v.checks.push_back(c);
    }

    settle(v, norm_ratio, std::nullopt, cfg.slack);
    bool chained = true;
    for (const auto& [nt, nst] : pairs) chained = chained && nt <= Cb * nst * (1.0 + cfg.slack);
    SubCheck norms = sub_check("norm", norm_ratio, std::nullopt, cfg.slack);
    norms.detail = "||Tf|| / ||f||; ||S_phi f + T_psi f|| / ||f|| max = " +
                   std::to_string(max_of(st_ratio, st_ratio.size()));
    if (!chained) {
        norms.passed = false;
        norms.detail += "; ||Tf|| exceeds the pointwise constant times ||S_phi f + T_psi f||";
    }
    if (op.kind() == DemoOperator::Kind::Identity && p == 1.0) {
        const ConditionReport g = ghs_condition(p, w1, w2);
        norms.bound = g.sup_value;
        norms.passed = norms.passed && within(max_of(norm_ratio, norm_ratio.size()), g.sup_value, cfg.slack);
        norms.detail += "; bounded by the ghs sup";
    }
    v.checks.push_back(norms);
    v.bound = norms.bound;
    v.passed = std::all_of(v.checks.begin(), v.checks.end(),
                           [](const SubCheck& c) { return c.passed; });
    return v;
}

}  // namespace reartool
