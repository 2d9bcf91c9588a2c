#pragma once

// Reference computations for the tests. Nothing here calls the library's
// algorithms; only its value types are used as carriers.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "funcspace.hpp"
#include "quasiconcave.hpp"

namespace oracle {

using reartool::Domain;
using reartool::MonotoneStepFn;
using reartool::QuasiconcaveFn;
using reartool::StepFn;

inline bool rel_close(double a, double b, double rel) {
    if (a == b) return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline bool paper_contains(const std::string& needle) {
    std::ifstream in(REARTOOL_PAPER);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str().find(needle) != std::string::npos;
}

/// Random step functions with unsorted values, some of them negative or zero.
class Steps {
public:
    explicit Steps(std::uint64_t seed, Domain d = Domain::half_line()) : d_(d), rng_(seed) {}

    StepFn next(int max_pieces = 12) {
        std::uniform_int_distribution<int> count(1, max_pieces);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = count(rng_);
        std::vector<double> ends;
        const double top = d_.bounded() ? d_.R : 1e3;
        while (static_cast<int>(ends.size()) < n) {
            const double e = d_.bounded() ? top * std::pow(1e-4, u(rng_)) : std::pow(10.0, 7.0 * u(rng_) - 4.0);
            ends.push_back(e);
            std::sort(ends.begin(), ends.end());
            ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        }
        if (d_.bounded() && u(rng_) < 0.3) ends.back() = d_.R;
        std::vector<double> values;
        for (int i = 0; i < n; ++i) {
            const double m = std::pow(10.0, 4.0 * u(rng_) - 2.0);
            const double r = u(rng_);
            values.push_back(r < 0.1 ? 0.0 : (r < 0.3 ? -m : m));
        }
        return StepFn(d_, ends, values);
    }

    MonotoneStepFn next_monotone(int max_pieces = 12) {
        std::uniform_int_distribution<int> count(1, max_pieces);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = count(rng_);
        std::vector<double> ends, values;
        for (int i = 0; i < n; ++i) {
            ends.push_back(d_.bounded() ? d_.R * std::pow(1e-4, u(rng_)) : std::pow(10.0, 7.0 * u(rng_) - 4.0));
            values.push_back(std::pow(10.0, 4.0 * u(rng_) - 2.0));
        }
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        std::sort(values.begin(), values.end(), std::greater<>());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        const std::size_t m = std::min(ends.size(), values.size());
        ends.resize(m);
        values.resize(m);
        return MonotoneStepFn(d_, ends, values);
    }

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    double log_uniform(double a, double b) { return a * std::pow(b / a, uniform(0.0, 1.0)); }

private:
    Domain d_;
    std::mt19937_64 rng_;
};

/// Pieces of a step function as (length, |value|).
inline std::vector<std::pair<double, double>> layers(const StepFn& f) {
    std::vector<std::pair<double, double>> out;
    double lo = 0.0;
    for (std::size_t i = 0; i < f.ends().size(); ++i) {
        out.emplace_back(f.ends()[i] - lo, std::abs(f.values()[i]));
        lo = f.ends()[i];
    }
    return out;
}

/// Distribution function: measure of {|f| > lambda}.
inline double distribution(const StepFn& f, double lambda) {
    double m = 0.0;
    for (const auto& [len, v] : layers(f))
        if (v > lambda) m += len;
    return m;
}

/// f*(t) = inf{lambda : distribution(lambda) <= t}.
inline double star(const StepFn& f, double t) {
    std::vector<double> levels{0.0};
    for (const auto& [len, v] : layers(f)) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    for (double l : levels)
        if (distribution(f, l) <= t) return l;
    return levels.back();
}

/// integral of f* over (0,t) by the layer-cake formula int_0^inf min(t, distribution(lambda)).
inline double star_integral(const StepFn& f, double t) {
    std::vector<double> levels{0.0};
    for (const auto& [len, v] : layers(f)) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        acc += (levels[i + 1] - levels[i]) * std::min(t, distribution(f, levels[i]));
    return acc;
}

/// Composite Simpson in u = ln s over [a,b], 0 < a < b < inf.
inline double simpson_log(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double la = std::log(a), h = (std::log(b) - la) / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = std::exp(la + i * h);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(s) * s;
    }
    return acc * h / 3.0;
}

/// Candidate points for a brute-force sup over (lo, hi) of phi(s) f*(s): a dense
/// log grid plus left limits at every breakpoint and at hi.
inline double brute_sup(const QuasiconcaveFn& phi, const MonotoneStepFn& f, double lo, double hi,
                        int m = 10000) {
    double best = 0.0;
    const double a = lo > 0.0 ? lo : std::min(1e-12, hi * 1e-6);
    const double b = std::isfinite(hi) ? hi : std::max(1e12, f.support_end() * 10.0);
    for (int i = 0; i <= m; ++i) {
        const double s = a * std::pow(b / a, double(i) / m);
        if (s > lo && s < hi) best = std::max(best, phi(s) * f(s));
    }
    for (double e : f.ends())
        if (e > lo && e <= hi) best = std::max(best, phi(e) * f.left_limit(e));
    if (std::isfinite(hi) && hi > lo) best = std::max(best, phi(hi) * f.left_limit(hi));
    return best;
}

/// S_phi f(t) by brute force.
inline double brute_S(const QuasiconcaveFn& phi, const MonotoneStepFn& f, double t) {
    return brute_sup(phi, f, 0.0, t) / phi(t);
}

/// T_psi f(t) by brute force.
inline double brute_T(const QuasiconcaveFn& psi, const MonotoneStepFn& f, double t) {
    return brute_sup(psi, f, t, f.domain().R) / psi(t);
}

}  // namespace oracle
