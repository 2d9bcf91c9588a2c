#include <doctest.h>

#include "oracles.hpp"
#include "supremum.hpp"

using namespace reartool;
using oracle::rel_close;

namespace {

const Domain kHalf = Domain::half_line();

QuasiconcaveFn cf(double alpha, double beta = 0.0, double jump = 0.0, Domain d = kHalf) {
    return QuasiconcaveFn::closed_form(d, {jump, 1.0, alpha, beta});
}

std::vector<double> probe_points(const MonotoneStepFn& f, oracle::Steps& gen, int random = 20) {
    std::vector<double> pts;
    const double top = f.domain().bounded() ? f.domain().R : INFINITY;
    for (double e : f.ends()) {
        for (double t : {e * 0.5, e * (1 - 1e-9), e, e * (1 + 1e-9), e * 2.0})
            if (t < top) pts.push_back(t);
    }
    for (int i = 0; i < random; ++i) {
        const double t = gen.log_uniform(f.ends().front() * 1e-3, std::min(f.support_end() * 1e3, top));
        if (t < top) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

TEST_CASE("S on indicators is min(1, phi(a)/phi(t))") {
    CHECK(oracle::paper_contains("S_\\varphi \\chi_{(0,a)} (t)"));
    CHECK(oracle::paper_contains("= \\min\\biggl\\{ 1, \\frac{\\varphi(a)}{\\varphi(t)} \\biggr\\}"));
    const QuasiconcaveFn phi = cf(0.5);
    const PiecewiseFn s = apply_S(phi, MonotoneStepFn::indicator(kHalf, 1.0)).value;
    CHECK(s(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.01, 0.5, 1.0, 2.0, 1e4}) CHECK(rel_close(s(t), std::min(1.0, 1.0 / std::sqrt(t)), 1e-14));
}

TEST_CASE("S on a two-level step") {
    const QuasiconcaveFn phi = cf(0.5);
    const MonotoneStepFn f(kHalf, {1, 4}, {2, 1});
    const PiecewiseFn s = apply_S(phi, f).value;
    CHECK(rel_close(s(1.0), 2.0, 1e-14));
    CHECK(rel_close(s(4.0), 1.0, 1e-14));
    for (double t : {1.0, 4.0, 0.3, 2.5, 9.0}) CHECK(rel_close(s(t), oracle::brute_S(phi, f, t), 1e-10));
}

TEST_CASE("T on indicators is chi_(0,a) phi(a)/phi(t)") {
    CHECK(oracle::paper_contains("T_\\varphi \\chi_{(0,a)}(t)"));
    CHECK(oracle::paper_contains("= \\chi_{(0,a)}(t) \\frac{\\varphi(a)}{\\varphi (t)}"));
    const QuasiconcaveFn psi = cf(0.5);
    const PiecewiseFn t1 = apply_T(psi, MonotoneStepFn::indicator(kHalf, 1.0)).value;
    CHECK(t1(0.25) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(t1(1.0) == 0.0);
    CHECK(t1(3.0) == 0.0);
}

TEST_CASE("T on a two-level step") {
    const QuasiconcaveFn psi = cf(0.5);
    const MonotoneStepFn f(kHalf, {1, 4}, {2, 1});
    const PiecewiseFn t = apply_T(psi, f).value;
    CHECK(rel_close(t(0.25), 4.0, 1e-14));
    CHECK(rel_close(t(2.25), 4.0 / 3.0, 1e-14));
    CHECK(t(5.0) == 0.0);
    for (double x : {0.25, 2.25, 0.999, 3.9}) CHECK(rel_close(t(x), oracle::brute_T(psi, f, x), 1e-10));
}

TEST_CASE("zero input gives zero output") {
    const MonotoneStepFn zero(kHalf, {}, {});
    for (const QuasiconcaveFn& phi : {cf(0.5), cf(1.0, 0.0, 1.0), cf(0.0, 0.0, 1.0)}) {
        const OpResult s = apply_S(phi, zero), t = apply_T(phi, zero);
        CHECK_FALSE(s.trivial);
        for (double x : {1e-3, 1.0, 1e3}) {
            CHECK(s.value(x) == 0.0);
            CHECK(t.value(x) == 0.0);
        }
    }
}

TEST_CASE("fast operators equal the brute-force oracle on random steps") {
    oracle::Steps gen(21);
    const std::vector<QuasiconcaveFn> phis = {cf(0.5), cf(0.1), cf(0.9), cf(1.0),
                                              cf(0.5, 1.0), cf(0.5, -1.0), cf(0.3, 0.0, 2.0),
                                              cf(0.0, 0.0, 1.0)};
    for (int k = 0; k < 200; ++k) {
        const QuasiconcaveFn& phi = phis[k % phis.size()];
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const PiecewiseFn s = apply_S(phi, f).value, t = apply_T(phi, f).value;
        for (double x : probe_points(f, gen, 5)) {
            CHECK(rel_close(s(x), oracle::brute_S(phi, f, x), 1e-10));
            CHECK(rel_close(t(x), oracle::brute_T(phi, f, x), 1e-10));
        }
    }
}

TEST_CASE("bounded domains") {
    const Domain d = make_domain(2.0);
    const QuasiconcaveFn phi = cf(0.5, 0.0, 0.0, d);
    oracle::Steps gen(22, d);
    for (int k = 0; k < 50; ++k) {
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const PiecewiseFn s = apply_S(phi, f).value, t = apply_T(phi, f).value;
        for (double x : probe_points(f, gen, 5)) {
            CHECK(rel_close(s(x), oracle::brute_S(phi, f, x), 1e-10));
            CHECK(rel_close(t(x), oracle::brute_T(phi, f, x), 1e-10));
        }
    }
}

TEST_CASE("property: outputs are nonincreasing") {
    oracle::Steps gen(23);
    for (int k = 0; k < 200; ++k) {
        const QuasiconcaveFn phi = cf(gen.uniform(0.0, 1.0), 0.0, k % 3 == 0 ? 1.0 : 0.0);
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const PiecewiseFn s = apply_S(phi, f).value, t = apply_T(phi, f).value;
        double ps = INFINITY, pt = INFINITY;
        for (double x : probe_points(f, gen)) {
            CHECK(s(x) <= ps * (1 + 1e-13));
            CHECK(t(x) <= pt * (1 + 1e-13));
            ps = s(x);
            pt = t(x);
        }
    }
}

TEST_CASE("property: S dominates f*, T dominates f*(t+)") {
    oracle::Steps gen(24);
    for (int k = 0; k < 100; ++k) {
        const QuasiconcaveFn phi = cf(gen.uniform(0.0, 1.0));
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const PiecewiseFn s = apply_S(phi, f).value, t = apply_T(phi, f).value;
        for (double x : probe_points(f, gen)) {
            CHECK(s(x) >= f.left_limit(x) * (1 - 1e-13));
            CHECK(t(x) >= f(x) * (1 - 1e-13));
        }
    }
}

TEST_CASE("property: S is idempotent") {
    // S(S f)(t) = sup_{s<t} phi(s) S f(s) / phi(t); phi S f is nondecreasing, so
    // the brute-force sup of phi * (S f) over a dense grid and the breakpoints
    // must reproduce S f.
    oracle::Steps gen(25);
    for (int k = 0; k < 50; ++k) {
        const QuasiconcaveFn phi = cf(gen.uniform(0.05, 1.0));
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const PiecewiseFn s = apply_S(phi, f).value;
        for (double t : f.ends()) {
            double best = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double x = t * std::pow(1e-12, 1.0 - double(i) / 4000);
                if (x < t) best = std::max(best, phi(x) * s(x));
            }
            best = std::max(best, phi(t) * s(t * (1 - 1e-15)));
            CHECK(rel_close(best / phi(t), s(t), 1e-10));
        }
    }
}

TEST_CASE("property: positive homogeneity") {
    oracle::Steps gen(26);
    for (int k = 0; k < 50; ++k) {
        const QuasiconcaveFn phi = cf(gen.uniform(0.0, 1.0));
        const MonotoneStepFn f = rearrange(gen.next());
        if (f.is_zero()) continue;
        const double c = gen.log_uniform(1e-3, 1e3);
        const MonotoneStepFn g = f.scaled(c);
        const PiecewiseFn s = apply_S(phi, f).value, sc = apply_S(phi, g).value;
        const PiecewiseFn t = apply_T(phi, f).value, tc = apply_T(phi, g).value;
        for (double x : probe_points(f, gen)) {
            CHECK(rel_close(sc(x), c * s(x), 1e-13));
            CHECK(rel_close(tc(x), c * t(x), 1e-13));
        }
    }
}

TEST_CASE("property: monotone in f") {
    oracle::Steps gen(27);
    for (int k = 0; k < 50; ++k) {
        const QuasiconcaveFn phi = cf(gen.uniform(0.0, 1.0));
        const MonotoneStepFn f = gen.next_monotone(), h = gen.next_monotone();
        // f + h is already nonincreasing; building it directly keeps f's exact breakpoints.
        const StepFn sum = add(f.as_step(), h.as_step());
        const MonotoneStepFn g(kHalf, sum.ends(), sum.values());
        const PiecewiseFn sf = apply_S(phi, f).value, sg = apply_S(phi, g).value;
        const PiecewiseFn tf = apply_T(phi, f).value, tg = apply_T(phi, g).value;
        for (double x : probe_points(g, gen)) {
            REQUIRE(g(x) >= f(x));
            CHECK(sg(x) >= sf(x) * (1 - 1e-13));
            CHECK(tg(x) >= tf(x) * (1 - 1e-13));
        }
    }
}

TEST_CASE("jump phi: S at 0+ keeps the jump") {
    const QuasiconcaveFn phi = cf(1.0, 0.0, 1.0);  // 1 + t
    const MonotoneStepFn f = MonotoneStepFn::indicator(kHalf, 1.0);
    const PiecewiseFn s = apply_S(phi, f).value;
    // sup_{s<t} (1+s) / (1+t) = 1 for t <= 1; 2/(1+t) after.
    CHECK(rel_close(s(1e-8), 1.0, 1e-14));
    CHECK(rel_close(s(3.0), 0.5, 1e-14));
    CHECK(rel_close(s(3.0), oracle::brute_S(phi, f, 3.0), 1e-10));
}

TEST_CASE("reciprocal piece") {
    const QuasiconcaveFn phi = cf(0.5, 1.0);
    const Piece p = reciprocal_piece(phi, 3.0);
    for (double t : {0.01, 1.0, 7.0}) CHECK(rel_close(p.eval(t), 3.0 / phi(t), 1e-14));
}
