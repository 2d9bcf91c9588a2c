#include <doctest.h>

#include "criteria.hpp"
#include "descriptors.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "reports.hpp"
#include "verify.hpp"

using namespace reartool;
using oracle::rel_close;

namespace {

const Domain kHalf = Domain::half_line();

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Unsupported;
}

}  // namespace

TEST_CASE("descriptor text: JSON or shorthand") {
    CHECK(descriptor_from_text("pow:0.5") == json("pow:0.5"));
    CHECK(descriptor_from_text("  {\"kind\":\"step\"}")["kind"] == "step");
    CHECK(descriptor_from_text("[1,2]").is_array());
    CHECK(code_of([] { descriptor_from_text("{oops"); }) == ErrorCode::Parse);
}

TEST_CASE("domains") {
    CHECK_FALSE(parse_domain(json("inf")).bounded());
    CHECK(parse_domain(json(2.5)).R == 2.5);
    CHECK(parse_domain(json{{"R", 3}}).R == 3.0);
    CHECK_FALSE(parse_domain(json::object()).bounded());
    CHECK_THROWS_AS(parse_domain(json(-1)), Error);
    CHECK_THROWS_AS(parse_domain(json("wide")), Error);
}

TEST_CASE("quasiconcave shorthands") {
    const QuasiconcaveFn a = parse_qconcave(json("pow:0.5"), kHalf);
    CHECK(rel_close(a(4.0), 2.0, 1e-15));
    const QuasiconcaveFn b = parse_qconcave(json("3*pow:0.5"), kHalf);
    CHECK(rel_close(b(4.0), 6.0, 1e-15));
    const QuasiconcaveFn c = parse_qconcave(json("powlog:0.5,1"), kHalf);
    CHECK(rel_close(c(std::exp(2.0)), std::exp(1.0) * (std::exp(1.0) + 2.0), 1e-13));
    const QuasiconcaveFn d = parse_qconcave(json("const:2"), kHalf);
    CHECK(d(1e-5) == 2.0);
    CHECK(d(1e5) == 2.0);
    const QuasiconcaveFn e = parse_qconcave(json("jump:1+pow:1"), kHalf);
    CHECK(e.at_zero() == 1.0);
    CHECK(rel_close(e(2.0), 3.0, 1e-15));
    const QuasiconcaveFn f = parse_qconcave(json("2*jump:1+pow:0.5"), kHalf);
    CHECK(rel_close(f(4.0), 2.0 + 4.0, 1e-15));
}

TEST_CASE("quasiconcave objects") {
    const QuasiconcaveFn a = parse_qconcave(json{{"kind", "qconcave"}, {"alpha", 0.25}, {"scale", 2}}, kHalf);
    CHECK(rel_close(a(16.0), 4.0, 1e-15));
    const QuasiconcaveFn s =
        parse_qconcave(json{{"kind", "sampled"}, {"grid", {1, 4, 9}}, {"values", {1, 2, 3}}}, kHalf);
    CHECK(s.is_sampled());
    CHECK(rel_close(s(4.0), 2.0, 1e-15));
    CHECK(code_of([] { parse_qconcave(json("pow:2"), kHalf); }) == ErrorCode::NotQuasiconcave);
    CHECK(code_of([] { parse_qconcave(json("sqrt"), kHalf); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_qconcave(json("powlog:1"), kHalf); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_qconcave(json("jump:1"), kHalf); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_qconcave(json{{"kind", "spline"}}, kHalf); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_qconcave(json{{"alpha", 1}}, kHalf); }) == ErrorCode::Parse);
}

TEST_CASE("step functions") {
    const StepFn a = parse_step(json("step:1,2;3,1"), kHalf);
    CHECK(a.ends() == std::vector<double>{1, 2});
    CHECK(a.values() == std::vector<double>{3, 1});
    const StepFn b = parse_step(json{{"kind", "step"}, {"breaks", {0.5, 1}}, {"values", {-1, 2}}}, kHalf);
    CHECK(b(0.7) == 2.0);
    CHECK(code_of([] { parse_step(json("pow:1"), kHalf); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_step(json("step:1,2"), kHalf); }) == ErrorCode::Parse);
    CHECK_THROWS_AS(parse_step(json("step:2,1;1,1"), kHalf), Error);
}

TEST_CASE("weights") {
    const PiecewiseFn a = parse_piecewise(json("pow:-0.5"), kHalf);
    CHECK(rel_close(a(4.0), 0.5, 1e-15));
    const PiecewiseFn b = parse_piecewise(json("2*powlog:-0.5,-2"), kHalf);
    CHECK(rel_close(b(1.0), 2.0 / (std::exp(1.0) * std::exp(1.0)), 1e-14));
    CHECK(parse_piecewise(json("const:3"), kHalf)(7.0) == 3.0);
    CHECK(parse_piecewise(json("2*step:1;4"), kHalf)(0.5) == 8.0);

    const json pieces = {{"kind", "power"},
                         {"pieces", {{{"hi", 1}, {"gamma", -0.5}}, {{"lo", 1}, {"c", 1}, {"gamma", -2}}}},
                         {"head_gamma", -0.5},
                         {"tail_gamma", -2}};
    const PiecewiseFn c = parse_piecewise(pieces, kHalf);
    CHECK(rel_close(c(0.25), 2.0, 1e-15));
    CHECK(rel_close(c(2.0), 0.25, 1e-15));
    CHECK(rel_close(integrate(c, 0.0, INFINITY), 3.0, 1e-12));

    json wrong = pieces;
    wrong["tail_gamma"] = -1;
    CHECK(code_of([&] { parse_piecewise(wrong, kHalf); }) == ErrorCode::InvalidArgument);
    json gap = {{"kind", "power"}, {"pieces", {{{"lo", 1}, {"hi", 2}}}}};
    const PiecewiseFn g = parse_piecewise(gap, kHalf);
    CHECK(g(0.5) == 0.0);
    CHECK(g(1.5) == 1.0);
    CHECK(g(3.0) == 0.0);
    json bad = {{"kind", "power"}, {"pieces", {{{"lo", 2}, {"hi", 1}}}}};
    CHECK(code_of([&] { parse_piecewise(bad, kHalf); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { parse_piecewise(json{{"kind", "power"}}, kHalf); }) == ErrorCode::Parse);
}

TEST_CASE("report numbers round-trip, with strings for non-finite values") {
    for (double v : {0.0, -1.5, 1e-300, 2.0 / 3.0, 1e300}) CHECK(json_number(json::parse(number_json(v).dump())) == v);
    CHECK(number_json(INFINITY) == "inf");
    CHECK(number_json(-INFINITY) == "-inf");
    CHECK(number_json(NAN) == "nan");
    CHECK(std::isinf(json_number(json("inf"))));
    CHECK(std::isnan(json_number(json("nan"))));
    CHECK(code_of([] { json_number(json("big")); }) == ErrorCode::Parse);
}

TEST_CASE("condition reports serialise every field") {
    const QuasiconcaveFn phi = parse_qconcave(json("pow:0.75"), kHalf);
    const QuasiconcaveFn psi = parse_qconcave(json("pow:0.25"), kHalf);
    const PiecewiseFn w = parse_piecewise(json("pow:-0.5"), kHalf);
    const ConditionReport r = stgg_condition(1.0, phi, psi, w, w);
    const json j = json::parse(to_json(r).dump());
    CHECK(j["finite"] == true);
    CHECK(rel_close(json_number(j["sup_value"]), r.sup_value, 0.0));
    CHECK(j["parts"].size() == 2);
    CHECK(j["grid"]["points"] == r.grid_points);
    CHECK(j["witness"] == r.witness());

    const ConditionReport bad = stgg_condition(1.0, parse_qconcave(json("pow:0.5"), kHalf),
                                               parse_qconcave(json("pow:0.5"), kHalf), w, w);
    const json jb = to_json(bad);
    CHECK(jb["finite"] == false);
    CHECK(jb["sup_value"] == "inf");
    CHECK_FALSE(jb["reason"].get<std::string>().empty());
}

TEST_CASE("lemma verdicts serialise direction-specific fields") {
    const QuasiconcaveFn half = parse_qconcave(json("pow:0.5"), kHalf);
    const json s = to_json(verify_one_star(half, {20, 1, 1e-6}));
    CHECK(s["direction"] == "sufficiency");
    CHECK(s.contains("doubled_max_ratio"));
    CHECK_FALSE(s.contains("sequence"));

    const json n = to_json(verify_one_star(parse_qconcave(json("pow:1"), kHalf), {20, 1, 1e-6}));
    CHECK(n["direction"] == "necessity");
    CHECK(n["sequence"].size() == n["parameters"].size());
    CHECK(n["sequence"].size() >= 3);

    const json b = to_json(b_consensus(half));
    CHECK(b["holds"] == true);
    CHECK(b["methods"].size() == 3);
}
