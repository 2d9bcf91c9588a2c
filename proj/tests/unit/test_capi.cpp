// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "reartool/reartool.h"

using json = nlohmann::json;

namespace {

// Takes ownership of a returned string.
json take(char* s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    rt_string_free(s);
    return j;
}

struct Fixture {
    rt_qconcave *phi = nullptr, *psi = nullptr;
    rt_function* w = nullptr;
    Fixture() {
        REQUIRE(rt_qconcave_new("pow:0.75", INFINITY, &phi) == RT_OK);
        REQUIRE(rt_qconcave_new("pow:0.25", INFINITY, &psi) == RT_OK);
        REQUIRE(rt_function_new("pow:-0.5", INFINITY, &w) == RT_OK);
    }
    ~Fixture() {
        rt_qconcave_free(phi);
        rt_qconcave_free(psi);
        rt_function_free(w);
    }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::strlen(rt_version()) > 0);
    CHECK(rt_schema_version() >= 1);
    CHECK(std::string(rt_status_name(RT_OK)) != std::string(rt_status_name(RT_ERR_PARSE)));
    CHECK(rt_status_name(static_cast<rt_status>(99)) != nullptr);
}

TEST_CASE("handles evaluate") {
    rt_qconcave* phi = nullptr;
    REQUIRE(rt_qconcave_new("pow:0.5", INFINITY, &phi) == RT_OK);
    double v = 0;
    CHECK(rt_qconcave_eval(phi, 4.0, &v) == RT_OK);
    CHECK(v == doctest::Approx(2.0));
    rt_qconcave* tilde = nullptr;
    REQUIRE(rt_qconcave_complementary(phi, &tilde) == RT_OK);
    CHECK(rt_qconcave_eval(tilde, 9.0, &v) == RT_OK);
    CHECK(v == doctest::Approx(3.0));
    rt_qconcave_free(tilde);
    rt_qconcave_free(phi);

    rt_step* f = nullptr;
    REQUIRE(rt_step_new("{\"kind\":\"step\",\"breaks\":[1,4],\"values\":[1,2]}", INFINITY, &f) == RT_OK);
    double star = 0, dstar = 0;
    // f* = 2 on (0,3), 1 on (3,4)
    CHECK(rt_step_rearranged(f, 2.0, &star, &dstar) == RT_OK);
    CHECK(star == 2.0);
    CHECK(dstar == doctest::Approx(2.0));
    CHECK(rt_step_rearranged(f, 3.5, &star, &dstar) == RT_OK);
    CHECK(star == 1.0);
    CHECK(dstar == doctest::Approx(6.5 / 3.5));
    rt_step_free(f);

    rt_function* w = nullptr;
    REQUIRE(rt_function_new("pow:-0.5", INFINITY, &w) == RT_OK);
    CHECK(rt_function_integrate(w, 0.0, 1.0, &v) == RT_OK);
    CHECK(v == doctest::Approx(2.0));
    CHECK(rt_function_integrate(w, 0.0, INFINITY, &v) == RT_OK);
    CHECK(std::isinf(v));
    CHECK(rt_function_eval(w, 4.0, &v) == RT_OK);
    CHECK(v == doctest::Approx(0.5));
    rt_function_free(w);

    rt_qconcave_free(nullptr);
    rt_step_free(nullptr);
    rt_function_free(nullptr);
    rt_string_free(nullptr);
}

TEST_CASE("errors carry a status and a message") {
    rt_qconcave* phi = nullptr;
    CHECK(rt_qconcave_new("pow:2", INFINITY, &phi) == RT_ERR_NOT_QUASICONCAVE);
    CHECK(phi == nullptr);
    CHECK(std::strlen(rt_last_error()) > 0);
    CHECK(rt_qconcave_new("{bad", INFINITY, &phi) == RT_ERR_PARSE);
    CHECK(rt_qconcave_new(nullptr, INFINITY, &phi) == RT_ERR_INVALID_ARGUMENT);
    CHECK(rt_qconcave_new("pow:0.5", -1.0, &phi) == RT_ERR_INVALID_ARGUMENT);
    CHECK(rt_qconcave_eval(nullptr, 1.0, nullptr) == RT_ERR_INVALID_ARGUMENT);
    CHECK(rt_set_grid_size(3) == RT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("error messages are per thread") {
    rt_qconcave* phi = nullptr;
    CHECK(rt_qconcave_new("pow:2", INFINITY, &phi) != RT_OK);
    const std::string here = rt_last_error();
    std::string there;
    std::thread([&] {
        rt_qconcave* q = nullptr;
        rt_qconcave_new("{bad", INFINITY, &q);
        there = rt_last_error();
    }).join();
    CHECK(here == rt_last_error());
    CHECK(here != there);
}

TEST_CASE("domain mismatch") {
    rt_qconcave* phi = nullptr;
    rt_step* f = nullptr;
    REQUIRE(rt_qconcave_new("pow:0.5", 1.0, &phi) == RT_OK);
    REQUIRE(rt_step_new("step:0.5;1", INFINITY, &f) == RT_OK);
    char* out = nullptr;
    CHECK(rt_marcinkiewicz_norm(phi, f, &out) == RT_ERR_DOMAIN_MISMATCH);
    CHECK(out == nullptr);
    rt_step_free(f);
    rt_qconcave_free(phi);
}

TEST_CASE("B check and norms") {
    Fixture fx;
    char* out = nullptr;
    REQUIRE(rt_check_b(fx.phi, nullptr, &out) == RT_OK);
    const json b = take(out);
    CHECK(b["holds"] == true);
    CHECK(b["constant"].get<double>() == doctest::Approx(4.0).epsilon(0.02));
    CHECK(rt_check_b(fx.phi, "bogus", &out) != RT_OK);
    CHECK(out == nullptr);

    rt_step* chi = nullptr;
    REQUIRE(rt_step_new("step:1;1", INFINITY, &chi) == RT_OK);
    REQUIRE(rt_marcinkiewicz_norm(fx.phi, chi, &out) == RT_OK);
    CHECK(take(out)["value"].get<double>() == doctest::Approx(1.0));
    REQUIRE(rt_gamma_norm(1.0, fx.w, chi, &out) == RT_OK);
    CHECK(take(out)["value"].get<double>() == doctest::Approx(4.0));
    double v = 0;
    CHECK(rt_gamma_fundamental(1.0, fx.w, 1.0, &v) == RT_OK);
    CHECK(v == doctest::Approx(4.0));
    REQUIRE(rt_linfty_embedding(1.0, fx.w, &out) == RT_OK);
    CHECK(take(out).contains("holds"));

    rt_function* zero_space = nullptr;
    REQUIRE(rt_function_new("const:1", INFINITY, &zero_space) == RT_OK);
    CHECK(rt_gamma_norm(1.0, zero_space, chi, &out) == RT_ERR_TRIVIAL_SPACE);
    rt_function_free(zero_space);
    rt_step_free(chi);
}

TEST_CASE("operators") {
    Fixture fx;
    rt_qconcave* half = nullptr;
    rt_step* chi = nullptr;
    REQUIRE(rt_qconcave_new("pow:0.5", INFINITY, &half) == RT_OK);
    REQUIRE(rt_step_new("step:1;1", INFINITY, &chi) == RT_OK);
    const double t[] = {0.25, 4.0};
    double v[2] = {0, 0};
    CHECK(rt_apply('S', half, chi, t, 2, v) == RT_OK);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(0.5));
    CHECK(rt_apply('T', half, chi, t, 2, v) == RT_OK);
    CHECK(v[0] == doctest::Approx(2.0));
    CHECK(v[1] == 0.0);
    CHECK(rt_apply('X', half, chi, t, 2, v) == RT_ERR_INVALID_ARGUMENT);
    rt_step_free(chi);
    rt_qconcave_free(half);
}

TEST_CASE("criteria") {
    Fixture fx;
    char* out = nullptr;
    REQUIRE(rt_criterion("stgg", 1.0, fx.phi, fx.psi, fx.w, fx.w, &out) == RT_OK);
    const json j = take(out);
    CHECK(j["finite"] == true);
    CHECK(j["sup_value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    REQUIRE(rt_criterion("ghs", 1.0, nullptr, nullptr, fx.w, fx.w, &out) == RT_OK);
    CHECK(take(out)["sup_value"].get<double>() == doctest::Approx(1.0));
    REQUIRE(rt_criterion("neugebauer", 1.0, fx.phi, nullptr, fx.w, fx.w, &out) == RT_OK);
    CHECK(take(out)["sup_value"].get<double>() == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(rt_criterion("sgg", 1.0, nullptr, nullptr, fx.w, fx.w, &out) == RT_ERR_INVALID_ARGUMENT);
    CHECK(rt_criterion("nope", 1.0, fx.phi, fx.psi, fx.w, fx.w, &out) != RT_OK);
}

TEST_CASE("verify and interpolate") {
    Fixture fx;
    char* out = nullptr;
    REQUIRE(rt_verify("one-star", nullptr, fx.phi, nullptr, 100, 1, 0.0, &out) == RT_OK);
    const json a = take(out);
    CHECK(a["passed"] == true);
    REQUIRE(rt_verify("one-star", nullptr, fx.phi, nullptr, 100, 1, 0.0, &out) == RT_OK);
    CHECK(take(out) == a);
    REQUIRE(rt_verify("starfalls", "combined", fx.phi, fx.psi, 500, 2, 0.0, &out) == RT_OK);
    CHECK(take(out)["passed"] == true);
    CHECK(rt_verify("endpoints", "T-L9", fx.phi, nullptr, 50, 2, 0.0, &out) != RT_OK);
    CHECK(rt_verify("one-star", nullptr, fx.phi, nullptr, 50, 2, 0.5, &out) == RT_ERR_INVALID_ARGUMENT);

    REQUIRE(rt_interpolate("hardy-average", 1.0, fx.phi, fx.psi, fx.w, fx.w, 200, 1, 0.0, &out) == RT_OK);
    const json i = take(out);
    CHECK(i["passed"] == true);
    CHECK(i["checks"].size() == 3);

    rt_qconcave* half = nullptr;
    REQUIRE(rt_qconcave_new("pow:0.5", INFINITY, &half) == RT_OK);
    CHECK(rt_interpolate("identity", 1.0, half, half, fx.w, fx.w, 20, 1, 0.0, &out) == RT_ERR_PRECONDITION);
    rt_qconcave_free(half);
}

TEST_CASE("grid size setting") {
    const size_t before = rt_grid_size();
    CHECK(before >= 16);
    CHECK(rt_set_grid_size(512) == RT_OK);
    CHECK(rt_grid_size() == 512);
    CHECK(rt_set_grid_size(before) == RT_OK);
}

TEST_CASE("handles are shareable between threads") {
    Fixture fx;
    std::vector<std::string> results(4);
    std::vector<std::thread> pool;
    for (int k = 0; k < 4; ++k)
        pool.emplace_back([&, k] {
            char* out = nullptr;
            if (rt_criterion("stgg", 1.0, fx.phi, fx.psi, fx.w, fx.w, &out) == RT_OK) {
                results[k] = out;
                rt_string_free(out);
            }
        });
    for (std::thread& t : pool) t.join();
    for (const std::string& r : results) {
        CHECK_FALSE(r.empty());
        CHECK(r == results[0]);
    }
}
