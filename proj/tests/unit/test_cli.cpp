// Runs the reartool binary and checks its output and exit codes.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" REARTOOL_CLI "\" " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json report(const Run& r) {
    INFO(r.out);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("report"));
    return j;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("reartool_cli_test_" + name);
}

}  // namespace

TEST_CASE("version and help") {
    const Run v = run("--version");
    CHECK(v.rc == 0);
    CHECK(v.out.find('.') != std::string::npos);
    CHECK(run("--help").rc == 0);
    CHECK(run("").rc != 0);
}

TEST_CASE("criterion stgg on the power fixture") {
    const Run r = run("criterion --kind stgg --p 1 --phi pow:0.75 --psi pow:0.25 --w1 pow:-0.5 --w2 pow:-0.5");
    CHECK(r.rc == 0);
    const json j = report(r);
    CHECK(j["tool"] == "reartool");
    CHECK(j["command"] == "criterion");
    CHECK(j["config"]["grid"] == 2048);
    CHECK(j["report"]["finite"] == true);
    CHECK(j["report"]["sup_value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("criterion reports infinity as a string and --require-finite exits 2") {
    const std::string args = "criterion --kind stgg --p 1 --phi pow:0.5 --psi pow:0.5 --w1 pow:-0.5 --w2 pow:-0.5";
    const Run r = run(args);
    CHECK(r.rc == 0);
    CHECK(report(r)["report"]["sup_value"] == "inf");
    CHECK(run(args + " --require-finite").rc == 2);
}

TEST_CASE("config files and resolved config") {
    const auto cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"p": 1, "phi": "pow:0.75", "psi": "pow:0.25", "w1": "pow:-0.5", "w2": "pow:-0.5", "grid": 1024})";
    const Run r = run("criterion --kind stgg --cfg " + cfg.string());
    CHECK(r.rc == 0);
    const json j = report(r);
    CHECK(j["config"]["grid"] == 1024);
    CHECK(j["config"]["phi"] == "pow:0.75");
    CHECK(j["report"]["sup_value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    // command-line values win over the file
    CHECK(report(run("--grid 512 criterion --kind stgg --cfg " + cfg.string()))["config"]["grid"] == 512);
    std::filesystem::remove(cfg);
}

TEST_CASE("descriptor files are read") {
    const auto f = scratch("phi.json");
    std::ofstream(f) << R"({"kind":"qconcave","alpha":0.5})";
    const Run r = run("check-b --phi " + f.string());
    CHECK(r.rc == 0);
    CHECK(report(r)["report"]["constant"].get<double>() == doctest::Approx(2.0).epsilon(0.02));
    std::filesystem::remove(f);
}

TEST_CASE("apply writes CSV") {
    const Run r = run("apply --op S --phi pow:0.5 --f 'step:1;1' --points 0.25,4");
    CHECK(r.rc == 0);
    std::istringstream in(r.out);
    std::string header, a, b;
    std::getline(in, header);
    std::getline(in, a);
    std::getline(in, b);
    CHECK(header == "t,value");
    CHECK(a == "0.25,1");
    CHECK(b == "4,0.5");
    const Run j = run("apply --op T --phi pow:0.5 --f 'step:1;1' --points 0.25 --format json");
    CHECK(j.rc == 0);
    const json v = report(j)["report"]["values"];
    REQUIRE(v.size() == 1);
    CHECK(v[0]["t"] == 0.25);
    CHECK(v[0]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("verify is deterministic and exits by verdict") {
    const std::string args = "verify --lemma one-star --phi pow:0.5 --samples 100 --seed 3";
    const Run a = run(args), b = run(args);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    CHECK(report(a)["report"]["passed"] == true);

    const auto out = scratch("verify.json");
    CHECK(run("-o " + out.string() + " " + args).rc == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() + (ss.str().back() == '\n' ? "" : "\n") == a.out + (a.out.back() == '\n' ? "" : "\n"));
    std::filesystem::remove(out);

    const Run all = run("verify --lemma starfalls --phi pow:0.75 --psi pow:0.25 --samples 100");
    CHECK(all.rc == 0);
    CHECK(report(all)["report"]["verdicts"].size() == 5);
}

TEST_CASE("interpolate-demo passes") {
    const Run r = run("interpolate-demo");
    CHECK(r.rc == 0);
    CHECK(report(r)["report"]["passed"] == true);
}

TEST_CASE("usage and input errors exit 1") {
    // option validation by the argument parser
    for (const std::string& args : {std::string("criterion --kind nope --p 1 --w1 pow:-0.5 --w2 pow:-0.5"),
                                    std::string("--tol 0.5 check-b --phi pow:0.5"),
                                    std::string("verify --lemma nope --phi pow:0.5"), std::string("--grid x check-b")}) {
        const Run r = run(args);
        CAPTURE(args);
        CHECK(r.rc == 1);
        CHECK_FALSE(r.out.empty());
    }
    // input errors found while running
    for (const std::string& args : {std::string("check-b --phi pow:2"), std::string("check-b --phi '{bad'"),
                                    std::string("check-b"), std::string("criterion --kind sgg --p 1 --w1 pow:-0.5")}) {
        const Run r = run(args);
        CAPTURE(args);
        CHECK(r.rc == 1);
        CHECK(r.out.find("reartool: error:") != std::string::npos);
    }
    CHECK(run("check-b --phi pow:0.5", "REARTOOL_GRID=abc").rc == 1);
    CHECK(run("check-b --phi pow:0.5", "REARTOOL_GRID=512").rc == 0);
}

TEST_CASE("trivial spaces exit 3") {
    const Run r = run("norm --space gamma --p 1 --w const:1 --f 'step:1;1'");
    CHECK(r.rc == 3);
}
