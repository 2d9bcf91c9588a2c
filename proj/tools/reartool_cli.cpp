// reartool command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reartool/reartool.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;
constexpr int kExitTrivial = 3;

struct Failure {
    int code;
    std::string message;
};

int exit_code(rt_status s) {
    switch (s) {
        case RT_OK: return kExitOk;
        case RT_ERR_DISAGREEMENT: return kExitMath;
        case RT_ERR_NON_INTEGRABLE:
        case RT_ERR_TRIVIAL_SPACE:
        case RT_ERR_PRECONDITION: return kExitTrivial;
        default: return kExitUsage;
    }
}

void check(rt_status s) {
    if (s != RT_OK) throw Failure{exit_code(s), rt_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Qconcave = std::unique_ptr<rt_qconcave, Deleter<rt_qconcave, rt_qconcave_free>>;
using Step = std::unique_ptr<rt_step, Deleter<rt_step, rt_step_free>>;
using Function = std::unique_ptr<rt_function, Deleter<rt_function, rt_function_free>>;

json take_json(char* s) {
    std::unique_ptr<char, Deleter<char, rt_string_free>> owned(s);
    return json::parse(owned.get());
}

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// A descriptor argument is either a path to a file holding one or the text itself.
json load_descriptor(const std::string& arg) {
    std::string text = arg;
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        if (!in) usage("cannot read '" + arg + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    text = trim(text);
    if (!text.empty() && (text[0] == '{' || text[0] == '[')) {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            usage("malformed JSON in '" + arg + "': " + e.what());
        }
    }
    return text;
}

std::string descriptor_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

double parse_r(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "infinity") return INFINITY;
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
    }
    usage("R must be a positive number or 'inf', got " + j.dump());
}

json r_json(double R) { return std::isinf(R) ? json("inf") : json(R); }

// Options shared by every subcommand, with the values from --cfg underneath.
struct Inputs {
    std::string cfg_path;
    json cfg = json::object();
    std::string phi, psi, w, w1, w2, f, R;
    std::optional<double> p;

    void load_cfg() {
        if (cfg_path.empty()) return;
        cfg = load_descriptor(cfg_path);
        if (!cfg.is_object()) usage("--cfg must name a JSON object");
    }

    std::optional<json> descriptor(const std::string& key, const std::string& flag) const {
        if (!flag.empty()) return load_descriptor(flag);
        if (cfg.contains(key)) {
            const json& j = cfg[key];
            return j.is_string() ? load_descriptor(j.get<std::string>()) : j;
        }
        return std::nullopt;
    }

    json need(const std::string& key, const std::string& flag) const {
        auto d = descriptor(key, flag);
        if (!d) usage("missing --" + key);
        return *d;
    }

    double domain() const {
        if (!R.empty()) return parse_r(json(R));
        if (cfg.contains("R")) return parse_r(cfg["R"]);
        return INFINITY;
    }

    double exponent() const {
        if (p) return *p;
        if (cfg.contains("p") && cfg["p"].is_number()) return cfg["p"].get<double>();
        usage("missing --p");
    }

    template <class T>
    T number(const std::string& key, std::optional<T> flag, T fallback) const {
        if (flag) return *flag;
        if (cfg.contains(key)) {
            try {
                return cfg[key].get<T>();
            } catch (const json::exception&) {
                usage("config key '" + key + "' has the wrong type");
            }
        }
        return fallback;
    }

    std::string word(const std::string& key, const std::string& flag, const std::string& fallback) const {
        if (!flag.empty()) return flag;
        if (cfg.contains(key) && cfg[key].is_string()) return cfg[key].get<std::string>();
        return fallback;
    }

    void add_options(CLI::App* app, bool functions = true) {
        app->add_option("--cfg", cfg_path, "JSON config file; command-line flags take precedence");
        app->add_option("--R", R, "Domain end R (number or inf, default inf)");
        if (!functions) return;
        app->add_option("--phi", phi, "Quasiconcave phi: descriptor or file");
        app->add_option("--psi", psi, "Quasiconcave psi: descriptor or file");
        app->add_option("--w", w, "Gamma weight: descriptor or file");
        app->add_option("--w1", w1, "Source weight: descriptor or file");
        app->add_option("--w2", w2, "Target weight: descriptor or file");
        app->add_option("--f", f, "Step function: descriptor or file");
        app->add_option("--p", p, "Exponent p >= 1");
    }
};

Qconcave make_qconcave(const json& d, double R) {
    rt_qconcave* out = nullptr;
    check(rt_qconcave_new(descriptor_text(d).c_str(), R, &out));
    return Qconcave(out);
}

Step make_step(const json& d, double R) {
    rt_step* out = nullptr;
    check(rt_step_new(descriptor_text(d).c_str(), R, &out));
    return Step(out);
}

Function make_function(const json& d, double R) {
    rt_function* out = nullptr;
    check(rt_function_new(descriptor_text(d).c_str(), R, &out));
    return Function(out);
}

Qconcave optional_qconcave(const std::optional<json>& d, double R) {
    return d ? make_qconcave(*d, R) : Qconcave();
}

struct Outcome {
    json config;
    json report;
    int code = kExitOk;
    std::string csv;  // when set, written instead of the JSON envelope
};

std::vector<double> parse_points(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage("bad evaluation point '" + item + "'");
        }
    }
    if (out.empty()) usage("--points must list at least one point");
    return out;
}

std::string format_g17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reartool: rearrangements, supremum operators and Hardy-type criteria on (0,R)"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(rt_version()));

    std::optional<std::size_t> grid;
    double tol = 1e-6;
    std::string output;
    app.add_option("--grid", grid, "Log-grid size for sup/inf sweeps (env REARTOOL_GRID, default 2048)");
    app.add_option("--tol", tol, "Relative tolerance on proven bounds, in (0, 1e-2]");
    app.add_option("--output,-o", output, "Write the report to this file instead of stdout");

    Inputs in;

    // check-b
    auto* check_b = app.add_subcommand("check-b", "Decide the B-condition for phi by the three characterizations");
    std::string method;
    in.add_options(check_b);
    check_b->add_option("--method", method, "integral, tilde-integral or dilation (default: all three)");

    // norm
    auto* norm = app.add_subcommand("norm", "Marcinkiewicz or Gamma norm of a step function");
    std::string space;
    in.add_options(norm);
    norm->add_option("--space", space, "marcinkiewicz (needs phi) or gamma (needs p, w)")->required()
        ->check(CLI::IsMember({"marcinkiewicz", "gamma"}));

    // apply
    auto* apply = app.add_subcommand("apply", "Evaluate S_phi f or T_phi f at given points (CSV t,value)");
    std::string op, points, format = "csv";
    in.add_options(apply);
    apply->add_option("--op", op, "S or T")->required()->check(CLI::IsMember({"S", "T"}));
    apply->add_option("--points", points, "Comma-separated evaluation points in (0,R)");
    apply->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // criterion
    auto* criterion = app.add_subcommand("criterion", "Evaluate a boundedness criterion");
    std::string kind;
    bool require_finite = false;
    in.add_options(criterion);
    criterion->add_option("--kind", kind, "sgg, tgg, stgg, neugebauer, ghs or gl")
        ->check(CLI::IsMember({"sgg", "tgg", "stgg", "neugebauer", "ghs", "gl"}));
    criterion->add_flag("--require-finite", require_finite, "Exit 2 when the condition is infinite");

    // verify
    auto* verify = app.add_subcommand("verify", "Sample-check a lemma (exit 2 when it fails)");
    std::string lemma, which, demo_op;
    std::optional<std::size_t> samples;
    std::optional<unsigned long long> seed;
    in.add_options(verify);
    verify->add_option("--lemma", lemma, "one-star, endpoints, starfalls or interpolation")
        ->check(CLI::IsMember({"one-star", "endpoints", "starfalls", "interpolation"}));
    verify->add_option("--which", which,
                       "endpoints: T-L1, T-M, S-M, S-Linf; starfalls: Tff, Tstar, Sstar, Sff, combined "
                       "(default: all)");
    verify->add_option("--samples", samples, "Number of random step functions (default 500)");
    verify->add_option("--seed", seed, "Random seed (default 1)");
    verify->add_option("--op", demo_op, "interpolation operator: hardy-average, identity, dilation:r, sum");

    // interpolate-demo
    auto* demo = app.add_subcommand(
        "interpolate-demo",
        "Interpolation check on the power fixture p=1, phi=t^0.75, psi=t^0.25, w1=w2=t^-0.5 unless overridden");
    in.add_options(demo);
    demo->add_option("--op", demo_op, "hardy-average (default), identity, dilation:r, sum");
    demo->add_option("--samples", samples, "Number of random step functions (default 200)");
    demo->add_option("--seed", seed, "Random seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!grid) {
            if (const char* env = std::getenv("REARTOOL_GRID")) {
                try {
                    std::size_t used = 0;
                    const long long v = std::stoll(env, &used);
                    if (used != std::string(env).size() || v <= 0) throw std::invalid_argument(env);
                    grid = static_cast<std::size_t>(v);
                } catch (const std::exception&) {
                    usage(std::string("REARTOOL_GRID must be a positive integer, got '") + env + "'");
                }
            }
        }
        in.load_cfg();
        if (!grid && in.cfg.contains("grid")) grid = in.number<std::size_t>("grid", std::nullopt, 0);
        if (grid) check(rt_set_grid_size(*grid));
        if (app.get_option("--tol")->count() == 0 && in.cfg.contains("tol"))
            tol = in.number<double>("tol", std::nullopt, tol);
        if (!(tol > 0.0 && tol <= 1e-2)) usage("--tol must lie in (0, 1e-2]");

        const double R = in.domain();
        Outcome out;
        out.config = {{"grid", rt_grid_size()}, {"tol", tol}, {"R", r_json(R)}};
        std::string command;

        if (*check_b) {
            command = "check-b";
            const json phi_d = in.need("phi", in.phi);
            const std::string m = in.word("method", method, "");
            out.config["phi"] = phi_d;
            out.config["method"] = m.empty() ? json(nullptr) : json(m);
            const Qconcave phi = make_qconcave(phi_d, R);
            char* js = nullptr;
            check(rt_check_b(phi.get(), m.empty() ? nullptr : m.c_str(), &js));
            out.report = take_json(js);
        } else if (*norm) {
            command = "norm";
            const json f_d = in.need("f", in.f);
            out.config["space"] = space;
            out.config["f"] = f_d;
            const Step f = make_step(f_d, R);
            char* js = nullptr;
            if (space == "marcinkiewicz") {
                const json phi_d = in.need("phi", in.phi);
                out.config["phi"] = phi_d;
                check(rt_marcinkiewicz_norm(make_qconcave(phi_d, R).get(), f.get(), &js));
            } else {
                const double p = in.exponent();
                const json w_d = in.need("w", in.w);
                out.config["p"] = p;
                out.config["w"] = w_d;
                check(rt_gamma_norm(p, make_function(w_d, R).get(), f.get(), &js));
            }
            out.report = take_json(js);
        } else if (*apply) {
            command = "apply";
            const json phi_d = in.need("phi", in.phi);
            const json f_d = in.need("f", in.f);
            std::string pts = points;
            if (pts.empty() && in.cfg.contains("points")) {
                const json& jp = in.cfg["points"];
                if (jp.is_array()) {
                    for (const auto& x : jp) pts += (pts.empty() ? "" : ",") + format_g17(x.get<double>());
                } else if (jp.is_string()) {
                    pts = jp.get<std::string>();
                }
            }
            const std::vector<double> t = parse_points(pts);
            std::vector<double> values(t.size());
            check(rt_apply(op[0], make_qconcave(phi_d, R).get(), make_step(f_d, R).get(), t.data(),
                           t.size(), values.data()));
            out.config["op"] = op;
            out.config["phi"] = phi_d;
            out.config["f"] = f_d;
            out.config["points"] = t;
            if (format == "csv") {
                out.csv = "t,value\n";
                for (std::size_t i = 0; i < t.size(); ++i)
                    out.csv += format_g17(t[i]) + "," + format_g17(values[i]) + "\n";
            } else {
                json rows = json::array();
                for (std::size_t i = 0; i < t.size(); ++i)
                    rows.push_back({{"t", t[i]}, {"value", std::isfinite(values[i]) ? json(values[i])
                                                                                    : json(format_g17(values[i]))}});
                out.report = {{"values", rows}};
            }
        } else if (*criterion) {
            command = "criterion";
            const std::string k = in.word("kind", kind, "");
            if (k.empty()) usage("missing --kind");
            const double p = in.exponent();
            const auto phi_d = in.descriptor("phi", in.phi);
            const auto psi_d = in.descriptor("psi", in.psi);
            const json w1_d = in.need("w1", in.w1);
            const json w2_d = in.need("w2", in.w2);
            out.config["kind"] = k;
            out.config["p"] = p;
            out.config["phi"] = phi_d ? *phi_d : json(nullptr);
            out.config["psi"] = psi_d ? *psi_d : json(nullptr);
            out.config["w1"] = w1_d;
            out.config["w2"] = w2_d;
            out.config["require_finite"] = require_finite;
            const Qconcave phi = optional_qconcave(phi_d, R), psi = optional_qconcave(psi_d, R);
            char* js = nullptr;
            check(rt_criterion(k.c_str(), p, phi.get(), psi.get(), make_function(w1_d, R).get(),
                               make_function(w2_d, R).get(), &js));
            out.report = take_json(js);
            if (require_finite && !out.report.value("finite", false)) out.code = kExitMath;
        } else if (*verify || *demo) {
            const bool is_demo = demo->parsed();
            command = is_demo ? "interpolate-demo" : "verify";
            const std::string l = is_demo ? "interpolation" : in.word("lemma", lemma, "");
            if (l.empty()) usage("missing --lemma");
            const std::size_t n = in.number<std::size_t>("samples", samples, is_demo ? 200 : 500);
            const unsigned long long s = in.number<unsigned long long>("seed", seed, 1);
            if (n == 0) usage("--samples must be positive");
            out.config["lemma"] = l;
            out.config["samples"] = n;
            out.config["seed"] = s;

            if (l == "interpolation") {
                const std::string o = in.word("op", demo_op, "hardy-average");
                const auto fixture = [&](const char* key, const std::string& flag, const char* fallback) {
                    const auto d = in.descriptor(key, flag);
                    if (d) return *d;
                    if (!is_demo) usage(std::string("missing --") + key);
                    return json(fallback);
                };
                const json phi_d = fixture("phi", in.phi, "pow:0.75");
                const json psi_d = fixture("psi", in.psi, "pow:0.25");
                const json w1_d = fixture("w1", in.w1, "pow:-0.5");
                const json w2_d = fixture("w2", in.w2, "pow:-0.5");
                const double p = is_demo ? in.number<double>("p", in.p, 1.0) : in.exponent();
                out.config["op"] = o;
                out.config["p"] = p;
                out.config["phi"] = phi_d;
                out.config["psi"] = psi_d;
                out.config["w1"] = w1_d;
                out.config["w2"] = w2_d;
                char* js = nullptr;
                check(rt_interpolate(o.c_str(), p, make_qconcave(phi_d, R).get(),
                                     make_qconcave(psi_d, R).get(), make_function(w1_d, R).get(),
                                     make_function(w2_d, R).get(), n, s, tol, &js));
                out.report = take_json(js);
            } else {
                const json phi_d = in.need("phi", in.phi);
                const auto psi_d = in.descriptor("psi", in.psi);
                out.config["phi"] = phi_d;
                out.config["psi"] = psi_d ? *psi_d : json(nullptr);
                const Qconcave phi = make_qconcave(phi_d, R), psi = optional_qconcave(psi_d, R);
                std::vector<std::string> variants;
                const std::string w = in.word("which", which, "");
                if (l == "one-star" || !w.empty()) {
                    variants.push_back(w);
                } else if (l == "endpoints") {
                    variants = {"T-L1", "T-M", "S-M", "S-Linf"};
                } else {
                    variants = {"Tff", "Tstar", "Sstar", "Sff", "combined"};
                }
                out.config["which"] = l == "one-star" ? json(nullptr) : json(variants);
                json verdicts = json::array();
                bool all = true;
                for (const std::string& v : variants) {
                    char* js = nullptr;
                    check(rt_verify(l.c_str(), v.empty() ? nullptr : v.c_str(), phi.get(), psi.get(), n,
                                    s, tol, &js));
                    verdicts.push_back(take_json(js));
                    all = all && verdicts.back().value("passed", false);
                }
                out.report = verdicts.size() == 1 ? verdicts[0]
                                                  : json{{"passed", all}, {"verdicts", verdicts}};
            }
            if (!out.report.value("passed", false)) out.code = kExitMath;
        }

        std::string text;
        if (!out.csv.empty()) {
            text = out.csv;
        } else {
            const json envelope = {{"tool", "reartool"},
                                   {"version", rt_version()},
                                   {"schema", rt_schema_version()},
                                   {"command", command},
                                   {"config", out.config},
                                   {"report", out.report}};
            text = envelope.dump(2) + "\n";
        }
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(output, std::ios::binary);
            if (!(file << text)) usage("cannot write '" + output + "'");
        }
        return out.code;
    } catch (const Failure& e) {
        std::cerr << "reartool: error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "reartool: error: " << e.what() << "\n";
        return kExitUsage;
    }
}
