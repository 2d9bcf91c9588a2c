#include "descriptors.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace reartool {

namespace {

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::logic_error&) {
        fail(ErrorCode::Parse, "expected a number, got '" + s + "'");
    }
    require(used == s.size(), ErrorCode::Parse, "expected a number, got '" + s + "'");
    return v;
}

std::vector<double> numbers(const std::string& s, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(to_double(item));
    return out;
}

double extended(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "Infinity") return INFINITY;
        return to_double(s);
    }
    fail(ErrorCode::Parse, std::string(what) + " must be a number or \"inf\"");
}

double number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    require(j[key].is_number(), ErrorCode::Parse, std::string("\"") + key + "\" must be a number");
    return j[key].get<double>();
}

std::vector<double> array(const json& j, const char* key) {
    require(j.contains(key) && j[key].is_array(), ErrorCode::Parse,
            std::string("\"") + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const json& x : j[key]) out.push_back(extended(x, key));
    return out;
}

std::string kind_of(const json& j) {
    require(j.is_object() && j.contains("kind") && j["kind"].is_string(), ErrorCode::Parse,
            "descriptor object needs a string \"kind\"");
    return j["kind"].get<std::string>();
}

// "k*rest" -> k, rest
std::pair<double, std::string> split_scale(const std::string& s) {
    const auto star = s.find('*');
    if (star == std::string::npos) return {1.0, s};
    return {to_double(s.substr(0, star)), s.substr(star + 1)};
}

// "pow:a" | "powlog:a,b" -> (a, b)
std::pair<double, double> power_log(const std::string& s) {
    if (s.rfind("pow:", 0) == 0) return {to_double(s.substr(4)), 0.0};
    if (s.rfind("powlog:", 0) == 0) {
        const auto v = numbers(s.substr(7));
        require(v.size() == 2, ErrorCode::Parse, "powlog needs two numbers: '" + s + "'");
        return {v[0], v[1]};
    }
    fail(ErrorCode::Parse, "unknown shorthand '" + s + "'");
}

}  // namespace

json descriptor_from_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            fail(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
        }
    }
    return json(text);
}

Domain parse_domain(const json& j) {
    const double R = j.is_object() ? (j.contains("R") ? extended(j["R"], "R") : INFINITY)
                                   : extended(j, "R");
    return make_domain(R);
}

QuasiconcaveFn parse_qconcave(const json& j, const Domain& domain) {
    if (j.is_string()) {
        const auto [k, body] = split_scale(j.get<std::string>());
        ClosedForm form{0.0, k, 0.0, 0.0};
        std::string rest = body;
        if (rest.rfind("jump:", 0) == 0) {
            const auto plus = rest.find('+');
            require(plus != std::string::npos, ErrorCode::Parse,
                    "jump shorthand needs the form jump:d+pow:a");
            form.jump = k * to_double(rest.substr(5, plus - 5));
            rest = rest.substr(plus + 1);
        }
        if (rest.rfind("const:", 0) == 0) {
            form.scale = k * to_double(rest.substr(6));
        } else {
            std::tie(form.alpha, form.beta) = power_log(rest);
        }
        return QuasiconcaveFn::closed_form(domain, form);
    }
    const std::string kind = kind_of(j);
    if (kind == "qconcave")
        return QuasiconcaveFn::closed_form(
            domain, ClosedForm{number(j, "jump", 0.0), number(j, "scale", 1.0),
                               number(j, "alpha", 1.0), number(j, "beta", 0.0)});
    if (kind == "sampled") return QuasiconcaveFn::sampled(domain, {array(j, "grid"), array(j, "values")});
    fail(ErrorCode::Parse, "unknown quasiconcave kind '" + kind + "'");
}

StepFn parse_step(const json& j, const Domain& domain) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        require(s.rfind("step:", 0) == 0, ErrorCode::Parse,
                "a step function is needed here, got '" + s + "'");
        const auto semi = s.find(';');
        require(semi != std::string::npos, ErrorCode::Parse, "step shorthand is step:e1,e2;v1,v2");
        return StepFn(domain, numbers(s.substr(5, semi - 5)), numbers(s.substr(semi + 1)));
    }
    require(kind_of(j) == "step", ErrorCode::Parse, "a step function is needed here");
    return StepFn(domain, array(j, "breaks"), array(j, "values"));
}

PiecewiseFn parse_piecewise(const json& j, const Domain& domain) {
    if (j.is_string()) {
        const auto [k, body] = split_scale(j.get<std::string>());
        if (body.rfind("step:", 0) == 0) return parse_step(json(body), domain).to_piecewise().scaled(k);
        if (body.rfind("const:", 0) == 0)
            return PiecewiseFn::single(domain, Piece::constant(k * to_double(body.substr(6))));
        const auto [g, b] = power_log(body);
        return PiecewiseFn::power(domain, k, g, b);
    }
    const std::string kind = kind_of(j);
    if (kind == "step") return parse_step(j, domain).to_piecewise();
    require(kind == "power", ErrorCode::Parse, "unknown function kind '" + kind + "'");
    require(j.contains("pieces") && j["pieces"].is_array() && !j["pieces"].empty(),
            ErrorCode::Parse, "power descriptor needs a nonempty \"pieces\" array");

    std::vector<double> breaks;
    std::vector<Piece> pieces;
    double at = 0.0;
    for (const json& pj : j["pieces"]) {
        const double lo = pj.contains("lo") ? extended(pj["lo"], "lo") : at;
        const double hi = pj.contains("hi") ? extended(pj["hi"], "hi") : domain.R;
        require(lo >= at && hi > lo && hi <= domain.R, ErrorCode::InvalidArgument,
                "power pieces must be ordered, nonoverlapping and inside (0,R)");
        if (lo > at) {
            breaks.push_back(lo);
            pieces.emplace_back();
        }
        const double c = number(pj, "c", 1.0);
        require(c >= 0.0, ErrorCode::InvalidArgument, "piece coefficient c must be >= 0");
        pieces.push_back(c == 0.0 ? Piece{}
                                  : Piece::power(c, number(pj, "gamma", 0.0), number(pj, "beta", 0.0)));
        if (hi < domain.R) breaks.push_back(hi);
        at = hi;
    }
    if (at < domain.R) pieces.emplace_back();

    PiecewiseFn f(domain, breaks, pieces);
    // Declared exponents must agree with the end pieces.
    const auto check = [&](const char* key, const Asymptote& a) {
        if (!j.contains(key)) return;
        const double g = number(j, key, 0.0);
        require(!a.is_zero() && exponents_equal(a.power, g), ErrorCode::InvalidArgument,
                std::string("declared ") + key + " = " + std::to_string(g) +
                    " disagrees with the end piece (" + a.describe() + ")");
    };
    check("head_gamma", f.head());
    if (!domain.bounded()) check("tail_gamma", f.tail());
    return f;
}

}  // namespace reartool
