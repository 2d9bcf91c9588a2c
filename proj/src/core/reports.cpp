#include "reports.hpp"

#include <cmath>

#include "error.hpp"

namespace reartool {

json number_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double json_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    fail(ErrorCode::Parse, "not a report number: " + j.dump());
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? number_json(*v) : json(nullptr); }

json numbers(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(number_json(x));
    return out;
}

}  // namespace

json to_json(const BReport& r) {
    json methods = json::array();
    for (const MethodVerdict& m : r.methods)
        methods.push_back({{"method", m.method},
                           {"holds", m.holds},
                           {"constant", number_json(m.constant)},
                           {"witness", m.witness},
                           {"reason", m.reason}});
    return {{"holds", r.holds},
            {"constant", number_json(r.constant)},
            {"witness", r.witness},
            {"grid_limited", r.grid_limited},
            {"methods", methods},
            {"dilation_c", optional_number(r.dilation_c)},
            {"dilation_ratio", optional_number(r.dilation_ratio)}};
}

json to_json(const NormValue& r) {
    return {{"value", number_json(r.value)},
            {"method", to_string(r.method)},
            {"error_bound", number_json(r.error_bound)}};
}

json to_json(const ConditionReport& r) {
    json parts = json::array();
    for (const SubVerdict& s : r.parts)
        parts.push_back({{"name", s.name},
                         {"finite", s.finite},
                         {"sup_value", number_json(s.sup_value)},
                         {"witness", s.witness}});
    return {{"finite", r.finite},
            {"sup_value", number_json(r.sup_value)},
            {"witness", r.witness()},
            {"witness_t", optional_number(r.witness_t)},
            {"witness_tag", r.witness_tag},
            {"numerator", optional_number(r.numerator)},
            {"denominator", optional_number(r.denominator)},
            {"grid", {{"points", r.grid_points},
                      {"lo", number_json(r.grid_lo)},
                      {"hi", number_json(r.grid_hi)},
                      {"refinement_rounds", r.refinement_rounds}}},
            {"grid_limited", r.grid_limited},
            {"reason", r.reason},
            {"warnings", r.warnings},
            {"parts", parts}};
}

json to_json(const LemmaVerdict& r) {
    json checks = json::array();
    for (const SubCheck& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", number_json(c.value)},
                          {"bound", optional_number(c.bound)},
                          {"detail", c.detail}});
    json out = {{"lemma", r.lemma},
                {"direction", to_string(r.direction)},
                {"passed", r.passed},
                {"max_ratio", number_json(r.max_ratio)},
                {"bound", optional_number(r.bound)},
                {"samples", r.samples},
                {"stable", r.stable},
                {"checks", checks},
                {"notes", r.notes}};
    if (r.direction == Direction::Sufficiency) {
        out["doubled_max_ratio"] = number_json(r.doubled_max_ratio);
    } else {
        out["parameters"] = numbers(r.parameters);
        out["sequence"] = numbers(r.sequence);
        out["witness"] = r.witness;
    }
    return out;
}

json to_json(const EmbeddingReport& r) {
    return {{"holds", r.holds},
            {"limit", number_json(r.limit)},
            {"grid_min", number_json(r.grid_min)},
            {"reason", r.reason}};
}

}  // namespace reartool
