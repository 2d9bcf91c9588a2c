#pragma once

#include <string>

#include "json.hpp"

#include "funcspace.hpp"
#include "quasiconcave.hpp"

namespace reartool {

using json = nlohmann::json;

/// Text that starts with '{' or '[' is JSON; anything else is a shorthand string.
json descriptor_from_text(const std::string& text);

/// A number, "inf", or {"R": ...}.
Domain parse_domain(const json& j);

/// {"kind":"qconcave","jump","scale","alpha","beta"}, {"kind":"sampled","grid","values"},
/// or "pow:a", "powlog:a,b", "const:c", "jump:d+pow:a", "jump:d+powlog:a,b",
/// each optionally prefixed by "k*".
QuasiconcaveFn parse_qconcave(const json& j, const Domain& domain);

/// {"kind":"step","breaks":[right endpoints],"values":[...]}.
StepFn parse_step(const json& j, const Domain& domain);

/// Step or {"kind":"power","pieces":[{"lo","hi","c","gamma"[,"beta"]}],"head_gamma","tail_gamma"},
/// or "pow:g", "powlog:g,b", "const:c", "step:e1,e2,...;v1,v2,...", optionally prefixed by "k*".
PiecewiseFn parse_piecewise(const json& j, const Domain& domain);

}  // namespace reartool
