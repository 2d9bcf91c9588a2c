#pragma once

#include "funcspace.hpp"
#include "quasiconcave.hpp"

namespace reartool {

struct OpResult {
    PiecewiseFn value;
    /// S_phi f = inf on all of (0,R); only possible for unbounded f with phi(0+) > 0,
    /// so never set for step inputs.
    bool trivial = false;
};

/// S_phi f(t) = (1/phi(t)) sup_{0<s<t} phi(s) f*(s), exact on steps.
OpResult apply_S(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar);

/// T_psi f(t) = (1/psi(t)) sup_{t<s<R} psi(s) f*(s), exact on steps.
OpResult apply_T(const QuasiconcaveFn& psi, const MonotoneStepFn& fstar);

/// c / phi(t) as a single piece.
Piece reciprocal_piece(const QuasiconcaveFn& phi, double c);

}  // namespace reartool
