#include "supremum.hpp"

#include <algorithm>

#include "error.hpp"

namespace reartool {

Piece reciprocal_piece(const QuasiconcaveFn& phi, double c) {
    if (c == 0.0) return Piece{};
    if (const auto t = phi.as_term()) return Piece::power(c / t->coef, -t->power, -t->log_power);
    Piece p = Piece::constant(c);
    p.factor = phi.as_factor();
    p.factor_power = -1.0;
    return p;
}

OpResult apply_S(const QuasiconcaveFn& phi, const MonotoneStepFn& fstar) {
    require(phi.domain() == fstar.domain(), ErrorCode::DomainMismatch,
            "apply_S: phi and f* live on different domains");
    const Domain dom = fstar.domain();
    std::vector<double> breaks;
    std::vector<Piece> pieces;
    double P = 0.0;  // running max of v_j phi(a_j)
    double lo = 0.0;
    for (std::size_t i = 0; i < fstar.size(); ++i) {
        const double v = fstar.values()[i], hi = fstar.ends()[i];
        if (lo > 0.0) breaks.push_back(lo);
        if (P == 0.0) {
            pieces.push_back(Piece::constant(v));
        } else {
            // max(P/phi(t), v): the decreasing part wins until phi reaches P/v.
            const double cross = phi.inverse(P / v);
            if (cross <= lo) {
                pieces.push_back(Piece::constant(v));
            } else if (cross >= hi) {
                pieces.push_back(reciprocal_piece(phi, P));
            } else {
                pieces.push_back(reciprocal_piece(phi, P));
                breaks.push_back(cross);
                pieces.push_back(Piece::constant(v));
            }
        }
        P = std::max(P, v * phi(hi));
        lo = hi;
    }
    if (lo < dom.R) {
        if (lo > 0.0) breaks.push_back(lo);
        pieces.push_back(reciprocal_piece(phi, P));
    }
    return {PiecewiseFn(dom, std::move(breaks), std::move(pieces)), false};
}

OpResult apply_T(const QuasiconcaveFn& psi, const MonotoneStepFn& fstar) {
    require(psi.domain() == fstar.domain(), ErrorCode::DomainMismatch,
            "apply_T: psi and f* live on different domains");
    const Domain dom = fstar.domain();
    const std::size_t n = fstar.size();
    std::vector<double> Q(n);
    double run = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        run = std::max(run, fstar.values()[i] * psi(fstar.ends()[i]));
        Q[i] = run;
    }
    std::vector<double> breaks;
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) breaks.push_back(fstar.ends()[i - 1]);
        pieces.push_back(reciprocal_piece(psi, Q[i]));
    }
    if (n == 0 || fstar.support_end() < dom.R) {
        if (n > 0) breaks.push_back(fstar.support_end());
        pieces.push_back(Piece{});
    }
    return {PiecewiseFn(dom, std::move(breaks), std::move(pieces)), false};
}

}  // namespace reartool
