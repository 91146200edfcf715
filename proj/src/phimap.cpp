#include "dbx/phimap.hpp"

#include <algorithm>

#include "dbx/classify.hpp"
#include "dbx/solve_detail.hpp"

namespace dbx {

namespace {

detail::SolveOpts to_opts(const SolveConfig& cfg) {
    detail::SolveOpts o;
    o.root_tol = cfg.root_tol;
    o.max_iterations = cfg.max_iterations;
    o.grid_points = cfg.grid_points;
    o.precision_bits = cfg.precision_bits;
    return o;
}

SolveResult to_public(const detail::SolveResultT<Real>& r) {
    return SolveResult{r.root,       r.lo,  r.hi, r.residual, r.iterations,
                       r.sign_change_certified, r.boundary_root};
}

} // namespace

SolveResult g_alpha(const EpSeq& alpha, const Real& q0, const SolveConfig& cfg) {
    precision_scope scope(cfg.precision_bits);
    return to_public(detail::g_alpha_solve<Real>(alpha, q0, to_opts(cfg)));
}

SolveResult g_tilde_mu(const EpSeq& mu, const Real& q0, const SolveConfig& cfg) {
    precision_scope scope(cfg.precision_bits);
    return to_public(detail::g_tilde_mu_solve<Real>(mu, q0, to_opts(cfg)));
}

SolveResult q_alpha_bound(const EpSeq& alpha, const SolveConfig& cfg) {
    precision_scope scope(cfg.precision_bits);
    return to_public(detail::q_alpha_solve<Real>(alpha, to_opts(cfg)));
}

PhiForward phi_forward(const BasePair& q, std::size_t depth) {
    q.require_expandable("phi_forward");
    PhiForward out;
    out.region = q.region();
    if (q.region() == Region::C) {
        out.mu_prefix.assign(depth, '0');
        out.alpha_prefix.assign(depth, '1');
        out.certified = depth;
        return out;
    }
    if (q.exact()) {
        const Rational q0 = q.exact()->first;
        const Rational q1 = q.exact()->second;
        const Rational ell = q1 / (q0 * (q1 - 1)) - 1;
        const Rational r = q0 / q1;
        auto mu = run_algorithm(q, ExpansionPoint::from_rational(ell, q.precision_bits()),
                                ExpansionMode::QuasiLazy, depth);
        auto alpha = run_algorithm(q, ExpansionPoint::from_rational(r, q.precision_bits()),
                                   ExpansionMode::QuasiGreedy, depth);
        out.mu_prefix = std::move(mu.digits);
        out.alpha_prefix = std::move(alpha.digits);
        out.certified = std::min(mu.certified_depth, alpha.certified_depth);
        return out;
    }
    const CriticalPoints cp = critical_points(q);
    auto mu = run_algorithm(q, ExpansionPoint::from_real(cp.ell), ExpansionMode::QuasiLazy, depth);
    auto alpha =
        run_algorithm(q, ExpansionPoint::from_real(cp.r), ExpansionMode::QuasiGreedy, depth);
    out.mu_prefix = std::move(mu.digits);
    out.alpha_prefix = std::move(alpha.digits);
    out.certified = std::min(mu.certified_depth, alpha.certified_depth);
    return out;
}

PhiInverse phi_inverse(const EpSeq& mu, const EpSeq& alpha, const SolveConfig& cfg) {
    if (auto violation = bprime_violation(mu, alpha)) {
        throw precondition_error("not in B': " + violation->condition);
    }
    precision_scope scope(cfg.precision_bits);
    const auto solved = detail::phi_inverse_solve<Real>(mu, alpha, to_opts(cfg));
    PhiInverse out;
    out.q0 = solved.q0;
    out.q1 = solved.q1;
    out.residual_f = solved.residual_f;
    out.residual_ftilde = solved.residual_ftilde;
    out.bracket_width = solved.bracket_width;
    out.outer_iterations = solved.outer_iterations;
    return out;
}

ContinuityProbe phi_inverse_continuity_probe(const EpSeq& mu, const EpSeq& alpha,
                                             std::size_t perturb_depth, const SolveConfig& cfg) {
    if (auto violation = bprime_violation(mu, alpha)) {
        throw precondition_error("not in B': " + violation->condition);
    }
    const PhiInverse base = phi_inverse(mu, alpha, cfg);

    ContinuityProbe probe;
    probe.max_deviation = Real(0);
    for (const auto& [m, a] : approximating_neighbors(mu, alpha, perturb_depth)) {
        const PhiInverse moved = phi_inverse(m, a, cfg);
        ContinuityProbe::Entry entry{m, a,
                                     std::max(boost::multiprecision::abs(moved.q0 - base.q0),
                                              boost::multiprecision::abs(moved.q1 - base.q1))};
        probe.max_deviation = std::max(probe.max_deviation, entry.deviation);
        probe.entries.push_back(std::move(entry));
    }
    return probe;
}

} // namespace dbx
