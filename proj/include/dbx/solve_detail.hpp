#pragma once

// Bracketing solves behind the Phi map, templated over the scalar type so the
// dimension estimator can run them in plain doubles while the public API uses
// configurable-precision reals.

#include <cmath>
#include <cstddef>

#include "dbx/epseq.hpp"
#include "dbx/numeric.hpp"
#include "dbx/pi_kernel.hpp"

namespace dbx::detail {

struct SolveOpts {
    double root_tol = 1e-12;
    unsigned max_iterations = 200;
    unsigned grid_points = 64;
    unsigned precision_bits = 128;
};

template <typename S>
struct SolveResultT {
    S root;
    S lo, hi;          // final bracket
    S residual;        // |f| at the returned root
    std::size_t iterations = 0;
    bool sign_change_certified = false;  // endpoints carried opposite signs
    bool boundary_root = false;          // closed-form root at the interval end
};

template <typename S>
S pow2_scalar(double e);

template <>
inline double pow2_scalar<double>(double e) {
    return std::exp2(e);
}

template <>
inline Real pow2_scalar<Real>(double e) {
    return boost::multiprecision::pow(Real(2), Real(e));
}

template <typename S>
S f_alpha(const EpSeq& alpha, const S& q0, const S& q1) {
    return kernel::pi_value<S>(alpha, q0, q1) - q0 / q1;
}

template <typename S>
S f_tilde_mu(const EpSeq& mu, const S& q0, const S& q1) {
    return kernel::pi_tilde_value<S>(mu, q0, q1) - q1 / q0;
}

template <typename S, typename F>
SolveResultT<S> bisect(F&& f, S lo, S hi, S flo, S fhi, const SolveOpts& opts) {
    SolveResultT<S> out;
    out.sign_change_certified = (flo > 0) != (fhi > 0);
    const S tol = S(opts.root_tol);
    while (out.iterations < opts.max_iterations && hi - lo > tol) {
        const S mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;  // bracket at arithmetic resolution
        const S fmid = f(mid);
        ++out.iterations;
        if (fmid == 0) {
            lo = hi = mid;
            break;
        }
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    out.lo = lo;
    out.hi = hi;
    out.root = lo + (hi - lo) / 2;
    out.residual = scalar_ops<S>::abs(f(out.root));
    return out;
}

// Finds a sign change for f on (1, hi_end]: endpoint signs first, otherwise a
// geometric sweep of q1 - 1. Throws numeric_error when none appears at the
// grid resolution (the caller's argument lies outside the admissible range).
template <typename S, typename F>
SolveResultT<S> solve_on_unit_interval(F&& f, const S& hi_end, const SolveOpts& opts,
                                       const char* what) {
    const S one = scalar_ops<S>::from_long(1);
    const S width = hi_end - one;
    const S lo = one + width * pow2_scalar<S>(-60.0);
    S flo = f(lo);
    const S fhi = f(hi_end);
    if ((flo > 0) != (fhi > 0)) {
        return bisect<S>(f, lo, hi_end, flo, fhi, opts);
    }
    const S ratio = pow2_scalar<S>(60.0 / (opts.grid_points + 1.0));
    S prev = lo;
    S fprev = flo;
    S offset = width * pow2_scalar<S>(-60.0);
    for (unsigned j = 1; j <= opts.grid_points; ++j) {
        offset = offset * ratio;
        const S cur = one + offset;
        if (cur >= hi_end) break;
        const S fcur = f(cur);
        if ((fcur > 0) != (fprev > 0)) {
            return bisect<S>(f, prev, cur, fprev, fcur, opts);
        }
        prev = cur;
        fprev = fcur;
    }
    if ((fprev > 0) != (fhi > 0)) {
        return bisect<S>(f, prev, hi_end, fprev, fhi, opts);
    }
    throw numeric_error(std::string(what) + ": no sign change found on (1, q0/(q0-1))");
}

// Root q1 of f_alpha(q0, .) on (1, q0/(q0-1)]. alpha = 1^inf sits exactly on
// the boundary q1 = q0/(q0-1) and is returned in closed form.
template <typename S>
SolveResultT<S> g_alpha_solve(const EpSeq& alpha, const S& q0, const SolveOpts& opts) {
    if (!(q0 > 1)) throw precondition_error("g_alpha: q0 must exceed 1");
    if (alpha.digit(1) != '1') throw precondition_error("g_alpha: alpha must start with 1");
    const S hi = q0 / (q0 - 1);
    if (alpha == EpSeq::ones()) {
        SolveResultT<S> out;
        out.root = out.lo = out.hi = hi;
        out.residual = scalar_ops<S>::abs(f_alpha<S>(alpha, q0, hi));
        out.boundary_root = true;
        return out;
    }
    auto f = [&](const S& q1) { return f_alpha<S>(alpha, q0, q1); };
    return solve_on_unit_interval<S>(f, hi, opts, "g_alpha");
}

template <typename S>
SolveResultT<S> g_tilde_mu_solve(const EpSeq& mu, const S& q0, const SolveOpts& opts) {
    if (!(q0 > 1)) throw precondition_error("g_tilde_mu: q0 must exceed 1");
    if (mu.digit(1) != '0') throw precondition_error("g_tilde_mu: mu must start with 0");
    const S hi = q0 / (q0 - 1);
    if (mu == EpSeq::zeros()) {
        SolveResultT<S> out;
        out.root = out.lo = out.hi = hi;
        out.residual = scalar_ops<S>::abs(f_tilde_mu<S>(mu, q0, hi));
        out.boundary_root = true;
        return out;
    }
    auto f = [&](const S& q1) { return f_tilde_mu<S>(mu, q0, q1); };
    return solve_on_unit_interval<S>(f, hi, opts, "g_tilde_mu");
}

// The q1 -> 1 limit equation f_alpha(q0, 1) = 0; its root bounds the outer
// bisection of the inverse map. Diverges when alpha ends in 1^inf.
template <typename S>
SolveResultT<S> q_alpha_solve(const EpSeq& alpha, const SolveOpts& opts) {
    if (alpha.digit(1) != '1') throw precondition_error("q_alpha: alpha must start with 1");
    if (alpha.per() == "1") {
        throw precondition_error("q_alpha: series diverges at q1 = 1 for alpha ending in 1^inf");
    }
    const S one = scalar_ops<S>::from_long(1);
    auto f = [&](const S& q0) { return kernel::pi_value<S>(alpha, q0, one) - q0; };
    S lo = one + pow2_scalar<S>(-40.0);
    S flo = f(lo);
    if (!(flo > 0)) throw numeric_error("q_alpha: expected positive value near q0 = 1");
    S hi = scalar_ops<S>::from_long(2);
    S fhi = f(hi);
    unsigned doublings = 0;
    while (fhi > 0 && doublings < 64) {
        hi = hi * 2;
        fhi = f(hi);
        ++doublings;
    }
    if (fhi > 0) throw numeric_error("q_alpha: no sign change found while expanding bracket");
    return bisect<S>(f, lo, hi, flo, fhi, opts);
}

template <typename S>
struct PhiInverseResultT {
    S q0, q1;
    S residual_f, residual_ftilde;
    S bracket_width;
    std::size_t outer_iterations = 0;
};

// Outer bisection of h(q0) = g_alpha(q0) - g_tilde_mu(q0) on (1, q_alpha);
// h decreases through exactly one sign change for B' inputs. Callers are
// expected to have validated B' membership already.
template <typename S>
PhiInverseResultT<S> phi_inverse_solve(const EpSeq& mu, const EpSeq& alpha,
                                       const SolveOpts& opts) {
    const S eps0 = S(1e-9);
    const S one = scalar_ops<S>::from_long(1);
    const S q_alpha = q_alpha_solve<S>(alpha, opts).root;

    auto h = [&](const S& q0) {
        return g_alpha_solve<S>(alpha, q0, opts).root - g_tilde_mu_solve<S>(mu, q0, opts).root;
    };
    S lo = one + eps0;
    S hi = q_alpha - eps0;
    if (!(hi > lo)) throw numeric_error("phi_inverse: degenerate outer bracket");
    S flo = h(lo);
    S fhi = h(hi);
    if (!(flo > 0) || !(fhi < 0)) {
        throw numeric_error(
            "phi_inverse: sign anomaly of g_alpha - g_tilde_mu on (1, q_alpha); multiple sign "
            "changes are unexpected for B' inputs");
    }
    auto solved = bisect<S>(h, lo, hi, flo, fhi, opts);

    PhiInverseResultT<S> out;
    out.q0 = solved.root;
    out.q1 = g_alpha_solve<S>(alpha, out.q0, opts).root;
    // Return the lower-left representative of the tolerance ball. When the
    // solve is tight enough for the nudge to dominate the bracket error, the
    // returned pair sits where both quasi expansions still begin with the
    // input digits (the forward map jumps upward across the true preimage, so
    // the approach must come from below on both coordinates).
    const S nudge = pow2_scalar<S>(-112.0);
    out.q0 -= nudge;
    out.q1 -= nudge;
    out.residual_f = scalar_ops<S>::abs(f_alpha<S>(alpha, out.q0, out.q1));
    out.residual_ftilde = scalar_ops<S>::abs(f_tilde_mu<S>(mu, out.q0, out.q1));
    out.bracket_width = solved.hi - solved.lo;
    out.outer_iterations = solved.iterations;
    if (!(out.q0 + out.q1 > out.q0 * out.q1)) {
        throw numeric_error("phi_inverse: solved pair fell outside q0+q1 > q0*q1");
    }
    return out;
}

} // namespace dbx::detail
