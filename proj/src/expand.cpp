#include "dbx/expand.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include "dbx/pi_kernel.hpp"

namespace dbx {

std::string region_name(Region r) {
    switch (r) {
        case Region::B: return "B";
        case Region::C: return "C";
        default: return "Outside";
    }
}

namespace {

Region region_of_exact(const Rational& q0, const Rational& q1) {
    const Rational lhs = q0 + q1;
    const Rational rhs = q0 * q1;
    if (lhs > rhs) return Region::B;
    if (lhs == rhs) return Region::C;
    return Region::Outside;
}

Region region_of_real(const Real& q0, const Real& q1) {
    using boost::multiprecision::abs;
    const Real gap = q0 + q1 - q0 * q1;
    // C is a measure-zero curve; callers wanting exact membership pass
    // rationals or the parametrization q1 = q0/(q0-1).
    const Real tol = boost::multiprecision::ldexp(std::max(Real(1), Real(q0 * q1)), -64);
    if (abs(gap) <= tol) return Region::C;
    return gap > 0 ? Region::B : Region::Outside;
}

} // namespace

BasePair::BasePair(Real q0, Real q1, unsigned precision_bits)
    : q0_(std::move(q0)), q1_(std::move(q1)), precision_bits_(precision_bits) {
    if (!(q0_ > 1) || !(q1_ > 1)) {
        throw precondition_error("base pair requires q0 > 1 and q1 > 1");
    }
    region_ = region_of_real(q0_, q1_);
}

BasePair::BasePair(const Rational& q0, const Rational& q1, unsigned precision_bits)
    : exact_(std::make_pair(q0, q1)), precision_bits_(precision_bits) {
    if (!(q0 > 1) || !(q1 > 1)) {
        throw precondition_error("base pair requires q0 > 1 and q1 > 1");
    }
    precision_scope scope(precision_bits);
    q0_ = Real(q0);
    q1_ = Real(q1);
    region_ = region_of_exact(q0, q1);
}

void BasePair::require_expandable(const char* op) const {
    if (region_ == Region::Outside) {
        throw precondition_error(std::string(op) +
                                 ": base pair lies outside the region q0+q1 >= q0*q1");
    }
}

CriticalPoints critical_points(const BasePair& q) {
    q.require_expandable("critical_points");
    precision_scope scope(q.precision_bits());
    CriticalPoints cp;
    cp.ell = q.q1() / (q.q0() * (q.q1() - 1)) - 1;
    cp.r = q.q0() / q.q1();
    return cp;
}

Real pi_eval(const BasePair& q, const EpSeq& a) {
    q.require_expandable("pi_eval");
    precision_scope scope(q.precision_bits());
    if (q.exact()) {
        return Real(pi_eval_exact(q.exact()->first, q.exact()->second, a));
    }
    return kernel::pi_value<Real>(a, q.q0(), q.q1());
}

Real pi_tilde_eval(const BasePair& q, const EpSeq& a) {
    q.require_expandable("pi_tilde_eval");
    precision_scope scope(q.precision_bits());
    if (q.exact()) {
        return Real(pi_tilde_eval_exact(q.exact()->first, q.exact()->second, a));
    }
    return kernel::pi_tilde_value<Real>(a, q.q0(), q.q1());
}

Rational pi_eval_exact(const Rational& q0, const Rational& q1, const EpSeq& a) {
    return kernel::pi_value<Rational>(a, q0, q1);
}

Rational pi_tilde_eval_exact(const Rational& q0, const Rational& q1, const EpSeq& a) {
    return kernel::pi_tilde_value<Rational>(a, q0, q1);
}

ExpansionMode parse_mode(const std::string& name) {
    if (name == "greedy") return ExpansionMode::Greedy;
    if (name == "quasi-greedy") return ExpansionMode::QuasiGreedy;
    if (name == "lazy") return ExpansionMode::Lazy;
    if (name == "quasi-lazy") return ExpansionMode::QuasiLazy;
    throw precondition_error("unknown expansion mode \"" + name + "\"");
}

std::string mode_name(ExpansionMode m) {
    switch (m) {
        case ExpansionMode::Greedy: return "greedy";
        case ExpansionMode::QuasiGreedy: return "quasi-greedy";
        case ExpansionMode::Lazy: return "lazy";
        default: return "quasi-lazy";
    }
}

ExpansionPoint ExpansionPoint::from_rational(const Rational& r, unsigned /*precision_bits*/) {
    return ExpansionPoint{Real(r), r};
}

ExpansionPoint ExpansionPoint::from_real(Real v) { return ExpansionPoint{std::move(v), {}}; }

namespace {

// All four algorithms iterate the scaled residual R_0 = x,
// R_n = q_d R_{n-1} - d, and differ only in the digit rule:
//   greedy       d=1  iff  R >= 1/q1
//   quasi-greedy d=1  iff  R >  1/q1
//   lazy         d=1  iff  R >  1/(q0(q1-1))
//   quasi-lazy   d=1  iff  R >= 1/(q0(q1-1))
// The two thresholds bound the switch interval; emitting 1 whenever the
// smallest-digit rule fails also realizes the endpoint conventions
// (quasi-greedy of 0 is 0^inf, quasi-lazy of 1/(q1-1) is 1^inf).
template <typename S>
struct OrbitResult {
    Word digits;
    S residual;       // R_depth
    S discount;       // product of 1/q over emitted digits
    S error;          // bound on |computed R - true R|
    std::size_t certified;
};

template <typename S>
OrbitResult<S> run_orbit(const S& q0, const S& q1, const S& x, ExpansionMode mode,
                         std::size_t depth, unsigned precision_bits) {
    using ops = scalar_ops<S>;
    const S one = ops::from_long(1);
    const S eps = ops::epsilon(precision_bits);
    const bool greedy_family =
        (mode == ExpansionMode::Greedy || mode == ExpansionMode::QuasiGreedy);
    const bool strict =
        (mode == ExpansionMode::QuasiGreedy || mode == ExpansionMode::Lazy);
    S threshold;
    if (greedy_family) {
        threshold = one / q1;
    } else {
        threshold = one / (q0 * (q1 - 1));
    }

    OrbitResult<S> out;
    out.digits.reserve(depth);
    out.residual = x;
    out.discount = one;
    out.error = eps * (ops::abs(x) + one);
    out.certified = 0;
    bool still_certified = true;

    for (std::size_t n = 0; n < depth; ++n) {
        const S margin = ops::abs(out.residual - threshold);
        if (still_certified && !(margin > out.error + eps * (threshold + one))) {
            still_certified = false;
        }
        bool emit_one;
        if (strict) {
            emit_one = out.residual > threshold;
        } else {
            emit_one = out.residual >= threshold;
        }
        if (emit_one) {
            out.residual = q1 * out.residual - one;
            out.discount = out.discount / q1;
            out.error = q1 * out.error + eps * (ops::abs(out.residual) + one);
            out.digits.push_back('1');
        } else {
            out.residual = q0 * out.residual;
            out.discount = out.discount / q0;
            out.error = q0 * out.error + eps * (ops::abs(out.residual) + one);
            out.digits.push_back('0');
        }
        if (still_certified) out.certified = n + 1;
    }
    if constexpr (ops::exact) {
        out.error = ops::from_long(0);
        out.certified = depth;
    }
    return out;
}

} // namespace

ExpansionRun run_algorithm(const BasePair& q, const ExpansionPoint& x, ExpansionMode mode,
                           std::size_t depth) {
    q.require_expandable("run_algorithm");
    if (depth == 0) throw precondition_error("run_algorithm: depth must be >= 1");
    precision_scope scope(q.precision_bits());

    ExpansionRun run;
    run.mode = mode;
    if (q.exact() && x.exact) {
        const Rational q0 = q.exact()->first;
        const Rational q1 = q.exact()->second;
        if (*x.exact < 0 || *x.exact > 1 / (q1 - 1)) {
            throw precondition_error("run_algorithm: x outside [0, 1/(q1-1)]");
        }
        auto orbit = run_orbit<Rational>(q0, q1, *x.exact, mode, depth, q.precision_bits());
        run.digits = std::move(orbit.digits);
        const Rational residual = orbit.residual * orbit.discount;
        run.residual_lo = Real(residual);
        run.residual_hi = run.residual_lo;
        run.certified_depth = depth;
        return run;
    }

    const Real upper = 1 / (q.q1() - 1);
    if (x.value < 0 || x.value > upper) {
        throw precondition_error("run_algorithm: x outside [0, 1/(q1-1)]");
    }
    auto orbit = run_orbit<Real>(q.q0(), q.q1(), x.value, mode, depth, q.precision_bits());
    run.digits = std::move(orbit.digits);
    const Real residual = orbit.residual * orbit.discount;
    const Real slack = orbit.error * orbit.discount;
    run.residual_lo = residual - slack;
    run.residual_hi = residual + slack;
    run.certified_depth = orbit.certified;
    return run;
}

EpSeq quasi_from_greedy(const EpSeq& beta) {
    if (classify_seq(beta) != SeqKind::Finite) return beta;
    // Canonical finite form is pre·(0)^inf with the preperiod ending in the
    // last 1, so n = |pre|.
    return EpSeq("", word_minus(beta.pre()));
}

EpSeq quasi_from_lazy(const EpSeq& lambda) {
    if (classify_seq(lambda) != SeqKind::CoFinite) return lambda;
    return EpSeq("", word_plus(lambda.pre()));
}

Tri is_unique_expansion(const BasePair& /*q*/, const EpSeq& x_digits, const EpSeq& mu,
                        const EpSeq& alpha) {
    const std::size_t span = x_digits.pre().size() + x_digits.per().size();
    for (std::size_t m = 1; m <= span; ++m) {
        const EpSeq tail = shift(x_digits, m);
        if (x_digits.digit(m) == '1') {
            if (compare_lex(mu, tail) != Ordering::Less) return Tri::no();
        } else {
            if (compare_lex(tail, alpha) != Ordering::Less) return Tri::no();
        }
    }
    return Tri::yes();
}

namespace {

// Compares an infinite tail against a finite prefix word: Less/Greater when a
// difference appears within the prefix, Unknown when they agree throughout.
Tri::Value compare_tail_to_prefix(const EpSeq& tail, const Word& prefix, bool want_tail_greater) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const char t = tail.digit(i + 1);
        if (t == prefix[i]) continue;
        const bool tail_greater = t > prefix[i];
        return (tail_greater == want_tail_greater) ? Tri::Yes : Tri::No;
    }
    return Tri::Unknown;
}

} // namespace

Tri is_unique_expansion_prefix(const BasePair& /*q*/, const EpSeq& x_digits,
                               const Word& mu_prefix, const Word& alpha_prefix) {
    const std::size_t span = x_digits.pre().size() + x_digits.per().size();
    const std::size_t depth = std::min(mu_prefix.size(), alpha_prefix.size());
    bool unresolved = false;
    for (std::size_t m = 1; m <= span; ++m) {
        const EpSeq tail = shift(x_digits, m);
        Tri::Value v;
        if (x_digits.digit(m) == '1') {
            v = compare_tail_to_prefix(tail, mu_prefix, /*want_tail_greater=*/true);
        } else {
            v = compare_tail_to_prefix(tail, alpha_prefix, /*want_tail_greater=*/false);
        }
        if (v == Tri::No) return Tri::no();
        if (v == Tri::Unknown) unresolved = true;
    }
    return unresolved ? Tri::unknown(depth) : Tri::yes();
}

Tri orbit_uniqueness_check(const BasePair& q, const EpSeq& x_digits) {
    if (q.region() != Region::B) {
        throw precondition_error(
            "orbit_uniqueness_check: region B required (the switch interval degenerates on C)");
    }
    if (q.exact()) {
        const Rational q0 = q.exact()->first;
        const Rational q1 = q.exact()->second;
        const Rational lo = 1 / q1;
        const Rational hi = 1 / (q0 * (q1 - 1));
        for (const EpSeq& tail : distinct_tails(x_digits)) {
            const Rational v = pi_eval_exact(q0, q1, tail);
            if (lo <= v && v <= hi) return Tri::no();
        }
        return Tri::yes();
    }
    const Real lo = 1 / q.q1();
    const Real hi = 1 / (q.q0() * (q.q1() - 1));
    const Real tol = scalar_ops<Real>::epsilon(q.precision_bits()) * 16 * (1 + hi);
    bool unresolved = false;
    for (const EpSeq& tail : distinct_tails(x_digits)) {
        const Real v = pi_eval(q, tail);
        if (v > lo + tol && v < hi - tol) return Tri::no();
        if (v >= lo - tol && v <= hi + tol) unresolved = true;
    }
    return unresolved ? Tri::unknown(q.precision_bits()) : Tri::yes();
}

} // namespace dbx
