#pragma once

#include <optional>
#include <utility>

#include "dbx/epseq.hpp"
#include "dbx/numeric.hpp"
#include "dbx/tri.hpp"

namespace dbx {

enum class Region { B, C, Outside };

std::string region_name(Region r);

// A base pair (q0, q1), both > 1. When constructed from rationals the exact
// values are kept so expansions and region tests can run in exact arithmetic.
class BasePair {
public:
    BasePair(Real q0, Real q1, unsigned precision_bits);
    BasePair(const Rational& q0, const Rational& q1, unsigned precision_bits);

    const Real& q0() const { return q0_; }
    const Real& q1() const { return q1_; }
    Region region() const { return region_; }
    const std::optional<std::pair<Rational, Rational>>& exact() const { return exact_; }
    unsigned precision_bits() const { return precision_bits_; }

    void require_expandable(const char* op) const;  // region must be B or C

private:
    Real q0_, q1_;
    std::optional<std::pair<Rational, Rational>> exact_;
    Region region_;
    unsigned precision_bits_;
};

struct CriticalPoints {
    Real ell;  // q1/(q0(q1-1)) - 1
    Real r;    // q0/q1
};

CriticalPoints critical_points(const BasePair& q);

Real pi_eval(const BasePair& q, const EpSeq& a);
Real pi_tilde_eval(const BasePair& q, const EpSeq& a);
Rational pi_eval_exact(const Rational& q0, const Rational& q1, const EpSeq& a);
Rational pi_tilde_eval_exact(const Rational& q0, const Rational& q1, const EpSeq& a);

enum class ExpansionMode { Greedy, QuasiGreedy, Lazy, QuasiLazy };

ExpansionMode parse_mode(const std::string& name);
std::string mode_name(ExpansionMode m);

struct ExpansionRun {
    Word digits;
    ExpansionMode mode;
    Real residual_lo;  // bounds on x - (emitted partial sum)
    Real residual_hi;
    std::size_t certified_depth;  // digits whose comparison margins beat the error bound
};

// Value of x for the expansion algorithms: either exact rational or a Real.
struct ExpansionPoint {
    Real value;
    std::optional<Rational> exact;

    static ExpansionPoint from_rational(const Rational& r, unsigned precision_bits);
    static ExpansionPoint from_real(Real v);
};

ExpansionRun run_algorithm(const BasePair& q, const ExpansionPoint& x, ExpansionMode mode,
                           std::size_t depth);

// Quasi-greedy counterpart of a greedy expansion: (b_1..b_n^-)^inf when beta
// is finite with last one at index n, beta itself otherwise (0^inf unchanged).
EpSeq quasi_from_greedy(const EpSeq& beta);
// Mirror image for lazy -> quasi-lazy via the last zero index.
EpSeq quasi_from_lazy(const EpSeq& lambda);

// Lexicographic uniqueness criterion against exact quasi-lazy/quasi-greedy
// expansions mu and alpha; exact for eventually periodic inputs.
Tri is_unique_expansion(const BasePair& q, const EpSeq& x_digits, const EpSeq& mu,
                        const EpSeq& alpha);

// Same criterion when only digit prefixes of mu and alpha are known.
Tri is_unique_expansion_prefix(const BasePair& q, const EpSeq& x_digits, const Word& mu_prefix,
                               const Word& alpha_prefix);

// Orbit avoidance of the switch interval [1/q1, 1/(q0(q1-1))]; exact for
// rational bases, margin-checked otherwise. Region B only.
Tri orbit_uniqueness_check(const BasePair& q, const EpSeq& x_digits);

} // namespace dbx
