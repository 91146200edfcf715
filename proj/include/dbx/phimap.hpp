#pragma once

#include <cstddef>
#include <vector>

#include "dbx/epseq.hpp"
#include "dbx/expand.hpp"
#include "dbx/numeric.hpp"

namespace dbx {

struct SolveConfig {
    double root_tol = 1e-12;
    unsigned max_iterations = 200;
    unsigned grid_points = 64;
    unsigned precision_bits = 128;
    // residual gate for accepting a detected eventually periodic image; an
    // accepted pair is correct to roughly -log2(confirm_tol) digits
    double confirm_tol = 1e-8;
};

struct SolveResult {
    Real root;
    Real bracket_lo, bracket_hi;
    Real residual;
    std::size_t iterations = 0;
    bool sign_change_certified = false;
    bool boundary_root = false;
};

// Unique q1 with pi_{q0,q1}(alpha) = q0/q1, in (1, q0/(q0-1)].
SolveResult g_alpha(const EpSeq& alpha, const Real& q0, const SolveConfig& cfg);
// Unique q1 with pi~_{q0,q1}(mu) = q1/q0.
SolveResult g_tilde_mu(const EpSeq& mu, const Real& q0, const SolveConfig& cfg);
// Unique q0 with f_alpha(q0, 1) = 0; rejects alpha ending in 1^inf.
SolveResult q_alpha_bound(const EpSeq& alpha, const SolveConfig& cfg);

struct PhiForward {
    Word mu_prefix;
    Word alpha_prefix;
    std::size_t certified = 0;
    Region region = Region::B;
};

// Quasi-lazy expansion of ell and quasi-greedy expansion of r, to `depth`
// digits with a joint certified depth. On C returns (0^depth, 1^depth).
PhiForward phi_forward(const BasePair& q, std::size_t depth);

struct PhiInverse {
    Real q0, q1;
    Real residual_f, residual_ftilde;
    Real bracket_width;
    std::size_t outer_iterations = 0;
};

// Inverse of the bijection on B': rejects inputs outside B' with the violated
// lexicographic condition as witness.
PhiInverse phi_inverse(const EpSeq& mu, const EpSeq& alpha, const SolveConfig& cfg);

struct ContinuityProbe {
    struct Entry {
        EpSeq mu, alpha;
        Real deviation;  // max(|q0 - q0'|, |q1 - q1'|)
    };
    std::vector<Entry> entries;
    Real max_deviation;
};

// Solves nearby B' pairs that agree with (mu, alpha) through perturb_depth
// digits and reports how far their preimages move.
ContinuityProbe phi_inverse_continuity_probe(const EpSeq& mu, const EpSeq& alpha,
                                             std::size_t perturb_depth, const SolveConfig& cfg);

} // namespace dbx
