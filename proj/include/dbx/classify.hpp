#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbx/epseq.hpp"
#include "dbx/expand.hpp"
#include "dbx/tri.hpp"

namespace dbx {

struct SolveConfig;  // phimap.hpp

struct Witness {
    std::string sequence;   // "mu" or "alpha"
    std::size_t shift = 0;
    std::string condition;  // the violated or satisfied comparison, spelled out
};

struct Verdict {
    Tri value;
    std::optional<Witness> witness;
};

// Classification of a sequence pair against the symbolic sets. For eventually
// periodic inputs every field is definite (never unknown).
struct PairClass {
    Tri in_Bprime, in_Cprime, in_U2prime, in_V2prime, in_closureU2prime;
    Tri in_VminusClosure;  // isolated points of V'2
    std::optional<Witness> witness;
    // Interleaved decomposition mu = (u v)^inf, alpha = (v u)^inf for points of
    // V'2 \ closure.
    std::optional<std::pair<Word, Word>> periodic_uv;
};

// Degenerate boundary pairs: mu constant-zero or co-finite, or alpha
// constant-one or finite.
bool in_C_prime(const EpSeq& mu, const EpSeq& alpha);

Verdict in_B_prime(const EpSeq& mu, const EpSeq& alpha);
Verdict in_U2_prime(const EpSeq& mu, const EpSeq& alpha);
Verdict in_V2_prime(const EpSeq& mu, const EpSeq& alpha);
Verdict in_closure_U2_prime(const EpSeq& mu, const EpSeq& alpha);

PairClass classify_pair(const EpSeq& mu, const EpSeq& alpha);

// Nothing when (mu, alpha) lies in B', otherwise the violated condition.
std::optional<Witness> bprime_violation(const EpSeq& mu, const EpSeq& alpha);

struct BaseClass {
    Region region;
    Tri in_U2, in_V2, in_closureU2;
    std::size_t certification_depth = 0;
    bool exact = false;  // verdicts came from a confirmed eventually periodic image
    std::optional<EpSeq> detected_mu, detected_alpha;
};

// Lifts the symbolic verdicts through the forward map: exact on C and on
// region-B pairs whose image is recognized (and confirmed) as eventually
// periodic, three-valued from certified prefixes otherwise.
BaseClass classify_base_pair(const BasePair& q, std::size_t depth, const SolveConfig& cfg);

struct StabilityReport {
    struct Neighbor {
        double dq0, dq1;
        std::size_t alpha_side_agreement;  // on the expansion the case split selects
        std::size_t mu_side_agreement;
    };
    std::vector<Neighbor> neighbors;
    std::size_t min_agreement = 0;
};

// Samples base pairs within eps (max metric) and reports how many leading
// digits the case-selected greedy/lazy expansions share with the original.
StabilityReport perturbation_stability_probe(const BasePair& q, double eps, std::size_t depth);

// Valid cut indices of the suffix-vs-prefix inequalities: positions n with
// mu_n = 1 and mu_{j+1}..mu_n > mu_1..mu_{n-j} for all 0 < j < n (and the
// mirrored form on alpha with strict <). Searched up to |pre| + 4|per|.
std::vector<std::size_t> mu_cut_indices(const EpSeq& mu);
std::vector<std::size_t> alpha_cut_indices(const EpSeq& alpha);

// Case-(ii) approximant: ((mu_1..mu_{n_k})(mu_1..mu_{n_{k+1}})^inf, alpha)
// using the k-th and (k+1)-th cut indices (0-based k).
std::pair<EpSeq, EpSeq> build_approximant_U2prime(const EpSeq& mu, const EpSeq& alpha,
                                                  std::size_t k);

// Periodic interleaved pair ((mu_1..mu_n^- alpha_1..alpha_m^+)^inf, ...);
// requires mu_n = 1 and alpha_m = 0.
std::pair<EpSeq, EpSeq> build_VminusClosure_witness(const EpSeq& mu, const EpSeq& alpha,
                                                    std::size_t n, std::size_t m);

// B' pairs agreeing with (mu, alpha) through at least `depth` digits, drawn
// from the approximant constructions plus periodic flip-completions of the
// prefixes. Invalid candidates are filtered out; the original pair is not
// included.
std::vector<std::pair<EpSeq, EpSeq>> approximating_neighbors(const EpSeq& mu, const EpSeq& alpha,
                                                             std::size_t depth);

// Three-valued predicates on certified digit prefixes; a violation is final,
// absence of one never upgrades to yes.
Tri prefix_in_U2_prime(const Word& mu_prefix, const Word& alpha_prefix);
Tri prefix_in_V2_prime(const Word& mu_prefix, const Word& alpha_prefix);

} // namespace dbx
