#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dbx/epseq.hpp"
#include "dbx/expand.hpp"
#include "dbx/numeric.hpp"

namespace dbx {

struct FamilyParams {
    unsigned N = 2;                 // block length parameter, >= 2
    std::size_t depth_blocks = 4;   // random N-blocks between header and period
    std::uint64_t seed = 0;
};

// One member of the product family: alpha = 1^{2N-1}0 then admissible random
// N-blocks then one admissible block repeated forever; mu is the 0/1-swapped
// header analogue. Deterministic under the seed.
std::pair<EpSeq, EpSeq> sample_family_pair(const FamilyParams& p);

struct BlockCounts {
    BigInt initial;  // ((2^N-2)^{n-2})^2 distinct leading nN-blocks of pairs
    BigInt middle;   // ((2^N-2)^{n-k})^2 distinct interior segments
};

BlockCounts block_count(unsigned N, unsigned n, unsigned k);

struct SeparationReport {
    double distance = 0;          // max metric between the two base pairs
    double constant = 0;          // (2 + eps)^{-2N+3}
    std::size_t m = 0;            // largest m with distance <= C (2+eps)^-m
    std::size_t checked = 0;      // digits actually compared (capped by certification)
    std::size_t first_disagreement = 0;  // 0 when none within `checked`
    bool pass = true;
};

// Digit-agreement implication: pairs within C (2+eps)^-m of each other must
// share their first m expansion digits on both coordinates.
SeparationReport separation_check(const BasePair& q, const BasePair& q2, unsigned N,
                                  double eps_N);

// Agreement helper used by the separation check and its negative control:
// compares the first `depth` certified digits of the forward images.
std::pair<std::size_t, std::size_t> forward_digit_agreement(const BasePair& q,
                                                            const BasePair& q2,
                                                            std::size_t depth);

struct DimEstimate {
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    double slope = 0;
    std::size_t fit_lo = 0, fit_hi = 0;  // half-open index range used in the fit
    std::size_t sample_count = 0;
    unsigned N = 0;
    double eps_N = 0;
    double tau = 0;             // from (2^N - 2)^2 = 2^{tau N}
    double analytic_bound = 0;  // tau * log_{2+eps}(2)
};

enum class FamilyKind { Full, Gap };

// Box-counting estimate over phi^{-1} images of `samples` family members.
// The gap family freezes mu at (0^{2N-1}1)^inf and samples alpha only.
DimEstimate estimate_dimension(const FamilyParams& p, std::size_t samples,
                               const std::vector<double>& scales,
                               FamilyKind kind = FamilyKind::Full);

DimEstimate estimate_dimension_gap(unsigned N, std::size_t samples,
                                   const std::vector<double>& scales, std::uint64_t seed);

// Solved base coordinates of family members, exposed for tests and the CLI.
std::vector<std::pair<double, double>> family_preimages(const FamilyParams& p,
                                                        std::size_t samples, FamilyKind kind);

} // namespace dbx
