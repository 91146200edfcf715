#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbx/epseq.hpp"
#include "dbx/numeric.hpp"

namespace dbx {

// Input of the double series S((n_k), (n~_l)): two non-decreasing sequences of
// real exponents, extended beyond the given lists by their last value.
struct SeriesInput {
    Real x, y;  // both > 1
    std::vector<Real> n_seq;
    std::vector<Real> ntilde_seq;
};

// Certified enclosure of the series value.
struct SeriesValue {
    Real lower, upper;
};

// Sums the terms (z - k*l) / (x^{n_k + l} y^{k + n~_l}) for k, l <= K with
// z = xy/((x-1)(y-1)) and encloses the remainder in closed form. The bound is
// sound for every non-decreasing continuation of the input sequences, not
// just the constant one.
SeriesValue eval_S(const SeriesInput& input, std::size_t K, unsigned precision_bits);

// Doubles K until the enclosure half-width drops below tail_target.
SeriesValue eval_S_auto(const SeriesInput& input, double tail_target, unsigned precision_bits,
                        std::size_t* k_used = nullptr);

// Collapses the first strict increase at k' (1-based): subtracts
// n_{k'+1} - n_{k'} from every later entry. Requires a strict increase there.
SeriesInput flatten_step(const SeriesInput& input, std::size_t kprime);

struct SweepReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<std::string> failed_inputs;
};

// Randomized positivity check: random non-decreasing integer sequences
// (length <= 12, values <= 8), enclosures certified to 1e-10. Non-constant
// inputs must give a strictly positive lower bound, constant ones an
// enclosure containing zero.
SweepReport verify_positivity_sweep(const Real& x, const Real& y, std::size_t trials,
                                    std::uint64_t seed, unsigned precision_bits);

// Run-length exponents: alpha = 1 0^{n_1} 1 0^{n_2-n_1} ... gives the
// cumulative zero counts (n_k); mu = 0 1^{n~_1} 0 ... the one counts.
std::vector<Real> alpha_run_lengths(const EpSeq& alpha, std::size_t count);
std::vector<Real> mu_run_lengths(const EpSeq& mu, std::size_t count);

} // namespace dbx
