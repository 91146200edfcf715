#include "dbx/ineq.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dbx {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

void validate(const SeriesInput& in) {
    if (!(in.x > 1) || !(in.y > 1)) {
        throw precondition_error("eval_S: x and y must exceed 1");
    }
    for (const auto* seq : {&in.n_seq, &in.ntilde_seq}) {
        if (seq->empty()) throw precondition_error("eval_S: sequences must be nonempty");
        for (std::size_t i = 1; i < seq->size(); ++i) {
            if ((*seq)[i] < (*seq)[i - 1]) {
                throw precondition_error("eval_S: sequences must be non-decreasing");
            }
        }
    }
}

Real seq_at(const std::vector<Real>& seq, std::size_t k) {  // 1-based, constant extension
    return k <= seq.size() ? seq[k - 1] : seq.back();
}

struct PartialSums {
    Real s0;       // sum of weights
    Real s1;       // sum of index-weighted weights
    Real d0, d1;   // closed-form sums of the constant extension beyond K
};

// Weights u_k = t^{-e_k} r^{-k} for k = 1..K plus the k > K remainders,
// using sum_{k>K} r^-k = r^-K/(r-1) and
// sum_{k>K} k r^-k = r^-K (K(r-1)+r)/(r-1)^2 (differentiate the geometric
// series, or telescope sum_n n t^-n = sum_m sum_{n>=m} t^-n).
PartialSums axis_sums(const Real& t, const Real& r, const std::vector<Real>& seq,
                      std::size_t K) {
    PartialSums out{Real(0), Real(0), Real(0), Real(0)};
    Real rpow = 1;
    for (std::size_t k = 1; k <= K; ++k) {
        rpow /= r;
        const Real u = pow(t, -seq_at(seq, k)) * rpow;
        out.s0 += u;
        out.s1 += u * k;
    }
    const Real tail_scale = pow(t, -seq.back());
    const Real rK = pow(r, -static_cast<int>(K));
    out.d0 = tail_scale * rK / (r - 1);
    out.d1 = tail_scale * rK * (Real(static_cast<long>(K)) * (r - 1) + r) / ((r - 1) * (r - 1));
    return out;
}

} // namespace

SeriesValue eval_S(const SeriesInput& input, std::size_t K, unsigned precision_bits) {
    precision_scope scope(precision_bits);
    validate(input);
    if (K < std::max(input.n_seq.size(), input.ntilde_seq.size())) {
        throw precondition_error("eval_S: K must cover both sequence lengths");
    }
    const Real& x = input.x;
    const Real& y = input.y;
    const Real z = x * y / ((x - 1) * (y - 1));

    // The double sum factors: term(k,l) = (z - k*l) u_k v_l with
    // u_k = x^{-n_k} y^{-k} and v_l = x^{-l} y^{-n~_l}, so the K-truncation is
    // z*U0*V0 - U1*V1 and the remainder is bounded by the same products of
    // the axis tails (|z - k*l| <= z + k*l, and any non-decreasing
    // continuation only shrinks the weights below the constant extension).
    const PartialSums u = axis_sums(x, y, input.n_seq, K);
    const PartialSums v = axis_sums(y, x, input.ntilde_seq, K);

    const Real partial = z * u.s0 * v.s0 - u.s1 * v.s1;
    const Real tail0 = u.d0 * v.s0 + u.s0 * v.d0 + u.d0 * v.d0;
    const Real tail1 = u.d1 * v.s1 + u.s1 * v.d1 + u.d1 * v.d1;
    const Real tail_bound = z * tail0 + tail1;
    const Real pad = scalar_ops<Real>::epsilon(precision_bits) *
                     (abs(partial) + tail_bound + 1) * Real(1024);
    return SeriesValue{partial - tail_bound - pad, partial + tail_bound + pad};
}

SeriesValue eval_S_auto(const SeriesInput& input, double tail_target, unsigned precision_bits,
                        std::size_t* k_used) {
    std::size_t K = std::max<std::size_t>(
        16, std::max(input.n_seq.size(), input.ntilde_seq.size()) + 8);
    SeriesValue value = eval_S(input, K, precision_bits);
    while ((value.upper - value.lower) / 2 > Real(tail_target) && K < 65536) {
        K *= 2;
        value = eval_S(input, K, precision_bits);
    }
    if (k_used) *k_used = K;
    return value;
}

SeriesInput flatten_step(const SeriesInput& input, std::size_t kprime) {
    validate(input);
    if (kprime == 0 || kprime >= input.n_seq.size()) {
        throw precondition_error("flatten_step: k' must index a strict increase of n");
    }
    const Real delta = input.n_seq[kprime] - input.n_seq[kprime - 1];
    if (!(delta > 0)) {
        throw precondition_error("flatten_step: no strict increase at k'");
    }
    SeriesInput out = input;
    for (std::size_t k = kprime; k < out.n_seq.size(); ++k) {
        out.n_seq[k] -= delta;
    }
    return out;
}

SweepReport verify_positivity_sweep(const Real& x, const Real& y, std::size_t trials,
                                    std::uint64_t seed, unsigned precision_bits) {
    precision_scope scope(precision_bits);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, 12);
    std::uniform_int_distribution<int> val_dist(0, 8);

    auto random_seq = [&]() {
        std::vector<Real> seq(static_cast<std::size_t>(len_dist(rng)));
        std::vector<int> vals(seq.size());
        for (auto& v : vals) v = val_dist(rng);
        std::sort(vals.begin(), vals.end());
        for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = vals[i];
        return seq;
    };
    auto is_constant = [](const std::vector<Real>& seq) {
        return std::all_of(seq.begin(), seq.end(), [&](const Real& v) { return v == seq.front(); });
    };

    SweepReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        SeriesInput in{x, y, random_seq(), random_seq()};
        const SeriesValue v = eval_S_auto(in, 1e-10, precision_bits);
        const bool nonconstant = !is_constant(in.n_seq) || !is_constant(in.ntilde_seq);
        bool ok = v.lower >= Real(-1e-10);
        if (nonconstant) ok = ok && v.lower > 0;
        if (!ok) {
            ++report.failures;
            std::ostringstream oss;
            oss << "trial " << t << ": n=[";
            for (const auto& e : in.n_seq) oss << e << " ";
            oss << "] ntilde=[";
            for (const auto& e : in.ntilde_seq) oss << e << " ";
            oss << "] lower=" << v.lower;
            report.failed_inputs.push_back(oss.str());
        }
    }
    return report;
}

namespace {

std::vector<Real> run_lengths(const EpSeq& seq, char marker, char counted, std::size_t count,
                              const char* what) {
    if (seq.digit(1) != marker) {
        throw precondition_error(std::string(what) + ": first digit must be " + marker);
    }
    if (seq.per() == Word(1, counted) || seq.per() == Word(1, marker)) {
        // eventually constant tail: markers (or counted digits) run out
        throw precondition_error(std::string(what) +
                                 ": sequence must contain both digits infinitely often");
    }
    std::vector<Real> out;
    out.reserve(count);
    long counted_so_far = 0;
    for (std::size_t i = 2; out.size() < count; ++i) {
        const char d = seq.digit(i);
        if (d == counted) {
            ++counted_so_far;
        } else {
            out.emplace_back(counted_so_far);
        }
    }
    return out;
}

} // namespace

std::vector<Real> alpha_run_lengths(const EpSeq& alpha, std::size_t count) {
    return run_lengths(alpha, '1', '0', count, "alpha_run_lengths");
}

std::vector<Real> mu_run_lengths(const EpSeq& mu, std::size_t count) {
    return run_lengths(mu, '0', '1', count, "mu_run_lengths");
}

} // namespace dbx
