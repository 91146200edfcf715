#pragma once

// Test-only oracles, independent of the library's canonical-form and
// closed-form code paths.

#include <random>
#include <string>
#include <vector>

#include "dbx/epseq.hpp"
#include "dbx/numeric.hpp"

namespace dbx::testing {

// Digit prefix straight from the literal pre/per words, bypassing EpSeq.
inline std::string naive_prefix(const std::string& pre, const std::string& per, std::size_t n) {
    std::string s = pre;
    while (s.size() < n) s += per;
    return s.substr(0, n);
}

inline std::string naive_prefix(const EpSeq& a, std::size_t n) {
    return naive_prefix(a.pre(), a.per(), n);
}

// Partial sum of the defining series, no closed form involved.
inline Rational pi_partial_sum(const Rational& q0, const Rational& q1, const EpSeq& a,
                               std::size_t terms) {
    Rational sum = 0;
    Rational weight = 1;
    for (std::size_t i = 1; i <= terms; ++i) {
        weight /= (a.digit(i) == '1') ? q1 : q0;
        if (a.digit(i) == '1') sum += weight;
    }
    return sum;
}

inline Rational pi_tilde_partial_sum(const Rational& q0, const Rational& q1, const EpSeq& a,
                                     std::size_t terms) {
    Rational sum = 0;
    Rational weight = 1;
    for (std::size_t i = 1; i <= terms; ++i) {
        weight /= (a.digit(i) == '1') ? q1 : q0;
        if (a.digit(i) == '0') sum += weight;
    }
    return sum;
}

// All digit strings of the given length that can start an expansion of x:
// the scaled residual R must stay inside [0, 1/(q1-1)] after every digit.
inline void enumerate_expansions(const Rational& q0, const Rational& q1, const Rational& r,
                                 std::size_t depth, std::string& prefix,
                                 std::vector<std::string>& out, std::size_t cap) {
    if (out.size() >= cap) return;
    if (prefix.size() == depth) {
        out.push_back(prefix);
        return;
    }
    const Rational upper = 1 / (q1 - 1);
    const Rational r0 = q0 * r;
    if (r0 >= 0 && r0 <= upper) {
        prefix.push_back('0');
        enumerate_expansions(q0, q1, r0, depth, prefix, out, cap);
        prefix.pop_back();
    }
    const Rational r1 = q1 * r - 1;
    if (r1 >= 0 && r1 <= upper) {
        prefix.push_back('1');
        enumerate_expansions(q0, q1, r1, depth, prefix, out, cap);
        prefix.pop_back();
    }
}

inline std::vector<std::string> all_expansion_prefixes(const Rational& q0, const Rational& q1,
                                                       const Rational& x, std::size_t depth,
                                                       std::size_t cap = 1u << 20) {
    std::vector<std::string> out;
    std::string prefix;
    enumerate_expansions(q0, q1, x, depth, prefix, out, cap);
    return out;
}

inline EpSeq random_epseq(std::mt19937_64& rng, std::size_t max_pre = 4, std::size_t max_per = 8) {
    std::uniform_int_distribution<std::size_t> pre_len(0, max_pre);
    std::uniform_int_distribution<std::size_t> per_len(1, max_per);
    std::uniform_int_distribution<int> bit(0, 1);
    std::string pre(pre_len(rng), '0');
    for (auto& c : pre) c = bit(rng) ? '1' : '0';
    std::string per(per_len(rng), '0');
    for (auto& c : per) c = bit(rng) ? '1' : '0';
    return EpSeq(pre, per);
}

// Random member of B': mu is the minimal tail of a random sequence, alpha the
// maximal tail of another, with the degenerate C' shapes rejected.
inline std::pair<EpSeq, EpSeq> random_bprime_pair(std::mt19937_64& rng, std::size_t max_pre = 4,
                                                  std::size_t max_per = 8) {
    auto minimal_tail = [](const EpSeq& s) {
        EpSeq best = s;
        for (const EpSeq& t : distinct_tails(s)) {
            if (compare_lex(t, best) == Ordering::Less) best = t;
        }
        return best;
    };
    auto maximal_tail = [](const EpSeq& s) {
        EpSeq best = s;
        for (const EpSeq& t : distinct_tails(s)) {
            if (compare_lex(t, best) == Ordering::Greater) best = t;
        }
        return best;
    };
    while (true) {
        const EpSeq mu = minimal_tail(random_epseq(rng, max_pre, max_per));
        const EpSeq alpha = maximal_tail(random_epseq(rng, max_pre, max_per));
        if (mu == EpSeq::zeros() || alpha == EpSeq::ones()) continue;
        if (classify_seq(mu) != SeqKind::DoublyInfinite) continue;
        if (classify_seq(alpha) != SeqKind::DoublyInfinite) continue;
        if (mu.digit(1) != '0' || alpha.digit(1) != '1') continue;
        return {mu, alpha};
    }
}

} // namespace dbx::testing
