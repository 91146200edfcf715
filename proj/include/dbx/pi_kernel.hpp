#pragma once

// Closed-form evaluation of the projection maps on eventually periodic
// sequences, templated over the scalar type (double, Real, Rational).
//
// For a finite word w let discount(w) be the product of 1/q_{w_i}.  The value
// of a digit stream is sum_i d(w_i) * discount(w_1..w_i) with d(1) = 1 for pi
// and d(x) = 1 - x for pi-tilde.  On pre·per^inf this telescopes to
//   value(pre) + discount(pre) * value(per) / (1 - discount(per)).

#include "dbx/epseq.hpp"
#include "dbx/numeric.hpp"

namespace dbx::kernel {

template <typename S>
struct WordSum {
    S value;     // weighted digit sum of the word
    S discount;  // product of 1/q over the word's digits
};

// Accumulates value/discount over a finite word. numerator_on_one selects the
// pi convention (digit 1 contributes) versus pi-tilde (digit 0 contributes).
template <typename S>
WordSum<S> word_sum(const Word& w, const S& q0, const S& q1, bool numerator_on_one) {
    S one = scalar_ops<S>::from_long(1);
    WordSum<S> acc{scalar_ops<S>::from_long(0), one};
    for (char c : w) {
        acc.discount = acc.discount / (c == '1' ? q1 : q0);
        const bool contributes = (c == '1') == numerator_on_one;
        if (contributes) acc.value += acc.discount;
    }
    return acc;
}

template <typename S>
S eventually_periodic_sum(const EpSeq& a, const S& q0, const S& q1, bool numerator_on_one) {
    const WordSum<S> head = word_sum(a.pre(), q0, q1, numerator_on_one);
    const WordSum<S> cycle = word_sum(a.per(), q0, q1, numerator_on_one);
    S one = scalar_ops<S>::from_long(1);
    if (!(cycle.discount < one)) {
        throw numeric_error("series diverges: period discount >= 1");
    }
    return head.value + head.discount * cycle.value / (one - cycle.discount);
}

template <typename S>
S pi_value(const EpSeq& a, const S& q0, const S& q1) {
    return eventually_periodic_sum(a, q0, q1, true);
}

template <typename S>
S pi_tilde_value(const EpSeq& a, const S& q0, const S& q1) {
    return eventually_periodic_sum(a, q0, q1, false);
}

} // namespace dbx::kernel
