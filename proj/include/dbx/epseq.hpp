#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dbx/errors.hpp"

namespace dbx {

// A finite binary word, stored as a string over {'0','1'} so that string
// comparison coincides with lexicographic order on words of equal length.
using Word = std::string;

bool is_binary_word(const Word& w);
void require_binary_word(const Word& w, const char* what);

// w with its final digit raised 0->1. Requires a nonempty word ending in 0.
Word word_plus(const Word& w);
// w with its final digit lowered 1->0. Requires a nonempty word ending in 1.
Word word_minus(const Word& w);
Word word_repeat(const Word& w, std::size_t n);
Word word_conjugate(const Word& w);

enum class Ordering { Less, Equal, Greater };

enum class SeqKind { Finite, CoFinite, DoublyInfinite };

// An eventually periodic binary sequence pre·per^inf, held in canonical form:
// the period is primitive and the preperiod is minimal (its last digit differs
// from the corresponding rolled-back period digit). Two values denote the same
// infinite sequence iff their canonical forms compare equal.
class EpSeq {
public:
    // Canonicalizes on construction. The period must be nonempty.
    EpSeq(Word preperiod, Word period);

    static EpSeq zeros() { return EpSeq("", "0"); }
    static EpSeq ones() { return EpSeq("", "1"); }
    // Parses the literal grammar PRE(PER)*, e.g. "0001(01)*".
    static EpSeq parse(const std::string& literal);

    const Word& pre() const { return pre_; }
    const Word& per() const { return per_; }

    // 1-based digit access.
    char digit(std::size_t i) const;
    Word prefix(std::size_t n) const;

    bool operator==(const EpSeq& other) const { return pre_ == other.pre_ && per_ == other.per_; }
    bool operator!=(const EpSeq& other) const { return !(*this == other); }
    bool operator<(const EpSeq& other) const;  // lexicographic on the infinite sequences

    std::string to_literal() const;

private:
    Word pre_;
    Word per_;
};

Ordering compare_lex(const EpSeq& a, const EpSeq& b);

// sigma^n(a) in canonical form.
EpSeq shift(const EpSeq& a, std::size_t n);

// Digitwise complement.
EpSeq conjugate(const EpSeq& a);

SeqKind classify_seq(const EpSeq& a);

// All distinct tails {sigma^n(a) : n >= 0}; size <= |pre| + |per|.
std::vector<EpSeq> distinct_tails(const EpSeq& a);

// Distinct (shift, tail) pairs with the smallest shift reaching each tail,
// restricted to shift >= min_shift. Used for witness reporting.
std::vector<std::pair<std::size_t, EpSeq>> tails_with_shifts(const EpSeq& a,
                                                             std::size_t min_shift);

// 2^-j with j the first disagreement index; 0 when equal.
double seq_metric(const EpSeq& a, const EpSeq& b);

// max(d(a,a2), d(b,b2)) on pairs.
double pair_metric(const EpSeq& a, const EpSeq& b, const EpSeq& a2, const EpSeq& b2);

// First index (1-based) where the sequences differ, or 0 if equal.
std::size_t first_difference(const EpSeq& a, const EpSeq& b);

} // namespace dbx
