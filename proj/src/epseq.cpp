#include "dbx/epseq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dbx {

bool is_binary_word(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

void require_binary_word(const Word& w, const char* what) {
    if (!is_binary_word(w)) {
        throw precondition_error(std::string(what) + ": digits must be 0 or 1, got \"" + w + "\"");
    }
}

Word word_plus(const Word& w) {
    if (w.empty() || w.back() != '0') {
        throw precondition_error("word_plus: word must end in 0, got \"" + w + "\"");
    }
    Word out = w;
    out.back() = '1';
    return out;
}

Word word_minus(const Word& w) {
    if (w.empty() || w.back() != '1') {
        throw precondition_error("word_minus: word must end in 1, got \"" + w + "\"");
    }
    Word out = w;
    out.back() = '0';
    return out;
}

Word word_repeat(const Word& w, std::size_t n) {
    Word out;
    out.reserve(w.size() * n);
    for (std::size_t i = 0; i < n; ++i) out += w;
    return out;
}

Word word_conjugate(const Word& w) {
    Word out = w;
    for (char& c : out) c = (c == '0') ? '1' : '0';
    return out;
}

namespace {

// Smallest d dividing |w| such that w is a power of its length-d prefix.
std::size_t primitive_root_length(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) {
            ok = (w[i] == w[i - d]);
        }
        if (ok) return d;
    }
    return n;
}

} // namespace

EpSeq::EpSeq(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
    require_binary_word(pre_, "EpSeq preperiod");
    require_binary_word(per_, "EpSeq period");
    if (per_.empty()) {
        throw precondition_error("EpSeq: period must be nonempty");
    }
    per_ = per_.substr(0, primitive_root_length(per_));
    // Absorb trailing preperiod digits that merely repeat the rolled-back
    // period; this makes the preperiod minimal.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        per_ = per_.back() + per_.substr(0, per_.size() - 1);
    }
}

char EpSeq::digit(std::size_t i) const {
    if (i == 0) throw precondition_error("EpSeq::digit: indices are 1-based");
    if (i <= pre_.size()) return pre_[i - 1];
    return per_[(i - pre_.size() - 1) % per_.size()];
}

Word EpSeq::prefix(std::size_t n) const {
    Word out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) out.push_back(digit(i));
    return out;
}

std::size_t first_difference(const EpSeq& a, const EpSeq& b) {
    if (a == b) return 0;
    const std::size_t bound =
        a.pre().size() + b.pre().size() + std::lcm(a.per().size(), b.per().size());
    for (std::size_t i = 1; i <= bound; ++i) {
        if (a.digit(i) != b.digit(i)) return i;
    }
    return 0;  // unreachable for canonical forms
}

Ordering compare_lex(const EpSeq& a, const EpSeq& b) {
    const std::size_t j = first_difference(a, b);
    if (j == 0) return Ordering::Equal;
    return a.digit(j) < b.digit(j) ? Ordering::Less : Ordering::Greater;
}

bool EpSeq::operator<(const EpSeq& other) const {
    return compare_lex(*this, other) == Ordering::Less;
}

EpSeq shift(const EpSeq& a, std::size_t n) {
    if (n <= a.pre().size()) {
        return EpSeq(a.pre().substr(n), a.per());
    }
    const std::size_t k = (n - a.pre().size()) % a.per().size();
    return EpSeq("", a.per().substr(k) + a.per().substr(0, k));
}

EpSeq conjugate(const EpSeq& a) {
    return EpSeq(word_conjugate(a.pre()), word_conjugate(a.per()));
}

SeqKind classify_seq(const EpSeq& a) {
    // In canonical form a sequence ends in 0^inf iff its period is "0", and a
    // nonempty minimal preperiod then necessarily ends in 1. The constant
    // sequences 0^inf and 1^inf count as doubly-infinite.
    if (a.per() == "0" && !a.pre().empty()) return SeqKind::Finite;
    if (a.per() == "1" && !a.pre().empty()) return SeqKind::CoFinite;
    return SeqKind::DoublyInfinite;
}

std::vector<EpSeq> distinct_tails(const EpSeq& a) {
    std::vector<EpSeq> out;
    const std::size_t bound = a.pre().size() + a.per().size();
    for (std::size_t n = 0; n < bound; ++n) {
        EpSeq t = shift(a, n);
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::pair<std::size_t, EpSeq>> tails_with_shifts(const EpSeq& a,
                                                             std::size_t min_shift) {
    std::vector<std::pair<std::size_t, EpSeq>> out;
    const std::size_t bound = a.pre().size() + a.per().size() + min_shift;
    for (std::size_t n = min_shift; n < bound; ++n) {
        EpSeq t = shift(a, n);
        bool seen = std::any_of(out.begin(), out.end(),
                                [&](const auto& p) { return p.second == t; });
        if (!seen) out.emplace_back(n, std::move(t));
    }
    return out;
}

double seq_metric(const EpSeq& a, const EpSeq& b) {
    const std::size_t j = first_difference(a, b);
    if (j == 0) return 0.0;
    return std::ldexp(1.0, -static_cast<int>(j));
}

double pair_metric(const EpSeq& a, const EpSeq& b, const EpSeq& a2, const EpSeq& b2) {
    return std::max(seq_metric(a, a2), seq_metric(b, b2));
}

EpSeq EpSeq::parse(const std::string& literal) {
    const std::size_t open = literal.find('(');
    if (open == std::string::npos || literal.size() < open + 3 ||
        literal.compare(literal.size() - 2, 2, ")*") != 0) {
        throw precondition_error("sequence literal must have the form PRE(PER)*, got \"" +
                                 literal + "\"");
    }
    Word pre = literal.substr(0, open);
    Word per = literal.substr(open + 1, literal.size() - open - 3);
    if (per.empty()) {
        throw precondition_error("sequence literal: period must be nonempty in \"" + literal +
                                 "\"");
    }
    return EpSeq(std::move(pre), std::move(per));
}

std::string EpSeq::to_literal() const { return pre_ + "(" + per_ + ")*"; }

} // namespace dbx
