#include "dbx/classify.hpp"

#include <algorithm>

#include "dbx/phimap.hpp"
#include "dbx/pi_kernel.hpp"

namespace dbx {

namespace {

std::string shift_str(const char* seq, std::size_t m) {
    return "sigma^" + std::to_string(m) + "(" + seq + ")";
}

void require_sigma_membership(const EpSeq& mu, const EpSeq& alpha) {
    if (mu.digit(1) != '0') throw precondition_error("mu must start with 0");
    if (alpha.digit(1) != '1') throw precondition_error("alpha must start with 1");
}

} // namespace

bool in_C_prime(const EpSeq& mu, const EpSeq& alpha) {
    require_sigma_membership(mu, alpha);
    const SeqKind mk = classify_seq(mu);
    const SeqKind ak = classify_seq(alpha);
    return mk == SeqKind::CoFinite || mu == EpSeq::zeros() || ak == SeqKind::Finite ||
           alpha == EpSeq::ones();
}

Verdict in_B_prime(const EpSeq& mu, const EpSeq& alpha) {
    require_sigma_membership(mu, alpha);
    if (in_C_prime(mu, alpha)) {
        return {Tri::no(), Witness{"pair", 0, "(mu, alpha) lies in C'"}};
    }
    for (const auto& [m, tail] : tails_with_shifts(mu, 0)) {
        if (compare_lex(mu, tail) == Ordering::Greater) {
            return {Tri::no(), Witness{"mu", m, shift_str("mu", m) + " < mu"}};
        }
    }
    for (const auto& [n, tail] : tails_with_shifts(alpha, 0)) {
        if (compare_lex(tail, alpha) == Ordering::Greater) {
            return {Tri::no(), Witness{"alpha", n, shift_str("alpha", n) + " > alpha"}};
        }
    }
    return {Tri::yes(), {}};
}

Verdict in_U2_prime(const EpSeq& mu, const EpSeq& alpha) {
    require_sigma_membership(mu, alpha);
    for (const auto& [m, tail] : tails_with_shifts(mu, 1)) {
        if (compare_lex(mu, tail) != Ordering::Less) {
            return {Tri::no(), Witness{"mu", m, "mu < " + shift_str("mu", m) + " fails"}};
        }
        if (compare_lex(tail, alpha) != Ordering::Less) {
            return {Tri::no(), Witness{"mu", m, shift_str("mu", m) + " < alpha fails"}};
        }
    }
    for (const auto& [n, tail] : tails_with_shifts(alpha, 1)) {
        if (compare_lex(mu, tail) != Ordering::Less) {
            return {Tri::no(), Witness{"alpha", n, "mu < " + shift_str("alpha", n) + " fails"}};
        }
        if (compare_lex(tail, alpha) != Ordering::Less) {
            return {Tri::no(), Witness{"alpha", n, shift_str("alpha", n) + " < alpha fails"}};
        }
    }
    return {Tri::yes(), {}};
}

Verdict in_V2_prime(const EpSeq& mu, const EpSeq& alpha) {
    require_sigma_membership(mu, alpha);
    for (const auto& [m, tail] : tails_with_shifts(mu, 0)) {
        if (compare_lex(mu, tail) == Ordering::Greater) {
            return {Tri::no(), Witness{"mu", m, "mu <= " + shift_str("mu", m) + " fails"}};
        }
        if (compare_lex(tail, alpha) == Ordering::Greater) {
            return {Tri::no(), Witness{"mu", m, shift_str("mu", m) + " <= alpha fails"}};
        }
    }
    for (const auto& [n, tail] : tails_with_shifts(alpha, 0)) {
        if (compare_lex(mu, tail) == Ordering::Greater) {
            return {Tri::no(), Witness{"alpha", n, "mu <= " + shift_str("alpha", n) + " fails"}};
        }
        if (compare_lex(tail, alpha) == Ordering::Greater) {
            return {Tri::no(), Witness{"alpha", n, shift_str("alpha", n) + " <= alpha fails"}};
        }
    }
    return {Tri::yes(), {}};
}

namespace {

// Smallest shift >= 1 with sigma^m(a) == target, if any.
std::optional<std::size_t> shift_reaching(const EpSeq& a, const EpSeq& target) {
    for (const auto& [m, tail] : tails_with_shifts(a, 1)) {
        if (tail == target) return m;
    }
    return {};
}

} // namespace

Verdict in_closure_U2_prime(const EpSeq& mu, const EpSeq& alpha) {
    Verdict v2 = in_V2_prime(mu, alpha);
    if (!v2.value.is_yes()) return v2;
    const auto m = shift_reaching(mu, alpha);
    const auto n = shift_reaching(alpha, mu);
    if (m && n) {
        return {Tri::no(), Witness{"pair", *m,
                                   shift_str("mu", *m) + " = alpha and " +
                                       shift_str("alpha", *n) + " = mu (isolated point)"}};
    }
    return {Tri::yes(), {}};
}

PairClass classify_pair(const EpSeq& mu, const EpSeq& alpha) {
    PairClass out;
    out.in_Cprime = in_C_prime(mu, alpha) ? Tri::yes() : Tri::no();
    Verdict b = in_B_prime(mu, alpha);
    Verdict u = in_U2_prime(mu, alpha);
    Verdict v = in_V2_prime(mu, alpha);
    Verdict cl = in_closure_U2_prime(mu, alpha);
    out.in_Bprime = b.value;
    out.in_U2prime = u.value;
    out.in_V2prime = v.value;
    out.in_closureU2prime = cl.value;
    out.in_VminusClosure =
        (v.value.is_yes() && cl.value.is_no()) ? Tri::yes() : Tri::no();
    if (cl.witness) {
        out.witness = cl.witness;
    } else if (u.witness) {
        out.witness = u.witness;
    } else if (v.witness) {
        out.witness = v.witness;
    } else if (b.witness) {
        out.witness = b.witness;
    }
    if (out.in_VminusClosure.is_yes()) {
        const auto m = shift_reaching(mu, alpha);
        const auto n = shift_reaching(alpha, mu);
        if (m && n) {
            out.periodic_uv = std::make_pair(mu.prefix(*m), alpha.prefix(*n));
        }
    }
    return out;
}

std::optional<Witness> bprime_violation(const EpSeq& mu, const EpSeq& alpha) {
    Verdict v = in_B_prime(mu, alpha);
    if (v.value.is_yes()) return {};
    if (v.witness) return v.witness;
    return Witness{"pair", 0, "not in B'"};
}

// ---- prefix (three-valued) predicates ----

namespace {

enum class PrefixCmp { Less, Greater, EqualOnOverlap };

PrefixCmp compare_words_partial(const Word& a, const Word& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? PrefixCmp::Less : PrefixCmp::Greater;
    }
    return PrefixCmp::EqualOnOverlap;
}

// Checks "L rel tail(w, m) rel R" style conditions over all shifts of a
// prefix. Returns No on a resolved violation, Unknown otherwise (a prefix can
// never certify conditions at unseen shifts).
Tri prefix_sandwich(const Word& mu_prefix, const Word& alpha_prefix, bool strict) {
    const std::size_t depth = std::min(mu_prefix.size(), alpha_prefix.size());
    const std::size_t min_shift = strict ? 1 : 0;
    // Strict and weak variants share the refutation logic: only a resolved
    // inversion is final, equality over the overlap stays open either way.
    for (const Word* w : {&mu_prefix, &alpha_prefix}) {
        for (std::size_t m = min_shift; m + 1 <= w->size(); ++m) {
            const Word tail = w->substr(m);
            if (compare_words_partial(tail, mu_prefix) == PrefixCmp::Less) return Tri::no();
            if (compare_words_partial(tail, alpha_prefix) == PrefixCmp::Greater) return Tri::no();
        }
    }
    return Tri::unknown(depth);
}

} // namespace

Tri prefix_in_U2_prime(const Word& mu_prefix, const Word& alpha_prefix) {
    return prefix_sandwich(mu_prefix, alpha_prefix, true);
}

Tri prefix_in_V2_prime(const Word& mu_prefix, const Word& alpha_prefix) {
    return prefix_sandwich(mu_prefix, alpha_prefix, false);
}

// ---- classify_base_pair ----

namespace {

// Candidate (preperiod length, period length) explaining the prefix: the
// period must repeat across the whole second half and extend back to s.
std::optional<EpSeq> detect_eventually_periodic(const Word& prefix) {
    const std::size_t c = prefix.size();
    if (c < 8) return {};
    for (std::size_t p = 1; p <= c / 3; ++p) {
        bool ok = true;
        for (std::size_t i = c / 2; i + p < c && ok; ++i) {
            ok = (prefix[i] == prefix[i + p]);
        }
        if (!ok) continue;
        std::size_t s = c / 2;
        while (s > 0 && prefix[s - 1] == prefix[s - 1 + p]) --s;
        if (s + 2 * p > c) continue;  // want at least two visible periods
        return EpSeq(prefix.substr(0, s), prefix.substr(s, p));
    }
    return {};
}

} // namespace

BaseClass classify_base_pair(const BasePair& q, std::size_t depth, const SolveConfig& cfg) {
    precision_scope scope(cfg.precision_bits);
    BaseClass out;
    out.region = q.region();
    if (q.region() == Region::C) {
        out.in_U2 = out.in_V2 = out.in_closureU2 = Tri::yes();
        out.certification_depth = depth;
        out.exact = true;
        return out;
    }
    if (q.region() == Region::Outside) {
        out.in_U2 = out.in_V2 = out.in_closureU2 = Tri::no();
        out.certification_depth = depth;
        out.exact = true;
        return out;
    }

    const PhiForward fwd = phi_forward(q, depth);
    const std::size_t c = fwd.certified;
    out.certification_depth = c;
    const Word mu_prefix = fwd.mu_prefix.substr(0, c);
    const Word alpha_prefix = fwd.alpha_prefix.substr(0, c);

    // Detection scans shrinking prefix windows: digits near the end of the
    // run drift once the input's own accuracy runs out (and exact ties stall
    // the margin certificate), so a clean shorter window may succeed where
    // the full prefix fails. The residual confirmation at the given bases is
    // the actual gate against false eventual-periodicity claims.
    const Real confirm_tol = Real(cfg.confirm_tol);
    for (const double frac : {1.0, 0.75, 0.5, 0.375, 0.25}) {
        const auto window = static_cast<std::size_t>(static_cast<double>(depth) * frac);
        if (window < 8) break;
        auto cand_mu = detect_eventually_periodic(fwd.mu_prefix.substr(0, window));
        auto cand_alpha = detect_eventually_periodic(fwd.alpha_prefix.substr(0, window));
        if (!cand_mu || !cand_alpha || bprime_violation(*cand_mu, *cand_alpha)) continue;
        using detail_abs = scalar_ops<Real>;
        const Real rf =
            detail_abs::abs(kernel::pi_value<Real>(*cand_alpha, q.q0(), q.q1()) - q.q0() / q.q1());
        const Real rft = detail_abs::abs(kernel::pi_tilde_value<Real>(*cand_mu, q.q0(), q.q1()) -
                                         q.q1() / q.q0());
        if (rf < confirm_tol && rft < confirm_tol) {
            const PairClass pc = classify_pair(*cand_mu, *cand_alpha);
            out.in_U2 = pc.in_U2prime;
            out.in_closureU2 = pc.in_closureU2prime;
            out.in_V2 = pc.in_V2prime;
            out.exact = true;
            out.detected_mu = cand_mu;
            out.detected_alpha = cand_alpha;
            return out;
        }
    }

    out.in_U2 = prefix_in_U2_prime(mu_prefix, alpha_prefix);
    out.in_V2 = prefix_in_V2_prime(mu_prefix, alpha_prefix);
    out.in_closureU2 = out.in_V2.is_no() ? Tri::no() : Tri::unknown(c);
    if (out.in_V2.is_no()) out.in_U2 = Tri::no();
    return out;
}

StabilityReport perturbation_stability_probe(const BasePair& q, double eps, std::size_t depth) {
    q.require_expandable("perturbation_stability_probe");
    precision_scope scope(q.precision_bits());
    const CriticalPoints cp = critical_points(q);

    auto run4 = [&](const BasePair& base) {
        const CriticalPoints c = critical_points(base);
        struct Four {
            Word beta, alpha, lambda, mu;
        } f;
        f.beta = run_algorithm(base, ExpansionPoint::from_real(c.r), ExpansionMode::Greedy, depth)
                     .digits;
        f.alpha = run_algorithm(base, ExpansionPoint::from_real(c.r), ExpansionMode::QuasiGreedy,
                                depth)
                      .digits;
        f.lambda =
            run_algorithm(base, ExpansionPoint::from_real(c.ell), ExpansionMode::Lazy, depth)
                .digits;
        f.mu = run_algorithm(base, ExpansionPoint::from_real(c.ell), ExpansionMode::QuasiLazy,
                             depth)
                   .digits;
        return f;
    };
    const auto center = run4(q);
    (void)cp;

    auto agreement = [](const Word& a, const Word& b) {
        std::size_t n = 0;
        while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
        return n;
    };

    StabilityReport report;
    report.min_agreement = depth;
    const double offsets[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& d : offsets) {
        const Real nq0 = q.q0() + Real(d[0] * eps);
        const Real nq1 = q.q1() + Real(d[1] * eps);
        if (!(nq0 > 1) || !(nq1 > 1)) continue;
        BasePair nb(nq0, nq1, q.precision_bits());
        if (nb.region() == Region::Outside) continue;
        const auto moved = run4(nb);

        // The case split picks which of the greedy/quasi-greedy (resp.
        // lazy/quasi-lazy) expansions must share a long prefix. When the
        // order of the quasi expansions is unresolved at this depth they
        // already agree throughout, so that side's agreement is the depth.
        StabilityReport::Neighbor entry;
        entry.dq0 = d[0] * eps;
        entry.dq1 = d[1] * eps;
        const PrefixCmp alpha_order = compare_words_partial(moved.alpha, center.alpha);
        if (alpha_order == PrefixCmp::Less) {
            entry.alpha_side_agreement = agreement(moved.alpha, center.alpha);
        } else if (alpha_order == PrefixCmp::Greater) {
            entry.alpha_side_agreement = agreement(moved.beta, center.beta);
        } else {
            entry.alpha_side_agreement = depth;
        }
        const PrefixCmp mu_order = compare_words_partial(moved.mu, center.mu);
        if (mu_order == PrefixCmp::Greater) {
            entry.mu_side_agreement = agreement(moved.mu, center.mu);
        } else if (mu_order == PrefixCmp::Less) {
            entry.mu_side_agreement = agreement(moved.lambda, center.lambda);
        } else {
            entry.mu_side_agreement = depth;
        }
        report.min_agreement = std::min(
            {report.min_agreement, entry.alpha_side_agreement, entry.mu_side_agreement});
        report.neighbors.push_back(entry);
    }
    return report;
}

// ---- approximating-family constructions ----

namespace {

std::size_t cut_search_bound(const EpSeq& s) { return s.pre().size() + 4 * s.per().size(); }

} // namespace

std::vector<std::size_t> mu_cut_indices(const EpSeq& mu) {
    std::vector<std::size_t> out;
    const std::size_t bound = cut_search_bound(mu);
    for (std::size_t n = 2; n <= bound; ++n) {
        if (mu.digit(n) != '1') continue;
        bool ok = true;
        for (std::size_t j = 1; j < n && ok; ++j) {
            // need mu_{j+1}..mu_n > mu_1..mu_{n-j} strictly
            bool greater = false;
            for (std::size_t i = 0; i + j < n; ++i) {
                const char suffix_digit = mu.digit(j + 1 + i);
                const char prefix_digit = mu.digit(1 + i);
                if (suffix_digit != prefix_digit) {
                    greater = suffix_digit > prefix_digit;
                    break;
                }
            }
            ok = greater;
        }
        if (ok) out.push_back(n);
    }
    return out;
}

std::vector<std::size_t> alpha_cut_indices(const EpSeq& alpha) {
    std::vector<std::size_t> out;
    const std::size_t bound = cut_search_bound(alpha);
    for (std::size_t m = 2; m <= bound; ++m) {
        if (alpha.digit(m) != '0') continue;
        bool ok = true;
        for (std::size_t j = 1; j < m && ok; ++j) {
            bool less = false;
            for (std::size_t i = 0; i + j < m; ++i) {
                const char suffix_digit = alpha.digit(j + 1 + i);
                const char prefix_digit = alpha.digit(1 + i);
                if (suffix_digit != prefix_digit) {
                    less = suffix_digit < prefix_digit;
                    break;
                }
            }
            ok = less;
        }
        if (ok) out.push_back(m);
    }
    return out;
}

std::pair<EpSeq, EpSeq> build_approximant_U2prime(const EpSeq& mu, const EpSeq& alpha,
                                                  std::size_t k) {
    const std::vector<std::size_t> cuts = mu_cut_indices(mu);
    if (k + 1 >= cuts.size()) {
        throw precondition_error(
            "build_approximant_U2prime: not applicable, fewer than k+2 valid cut indices below "
            "the search bound");
    }
    const std::size_t nk = cuts[k];
    const std::size_t nk1 = cuts[k + 1];
    return {EpSeq(mu.prefix(nk), mu.prefix(nk1)), alpha};
}

std::pair<EpSeq, EpSeq> build_VminusClosure_witness(const EpSeq& mu, const EpSeq& alpha,
                                                    std::size_t n, std::size_t m) {
    if (n == 0 || mu.digit(n) != '1') {
        throw precondition_error("build_VminusClosure_witness: mu_n must be 1");
    }
    if (m == 0 || alpha.digit(m) != '0') {
        throw precondition_error("build_VminusClosure_witness: alpha_m must be 0");
    }
    const Word mu_cut = word_minus(mu.prefix(n));
    const Word alpha_cut = word_plus(alpha.prefix(m));
    return {EpSeq("", mu_cut + alpha_cut), EpSeq("", alpha_cut + mu_cut)};
}

std::vector<std::pair<EpSeq, EpSeq>> approximating_neighbors(const EpSeq& mu, const EpSeq& alpha,
                                                             std::size_t depth) {
    std::vector<std::pair<EpSeq, EpSeq>> candidates;

    const auto mu_cuts = mu_cut_indices(mu);
    for (std::size_t k = 0; k + 1 < mu_cuts.size(); ++k) {
        if (mu_cuts[k] < depth) continue;
        candidates.emplace_back(EpSeq(mu.prefix(mu_cuts[k]), mu.prefix(mu_cuts[k + 1])), alpha);
        break;
    }
    const auto alpha_cuts = alpha_cut_indices(alpha);
    for (std::size_t m : alpha_cuts) {
        if (m < depth) continue;
        candidates.emplace_back(mu, EpSeq("", alpha.prefix(m)));
        break;
    }
    {
        auto n_it = std::find_if(mu_cuts.begin(), mu_cuts.end(),
                                 [&](std::size_t n) { return n >= depth; });
        auto m_it = std::find_if(alpha_cuts.begin(), alpha_cuts.end(),
                                 [&](std::size_t m) { return m >= depth; });
        if (n_it != mu_cuts.end() && m_it != alpha_cuts.end()) {
            candidates.push_back(build_VminusClosure_witness(mu, alpha, *n_it, *m_it));
        }
    }
    // Periodic flip-completions: raise the first 0 of mu past `depth` (or
    // lower the first 1 of alpha) and repeat the adjusted prefix. These exist
    // for every doubly-infinite input, including isolated points of V'2.
    const std::size_t scan = depth + mu.pre().size() + alpha.pre().size() +
                             2 * std::max(mu.per().size(), alpha.per().size()) + 2;
    std::optional<EpSeq> mu_flip, alpha_flip;
    for (std::size_t j = depth + 1; j <= scan; ++j) {
        if (!mu_flip && mu.digit(j) == '0') mu_flip = EpSeq("", word_plus(mu.prefix(j)));
        if (!alpha_flip && alpha.digit(j) == '1') alpha_flip = EpSeq("", word_minus(alpha.prefix(j)));
    }
    if (mu_flip) candidates.emplace_back(*mu_flip, alpha);
    if (alpha_flip) candidates.emplace_back(mu, *alpha_flip);
    if (mu_flip && alpha_flip) candidates.emplace_back(*mu_flip, *alpha_flip);

    std::vector<std::pair<EpSeq, EpSeq>> out;
    for (auto& cand : candidates) {
        if (cand.first == mu && cand.second == alpha) continue;
        if (bprime_violation(cand.first, cand.second)) continue;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& c) {
            return c.first == cand.first && c.second == cand.second;
        });
        if (!dup) out.push_back(std::move(cand));
    }
    return out;
}

} // namespace dbx
