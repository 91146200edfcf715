#include <doctest.h>

#include <random>
#include <set>

#include "dbx/classify.hpp"
#include "dbx/dimension.hpp"
#include "dbx/phimap.hpp"

using namespace dbx;

namespace {

// Brute-force enumeration of the distinct leading nN-blocks (resp. interior
// segments) of one family coordinate, by filling free positions with every
// admissible block.
std::size_t enumerate_component_blocks(unsigned N, unsigned free_blocks, const Word& header) {
    std::vector<Word> admissible;
    for (std::uint64_t v = 1; v + 1 < (std::uint64_t(1) << N); ++v) {
        Word w(N, '0');
        for (unsigned b = 0; b < N; ++b) {
            if ((v >> (N - 1 - b)) & 1) w[b] = '1';
        }
        admissible.push_back(w);
    }
    std::set<Word> seen;
    std::vector<std::size_t> idx(free_blocks, 0);
    while (true) {
        Word word = header;
        for (std::size_t i = 0; i < free_blocks; ++i) word += admissible[idx[i]];
        seen.insert(word);
        std::size_t pos = 0;
        while (pos < free_blocks && ++idx[pos] == admissible.size()) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == free_blocks) break;
        if (free_blocks == 0) break;
    }
    return seen.size();
}

} // namespace

TEST_CASE("sample_family_pair: N=2 instance hits the canonical example") {
    FamilyParams p;
    p.N = 2;
    p.depth_blocks = 0;
    bool found = false;
    for (std::uint64_t seed = 0; seed < 64 && !found; ++seed) {
        p.seed = seed;
        const auto [mu, alpha] = sample_family_pair(p);
        if (mu == EpSeq("0001", "01") && alpha == EpSeq("1110", "10")) found = true;
    }
    CHECK(found);
}

TEST_CASE("sample_family_pair is deterministic under the seed") {
    FamilyParams p;
    p.N = 3;
    p.depth_blocks = 4;
    p.seed = 12345;
    const auto a = sample_family_pair(p);
    const auto b = sample_family_pair(p);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("property: every sampled pair lies in U2-prime") {
    FamilyParams p;
    p.N = 2;
    p.depth_blocks = 3;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        p.seed = seed;
        const auto [mu, alpha] = sample_family_pair(p);
        CHECK(in_U2_prime(mu, alpha).value.is_yes());
    }
}

TEST_CASE("property: sampled tails respect the sandwich bounds") {
    // mu^N < 0^{2N-2}1 0^inf < sigma^n(mu^N) < 1^{2N-2}0 1^inf < alpha^N
    for (unsigned N : {2u, 3u}) {
        FamilyParams p;
        p.N = N;
        p.depth_blocks = 2;
        const EpSeq lower(Word(2 * N - 2, '0') + "1", "0");
        const EpSeq upper(Word(2 * N - 2, '1') + "0", "1");
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            p.seed = seed;
            const auto [mu, alpha] = sample_family_pair(p);
            CHECK(compare_lex(mu, lower) == Ordering::Less);
            CHECK(compare_lex(upper, alpha) == Ordering::Less);
            for (const auto& [n, tail] : tails_with_shifts(mu, 1)) {
                (void)n;
                CHECK(compare_lex(lower, tail) == Ordering::Less);
            }
            for (const auto& [n, tail] : tails_with_shifts(alpha, 1)) {
                (void)n;
                CHECK(compare_lex(tail, upper) == Ordering::Less);
            }
        }
    }
}

TEST_CASE("block_count worked examples") {
    CHECK(block_count(2, 3, 2).initial == 4);
    CHECK(block_count(2, 2, 2).initial == 1);
    CHECK(block_count(3, 4, 2).initial == 1296);
    CHECK(block_count(3, 4, 3).middle == 36);
    CHECK_THROWS_AS(block_count(2, 3, 1), precondition_error);
    CHECK_THROWS_AS(block_count(2, 3, 4), precondition_error);
}

TEST_CASE("property: block counts match exhaustive enumeration for N in {2,3}, n <= 4") {
    for (unsigned N : {2u, 3u}) {
        for (unsigned n = 2; n <= 4; ++n) {
            // leading blocks: header fixed, n-2 free blocks per coordinate
            const std::size_t mu_initial =
                enumerate_component_blocks(N, n - 2, Word(2 * N - 1, '0') + "1");
            const std::size_t alpha_initial =
                enumerate_component_blocks(N, n - 2, Word(2 * N - 1, '1') + "0");
            CHECK(BigInt(mu_initial) * BigInt(alpha_initial) == block_count(N, n, 2).initial);
            // interior segments c_{kN+1..nN}: n-k free blocks, no header
            for (unsigned k = 2; k <= n; ++k) {
                const std::size_t per_coord = enumerate_component_blocks(N, n - k, "");
                CHECK(BigInt(per_coord) * BigInt(per_coord) == block_count(N, n, k).middle);
            }
        }
    }
}

TEST_CASE("separation_check") {
    precision_scope scope(128);
    FamilyParams p;
    p.N = 3;
    p.depth_blocks = 3;
    const auto points = family_preimages(p, 24, FamilyKind::Full);

    // identical pairs pass at every checked depth
    const BasePair q0(Real(points[0].first), Real(points[0].second), 128);
    const SeparationReport same = separation_check(q0, q0, 3, 0.2);
    CHECK(same.pass);
    CHECK(same.checked > 0);

    double eps = 0;
    for (const auto& [x, y] : points) eps = std::max(eps, std::max(x, y) - 2.0);

    std::mt19937_64 rng(79);
    int exercised_failure = 0;
    for (int i = 0; i < 30; ++i) {
        const auto& a = points[rng() % points.size()];
        const auto& b = points[rng() % points.size()];
        const BasePair qa(Real(a.first), Real(a.second), 128);
        const BasePair qb(Real(b.first), Real(b.second), 128);
        const SeparationReport rep = separation_check(qa, qb, 3, eps);
        CHECK(rep.pass);
        // negative control: overstating m must surface disagreements
        if (rep.m > 0 && a != b) {
            const auto [usable, disagreement] = forward_digit_agreement(qa, qb, rep.m + 10);
            (void)usable;
            if (disagreement > 0) ++exercised_failure;
        }
    }
    CHECK(exercised_failure > 0);
}

TEST_CASE("dimension estimate: degenerate and sanity cases") {
    FamilyParams p;
    p.N = 2;
    p.depth_blocks = 4;
    p.seed = 7;
    const std::vector<double> scales{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};

    // a single sample occupies one box at every scale
    const DimEstimate single = estimate_dimension(p, 1, scales);
    CHECK(single.slope == doctest::Approx(0.0));

    const DimEstimate est = estimate_dimension(p, 400, scales);
    CHECK(est.slope > 0.3);
    CHECK(est.slope < 2.2);
    CHECK(est.eps_N >= 0);
    for (std::size_t i = 1; i < est.counts.size(); ++i) {
        CHECK(est.counts[i] >= est.counts[i - 1]);  // halving the scale never loses boxes
    }
    CHECK(est.tau == doctest::Approx(1.0));

    CHECK_THROWS_AS(estimate_dimension(p, 10, {0.5}), precondition_error);
    CHECK_THROWS_AS(estimate_dimension(p, 10, {0.5, 0.5}), precondition_error);
}

TEST_CASE("dimension estimates at survey scale") {
    // 1e4 samples over scales 2^-4 .. 2^-12; slopes are stable across seeds
    std::vector<double> scales;
    for (int k = 4; k <= 12; ++k) scales.push_back(std::ldexp(1.0, -k));
    FamilyParams p2;
    p2.N = 2;
    p2.seed = 1;
    const DimEstimate e2 = estimate_dimension(p2, 10000, scales);
    CHECK(e2.slope > 1.0);
    CHECK(e2.slope <= 2.0);
    CHECK(e2.slope >= e2.analytic_bound - 0.15);
    FamilyParams p3;
    p3.N = 3;
    p3.seed = 1;
    const DimEstimate e3 = estimate_dimension(p3, 10000, scales);
    CHECK(e3.slope > e2.slope);  // monotone improvement toward 2
    const DimEstimate gap = estimate_dimension_gap(3, 10000, scales, 1);
    CHECK(gap.slope > 0.5);
    CHECK(gap.slope <= 1.5);
}

TEST_CASE("gap family members sit in closure minus U2") {
    FamilyParams p;
    p.N = 2;
    p.depth_blocks = 3;
    Word header(2 * p.N - 1, '0');
    header.push_back('1');
    const EpSeq frozen("", header);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        p.seed = seed;
        const auto [mu, alpha] = sample_family_pair(p);
        (void)mu;
        const PairClass pc = classify_pair(frozen, alpha);
        CHECK(pc.in_closureU2prime.is_yes());
        CHECK(pc.in_U2prime.is_no());
    }
}

TEST_CASE("property: family preimages cluster at (2,2) with a shrinking excess") {
    // The N=2 family sits entirely below 2 (empirical eps(2) = 0), the excess
    // peaks around N=4 and then decays toward 0; the smaller coordinate stays
    // below 2 for every member.
    auto family_eps = [](unsigned N) {
        FamilyParams p;
        p.N = N;
        p.seed = 11;
        double eps = 0;
        for (const auto& [x, y] : family_preimages(p, 300, FamilyKind::Full)) {
            CHECK(std::min(x, y) < 2.0);
            eps = std::max(eps, std::max(x, y) - 2.0);
        }
        return eps;
    };
    const double eps2 = family_eps(2);
    const double eps4 = family_eps(4);
    const double eps5 = family_eps(5);
    CHECK(eps2 == 0.0);
    CHECK(eps5 < eps4);  // the decaying regime
    CHECK(eps5 > 0.0);
}
