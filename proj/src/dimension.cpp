#include "dbx/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "dbx/phimap.hpp"
#include "dbx/solve_detail.hpp"

namespace dbx {

namespace {

Word random_admissible_block(std::mt19937_64& rng, unsigned N) {
    // any N-block strictly between 0^N and 1^N, i.e. value in [1, 2^N - 2]
    std::uniform_int_distribution<std::uint64_t> dist(1, (std::uint64_t(1) << N) - 2);
    const std::uint64_t v = dist(rng);
    Word block(N, '0');
    for (unsigned b = 0; b < N; ++b) {
        if ((v >> (N - 1 - b)) & 1) block[b] = '1';
    }
    return block;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::pair<EpSeq, EpSeq> sample_family_pair(const FamilyParams& p) {
    if (p.N < 2 || p.N > 30) throw precondition_error("sample_family_pair: N must be in [2, 30]");
    std::mt19937_64 rng(p.seed);

    Word mu_pre(2 * p.N - 1, '0');
    mu_pre.push_back('1');
    Word alpha_pre(2 * p.N - 1, '1');
    alpha_pre.push_back('0');
    for (std::size_t b = 0; b < p.depth_blocks; ++b) mu_pre += random_admissible_block(rng, p.N);
    for (std::size_t b = 0; b < p.depth_blocks; ++b) alpha_pre += random_admissible_block(rng, p.N);
    const Word mu_per = random_admissible_block(rng, p.N);
    const Word alpha_per = random_admissible_block(rng, p.N);
    return {EpSeq(mu_pre, mu_per), EpSeq(alpha_pre, alpha_per)};
}

BlockCounts block_count(unsigned N, unsigned n, unsigned k) {
    if (N < 2) throw precondition_error("block_count: N must be >= 2");
    if (k < 2 || k > n) throw precondition_error("block_count: need 2 <= k <= n");
    const BigInt base = boost::multiprecision::pow(BigInt(2), N) - 2;
    BlockCounts out;
    out.initial = boost::multiprecision::pow(base, 2 * (n - 2));
    out.middle = boost::multiprecision::pow(base, 2 * (n - k));
    return out;
}

std::pair<std::size_t, std::size_t> forward_digit_agreement(const BasePair& q,
                                                            const BasePair& q2,
                                                            std::size_t depth) {
    const PhiForward a = phi_forward(q, depth);
    const PhiForward b = phi_forward(q2, depth);
    const std::size_t usable = std::min({depth, a.certified, b.certified});
    std::size_t first_disagreement = 0;
    for (std::size_t i = 0; i < usable; ++i) {
        if (a.mu_prefix[i] != b.mu_prefix[i] || a.alpha_prefix[i] != b.alpha_prefix[i]) {
            first_disagreement = i + 1;
            break;
        }
    }
    return {usable, first_disagreement};
}

SeparationReport separation_check(const BasePair& q, const BasePair& q2, unsigned N,
                                  double eps_N) {
    SeparationReport report;
    const double d = std::max(std::fabs(static_cast<double>(q.q0() - q2.q0())),
                              std::fabs(static_cast<double>(q.q1() - q2.q1())));
    const double base = 2.0 + eps_N;
    report.distance = d;
    report.constant = std::pow(base, -2.0 * N + 3.0);
    if (d <= 0) {
        report.m = 64;  // identical pairs: check as far as certification allows
    } else {
        const double m_real = std::log(report.constant / d) / std::log(base);
        if (m_real < 1) {
            report.m = 0;  // implication is vacuous at this distance
            return report;
        }
        report.m = static_cast<std::size_t>(m_real);
    }
    const auto [usable, disagreement] = forward_digit_agreement(q, q2, report.m);
    report.checked = usable;
    report.first_disagreement = disagreement;
    report.pass = (disagreement == 0);
    return report;
}

std::vector<std::pair<double, double>> family_preimages(const FamilyParams& p,
                                                        std::size_t samples, FamilyKind kind) {
    detail::SolveOpts opts;
    opts.root_tol = 1e-11;
    opts.precision_bits = 53;

    EpSeq frozen_mu = EpSeq::zeros();
    if (kind == FamilyKind::Gap) {
        Word header(2 * p.N - 1, '0');
        header.push_back('1');
        frozen_mu = EpSeq("", header);
    }

    std::vector<std::pair<double, double>> points;
    points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        FamilyParams sp = p;
        sp.seed = mix_seed(p.seed, i);
        auto [mu, alpha] = sample_family_pair(sp);
        if (kind == FamilyKind::Gap) mu = frozen_mu;
        const auto solved = detail::phi_inverse_solve<double>(mu, alpha, opts);
        points.emplace_back(solved.q0, solved.q1);
    }
    return points;
}

namespace {

std::size_t occupied_boxes(const std::vector<std::pair<double, double>>& points, double scale) {
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(points.size() * 2);
    for (const auto& [x, y] : points) {
        const auto ix = static_cast<std::uint64_t>(x / scale);
        const auto iy = static_cast<std::uint64_t>(y / scale);
        cells.insert((ix << 32) | (iy & 0xFFFFFFFFull));
    }
    return cells.size();
}

} // namespace

DimEstimate estimate_dimension(const FamilyParams& p, std::size_t samples,
                               const std::vector<double>& scales, FamilyKind kind) {
    if (scales.size() < 2) throw precondition_error("estimate_dimension: need at least 2 scales");
    for (std::size_t i = 1; i < scales.size(); ++i) {
        if (!(scales[i] < scales[i - 1])) {
            throw precondition_error("estimate_dimension: scales must be strictly decreasing");
        }
    }

    DimEstimate est;
    est.N = p.N;
    est.sample_count = samples;
    est.scales = scales;

    const auto points = family_preimages(p, samples, kind);
    double eps = 0;
    for (const auto& [x, y] : points) eps = std::max(eps, std::max(x, y) - 2.0);
    est.eps_N = eps;

    est.counts.reserve(scales.size());
    for (double s : scales) est.counts.push_back(occupied_boxes(points, s));

    // Least squares of log(count) against log(1/scale) over the middle
    // two-thirds of the scale list (coarse scales saturate the window, fine
    // ones starve on samples).
    const std::size_t n = scales.size();
    const std::size_t drop = n / 6;
    est.fit_lo = drop;
    est.fit_hi = n - drop;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(est.fit_hi - est.fit_lo);
    for (std::size_t i = est.fit_lo; i < est.fit_hi; ++i) {
        const double lx = std::log(1.0 / scales[i]);
        const double ly = std::log(static_cast<double>(est.counts[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    est.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    est.tau = 2.0 * std::log2(std::pow(2.0, p.N) - 2.0) / p.N;
    est.analytic_bound = est.tau * std::log(2.0) / std::log(2.0 + est.eps_N);
    return est;
}

DimEstimate estimate_dimension_gap(unsigned N, std::size_t samples,
                                   const std::vector<double>& scales, std::uint64_t seed) {
    FamilyParams p;
    p.N = N;
    p.seed = seed;
    return estimate_dimension(p, samples, scales, FamilyKind::Gap);
}

} // namespace dbx
