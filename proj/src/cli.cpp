#include "dbx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "dbx/classify.hpp"
#include "dbx/config.hpp"
#include "dbx/dimension.hpp"
#include "dbx/errors.hpp"
#include "dbx/expand.hpp"
#include "dbx/ineq.hpp"
#include "dbx/phimap.hpp"

namespace dbx {

namespace {

using json = nlohmann::ordered_json;

json real_json(const Real& v, unsigned precision_bits) {
    return json(format_real(v, precision_bits));
}

SolveConfig solve_config(const Config& cfg) {
    SolveConfig sc;
    sc.root_tol = cfg.root_tol;
    sc.precision_bits = cfg.precision_bits;
    return sc;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw precondition_error(std::string(what) + ": cannot parse \"" + item + "\"");
        }
    }
    if (out.empty()) throw precondition_error(std::string(what) + ": empty list");
    return out;
}

std::vector<Real> parse_real_list(const std::string& text, const char* what) {
    std::vector<Real> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.emplace_back(parse_rational(item));
    }
    if (out.empty()) throw precondition_error(std::string(what) + ": empty list");
    return out;
}

struct CliState {
    Config cfg;
    std::string config_path;
    // raw option storage
    std::string q0, q1, x, mode = "greedy", mu, alpha;
    std::size_t depth = 0;
    unsigned N = 2;
    std::size_t samples = 1000;
    std::string scales = "0.0625,0.03125,0.015625,0.0078125,0.00390625,0.001953125,"
                         "0.0009765625,0.00048828125,0.000244140625";
    std::string family = "full";
    std::string grid = "64x64";
    std::string window = "1.01,3,1.01,3";
    std::string sx = "2", sy = "2", n_list = "0", ntilde_list = "0";
    std::size_t K = 64;
    std::size_t blocks = 4;
};

BasePair make_base_pair(const CliState& st) {
    if (st.q0.empty() || st.q1.empty()) {
        throw precondition_error("both --q0 and --q1 are required");
    }
    return BasePair(parse_rational(st.q0), parse_rational(st.q1), st.cfg.precision_bits);
}

int cmd_expand(const CliState& st, std::ostream& out) {
    const BasePair q = make_base_pair(st);
    ExpansionPoint x{Real(0), Rational(0)};
    if (st.x == "ell") {
        if (q.exact()) {
            const Rational ell =
                q.exact()->second / (q.exact()->first * (q.exact()->second - 1)) - 1;
            x = ExpansionPoint::from_rational(ell, st.cfg.precision_bits);
        } else {
            x = ExpansionPoint::from_real(critical_points(q).ell);
        }
    } else if (st.x == "r") {
        if (q.exact()) {
            x = ExpansionPoint::from_rational(q.exact()->first / q.exact()->second,
                                              st.cfg.precision_bits);
        } else {
            x = ExpansionPoint::from_real(critical_points(q).r);
        }
    } else {
        x = ExpansionPoint::from_rational(parse_rational(st.x), st.cfg.precision_bits);
    }
    const std::size_t depth = st.depth ? st.depth : st.cfg.depth_default;
    const ExpansionRun run = run_algorithm(q, x, parse_mode(st.mode), depth);
    json j;
    j["digits"] = run.digits;
    j["certified_depth"] = run.certified_depth;
    j["residual"] = json::array({real_json(run.residual_lo, st.cfg.precision_bits),
                                 real_json(run.residual_hi, st.cfg.precision_bits)});
    j["precision_bits"] = st.cfg.precision_bits;
    out << j.dump() << "\n";
    return 0;
}

int cmd_phi(const CliState& st, std::ostream& out) {
    const BasePair q = make_base_pair(st);
    const std::size_t depth = st.depth ? st.depth : st.cfg.depth_default;
    const PhiForward fwd = phi_forward(q, depth);
    json j;
    j["region"] = region_name(fwd.region);
    j["mu_prefix"] = fwd.mu_prefix;
    j["alpha_prefix"] = fwd.alpha_prefix;
    j["certified_depth"] = fwd.certified;
    out << j.dump() << "\n";
    return 0;
}

int cmd_phi_inv(const CliState& st, std::ostream& out) {
    if (st.mu.empty() || st.alpha.empty()) {
        throw precondition_error("phi-inv requires --mu and --alpha sequence literals");
    }
    const EpSeq mu = EpSeq::parse(st.mu);
    const EpSeq alpha = EpSeq::parse(st.alpha);
    const PhiInverse inv = phi_inverse(mu, alpha, solve_config(st.cfg));
    json j;
    j["q0"] = real_json(inv.q0, st.cfg.precision_bits);
    j["q1"] = real_json(inv.q1, st.cfg.precision_bits);
    j["residual_f"] = real_json(inv.residual_f, st.cfg.precision_bits);
    j["residual_ftilde"] = real_json(inv.residual_ftilde, st.cfg.precision_bits);
    j["bracket_width"] = real_json(inv.bracket_width, st.cfg.precision_bits);
    j["precision_bits"] = st.cfg.precision_bits;
    out << j.dump() << "\n";
    return 0;
}

json witness_json(const Witness& w) {
    json j;
    j["sequence"] = w.sequence;
    j["shift"] = w.shift;
    j["condition"] = w.condition;
    return j;
}

json seq_json(const EpSeq& s) {
    json j;
    j["pre"] = s.pre();
    j["per"] = s.per();
    j["literal"] = s.to_literal();
    return j;
}

int cmd_classify(const CliState& st, std::ostream& out) {
    json j;
    if (!st.mu.empty() || !st.alpha.empty()) {
        if (st.mu.empty() || st.alpha.empty()) {
            throw precondition_error("classify needs both --mu and --alpha (or --q0/--q1)");
        }
        const EpSeq mu = EpSeq::parse(st.mu);
        const EpSeq alpha = EpSeq::parse(st.alpha);
        const PairClass pc = classify_pair(mu, alpha);
        j["mu"] = seq_json(mu);
        j["alpha"] = seq_json(alpha);
        j["in_B_prime"] = pc.in_Bprime.str();
        j["in_C_prime"] = pc.in_Cprime.str();
        j["in_U2_prime"] = pc.in_U2prime.str();
        j["in_closure_U2_prime"] = pc.in_closureU2prime.str();
        j["in_V2_prime"] = pc.in_V2prime.str();
        j["in_V2_minus_closure"] = pc.in_VminusClosure.str();
        if (pc.witness) j["witness"] = witness_json(*pc.witness);
        if (pc.periodic_uv) {
            j["periodic_u"] = pc.periodic_uv->first;
            j["periodic_v"] = pc.periodic_uv->second;
        }
    } else {
        const BasePair q = make_base_pair(st);
        const std::size_t depth = st.depth ? st.depth : st.cfg.depth_default;
        const BaseClass bc = classify_base_pair(q, depth, solve_config(st.cfg));
        j["region"] = region_name(bc.region);
        j["in_U2"] = bc.in_U2.str();
        j["in_closure_U2"] = bc.in_closureU2.str();
        j["in_V2"] = bc.in_V2.str();
        j["certification_depth"] = bc.certification_depth;
        j["exact"] = bc.exact;
        if (bc.detected_mu) j["mu"] = seq_json(*bc.detected_mu);
        if (bc.detected_alpha) j["alpha"] = seq_json(*bc.detected_alpha);
    }
    out << j.dump() << "\n";
    return 0;
}

int cmd_sample_region(const CliState& st, std::ostream& out) {
    const auto xpos = st.grid.find('x');
    if (xpos == std::string::npos) {
        throw precondition_error("--grid must look like WxH");
    }
    std::size_t w = 0, h = 0;
    try {
        w = std::stoul(st.grid.substr(0, xpos));
        h = std::stoul(st.grid.substr(xpos + 1));
    } catch (const std::exception&) {
        throw precondition_error("--grid must look like WxH");
    }
    if (w < 2 || h < 2) throw precondition_error("--grid needs at least 2x2 cells");
    const auto win = parse_double_list(st.window, "--window");
    if (win.size() != 4) {
        throw precondition_error("--window must be q0min,q0max,q1min,q1max");
    }
    out << "q0,q1,region\n";
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t jj = 0; jj < h; ++jj) {
            const double q0 = win[0] + (win[1] - win[0]) * static_cast<double>(i) / (w - 1);
            const double q1 = win[2] + (win[3] - win[2]) * static_cast<double>(jj) / (h - 1);
            std::string region = "Outside";
            if (q0 > 1 && q1 > 1) {
                region = region_name(
                    BasePair(Real(q0), Real(q1), st.cfg.precision_bits).region());
            }
            out << q0 << "," << q1 << "," << region << "\n";
        }
    }
    return 0;
}

int cmd_dimension(const CliState& st, std::ostream& out, std::ostream& err) {
    FamilyParams p;
    p.N = st.N;
    p.seed = st.cfg.seed;
    p.depth_blocks = st.blocks;
    const auto scales = parse_double_list(st.scales, "--scales");
    const FamilyKind kind = (st.family == "gap") ? FamilyKind::Gap : FamilyKind::Full;
    if (st.family != "gap" && st.family != "full") {
        throw precondition_error("--family must be full or gap");
    }
    const DimEstimate est = estimate_dimension(p, st.samples, scales, kind);
    json j;
    j["N"] = est.N;
    j["family"] = st.family;
    j["samples"] = est.sample_count;
    j["slope"] = est.slope;
    j["bound"] = est.analytic_bound;
    j["tau"] = est.tau;
    j["eps_N"] = est.eps_N;
    j["fit_range"] = json::array({est.fit_lo, est.fit_hi});
    j["scales"] = est.scales;
    j["counts"] = est.counts;
    if (st.cfg.output_format == "csv") {
        out << "scale,count\n";
        for (std::size_t i = 0; i < est.scales.size(); ++i) {
            out << est.scales[i] << "," << est.counts[i] << "\n";
        }
        err << j.dump() << "\n";
    } else {
        out << j.dump() << "\n";
    }
    return 0;
}

int cmd_inequality(const CliState& st, std::ostream& out) {
    SeriesInput in;
    in.x = Real(parse_rational(st.sx));
    in.y = Real(parse_rational(st.sy));
    in.n_seq = parse_real_list(st.n_list, "--n");
    in.ntilde_seq = parse_real_list(st.ntilde_list, "--ntilde");
    const SeriesValue v = eval_S(in, st.K, st.cfg.precision_bits);
    json j;
    j["K"] = st.K;
    j["lower"] = real_json(v.lower, st.cfg.precision_bits);
    j["upper"] = real_json(v.upper, st.cfg.precision_bits);
    j["precision_bits"] = st.cfg.precision_bits;
    out << j.dump() << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"double-base (q0,q1)-expansions: algorithms, the Phi bijection, classifiers, "
                 "dimension estimates and series checks"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliState st;
    bool flag_precision = false, flag_root_tol = false, flag_seed = false, flag_format = false;
    unsigned precision_flag = 0;
    double root_tol_flag = 0;
    std::uint64_t seed_flag = 0;
    std::string format_flag;

    app.add_option("--config", st.config_path, "key=value configuration file");
    app.add_option("--precision-bits", precision_flag)->each([&](const std::string&) {
        flag_precision = true;
    });
    app.add_option("--root-tol", root_tol_flag)->each([&](const std::string&) {
        flag_root_tol = true;
    });
    app.add_option("--seed", seed_flag)->each([&](const std::string&) { flag_seed = true; });
    app.add_option("--format", format_flag)->each([&](const std::string&) { flag_format = true; });

    auto* c_expand = app.add_subcommand("expand", "run one expansion algorithm");
    c_expand->add_option("--q0", st.q0);
    c_expand->add_option("--q1", st.q1);
    c_expand->add_option("--x", st.x)->required();
    c_expand->add_option("--mode", st.mode);
    c_expand->add_option("--depth", st.depth);

    auto* c_phi = app.add_subcommand("phi", "forward map: quasi-lazy/quasi-greedy digit prefixes");
    c_phi->add_option("--q0", st.q0);
    c_phi->add_option("--q1", st.q1);
    c_phi->add_option("--depth", st.depth);

    auto* c_phi_inv = app.add_subcommand("phi-inv", "invert the bijection on B'");
    c_phi_inv->add_option("--mu", st.mu);
    c_phi_inv->add_option("--alpha", st.alpha);

    auto* c_classify = app.add_subcommand("classify", "symbolic or base-pair classification");
    c_classify->add_option("--mu", st.mu);
    c_classify->add_option("--alpha", st.alpha);
    c_classify->add_option("--q0", st.q0);
    c_classify->add_option("--q1", st.q1);
    c_classify->add_option("--depth", st.depth);

    auto* c_region = app.add_subcommand("sample-region", "CSV grid of region membership");
    c_region->add_option("--grid", st.grid);
    c_region->add_option("--window", st.window, "q0min,q0max,q1min,q1max");

    auto* c_dim = app.add_subcommand("dimension", "box-counting estimate over a sampled family");
    c_dim->add_option("--N", st.N);
    c_dim->add_option("--samples", st.samples);
    c_dim->add_option("--scales", st.scales);
    c_dim->add_option("--family", st.family);
    c_dim->add_option("--blocks", st.blocks);

    auto* c_ineq = app.add_subcommand("inequality-check", "certified double-series enclosure");
    c_ineq->add_option("--x", st.sx);
    c_ineq->add_option("--y", st.sy);
    c_ineq->add_option("--n", st.n_list);
    c_ineq->add_option("--ntilde", st.ntilde_list);
    c_ineq->add_option("--K", st.K);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help() << std::flush;
        return 64;
    }

    try {
        st.cfg = load_config(st.config_path.empty()
                                 ? std::optional<std::string>{}
                                 : std::optional<std::string>{st.config_path});
        if (flag_precision) st.cfg.precision_bits = precision_flag;
        if (flag_root_tol) st.cfg.root_tol = root_tol_flag;
        if (flag_seed) st.cfg.seed = seed_flag;
        if (flag_format) st.cfg.output_format = format_flag;
        st.cfg.validate();

        precision_scope scope(st.cfg.precision_bits);
        if (app.got_subcommand(c_expand)) return cmd_expand(st, out);
        if (app.got_subcommand(c_phi)) return cmd_phi(st, out);
        if (app.got_subcommand(c_phi_inv)) return cmd_phi_inv(st, out);
        if (app.got_subcommand(c_classify)) return cmd_classify(st, out);
        if (app.got_subcommand(c_region)) return cmd_sample_region(st, out);
        if (app.got_subcommand(c_dim)) return cmd_dimension(st, out, err);
        if (app.got_subcommand(c_ineq)) return cmd_inequality(st, out);
        err << "no subcommand selected\n";
        return 64;
    } catch (const config_error& e) {
        err << "config error: " << e.what() << "\n";
        return 78;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace dbx
