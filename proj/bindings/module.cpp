#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dbx/classify.hpp"
#include "dbx/dimension.hpp"
#include "dbx/errors.hpp"
#include "dbx/expand.hpp"
#include "dbx/ineq.hpp"
#include "dbx/phimap.hpp"

namespace py = pybind11;
using namespace dbx;

namespace {

SolveConfig make_cfg(unsigned precision_bits, double root_tol) {
    SolveConfig cfg;
    cfg.precision_bits = precision_bits;
    cfg.root_tol = root_tol;
    return cfg;
}

BasePair base_pair_from(const std::string& q0, const std::string& q1, unsigned precision_bits) {
    return BasePair(parse_rational(q0), parse_rational(q1), precision_bits);
}

py::object big_to_py(const BigInt& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

std::string tri_str(const Tri& t) { return t.str(); }

py::dict pair_class_dict(const PairClass& pc) {
    py::dict d;
    d["in_B_prime"] = tri_str(pc.in_Bprime);
    d["in_C_prime"] = tri_str(pc.in_Cprime);
    d["in_U2_prime"] = tri_str(pc.in_U2prime);
    d["in_closure_U2_prime"] = tri_str(pc.in_closureU2prime);
    d["in_V2_prime"] = tri_str(pc.in_V2prime);
    d["in_V2_minus_closure"] = tri_str(pc.in_VminusClosure);
    if (pc.witness) {
        py::dict w;
        w["sequence"] = pc.witness->sequence;
        w["shift"] = pc.witness->shift;
        w["condition"] = pc.witness->condition;
        d["witness"] = w;
    }
    if (pc.periodic_uv) {
        d["periodic_u"] = pc.periodic_uv->first;
        d["periodic_v"] = pc.periodic_uv->second;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "double-base (q0,q1)-expansions: expansion algorithms, the Phi bijection, "
              "set classifiers, dimension estimation and series enclosures";

    py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    py::class_<EpSeq>(m, "EpSeq")
        .def(py::init<Word, Word>(), py::arg("pre"), py::arg("per"))
        .def_static("parse", &EpSeq::parse, py::arg("literal"))
        .def_static("zeros", &EpSeq::zeros)
        .def_static("ones", &EpSeq::ones)
        .def_property_readonly("pre", &EpSeq::pre)
        .def_property_readonly("per", &EpSeq::per)
        .def("digit", [](const EpSeq& s, std::size_t i) { return std::string(1, s.digit(i)); })
        .def("prefix", &EpSeq::prefix, py::arg("n"))
        .def("__eq__", [](const EpSeq& a, const EpSeq& b) { return a == b; })
        .def("__str__", &EpSeq::to_literal)
        .def("__repr__", [](const EpSeq& s) { return "EpSeq('" + s.to_literal() + "')"; });

    m.def("compare_lex", [](const EpSeq& a, const EpSeq& b) {
        const Ordering o = compare_lex(a, b);
        return o == Ordering::Less ? -1 : (o == Ordering::Equal ? 0 : 1);
    });
    m.def("shift", &shift, py::arg("seq"), py::arg("n"));
    m.def("conjugate", &conjugate, py::arg("seq"));
    m.def("classify_seq", [](const EpSeq& s) {
        switch (classify_seq(s)) {
            case SeqKind::Finite: return "finite";
            case SeqKind::CoFinite: return "co-finite";
            default: return "doubly-infinite";
        }
    });
    m.def("distinct_tails", &distinct_tails);
    m.def("seq_metric", &seq_metric);

    m.def(
        "pi_eval",
        [](const std::string& q0, const std::string& q1, const EpSeq& a, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            py::dict d;
            const BasePair q = base_pair_from(q0, q1, precision_bits);
            const Real v = pi_eval(q, a);
            d["value"] = static_cast<double>(v);
            d["value_str"] = format_real(v, precision_bits);
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("seq"), py::arg("precision_bits") = 128);

    m.def(
        "pi_tilde_eval",
        [](const std::string& q0, const std::string& q1, const EpSeq& a, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            py::dict d;
            const BasePair q = base_pair_from(q0, q1, precision_bits);
            const Real v = pi_tilde_eval(q, a);
            d["value"] = static_cast<double>(v);
            d["value_str"] = format_real(v, precision_bits);
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("seq"), py::arg("precision_bits") = 128);

    m.def(
        "critical_points",
        [](const std::string& q0, const std::string& q1, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            const CriticalPoints cp = critical_points(base_pair_from(q0, q1, precision_bits));
            return py::make_tuple(static_cast<double>(cp.ell), static_cast<double>(cp.r));
        },
        py::arg("q0"), py::arg("q1"), py::arg("precision_bits") = 128);

    m.def(
        "region",
        [](const std::string& q0, const std::string& q1, unsigned precision_bits) {
            return region_name(base_pair_from(q0, q1, precision_bits).region());
        },
        py::arg("q0"), py::arg("q1"), py::arg("precision_bits") = 128);

    m.def(
        "run_algorithm",
        [](const std::string& q0, const std::string& q1, const std::string& x,
           const std::string& mode, std::size_t depth, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            const BasePair q = base_pair_from(q0, q1, precision_bits);
            ExpansionPoint pt{Real(0), Rational(0)};
            if (x == "ell") {
                const Rational ell =
                    q.exact()->second / (q.exact()->first * (q.exact()->second - 1)) - 1;
                pt = ExpansionPoint::from_rational(ell, precision_bits);
            } else if (x == "r") {
                pt = ExpansionPoint::from_rational(q.exact()->first / q.exact()->second,
                                                   precision_bits);
            } else {
                pt = ExpansionPoint::from_rational(parse_rational(x), precision_bits);
            }
            const ExpansionRun run = run_algorithm(q, pt, parse_mode(mode), depth);
            py::dict d;
            d["digits"] = run.digits;
            d["certified_depth"] = run.certified_depth;
            d["residual"] = py::make_tuple(static_cast<double>(run.residual_lo),
                                           static_cast<double>(run.residual_hi));
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("x"), py::arg("mode"), py::arg("depth"),
        py::arg("precision_bits") = 128);

    m.def("quasi_from_greedy", &quasi_from_greedy);
    m.def("quasi_from_lazy", &quasi_from_lazy);

    m.def(
        "orbit_uniqueness_check",
        [](const std::string& q0, const std::string& q1, const EpSeq& x,
           unsigned precision_bits) {
            precision_scope scope(precision_bits);
            return orbit_uniqueness_check(base_pair_from(q0, q1, precision_bits), x).str();
        },
        py::arg("q0"), py::arg("q1"), py::arg("x_digits"), py::arg("precision_bits") = 128);

    m.def(
        "is_unique_expansion",
        [](const std::string& q0, const std::string& q1, const EpSeq& x, const EpSeq& mu,
           const EpSeq& alpha, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            return is_unique_expansion(base_pair_from(q0, q1, precision_bits), x, mu, alpha)
                .str();
        },
        py::arg("q0"), py::arg("q1"), py::arg("x_digits"), py::arg("mu"), py::arg("alpha"),
        py::arg("precision_bits") = 128);

    m.def(
        "phi_forward",
        [](const std::string& q0, const std::string& q1, std::size_t depth,
           unsigned precision_bits) {
            precision_scope scope(precision_bits);
            const PhiForward f = phi_forward(base_pair_from(q0, q1, precision_bits), depth);
            py::dict d;
            d["region"] = region_name(f.region);
            d["mu_prefix"] = f.mu_prefix;
            d["alpha_prefix"] = f.alpha_prefix;
            d["certified_depth"] = f.certified;
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("depth") = 64, py::arg("precision_bits") = 128);

    m.def(
        "phi_inverse",
        [](const EpSeq& mu, const EpSeq& alpha, unsigned precision_bits, double root_tol) {
            precision_scope scope(precision_bits);
            const PhiInverse inv = phi_inverse(mu, alpha, make_cfg(precision_bits, root_tol));
            py::dict d;
            d["q0"] = static_cast<double>(inv.q0);
            d["q1"] = static_cast<double>(inv.q1);
            d["q0_str"] = format_real(inv.q0, precision_bits);
            d["q1_str"] = format_real(inv.q1, precision_bits);
            d["residual_f"] = static_cast<double>(inv.residual_f);
            d["residual_ftilde"] = static_cast<double>(inv.residual_ftilde);
            d["bracket_width"] = static_cast<double>(inv.bracket_width);
            return d;
        },
        py::arg("mu"), py::arg("alpha"), py::arg("precision_bits") = 128,
        py::arg("root_tol") = 1e-12);

    m.def("classify_pair", [](const EpSeq& mu, const EpSeq& alpha) {
        return pair_class_dict(classify_pair(mu, alpha));
    });

    m.def(
        "classify_base_pair",
        [](const std::string& q0, const std::string& q1, std::size_t depth,
           unsigned precision_bits, double root_tol) {
            precision_scope scope(precision_bits);
            const BaseClass bc = classify_base_pair(base_pair_from(q0, q1, precision_bits), depth,
                                                    make_cfg(precision_bits, root_tol));
            py::dict d;
            d["region"] = region_name(bc.region);
            d["in_U2"] = tri_str(bc.in_U2);
            d["in_closure_U2"] = tri_str(bc.in_closureU2);
            d["in_V2"] = tri_str(bc.in_V2);
            d["certification_depth"] = bc.certification_depth;
            d["exact"] = bc.exact;
            if (bc.detected_mu) d["mu"] = bc.detected_mu->to_literal();
            if (bc.detected_alpha) d["alpha"] = bc.detected_alpha->to_literal();
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("depth") = 64, py::arg("precision_bits") = 128,
        py::arg("root_tol") = 1e-12);

    m.def(
        "sample_family_pair",
        [](unsigned N, std::size_t depth_blocks, std::uint64_t seed) {
            FamilyParams p;
            p.N = N;
            p.depth_blocks = depth_blocks;
            p.seed = seed;
            return sample_family_pair(p);
        },
        py::arg("N"), py::arg("depth_blocks") = 4, py::arg("seed") = 0);

    m.def(
        "block_count",
        [](unsigned N, unsigned n, unsigned k) {
            const BlockCounts c = block_count(N, n, k);
            return py::make_tuple(big_to_py(c.initial), big_to_py(c.middle));
        },
        py::arg("N"), py::arg("n"), py::arg("k") = 2);

    m.def(
        "estimate_dimension",
        [](unsigned N, std::size_t samples, const std::vector<double>& scales,
           std::uint64_t seed, const std::string& family, std::size_t depth_blocks) {
            FamilyParams p;
            p.N = N;
            p.seed = seed;
            p.depth_blocks = depth_blocks;
            const DimEstimate est = estimate_dimension(
                p, samples, scales, family == "gap" ? FamilyKind::Gap : FamilyKind::Full);
            py::dict d;
            d["slope"] = est.slope;
            d["bound"] = est.analytic_bound;
            d["tau"] = est.tau;
            d["eps_N"] = est.eps_N;
            d["scales"] = est.scales;
            d["counts"] = est.counts;
            return d;
        },
        py::arg("N"), py::arg("samples"), py::arg("scales"), py::arg("seed") = 0,
        py::arg("family") = "full", py::arg("depth_blocks") = 4);

    m.def(
        "eval_S",
        [](const std::string& x, const std::string& y, const std::vector<double>& n,
           const std::vector<double>& ntilde, std::size_t K, unsigned precision_bits) {
            precision_scope scope(precision_bits);
            SeriesInput in;
            in.x = Real(parse_rational(x));
            in.y = Real(parse_rational(y));
            for (double v : n) in.n_seq.emplace_back(v);
            for (double v : ntilde) in.ntilde_seq.emplace_back(v);
            const SeriesValue v = eval_S(in, K, precision_bits);
            py::dict d;
            d["lower"] = static_cast<double>(v.lower);
            d["upper"] = static_cast<double>(v.upper);
            d["lower_str"] = format_real(v.lower, precision_bits);
            d["upper_str"] = format_real(v.upper, precision_bits);
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("n"), py::arg("ntilde"), py::arg("K") = 64,
        py::arg("precision_bits") = 128);

    m.def("alpha_run_lengths", [](const EpSeq& alpha, std::size_t count) {
        std::vector<double> out;
        for (const Real& v : alpha_run_lengths(alpha, count)) out.push_back(static_cast<double>(v));
        return out;
    });
    m.def("mu_run_lengths", [](const EpSeq& mu, std::size_t count) {
        std::vector<double> out;
        for (const Real& v : mu_run_lengths(mu, count)) out.push_back(static_cast<double>(v));
        return out;
    });
}
