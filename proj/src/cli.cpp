#include "subcubes/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "subcubes/asymptotics.hpp"
#include "subcubes/moments.hpp"
#include "subcubes/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string format = "plain";
    int threads = 0;
    double budget_seconds = 1800;
    std::uint64_t budget_kernels = 0;
    std::string mode = "orbits";
    std::string p_text = "1/2";

    RenderFormat fmt = RenderFormat::plain;
    Rational p = Rational(1, 2);
    EngineOptions engine;
};

std::string hp_str(const HighPrecision& x, int digits = 30) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string fixed_str(double x, int digits = 10) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

json rational_json(const Rational& x) {
    return json{{"num", x.numerator().get_str()}, {"den", x.denominator().get_str()}};
}

void resolve(Globals& g) {
    try {
        g.fmt = parse_render_format(g.format);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    try {
        g.p = Rational::parse(g.p_text);
    } catch (const std::exception&) {
        throw UsageError("--p must be an exact rational \"num/den\", got '" + g.p_text + "'");
    }
    if (g.p.sign() <= 0 || g.p >= Rational(1)) throw UsageError("--p must lie strictly between 0 and 1");
    if (g.mode == "orbits") g.engine.mode = KernelMode::orbits;
    else if (g.mode == "exhaustive") g.engine.mode = KernelMode::exhaustive;
    else throw UsageError("--mode must be orbits or exhaustive");
    g.engine.threads = g.threads;
    g.engine.max_seconds = g.budget_seconds;
    g.engine.max_kernels = g.budget_kernels;
#ifdef _OPENMP
    if (g.threads > 0) omp_set_num_threads(g.threads);
#endif
}

void require_half(const Globals& g, const std::string& what) {
    if (g.p != Rational(1, 2)) throw UsageError(what + " is defined for p = 1/2 only");
}

void emit_poly(std::ostream& out, const Globals& g, const json& query, const BiPoly& P) {
    if (g.fmt == RenderFormat::json)
        out << json{{"query", query}, {"result", json::parse(P.render(RenderFormat::json))}}.dump() << '\n';
    else
        out << P.render(g.fmt) << '\n';
}

void emit_json(std::ostream& out, const json& query, json result) {
    out << json{{"query", query}, {"result", std::move(result)}}.dump() << '\n';
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
    auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            unsigned v = static_cast<unsigned>(std::stoul(text));
            return {v, v};
        }
        unsigned a = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
        unsigned b = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
        if (a > b) throw UsageError("--n-range: empty range");
        return {a, b};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--n-range must look like a:b");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact moments of subcube counts in random subsets of the n-cube", "subcubes"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "plain | latex | maple | json")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0: OpenMP default)");
    app.add_option("--budget-seconds", g.budget_seconds, "wall-clock budget of the moment engine (0: none)")
        ->capture_default_str();
    app.add_option("--budget-kernels", g.budget_kernels, "kernel representatives per engine call (0: none)");
    app.add_option("--mode", g.mode, "kernel enumeration: orbits | exhaustive")->capture_default_str();
    app.add_option("--p", g.p_text, "point inclusion probability as num/den")->capture_default_str();

    std::vector<unsigned> rs;
    unsigned r = 1, k = 2, n = 3, m = 3, kmax = 6;
    bool closed_form = false, allow_n5 = false;
    std::string n_range = "4:24", oracle = "subsets", subset, method = "bitparallel";
    std::uint64_t samples = 100000, seed = 42, tuple_budget = 100'000'000;

    auto* moment = app.add_subcommand("moment", "mixed moment E[X_r1 ... X_rk] as a polynomial in n and 2^n");
    moment->add_option("--rs", rs, "comma-separated dimensions")->delimiter(',')->required();

    auto* central = app.add_subcommand("central", "central moment E[(X_r - mu)^k]");
    central->add_option("--r", r)->required();
    central->add_option("--k", k)->required();

    auto* mean = app.add_subcommand("mean", "mu_r = p^(2^r) binom(n,r) 2^(n-r)");
    mean->add_option("--r", r)->required();

    auto* variance = app.add_subcommand("variance", "Var X_r");
    variance->add_option("--r", r)->required();
    variance->add_flag("--closed-form", closed_form, "use the closed form instead of the engine");

    auto* second = app.add_subcommand("second-moment", "E[X_r^2]");
    second->add_option("--r", r)->required();
    second->add_flag("--closed-form", closed_form, "use the closed form instead of the engine");

    auto* limits = app.add_subcommand("limits", "limits of scaled central moments, k = 1..kmax");
    limits->add_option("--r", r)->required();
    limits->add_option("--kmax", kmax)->capture_default_str();

    auto* cumulants = app.add_subcommand("cumulants", "cumulant decay check for k = 3..kmax");
    cumulants->add_option("--r", r)->required();
    cumulants->add_option("--kmax", kmax)->capture_default_str();

    auto* depgraph = app.add_subcommand("depgraph", "dependency graph of the r-subcubes of {0,1}^n");
    depgraph->add_option("--n", n)->required();
    depgraph->add_option("--r", r)->required();

    auto* ratio = app.add_subcommand("ratio", "dependency-graph CLT ratio (N/M)^(1/m) M A / sigma over a range of n");
    ratio->add_option("--r", r)->required();
    ratio->add_option("--m", m)->capture_default_str();
    ratio->add_option("--n-range", n_range, "a:b")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "compare the symbolic moment at n with an enumeration oracle");
    verify->add_option("--n", n)->required();
    verify->add_option("--rs", rs)->delimiter(',')->required();
    verify->add_option("--oracle", oracle, "subsets | tuples")->capture_default_str();
    verify->add_flag("--allow-n5", allow_n5, "permit the 2^32-subset run at n = 5");
    verify->add_option("--tuple-budget", tuple_budget)->capture_default_str();

    auto* count = app.add_subcommand("count", "number of r-subcubes inside an explicit subset");
    count->add_option("--s", subset, "comma-separated bitstrings, e.g. 000,001,011")->required();
    count->add_option("--r", r)->required();
    count->add_option("--method", method, "naive | bitparallel")->capture_default_str();

    auto* mc = app.add_subcommand("mc", "Monte-Carlo estimate of E[X_r^k] at p = 1/2");
    mc->add_option("--n", n)->required();
    mc->add_option("--r", r)->required();
    mc->add_option("--k", k)->required();
    mc->add_option("--samples", samples)->capture_default_str();
    mc->add_option("--seed", seed)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        resolve(g);
        json query;
        auto base_query = [&](const std::string& name) {
            query = json::object();
            query["command"] = name;
        };

        if (moment->parsed()) {
            base_query("moment");
            query["rs"] = rs;
            query["p"] = g.p.str();
            emit_poly(out, g, query, mixed_moment(MomentSpec{rs, g.p}, g.engine));
        } else if (central->parsed()) {
            base_query("central");
            query["r"] = r;
            query["k"] = k;
            query["p"] = g.p.str();
            emit_poly(out, g, query, central_moment(r, k, g.p, g.engine));
        } else if (mean->parsed()) {
            base_query("mean");
            query["r"] = r;
            query["p"] = g.p.str();
            emit_poly(out, g, query, mean_closed(r, g.p));
        } else if (variance->parsed() || second->parsed()) {
            const bool var = variance->parsed();
            base_query(var ? "variance" : "second-moment");
            query["r"] = r;
            query["p"] = g.p.str();
            query["closed_form"] = closed_form;
            BiPoly P;
            if (closed_form) {
                require_half(g, "the closed form");
                P = var ? variance_closed(r) : second_moment_closed(r);
            } else {
                P = var ? central_moment(r, 2, g.p, g.engine) : mixed_moment(MomentSpec{{r, r}, g.p}, g.engine);
            }
            emit_poly(out, g, query, P);
        } else if (limits->parsed()) {
            require_half(g, "limits");
            base_query("limits");
            query["r"] = r;
            query["kmax"] = kmax;
            json rows = json::array();
            bool all = true;
            for (unsigned kk = 1; kk <= kmax; ++kk) {
                Rational lim = scaled_limit(r, kk, g.engine), normal = normal_moment(kk);
                all = all && lim == normal;
                if (g.fmt == RenderFormat::json)
                    rows.push_back(json{{"k", kk}, {"limit", rational_json(lim)}, {"normal", rational_json(normal)},
                                        {"match", lim == normal}});
                else
                    out << "k=" << kk << " limit=" << lim.str() << " normal=" << normal.str()
                        << (lim == normal ? " match" : " MISMATCH") << '\n';
            }
            if (g.fmt == RenderFormat::json) emit_json(out, query, rows);
            return all ? exit_ok : exit_mismatch;
        } else if (cumulants->parsed()) {
            require_half(g, "cumulants");
            base_query("cumulants");
            query["r"] = r;
            query["kmax"] = kmax;
            DecayReport rep = cumulant_decay_check(r, kmax, g.engine);
            if (g.fmt == RenderFormat::json) {
                emit_json(out, query, json::parse(rep.to_json()));
            } else {
                for (const auto& rec : rep.records)
                    out << "k=" << rec.k << " deg_q=" << rec.deg_q << " deg_n=" << rec.deg_n
                        << " limit=" << rec.limit.str() << (rec.pass ? " pass" : " FAIL") << '\n';
            }
            return rep.all_pass() ? exit_ok : exit_mismatch;
        } else if (depgraph->parsed()) {
            base_query("depgraph");
            query["n"] = n;
            query["r"] = r;
            const auto s = build_dep_graph(n, r).stats;
            if (g.fmt == RenderFormat::json) {
                emit_json(out, query,
                          json{{"n", s.n}, {"r", s.r}, {"vertices", s.vertex_count}, {"max_degree", s.max_degree},
                               {"min_degree", s.min_degree}, {"has_edges", s.has_edges},
                               {"is_regular", s.is_regular}, {"degree_bound", s.degree_bound},
                               {"sigma", hp_str(s.sigma)}, {"A", s.bound_A}});
            } else {
                out << "vertices=" << s.vertex_count << " max_degree=" << s.max_degree
                    << " min_degree=" << s.min_degree << " regular=" << (s.is_regular ? "true" : "false")
                    << " degree_bound=" << s.degree_bound << " sigma=" << hp_str(s.sigma) << " A=" << s.bound_A
                    << '\n';
            }
        } else if (ratio->parsed()) {
            require_half(g, "ratio");
            auto [lo, hi] = parse_range(n_range);
            base_query("ratio");
            query["r"] = r;
            query["m"] = m;
            query["n_range"] = n_range;
            json rows = json::array();
            if (g.fmt != RenderFormat::json) out << "n M source ratio ratio_with_bound\n";
            for (unsigned nn = lo; nn <= hi; ++nn) {
                JansonRatio jr = janson_ratio(nn, r, m);
                const char* src = jr.degree_from_graph ? "graph" : "bound";
                if (g.fmt == RenderFormat::json)
                    rows.push_back(json{{"n", nn}, {"M", jr.max_degree}, {"M_source", src},
                                        {"N", jr.vertex_count.get_str()}, {"sigma", hp_str(jr.sigma)},
                                        {"ratio", hp_str(jr.ratio)}, {"ratio_with_bound", hp_str(jr.ratio_with_bound)}});
                else
                    out << nn << ' ' << jr.max_degree << ' ' << src << ' ' << hp_str(jr.ratio, 20) << ' '
                        << hp_str(jr.ratio_with_bound, 20) << '\n';
            }
            if (g.fmt == RenderFormat::json) emit_json(out, query, rows);
        } else if (verify->parsed()) {
            base_query("verify");
            query["n"] = n;
            query["rs"] = rs;
            query["oracle"] = oracle;
            query["p"] = g.p.str();
            Rational expected;
            if (oracle == "subsets") {
                require_half(g, "the subsets oracle");
                expected = exact_moment_subsets(n, rs, allow_n5);
            } else if (oracle == "tuples") {
                expected = exact_moment_tuples(n, rs, g.p, tuple_budget);
            } else {
                throw UsageError("--oracle must be subsets or tuples");
            }
            const Rational symbolic = mixed_moment(MomentSpec{rs, g.p}, g.engine).eval_at(n);
            const bool match = symbolic == expected;
            if (g.fmt == RenderFormat::json)
                emit_json(out, query, json{{"symbolic", symbolic.str()}, {"oracle", expected.str()}, {"match", match}});
            else
                out << symbolic.str() << (match ? " = " : " != ") << expected.str() << '\n';
            if (!match) {
                err << "verification mismatch: symbolic " << symbolic.str() << ", " << oracle << " oracle "
                    << expected.str() << '\n';
                return exit_mismatch;
            }
        } else if (count->parsed()) {
            CountMethod cm;
            if (method == "naive") cm = CountMethod::naive;
            else if (method == "bitparallel") cm = CountMethod::bitparallel;
            else throw UsageError("--method must be naive or bitparallel");
            const SubsetBitmap S = SubsetBitmap::parse(subset);
            if (r > S.n()) throw UsageError("--r exceeds the dimension of the subset's points");
            base_query("count");
            query["s"] = subset;
            query["r"] = r;
            query["method"] = method;
            const auto c = count_subcubes(S, r, cm);
            if (g.fmt == RenderFormat::json) emit_json(out, query, c);
            else out << c << '\n';
        } else if (mc->parsed()) {
            require_half(g, "mc");
            base_query("mc");
            query["n"] = n;
            query["r"] = r;
            query["k"] = k;
            query["samples"] = samples;
            query["seed"] = seed;
            const McEstimate e = mc_estimate(n, r, k, samples, seed, g.threads);
            if (g.fmt == RenderFormat::json)
                emit_json(out, query,
                          json{{"mean", e.mean}, {"standard_error", e.standard_error}, {"samples", e.samples},
                               {"seed", e.seed}, {"rng", e.rng}});
            else
                out << "mean=" << fixed_str(e.mean, 12) << " se=" << fixed_str(e.standard_error, 6)
                    << " samples=" << e.samples << " seed=" << e.seed << " rng=" << e.rng << '\n';
        }
        return exit_ok;
    } catch (const ResourceAbort& e) {
        err << "resource abort: " << e.what() << '\n';
        return exit_resource_abort;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace subcubes
