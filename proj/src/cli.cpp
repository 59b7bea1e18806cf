#include "lowlying/cli.hpp"
#include "lowlying/constants.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/experiments.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/report.hpp"
#include "lowlying/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lowlying::cli {

using report::Table;

namespace {

struct Common {
    std::string format = "json";
    std::string output;
    std::string prec = "extended:80";
    unsigned workers = 0;
    std::uint64_t seed = 0;
    double tol = 1e-7;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("LOWLYING_FORMAT");
    cmd->add_option("--output", c.output, "output path (default: stdout)")
        ->envname("LOWLYING_OUTPUT");
    cmd->add_option("--prec", c.prec, "double | extended:80 | extended:128")
        ->envname("LOWLYING_PREC");
    cmd->add_option("--workers", c.workers, "worker threads (default: logical cores)")
        ->envname("LOWLYING_WORKERS");
    cmd->add_option("--seed", c.seed, "seed recorded in report meta")
        ->envname("LOWLYING_SEED");
    cmd->add_option("--tol", c.tol, "sweep quadrature tolerance")
        ->envname("LOWLYING_TOL");
}

constants::Precision parse_prec(const std::string& s) {
    if (s == "double") return constants::Precision::float64;
    if (s == "extended" || s == "extended:64" || s == "extended:80")
        return constants::Precision::extended80;
    if (s == "extended:128" || s == "extended:113") return constants::Precision::quad128;
    throw constraint_error("prec in {double, extended:80, extended:128}", s);
}

experiments::Options make_options(const Common& c) {
    experiments::Options o;
    o.workers = c.workers;
    o.quad_tol = c.tol;
    o.seed = c.seed;
    return o;
}

void emit(Table t, const Common& c) {
    bool has_seed = false;
    for (auto& [k, v] : t.meta) has_seed = has_seed || k == "seed";
    if (!has_seed) t.add_meta("seed", static_cast<std::int64_t>(c.seed));
    t.meta.insert(t.meta.begin(), {"version", std::string(lowlying::version)});
    std::string bytes = c.format == "csv" ? report::to_csv(t) : report::to_json(t);
    if (c.output.empty()) {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) throw numeric_error("cannot write to " + c.output);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    std::fprintf(stderr, "# %s finished in %.2fs\n", t.name.c_str(), t.runtime_seconds);
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw constraint_error("non-empty grid", s);
    return out;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"desk-scale statistics and explicit constants for the argument of "
                 "Dirichlet L-functions"};
    app.require_subcommand(1);

    // shared state, one block per subcommand
    Common c;
    std::uint32_t q = 101;
    double eta = 1.156, delta = 0.16, kappa = 0.1249, eps = 0.25;
    int k = 1;
    double beta = 0.0, sigma = 1.6, t1 = 0.0, t2 = 3.0, height = 30.0, x = 10.0;
    double lit_a = 4.0, sigma_prime = 1.0, tau = 20.0;
    std::string t_grid = "0,0.5,1", xi_list = "100,316.2,1000";
    std::uint32_t chi = 0;

    auto* c_constants = app.add_subcommand("constants", "the full constants pipeline");
    c_constants->add_option("--eta", eta)->envname("LOWLYING_ETA");
    c_constants->add_option("--delta", delta)->envname("LOWLYING_DELTA");
    c_constants->add_option("--kappa", kappa)->envname("LOWLYING_KAPPA");
    c_constants->add_option("--k", k)->envname("LOWLYING_K");
    c_constants->add_option("--eps", eps)->envname("LOWLYING_EPS");
    add_common(c_constants, c);

    auto* c_opt = app.add_subcommand("optimize-d", "grid + refinement search for sqrt D");
    c_opt->add_option("--k", k);
    c_opt->add_option("--eps", eps);
    add_common(c_opt, c);

    auto* c_db = app.add_subcommand("density-bound", "zero-density coefficients");
    c_db->add_option("--kappa", kappa);
    c_db->add_option("--tau", tau);
    add_common(c_db, c);

    auto* c_zeros = app.add_subcommand("zeros", "validated critical-line ordinates");
    c_zeros->add_option("--q", q)->envname("LOWLYING_Q");
    c_zeros->add_option("--chi", chi, "character index (0: all non-principal)");
    c_zeros->add_option("--T", height);
    add_common(c_zeros, c);

    auto* c_fz = app.add_subcommand("first-zeros", "scaled first-zero survey");
    c_fz->add_option("--q", q)->envname("LOWLYING_Q");
    double fz_height = 0.0;
    c_fz->add_option("--T", fz_height, "scan height override (0: automatic)");
    add_common(c_fz, c);

    auto* c_avg = app.add_subcommand("avg-s", "E[S(t,chi)] over the family");
    c_avg->add_option("--q", q)->envname("LOWLYING_Q");
    c_avg->add_option("--t-grid", t_grid, "comma-separated t values");
    add_common(c_avg, c);

    auto* c_ms = app.add_subcommand("mean-square", "E[S~(t,chi)^2] vs the bound");
    c_ms->add_option("--q", q)->envname("LOWLYING_Q");
    c_ms->add_option("--beta", beta);
    add_common(c_ms, c);

    auto* c_de = app.add_subcommand("density-empirics", "zero counts vs the density bound");
    c_de->add_option("--q", q)->envname("LOWLYING_Q");
    c_de->add_option("--kappa", kappa);
    c_de->add_option("--sigma", sigma);
    c_de->add_option("--t1", t1);
    c_de->add_option("--t2", t2);
    add_common(c_de, c);

    auto* c_mo = app.add_subcommand("mollifier", "gcd double sums vs predicted limits");
    c_mo->add_option("--xi-list", xi_list, "comma-separated xi values");
    add_common(c_mo, c);

    auto* c_ap = app.add_subcommand("approx", "prime-sum approximation of S(t,chi)");
    c_ap->add_option("--q", q)->envname("LOWLYING_Q");
    c_ap->add_option("--x", x);
    c_ap->add_option("--eta", eta);
    c_ap->add_option("--t-grid", t_grid);
    add_common(c_ap, c);

    auto* c_lw = app.add_subcommand("littlewood-check", "closed-form Littlewood identity");
    c_lw->add_option("--a", lit_a);
    c_lw->add_option("--sigma-prime", sigma_prime);
    c_lw->add_option("--t1", t1);
    c_lw->add_option("--t2", t2);
    add_common(c_lw, c);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        auto prec = parse_prec(c.prec);
        auto opts = make_options(c);

        if (*c_constants) {
            arith::SievedTables tables(10'000'000);
            auto rep = constants::build_constants_report(eta, delta, kappa, k, eps,
                                                         tables, prec);
            Table t;
            t.name = "constants";
            t.add_meta("eta", eta);
            t.add_meta("delta", delta);
            t.add_meta("kappa", kappa);
            t.add_meta("k", static_cast<std::int64_t>(k));
            t.add_meta("eps", eps);
            t.add_meta("prec", c.prec);
            t.columns = {"name", "value", "note"};
            for (auto& e2 : rep.entries) t.rows.push_back({e2.name, e2.value, e2.note});
            emit(std::move(t), c);
        } else if (*c_opt) {
            auto r = constants::optimize_d_parameters(k, eps, prec);
            double ref = std::sqrt(constants::big_d(1.156, 0.16, 0.1249, k, eps, prec));
            Table t;
            t.name = "optimize-d";
            t.add_meta("k", static_cast<std::int64_t>(k));
            t.add_meta("eps", eps);
            t.add_meta("kappa", 0.1249);
            t.add_meta("reference_value", ref);
            t.columns = {"eta_star", "delta_star", "value"};
            t.rows.push_back({r.eta, r.delta, r.value});
            emit(std::move(t), c);
        } else if (*c_db) {
            auto zd = constants::zero_density_coefficients(kappa, tau);
            Table t;
            t.name = "density-bound";
            t.add_meta("leading_coefficient", constants::density_leading_coefficient());
            t.add_meta("window_ratio", constants::density_window_ratio());
            t.columns = {"kappa", "tau", "full", "simplified", "a", "b"};
            t.rows.push_back({kappa, tau, zd.full, zd.simplified, zd.a, zd.b});
            emit(std::move(t), c);
        } else if (*c_zeros) {
            characters::CharacterFamily family(q);
            Table t;
            t.name = "zeros";
            t.add_meta("q", static_cast<std::int64_t>(q));
            t.add_meta("T", height);
            t.columns = {"chi", "index", "gamma", "validated"};
            std::vector<std::uint32_t> which;
            if (chi == 0)
                for (std::uint32_t i = 1; i < family.count(); ++i) which.push_back(i);
            else
                which.push_back(chi);
            for (std::uint32_t ci : which) {
                auto zl = lfunc::critical_zeros(family, ci, height);
                for (std::size_t i = 0; i < zl.ordinates.size(); ++i)
                    t.rows.push_back({static_cast<std::int64_t>(ci),
                                      static_cast<std::int64_t>(i), zl.ordinates[i],
                                      zl.validated});
            }
            emit(std::move(t), c);
        } else if (*c_fz) {
            characters::CharacterFamily family(q);
            emit(experiments::first_zero_survey(family, opts, fz_height), c);
        } else if (*c_avg) {
            characters::CharacterFamily family(q);
            emit(experiments::average_s_experiment(family, parse_grid(t_grid), opts), c);
        } else if (*c_ms) {
            characters::CharacterFamily family(q);
            emit(experiments::mean_square_experiment(family, beta, opts), c);
        } else if (*c_de) {
            characters::CharacterFamily family(q);
            emit(experiments::density_empirics(family, kappa, sigma, t1, t2, opts), c);
        } else if (*c_mo) {
            auto xis = parse_grid(xi_list);
            double needed = 0.0;
            for (double v : xis) needed = std::max(needed, v * v);
            arith::SievedTables tables(
                std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(needed) + 1));
            emit(experiments::mollifier_convergence(xis, tables, opts), c);
        } else if (*c_ap) {
            characters::CharacterFamily family(q);
            arith::SievedTables tables(std::max<std::uint64_t>(
                1000, static_cast<std::uint64_t>(x * x * x) + 1));
            emit(experiments::approximation_experiment(family, x, eta,
                                                       parse_grid(t_grid), tables, opts),
                 c);
        } else if (*c_lw) {
            auto r = lfunc::littlewood_identity_check(lit_a, sigma_prime, t1, t2);
            Table t;
            t.name = "littlewood-check";
            t.columns = {"a", "sigma_prime", "t1", "t2", "zeros", "lhs", "rhs", "diff"};
            t.rows.push_back({lit_a, sigma_prime, t1, t2,
                              static_cast<std::int64_t>(r.zeros_in_window), r.lhs, r.rhs,
                              r.lhs - r.rhs});
            emit(std::move(t), c);
        }
        return 0;
    } catch (const constraint_error& e) {
        std::fprintf(stderr, "constraint violation: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace lowlying::cli
