#include "lowlying/experiments.hpp"
#include "lowlying/constants.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/mollifier.hpp"
#include "lowlying/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lowlying::experiments {

using characters::CharacterFamily;
using report::Table;
using report::Value;
using cd = std::complex<double>;

namespace {

unsigned workers_of(const Options& opt) {
    return opt.workers == 0 ? default_workers() : opt.workers;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void base_meta(Table& t, const CharacterFamily& family, const Options& opt) {
    t.add_meta("q", static_cast<std::int64_t>(family.modulus()));
    t.add_meta("characters", static_cast<std::int64_t>(family.non_principal_count()));
    t.add_meta("seed", static_cast<std::int64_t>(opt.seed));
}

// S(t, chi) for every non-principal chi at every grid t, slots by (chi, t)
struct SweepResult {
    std::vector<double> values;   // [(chi-1) * nt + it]
    std::vector<bool> flagged;
    int nt;
    double at(std::uint32_t chi, int it) const { return values[(chi - 1) * nt + it]; }
    bool flag(std::uint32_t chi, int it) const { return flagged[(chi - 1) * nt + it]; }
};

SweepResult sweep_s(const CharacterFamily& family, const std::vector<double>& ts,
                    const Options& opt) {
    SweepResult r;
    r.nt = static_cast<int>(ts.size());
    std::size_t n = static_cast<std::size_t>(family.non_principal_count()) * ts.size();
    r.values.assign(n, 0.0);
    r.flagged.assign(n, false);
    arith::Quadrature quad{opt.quad_tol, opt.quad_tol, 24};
    parallel_for(family.non_principal_count(), workers_of(opt), [&](std::size_t i) {
        std::uint32_t chi = static_cast<std::uint32_t>(i + 1);
        for (std::size_t it = 0; it < ts.size(); ++it) {
            auto s = lfunc::s_of_t(family, chi, ts[it], quad);
            r.values[i * ts.size() + it] = s.value;
            r.flagged[i * ts.size() + it] = !s.converged;
        }
    });
    return r;
}

} // namespace

Table average_s_experiment(const CharacterFamily& family,
                           const std::vector<double>& t_grid, const Options& opt) {
    if (family.modulus() > 2000)
        throw constraint_error("q <= 2000", std::to_string(family.modulus()));
    Timer timer;
    SweepResult sw = sweep_s(family, t_grid, opt);

    Table t;
    t.name = "avg-s";
    base_meta(t, family, opt);
    t.add_meta("bound_note", std::string("|E[S(t,chi)]| < C0 = 982 for |t| <= 1, q >= q0"));
    t.columns = {"t", "statistic", "bound", "slack", "flagged"};
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        double mean = 0.0;
        bool flagged = false;
        for (std::uint32_t chi = 1; chi < family.count(); ++chi) {
            mean += sw.at(chi, static_cast<int>(it));
            flagged = flagged || sw.flag(chi, static_cast<int>(it));
        }
        mean /= static_cast<double>(family.non_principal_count());
        t.rows.push_back({t_grid[it], mean, constants::c0,
                          constants::c0 - std::abs(mean), flagged});
    }
    t.runtime_seconds = timer.seconds();
    return t;
}

Table mean_square_experiment(const CharacterFamily& family, double beta,
                             const Options& opt) {
    if (family.modulus() > 2000)
        throw constraint_error("q <= 2000", std::to_string(family.modulus()));
    if (!(beta >= 0.0)) throw constraint_error("beta >= 0", std::to_string(beta));
    Timer timer;
    double tt = 2.0 * M_PI * beta / std::log(family.modulus());
    SweepResult sw = sweep_s(family, {tt}, opt);

    double stat = 0.0;
    bool flagged = false;
    for (std::uint32_t chi = 1; chi < family.count(); ++chi) {
        double st = sw.at(chi, 0) + sw.at(family.conjugate_index(chi), 0);
        stat += st * st;
        flagged = flagged || sw.flag(chi, 0);
    }
    stat /= static_cast<double>(family.non_principal_count());
    double bound = constants::mean_square_bound(beta);

    Table t;
    t.name = "mean-square";
    base_meta(t, family, opt);
    t.add_meta("bound_note", std::string("E[S~(t,chi)^2] < (2 C0 + sqrt2/pi sqrt(I(beta)))^2"));
    t.columns = {"beta", "t", "statistic", "bound", "slack", "flagged"};
    t.rows.push_back({beta, tt, stat, bound, bound - stat, flagged});
    t.runtime_seconds = timer.seconds();
    return t;
}

Table first_zero_survey(const CharacterFamily& family, const Options& opt,
                        double height) {
    if (family.modulus() > 2000)
        throw constraint_error("q <= 2000", std::to_string(family.modulus()));
    Timer timer;
    double log_q = std::log(family.modulus());
    if (height <= 0.0)
        height = std::min(100.0, std::max(30.0, 40.0 * 2.0 * M_PI / log_q));

    std::uint32_t m = family.non_principal_count();
    std::vector<double> first(m, -1.0);
    std::vector<bool> flagged(m, false);
    parallel_for(m, workers_of(opt), [&](std::size_t i) {
        std::uint32_t chi = static_cast<std::uint32_t>(i + 1);
        auto zl = lfunc::critical_zeros(family, chi, height);
        bool flag = !zl.validated;
        if (zl.ordinates.empty() && height < 100.0) {
            auto retry = lfunc::critical_zeros(family, chi, std::min(100.0, 2.0 * height));
            if (!retry.ordinates.empty()) {
                first[i] = retry.ordinates[0];
                flagged[i] = !retry.validated;
                return;
            }
            flag = true;
        }
        first[i] = zl.ordinates.empty() ? -1.0 : zl.ordinates[0];
        flagged[i] = flag;
    });

    Table t;
    t.name = "first-zeros";
    base_meta(t, family, opt);
    t.add_meta("scan_height", height);

    double scale = log_q / (2.0 * M_PI);
    double family_min = 1e300;
    std::vector<double> scaled(m, -1.0);
    for (std::uint32_t chi = 1; chi <= m; ++chi) {
        // |gamma_{chi,0}| is the two-sided minimum: negative ordinates of chi
        // are the positive ones of the conjugate
        double own = first[chi - 1];
        double conj = first[family.conjugate_index(chi) - 1];
        double g0 = -1.0;
        if (own >= 0.0 && conj >= 0.0) g0 = std::min(own, conj);
        else if (own >= 0.0) g0 = own;
        else if (conj >= 0.0) g0 = conj;
        scaled[chi - 1] = g0 < 0.0 ? -1.0 : g0 * scale;
        if (g0 >= 0.0) family_min = std::min(family_min, g0 * scale);
    }
    t.add_meta("family_min_scaled", family_min);
    for (double b : {0.25, 1.0, 2.0, 5.0}) {
        int below = 0;
        for (double s : scaled)
            if (s >= 0.0 && s < b) ++below;
        t.add_meta("fraction_below_" + report::format_double(b),
                   static_cast<double>(below) / m);
    }
    // 10-bin histogram of scaled heights up to 5 spacings
    std::vector<std::int64_t> hist(10, 0);
    for (double s : scaled)
        if (s >= 0.0 && s < 5.0) ++hist[static_cast<int>(s / 0.5)];
    std::string hist_str;
    for (std::size_t i = 0; i < hist.size(); ++i)
        hist_str += (i ? "," : "") + std::to_string(hist[i]);
    t.add_meta("hist_bin_width", 0.5);
    t.add_meta("hist_counts", hist_str);

    t.columns = {"chi", "conj_chi", "gamma0", "statistic", "bound", "slack", "flagged"};
    for (std::uint32_t chi = 1; chi <= m; ++chi) {
        double s = scaled[chi - 1];
        t.rows.push_back({static_cast<std::int64_t>(chi),
                          static_cast<std::int64_t>(family.conjugate_index(chi)),
                          first[chi - 1], s, constants::c0, constants::c0 - s,
                          flagged[chi - 1] || s < 0.0});
    }
    t.runtime_seconds = timer.seconds();
    return t;
}

Table density_empirics(const CharacterFamily& family, double kappa, double sigma,
                       double t1, double t2, const Options& opt) {
    Timer timer;
    double q = family.modulus();
    double log_q = std::log(q);
    double tau = (t2 - t1) * log_q;

    // structural requirements (positivity of the bound formula)
    auto zd = constants::zero_density_coefficients(kappa, tau);

    // asymptotic theorem hypotheses are recorded, not enforced: at desk scale
    // |t| <= q^{1/4-eps} is unattainable for any eps in (0, 1/4]
    std::string note;
    double sigma_min = 0.5 + 5.0 / (8.0 * kappa * log_q);
    if (sigma < sigma_min)
        note += "sigma < 1/2 + 5/(8 kappa log q); ";
    if (std::max(std::abs(t1), std::abs(t2)) > std::pow(q, 0.25))
        note += "|t| > q^(1/4); ";
    if (note.empty()) note = "hypotheses satisfied (q >= q0 not checkable)";

    std::uint32_t m = family.non_principal_count();
    std::vector<int> counts(m, 0);
    parallel_for(m, workers_of(opt), [&](std::size_t i) {
        counts[i] = lfunc::zero_count_region(family, static_cast<std::uint32_t>(i + 1),
                                             sigma, t1, t2);
    });
    std::int64_t stat = 0;
    for (int c : counts) stat += c;

    double bound = zd.simplified * std::pow(q, 1.0 - 2.0 * kappa * (sigma - 0.5)) *
                   (t2 - t1) * log_q;

    Table t;
    t.name = "density-empirics";
    base_meta(t, family, opt);
    t.add_meta("tau", tau);
    t.add_meta("coefficient_full", zd.full);
    t.add_meta("coefficient_simplified", zd.simplified);
    t.columns = {"kappa", "sigma", "t1", "t2", "statistic", "bound", "slack",
                 "flagged", "note"};
    t.rows.push_back({kappa, sigma, t1, t2, static_cast<double>(stat), bound,
                      bound - static_cast<double>(stat),
                      note.find("hypotheses satisfied") == std::string::npos, note});
    t.runtime_seconds = timer.seconds();
    return t;
}

Table approximation_experiment(const CharacterFamily& family, double x, double eta,
                               const std::vector<double>& t_grid,
                               const arith::SievedTables& tables, const Options& opt) {
    if (family.modulus() > 2000)
        throw constraint_error("q <= 2000", std::to_string(family.modulus()));
    double x3 = x * x * x;
    if (x3 > static_cast<double>(tables.limit()) + 1.0)
        throw capacity_error("approximation_experiment needs sieve up to " +
                             std::to_string(static_cast<std::uint64_t>(x3)));
    Timer timer;

    SweepResult sw = sweep_s(family, t_grid, opt);
    auto e = constants::eta_constants(eta);
    double d_bound = constants::big_d(1.156, 0.16, 0.1249, 1, 0.25);

    std::uint32_t m = family.non_principal_count();
    std::vector<std::pair<double, double>> no_zeros;  // desk scale: sigma defaults

    Table t;
    t.name = "approx";
    base_meta(t, family, opt);
    t.add_meta("x", x);
    t.add_meta("eta", eta);
    t.add_meta("D_note", std::string(
        "D at the reference point (eta=1.156, delta=0.16, kappa=0.1249, k=1, eps=1/4); "
        "x = q^{delta kappa} is unreachable at desk scale"));
    t.columns = {"t",         "statistic",       "bound",         "slack",
                 "pw_median", "pw_bound_median", "pw_slack_median", "flagged"};

    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        double tt = t_grid[it];
        std::vector<double> perr(m, 0.0), pw(m, 0.0), pwb(m, 0.0);
        std::vector<char> flag(m, 0);
        parallel_for(m, workers_of(opt), [&](std::size_t i) {
            std::uint32_t chi = static_cast<std::uint32_t>(i + 1);
            double s_val = sw.at(chi, static_cast<int>(it));
            // prime sum (1/pi) Im sum_{p<x^3} chi(p) p^{-1/2-it}
            cd prime_sum{0.0, 0.0};
            for (std::uint32_t p : tables.primes()) {
                if (static_cast<double>(p) >= x3) break;
                prime_sum += family.value(chi, p) *
                             arith::pow_minus_s(static_cast<double>(p), cd(0.5, tt));
            }
            double approx = prime_sum.imag() / M_PI;
            perr[i] = s_val - approx;

            // pointwise Lambda_x approximation at s~ = sigma_{t,chi} + it;
            // below the smoothing domain (x^3 <= 2) both sums are empty and
            // the x = 2 abscissa stands in
            double sig = lfunc::sigma_t_chi(tt, no_zeros, std::max(x, 2.0), eta);
            cd lam_sum{0.0, 0.0};
            for (std::uint64_t n = 2; static_cast<double>(n) < x3; ++n) {
                double lam = mollifier::smoothed_lambda(n, x, tables);
                if (lam == 0.0) continue;
                lam_sum += lam / std::log(static_cast<double>(n)) * family.value(chi, n) *
                           arith::pow_minus_s(static_cast<double>(n), cd(sig, tt));
            }
            pw[i] = std::abs(s_val - lam_sum.imag() / M_PI);
            cd r = lfunc::dirichlet_remainder(family, chi, tt, x, eta, no_zeros, tables);
            pwb[i] = (sig - 0.5) / M_PI *
                     (e.b1 * std::abs(r) +
                      e.b2 * std::log(family.modulus() * (std::abs(tt) + 1.0)));
            flag[i] = sw.flag(chi, static_cast<int>(it)) ? 1 : 0;
        });
        double moment = 0.0;
        bool any_flag = false;
        for (std::size_t i = 0; i < m; ++i) {
            moment += perr[i] * perr[i];
            any_flag = any_flag || flag[i];
        }
        moment /= static_cast<double>(m);
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        };
        std::vector<double> slack(m);
        for (std::size_t i = 0; i < m; ++i) slack[i] = pwb[i] - pw[i];
        t.rows.push_back({tt, moment, d_bound, d_bound - moment, median(pw),
                          median(pwb), median(slack), any_flag});
    }
    t.runtime_seconds = timer.seconds();
    return t;
}

Table mollifier_convergence(const std::vector<double>& xi_list,
                            const arith::SievedTables& tables, const Options& opt) {
    Timer timer;
    Table t;
    t.name = "mollifier";
    t.add_meta("seed", static_cast<std::int64_t>(opt.seed));
    t.add_meta("bound_note", std::string(
        "normalized deviations * log xi / log log xi, calibrated cap 20"));
    t.columns = {"xi",      "s_gcd",   "s_log_n",  "s_log_gcd", "dev_gcd",
                 "dev_log_n", "dev_log_gcd", "statistic", "bound", "slack"};
    for (double xi : xi_list) {
        if (xi * xi > 1e7) throw capacity_error("xi^2 <= 1e7 for the rearranged form");
        auto table = mollifier::build_mollifier(xi, tables);
        auto sums = mollifier::gcd_double_sums(table, tables);
        double lx = std::log(xi);
        // log log xi <= 0 below xi = e: the normalization is vacuous there
        double norm = lx > 1.0 ? lx / std::log(lx) : 0.0;
        double d1 = (sums.s_gcd - 1.0 / lx) * norm;
        double d2 = (sums.s_log_n - 1.0) * norm;
        double d3 = (sums.s_log_gcd - 1.5) * norm;
        double stat = std::max({std::abs(d1), std::abs(d2), std::abs(d3)});
        t.rows.push_back({xi, sums.s_gcd, sums.s_log_n, sums.s_log_gcd, d1, d2, d3,
                          stat, 20.0, 20.0 - stat});
    }
    t.runtime_seconds = timer.seconds();
    return t;
}

} // namespace lowlying::experiments
