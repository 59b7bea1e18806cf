// Acceptance suite: one criterion per section, one PASS/FAIL line each, all
// tolerances pinned in code.  Exit status is the number of failed criteria.
//
// Two sub-checks are expected to fail and are reported with the measured
// values rather than being loosened:
//   - criterion 1: the sqrt(D) window (981.3, 981.6) at kappa = 0.1249.  The
//     pipeline yields 981.8010 at 53-, 64- and 113-bit precision; the window
//     is attainable only in the kappa -> 1/8 limit (981.4365), since kappa
//     enters D through (5/4 - eps)/(delta kappa) alone.
//   - criterion 6: the mean-value moment inequality for random unit
//     coefficients.  Exact orthogonality gives
//       (q-2) lhs = (q-1) sum_n |b_n|^2 n^{-2s} - |sum_n b_n n^{-s}|^2,
//     so k = 1 fails whenever |sum a_p p^-s|^2 < sum |a_p|^2 p^-2s, and k = 2
//     fails for every draw supported on two or more primes (the multinomial
//     square exceeds the plain k-th power; unit coefficients give 2.1689 vs
//     1.3834 at q = 101).  The single-prime equality edge does hold exactly.

#include "lowlying/arith.hpp"
#include "lowlying/characters.hpp"
#include "lowlying/constants.hpp"
#include "lowlying/experiments.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/mollifier.hpp"
#include "lowlying/parallel.hpp"
#include "lowlying/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace lowlying;
using characters::CharacterFamily;
using cd = std::complex<double>;

namespace {

struct Criterion {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }

    bool finish() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (failures.empty()) {
            std::printf("[PASS] %s (%d checks, %.1fs)\n", name.c_str(), checks, secs);
            return true;
        }
        std::printf("[FAIL] %s (%zu of %d checks failed, %.1fs)\n", name.c_str(),
                    failures.size(), checks, secs);
        for (auto& f : failures) std::printf("       - %s\n", f.c_str());
        return false;
    }
};

std::string fmt(double v) { return report::format_double(v); }

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const arith::SievedTables& sieve_1e7() {
    static arith::SievedTables t(10'000'000);
    return t;
}

// ---------------------------------------------------------------------------

bool criterion_1() {
    Criterion c("criterion 1: constant reproduction");

    double mm = constants::mollifier_mean_constant();
    c.expect(mm > 6.198 && mm < 6.200, "mollifier mean " + fmt(mm) + " not in (6.198, 6.200)");

    double fx = constants::f_x_integral_constant();
    c.expect(fx == 29136.0 / 3360.0, "f_x integral not exactly 29136/3360");
    c.expect(fx < 8.68, "f_x integral not < 8.68");

    double pz = constants::prime_zeta_tail_constant(sieve_1e7());
    c.expect(pz < 0.53, "prime zeta tail " + fmt(pz) + " not < 0.53");

    double a6 = constants::a6_constant();
    c.expect(a6 < 0.58, "a6 " + fmt(a6) + " not < 0.58");

    auto h = constants::h_of_k(1);
    c.expect(h.value > 6.38 && h.value < 6.40,
             "h(1) " + fmt(h.value) + " not in (6.38, 6.40)");
    c.expect(h.delta_star > 0.64 && h.delta_star < 0.65,
             "h(1) argmin " + fmt(h.delta_star) + " not in (0.64, 0.65)");

    double lead = constants::density_leading_coefficient();
    c.expect(lead > 4.77 && lead < 4.79,
             "density leading coefficient " + fmt(lead) + " not in (4.77, 4.79)");
    double ratio = constants::density_window_ratio();
    c.expect(ratio > 0.8257 && ratio < 0.8259,
             "window ratio " + fmt(ratio) + " not in (0.8257, 0.8259)");

    double sd = std::sqrt(constants::big_d(1.156, 0.16, 0.1249, 1, 0.25));
    c.expect(sd > 981.3 && sd < 981.6,
             "sqrt D(1.156, 0.16, 0.1249, 1, 1/4) = " + fmt(sd) +
                 ", outside (981.3, 981.6); the window matches only the kappa -> 1/8 "
                 "limit " +
                 fmt(std::sqrt(constants::big_d(1.156, 0.16, 0.125 - 1e-12, 1, 0.25))));

    double c0b = constants::c0_pipeline(0.1249, 1e9);
    c.expect(c0b < 982.0, "c0 bound " + fmt(c0b) + " not < 982");

    return c.finish();
}

bool criterion_2() {
    Criterion c("criterion 2: optimizer recovery");
    auto r = constants::optimize_d_parameters(1, 0.25);
    double ref = std::sqrt(constants::big_d(1.156, 0.16, 0.1249, 1, 0.25));
    c.expect(r.value <= ref + 1e-3,
             "found sqrt D " + fmt(r.value) + " worse than the reference " + fmt(ref));
    c.expect(std::abs(r.eta - 1.156) <= 0.05,
             "eta* = " + fmt(r.eta) + " not within 0.05 of 1.156");
    c.expect(std::abs(r.delta - 0.16) <= 0.01,
             "delta* = " + fmt(r.delta) + " not within 0.01 of 0.16");
    return c.finish();
}

bool criterion_3() {
    Criterion c("criterion 3: oracle equivalence");
    auto& sv = sieve_1e7();

    for (double xi : {2.0, 5.5, 17.0, 60.0, 131.7, 222.0, 300.0}) {
        auto table = mollifier::build_mollifier(xi, sv);
        auto d = mollifier::gcd_double_sums_direct(table);
        auto r = mollifier::gcd_double_sums_rearranged(table, sv);
        bool ok = std::abs(d.s_gcd - r.s_gcd) < 1e-9 &&
                  std::abs(d.s_log_n - r.s_log_n) < 1e-9 &&
                  std::abs(d.s_log_gcd - r.s_log_gcd) < 1e-9;
        c.expect(ok, "gcd double sums disagree at xi = " + fmt(xi));
    }

    bool phi_ok = true, recomp_ok = true;
    for (std::uint64_t r = 1; r <= 10'000; ++r) {
        if (sv.mobius(r) != 0) {
            double a = mollifier::phi_prime(r, sv);
            double b = mollifier::phi_prime_divisor_form(r, sv);
            if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) phi_ok = false;
        }
    }
    for (std::uint64_t n = 2; n <= 10'000; ++n) {
        double s = 0.0;
        for (std::uint64_t d : sv.divisors(n)) s += mollifier::phi_prime(d, sv);
        double want = n * std::log(static_cast<double>(n));
        if (std::abs(s - want) > 1e-10 * want) recomp_ok = false;
    }
    c.expect(phi_ok, "phi' dual formulas disagree on a squarefree r <= 1e4");
    c.expect(recomp_ok, "n log n recomposition fails below 1e4");

    // breakpoint continuity of the smoothing weights, exact branch algebra
    auto mid = [](double u) { double a = 3 - u, b = 2 - u; return (a * a - 2 * b * b) / 2; };
    auto top = [](double u) { double a = 3 - u; return a * a / 2; };
    c.expect(std::abs(mid(1.0) - 1.0) < 1e-12 && std::abs(mid(2.0) - top(2.0)) < 1e-12 &&
                 std::abs(top(3.0)) < 1e-12,
             "Lambda_x breakpoint continuity above 1e-12");
    for (double xi : {10.0, 100.0}) {
        std::uint64_t n = static_cast<std::uint64_t>(xi);
        double lower = static_cast<double>(sv.mobius(n));
        double upper = sv.mobius(n) * std::log(xi * xi / n) / std::log(xi);
        c.expect(std::abs(lower - upper) < 1e-12,
                 "lambda_n branch mismatch at n = xi = " + fmt(xi));
    }
    return c.finish();
}

bool criterion_4() {
    Criterion c("criterion 4: L-function validity");
    std::mt19937_64 rng(0x10c4);
    const double height = 30.0;

    for (std::uint32_t q : {3u, 5u, 7u, 11u, 101u}) {
        CharacterFamily family(q);
        std::uint32_t m = family.non_principal_count();

        std::vector<int> scan_ok(m, 0), reality_ok(m, 0);
        std::vector<double> seeds(m);
        for (std::uint32_t i = 0; i < m; ++i) seeds[i] = uniform01(rng);
        parallel_for(m, default_workers(), [&](std::size_t i) {
            std::uint32_t chi = static_cast<std::uint32_t>(i + 1);
            auto zl = lfunc::critical_zeros(family, chi, height);
            scan_ok[i] = zl.validated && zl.discrepancy == 0;
            auto rot = lfunc::make_rotation(family, chi);
            std::mt19937_64 local(0xbeef + static_cast<std::uint64_t>(seeds[i] * 1e9));
            double worst = 0.0;
            for (int k = 0; k < 25; ++k) {
                double t = height * uniform01(local);
                double im;
                lfunc::rotated_z(family, rot, t, &im);
                worst = std::max(worst, std::abs(im));
            }
            reality_ok[i] = worst < 1e-9;
        });
        for (std::uint32_t i = 0; i < m; ++i) {
            c.expect(scan_ok[i] == 1, "q=" + std::to_string(q) + " chi=" +
                                          std::to_string(i + 1) +
                                          ": argument-principle count mismatch");
            c.expect(reality_ok[i] == 1, "q=" + std::to_string(q) + " chi=" +
                                             std::to_string(i + 1) +
                                             ": rotated-Z reality residual >= 1e-9");
        }

        // counting formula vs pair counts at 20 random t (chi = 1)
        auto za = lfunc::critical_zeros(family, 1, height);
        auto zb = lfunc::critical_zeros(family, family.conjugate_index(1), height);
        bool formula_ok = true;
        for (int k = 0; k < 20; ++k) {
            double t = 0.2 + (height - 2.0) * uniform01(rng);
            double st = lfunc::s_tilde(family, 1, t);
            double n = lfunc::counting_formula(family, 1, t, st);
            int pc = lfunc::pair_count(za, zb, t);
            if (std::lround(n) != pc || std::abs(n - pc) > 0.51) {
                formula_ok = false;
                break;
            }
        }
        c.expect(formula_ok, "q=" + std::to_string(q) + ": counting formula vs pair count");

        // antisymmetry under (t, chi) -> (-t, conj chi)
        for (double t : {0.5, 1.0}) {
            double a = lfunc::s_of_t(family, 1, -t).value;
            double b = lfunc::s_of_t(family, family.conjugate_index(1), t).value;
            c.expect(std::abs(a + b) < 1e-8,
                     "q=" + std::to_string(q) + ": S(-t, conj) + S(t) = " + fmt(a + b));
        }

        // conjugate-spectrum reflection pairing
        bool pair_ok = true;
        for (double g : za.ordinates)
            if (std::abs(lfunc::l_value(family, family.conjugate_index(1), cd(0.5, -g))) >
                1e-8)
                pair_ok = false;
        c.expect(pair_ok, "q=" + std::to_string(q) + ": reflected ordinates not zeros of conj");
    }
    return c.finish();
}

bool criterion_5() {
    Criterion c("criterion 5: Littlewood identity");
    auto z = lfunc::littlewood_identity_check(1.5, 1.0, -3.0, 3.0);
    c.expect(z.zeros_in_window == 0 && std::abs(z.lhs - z.rhs) < 1e-6,
             "zero-free case |lhs - rhs| = " + fmt(std::abs(z.lhs - z.rhs)));
    auto one = lfunc::littlewood_identity_check(4.0, 1.0, -3.0, 3.0);
    c.expect(one.zeros_in_window == 1 && std::abs(one.lhs - one.rhs) < 1e-6,
             "one-zero case |lhs - rhs| = " + fmt(std::abs(one.lhs - one.rhs)));
    return c.finish();
}

bool criterion_6() {
    Criterion c("criterion 6: mean-value moment inequality");

    CharacterFamily f5(5);
    auto edge = characters::twisted_prime_moment(f5, {{2, cd{1.0, 0.0}}}, 2.0, 0.5, 1, 1);
    c.expect(edge.lhs == edge.rhs && std::abs(edge.lhs - 0.5) < 1e-15,
             "q=5 equality edge: lhs " + fmt(edge.lhs) + " rhs " + fmt(edge.rhs));

    std::mt19937_64 rng(0x10c6);
    for (std::uint32_t q : {101u, 499u}) {
        CharacterFamily family(q);
        for (int k : {1, 2}) {
            double y = std::floor(std::pow(static_cast<double>(q), 1.0 / k));
            std::vector<std::uint32_t> ps;
            for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u})
                if (p <= y) ps.push_back(p);
            int violations = 0;
            double worst = 0.0;
            for (int d = 0; d < 50; ++d) {
                std::vector<std::pair<std::uint32_t, cd>> a;
                for (std::uint32_t p : ps)
                    a.emplace_back(p, std::polar(1.0, 2.0 * M_PI * uniform01(rng)));
                auto m = characters::twisted_prime_moment(family, a, y, 0.5, k, 1);
                if (!m.lhs_le_rhs) {
                    ++violations;
                    worst = std::max(worst, m.lhs - m.rhs);
                }
            }
            c.expect(violations == 0,
                     "q=" + std::to_string(q) + " k=" + std::to_string(k) + ": " +
                         std::to_string(violations) +
                         "/50 random unit draws violate lhs <= rhs (worst excess " +
                         fmt(worst) + "); the k!-free bound fails for multi-prime support");
        }
    }
    return c.finish();
}

bool criterion_7() {
    Criterion c("criterion 7: asymptotic-statement desk checks");
    experiments::Options opt;
    opt.quad_tol = 1e-6;

    for (std::uint32_t q : {101u, 499u, 997u}) {
        CharacterFamily family(q);
        auto avg = experiments::average_s_experiment(family, {0.0, 0.5, 1.0}, opt);
        for (std::size_t r = 0; r < avg.rows.size(); ++r) {
            double stat = std::get<double>(avg.rows[r][1]);
            c.expect(std::abs(stat) < 982.0,
                     "q=" + std::to_string(q) + ": |E[S]| = " + fmt(std::abs(stat)));
        }
        auto ms = experiments::mean_square_experiment(family, 5.0, opt);
        double stat = std::get<double>(ms.rows[0][2]);
        double bound = std::get<double>(ms.rows[0][3]);
        c.expect(stat < bound, "q=" + std::to_string(q) + ": E[S~^2] = " + fmt(stat) +
                                   " not below " + fmt(bound));
        std::printf("       q=%u: |E[S]| max %.4f, E[S~^2] = %.4f vs bound %.0f\n", q,
                    std::max({std::abs(std::get<double>(avg.rows[0][1])),
                              std::abs(std::get<double>(avg.rows[1][1])),
                              std::abs(std::get<double>(avg.rows[2][1]))}),
                    stat, bound);
    }

    auto mc = experiments::mollifier_convergence({100.0, 316.22776601683794, 1000.0},
                                                 sieve_1e7(), opt);
    for (std::size_t r = 0; r < mc.rows.size(); ++r) {
        double stat = std::get<double>(mc.rows[r][7]);
        c.expect(stat <= 20.0, "gcd-sum normalized deviation " + fmt(stat) + " above 20");
    }

    for (std::uint32_t q : {101u, 499u}) {
        CharacterFamily family(q);
        double log_q = std::log(static_cast<double>(q));
        double sigma = 0.5 + 5.0 / (8.0 * 0.125 * log_q) + 0.02;
        double t2 = 1.05 * 1.73 / (0.125 * log_q);
        auto de = experiments::density_empirics(family, 0.125, sigma, 0.0, t2, opt);
        double stat = std::get<double>(de.rows[0][4]);
        double bound = std::get<double>(de.rows[0][5]);
        c.expect(stat == 0.0, "q=" + std::to_string(q) + ": off-line zero count " + fmt(stat));
        c.expect(bound > 0.0, "q=" + std::to_string(q) + ": density bound not positive");
    }
    return c.finish();
}

bool criterion_8() {
    Criterion c("criterion 8: mean-square bound and proportion formulas");
    c.expect(constants::mean_square_bound(0.0) == 3857296.0,
             "mean_square_bound(0) != 3857296 exactly");
    double near = constants::proportion_lower_bound(982.001);
    c.expect(near < 1e-6, "proportion at beta -> C0+ is " + fmt(near));
    double far = constants::proportion_lower_bound(1e6);
    c.expect(far > 0.99, "proportion at beta = 1e6 is " + fmt(far));
    return c.finish();
}

} // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);   // live lines under ctest/tee
    std::printf("acceptance suite (tolerances pinned in source)\n");
    int failed = 0;
    failed += !criterion_1();
    failed += !criterion_2();
    failed += !criterion_3();
    failed += !criterion_4();
    failed += !criterion_5();
    failed += !criterion_6();
    failed += !criterion_7();
    failed += !criterion_8();
    std::printf("%d of 8 criteria fully green\n", 8 - failed);
    if (failed)
        std::printf("failing sub-checks above are reproduced faithfully and measured, "
                    "not loosened; see the header comment for the analysis\n");
    return failed;
}
