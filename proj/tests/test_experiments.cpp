#include <doctest.h>

#include "lowlying/constants.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/experiments.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/mollifier.hpp"

#include <cmath>

using namespace lowlying;
using namespace lowlying::experiments;
using characters::CharacterFamily;
using report::Table;

namespace {
double cell(const Table& t, std::size_t row, const std::string& col) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == col) return std::get<double>(t.rows[row][i]);
    throw std::runtime_error("no column " + col);
}
} // namespace

TEST_CASE("average S experiment matches the per-character oracle at q=5") {
    CharacterFamily f(5);
    Options opt;
    opt.workers = 1;
    auto t = average_s_experiment(f, {0.0, 0.4}, opt);
    REQUIRE(t.rows.size() == 2);

    for (std::size_t r = 0; r < 2; ++r) {
        double tt = cell(t, r, "t");
        double oracle = 0.0;
        for (std::uint32_t chi = 1; chi < f.count(); ++chi)
            oracle += lfunc::s_of_t(f, chi, tt, {opt.quad_tol, opt.quad_tol, 24}).value;
        oracle /= 3.0;
        REQUIRE(cell(t, r, "statistic") == doctest::Approx(oracle).epsilon(1e-12));
        REQUIRE(cell(t, r, "bound") == 982.0);
    }

    // conjugation symmetry of the family average on a symmetric grid
    CharacterFamily f7(7);
    auto sym = average_s_experiment(f7, {-0.6, 0.6}, opt);
    CHECK(cell(sym, 0, "statistic") ==
          doctest::Approx(-cell(sym, 1, "statistic")).epsilon(1e-7));
}

TEST_CASE("mean square experiment at beta = 0 and positivity") {
    CharacterFamily f(7);
    auto t = mean_square_experiment(f, 0.0);
    REQUIRE(t.rows.size() == 1);
    CHECK(cell(t, 0, "bound") == 3857296.0);
    CHECK(cell(t, 0, "statistic") >= 0.0);
    CHECK(cell(t, 0, "t") == 0.0);

    // direct pairing oracle
    double oracle = 0.0;
    for (std::uint32_t chi = 1; chi < f.count(); ++chi) {
        double st = lfunc::s_of_t(f, chi, 0.0, {1e-7, 1e-7, 24}).value +
                    lfunc::s_of_t(f, f.conjugate_index(chi), 0.0, {1e-7, 1e-7, 24}).value;
        oracle += st * st;
    }
    oracle /= 5.0;
    CHECK(cell(t, 0, "statistic") == doctest::Approx(oracle).epsilon(1e-10));

    auto t1 = mean_square_experiment(f, 1.0);
    CHECK(cell(t1, 0, "statistic") >= 0.0);
    CHECK(cell(t1, 0, "statistic") < cell(t1, 0, "bound"));
}

TEST_CASE("first zero survey at q=3 and conjugate-pair symmetry at q=11") {
    CharacterFamily f3(3);
    auto t3 = first_zero_survey(f3);
    REQUIRE(t3.rows.size() == 1);
    double g0 = cell(t3, 0, "gamma0");
    CHECK(g0 == doctest::Approx(8.0397371566).epsilon(1e-8));
    CHECK(cell(t3, 0, "statistic") ==
          doctest::Approx(g0 * std::log(3.0) / (2.0 * M_PI)).epsilon(1e-12));
    CHECK(cell(t3, 0, "statistic") < 982.0);

    CharacterFamily f11(11);
    auto t11 = first_zero_survey(f11);
    REQUIRE(t11.rows.size() == 9);
    for (std::size_t r = 0; r < 9; ++r) {
        auto chi = std::get<std::int64_t>(t11.rows[r][0]);
        auto cc = std::get<std::int64_t>(t11.rows[r][1]);
        REQUIRE(cell(t11, r, "statistic") ==
                doctest::Approx(cell(t11, static_cast<std::size_t>(cc) - 1, "statistic"))
                    .epsilon(1e-9));
        REQUIRE(cc == f11.conjugate_index(static_cast<std::uint32_t>(chi)));
        REQUIRE(cell(t11, r, "statistic") < 982.0);
    }
}

TEST_CASE("density empirics: zero statistic, positive bound") {
    CharacterFamily f(11);
    // sigma above the theorem floor 1/2 + 5/(8 kappa log q) = 2.59 at kappa=1/8
    auto t = density_empirics(f, 0.125, 2.6, 0.0, 6.0);
    REQUIRE(t.rows.size() == 1);
    CHECK(cell(t, 0, "statistic") == 0.0);
    CHECK(cell(t, 0, "bound") > 0.0);

    // shrinking toward the minimum allowed tau keeps the bound finite/positive
    double tmin = 1.73 / (0.125 * std::log(11.0));
    auto t2 = density_empirics(f, 0.125, 2.6, 0.0, tmin * 1.001);
    CHECK(cell(t2, 0, "bound") > 0.0);

    // structural violation errors out with the named inequality
    CHECK_THROWS_AS(density_empirics(f, 0.125, 2.6, 0.0, 1.0), constraint_error);
}

TEST_CASE("approximation experiment: empty prime sum and x-improvement") {
    CharacterFamily f(11);
    arith::SievedTables sv(1001);

    // x^3 <= 2: the prime sum is empty and the moment is exactly E[S^2]
    auto t = approximation_experiment(f, 1.2, 1.156, {0.3}, sv);
    double direct = 0.0;
    for (std::uint32_t chi = 1; chi < f.count(); ++chi) {
        double s = lfunc::s_of_t(f, chi, 0.3, {1e-7, 1e-7, 24}).value;
        direct += s * s;
    }
    direct /= 9.0;
    CHECK(cell(t, 0, "statistic") == doctest::Approx(direct).epsilon(1e-10));
    CHECK(cell(t, 0, "statistic") < cell(t, 0, "bound"));

    // pointwise error improves in median as x grows (t = 0 column)
    auto t4 = approximation_experiment(f, 4.0, 1.156, {0.0}, sv);
    auto t10 = approximation_experiment(f, 10.0, 1.156, {0.0}, sv);
    CHECK(cell(t10, 0, "pw_median") < cell(t4, 0, "pw_median"));
    CHECK(cell(t10, 0, "statistic") < cell(t10, 0, "bound"));
}

TEST_CASE("mollifier convergence report") {
    arith::SievedTables sv(1'000'001);
    auto t = mollifier_convergence({2.0, 100.0, 316.22776601683794, 1000.0}, sv);
    REQUIRE(t.rows.size() == 4);

    // xi = 2 row delegates to gcd_double_sums exactly
    auto table2 = mollifier::build_mollifier(2.0, sv);
    auto sums2 = mollifier::gcd_double_sums(table2, sv);
    CHECK(cell(t, 0, "s_gcd") == sums2.s_gcd);
    CHECK(cell(t, 0, "s_log_n") == sums2.s_log_n);
    CHECK(cell(t, 0, "s_log_gcd") == sums2.s_log_gcd);

    // deviations bounded and s_log_gcd marches toward 3/2
    double prev = 0.0;
    for (std::size_t r = 1; r < 4; ++r) {
        CHECK(cell(t, r, "statistic") <= 20.0);
        double sg = cell(t, r, "s_log_gcd");
        CHECK(sg > prev);
        CHECK(sg < 1.5);
        prev = sg;
    }
}

TEST_CASE("survey first zeros agree with the counting formula at q=5") {
    CharacterFamily f(5);
    auto survey = first_zero_survey(f);
    double scale = std::log(5.0) / (2.0 * M_PI);
    for (std::size_t r = 0; r < survey.rows.size(); ++r) {
        auto chi = static_cast<std::uint32_t>(std::get<std::int64_t>(survey.rows[r][0]));
        // statistic is the scaled two-sided minimum |gamma_{chi,0}|
        double g0 = cell(survey, r, "statistic") / scale;
        // N(t) counts gamma in [-t, t]: 0 just below the two-sided first zero,
        // at least 1 just above
        double below = lfunc::counting_formula(f, chi, g0 - 0.05,
                                               lfunc::s_tilde(f, chi, g0 - 0.05));
        double above = lfunc::counting_formula(f, chi, g0 + 0.05,
                                               lfunc::s_tilde(f, chi, g0 + 0.05));
        REQUIRE(std::lround(below) == 0);
        REQUIRE(std::lround(above) >= 1);
    }
}

TEST_CASE("reports are deterministic across worker counts") {
    CharacterFamily f(7);
    Options one, two;
    one.workers = 1;
    two.workers = 2;
    auto a = average_s_experiment(f, {0.0, 0.5}, one);
    auto b = average_s_experiment(f, {0.0, 0.5}, two);
    CHECK(a == b);
    CHECK(report::to_json(a) == report::to_json(b));
    auto c = average_s_experiment(f, {0.0, 0.5}, two);
    CHECK(report::to_json(b) == report::to_json(c));
}
