#pragma once

// Every explicit constant of the argument-estimate pipeline as deterministic
// numerics: A, B1, B2, the incomplete-gamma moment constant C(eta,delta,r,v),
// h(k), D, the zero-density coefficients, and the headline C0 bound, plus the
// scalar optimization that reproduces the reference parameter choices.

#include "lowlying/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lowlying::constants {

inline constexpr double c0 = 982.0;

// Constants-pipeline arithmetic runs at >= 64-bit significand by default
// (x87 long double); quad128 switches to __float128 (113-bit significand).
enum class Precision { float64, extended80, quad128 };

struct EtaConstants {
    double eta;
    double a;       // A(eta)
    double b1;      // B1(eta)
    double b2;      // B2(eta)
};

EtaConstants eta_constants(double eta, Precision prec = Precision::extended80);

// e^{1/4}(e-1)(-3/(2(e-1)) + 4e/(e-1)^2) = 6.199..., the L*psi mean-square constant
double mollifier_mean_constant();

// C(eta, delta, r, v); requires eta >= 1, r,v >= 0, 0 < delta < 2/(2r+3)
double big_c(double eta, double delta, double r, double v,
             Precision prec = Precision::extended80);

struct HOfK {
    double value;        // min over Delta of bracket^{1/2k}
    double delta_star;   // argmin
};

HOfK h_of_k(int k, Precision prec = Precision::extended80);

// exact rational 29136/3360 plus its piecewise-quadrature re-derivation
double f_x_integral_constant();
double f_x_integral_quadrature();

// sum_{l=3}^{500} zetaP(l/2)/l + (1/499 + 1/500), reported as an upper bound
double prime_zeta_tail_constant(const arith::SievedTables& tables);

// log 3 - (3/4) log 2 = 0.57875...
double a6_constant();

// D(eta, delta, kappa, k, eps); constraint violations raise named errors
double big_d(double eta, double delta, double kappa, int k, double eps,
             Precision prec = Precision::extended80);

// (2/pi) q^{3/88 - 1} + sqrt(D(1.156, 0.16, kappa, 1, 1/4))
double c0_pipeline(double kappa, double q, Precision prec = Precision::extended80);

struct ZeroDensityCoefficients {
    double full;         // C(kappa, a, b, tau) at 2b kappa = 1, 2a/tau = 0.82579
    double simplified;   // 4.79 kappa + 4.12/(2 tau - 1.73/kappa)
    double a;
    double b;
};

ZeroDensityCoefficients zero_density_coefficients(double kappa, double tau);

// full/kappa with the tau-decaying bracket term dropped: ~4.7796
double density_leading_coefficient();
// argmin over u of (1+u)/sin(pi u/(2(1+u))): ~0.82579
double density_window_ratio();

// (2 C0 + (sqrt 2/pi) sqrt(int_0^{3 beta/50} sin^2(2 pi y)/y dy))^2
double mean_square_bound(double beta);

// Corollary-2 ratio; requires beta > C0
double proportion_lower_bound(double beta);

struct MinimizeResult {
    double x;
    double f;
    bool unimodal;   // false when the bracketing scan saw multiple valleys
};

// golden-section with a 64-point bracketing scan guard; multi-start fallback
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol);

struct OptimizeDResult {
    double eta;
    double delta;
    double value;    // sqrt D at the minimizer
};

// coarse 100x50 grid over (eta, delta) in [1,3] x (0, 2/(8k+3)), then local
// refinement; kappa fixed at 0.1249
OptimizeDResult optimize_d_parameters(int k, double eps,
                                      Precision prec = Precision::extended80);

struct ConstantsReport {
    struct Entry {
        std::string name;
        double value;
        std::string note;   // provenance / parameters producing it
    };
    double eta, delta, kappa, eps;
    int k;
    Precision prec;
    std::vector<Entry> entries;
};

ConstantsReport build_constants_report(double eta, double delta, double kappa,
                                       int k, double eps,
                                       const arith::SievedTables& tables,
                                       Precision prec = Precision::extended80);

} // namespace lowlying::constants
