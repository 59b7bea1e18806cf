#pragma once

// Dirichlet L-function numerics at desk scale: L and L'/L through the Hurwitz
// zeta backend, the argument S(t,chi) by its defining sigma-integral, rotated
// real Z for critical-line scans, argument-principle zero validation and
// region counts, sigma_{t,chi}, the smoothed Dirichlet-polynomial remainder,
// the Selberg explicit-formula residual, and a Littlewood-identity check on a
// closed-form test family.

#include "lowlying/arith.hpp"
#include "lowlying/characters.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace lowlying::lfunc {

using cd = std::complex<double>;

// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q); for non-principal chi the
// 1/(s-1) poles are subtracted term-wise (they cancel exactly), so s = 1 and
// its neighborhood are fine; principal chi keeps the pole.
cd l_value(const characters::CharacterFamily& family, std::uint32_t chi, cd s);
cd l_prime(const characters::CharacterFamily& family, std::uint32_t chi, cd s);

// throws numeric_error carrying |L| when |L(s)| < 1e-13
cd log_deriv(const characters::CharacterFamily& family, std::uint32_t chi, cd s);

struct ArgumentSample {
    double t = 0.0;
    double value = 0.0;        // S(t, chi)
    double tail = 0.0;         // contribution of the analytic sigma >= 8 tail
    double central_abs = 0.0;  // |L(1/2 + it)|, the collision diagnostic
    long evaluations = 0;
    bool converged = true;
    bool averaged = false;     // the half-sum convention was applied
};

ArgumentSample s_of_t(const characters::CharacterFamily& family, std::uint32_t chi,
                      double t, const arith::Quadrature& quad = {1e-9, 1e-9, 24});

// S~(t, chi) = S(t, chi) + S(t, conj chi)
double s_tilde(const characters::CharacterFamily& family, std::uint32_t chi, double t,
               const arith::Quadrature& quad = {1e-9, 1e-9, 24});

// Rotated critical-line function: Re(eps^{-1/2} e^{i theta(t)} L(1/2+it)) with
// the positive real prefactor dropped; real up to roundoff by the functional
// equation.  imag_residual receives the imaginary part when non-null.
struct Rotation {
    std::uint32_t chi;
    int parity;
    double log_q_pi;
    cd eps_root_inv;
};
Rotation make_rotation(const characters::CharacterFamily& family, std::uint32_t chi);
double rotated_z(const characters::CharacterFamily& family, const Rotation& rot,
                 double t, double* imag_residual = nullptr);

struct ZeroList {
    std::uint32_t chi = 0;
    double height = 0.0;                  // scanned window [0, height]
    std::vector<double> ordinates;        // strictly increasing
    double refine_width = 0.0;
    bool validated = false;
    int discrepancy = 0;                  // contour count minus scan count
    int rounds = 0;                       // grid refinements used (0..3)
    std::vector<std::array<double, 4>> suspects;  // {beta_lo, beta_hi, gamma_lo, gamma_hi}
};

// Sign-change scan of Z on [0, T] at step (2pi/log q)/20, bisected to 1e-10,
// validated by the argument principle over [-1/2, 2] x [1e-4, T]; on mismatch
// the grid refines x4 up to 3 rounds, then suspects are reported.
ZeroList critical_zeros(const characters::CharacterFamily& family, std::uint32_t chi,
                        double height);

// Zeros with beta >= sigma0, t1 <= gamma <= t2, by winding number over
// [sigma0, 2] x [t1, t2]; boundary near-zeros get 1e-6 edge shifts, 3 attempts.
int zero_count_region(const characters::CharacterFamily& family, std::uint32_t chi,
                      double sigma0, double t1, double t2);

// sigma_{t,chi} over the supplied (beta, gamma) list
double sigma_t_chi(double t, const std::vector<std::pair<double, double>>& zeros,
                   double x, double eta);

// r(x, t) = sum_{n < x^3} Lambda_x(n) chi(n) n^{-s~}
cd dirichlet_remainder(const characters::CharacterFamily& family, std::uint32_t chi,
                       double t, double x, double eta,
                       const std::vector<std::pair<double, double>>& zeros,
                       const arith::SievedTables& tables);

struct FormulaResidual {
    double residual;          // |LHS - RHS| with truncated sums
    double truncation_bound;  // estimate for the dropped zero / trivial tails
};

// Selberg's explicit formula for L'/L, zero sum truncated at the lists'
// height, trivial-zero sum at 50 terms.  zeros_conj supplies the gamma < 0
// zeros (they are reflections of the conjugate character's positive ones).
FormulaResidual explicit_formula_residual(const characters::CharacterFamily& family,
                                          std::uint32_t chi, cd s, double x,
                                          const ZeroList& zeros,
                                          const ZeroList& zeros_conj,
                                          const arith::SievedTables& tables);

struct LittlewoodCheck {
    double lhs;
    double rhs;
    int zeros_in_window;
};

// The lemma applied to f(s) = 1 - a 2^{-s}, whose zeros are known in closed
// form; requires t2 - t1 > pi/ln 2 for the growth condition.
LittlewoodCheck littlewood_identity_check(double a, double sigma_prime, double t1,
                                          double t2,
                                          const arith::Quadrature& quad = {1e-10, 1e-10, 30});

// (t/pi) log(q/pi) + S~ + the digamma integral: exact small-t counting formula
// for zeros with -t <= gamma <= t
double counting_formula(const characters::CharacterFamily& family, std::uint32_t chi,
                        double t, double s_tilde_value);

// zeros of L(.,chi) with -t <= gamma <= t from the pair of one-sided lists
int pair_count(const ZeroList& zeros, const ZeroList& zeros_conj, double t);

} // namespace lowlying::lfunc
