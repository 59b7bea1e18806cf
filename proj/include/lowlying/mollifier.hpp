#pragma once

// Section 3-4 arithmetic: the mollifier coefficients lambda_n(xi), the
// M_l(r,x) Moebius sums with their main terms, the gcd double sums (direct
// and divisor-rearranged), the modified totient phi', the Dirichlet
// polynomial psi(s,chi), and the smoothed von Mangoldt weight Lambda_x.

#include "lowlying/arith.hpp"
#include "lowlying/characters.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace lowlying::mollifier {

// lambda_n = mu(n) for n <= xi, mu(n) log(xi^2/n)/log(xi) for xi <= n < xi^2.
// Cutoff "n < xi^2" is strict; n = xi uses the lower branch (both agree there).
struct MollifierTable {
    double xi = 2.0;
    std::vector<double> lambda;     // index n, entry 0 unused; size = ceil(xi^2)

    std::size_t count() const { return lambda.size() - 1; }   // coefficients 1..ceil(xi^2)-1
    double operator[](std::size_t n) const { return lambda[n]; }
};

// xi >= 1 (the degenerate psi = 1 setups need xi below 2), xi^2 within sieve reach
MollifierTable build_mollifier(double xi, const arith::SievedTables& tables);

struct MellSum {
    double exact;       // direct summation
    double main_term;   // l! (log x - gamma0 - sum_{p|r} log p/(p-1))^{l-1} prod (1-1/p)^-1
};

MellSum m_ell_sum(int ell, std::uint64_t r, double x, const arith::SievedTables& tables);

struct GcdSums {
    double s_gcd;        // sum lam lam gcd/(n1 n2)
    double s_log_n;      // ... * log n1
    double s_log_gcd;    // ... * log gcd
};

// O(N^2) double loop with std::gcd; the independent oracle for the rearranged form.
GcdSums gcd_double_sums_direct(const MollifierTable& table);
// O(N log N) via gcd = sum_{r|gcd} phi(r) and gcd log gcd = sum_{r|gcd} phi'(r).
GcdSums gcd_double_sums_rearranged(const MollifierTable& table,
                                   const arith::SievedTables& tables);
// Auto: direct loop for xi^2 <= 1e5, rearranged above.
GcdSums gcd_double_sums(const MollifierTable& table, const arith::SievedTables& tables);

// phi'(r) = phi(r)(log r + sum_{p|r} log p/(p-1))
double phi_prime(std::uint64_t r, const arith::SievedTables& tables);
// definitional form r * sum_{d|r} mu(d)/d log(r/d)
double phi_prime_divisor_form(std::uint64_t r, const arith::SievedTables& tables);

// psi(s, chi) = sum_{n < xi^2} lambda_n chi(n) n^-s (exact finite sum)
std::complex<double> psi_value(std::complex<double> s,
                               const characters::CharacterFamily& family,
                               std::uint32_t chi, const MollifierTable& table);

// Lambda_x(n): Lambda(n) tapered by the piecewise-quadratic weights, 0 for n >= x^3
double smoothed_lambda(std::uint64_t n, double x, const arith::SievedTables& tables);
// weight alone as a function of u = log n/log x (exposed for the continuum integrals)
double smoothed_weight(double u);

struct SmoothedVonMangoldt {
    double x;
    const arith::SievedTables* tables;
    double operator()(std::uint64_t n) const { return smoothed_lambda(n, x, *tables); }
};

struct TotientReciprocalSum {
    double exact;        // sum_{r <= x} mu(r)^2/phi(r)
    double asymptotic;   // log x + gamma0 + sum_p log p/(p(p-1))
};

TotientReciprocalSum totient_reciprocal_sum(double x, const arith::SievedTables& tables);

// sum_p log p / (p (p-1)), to ~1e-12 (Moebius/zeta'-zeta route; see source note)
double prime_log_reciprocal_constant();

} // namespace lowlying::mollifier
