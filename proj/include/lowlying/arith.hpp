#pragma once

// Number-theoretic sieves and the special-function kernel everything else
// leans on: Moebius/von Mangoldt/totient lookups, prime zeta with tail
// bounds, upper incomplete gamma, complex digamma / log-gamma, Hurwitz zeta
// with s-derivative (Euler-Maclaurin), and adaptive Gauss-Kronrod quadrature.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace lowlying::arith {

inline constexpr double euler_gamma = 0.5772156649015328606065120900824024;

// base^(-s) for base > 0: one real log, one complex exp
inline std::complex<double> pow_minus_s(double base, std::complex<double> s) {
    double l = std::log(base);
    double m = std::exp(-s.real() * l);
    double ang = -s.imag() * l;
    return {m * std::cos(ang), m * std::sin(ang)};
}

// ---------------------------------------------------------------------------
// Sieved tables
// ---------------------------------------------------------------------------

// Smallest-prime-factor sieve plus a Moebius table.  Totient and von Mangoldt
// are derived per query from the factorization; both are O(log n).
// Immutable after construction; safe to share across threads.
class SievedTables {
public:
    explicit SievedTables(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    int mobius(std::uint64_t n) const;
    double von_mangoldt(std::uint64_t n) const;     // log p at prime powers, else 0
    std::uint64_t totient(std::uint64_t n) const;
    std::uint32_t smallest_prime_factor(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;

    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // distinct prime factors of n, ascending
    std::vector<std::uint32_t> prime_factors(std::uint64_t n) const;
    // all divisors of n (unordered beyond construction order)
    std::vector<std::uint64_t> divisors(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::int8_t> mobius_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

// ---------------------------------------------------------------------------
// Prime zeta
// ---------------------------------------------------------------------------

struct PrimeZetaValue {
    double lower;   // partial sum over sieved primes <= prime_limit
    double upper;   // partial sum + integral tail bound (zeta(s) < s/(s-1) device)
};

// zeta_P(s) = sum_p p^{-s}, s > 1, bracketed between the partial sum and the
// partial sum plus P^{1-s}/(s-1).
PrimeZetaValue prime_zeta(double s, const SievedTables& tables,
                          std::uint64_t prime_limit);

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// Gamma(v, u) = int_u^inf z^{v-1} e^{-z} dz for v >= 0, u >= 0, (v,u) != (0,0).
double upper_incomplete_gamma(double v, double u);

// psi(z) for Re z > 0, via recurrence shift + asymptotic series.
std::complex<double> digamma(std::complex<double> z);

// log Gamma(z) for Re z > 0 (principal branch along the shifted Stirling path).
std::complex<double> log_gamma(std::complex<double> z);

struct HurwitzResult {
    std::complex<double> value;
    std::complex<double> derivative;    // d/ds, filled when requested
};

// Hurwitz zeta(s, a) for a in (0,1], s != 1, |Im s| <= 1e4, Re s > -6.
// Euler-Maclaurin: shift a upward until shifted-a + N >= max(20, 2|Im s|),
// 12 Bernoulli correction terms.  The same formula provides the values a bit
// left of 0 that the L-function contours need.
HurwitzResult hurwitz_zeta(std::complex<double> s, double a,
                           bool want_derivative = false);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct Quadrature {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 30;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    long evaluations = 0;
};

struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    bool converged = true;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].  Nodes are interior, so integrable
// endpoint singularities (declared by the caller) never get evaluated.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Quadrature& q = {});
ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, const Quadrature& q = {});

// int_a^inf f via the exponential-tail substitution x = a - log(1 - u).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const Quadrature& q = {});

// Long oscillatory ranges: unit-width panels integrated left to right.
QuadResult integrate_panels(const std::function<double(double)>& f, double a,
                            double b, double panel_width, const Quadrature& q = {});

} // namespace lowlying::arith
