#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"

#include <cmath>

namespace lowlying::arith {

namespace {
constexpr std::uint64_t kMaxLimit = 100'000'000;
}

SievedTables::SievedTables(std::uint64_t limit) : limit_(limit) {
    if (limit < 1 || limit > kMaxLimit)
        throw capacity_error("sieve limit " + std::to_string(limit));

    mobius_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);
    mobius_[1] = 1;
    if (limit >= 2)
        primes_.reserve(static_cast<std::size_t>(
            1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit))) + 16);

    // linear sieve: every composite is crossed once by its smallest prime factor
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            mobius_[i] = -1;
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
            mobius_[i * p] = (p == spf_[i]) ? 0 : -mobius_[i];
            if (p == spf_[i]) break;
        }
    }
}

int SievedTables::mobius(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw capacity_error("mobius(" + std::to_string(n) + ")");
    return mobius_[n];
}

std::uint32_t SievedTables::smallest_prime_factor(std::uint64_t n) const {
    if (n < 2 || n > limit_)
        throw capacity_error("smallest_prime_factor(" + std::to_string(n) + ")");
    return spf_[n];
}

bool SievedTables::is_prime(std::uint64_t n) const {
    if (n < 2) return false;
    if (n > limit_) throw capacity_error("is_prime(" + std::to_string(n) + ")");
    return spf_[n] == n;
}

double SievedTables::von_mangoldt(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw capacity_error("von_mangoldt(" + std::to_string(n) + ")");
    if (n < 2) return 0.0;
    std::uint32_t p = spf_[n];
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::uint64_t SievedTables::totient(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw capacity_error("totient(" + std::to_string(n) + ")");
    std::uint64_t phi = 1, m = n;
    while (m > 1) {
        std::uint64_t p = spf_[m];
        phi *= p - 1;
        m /= p;
        while (m % p == 0) {
            phi *= p;
            m /= p;
        }
    }
    return phi;
}

std::vector<std::uint32_t> SievedTables::prime_factors(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw capacity_error("prime_factors(" + std::to_string(n) + ")");
    std::vector<std::uint32_t> out;
    std::uint64_t m = n;
    while (m > 1) {
        std::uint32_t p = spf_[m];
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    return out;
}

std::vector<std::uint64_t> SievedTables::divisors(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw capacity_error("divisors(" + std::to_string(n) + ")");
    std::vector<std::uint64_t> out{1};
    std::uint64_t m = n;
    while (m > 1) {
        std::uint32_t p = spf_[m];
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

PrimeZetaValue prime_zeta(double s, const SievedTables& tables,
                          std::uint64_t prime_limit) {
    if (!(s > 1.0))
        throw constraint_error("s > 1", "prime_zeta diverges at s = " + std::to_string(s));
    if (prime_limit < 2 || prime_limit > tables.limit())
        throw capacity_error("prime_zeta limit " + std::to_string(prime_limit));

    long double sum = 0.0L;
    for (std::uint32_t p : tables.primes()) {
        if (p > prime_limit) break;
        long double term = std::exp(-static_cast<long double>(s) * std::log((long double)p));
        sum += term;
        if (term < 1e-300L) break;  // deeper primes cannot move the total
    }
    // primes > P contribute less than sum_{n>P} n^{-s} < P^{1-s}/(s-1)
    double partial = static_cast<double>(sum);
    double tail = std::pow(static_cast<double>(prime_limit), 1.0 - s) / (s - 1.0);
    return {partial, partial + tail};
}

} // namespace lowlying::arith
