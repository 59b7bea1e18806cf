#pragma once

// The full Dirichlet character group mod a prime q, realized through a
// primitive root: chi_j(g^m) = e(jm/(q-1)).  Values are held as exact
// root-of-unity indices (integers mod q-1) and turned into complex numbers
// only at use sites, so orthogonality bookkeeping stays exact.

#include "lowlying/arith.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace lowlying::characters {

class CharacterFamily {
public:
    // q prime, 3 <= q <= 1e5
    explicit CharacterFamily(std::uint32_t q);

    std::uint32_t modulus() const { return q_; }
    std::uint32_t generator() const { return generator_; }
    std::uint32_t count() const { return q_ - 1; }                 // characters
    std::uint32_t non_principal_count() const { return q_ - 2; }

    bool is_principal(std::uint32_t chi) const { return chi == 0; }
    // a = (1 - chi(-1))/2; with chi_j(-1) = (-1)^j this is just j mod 2
    int parity(std::uint32_t chi) const { return static_cast<int>(chi % 2); }
    std::uint32_t conjugate_index(std::uint32_t chi) const {
        return chi == 0 ? 0 : q_ - 1 - chi;
    }
    bool is_real(std::uint32_t chi) const { return chi == conjugate_index(chi); }

    // exponent k of chi_j(n) = e^{2 pi i k/(q-1)}; n must be coprime to q
    std::uint32_t unity_index(std::uint32_t chi, std::uint64_t n) const;
    std::complex<double> value(std::uint32_t chi, std::uint64_t n) const;  // 0 on q|n
    std::uint32_t discrete_log(std::uint32_t residue) const;               // of g

private:
    std::uint32_t q_;
    std::uint32_t generator_;
    std::vector<std::uint32_t> dlog_;                  // dlog_[a], a in [1, q-1]
    std::vector<std::complex<double>> unity_;          // e(k/(q-1)), k in [0, q-2]
};

struct GaussData {
    std::complex<double> tau;       // Gauss sum
    std::complex<double> epsilon;   // root number tau / (i^a sqrt q)
};

// non-principal chi only (all are primitive since q is prime)
GaussData gauss_sum(const CharacterFamily& family, std::uint32_t chi);

struct TwistedMoment {
    double lhs;             // (q-2)^{-1} sum_{chi != chi0} |sum_p a_p chi(p^l) p^-sigma|^{2k}
    double rhs;             // (sum_p |a_p|^2 p^{-2 sigma})^k
    bool lhs_le_rhs;
};

// Exact enumeration of the section-5 mean-value quantity.  Coefficients are
// (p, a_p) pairs with p prime and p <= y; requires y^k <= q.
TwistedMoment twisted_prime_moment(
    const CharacterFamily& family,
    const std::vector<std::pair<std::uint32_t, std::complex<double>>>& coeffs,
    double y, double sigma, int k, int ell);

} // namespace lowlying::characters
