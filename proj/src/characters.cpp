#include "lowlying/characters.hpp"
#include "lowlying/errors.hpp"

#include <cmath>

namespace lowlying::characters {

using cd = std::complex<double>;

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

bool is_prime_small(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_small(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint32_t find_primitive_root(std::uint32_t q) {
    auto factors = prime_factors_small(q - 1);
    for (std::uint32_t g = 2; g < q; ++g) {
        bool ok = true;
        for (std::uint64_t p : factors)
            if (mod_pow(g, (q - 1) / p, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw numeric_error("no primitive root mod " + std::to_string(q));
}

} // namespace

CharacterFamily::CharacterFamily(std::uint32_t q) : q_(q) {
    if (q < 3 || q > 100'000 || !is_prime_small(q))
        throw constraint_error("q prime, 3 <= q <= 1e5",
                               "modulus " + std::to_string(q));
    generator_ = find_primitive_root(q);
    dlog_.assign(q, 0);
    std::uint64_t pw = 1;
    for (std::uint32_t m = 0; m < q - 1; ++m) {
        dlog_[pw] = m;
        pw = pw * generator_ % q;
    }
    unity_.resize(q - 1);
    for (std::uint32_t k = 0; k < q - 1; ++k) {
        // quadrant roots come out exact so that chi(-1) = +-1 and |i|^2 = 1 hold bitwise
        std::uint64_t k4 = 4ull * k;
        if (k4 % (q - 1) == 0) {
            switch (k4 / (q - 1)) {
                case 0: unity_[k] = {1.0, 0.0}; continue;
                case 1: unity_[k] = {0.0, 1.0}; continue;
                case 2: unity_[k] = {-1.0, 0.0}; continue;
                case 3: unity_[k] = {0.0, -1.0}; continue;
            }
        }
        double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(q - 1);
        unity_[k] = {std::cos(ang), std::sin(ang)};
    }
}

std::uint32_t CharacterFamily::discrete_log(std::uint32_t residue) const {
    return dlog_[residue % q_];
}

std::uint32_t CharacterFamily::unity_index(std::uint32_t chi, std::uint64_t n) const {
    std::uint64_t m = dlog_[n % q_];
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(chi) * m) % (q_ - 1));
}

cd CharacterFamily::value(std::uint32_t chi, std::uint64_t n) const {
    std::uint64_t r = n % q_;
    if (r == 0) return {0.0, 0.0};
    return unity_[unity_index(chi, r)];
}

GaussData gauss_sum(const CharacterFamily& family, std::uint32_t chi) {
    if (family.is_principal(chi))
        throw constraint_error("chi non-principal", "gauss_sum of the principal character");
    std::uint32_t q = family.modulus();
    cd tau{0.0, 0.0};
    for (std::uint32_t a = 1; a < q; ++a) {
        double ang = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(q);
        tau += family.value(chi, a) * cd{std::cos(ang), std::sin(ang)};
    }
    cd i_pow_a = family.parity(chi) == 0 ? cd{1.0, 0.0} : cd{0.0, 1.0};
    cd eps = tau / (i_pow_a * std::sqrt(static_cast<double>(q)));
    return {tau, eps};
}

TwistedMoment twisted_prime_moment(
    const CharacterFamily& family,
    const std::vector<std::pair<std::uint32_t, cd>>& coeffs, double y,
    double sigma, int k, int ell) {
    if (k < 1) throw constraint_error("k >= 1", std::to_string(k));
    if (ell != 1 && ell != 2) throw constraint_error("ell in {1,2}", std::to_string(ell));
    std::uint32_t q = family.modulus();
    if (!(y >= 2.0) || std::pow(y, k) > static_cast<double>(q) * (1.0 + 1e-12))
        throw constraint_error("2 <= y <= q^(1/k)",
                               "y=" + std::to_string(y) + ", k=" + std::to_string(k) +
                                   ", q=" + std::to_string(q));

    // shared p^-sigma so the single-prime equality case is bit-exact
    std::vector<std::pair<std::uint32_t, cd>> terms;
    double rhs_base = 0.0;
    for (auto& [p, ap] : coeffs) {
        if (p > y) throw constraint_error("p <= y", std::to_string(p));
        double ps = std::pow(static_cast<double>(p), -sigma);
        terms.emplace_back(p, ap * ps);
        rhs_base += std::norm(ap) * (ps * ps);
    }

    double lhs_sum = 0.0;
    for (std::uint32_t chi = 1; chi < family.count(); ++chi) {
        cd z{0.0, 0.0};
        for (auto& [p, w] : terms) {
            cd cv = family.value(chi, p);
            if (ell == 2) cv *= cv;
            z += w * cv;
        }
        double m = std::norm(z);
        double mk = m;
        for (int j = 1; j < k; ++j) mk *= m;
        lhs_sum += mk;
    }
    double lhs = lhs_sum / static_cast<double>(q - 2);
    double rhs = rhs_base;
    for (int j = 1; j < k; ++j) rhs *= rhs_base;
    return {lhs, rhs, lhs <= rhs};
}

} // namespace lowlying::characters
