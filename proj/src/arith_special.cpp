#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"

#include <cmath>
#include <limits>

namespace lowlying::arith {

using cd = std::complex<double>;

namespace {

// B_{2k}/(2k)!, k = 1..12 (Maclaurin coefficients of the Euler-Maclaurin tail)
constexpr double kBernoulliFact[12] = {
    8.3333333333333333e-02, -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08, -5.2841901386874932e-10,
    1.3382536530684679e-11, -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18, -1.3954464685812523e-19};

// series for Gamma(0,u) = E1(u), u in (0, 1]
double e1_series(double u) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -u / k;
        double add = -term / k;
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return -euler_gamma - std::log(u) + sum;
}

// continued fraction for Gamma(v,u), u >= v+1 (modified Lentz)
double gamma_cf(double v, double u) {
    constexpr double tiny = 1e-300;
    double b = u + 1.0 - v;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        double an = -i * (i - v);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-u + v * std::log(u)) * h;
}

// lower-incomplete series, u < v+1, v > 0:  gamma(v,u) = u^v e^-u sum u^n / (v..(v+n))
double gamma_lower_series(double v, double u) {
    double ap = v;
    double sum = 1.0 / v;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= u / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-u + v * std::log(u));
}

} // namespace

double upper_incomplete_gamma(double v, double u) {
    if (v < 0.0 || u < 0.0)
        throw constraint_error("v >= 0 and u >= 0",
                               "Gamma(v,u) at v=" + std::to_string(v) +
                                   ", u=" + std::to_string(u));
    if (v == 0.0 && u == 0.0)
        throw constraint_error("(v,u) != (0,0)", "Gamma(0,0) diverges");
    if (u == 0.0) return std::tgamma(v);
    if (v == 0.0) return u < 1.0 ? e1_series(u) : gamma_cf(0.0, u);
    if (u < v + 1.0) return std::tgamma(v) - gamma_lower_series(v, u);
    return gamma_cf(v, u);
}

cd digamma(cd z) {
    if (!(z.real() > 0.0))
        throw constraint_error("Re(z) > 0", "digamma at Re(z)=" + std::to_string(z.real()));
    cd acc = 0.0;
    while (std::abs(z) < 15.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // psi(z) ~ log z - 1/(2z) - sum B_2n / (2n z^2n)
    static const double c[7] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                1.0 / 132, -691.0 / 32760, 1.0 / 12};
    cd inv2 = 1.0 / (z * z);
    cd p = inv2;
    cd tail = 0.0;
    for (double cn : c) {
        tail += cn * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - tail;
}

cd log_gamma(cd z) {
    if (!(z.real() > 0.0))
        throw constraint_error("Re(z) > 0", "log_gamma at Re(z)=" + std::to_string(z.real()));
    cd shift = 0.0;
    while (std::abs(z) < 20.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    static const double c[7] = {1.0 / 12,   -1.0 / 360,      1.0 / 1260, -1.0 / 1680,
                                1.0 / 1188, -691.0 / 360360, 1.0 / 156};
    cd inv = 1.0 / z, inv2 = inv * inv;
    cd p = inv;
    cd tail = 0.0;
    for (double cn : c) {
        tail += cn * p;
        p *= inv2;
    }
    constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
    return shift + (z - 0.5) * std::log(z) - z + half_log_two_pi + tail;
}

HurwitzResult hurwitz_zeta(cd s, double a, bool want_derivative) {
    if (!(a > 0.0) || a > 1.0)
        throw constraint_error("a in (0,1]", "hurwitz_zeta at a=" + std::to_string(a));
    if (s == cd(1.0, 0.0)) throw numeric_error("hurwitz_zeta: pole at s = 1");
    if (std::abs(s.imag()) > 1e4)
        throw constraint_error("|Im s| <= 1e4", "hurwitz_zeta at Im s=" + std::to_string(s.imag()));
    if (s.real() <= -6.0)
        throw constraint_error("Re(s) > -6", "hurwitz_zeta at Re s=" + std::to_string(s.real()));

    double target = std::max(20.0, 2.0 * std::abs(s.imag()));
    long n_shift = std::lround(std::ceil(target - a));
    if (n_shift < 0) n_shift = 0;
    double w = a + static_cast<double>(n_shift);

    cd sum = 0.0, dsum = 0.0;
    for (long n = 0; n < n_shift; ++n) {
        double base = a + static_cast<double>(n);
        cd t = pow_minus_s(base, s);
        sum += t;
        if (want_derivative) dsum -= std::log(base) * t;
    }

    double logw = std::log(w);
    cd ws = pow_minus_s(w, s);              // w^{-s}
    cd sm1 = s - 1.0;
    cd t1 = ws * w / sm1;               // w^{1-s}/(s-1)
    cd t2 = 0.5 * ws;
    sum += t1 + t2;
    if (want_derivative) dsum += -t1 * (logw + 1.0 / sm1) - logw * t2;

    // Bernoulli tail: sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * w^{-s-2k+1}
    cd wp = ws / w;                     // w^{-s-1}
    cd winv2 = 1.0 / (cd(w) * w);
    cd poch = s, dpoch = 1.0;           // product and its s-derivative, kept jointly
    for (int k = 1; k <= 12; ++k) {
        if (k > 1) {
            cd f1 = s + cd(2.0 * k - 3.0);
            cd f2 = s + cd(2.0 * k - 2.0);
            dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
            poch = poch * f1 * f2;
        }
        cd term = kBernoulliFact[k - 1] * poch * wp;
        sum += term;
        if (want_derivative)
            dsum += kBernoulliFact[k - 1] * (dpoch - logw * poch) * wp;
        wp *= winv2;
    }

    HurwitzResult r;
    r.value = sum;
    r.derivative = want_derivative ? dsum : cd(0.0);
    return r;
}

} // namespace lowlying::arith
