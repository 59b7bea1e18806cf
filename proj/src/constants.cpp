#include "lowlying/constants.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#ifdef LOWLYING_HAVE_FLOAT128
#include <quadmath.h>
#endif

namespace lowlying::constants {

namespace {

// ---------------------------------------------------------------------------
// scalar shim so the pipeline can run at 53-, 64- or 113-bit significand
// ---------------------------------------------------------------------------

template <class T> struct Fp;

template <> struct Fp<double> {
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double pow(double x, double y) { return std::pow(x, y); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double sin(double x) { return std::sin(x); }
    static double abs(double x) { return std::fabs(x); }
    static double tgamma(double x) { return std::tgamma(x); }
    static constexpr double pi() { return 3.14159265358979323846264338327950288; }
};

template <> struct Fp<long double> {
    static long double exp(long double x) { return std::exp(x); }
    static long double log(long double x) { return std::log(x); }
    static long double pow(long double x, long double y) { return std::pow(x, y); }
    static long double sqrt(long double x) { return std::sqrt(x); }
    static long double sin(long double x) { return std::sin(x); }
    static long double abs(long double x) { return std::fabs(x); }
    static long double tgamma(long double x) { return std::tgamma(x); }
    static constexpr long double pi() { return 3.14159265358979323846264338327950288L; }
};

#ifdef LOWLYING_HAVE_FLOAT128
template <> struct Fp<__float128> {
    static __float128 exp(__float128 x) { return expq(x); }
    static __float128 log(__float128 x) { return logq(x); }
    static __float128 pow(__float128 x, __float128 y) { return powq(x, y); }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static __float128 tgamma(__float128 x) { return tgammaq(x); }
    // M_PIq needs -fext-numeric-literals; parse instead
    static __float128 pi() {
        static const __float128 v = strtoflt128("3.14159265358979323846264338327950288", nullptr);
        return v;
    }
};
#endif

template <class T>
T upper_gamma_t(T v, T u) {
    using F = Fp<T>;
    if (u == T(0)) return F::tgamma(v);
    if (v == T(0)) {
        // E1 via continued fraction for u >= 1, series below
        if (u >= T(1)) goto cf;
        {
            T sum = T(0), term = T(1);
            for (int k = 1; k < 100; ++k) {
                term *= -u / T(k);
                T add = -term / T(k);
                sum += add;
                if (F::abs(add) < T(1e-36) * (F::abs(sum) + T(1))) break;
            }
            constexpr double eg = 0.57721566490153286060651209008240243;
            return T(-eg) - F::log(u) + sum;
        }
    }
    if (u < v + T(1)) {
        T ap = v, sum = T(1) / v, del = sum;
        for (int i = 0; i < 800; ++i) {
            ap += T(1);
            del *= u / ap;
            sum += del;
            if (F::abs(del) < F::abs(sum) * T(1e-36)) break;
        }
        return F::tgamma(v) - sum * F::exp(-u + v * F::log(u));
    }
cf: {
        const T tiny = T(1e-300);
        T b = u + T(1) - v;
        T c = T(1) / tiny;
        T d = T(1) / b;
        T h = d;
        for (int i = 1; i <= 800; ++i) {
            T an = -T(i) * (T(i) - v);
            b += T(2);
            d = an * d + b;
            if (F::abs(d) < tiny) d = tiny;
            c = b + an / c;
            if (F::abs(c) < tiny) c = tiny;
            d = T(1) / d;
            T del = d * c;
            h *= del;
            if (F::abs(del - T(1)) < T(1e-36)) break;
        }
        return F::exp(-u + v * F::log(u)) * h;
    }
}

template <class T> struct Eta {
    T a, b1, b2;
};

template <class T>
Eta<T> eta_t(T eta) {
    using F = Fp<T>;
    T em = F::exp(-eta);
    T sq = (T(1) + em) * (T(1) + em);
    T e3 = eta * eta * eta;
    T ee = F::exp(eta);
    Eta<T> r;
    r.a = T(5) * sq / (T(6) * eta * eta - T(5) * sq * em);
    r.b1 = (T(5) * sq + (T(5) * F::pi() + T(1)) * T(6) * e3 * ee) /
           (T(6) * e3 * ee - T(5) * sq * eta);
    r.b2 = (T(5) * sq * (T(1) + eta) + T(30) * F::pi() * e3 * ee) /
           (T(12) * e3 * ee - T(10) * sq * eta);
    return r;
}

template <class T>
T big_c_t(T eta, T delta, T r, T v) {
    using F = Fp<T>;
    T first = F::pow(T(2) * eta, v) * F::exp(T(2) * eta * r);
    T pref = T(4.79) + T(4.12) / (T(4) * F::exp(T(3) * eta) / delta - T(1.73));
    T gap = T(2) / delta - T(2) * r - T(3);        // > 0 by the delta constraint
    T u = eta * gap;
    T bracket = F::pow(eta, v) * F::exp(-u) / delta;
    if (v > T(0))
        bracket += v * upper_gamma_t<T>(v, u) / (delta * F::pow(gap, v));
    if (r > T(0))
        bracket += T(2) * r * upper_gamma_t<T>(v + T(1), u) / (delta * F::pow(gap, v + T(1)));
    return first + F::pow(T(2), v + T(1)) * pref * bracket;
}

// second factor of the h(k) bracket; series below Delta = 1/4 where the
// closed form loses all digits to cancellation (numerator ~ 342 Delta^4)
template <class T>
T hk_second_factor(T d) {
    using F = Fp<T>;
    if (d < T(0.25)) {
        // (2x^2+4x+3)e^{6x} = sum c_k x^k, c_k = 2a_{k-2}+4a_{k-1}+3a_k, a_j = 6^j/j!;
        // the polynomial part cancels c_0..c_3 exactly
        T a_prev2 = T(0), a_prev1 = T(0), a_cur = T(1);   // a_0
        // advance to a_2 so that k starts at 4 with (a_2, a_3, a_4)
        for (int j = 1; j <= 4; ++j) {
            a_prev2 = a_prev1;
            a_prev1 = a_cur;
            a_cur = a_cur * T(6) / T(j);
        }
        // now a_prev2 = a_2, a_prev1 = a_3, a_cur = a_4
        T sum = T(0), dp = T(1);
        for (int k = 4; k <= 44; ++k) {
            T ck = T(2) * a_prev2 + T(4) * a_prev1 + T(3) * a_cur;
            sum += ck * dp;
            dp *= d;
            a_prev2 = a_prev1;
            a_prev1 = a_cur;
            a_cur = a_cur * T(6) / T(k + 1);
        }
        return F::exp(T(-6) * d) * sum / T(8);
    }
    T e6 = F::exp(T(6) * d);
    T num = (T(2) * d * d + T(4) * d + T(3)) * e6 - T(192) * d * d * d -
            T(80) * d * d - T(22) * d - T(3);
    return num / (T(8) * d * d * d * d * e6);
}

template <class T>
T hk_bracket(T d, int k) {
    using F = Fp<T>;
    T ed = F::exp(-d);
    T g = hk_second_factor<T>(d);
    T g2k = F::pow(g, T(2 * k));
    T c2k = F::pow(T(8.68), T(2 * k));
    return (T(1) - ed) * c2k + ed * g2k;
}

template <class T, class Func>
std::pair<T, T> golden_t(const Func& f, T lo, T hi, T tol, int iters = 400) {
    const T gr = (Fp<T>::sqrt(T(5)) - T(1)) / T(2);
    T a = lo, b = hi;
    T c = b - gr * (b - a), d = a + gr * (b - a);
    T fc = f(c), fd = f(d);
    for (int i = 0; i < iters && Fp<T>::abs(b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    T x = (a + b) / T(2);
    return {x, f(x)};
}

template <class T>
std::pair<T, T> h_of_k_t(int k) {
    // coarse scan then golden refinement; endpoint limits (42.75 and 8.68)
    // are not minima for k <= 8
    auto f = [k](T d) { return hk_bracket<T>(d, k); };
    const int grid = 400;
    T lo = T(1e-6), hi = T(50);
    T best_x = lo, best_f = f(lo);
    for (int i = 1; i <= grid; ++i) {
        T x = lo + (hi - lo) * T(i) / T(grid);
        T fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    T step = (hi - lo) / T(grid);
    T a = best_x - step, b = best_x + step;
    if (a < lo) a = lo;
    auto [xm, fm] = golden_t<T>(f, a, b, T(1e-13));
    T value = Fp<T>::pow(fm, T(1) / T(2 * k));
    return {value, xm};
}

// h(k) is (eta, delta)-independent; cache it so grid searches don't redo the
// inner minimization
template <class T>
std::pair<T, T> h_of_k_cached(int k) {
    static std::mutex mu;
    static std::map<int, std::pair<T, T>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, h_of_k_t<T>(k)).first;
    return it->second;
}

template <class T>
T big_d_t(T eta, T delta, T kappa, int k, T eps) {
    using F = Fp<T>;
    Eta<T> e = eta_t<T>(eta);
    T c44 = big_c_t<T>(eta, delta, T(4 * k), T(4 * k));
    T c02 = big_c_t<T>(eta, delta, T(0), T(2 * k));
    auto [hk, dstar] = h_of_k_cached<T>(k);
    (void)dstar;
    T c44_root = F::pow(c44, T(1) / T(4 * k));
    T c02_root = F::pow(c02, T(1) / T(2 * k));
    T bracket = (e.b1 + F::exp(T(-2) * eta)) * c44_root * F::sqrt(hk);
    bracket += T(1.5) * (T(1) + e.b1) * c02_root;
    bracket += e.b2 * c02_root * (T(1.25) - eps) / (delta * kappa);
    bracket += F::sqrt(T(0.12)) + T(0.53) + F::sqrt(T(0.58));
    return F::pow(bracket / F::pi(), T(2 * k));
}

// ---------------------------------------------------------------------------
// constraint checks shared by the public entry points
// ---------------------------------------------------------------------------

void check_eta(double eta) {
    if (!(eta >= 1.0))
        throw constraint_error("eta >= 1", "eta=" + std::to_string(eta));
}

void check_c_params(double eta, double delta, double r, double v) {
    check_eta(eta);
    if (!(r >= 0.0) || !(v >= 0.0))
        throw constraint_error("r >= 0 and v >= 0",
                               "r=" + std::to_string(r) + ", v=" + std::to_string(v));
    if (!(delta > 0.0) || !(delta < 2.0 / (2.0 * r + 3.0)))
        throw constraint_error("0 < delta < 2/(2r+3)",
                               "delta=" + std::to_string(delta) + ", r=" + std::to_string(r));
}

void check_d_params(double eta, double delta, double kappa, int k, double eps) {
    check_eta(eta);
    if (k < 1) throw constraint_error("k >= 1", std::to_string(k));
    if (!(eps > 0.0) || !(eps <= 0.25))
        throw constraint_error("0 < eps <= 1/4", "eps=" + std::to_string(eps));
    if (!(kappa > 0.0) || !(kappa < eps / 2.0))
        throw constraint_error("0 < kappa < eps/2",
                               "kappa=" + std::to_string(kappa) + ", eps=" + std::to_string(eps));
    if (!(delta > 0.0) || !(delta < 2.0 / (8.0 * k + 3.0)))
        throw constraint_error("0 < delta < 2/(8k+3)",
                               "delta=" + std::to_string(delta) + ", k=" + std::to_string(k));
}

template <class R, class Fn>
R dispatch(Precision prec, Fn&& fn) {
    switch (prec) {
        case Precision::float64: return fn(double{});
        case Precision::extended80: return fn((long double){});
        case Precision::quad128:
#ifdef LOWLYING_HAVE_FLOAT128
            return fn((__float128){});
#else
            throw constraint_error("quad128 support compiled in", "rebuild with GCC");
#endif
    }
    throw numeric_error("bad precision");
}

} // namespace

EtaConstants eta_constants(double eta, Precision prec) {
    check_eta(eta);
    return dispatch<EtaConstants>(prec, [eta](auto tag) {
        using T = decltype(tag);
        auto e = eta_t<T>(T(eta));
        return EtaConstants{eta, double(e.a), double(e.b1), double(e.b2)};
    });
}

double mollifier_mean_constant() {
    long double e = std::exp(1.0L);
    return double(std::exp(0.25L) * (e - 1.0L) *
                  (-1.5L / (e - 1.0L) + 4.0L * e / ((e - 1.0L) * (e - 1.0L))));
}

double big_c(double eta, double delta, double r, double v, Precision prec) {
    check_c_params(eta, delta, r, v);
    return dispatch<double>(prec, [=](auto tag) {
        using T = decltype(tag);
        return double(big_c_t<T>(T(eta), T(delta), T(r), T(v)));
    });
}

HOfK h_of_k(int k, Precision prec) {
    if (k < 1 || k > 8)
        throw constraint_error("1 <= k <= 8", std::to_string(k));
    return dispatch<HOfK>(prec, [=](auto tag) {
        using T = decltype(tag);
        auto [v, d] = h_of_k_cached<T>(k);
        return HOfK{double(v), double(d)};
    });
}

double f_x_integral_constant() { return 29136.0 / 3360.0; }

double f_x_integral_quadrature() {
    // int_0^3 w(u)^2 u (1+u)^2 du with the Lambda_x(y) <= log y continuum
    // weight, i.e. the x-free form of (1/log^4 x) int f(y) dy
    auto f = [](double u) {
        double w = mollifier::smoothed_weight(u);
        return w * w * u * (1.0 + u) * (1.0 + u);
    };
    double total = 0.0;
    for (double lo : {0.0, 1.0, 2.0}) {
        auto r = arith::integrate(f, lo, lo + 1.0, arith::Quadrature{1e-12, 1e-12, 30});
        total += r.value;
    }
    return total;
}

double prime_zeta_tail_constant(const arith::SievedTables& tables) {
    long double sum = 0.0L;
    for (int l = 3; l <= 500; ++l) {
        auto z = arith::prime_zeta(0.5 * l, tables, tables.limit());
        sum += static_cast<long double>(z.upper) / l;
        if (z.upper / l < 1e-25) break;     // remaining terms are below noise
    }
    sum += 1.0L / 499.0L + 1.0L / 500.0L;
    return double(sum);
}

double a6_constant() { return std::log(3.0) - 0.75 * std::log(2.0); }

double big_d(double eta, double delta, double kappa, int k, double eps, Precision prec) {
    check_d_params(eta, delta, kappa, k, eps);
    return dispatch<double>(prec, [=](auto tag) {
        using T = decltype(tag);
        return double(big_d_t<T>(T(eta), T(delta), T(kappa), k, T(eps)));
    });
}

double c0_pipeline(double kappa, double q, Precision prec) {
    if (!(q >= 3.0)) throw constraint_error("q >= 3", std::to_string(q));
    if (!(kappa > 0.0) || !(kappa < 0.125))
        throw constraint_error("0 < kappa < 1/8", std::to_string(kappa));
    double d = big_d(1.156, 0.16, kappa, 1, 0.25, prec);
    return (2.0 / M_PI) * std::pow(q, 3.0 / 88.0 - 1.0) + std::sqrt(d);
}

ZeroDensityCoefficients zero_density_coefficients(double kappa, double tau) {
    if (!(kappa > 0.0) || !(kappa <= 0.125))
        throw constraint_error("0 < kappa <= 1/8", std::to_string(kappa));
    if (!(tau >= 1.73 / kappa))
        throw constraint_error("tau >= 1.73/kappa",
                               "tau=" + std::to_string(tau) + ", kappa=" + std::to_string(kappa));
    if (!(1.8258 * tau > M_PI / kappa))
        throw constraint_error("1.8258 tau > pi/kappa",
                               "tau=" + std::to_string(tau) + ", kappa=" + std::to_string(kappa));
    long double b = 1.0L / (2.0L * kappa);
    long double a = 0.82579L * tau / 2.0L;
    long double ta = tau + 2.0L * a;
    long double s = std::sin(0.5L * M_PIl * (2.0L * a / ta));
    long double full = 6.20L * std::exp(2.0L * b * kappa) / (2.0L * M_PIl * b * s) *
                       (ta / (M_PIl * tau) +
                        1.0L / (2.0L * (2.0L - M_PIl / (kappa * ta)) * kappa * tau));
    double simplified = 4.79 * kappa + 4.12 / (2.0 * tau - 1.73 / kappa);
    return {double(full), simplified, double(a), double(b)};
}

double density_leading_coefficient() {
    // drop the tau-decaying term: with 2b kappa = 1 and u = 2a/tau = 0.82579,
    // full/kappa -> 6.20 e (1+u) / (pi^2 sin(pi u / (2(1+u))))
    long double u = 0.82579L;
    long double s = std::sin(0.5L * M_PIl * u / (1.0L + u));
    return double(6.20L * std::exp(1.0L) * (1.0L + u) / (M_PIl * M_PIl * s));
}

double density_window_ratio() {
    auto g = [](double u) {
        return (1.0 + u) / std::sin(M_PI * u / (2.0 * (1.0 + u)));
    };
    return minimize_scalar(g, 0.5, 0.99, 1e-10).x;
}

double mean_square_bound(double beta) {
    if (!(beta >= 0.0)) throw constraint_error("beta >= 0", std::to_string(beta));
    double integral = 0.0;
    if (beta > 0.0) {
        auto f = [](double y) {
            double s = std::sin(2.0 * M_PI * y);
            return s * s / y;
        };
        integral = arith::integrate_panels(f, 0.0, 3.0 * beta / 50.0, 1.0,
                                           arith::Quadrature{1e-10, 1e-12, 30})
                       .value;
    }
    double root = 2.0 * c0 + std::sqrt(2.0) / M_PI * std::sqrt(integral);
    return root * root;
}

double proportion_lower_bound(double beta) {
    if (!(beta > c0)) throw constraint_error("beta > C0", std::to_string(beta));
    double num = (2.0 * beta - 2.0 * c0) * (2.0 * beta - 2.0 * c0);
    double den = 4.0 * beta * beta - 8.0 * c0 * beta + mean_square_bound(beta);
    return num / den;
}

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol) {
    if (!(lo < hi)) throw constraint_error("lo < hi", "");
    const int scan_n = 64;
    std::vector<double> xs(scan_n + 1), fs(scan_n + 1);
    for (int i = 0; i <= scan_n; ++i) {
        xs[i] = lo + (hi - lo) * i / scan_n;
        fs[i] = f(xs[i]);
    }
    std::vector<int> valleys;
    for (int i = 1; i < scan_n; ++i)
        if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1]) valleys.push_back(i);
    if (fs[0] < fs[1]) valleys.push_back(0);
    if (fs[scan_n] < fs[scan_n - 1]) valleys.push_back(scan_n);
    bool unimodal = valleys.size() <= 1;

    auto refine = [&](int i) {
        double a = xs[std::max(0, i - 1)], b = xs[std::min(scan_n, i + 1)];
        auto r = golden_t<double>([&f](double x) { return f(x); }, a, b, tol);
        return r;
    };
    if (valleys.empty()) valleys.push_back(int(std::min_element(fs.begin(), fs.end()) - fs.begin()));
    auto best = refine(valleys[0]);
    for (std::size_t j = 1; j < valleys.size(); ++j) {
        auto r = refine(valleys[j]);
        if (r.second < best.second) best = r;
    }
    return {best.first, best.second, unimodal};
}

OptimizeDResult optimize_d_parameters(int k, double eps, Precision prec) {
    const double kappa = 0.1249;
    if (k < 1) throw constraint_error("k >= 1", std::to_string(k));
    double delta_max = 2.0 / (8.0 * k + 3.0);
    auto sqrt_d = [&](double eta, double delta) {
        return std::sqrt(big_d(eta, delta, kappa, k, eps, prec));
    };

    double best_eta = 1.0, best_delta = delta_max / 2.0, best = 1e300;
    const int n_eta = 100, n_delta = 50;
    for (int i = 0; i < n_eta; ++i) {
        double eta = 1.0 + 2.0 * (i + 0.5) / n_eta;
        for (int j = 0; j < n_delta; ++j) {
            double delta = delta_max * (j + 0.5) / n_delta;
            double v = sqrt_d(eta, delta);
            if (v < best) {
                best = v;
                best_eta = eta;
                best_delta = delta;
            }
        }
    }
    // shrink the cell around the best grid point a few times
    double reta = 2.0 / n_eta, rdelta = delta_max / n_delta;
    for (int round = 0; round < 4; ++round) {
        double e_lo = std::max(1.0, best_eta - reta), e_hi = std::min(3.0, best_eta + reta);
        double d_lo = std::max(1e-6 * delta_max, best_delta - rdelta);
        double d_hi = std::min(delta_max * (1.0 - 1e-9), best_delta + rdelta);
        for (int i = 0; i <= 10; ++i) {
            double eta = e_lo + (e_hi - e_lo) * i / 10.0;
            for (int j = 0; j <= 10; ++j) {
                double delta = d_lo + (d_hi - d_lo) * j / 10.0;
                double v = sqrt_d(eta, delta);
                if (v < best) {
                    best = v;
                    best_eta = eta;
                    best_delta = delta;
                }
            }
        }
        reta /= 5.0;
        rdelta /= 5.0;
    }
    return {best_eta, best_delta, best};
}

ConstantsReport build_constants_report(double eta, double delta, double kappa,
                                       int k, double eps,
                                       const arith::SievedTables& tables,
                                       Precision prec) {
    check_d_params(eta, delta, kappa, k, eps);
    ConstantsReport rep;
    rep.eta = eta;
    rep.delta = delta;
    rep.kappa = kappa;
    rep.k = k;
    rep.eps = eps;
    rep.prec = prec;

    auto ec = eta_constants(eta, prec);
    auto add = [&rep](std::string name, double v, std::string note) {
        rep.entries.push_back({std::move(name), v, std::move(note)});
    };
    add("A", ec.a, "pole-window constant A(eta)");
    add("B1", ec.b1, "pointwise approximation constant B1(eta)");
    add("B2", ec.b2, "pointwise approximation constant B2(eta)");
    add("mollifier_mean", mollifier_mean_constant(), "L*psi mean-square constant, < 6.20");
    add("C(eta,delta,0,2k)", big_c(eta, delta, 0, 2 * k, prec), "moment constant, r=0, v=2k");
    add("C(eta,delta,4k,4k)", big_c(eta, delta, 4 * k, 4 * k, prec), "moment constant, r=v=4k");
    auto h = h_of_k(k, prec);
    add("h(k)", h.value, "integral-split minimum");
    add("h_delta_star", h.delta_star, "argmin of the h(k) bracket");
    add("f_x_integral", f_x_integral_constant(), "29136/3360, < 8.68");
    add("prime_zeta_tail", prime_zeta_tail_constant(tables), "upper bound, < 0.53");
    add("a6", a6_constant(), "log 3 - (3/4) log 2, < 0.58");
    double d = big_d(eta, delta, kappa, k, eps, prec);
    add("D", d, "k-th moment bound of the prime-sum approximation error");
    add("sqrt_D", std::sqrt(d), "C0 precursor (k=1)");
    add("c0_bound", c0_pipeline(kappa, 1e9, prec), "at q = 1e9; < 982");
    add("density_leading", density_leading_coefficient(), "4.79-type coefficient");
    add("density_window_ratio", density_window_ratio(), "0.82579-type ratio");
    return rep;
}

} // namespace lowlying::constants
