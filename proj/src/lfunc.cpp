#include "lowlying/lfunc.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace lowlying::lfunc {

using characters::CharacterFamily;

namespace {

struct LPair {
    cd value;
    cd prime;
};

// L and L' in one pass over the Hurwitz backend.  For non-principal chi the
// 1/(s-1) pole of each zeta(s, a/q) is subtracted term-wise; the subtracted
// poles sum to zero exactly because sum_a chi(a) = 0.
LPair l_pair(const CharacterFamily& family, std::uint32_t chi, cd s,
             bool want_prime) {
    std::uint32_t q = family.modulus();
    bool principal = family.is_principal(chi);
    if (principal && s == cd{1.0, 0.0})
        throw numeric_error("L(s, chi0) has a pole at s = 1");

    if (!principal && s == cd{1.0, 0.0}) {
        // L(1, chi) = -(1/q) sum_a chi(a) psi(a/q)
        cd sum{0.0, 0.0};
        for (std::uint32_t a = 1; a < q; ++a)
            sum += family.value(chi, a) *
                   arith::digamma(cd(static_cast<double>(a) / q, 0.0));
        cd val = -sum / static_cast<double>(q);
        if (!want_prime) return {val, cd{0.0, 0.0}};
        // wide 5-point stencil: a narrow step amplifies the pole-subtraction
        // cancellation noise of the nearby evaluations
        cd h{0.01, 0.0};
        cd d = (-l_pair(family, chi, s + 2.0 * h, false).value +
                8.0 * l_pair(family, chi, s + h, false).value -
                8.0 * l_pair(family, chi, s - h, false).value +
                l_pair(family, chi, s - 2.0 * h, false).value) /
               (12.0 * h);
        return {val, d};
    }

    cd sum{0.0, 0.0}, dsum{0.0, 0.0};
    cd pole = 1.0 / (s - 1.0);
    cd dpole = -pole * pole;
    for (std::uint32_t a = 1; a < q; ++a) {
        cd cv = family.value(chi, a);
        auto h = arith::hurwitz_zeta(s, static_cast<double>(a) / q, want_prime);
        cd term = h.value;
        if (!principal) term -= pole;
        sum += cv * term;
        if (want_prime) {
            cd dterm = h.derivative;
            if (!principal) dterm -= dpole;
            dsum += cv * dterm;
        }
    }
    double logq = std::log(static_cast<double>(q));
    cd qs = arith::pow_minus_s(static_cast<double>(q), s);
    cd val = qs * sum;
    cd prime = want_prime ? qs * dsum - logq * val : cd{0.0, 0.0};
    return {val, prime};
}

} // namespace

cd l_value(const CharacterFamily& family, std::uint32_t chi, cd s) {
    return l_pair(family, chi, s, false).value;
}

cd l_prime(const CharacterFamily& family, std::uint32_t chi, cd s) {
    return l_pair(family, chi, s, true).prime;
}

cd log_deriv(const CharacterFamily& family, std::uint32_t chi, cd s) {
    LPair p = l_pair(family, chi, s, true);
    double mag = std::abs(p.value);
    if (!(mag >= 1e-13))    // also trips on NaN
        throw numeric_error("log_deriv near a zero: |L| = " + std::to_string(mag));
    return p.prime / p.value;
}

// ---------------------------------------------------------------------------
// S(t, chi)
// ---------------------------------------------------------------------------

namespace {

ArgumentSample s_of_t_once(const CharacterFamily& family, std::uint32_t chi,
                           double t, const arith::Quadrature& quad) {
    ArgumentSample out;
    out.t = t;
    out.central_abs = std::abs(l_value(family, chi, cd(0.5, t)));

    auto integrand = [&](double sigma) {
        return log_deriv(family, chi, cd(sigma, t)).imag();
    };
    // integrand peaks near sigma = 1/2 when t sits close to an ordinate;
    // concentrate the panels there
    static const double knots[] = {0.5, 0.625, 0.75, 1.0, 1.5, 2.5, 4.5, 8.0};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(knots); ++i) {
        auto r = arith::integrate(integrand, knots[i], knots[i + 1], quad);
        total += r.value;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }

    // analytic tail: int_8^inf L'/L = -sum Lambda(n) chi(n) n^{-8-it}/log n
    cd tail_sum{0.0, 0.0};
    for (std::uint64_t n = 2; n <= 128; ++n) {
        double p = static_cast<double>(n);
        double ln = std::log(p);
        // Lambda(n) without a sieve: n is tiny here
        std::uint64_t m = n;
        std::uint64_t spf = 0;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                spf = d;
                break;
            }
        if (spf == 0) spf = m;
        while (m % spf == 0) m /= spf;
        if (m != 1) continue;
        double lam = std::log(static_cast<double>(spf));
        tail_sum += lam * family.value(chi, n) * arith::pow_minus_s(p, cd(8.0, t)) / ln;
    }
    out.tail = tail_sum.imag();   // = -Im of the sigma-integral over [8, inf)

    out.value = -(total - out.tail) / M_PI;
    return out;
}

} // namespace

ArgumentSample s_of_t(const CharacterFamily& family, std::uint32_t chi, double t,
                      const arith::Quadrature& quad) {
    if (std::abs(t) > 100.0)
        throw constraint_error("|t| <= 100", std::to_string(t));
    ArgumentSample s = s_of_t_once(family, chi, t, quad);
    if (s.central_abs < 1e-10) {
        // half-sum convention at (or numerically at) an ordinate
        constexpr double eps = 1e-6;
        ArgumentSample lo = s_of_t_once(family, chi, t - eps, quad);
        ArgumentSample hi = s_of_t_once(family, chi, t + eps, quad);
        s.value = 0.5 * (lo.value + hi.value);
        s.evaluations += lo.evaluations + hi.evaluations;
        s.converged = lo.converged && hi.converged;
        s.averaged = true;
    }
    return s;
}

double s_tilde(const CharacterFamily& family, std::uint32_t chi, double t,
               const arith::Quadrature& quad) {
    double a = s_of_t(family, chi, t, quad).value;
    std::uint32_t cc = family.conjugate_index(chi);
    if (cc == chi) return 2.0 * a;
    return a + s_of_t(family, cc, t, quad).value;
}

// ---------------------------------------------------------------------------
// rotated Z and zero scans
// ---------------------------------------------------------------------------

Rotation make_rotation(const CharacterFamily& family, std::uint32_t chi) {
    if (family.is_principal(chi))
        throw constraint_error("chi non-principal", "rotation of the principal character");
    auto g = characters::gauss_sum(family, chi);
    Rotation rot;
    rot.chi = chi;
    rot.parity = family.parity(chi);
    rot.log_q_pi = std::log(family.modulus() / M_PI);
    rot.eps_root_inv = 1.0 / std::sqrt(g.epsilon);
    return rot;
}

double rotated_z(const CharacterFamily& family, const Rotation& rot, double t,
                 double* imag_residual) {
    // theta(t) = Im[((1/2 + a + it)/2) log(q/pi) + log Gamma((1/2 + a + it)/2)]
    cd z_arg(0.25 + 0.5 * rot.parity, 0.5 * t);
    double theta = 0.5 * t * rot.log_q_pi + arith::log_gamma(z_arg).imag();
    cd w = rot.eps_root_inv * std::polar(1.0, theta) *
           l_value(family, rot.chi, cd(0.5, t));
    if (imag_residual) *imag_residual = w.imag();
    return w.real();
}

namespace {

// winding number of L along the rectangle boundary, counterclockwise
class WindingCounter {
public:
    WindingCounter(const CharacterFamily& family, std::uint32_t chi)
        : family_(family), chi_(chi) {}

    struct BoundaryZero {};    // |L| below threshold on the contour

    int count(double s_lo, double s_hi, double t_lo, double t_hi) {
        cd c1(s_hi, t_lo), c2(s_hi, t_hi), c3(s_lo, t_hi), c4(s_lo, t_lo);
        double total = 0.0;
        total += edge_split(c1, c2);
        total += edge_split(c2, c3);
        total += edge_split(c3, c4);
        total += edge_split(c4, c1);
        double winding = total / (2.0 * M_PI);
        long n = std::lround(winding);
        if (std::abs(winding - static_cast<double>(n)) > 0.25)
            throw numeric_error("winding number did not settle: " + std::to_string(winding));
        return static_cast<int>(n);
    }

private:
    cd eval(cd z) {
        cd f = l_value(family_, chi_, z);
        if (std::abs(f) < 1e-12) throw BoundaryZero{};
        return f;
    }

    // pre-split well below the zero spacing so |delta arg| < 1 per segment is
    // unambiguous; the recursion then refines locally
    double edge_split(cd z1, cd z2) {
        long n = std::max(1L, std::lround(std::ceil(std::abs(z2 - z1) / 0.25)));
        double total = 0.0;
        cd prev = z1;
        cd fprev = eval(prev);
        for (long i = 1; i <= n; ++i) {
            cd zi = z1 + (z2 - z1) * (static_cast<double>(i) / static_cast<double>(n));
            cd fi = eval(zi);
            total += edge(prev, zi, fprev, fi, 0);
            prev = zi;
            fprev = fi;
        }
        return total;
    }

    double edge(cd z1, cd z2, cd f1, cd f2, int depth) {
        double phi = std::arg(f2 / f1);
        if (std::abs(phi) <= 1.0 && depth >= 1) return phi;
        if (depth > 52)
            throw numeric_error("argument tracking stalled near " +
                                std::to_string(z1.real()) + "+" +
                                std::to_string(z1.imag()) + "i");
        cd zm = 0.5 * (z1 + z2);
        cd fm = eval(zm);
        return edge(z1, zm, f1, fm, depth + 1) + edge(zm, z2, fm, f2, depth + 1);
    }

    const CharacterFamily& family_;
    std::uint32_t chi_;
};

double bisect_zero(const CharacterFamily& family, const Rotation& rot, double a,
                   double b, double fa) {
    for (int i = 0; i < 80 && b - a > 1e-10; ++i) {
        double m = 0.5 * (a + b);
        double fm = rotated_z(family, rot, m);
        if (fm == 0.0) return m;
        if ((fa < 0) == (fm < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

constexpr double kContourLeft = -0.5;   // all non-trivial zeros have beta > 0;
constexpr double kContourRight = 2.0;   // none at or right of 1
constexpr double kBottom = 1e-4;        // keeps the even-chi trivial zero s=0 outside

int contour_count(const CharacterFamily& family, std::uint32_t chi, double t_lo,
                  double t_hi) {
    WindingCounter wc(family, chi);
    double shift = 0.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            return wc.count(kContourLeft, kContourRight, t_lo, t_hi + shift);
        } catch (const WindingCounter::BoundaryZero&) {
            shift += 1e-6;
        }
    }
    throw numeric_error("contour zero persisted after 3 perturbations");
}

// recursively isolate boxes whose winding count disagrees with the number of
// scanned critical-line ordinates inside
void subdivide_suspects(const CharacterFamily& family, std::uint32_t chi,
                        const std::vector<double>& ordinates, double s_lo,
                        double s_hi, double t_lo, double t_hi,
                        std::vector<std::array<double, 4>>& out, int depth) {
    int cnt;
    try {
        cnt = WindingCounter(family, chi).count(s_lo, s_hi, t_lo, t_hi);
    } catch (...) {
        out.push_back({s_lo, s_hi, t_lo, t_hi});
        return;
    }
    int expected = 0;
    if (s_lo < 0.5 && 0.5 < s_hi)
        for (double g : ordinates)
            if (t_lo < g && g <= t_hi) ++expected;
    if (cnt == expected) return;
    if (s_hi - s_lo <= 1e-4 && t_hi - t_lo <= 1e-4) {
        out.push_back({s_lo, s_hi, t_lo, t_hi});
        return;
    }
    if (depth > 22) {
        out.push_back({s_lo, s_hi, t_lo, t_hi});
        return;
    }
    double sm = 0.5 * (s_lo + s_hi), tm = 0.5 * (t_lo + t_hi);
    subdivide_suspects(family, chi, ordinates, s_lo, sm, t_lo, tm, out, depth + 1);
    subdivide_suspects(family, chi, ordinates, sm, s_hi, t_lo, tm, out, depth + 1);
    subdivide_suspects(family, chi, ordinates, s_lo, sm, tm, t_hi, out, depth + 1);
    subdivide_suspects(family, chi, ordinates, sm, s_hi, tm, t_hi, out, depth + 1);
}

} // namespace

ZeroList critical_zeros(const CharacterFamily& family, std::uint32_t chi,
                        double height) {
    if (family.is_principal(chi))
        throw constraint_error("chi non-principal", "critical_zeros of chi0");
    if (!(height > 0.0) || height > 100.0)
        throw constraint_error("0 < T <= 100", std::to_string(height));

    Rotation rot = make_rotation(family, chi);
    ZeroList list;
    list.chi = chi;
    list.height = height;
    list.refine_width = 1e-10;

    double base_step = (2.0 * M_PI / std::log(family.modulus())) / 20.0;
    double t_lo = kBottom;
    for (int round = 0; round < 3; ++round) {
        list.rounds = round;
        double h = base_step / std::pow(4.0, round);
        long n = std::lround(std::ceil(height / h));
        list.ordinates.clear();
        double prev_t = 0.0, prev_z = rotated_z(family, rot, 0.0);
        for (long i = 1; i <= n; ++i) {
            double t = std::min(height, i * h);
            double z = rotated_z(family, rot, t);
            if (z == 0.0) {
                list.ordinates.push_back(t);
            } else if ((prev_z < 0) != (z < 0) && prev_z != 0.0) {
                list.ordinates.push_back(bisect_zero(family, rot, prev_t, t, prev_z));
            }
            prev_t = t;
            prev_z = z;
        }
        // ultra-low ordinates happen (q=101 has one near 5.5e-5): drop the
        // contour floor under the smallest find, staying above the even-chi
        // trivial zero at s = 0
        if (!list.ordinates.empty())
            t_lo = std::max(1e-9, std::min(kBottom, 0.5 * list.ordinates.front()));
        int contour = contour_count(family, chi, t_lo, height);
        list.discrepancy = contour - static_cast<int>(list.ordinates.size());
        if (list.discrepancy == 0) {
            list.validated = true;
            return list;
        }
    }
    subdivide_suspects(family, chi, list.ordinates, kContourLeft, kContourRight,
                       t_lo, height, list.suspects, 0);
    return list;
}

int zero_count_region(const CharacterFamily& family, std::uint32_t chi,
                      double sigma0, double t1, double t2) {
    if (!(t1 <= t2)) throw constraint_error("t1 <= t2", "");
    // right edge stays in zero-free territory even when sigma0 >= 2
    double right = std::max(kContourRight, sigma0 + 0.5);
    WindingCounter wc(family, chi);
    double shift = 0.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            return wc.count(sigma0 - shift, right + shift, t1 - shift, t2 + shift);
        } catch (const WindingCounter::BoundaryZero&) {
            shift += 1e-6;
        }
    }
    throw numeric_error("zero_count_region: boundary zero persisted after 3 shifts");
}

// ---------------------------------------------------------------------------
// sigma_{t,chi} machinery
// ---------------------------------------------------------------------------

double sigma_t_chi(double t, const std::vector<std::pair<double, double>>& zeros,
                   double x, double eta) {
    if (!(eta >= 1.0)) throw constraint_error("eta >= 1", std::to_string(eta));
    if (!(x >= 2.0)) throw constraint_error("x >= 2", std::to_string(x));
    double log_x = std::log(x);
    double best = eta / log_x;
    for (auto& [beta, gamma] : zeros) {
        if (beta < 0.5) continue;
        double window = std::pow(x, 3.0 * (beta - 0.5)) / log_x;
        if (std::abs(t - gamma) <= window) best = std::max(best, beta - 0.5);
    }
    return 0.5 + 2.0 * best;
}

cd dirichlet_remainder(const CharacterFamily& family, std::uint32_t chi, double t,
                       double x, double eta,
                       const std::vector<std::pair<double, double>>& zeros,
                       const arith::SievedTables& tables) {
    double x3 = x * x * x;
    if (x3 <= 2.0) return {0.0, 0.0};   // empty sum: Lambda_x(1) = 0
    if (x3 > static_cast<double>(tables.limit()) + 1.0)
        throw capacity_error("dirichlet_remainder needs sieve up to " +
                             std::to_string(static_cast<std::uint64_t>(x3)));
    cd s(sigma_t_chi(t, zeros, x, eta), t);
    cd sum{0.0, 0.0};
    for (std::uint64_t n = 2; static_cast<double>(n) < x3; ++n) {
        double lam = mollifier::smoothed_lambda(n, x, tables);
        if (lam == 0.0) continue;
        cd cv = family.value(chi, n);
        if (cv == cd{0.0, 0.0}) continue;
        sum += lam * cv * arith::pow_minus_s(static_cast<double>(n), s);
    }
    return sum;
}

FormulaResidual explicit_formula_residual(const CharacterFamily& family,
                                          std::uint32_t chi, cd s, double x,
                                          const ZeroList& zeros,
                                          const ZeroList& zeros_conj,
                                          const arith::SievedTables& tables) {
    double need = std::abs(s.imag()) + 50.0;
    if (zeros.height < need || zeros_conj.height < need)
        throw constraint_error("zero lists reach |Im s| + 50",
                               "height=" + std::to_string(zeros.height));
    int parity = family.parity(chi);
    double log_x = std::log(x);
    double x3 = x * x * x;

    cd lhs = log_deriv(family, chi, s);

    cd dsum{0.0, 0.0};
    for (std::uint64_t n = 2; static_cast<double>(n) < x3; ++n) {
        double lam = mollifier::smoothed_lambda(n, x, tables);
        if (lam == 0.0) continue;
        dsum += lam * family.value(chi, n) * arith::pow_minus_s(static_cast<double>(n), s);
    }

    // Trivial zeros are simple zeros like any other, so they carry the same
    // cubed kernel denominator x^w(1-x^w)^2/w^3 at w = -(2m+a+s); the squared
    // form some sources print fails the numeric identity by ~1e-5 at x = 10.
    cd trivial{0.0, 0.0};
    for (int m = 0; m < 50; ++m) {
        cd e = -(2.0 * m + parity) - s;                 // x^{-2m-a-s} exponent
        cd xp = arith::pow_minus_s(x, -e);
        cd den = s + (2.0 * m + parity);
        trivial += xp * (1.0 - xp) * (1.0 - xp) / (den * den * den);
    }

    auto zero_term = [&](cd rho) {
        cd xp = arith::pow_minus_s(x, s - rho);         // x^{rho - s}
        cd d = s - rho;
        return xp * (1.0 - xp) * (1.0 - xp) / (d * d * d);
    };
    cd zsum{0.0, 0.0};
    for (double g : zeros.ordinates) zsum += zero_term(cd(0.5, g));
    for (double g : zeros_conj.ordinates) zsum += zero_term(cd(0.5, -g));

    cd rhs = -dsum + trivial / (log_x * log_x) + zsum / (log_x * log_x);

    // dropped-tail estimate: zero density ~ (1/pi) log(q u / 2pi) per unit height
    double q = family.modulus();
    double xfac = std::pow(x, 0.5 - s.real());
    double amp = xfac * (1.0 + xfac) * (1.0 + xfac) / (log_x * log_x);
    double T = std::min(zeros.height, zeros_conj.height);
    auto dens = [q](double u) { return std::log(q * u / (2.0 * M_PI) + 3.0) / M_PI; };
    // int_T^inf dens(u)/(u-t0)^3 du via u = T/v (polynomial decay, so the
    // exponential-tail transform does not apply); integrand -> 0 as v -> 0
    double t0 = std::abs(s.imag());
    auto tail_f = [&](double v) {
        double den = T - t0 * v;
        return dens(T / v) * T * v / (den * den * den);
    };
    double ztail = 2.0 * amp * arith::integrate(tail_f, 0.0, 1.0, {1e-8, 1e-8, 24}).value;
    double xs = std::pow(x, -100.0 - parity - s.real());
    double td = 100.0 + s.real();
    double ttail = xs * 4.0 / (td * td * td) / (log_x * log_x) / (1.0 - 1.0 / (x * x));
    return {std::abs(lhs - rhs), ztail + ttail};
}

LittlewoodCheck littlewood_identity_check(double a, double sigma_prime, double t1,
                                          double t2, const arith::Quadrature& quad) {
    if (!(a > 0.0)) throw constraint_error("a > 0", std::to_string(a));
    const double ln2 = std::log(2.0);
    if (!(t2 - t1 > M_PI / ln2))
        throw constraint_error("t2 - t1 > pi/ln 2",
                               "window " + std::to_string(t2 - t1) +
                                   " too narrow for the growth condition");

    double beta0 = std::log2(a);
    double spacing = 2.0 * M_PI / ln2;
    // zero on the window boundary: shift per the convention
    for (long k = std::lround(std::floor(t1 / spacing)) - 1;
         k <= std::lround(std::ceil(t2 / spacing)) + 1; ++k) {
        double g = k * spacing;
        if (std::abs(g - t1) < 1e-9 || std::abs(g - t2) < 1e-9) {
            t1 += 1e-4;
            t2 += 1e-4;
            break;
        }
    }

    double w = t2 - t1;
    LittlewoodCheck out{0.0, 0.0, 0};
    if (beta0 >= sigma_prime) {
        for (long k = std::lround(std::floor(t1 / spacing)) - 1;
             k <= std::lround(std::ceil(t2 / spacing)) + 1; ++k) {
            double g = k * spacing;
            if (g < t1 || g > t2) continue;
            ++out.zeros_in_window;
            out.lhs += 2.0 * w * std::sin(M_PI * (g - t1) / w) *
                       std::sinh(M_PI * (beta0 - sigma_prime) / w);
        }
    }

    auto log_abs_f = [a](double sigma, double t) {
        cd z = a * arith::pow_minus_s(2.0, cd(sigma, t));
        // log|1-z| = log1p(|z|^2 - 2 Re z)/2; the naive form rounds 1-z to 1
        // once |z| < 2^-53 while the sinh weight still amplifies the tail
        if (std::abs(z) < 0.5) return 0.5 * std::log1p(std::norm(z) - 2.0 * z.real());
        return std::log(std::abs(1.0 - z));
    };
    auto horizontal = arith::integrate(
        [&](double t) { return std::sin(M_PI * (t - t1) / w) * log_abs_f(sigma_prime, t); },
        t1, t2, quad);

    // the sinh integrand decays like e^{-(ln2 - pi/w) sigma}; integrate over
    // forced segments out to where the remainder is far below tolerance
    double rate = ln2 - M_PI / w;
    double cut = sigma_prime + std::max(60.0, 40.0 / rate);
    auto vf = [&](double sigma) {
        return std::sinh(M_PI * (sigma - sigma_prime) / w) *
               (log_abs_f(sigma, t1) + log_abs_f(sigma, t2));
    };
    double vertical = 0.0;
    double marks[] = {0.0, 2.0, 5.0, 10.0, 20.0, 40.0, cut - sigma_prime};
    for (std::size_t i = 0; i + 1 < std::size(marks); ++i)
        vertical += arith::integrate(vf, sigma_prime + marks[i],
                                     sigma_prime + std::min(marks[i + 1], cut - sigma_prime),
                                     quad)
                        .value;
    out.rhs = horizontal.value + vertical;
    return out;
}

double counting_formula(const CharacterFamily& family, std::uint32_t chi, double t,
                        double s_tilde_value) {
    double q = family.modulus();
    int parity = family.parity(chi);
    auto re_psi = [parity](double u) {
        return arith::digamma(cd(0.25 + 0.5 * parity, 0.5 * u)).real();
    };
    auto integral = arith::integrate(re_psi, 0.0, t, {1e-10, 1e-10, 24});
    return (t / M_PI) * std::log(q / M_PI) + s_tilde_value + integral.value / M_PI;
}

int pair_count(const ZeroList& zeros, const ZeroList& zeros_conj, double t) {
    int n = 0;
    for (double g : zeros.ordinates)
        if (g <= t) ++n;
    for (double g : zeros_conj.ordinates)
        if (g <= t) ++n;
    return n;
}

} // namespace lowlying::lfunc
