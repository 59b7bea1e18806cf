#pragma once

// Desk-scale empirical studies: each theorem paired with its measurable
// counterpart across small prime moduli.  All sweeps are exhaustive over the
// non-principal characters; per-character work parallelizes with fixed-order
// reduction so reports are byte-deterministic for any worker count.

#include "lowlying/arith.hpp"
#include "lowlying/characters.hpp"
#include "lowlying/report.hpp"

#include <cstdint>
#include <vector>

namespace lowlying::experiments {

struct Options {
    unsigned workers = 0;            // 0: hardware concurrency
    double quad_tol = 1e-7;          // S(t,chi) sweep tolerance
    std::uint64_t seed = 0;          // recorded in meta; sweeps are sampling-free
};

// E[S(t, chi)] over the non-principal family per grid point; bound column 982
report::Table average_s_experiment(const characters::CharacterFamily& family,
                                   const std::vector<double>& t_grid,
                                   const Options& opt = {});

// E[S~(t,chi)^2] at t = 2 pi beta / log q against mean_square_bound(beta)
report::Table mean_square_experiment(const characters::CharacterFamily& family,
                                     double beta, const Options& opt = {});

// scaled first-zero heights, family minimum, histogram, fractions below
// beta in {1/4, 1, 2, 5}; height 0 picks min(100, max(30, 40 spacings))
report::Table first_zero_survey(const characters::CharacterFamily& family,
                                const Options& opt = {}, double height = 0.0);

// sum over chi of N(sigma; t1, t2; chi) against the zero-density bound;
// hypothesis violations of the asymptotic theorem are flagged, not fatal
report::Table density_empirics(const characters::CharacterFamily& family,
                               double kappa, double sigma, double t1, double t2,
                               const Options& opt = {});

// k=1 moment of the prime-sum approximation error and the pointwise
// Lambda_x-approximation error with its B1/B2 bound
report::Table approximation_experiment(const characters::CharacterFamily& family,
                                       double x, double eta,
                                       const std::vector<double>& t_grid,
                                       const arith::SievedTables& tables,
                                       const Options& opt = {});

// gcd double sums per xi with their predicted limits and the normalized
// deviations * (log xi / log log xi)
report::Table mollifier_convergence(const std::vector<double>& xi_list,
                                    const arith::SievedTables& tables,
                                    const Options& opt = {});

} // namespace lowlying::experiments
