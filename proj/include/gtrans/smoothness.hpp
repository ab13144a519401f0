#pragma once

#include "gtrans/function.hpp"
#include "gtrans/translation.hpp"
#include "gtrans/weighted_lp.hpp"

#include <string>
#include <vector>

namespace gtrans {

struct ModulusConfig {
    TranslationConfig translation;
    NormResolution resolution;
    int refine_iterations = 24; ///< golden-section steps when the argmax is interior
};

struct ModulusResult {
    double delta = 0.0;
    double value = 0.0;
    double argmax_t = 0.0;
    int grid_size = 0;
    int evaluations = 0; ///< norm evaluations, including refinement
};

/// The 65-point t-grid used for the sup over [0, delta]: 40 uniform points
/// delta*k/40 and 25 geometric points from delta/40 down to delta*1e-4.
/// Increasing; the last point is delta.
std::vector<double> modulus_grid(double delta);

/// || tau_t f - f ||_{p,alpha} for one t.
double translation_deviation(const FunctionHandle& f, double t, const SpaceParams& space,
                             const ModulusConfig& cfg = {});

/// omega(f, delta)_{p,alpha} = sup_{|t| <= delta} || tau_t f - f ||_{p,alpha}.
/// The sup is taken over modulus_grid(delta), refined by golden-section search
/// when the grid argmax is not at t = delta. Throws DomainError when delta is
/// outside [0, pi) or the space is not admissible.
ModulusResult modulus(const FunctionHandle& f, double delta, const SpaceParams& space, const ModulusConfig& cfg = {});

struct KFunctionalConfig {
    int degree = 0;          ///< candidate degree N; 0 selects max(32, ceil(4/delta))
    int max_iterations = 60; ///< IRLS iterations (per continuation stage for p = inf)
    double tolerance = 1e-10;
    NormResolution resolution;
};

struct KFunctionalResult {
    double delta = 0.0;
    double value = 0.0; ///< ||f-g|| + delta^2 ||Dg|| for the returned g; an upper bound
    int degree = 0;
    PolynomialCoeffs coeffs; ///< g in the (mu, mu) basis
    int iterations = 0;
    std::string candidate; ///< "irls", "zero" or "identity"
};

/// Upper estimate of K(f, delta) = inf_g ||f-g|| + delta^2 ||D g|| over
/// polynomials g of degree <= N, D = D_{x,mu,mu}.
///
/// The minimization runs on a discrete grid (Gauss-Jacobi nodes for finite p,
/// Chebyshev-Lobatto nodes for p = inf) by iteratively reweighted least
/// squares with a line search; p = inf is approached through a continuation in
/// large finite p. The returned value is re-evaluated with the library norms,
/// and the smaller of it and the trivial candidates g = 0 and g = f (for
/// polynomial f of degree <= N) is reported.
KFunctionalResult k_functional(const FunctionHandle& f, double delta, const SpaceParams& space,
                               const KFunctionalConfig& cfg = {});

struct EquivalenceRow {
    double delta = 0.0;
    double omega = 0.0;
    double k_value = 0.0;
    double rho = 0.0;          ///< omega / K; 1 when both vanish
    double rho_weighted = 0.0; ///< rho * cos^{2mu}(delta/2)
    bool inconsistent = false; ///< K = 0 while omega > 0
};

/// rho(delta) = omega(f, delta) / K(f, delta) over a grid of deltas in (0, pi).
/// Values below 1e-10 * max(1, ||f||) count as zero (the accuracy of tau 1 = 1).
std::vector<EquivalenceRow> equivalence_ratio(const FunctionHandle& f, const std::vector<double>& deltas,
                                              const SpaceParams& space, const ModulusConfig& mcfg = {},
                                              const KFunctionalConfig& kcfg = {});

} // namespace gtrans
