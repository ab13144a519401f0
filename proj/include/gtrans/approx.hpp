#pragma once

#include "gtrans/function.hpp"
#include "gtrans/translation.hpp"
#include "gtrans/weighted_lp.hpp"

#include <string>
#include <vector>

namespace gtrans {

struct BestApproxConfig {
    int grid = 0;              ///< Chebyshev grid for p = inf; 0 selects max(2001, 40 n)
    int max_exchanges = 200;   ///< Remez iterations before the convex fallback
    double level_tol = 1e-9;   ///< relative spread of the levelled extrema at convergence
    int quadrature_nodes = 0;  ///< Gauss-Jacobi grid for p < inf; 0 selects max(256, 3 n)
    int max_iterations = 500;  ///< IRLS cap for p < inf
    double tolerance = 1e-10;  ///< IRLS coefficient stagnation
    double weight_floor = 1e-12;
    NormResolution resolution; ///< used to re-evaluate the error with the library norm
};

struct BestApproxResult {
    int n = 0;                ///< approximants have degree <= n - 1
    double value = 0.0;       ///< E_n(f)_{p,alpha}
    double error_estimate = 0.0;
    PolynomialCoeffs coeffs;  ///< best approximant in the (mu, mu) basis
    std::string method;       ///< "exact", "remez", "irls" or "zero"
    std::vector<double> alternation; ///< p = inf: reference points, alternating signs
    std::vector<double> residuals;   ///< IRLS objective history
    std::vector<std::string> warnings;
};

/// E_n(f)_{p,alpha} = inf over polynomials P of degree <= n-1 of ||f - P||_{p,alpha}.
///
/// p = inf: Remez exchange on the weighted error (f - P)(1-x^2)^alpha over a
/// Chebyshev grid with breakpoints added, followed by a continuous refinement
/// of the reference points. Exchange cycling falls back to a grid IRLS solve
/// with a warning. p < inf: IRLS on a Gauss-Jacobi grid.
/// The reported value is re-measured with weighted_norm (and for p = inf is
/// the largest error found), so it is an upper bound for E_n up to quadrature.
BestApproxResult best_approx(const FunctionHandle& f, int n, const SpaceParams& space,
                             const BestApproxConfig& cfg = {});

struct BestApproxSequence {
    std::vector<BestApproxResult> results; ///< results[i] is E_{i+1}
    std::vector<double> values;            ///< E_1 .. E_{n_max}
    std::vector<double> weighted_sums;     ///< S(n) = n^{-2} sum_{nu <= n} nu E_nu
};

/// E_1 .. E_{n_max}, warm-started. A result larger than its predecessor is
/// replaced by the predecessor (a feasible competitor), so the sequence is
/// non-increasing.
BestApproxSequence best_approx_sequence(const FunctionHandle& f, int n_max, const SpaceParams& space,
                                        const BestApproxConfig& cfg = {});

/// Parameters of the Jackson kernel
///   K(t) = (sin(m t/2) / sin(t/2))^{2(q+2)} sin^{2mu+1}(t)
/// with q the smallest integer > mu and m the integer in
/// ((n-1)/(q+2), (n-1)/(q+2) + 1]. The first factor is a cosine polynomial
/// of degree (q+2)(m-1) <= n-1, so Q below has degree <= n-1.
struct JacksonSpec {
    int n = 0;
    double mu = 0.0;
    int q = 0;
    int m = 0;
    int exponent = 0; ///< 2(q+2)
    double gamma = 0.0; ///< int_0^pi K(t) dt
    int degree_bound() const { return (q + 2) * (m - 1); }
    double kernel(double t) const;
};

/// Throws DomainError unless n >= 1 and mu >= 0.
JacksonSpec make_jackson_spec(int n, double mu);

struct JacksonConfig {
    TranslationConfig translation;
    int panel_nodes = 8;      ///< initial Gauss-Legendre nodes per t-panel
    int max_doublings = 5;
    double tolerance = 1e-12; ///< relative change that stops the t-rule doubling
    double mass_limit = 1e-6;
};

struct JacksonResult {
    PolynomialCoeffs coeffs;     ///< Q in the (mu, mu) basis, degree <= n-1
    double above_degree_mass = 0.0; ///< relative weighted mass beyond degree n-1
};

/// Q(x) = (1/gamma) int_0^pi T_{cos t}(f, x, mu) K(t) dt, evaluated at n+8
/// Gauss-Jacobi (mu, mu) nodes and projected to degree n+7. The coefficients
/// past n-1 must carry at most mass_limit of the total (NumericError
/// otherwise) and are dropped.
JacksonResult jackson_operator(const FunctionHandle& f, const JacksonSpec& spec, const JacksonConfig& cfg = {});

/// Multiplier of Q on R_k: (1/gamma) int_0^pi R_k(cos t) K(t) dt.
double jackson_multiplier(const JacksonSpec& spec, int k, const JacksonConfig& cfg = {});

struct MarkovBernsteinRatios {
    double r1 = 0.0; ///< ||P'||_{p,alpha+1/2} / (n ||P||_{p,alpha})
    double r2 = 0.0; ///< ||P||_{p,alpha} / (n^{2 rho} ||P||_{p,alpha+rho})
    int n = 0;       ///< degree + 1
};

/// Ratios of the Markov-Bernstein inequalities for a polynomial P, with
/// n = deg P + 1. Requires alpha > -1/p (p < inf) or alpha >= 0 (p = inf);
/// the zero polynomial is a ContractError.
MarkovBernsteinRatios markov_bernstein_check(const PolynomialCoeffs& P, Exponent p, double alpha, double rho,
                                             const NormResolution& res = {});

} // namespace gtrans
