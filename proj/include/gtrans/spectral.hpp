#pragma once

#include "gtrans/function.hpp"
#include "gtrans/jacobi.hpp"
#include "gtrans/quadrature.hpp"

namespace gtrans {

/// Parameters of D_{x,nu,mu} = (1-x^2) d^2/dx^2 + (mu - nu - (nu+mu+2)x) d/dx,
/// whose eigenfunctions are the Jacobi polynomials with weight (1-x)^nu (1+x)^mu.
struct SturmLiouvilleParams {
    double nu = 0.0;
    double mu = 0.0;
};

/// Eigenvalue of D_{x,nu,mu} on the degree-k Jacobi polynomial: -k(k+nu+mu+1).
double sl_eigenvalue(int k, SturmLiouvilleParams params);

/// D applied in coefficient space. The expansion basis must be (nu, mu).
PolynomialCoeffs sl_apply_coeffs(const PolynomialCoeffs& c, SturmLiouvilleParams params);

/// D f at x. Uses the handle's analytic derivatives when present, otherwise
/// second-order central differences (step cbrt(eps) for f', eps^(1/4) for
/// f'', both scaled by max(1, |x|)).
/// At x = +-1 only handles with analytic derivatives are accepted.
double sl_apply_pointwise(const FunctionHandle& f, SturmLiouvilleParams params, double x);

/// a_n(f) = int f(x) R_n^{(mu,mu)}(x) (1-x^2)^mu dx evaluated with `rule`,
/// whose basis must be (mu, mu).
double fourier_jacobi_coeff(const FunctionHandle& f, int n, double mu, const QuadratureRule& rule);

/// Orthogonal projection of f onto R_0..R_degree of `basis` with an m-point
/// Gauss-Jacobi rule. m defaults to degree + 1, which is exact when f is a
/// polynomial of degree <= degree + 1.
PolynomialCoeffs project(const FunctionHandle& f, int degree, JacobiBasis basis, int nodes = 0);

} // namespace gtrans
