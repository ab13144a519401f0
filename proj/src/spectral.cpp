#include "gtrans/spectral.hpp"

#include "gtrans/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gtrans {

double sl_eigenvalue(int k, SturmLiouvilleParams params)
{
    return -static_cast<double>(k) * (k + params.nu + params.mu + 1.0);
}

PolynomialCoeffs sl_apply_coeffs(const PolynomialCoeffs& c, SturmLiouvilleParams params)
{
    if (c.basis() != JacobiBasis{params.nu, params.mu}) {
        std::ostringstream msg;
        msg << "sl_apply_coeffs: basis (" << c.basis().a << ", " << c.basis().b
            << ") does not match operator indices (" << params.nu << ", " << params.mu << ")";
        throw ContractError(msg.str());
    }
    std::vector<double> out = c.coeffs();
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] *= sl_eigenvalue(static_cast<int>(k), params);
    return PolynomialCoeffs(c.basis(), std::move(out));
}

double sl_apply_pointwise(const FunctionHandle& f, SturmLiouvilleParams params, double x)
{
    const double drift = params.mu - params.nu - (params.nu + params.mu + 2.0) * x;
    if (f.has_derivatives()) {
        if (!(x >= -1.0 && x <= 1.0))
            throw DomainError("sl_apply_pointwise: x outside [-1,1]");
        return (1.0 - x * x) * f.second_derivative(x) + drift * f.first_derivative(x);
    }
    if (!(x > -1.0 && x < 1.0))
        throw DomainError("sl_apply_pointwise: x must lie in (-1,1) without analytic derivatives");
    // Separate steps: cbrt(eps) balances the first difference, eps^(1/4) the second.
    const double eps = std::numeric_limits<double>::epsilon();
    const double room = 0.5 * (1.0 - std::abs(x));
    const double h1 = std::min(std::cbrt(eps) * std::max(1.0, std::abs(x)), room);
    const double h2 = std::min(std::sqrt(std::sqrt(eps)) * std::max(1.0, std::abs(x)), room);
    const double d1 = (f(x + h1) - f(x - h1)) / (2.0 * h1);
    const double d2 = (f(x + h2) - 2.0 * f(x) + f(x - h2)) / (h2 * h2);
    return (1.0 - x * x) * d2 + drift * d1;
}

double fourier_jacobi_coeff(const FunctionHandle& f, int n, double mu, const QuadratureRule& rule)
{
    if (rule.basis != JacobiBasis{mu, mu})
        throw ContractError("fourier_jacobi_coeff: rule basis must be (mu, mu)");
    const JacobiBasis basis{mu, mu};
    return rule.integrate([&](double x) { return f(x) * jacobi_eval(n, basis, x); });
}

PolynomialCoeffs project(const FunctionHandle& f, int degree, JacobiBasis basis, int nodes)
{
    if (degree < 0)
        throw DomainError("project: degree must be non-negative");
    const int m = nodes > 0 ? nodes : degree + 1;
    const QuadratureRule& rule = gauss_jacobi_rule(m, basis);
    std::vector<double> out(degree + 1, 0.0);
    std::vector<double> values(degree + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double fx = f(rule.nodes[i]);
        jacobi_eval_all(degree, basis, rule.nodes[i], values);
        for (int k = 0; k <= degree; ++k)
            out[k] += rule.weights[i] * fx * values[k];
    }
    for (int k = 0; k <= degree; ++k)
        out[k] /= jacobi_norm_sq(k, basis);
    return PolynomialCoeffs(basis, std::move(out));
}

} // namespace gtrans
