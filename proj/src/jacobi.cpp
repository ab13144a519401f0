#include "gtrans/jacobi.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"

#include <cmath>
#include <string>

namespace gtrans {

void JacobiBasis::validate() const
{
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("Jacobi exponents must exceed -1, got (" + std::to_string(a) + ", " +
                          std::to_string(b) + ")");
    }
}

namespace {

// Advances the classical recurrence from (P_{k-2}, P_{k-1}) to P_k, k >= 2.
double recurrence_step(int k, double a, double b, double x, double p1, double p2)
{
    const double kk = k;
    const double s = 2.0 * kk + a + b;
    const double lead = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double mid = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double tail = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    return (mid * p1 - tail * p2) / lead;
}

void classical_all(int n_max, double a, double b, double x, std::span<double> out)
{
    out[0] = 1.0;
    if (n_max == 0)
        return;
    out[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for (int k = 2; k <= n_max; ++k)
        out[k] = recurrence_step(k, a, b, x, out[k - 1], out[k - 2]);
}

double log_value_at_one(int n, double a)
{
    return std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0);
}

} // namespace

double jacobi_classical(int n, JacobiBasis basis, double x)
{
    basis.validate();
    if (n < 0)
        throw DomainError("Jacobi degree must be non-negative");
    double p2 = 1.0;
    if (n == 0)
        return p2;
    double p1 = (basis.a + 1.0) + 0.5 * (basis.a + basis.b + 2.0) * (x - 1.0);
    for (int k = 2; k <= n; ++k) {
        const double p = recurrence_step(k, basis.a, basis.b, x, p1, p2);
        p2 = p1;
        p1 = p;
    }
    return p1;
}

double jacobi_eval(int n, JacobiBasis basis, double x)
{
    if (n == 0) {
        basis.validate();
        return 1.0;
    }
    return jacobi_classical(n, basis, x) / jacobi_classical(n, basis, 1.0);
}

void jacobi_eval_all(int n_max, JacobiBasis basis, double x, std::span<double> out)
{
    basis.validate();
    if (n_max < 0 || out.size() != static_cast<std::size_t>(n_max) + 1)
        throw ContractError("jacobi_eval_all: output span must hold n_max + 1 values");
    classical_all(n_max, basis.a, basis.b, x, out);
    // P_k(1) obeys the same recurrence; running it alongside keeps R_k(1) == 1 exactly.
    double one2 = 1.0;
    double one1 = basis.a + 1.0;
    for (int k = 1; k <= n_max; ++k) {
        if (k >= 2) {
            const double next = recurrence_step(k, basis.a, basis.b, 1.0, one1, one2);
            one2 = one1;
            one1 = next;
        }
        out[k] /= one1;
    }
}

double jacobi_derivative(int n, JacobiBasis basis, double x, int order)
{
    basis.validate();
    if (order < 0)
        throw DomainError("derivative order must be non-negative");
    if (order == 0)
        return jacobi_eval(n, basis, x);
    if (order > n)
        return 0.0;
    const double a = basis.a;
    const double b = basis.b;
    // d^k/dx^k P_n^{(a,b)} = Gamma(n+a+b+1+k) / (2^k Gamma(n+a+b+1)) P_{n-k}^{(a+k,b+k)}
    const double log_scale = std::lgamma(n + a + b + 1.0 + order) - std::lgamma(n + a + b + 1.0) -
                             order * std::log(2.0) - log_value_at_one(n, a);
    return std::exp(log_scale) * jacobi_classical(n - order, {a + order, b + order}, x);
}

double jacobi_weight_mass(JacobiBasis basis)
{
    basis.validate();
    const double a = basis.a;
    const double b = basis.b;
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
}

double jacobi_norm_sq(int n, JacobiBasis basis)
{
    basis.validate();
    if (n < 0)
        throw DomainError("Jacobi degree must be non-negative");
    if (n == 0)
        return jacobi_weight_mass(basis);
    const double a = basis.a;
    const double b = basis.b;
    const double log_h = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
                         std::lgamma(n + b + 1.0) + std::lgamma(n + 1.0) +
                         2.0 * std::lgamma(a + 1.0) - std::lgamma(n + a + b + 1.0) -
                         std::lgamma(n + a + 1.0);
    return std::exp(log_h);
}

PolynomialCoeffs::PolynomialCoeffs(JacobiBasis basis, std::vector<double> coeffs)
    : basis_(basis), coeffs_(std::move(coeffs))
{
    basis_.validate();
    const std::size_t n = coeffs_.size();
    if (n < 2)
        return;
    const double a = basis_.a;
    const double b = basis_.b;
    u_.assign(n, 0.0);
    v_.assign(n, 0.0);
    w_.assign(n, 0.0);
    u_[1] = 0.5 * (a + b + 2.0) / (a + 1.0);
    v_[1] = 1.0 - u_[1];
    double one2 = 1.0, one1 = a + 1.0;
    for (std::size_t k = 2; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double sk = 2.0 * kk + a + b;
        const double lead = 2.0 * kk * (kk + a + b) * (sk - 2.0);
        const double one = recurrence_step(static_cast<int>(k), a, b, 1.0, one1, one2);
        u_[k] = (sk - 1.0) * sk * (sk - 2.0) / lead * one1 / one;
        v_[k] = (sk - 1.0) * (a * a - b * b) / lead * one1 / one;
        w_[k] = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * sk / lead * one2 / one;
        one2 = one1;
        one1 = one;
    }
}

double PolynomialCoeffs::operator()(double x) const
{
    if (coeffs_.empty())
        return 0.0;
    double sum = coeffs_[0];
    if (coeffs_.size() == 1)
        return sum;
    double r2 = 1.0;
    double r1 = u_[1] * x + v_[1];
    sum += coeffs_[1] * r1;
    for (std::size_t k = 2; k < coeffs_.size(); ++k) {
        const double r = (u_[k] * x + v_[k]) * r1 - w_[k] * r2;
        r2 = r1;
        r1 = r;
        sum += coeffs_[k] * r;
    }
    return sum;
}

double PolynomialCoeffs::derivative(double x, int order) const
{
    if (order == 0)
        return (*this)(x);
    double sum = 0.0;
    for (int k = order; k <= degree(); ++k) {
        if (coeffs_[k] != 0.0)
            sum += coeffs_[k] * jacobi_derivative(k, basis_, x, order);
    }
    return sum;
}

PolynomialCoeffs PolynomialCoeffs::derivative_coeffs() const
{
    if (degree() <= 0)
        return PolynomialCoeffs(basis_, {0.0});
    const int out_degree = degree() - 1;
    // P' * R_k has degree <= 2 * out_degree, so out_degree + 1 nodes integrate it exactly.
    const QuadratureRule& rule = gauss_jacobi_rule(out_degree + 1, basis_);
    std::vector<double> out(out_degree + 1, 0.0);
    std::vector<double> values(out_degree + 1);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double d = derivative(rule.nodes[i], 1);
        jacobi_eval_all(out_degree, basis_, rule.nodes[i], values);
        for (int k = 0; k <= out_degree; ++k)
            out[k] += rule.weights[i] * d * values[k];
    }
    for (int k = 0; k <= out_degree; ++k)
        out[k] /= jacobi_norm_sq(k, basis_);
    return PolynomialCoeffs(basis_, std::move(out));
}

PolynomialCoeffs PolynomialCoeffs::trimmed(double tol) const
{
    double scale = 0.0;
    for (double c : coeffs_)
        scale = std::max(scale, std::abs(c));
    std::vector<double> out = coeffs_;
    while (out.size() > 1 && std::abs(out.back()) <= tol * scale)
        out.pop_back();
    return PolynomialCoeffs(basis_, std::move(out));
}

} // namespace gtrans
