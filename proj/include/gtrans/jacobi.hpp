#pragma once

#include <span>
#include <vector>

namespace gtrans {

/// Exponent pair (a, b) of the Jacobi weight (1-x)^a (1+x)^b on [-1, 1].
struct JacobiBasis {
    double a = 0.0;
    double b = 0.0;

    /// Throws DomainError unless a > -1 and b > -1.
    void validate() const;

    friend bool operator==(const JacobiBasis&, const JacobiBasis&) = default;
};

/// Classical Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_classical(int n, JacobiBasis basis, double x);

/// Normalized Jacobi polynomial R_n(x) = P_n(x) / P_n(1), so R_n(1) = 1.
double jacobi_eval(int n, JacobiBasis basis, double x);

/// R_0(x) .. R_{n_max}(x) in one recurrence sweep; out.size() must be n_max + 1.
void jacobi_eval_all(int n_max, JacobiBasis basis, double x, std::span<double> out);

/// Order-k derivative of the normalized polynomial R_n at x.
double jacobi_derivative(int n, JacobiBasis basis, double x, int order = 1);

/// Squared weighted norm  int R_n(x)^2 (1-x)^a (1+x)^b dx.
double jacobi_norm_sq(int n, JacobiBasis basis);

/// Total mass of the weight, int (1-x)^a (1+x)^b dx.
double jacobi_weight_mass(JacobiBasis basis);

/// A polynomial expanded in the normalized Jacobi basis: sum_k c_k R_k(x).
class PolynomialCoeffs {
public:
    PolynomialCoeffs() = default;
    PolynomialCoeffs(JacobiBasis basis, std::vector<double> coeffs);

    const JacobiBasis& basis() const { return basis_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// length - 1; the empty expansion reports -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    double operator()(double x) const;
    double derivative(double x, int order = 1) const;

    /// Coefficients of the derivative polynomial in the same basis (exact up to
    /// roundoff: obtained by a Gauss-Jacobi projection of sufficient order).
    PolynomialCoeffs derivative_coeffs() const;

    /// Same polynomial, last coefficients with |c| <= tol * max|c| dropped.
    PolynomialCoeffs trimmed(double tol = 0.0) const;

private:
    JacobiBasis basis_{};
    std::vector<double> coeffs_;
    // R_k = (u_k x + v_k) R_{k-1} - w_k R_{k-2}, precomputed for evaluation
    std::vector<double> u_, v_, w_;
};

} // namespace gtrans
