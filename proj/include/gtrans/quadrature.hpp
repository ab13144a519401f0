#pragma once

#include "gtrans/jacobi.hpp"

#include <vector>

namespace gtrans {

/// Nodes (strictly increasing, inside (-1,1)) and positive weights of a Gauss
/// rule for the Jacobi weight of `basis`.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    JacobiBasis basis;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// m-point Gauss-Jacobi rule, exact for polynomials of degree <= 2m - 1.
///
/// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix
/// (Golub-Welsch), polished by Newton steps on the orthonormal recurrence;
/// weights come from the Christoffel function, which avoids forming
/// eigenvectors. Rules are memoized; the returned reference stays valid for
/// the lifetime of the program.
const QuadratureRule& gauss_jacobi_rule(int m, JacobiBasis basis);

/// Gauss-Legendre nodes/weights mapped onto [lo, hi].
QuadratureRule gauss_legendre_on(int m, double lo, double hi);

} // namespace gtrans
