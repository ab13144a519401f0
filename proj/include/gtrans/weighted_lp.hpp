#pragma once

#include "gtrans/function.hpp"
#include "gtrans/quadrature.hpp"

#include <string>

namespace gtrans {

/// Integrability exponent p in [1, inf]. Infinity is its own state rather than
/// a large number so the p = inf branches are selected exactly.
class Exponent {
public:
    static Exponent finite(double p);
    static Exponent infinity() { return Exponent(); }
    /// Accepts a number >= 1 or "inf".
    static Exponent parse(const std::string& text);

    bool is_infinite() const { return infinite_; }
    /// Only meaningful for finite exponents.
    double value() const { return value_; }
    std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent() = default;
    bool infinite_ = true;
    double value_ = 0.0;
};

/// (p, alpha, mu): the space L_{p,alpha} and the translation parameter.
struct SpaceParams {
    Exponent p = Exponent::infinity();
    double alpha = 0.0;
    double mu = 0.0;
};

struct Admissibility {
    bool admissible = false;
    std::string diagnostic;
};

/// Window of the direct/inverse theorem, in terms of d = alpha - mu/2:
///   p = 1:        -1/2 < d <= 0
///   1 < p < inf:  -1/(2p) < d < 1/2 - 1/(2p)
///   p = inf:      0 <= d < 1/2
Admissibility check_admissible(const SpaceParams& space);

/// Discretization knobs for weighted norms.
struct NormResolution {
    int quadrature_nodes = 256; ///< Gauss-Jacobi nodes for p < inf
    int sup_grid = 2049;        ///< Chebyshev grid size for p = inf
    int refine_iterations = 40; ///< golden-section steps around the grid argmax
};

struct NormEstimate {
    double value = 0.0;
    double error_estimate = 0.0; ///< |value - value at half resolution|
    double argmax = 0.0;         ///< location of the weighted maximum (p = inf only)
};

/// ||f||_{p,alpha} = || f(x) (1-x^2)^alpha ||_p.
/// For finite p, a handle with breakpoints is integrated panel by panel
/// (about quadrature_nodes in total) instead of with one Gauss-Jacobi rule.
double weighted_norm(const FunctionHandle& f, Exponent p, double alpha, const NormResolution& res = {});

/// Same, with an error estimate from a half-resolution rerun.
NormEstimate weighted_norm_estimate(const FunctionHandle& f, Exponent p, double alpha,
                                    const NormResolution& res = {});

/// ||f - g||_{p,alpha}.
double weighted_distance(const FunctionHandle& f, const FunctionHandle& g, Exponent p, double alpha,
                         const NormResolution& res = {});

/// Lower-level entry points reused by solvers that work on fixed grids.
namespace detail {

/// |v|^p via exp(p log|v|), with |0|^p = 0.
double abs_pow(double v, double p);

/// Chebyshev-Lobatto points cos(k pi / (n-1)), increasing.
std::vector<double> chebyshev_grid(int n);

/// Composite rule for int g(x) (1-x^2)^e dx with panels between consecutive
/// edges (edges[0] = -1, edges.back() = 1), per_panel nodes each.
QuadratureRule weighted_composite_rule(const std::vector<double>& edges, double e, int per_panel);

/// Weighted sup of a callable on [-1,1] with the (1-x^2)^alpha weight.
NormEstimate weighted_sup(const std::function<double(double)>& f, double alpha, int grid, int refine);

} // namespace detail

} // namespace gtrans
