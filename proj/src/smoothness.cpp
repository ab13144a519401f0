#include "gtrans/smoothness.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"
#include "gtrans/spectral.hpp"
#include "irls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gtrans {

namespace {

void require_admissible(const SpaceParams& space, const char* who)
{
    const Admissibility a = check_admissible(space);
    if (!a.admissible)
        throw DomainError(std::string(who) + ": space not admissible: " + a.diagnostic);
}

void require_delta(double delta, const char* who)
{
    if (!(delta >= 0.0) || !(delta < std::numbers::pi)) {
        std::ostringstream msg;
        msg << who << ": delta must lie in [0, pi), got " << delta;
        throw DomainError(msg.str());
    }
}

} // namespace

std::vector<double> modulus_grid(double delta)
{
    std::vector<double> t;
    t.reserve(65);
    const double ratio = std::pow(250.0, 1.0 / 25.0);
    for (int j = 25; j >= 1; --j)
        t.push_back(delta / 40.0 * std::pow(ratio, -j));
    for (int k = 1; k <= 40; ++k)
        t.push_back(delta * k / 40.0);
    t.back() = delta;
    return t;
}

double translation_deviation(const FunctionHandle& f, double t, const SpaceParams& space, const ModulusConfig& cfg)
{
    if (t == 0.0)
        return 0.0;
    const double mu = space.mu;
    const TranslationConfig tcfg = cfg.translation;
    FunctionHandle diff([&f, t, mu, tcfg](double x) { return asym_translate(f, t, mu, x, tcfg) - f(x); },
                        "deviation");
    return weighted_norm(diff.with_breakpoints(f.breakpoints()), space.p, space.alpha, cfg.resolution);
}

ModulusResult modulus(const FunctionHandle& f, double delta, const SpaceParams& space, const ModulusConfig& cfg)
{
    require_delta(delta, "modulus");
    require_admissible(space, "modulus");
    ModulusResult out;
    out.delta = delta;
    if (delta == 0.0)
        return out;

    const std::vector<double> ts = modulus_grid(delta);
    out.grid_size = static_cast<int>(ts.size());
    std::vector<double> vals(ts.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        vals[i] = translation_deviation(f, ts[i], space, cfg);
        if (vals[i] > vals[best])
            best = i;
    }
    out.evaluations = out.grid_size;
    out.value = vals[best];
    out.argmax_t = ts[best];

    if (best + 1 < ts.size() && cfg.refine_iterations > 0) {
        double lo = best == 0 ? 0.0 : ts[best - 1];
        double hi = ts[best + 1];
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = translation_deviation(f, x1, space, cfg);
        double f2 = translation_deviation(f, x2, space, cfg);
        out.evaluations += 2;
        for (int it = 0; it < cfg.refine_iterations; ++it) {
            if (f1 > out.value) {
                out.value = f1;
                out.argmax_t = x1;
            }
            if (f2 > out.value) {
                out.value = f2;
                out.argmax_t = x2;
            }
            if (f1 >= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = translation_deviation(f, x1, space, cfg);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = translation_deviation(f, x2, space, cfg);
            }
            ++out.evaluations;
        }
    }
    return out;
}

namespace {

int default_degree(double delta)
{
    return std::max(32, static_cast<int>(std::ceil(4.0 / delta)));
}

double penalty_value(const PolynomialCoeffs& g, const SpaceParams& space, const NormResolution& res)
{
    const PolynomialCoeffs dg = sl_apply_coeffs(g, {space.mu, space.mu});
    return weighted_norm(FunctionHandle::polynomial(dg), space.p, space.alpha, res);
}

} // namespace

KFunctionalResult k_functional(const FunctionHandle& f, double delta, const SpaceParams& space,
                               const KFunctionalConfig& cfg)
{
    require_admissible(space, "k_functional");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("k_functional: delta must be positive");
    const int n = cfg.degree > 0 ? cfg.degree : default_degree(delta);
    const double mu = space.mu;
    const JacobiBasis basis{mu, mu};
    const double lambda = delta * delta;

    KFunctionalResult out;
    out.delta = delta;
    out.degree = n;

    // candidate g = 0
    const double f_norm = weighted_norm(f, space.p, space.alpha, cfg.resolution);
    out.value = f_norm;
    out.coeffs = PolynomialCoeffs(basis, {0.0});
    out.candidate = "zero";

    // candidate g = f
    if (const auto& poly = f.polynomial(); poly && poly->degree() <= n) {
        const PolynomialCoeffs own =
            poly->basis() == basis ? *poly : project(f, poly->degree(), basis, poly->degree() + 1);
        const double v = lambda * penalty_value(own, space, cfg.resolution);
        if (v < out.value) {
            out.value = v;
            out.coeffs = own;
            out.candidate = "identity";
        }
    }
    if (out.value == 0.0)
        return out;

    // discrete grid: Gauss-Jacobi for finite p, Chebyshev-Lobatto for p = inf
    std::vector<double> xs;
    std::vector<double> scale;
    double p = 0.0;
    if (space.p.is_infinite()) {
        p = std::numeric_limits<double>::infinity();
        xs = detail::chebyshev_grid(std::max(513, 4 * n + 1));
        for (double x : xs)
            scale.push_back(space.alpha == 0.0 ? 1.0 : std::pow(std::max(0.0, (1.0 - x) * (1.0 + x)), space.alpha));
    } else {
        p = space.p.value();
        const double e = space.alpha * p;
        const QuadratureRule& rule =
            gauss_jacobi_rule(std::max(cfg.resolution.quadrature_nodes, 3 * n), {e, e});
        xs = rule.nodes;
        for (double w : rule.weights)
            scale.push_back(std::pow(w, 1.0 / p));
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(xs.size());
    detail::DiscreteProblem pr;
    pr.B.resize(rows, n + 1);
    pr.P.resize(rows, n + 1);
    pr.b.resize(rows);
    pr.lambda = lambda;
    std::vector<double> inv_norm(n + 1);
    for (int k = 0; k <= n; ++k)
        inv_norm[k] = 1.0 / std::sqrt(jacobi_norm_sq(k, basis));
    std::vector<double> vals(n + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        jacobi_eval_all(n, basis, xs[i], vals);
        for (int k = 0; k <= n; ++k) {
            const double phi = scale[i] * vals[k] * inv_norm[k];
            pr.B(i, k) = phi;
            pr.P(i, k) = sl_eigenvalue(k, {mu, mu}) * phi;
        }
        const double fx = f(xs[i]);
        if (!std::isfinite(fx)) {
            std::ostringstream msg;
            msg << "k_functional: non-finite function value at x=" << xs[i];
            throw NumericError(msg.str());
        }
        pr.b[i] = scale[i] * fx;
    }

    detail::IrlsOptions opts;
    opts.p = p;
    opts.max_iterations = cfg.max_iterations;
    // the sup stages stop at a relative 1e-7: finer changes are below the
    // error of the large-p surrogate for the max norm
    opts.tolerance = space.p.is_infinite() ? std::max(cfg.tolerance, 1e-7) : cfg.tolerance;
    const detail::IrlsResult sol = detail::irls_minimize(pr, opts);
    out.iterations = sol.iterations;

    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k)
        c[k] = sol.coeffs[k] * inv_norm[k];
    const PolynomialCoeffs g(basis, std::move(c));
    const double value = weighted_distance(f, FunctionHandle::polynomial(g), space.p, space.alpha, cfg.resolution) +
                         lambda * penalty_value(g, space, cfg.resolution);
    if (!std::isfinite(value))
        throw NumericError("k_functional: solver produced a non-finite value");
    if (value < out.value) {
        out.value = value;
        out.coeffs = g;
        out.candidate = "irls";
    }
    return out;
}

std::vector<EquivalenceRow> equivalence_ratio(const FunctionHandle& f, const std::vector<double>& deltas,
                                              const SpaceParams& space, const ModulusConfig& mcfg,
                                              const KFunctionalConfig& kcfg)
{
    require_admissible(space, "equivalence_ratio");
    for (double d : deltas) {
        if (!(d > 0.0 && d < std::numbers::pi))
            throw DomainError("equivalence_ratio: every delta must lie in (0, pi)");
    }
    const double zero = 1e-10 * std::max(1.0, weighted_norm(f, space.p, space.alpha, mcfg.resolution));
    std::vector<EquivalenceRow> rows;
    for (double d : deltas) {
        EquivalenceRow r;
        r.delta = d;
        r.omega = modulus(f, d, space, mcfg).value;
        r.k_value = k_functional(f, d, space, kcfg).value;
        const bool om0 = r.omega <= zero;
        const bool k0 = r.k_value <= zero;
        if (om0 && k0) {
            r.rho = 1.0;
        } else if (k0) {
            r.rho = std::numeric_limits<double>::infinity();
            r.inconsistent = true;
        } else {
            r.rho = r.omega / r.k_value;
        }
        r.rho_weighted = r.rho * std::pow(std::cos(d / 2.0), 2.0 * space.mu);
        rows.push_back(r);
    }
    return rows;
}

} // namespace gtrans
