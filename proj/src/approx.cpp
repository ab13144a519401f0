#include "gtrans/approx.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"
#include "gtrans/spectral.hpp"
#include "irls.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gtrans {

namespace {

constexpr double kPi = std::numbers::pi;

void require_admissible(const SpaceParams& space, const char* who)
{
    const Admissibility a = check_admissible(space);
    if (!a.admissible)
        throw DomainError(std::string(who) + ": space not admissible: " + a.diagnostic);
}

double weight_at(double x, double alpha)
{
    if (alpha == 0.0)
        return 1.0;
    return std::pow(std::max(0.0, (1.0 - x) * (1.0 + x)), alpha);
}

// T_0(x) .. T_{n-1}(x)
void chebyshev_all(int n, double x, double* out)
{
    if (n <= 0)
        return;
    out[0] = 1.0;
    if (n > 1)
        out[1] = x;
    for (int k = 2; k < n; ++k)
        out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

double chebyshev_sum(const std::vector<double>& c, double x)
{
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
        const double b0 = c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return (c.empty() ? 0.0 : c[0]) + x * b1 - b2;
}

double checked(const FunctionHandle& f, double x, const char* who)
{
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << who << ": non-finite function value at x=" << x;
        throw NumericError(msg.str());
    }
    return v;
}

PolynomialCoeffs to_jacobi(const std::vector<double>& cheb, double mu)
{
    const int deg = std::max(0, static_cast<int>(cheb.size()) - 1);
    const FunctionHandle h([cheb](double x) { return chebyshev_sum(cheb, x); });
    return project(h, deg, {mu, mu}, deg + 2);
}

// Chebyshev coefficients of a polynomial handle, by interpolation at
// Chebyshev points of the first kind.
std::vector<double> to_chebyshev(const PolynomialCoeffs& p, int n)
{
    std::vector<double> c(n, 0.0);
    const int m = std::max(n, p.degree() + 1);
    for (int j = 0; j < m; ++j) {
        const double th = kPi * (j + 0.5) / m;
        const double v = p(std::cos(th));
        for (int k = 0; k < n; ++k)
            c[k] += v * std::cos(k * th);
    }
    for (int k = 0; k < n; ++k)
        c[k] *= (k == 0 ? 1.0 : 2.0) / m;
    return c;
}

struct Internal {
    BestApproxResult result;
    std::vector<double> cheb; ///< approximant in the Chebyshev basis
};

// ---- p = inf --------------------------------------------------------------

struct RemezProblem {
    const FunctionHandle& f;
    double alpha;
    int n;
    std::vector<double> xs;
    std::vector<double> fx;
    std::vector<double> wx;

    double error(const std::vector<double>& c, double x) const
    {
        return (checked(f, x, "best_approx") - chebyshev_sum(c, x)) * weight_at(x, alpha);
    }
};

RemezProblem make_remez_problem(const FunctionHandle& f, double alpha, int n, int grid)
{
    RemezProblem pr{f, alpha, n, {}, {}, {}};
    // first-kind Chebyshev points stay off the ends, where a positive weight vanishes
    for (int j = 0; j < grid; ++j)
        pr.xs.push_back(-std::cos(kPi * (j + 0.5) / grid));
    if (alpha == 0.0) {
        pr.xs.push_back(-1.0);
        pr.xs.push_back(1.0);
    }
    for (double b : f.breakpoints()) {
        if (b > -1.0 && b < 1.0)
            pr.xs.push_back(b);
    }
    std::sort(pr.xs.begin(), pr.xs.end());
    pr.xs.erase(std::unique(pr.xs.begin(), pr.xs.end()), pr.xs.end());
    for (double x : pr.xs) {
        pr.fx.push_back(checked(f, x, "best_approx"));
        pr.wx.push_back(weight_at(x, alpha));
    }
    return pr;
}

// Levelled solve on a reference: sum c_k T_k(x_i) + (-1)^i h / w(x_i) = f(x_i).
bool levelled_solve(const RemezProblem& pr, const std::vector<double>& ref, std::vector<double>& c, double& h)
{
    const int n = pr.n;
    Eigen::MatrixXd A(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    std::vector<double> row(n);
    for (int i = 0; i <= n; ++i) {
        chebyshev_all(n, ref[i], row.data());
        for (int k = 0; k < n; ++k)
            A(i, k) = row[k];
        const double w = weight_at(ref[i], pr.alpha);
        if (!(w > 0.0))
            return false;
        A(i, n) = (i % 2 == 0 ? 1.0 : -1.0) / w;
        rhs[i] = checked(pr.f, ref[i], "best_approx");
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite())
        return false;
    c.assign(sol.data(), sol.data() + n);
    h = sol[n];
    return true;
}

struct Extremum {
    double x;
    double e;
};

// One extremum per sign run of the grid error, reduced to n+1 alternating
// points without dropping the largest one.
std::vector<Extremum> alternating_extrema(const RemezProblem& pr, const std::vector<double>& c)
{
    std::vector<Extremum> runs;
    for (std::size_t j = 0; j < pr.xs.size(); ++j) {
        const double e = (pr.fx[j] - chebyshev_sum(c, pr.xs[j])) * pr.wx[j];
        if (e == 0.0)
            continue;
        if (!runs.empty() && (runs.back().e > 0.0) == (e > 0.0)) {
            if (std::abs(e) > std::abs(runs.back().e))
                runs.back() = {pr.xs[j], e};
        } else {
            runs.push_back({pr.xs[j], e});
        }
    }
    const std::size_t want = static_cast<std::size_t>(pr.n) + 1;
    while (runs.size() > want) {
        if (runs.size() == want + 1) {
            if (std::abs(runs.front().e) < std::abs(runs.back().e))
                runs.erase(runs.begin());
            else
                runs.pop_back();
            continue;
        }
        std::size_t j = 0;
        for (std::size_t i = 1; i < runs.size(); ++i) {
            if (std::abs(runs[i].e) < std::abs(runs[j].e))
                j = i;
        }
        if (j == 0 || j + 1 == runs.size()) {
            runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
            // dropping j merges two runs of the same sign; keep the larger
            const std::size_t drop = std::abs(runs[j - 1].e) < std::abs(runs[j + 1].e) ? j - 1 : j + 1;
            const std::size_t lo = std::min(j, drop);
            runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(lo),
                       runs.begin() + static_cast<std::ptrdiff_t>(lo) + 2);
        }
    }
    return runs;
}

// Golden-section search for the extremum of sign s*e near a grid point.
Extremum refine_extremum(const RemezProblem& pr, const std::vector<double>& c, const Extremum& at)
{
    const auto it = std::lower_bound(pr.xs.begin(), pr.xs.end(), at.x);
    const std::size_t j = static_cast<std::size_t>(it - pr.xs.begin());
    double lo = j == 0 ? (pr.alpha == 0.0 ? -1.0 : pr.xs[0] * 0.5 - 0.5) : pr.xs[j - 1];
    double hi = j + 1 >= pr.xs.size() ? (pr.alpha == 0.0 ? 1.0 : pr.xs.back() * 0.5 + 0.5) : pr.xs[j + 1];
    const double s = at.e > 0.0 ? 1.0 : -1.0;
    auto g = [&](double x) { return s * pr.error(c, x); };
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    Extremum best = at;
    for (int it2 = 0; it2 < 60 && hi - lo > 1e-15; ++it2) {
        if (g1 >= g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - r * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + r * (hi - lo);
            g2 = g(x2);
        }
    }
    for (const auto& [x, v] : {std::pair{x1, g1}, std::pair{x2, g2}}) {
        if (v > s * best.e)
            best = {x, s * v};
    }
    return best;
}

bool remez(const FunctionHandle& f, int n, double alpha, const BestApproxConfig& cfg, Internal& out)
{
    const int grid = cfg.grid > 0 ? cfg.grid : std::max(2001, 40 * n);
    const RemezProblem pr = make_remez_problem(f, alpha, n, grid);
    double scale = 0.0;
    for (std::size_t j = 0; j < pr.xs.size(); ++j)
        scale = std::max(scale, std::abs(pr.fx[j]) * pr.wx[j]);

    std::vector<double> ref;
    for (int i = 0; i <= n; ++i)
        ref.push_back(-std::cos(kPi * (i + 0.5) / (n + 1)));

    std::vector<double> c(n, 0.0);
    for (int it = 0; it < cfg.max_exchanges; ++it) {
        double h = 0.0;
        if (!levelled_solve(pr, ref, c, h))
            return false;
        std::vector<Extremum> ext = alternating_extrema(pr, c);
        double grid_max = 0.0;
        for (std::size_t j = 0; j < pr.xs.size(); ++j)
            grid_max = std::max(grid_max, std::abs((pr.fx[j] - chebyshev_sum(c, pr.xs[j])) * pr.wx[j]));
        if (grid_max <= 1e-14 * std::max(1.0, scale)) {
            out.cheb = c;
            out.result.value = grid_max;
            out.result.method = "remez";
            return true;
        }
        if (ext.size() < static_cast<std::size_t>(n) + 1)
            return false;
        for (auto& e : ext)
            e = refine_extremum(pr, c, e);
        bool ordered = true;
        for (std::size_t i = 1; i < ext.size(); ++i)
            ordered = ordered && ext[i].x > ext[i - 1].x;
        if (!ordered)
            return false;
        double lo = std::abs(ext[0].e), hi = grid_max;
        for (const auto& e : ext) {
            lo = std::min(lo, std::abs(e.e));
            hi = std::max(hi, std::abs(e.e));
        }
        for (std::size_t i = 0; i < ext.size(); ++i)
            ref[i] = ext[i].x;
        if (hi - lo <= cfg.level_tol * hi) {
            out.cheb = c;
            out.result.value = hi;
            out.result.error_estimate = hi - lo;
            out.result.method = "remez";
            out.result.alternation = ref;
            return true;
        }
    }
    return false;
}

void irls_sup_fallback(const FunctionHandle& f, int n, double alpha, const BestApproxConfig& cfg, Internal& out)
{
    const int grid = cfg.grid > 0 ? cfg.grid : std::max(2001, 40 * n);
    const RemezProblem pr = make_remez_problem(f, alpha, n, grid);
    detail::DiscreteProblem dp;
    const Eigen::Index rows = static_cast<Eigen::Index>(pr.xs.size());
    dp.B.resize(rows, n);
    dp.b.resize(rows);
    std::vector<double> row(n);
    for (Eigen::Index i = 0; i < rows; ++i) {
        chebyshev_all(n, pr.xs[i], row.data());
        for (int k = 0; k < n; ++k)
            dp.B(i, k) = pr.wx[i] * row[k];
        dp.b[i] = pr.wx[i] * pr.fx[i];
    }
    detail::IrlsOptions opts;
    opts.p = std::numeric_limits<double>::infinity();
    opts.max_iterations = cfg.max_iterations;
    opts.tolerance = std::max(cfg.tolerance, 1e-7);
    const detail::IrlsResult sol = detail::irls_minimize(dp, opts);
    out.cheb.assign(sol.coeffs.data(), sol.coeffs.data() + n);
    out.result.residuals = sol.history;
    out.result.method = "irls";
    out.result.warnings.push_back("remez exchange did not converge; grid convex solve used");
}

// ---- p < inf ---------------------------------------------------------------

// Sign changes of f - P on a Chebyshev grid, located by bisection, merged
// with the breakpoints of f: the residual is smooth between these points.
std::vector<double> residual_edges(const FunctionHandle& f, const std::vector<double>& cheb)
{
    const int grid = std::max(512, 8 * static_cast<int>(cheb.size()));
    std::vector<double> xs = detail::chebyshev_grid(grid);
    for (double b : f.breakpoints())
        if (b > -1.0 && b < 1.0)
            xs.push_back(b);
    std::sort(xs.begin(), xs.end());
    auto r = [&](double x) { return checked(f, x, "best_approx") - chebyshev_sum(cheb, x); };
    std::vector<double> edges{-1.0};
    double x0 = xs[0], r0 = r(x0);
    for (std::size_t j = 1; j < xs.size(); ++j) {
        const double x1 = xs[j], r1 = r(x1);
        if ((r0 < 0.0 && r1 > 0.0) || (r0 > 0.0 && r1 < 0.0)) {
            double lo = x0, hi = x1, rl = r0;
            for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double rm = r(mid);
                if ((rm < 0.0) == (rl < 0.0)) {
                    lo = mid;
                    rl = rm;
                } else {
                    hi = mid;
                }
            }
            edges.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        r0 = r1;
    }
    for (double b : f.breakpoints())
        if (b > -1.0 && b < 1.0)
            edges.push_back(b);
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(), [](double u, double v) { return v - u <= 1e-14; }),
                edges.end());
    edges.back() = 1.0;
    return edges;
}

// IRLS on a fixed rule. The first rule is Gauss-Jacobi; later rounds split
// the interval where the residual changes sign (|r|^p has a kink there) and
// re-solve warm-started, until the objective settles.
void irls_finite(const FunctionHandle& f, int n, const SpaceParams& space, const BestApproxConfig& cfg,
                 const std::vector<double>* warm, Internal& out)
{
    const double p = space.p.value();
    const double e = space.alpha * p;
    const int m = cfg.quadrature_nodes > 0 ? cfg.quadrature_nodes : std::max(256, 3 * n);
    QuadratureRule rule = gauss_jacobi_rule(m, {e, e});

    detail::IrlsOptions opts;
    opts.p = p;
    opts.max_iterations = cfg.max_iterations;
    opts.tolerance = cfg.tolerance;
    opts.weight_floor = cfg.weight_floor;
    Eigen::VectorXd start;
    bool have_start = false;
    if (warm) {
        start = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < n && k < static_cast<int>(warm->size()); ++k)
            start[k] = (*warm)[k];
        have_start = true;
    }
    double previous = std::numeric_limits<double>::infinity();
    std::vector<double> row(n);
    for (int round = 0; round < 4; ++round) {
        detail::DiscreteProblem dp;
        const Eigen::Index rows = static_cast<Eigen::Index>(rule.size());
        dp.B.resize(rows, n);
        dp.b.resize(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double s = std::pow(rule.weights[i], 1.0 / p);
            chebyshev_all(n, rule.nodes[i], row.data());
            for (int k = 0; k < n; ++k)
                dp.B(i, k) = s * row[k];
            dp.b[i] = s * checked(f, rule.nodes[i], "best_approx");
        }
        const detail::IrlsResult sol = detail::irls_minimize(dp, opts, have_start ? &start : nullptr);
        if (!std::isfinite(sol.objective)) {
            std::ostringstream msg;
            msg << "best_approx: IRLS diverged; objective history:";
            for (double v : sol.history)
                msg << ' ' << v;
            throw NumericError(msg.str());
        }
        start = sol.coeffs;
        have_start = true;
        out.cheb.assign(sol.coeffs.data(), sol.coeffs.data() + n);
        out.result.residuals.insert(out.result.residuals.end(), sol.history.begin(), sol.history.end());
        if (std::abs(previous - sol.objective) <= 1e-12 * sol.objective)
            break;
        previous = sol.objective;
        const std::vector<double> edges = residual_edges(f, out.cheb);
        if (edges.size() == 2)
            break;
        const int panels = static_cast<int>(edges.size()) - 1;
        rule = detail::weighted_composite_rule(edges, e, std::max(12, 2 * m / panels));
    }
    out.result.method = "irls";
}

Internal best_approx_impl(const FunctionHandle& f, int n, const SpaceParams& space, const BestApproxConfig& cfg,
                          const std::vector<double>* warm)
{
    require_admissible(space, "best_approx");
    if (n < 1)
        throw DomainError("best_approx: n must be >= 1");
    const double mu = space.mu;
    Internal out;
    out.result.n = n;

    if (const auto& poly = f.polynomial(); poly && poly->degree() <= n - 1) {
        out.result.method = "exact";
        out.result.coeffs = poly->basis() == JacobiBasis{mu, mu}
                                ? *poly
                                : project(f, std::max(poly->degree(), 0), {mu, mu}, poly->degree() + 2);
        out.cheb = to_chebyshev(*poly, n);
        return out;
    }

    if (space.p.is_infinite()) {
        if (!remez(f, n, space.alpha, cfg, out))
            irls_sup_fallback(f, n, space.alpha, cfg, out);
    } else {
        irls_finite(f, n, space, cfg, warm, out);
    }
    out.result.coeffs = to_jacobi(out.cheb, mu);

    // honest re-measurement; for p = inf keep the larger of it and the Remez level
    const FunctionHandle approx = FunctionHandle::polynomial(out.result.coeffs);
    FunctionHandle residual = difference(f, approx);
    NormResolution res = cfg.resolution;
    if (!space.p.is_infinite()) {
        std::vector<double> edges = residual_edges(f, out.cheb);
        res.quadrature_nodes = std::max(res.quadrature_nodes, 32 * static_cast<int>(edges.size()));
        residual = residual.with_breakpoints(std::vector<double>(edges.begin() + 1, edges.end() - 1));
    }
    const NormEstimate est = weighted_norm_estimate(residual, space.p, space.alpha, res);
    if (space.p.is_infinite()) {
        out.result.value = std::max(out.result.value, est.value);
    } else {
        out.result.value = est.value;
        out.result.error_estimate = est.error_estimate;
    }
    const double f_norm = weighted_norm(f, space.p, space.alpha, cfg.resolution);
    if (f_norm < out.result.value) {
        out.result.value = f_norm;
        out.result.coeffs = PolynomialCoeffs({mu, mu}, {0.0});
        out.result.method = "zero";
        out.result.alternation.clear();
        out.cheb.assign(n, 0.0);
    }
    if (!std::isfinite(out.result.value))
        throw NumericError("best_approx: non-finite error");
    return out;
}

} // namespace

BestApproxResult best_approx(const FunctionHandle& f, int n, const SpaceParams& space, const BestApproxConfig& cfg)
{
    return best_approx_impl(f, n, space, cfg, nullptr).result;
}

BestApproxSequence best_approx_sequence(const FunctionHandle& f, int n_max, const SpaceParams& space,
                                        const BestApproxConfig& cfg)
{
    if (n_max < 1)
        throw DomainError("best_approx_sequence: n_max must be >= 1");
    BestApproxSequence seq;
    std::vector<double> warm;
    double weighted = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        Internal cur = best_approx_impl(f, n, space, cfg, warm.empty() ? nullptr : &warm);
        if (!seq.results.empty() && cur.result.value > seq.results.back().value) {
            // the previous approximant is admissible for n as well
            BestApproxResult prev = seq.results.back();
            prev.n = n;
            prev.warnings.push_back("kept the degree n-2 approximant: the solve for n was worse");
            cur.result = prev;
            cur.cheb = warm;
            cur.cheb.resize(n, 0.0);
        }
        warm = cur.cheb;
        weighted += n * cur.result.value;
        seq.values.push_back(cur.result.value);
        seq.weighted_sums.push_back(weighted / (static_cast<double>(n) * n));
        seq.results.push_back(std::move(cur.result));
    }
    return seq;
}

// ---- Jackson operator -----------------------------------------------------

double JacksonSpec::kernel(double t) const
{
    const double s = std::sin(0.5 * t);
    if (s == 0.0)
        return 0.0;
    const double dirichlet = std::sin(0.5 * m * t) / s;
    return std::pow(dirichlet, exponent) * std::pow(std::sin(t), 2.0 * mu + 1.0);
}

namespace {

// Composite Gauss-Legendre over [0, pi] on the given edges, doubling the nodes
// per panel until the total settles.
template <class G>
double t_integral(G&& g, const std::vector<double>& edges, const JacksonConfig& cfg, const char* who,
                  double floor = 0.0)
{
    // the stopping test is relative to int |g|, so cancelling integrals settle
    double scale = 0.0;
    auto rule_sum = [&](int m) {
        double sum = 0.0;
        scale = 0.0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            if (!(edges[p + 1] > edges[p]))
                continue;
            const QuadratureRule r = gauss_legendre_on(m, edges[p], edges[p + 1]);
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double v = r.weights[i] * g(r.nodes[i]);
                sum += v;
                scale += std::abs(v);
            }
        }
        return sum;
    };
    int m = cfg.panel_nodes;
    double value = rule_sum(m);
    for (int level = 0; level < cfg.max_doublings; ++level) {
        m *= 2;
        const double next = rule_sum(m);
        if (std::abs(next - value) <= cfg.tolerance * std::max({scale, floor, 1e-300}))
            return next;
        value = next;
    }
    std::ostringstream msg;
    msg << who << ": t-quadrature did not settle at " << m << " nodes per panel (last value " << value << ")";
    throw NumericError(msg.str());
}

std::vector<double> uniform_edges(int m)
{
    const int panels = std::max(4, 2 * m);
    std::vector<double> e;
    for (int i = 0; i <= panels; ++i)
        e.push_back(kPi * i / panels);
    return e;
}

// t where the range of R over z reaches a breakpoint of f: T_{cos t} f(x) is
// not smooth in t there.
std::vector<double> kink_edges(const JacksonSpec& spec, const FunctionHandle& f, double x)
{
    std::vector<double> e = uniform_edges(spec.m);
    const double tx = std::acos(std::clamp(x, -1.0, 1.0));
    for (double b : f.breakpoints()) {
        const double tb = std::acos(std::clamp(b, -1.0, 1.0));
        for (double t : {std::abs(tb - tx), tb + tx, 2.0 * kPi - tb - tx}) {
            if (t > 0.0 && t < kPi)
                e.push_back(t);
        }
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

} // namespace

JacksonSpec make_jackson_spec(int n, double mu)
{
    if (n < 1)
        throw DomainError("make_jackson_spec: n must be >= 1");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw DomainError("make_jackson_spec: mu must be >= 0");
    JacksonSpec s;
    s.n = n;
    s.mu = mu;
    s.q = static_cast<int>(std::floor(mu)) + 1;
    s.m = (n - 1) / (s.q + 2) + 1;
    s.exponent = 2 * (s.q + 2);
    s.gamma = t_integral([&s](double t) { return s.kernel(t); }, uniform_edges(s.m), JacksonConfig{}, "make_jackson_spec");
    if (!(s.gamma > 0.0) || !std::isfinite(s.gamma))
        throw NumericError("make_jackson_spec: kernel normalizer is not positive");
    return s;
}

double jackson_multiplier(const JacksonSpec& spec, int k, const JacksonConfig& cfg)
{
    const JacobiBasis basis{spec.mu, spec.mu};
    return t_integral([&](double t) { return jacobi_eval(k, basis, std::cos(t)) * spec.kernel(t); },
                      uniform_edges(spec.m), cfg, "jackson_multiplier") /
           spec.gamma;
}

JacksonResult jackson_operator(const FunctionHandle& f, const JacksonSpec& spec, const JacksonConfig& cfg)
{
    if (spec.m < 1 || spec.gamma <= 0.0 || spec.degree_bound() > spec.n - 1)
        throw ContractError("jackson_operator: inconsistent JacksonSpec");
    const int n = spec.n;
    const double mu = spec.mu;
    const JacobiBasis basis{mu, mu};
    const int nodes = n + 8;
    const int top = n + 7;
    const QuadratureRule& rule = gauss_jacobi_rule(nodes, basis);

    std::vector<double> c(top + 1, 0.0);
    std::vector<double> vals(top + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        const double q = t_integral(
                             [&](double t) {
                                 const double k = spec.kernel(t);
                                 return k == 0.0 ? 0.0 : sym_translate(f, std::cos(t), mu, x, cfg.translation) * k;
                             },
                             kink_edges(spec, f, x), cfg, "jackson_operator", 1e-3 * spec.gamma) /
                         spec.gamma;
        jacobi_eval_all(top, basis, x, vals);
        for (int k = 0; k <= top; ++k)
            c[k] += rule.weights[i] * q * vals[k];
    }
    double total = 0.0, above = 0.0;
    for (int k = 0; k <= top; ++k) {
        const double h = jacobi_norm_sq(k, basis);
        c[k] /= h;
        const double mass = c[k] * c[k] * h;
        total += mass;
        if (k >= n)
            above += mass;
    }
    JacksonResult out;
    out.above_degree_mass = total > 0.0 ? std::sqrt(above / total) : 0.0;
    if (out.above_degree_mass > cfg.mass_limit) {
        std::ostringstream msg;
        msg << "jackson_operator: coefficients beyond degree " << n - 1 << " carry relative mass "
            << out.above_degree_mass << " (limit " << cfg.mass_limit << ")";
        throw NumericError(msg.str());
    }
    c.resize(n);
    out.coeffs = PolynomialCoeffs(basis, std::move(c));
    return out;
}

// ---- Markov-Bernstein -----------------------------------------------------

MarkovBernsteinRatios markov_bernstein_check(const PolynomialCoeffs& P, Exponent p, double alpha, double rho,
                                             const NormResolution& res)
{
    const bool ok = p.is_infinite() ? alpha >= 0.0 : alpha > -1.0 / p.value();
    if (!ok) {
        std::ostringstream msg;
        msg << "markov_bernstein_check: alpha=" << alpha << " outside the window for p=" << p.to_string();
        throw DomainError(msg.str());
    }
    if (!(rho >= 0.0))
        throw DomainError("markov_bernstein_check: rho must be >= 0");
    const bool zero = std::all_of(P.coeffs().begin(), P.coeffs().end(), [](double v) { return v == 0.0; });
    if (zero)
        throw ContractError("markov_bernstein_check: zero polynomial");

    MarkovBernsteinRatios out;
    out.n = std::max(P.degree(), 0) + 1;
    const FunctionHandle ph = FunctionHandle::polynomial(P);
    const double norm = weighted_norm(ph, p, alpha, res);
    if (!(norm > 0.0))
        throw ContractError("markov_bernstein_check: polynomial has zero norm");
    const double d_norm =
        P.degree() == 0 ? 0.0 : weighted_norm(FunctionHandle::polynomial(P.derivative_coeffs()), p, alpha + 0.5, res);
    out.r1 = d_norm / (out.n * norm);
    out.r2 = rho == 0.0 ? 1.0 : norm / (std::pow(out.n, 2.0 * rho) * weighted_norm(ph, p, alpha + rho, res));
    return out;
}

} // namespace gtrans
