#include "gtrans/weighted_lp.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace gtrans {

Exponent Exponent::finite(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw DomainError("exponent p must be a finite number >= 1 (use Exponent::infinity())");
    Exponent e;
    e.infinite_ = false;
    e.value_ = p;
    return e;
}

Exponent Exponent::parse(const std::string& text)
{
    if (text == "inf" || text == "infinity" || text == "Inf")
        return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError("cannot parse exponent '" + text + "'");
    }
    if (used != text.size())
        throw DomainError("cannot parse exponent '" + text + "'");
    return finite(v);
}

std::string Exponent::to_string() const
{
    if (infinite_)
        return "inf";
    std::ostringstream out;
    out << value_;
    return out.str();
}

Admissibility check_admissible(const SpaceParams& space)
{
    std::ostringstream diag;
    if (!(space.mu >= 0.0)) {
        diag << "mu must be >= 0 (got " << space.mu << ")";
        return {false, diag.str()};
    }
    const double d = space.alpha - space.mu / 2.0;
    double lower = 0.0;
    double upper = 0.0;
    bool lower_closed = false;
    bool upper_closed = false;
    if (space.p.is_infinite()) {
        lower = 0.0;
        lower_closed = true;
        upper = 0.5;
    } else if (space.p.value() == 1.0) {
        lower = -0.5;
        upper = 0.0;
        upper_closed = true;
    } else {
        const double p = space.p.value();
        lower = -1.0 / (2.0 * p);
        upper = 0.5 - 1.0 / (2.0 * p);
    }
    const bool lower_ok = lower_closed ? d >= lower : d > lower;
    const bool upper_ok = upper_closed ? d <= upper : d < upper;
    diag << "p=" << space.p.to_string() << ", alpha-mu/2=" << d;
    if (!lower_ok) {
        diag << " violates lower bound " << (lower_closed ? ">= " : "> ") << lower;
        return {false, diag.str()};
    }
    if (!upper_ok) {
        diag << " violates upper bound " << (upper_closed ? "<= " : "< ") << upper;
        return {false, diag.str()};
    }
    diag << " within window";
    return {true, diag.str()};
}

namespace detail {

// The weight's endpoint singularity is absorbed by a one-sided Gauss-Jacobi
// rule on the outer panels; inner panels evaluate it.
QuadratureRule weighted_composite_rule(const std::vector<double>& edges, double e, int per_panel)
{
    QuadratureRule out;
    out.basis = {e, e};
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double lo = edges[k], hi = edges[k + 1];
        if (!(hi > lo))
            continue;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        const bool left = lo == -1.0;
        const bool right = hi == 1.0;
        // (1-x) = half (1-s) on a right panel, (1+x) = half (1+s) on a left panel
        const QuadratureRule& rule = gauss_jacobi_rule(per_panel, {right ? e : 0.0, left ? e : 0.0});
        const double scale = half * std::pow(half, (left ? e : 0.0) + (right ? e : 0.0));
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double x = mid + half * rule.nodes[i];
            double w = rule.weights[i] * scale;
            if (!right)
                w *= std::pow(1.0 - x, e);
            if (!left)
                w *= std::pow(1.0 + x, e);
            out.nodes.push_back(x);
            out.weights.push_back(w);
        }
    }
    return out;
}


double abs_pow(double v, double p)
{
    const double a = std::abs(v);
    if (a == 0.0)
        return 0.0;
    if (p == 1.0)
        return a;
    if (p == 2.0)
        return a * a;
    return std::exp(p * std::log(a));
}

std::vector<double> chebyshev_grid(int n)
{
    if (n < 2)
        throw DomainError("chebyshev_grid needs at least two points");
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k)
        x[k] = -std::cos(std::numbers::pi * k / (n - 1));
    x.front() = -1.0;
    x.back() = 1.0;
    if (n % 2 == 1)
        x[n / 2] = 0.0;
    return x;
}

namespace {

void check_finite(double v, double x)
{
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite function value at x=" << x;
        throw NumericError(msg.str());
    }
}

double weight_pow(double x, double alpha)
{
    if (alpha == 0.0)
        return 1.0;
    const double base = (1.0 - x) * (1.0 + x);
    if (base <= 0.0)
        return alpha > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(base, alpha);
}

} // namespace

NormEstimate weighted_sup(const std::function<double(double)>& f, double alpha, int grid, int refine)
{
    if (alpha < 0.0)
        throw DomainError("sup norm requires alpha >= 0");
    const std::vector<double> xs = chebyshev_grid(grid);
    auto g = [&](double x) {
        const double w = weight_pow(x, alpha);
        if (w == 0.0)
            return 0.0;
        const double v = f(x);
        check_finite(v, x);
        return std::abs(v) * w;
    };
    std::vector<double> vals(xs.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        vals[i] = g(xs[i]);
        if (vals[i] > vals[best])
            best = i;
    }
    double best_x = xs[best];
    double best_v = vals[best];

    // Golden-section search on the bracket spanned by the argmax's neighbours.
    double lo = xs[best == 0 ? 0 : best - 1];
    double hi = xs[best + 1 == xs.size() ? best : best + 1];
    if (refine > 0 && hi > lo) {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        double fc = g(c);
        double fd = g(d);
        for (int it = 0; it < refine; ++it) {
            if (fc > best_v) {
                best_v = fc;
                best_x = c;
            }
            if (fd > best_v) {
                best_v = fd;
                best_x = d;
            }
            if (fc >= fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = g(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = g(d);
            }
        }
        if (fc > best_v) {
            best_v = fc;
            best_x = c;
        }
        if (fd > best_v) {
            best_v = fd;
            best_x = d;
        }
    }
    return {best_v, 0.0, best_x};
}

} // namespace detail

namespace {

double checked_eval(const FunctionHandle& f, double x)
{
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite function value at x=" << x;
        throw NumericError(msg.str());
    }
    return v;
}

double finite_norm(const FunctionHandle& f, double p, double alpha, int nodes)
{
    const double e = alpha * p;
    if (!(e > -1.0))
        throw DomainError("weighted norm requires alpha*p > -1 for finite p");
    std::vector<double> edges{-1.0};
    for (double b : f.breakpoints())
        if (b > -1.0 && b < 1.0 && b > edges.back())
            edges.push_back(b);
    edges.push_back(1.0);

    double sum = 0.0;
    if (edges.size() == 2) {
        const QuadratureRule& rule = gauss_jacobi_rule(nodes, {e, e});
        for (std::size_t i = 0; i < rule.size(); ++i)
            sum += rule.weights[i] * detail::abs_pow(checked_eval(f, rule.nodes[i]), p);
    } else {
        const int panels = static_cast<int>(edges.size()) - 1;
        const QuadratureRule rule = detail::weighted_composite_rule(edges, e, std::max(8, nodes / panels));
        for (std::size_t i = 0; i < rule.size(); ++i)
            sum += rule.weights[i] * detail::abs_pow(checked_eval(f, rule.nodes[i]), p);
    }
    return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

NormEstimate norm_at(const FunctionHandle& f, Exponent p, double alpha, const NormResolution& res)
{
    if (p.is_infinite())
        return detail::weighted_sup([&f](double x) { return f(x); }, alpha, res.sup_grid, res.refine_iterations);
    return {finite_norm(f, p.value(), alpha, res.quadrature_nodes), 0.0, 0.0};
}

} // namespace

double weighted_norm(const FunctionHandle& f, Exponent p, double alpha, const NormResolution& res)
{
    return norm_at(f, p, alpha, res).value;
}

NormEstimate weighted_norm_estimate(const FunctionHandle& f, Exponent p, double alpha, const NormResolution& res)
{
    NormEstimate full = norm_at(f, p, alpha, res);
    NormResolution half = res;
    half.quadrature_nodes = std::max(2, res.quadrature_nodes / 2);
    half.sup_grid = std::max(3, res.sup_grid / 2 + 1);
    full.error_estimate = std::abs(full.value - norm_at(f, p, alpha, half).value);
    return full;
}

double weighted_distance(const FunctionHandle& f, const FunctionHandle& g, Exponent p, double alpha,
                         const NormResolution& res)
{
    return weighted_norm(difference(f, g), p, alpha, res);
}

} // namespace gtrans
