#include "gtrans/verify.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"
#include "gtrans/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace gtrans {

namespace {

constexpr double kPi = std::numbers::pi;

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v)
{
    std::ostringstream o;
    o << v;
    return o.str();
}

VerificationReport identity_report(std::string name, std::string grid, double dev, double tol, bool control = false)
{
    VerificationReport r;
    r.name = std::move(name);
    r.kind = "identity";
    r.grid = std::move(grid);
    r.max_deviation = dev;
    r.tolerance = tol;
    r.passed = std::isfinite(dev) && dev <= tol;
    r.control = control;
    return r;
}

FunctionHandle unit_poly(int n, double mu)
{
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    return FunctionHandle::polynomial(PolynomialCoeffs({mu, mu}, std::move(c)));
}

std::string grid_text(int nx, int nt, double t_max)
{
    return std::to_string(nx) + "x" + std::to_string(nt) + " (x Chebyshev-Gauss, |t| <= " + num(t_max) + ")";
}

// ---- identity suite pieces -----------------------------------------------

double normalization_deviation(double mu, const std::vector<double>& xs, const std::vector<double>& ts,
                               const TranslationConfig& tc)
{
    const FunctionHandle one = FunctionHandle::constant(1.0);
    double worst = 0.0;
    for (double x : xs)
        for (double t : ts)
            worst = std::max(worst, std::abs(asym_translate(one, t, mu, x, tc) - 1.0));
    return worst;
}

double eigen_deviation(double mu, int n_max, const std::vector<double>& xs, const std::vector<double>& ts,
                       const TranslationConfig& tc, int& worst_n)
{
    double worst = 0.0;
    worst_n = 0;
    for (int n = 0; n <= n_max; ++n) {
        const FunctionHandle rn = unit_poly(n, mu);
        for (double t : ts) {
            const double mult = jacobi_eval(n, {0.0, 2.0 * mu}, std::cos(t));
            for (double x : xs) {
                const double dev = std::abs(asym_translate(rn, t, mu, x, tc) - rn(x) * mult);
                if (!(dev <= worst)) {
                    worst = dev;
                    worst_n = n;
                }
            }
        }
    }
    return worst;
}

double duality_deviation(double mu, const IdentitySuiteConfig& cfg, std::mt19937_64& rng)
{
    double worst = 0.0;
    for (int k = 0; k < cfg.duality_pairs; ++k) {
        const int df = 1 + static_cast<int>(rng() % static_cast<unsigned>(cfg.duality_degree));
        const int dg = 1 + static_cast<int>(rng() % static_cast<unsigned>(cfg.duality_degree));
        const FunctionHandle f = FunctionHandle::polynomial(random_polynomial(df, mu, rng));
        const FunctionHandle g = FunctionHandle::polynomial(random_polynomial(dg, mu, rng));
        for (double y : {-0.6, 0.1, 0.7}) {
            const auto [l, r] = duality_check(f, g, y, mu, cfg.translation, cfg.duality_degree + 12);
            if (!(std::abs(l - r) <= worst))
                worst = std::abs(l - r);
        }
    }
    return worst;
}

double transport_deviation(double mu, const IdentitySuiteConfig& cfg, const std::vector<double>& ts,
                           std::mt19937_64& rng)
{
    const PolynomialCoeffs p = random_polynomial(cfg.transport_degree, mu, rng);
    const FunctionHandle f = FunctionHandle::polynomial(p);
    const QuadratureRule& rule = gauss_jacobi_rule(cfg.transport_degree + 8, {mu, mu});
    const int top = cfg.transport_degree + 2;
    std::vector<double> a(top + 1);
    for (int n = 0; n <= top; ++n)
        a[n] = fourier_jacobi_coeff(f, n, mu, rule);
    double worst = 0.0;
    // every fourth t of the grid keeps the cost at a few thousand translations
    for (std::size_t j = 0; j < ts.size(); j += 4) {
        const double t = ts[j];
        const FunctionHandle moved = asym_translated(f, t, mu, cfg.translation);
        for (int n = 0; n <= top; ++n) {
            const double dev =
                std::abs(fourier_jacobi_coeff(moved, n, mu, rule) - a[n] * jacobi_eval(n, {0.0, 2.0 * mu}, std::cos(t)));
            if (!(dev <= worst))
                worst = dev;
        }
    }
    return worst;
}

} // namespace

int exit_code(const std::vector<VerificationReport>& reports)
{
    for (const auto& r : reports)
        if (!r.as_expected())
            return 1;
    return 0;
}

std::vector<double> identity_x_grid(int n)
{
    std::vector<double> xs;
    for (int i = n - 1; i >= 0; --i)
        xs.push_back(std::cos((2.0 * i + 1.0) * kPi / (2.0 * n)));
    return xs;
}

std::vector<double> identity_t_grid(int n, double t_max)
{
    if (n == 1)
        return {0.0};
    std::vector<double> ts;
    for (int j = 0; j < n; ++j)
        ts.push_back(-t_max + 2.0 * t_max * j / (n - 1));
    return ts;
}

PolynomialCoeffs random_polynomial(int degree, double mu, std::mt19937_64& rng)
{
    if (degree < 0)
        throw DomainError("random_polynomial: degree must be >= 0");
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> c(degree + 1);
    for (double& v : c)
        v = nd(rng);
    if (c.back() == 0.0)
        c.back() = 1.0;
    return PolynomialCoeffs({mu, mu}, std::move(c));
}

std::vector<VerificationReport> verify_translation_identities(const IdentitySuiteConfig& cfg)
{
    std::vector<VerificationReport> out;
    const std::vector<double> xs = identity_x_grid(cfg.x_points);
    const std::vector<double> ts = identity_t_grid(cfg.t_points, cfg.t_max);
    const std::string grid = grid_text(cfg.x_points, cfg.t_points, cfg.t_max);
    std::mt19937_64 rng(cfg.seed);

    for (double mu : cfg.mus) {
        const std::string tag = " mu=" + num(mu);
        {
            Stopwatch sw;
            auto r = identity_report("normalization" + tag, grid, normalization_deviation(mu, xs, ts, cfg.translation),
                                     cfg.tol_normalization);
            r.detail = "max |tau_t(1,x) - 1|";
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
        }
        {
            Stopwatch sw;
            int worst_n = 0;
            const double dev = eigen_deviation(mu, cfg.n_max, xs, ts, cfg.translation, worst_n);
            auto r = identity_report("eigenfunction" + tag, grid + ", n <= " + std::to_string(cfg.n_max), dev,
                                     cfg.tol_eigen);
            r.detail = "max |tau_t R_n - R_n(x) R_n^(0,2mu)(cos t)|, worst n=" + std::to_string(worst_n);
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
        }
        {
            Stopwatch sw;
            auto r = identity_report("duality" + tag,
                                     std::to_string(cfg.duality_pairs) + " random pairs, degree <= " +
                                         std::to_string(cfg.duality_degree) + ", y in {-0.6, 0.1, 0.7}",
                                     duality_deviation(mu, cfg, rng), cfg.tol_duality);
            r.detail = "max |int f tau g w - int g tau f w|";
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
        }
        {
            Stopwatch sw;
            auto r = identity_report("transport" + tag,
                                     "random degree " + std::to_string(cfg.transport_degree) +
                                         ", every 4th t of the grid, n <= " + std::to_string(cfg.transport_degree + 2),
                                     transport_deviation(mu, cfg, ts, rng), cfg.tol_transport);
            r.detail = "max |a_n(tau_t f) - a_n(f) R_n^(0,2mu)(cos t)|";
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
        }
        {
            Stopwatch sw;
            const FunctionHandle f = FunctionHandle::polynomial(random_polynomial(6, mu, rng));
            double even = 0.0, zero = 0.0;
            for (double x : xs) {
                for (double t : ts) {
                    if (t > 0.0)
                        even = std::max(even, std::abs(asym_translate(f, t, mu, x, cfg.translation) -
                                                       asym_translate(f, -t, mu, x, cfg.translation)));
                }
                zero = std::max(zero, std::abs(asym_translate(f, 0.0, mu, x, cfg.translation) - f(x)));
            }
            auto r = identity_report("evenness" + tag, grid, even, cfg.tol_normalization);
            r.detail = "max |tau_t f - tau_{-t} f|, random degree 6";
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
            auto z = identity_report("identity_at_zero" + tag, std::to_string(cfg.x_points) + " x points", zero,
                                     cfg.tol_normalization);
            z.detail = "max |tau_0 f - f|, random degree 6";
            out.push_back(z);
        }
        {
            Stopwatch sw;
            double coeff_dev = 0.0, point_dev = 0.0, wrong_dev = 0.0;
            for (int n = 0; n <= cfg.n_max; ++n) {
                std::vector<double> c(n + 1, 0.0);
                c[n] = 1.0;
                const PolynomialCoeffs rn({mu, mu}, c);
                const PolynomialCoeffs d = sl_apply_coeffs(rn, {mu, mu});
                const double lam = -n * (n + 2.0 * mu + 1.0);
                const double wrong = -n * (n + 2.0 * mu);
                for (int k = 0; k <= n; ++k) {
                    const double dk = k < static_cast<int>(d.coeffs().size()) ? d.coeffs()[k] : 0.0;
                    coeff_dev = std::max(coeff_dev, std::abs(dk - (k == n ? lam : 0.0)));
                    wrong_dev = std::max(wrong_dev, std::abs(dk - (k == n ? wrong : 0.0)));
                }
                const FunctionHandle h = FunctionHandle::polynomial(rn);
                for (double x : xs)
                    point_dev = std::max(point_dev, std::abs(sl_apply_pointwise(h, {mu, mu}, x) - lam * rn(x)));
            }
            auto r = identity_report("eigenvalue_coeffs" + tag, "n <= " + std::to_string(cfg.n_max), coeff_dev,
                                     cfg.tol_eigenvalue_coeffs);
            r.detail = "D R_n = -n(n+2mu+1) R_n in coefficient space";
            r.runtime_seconds = sw.seconds();
            out.push_back(r);
            auto p = identity_report("eigenvalue_pointwise" + tag,
                                     "n <= " + std::to_string(cfg.n_max) + ", " + std::to_string(cfg.x_points) +
                                         " x points",
                                     point_dev, cfg.tol_eigenvalue_pointwise);
            p.detail = "D R_n(x) = -n(n+2mu+1) R_n(x)";
            out.push_back(p);
            if (cfg.include_controls && mu == cfg.mus.front()) {
                auto c = identity_report("control_wrong_eigenvalue" + tag, "n <= " + std::to_string(cfg.n_max),
                                         wrong_dev, cfg.tol_eigenvalue_coeffs, true);
                c.detail = "compares D R_n with -n(n+2mu) R_n; must fail";
                out.push_back(c);
            }
        }
    }

    // closed forms for mu = 1
    {
        Stopwatch sw;
        const FunctionHandle id = FunctionHandle::identity();
        double dev = 0.0;
        for (double x : xs)
            for (double t : ts)
                dev = std::max(dev, std::abs(asym_translate(id, t, 1.0, x, cfg.translation) - x * (2.0 * std::cos(t) - 1.0)));
        auto r = identity_report("closed_form_identity mu=1", grid, dev, cfg.tol_closed_form);
        r.detail = "max |tau_t(id,x) - x(2cos t - 1)|";
        r.runtime_seconds = sw.seconds();
        out.push_back(r);
    }
    {
        Stopwatch sw;
        ModulusConfig mc;
        mc.translation = cfg.translation;
        double dev = 0.0;
        for (double delta : {0.1, 0.5, 1.0, 2.0}) {
            const double s = std::sin(0.5 * delta);
            dev = std::max(dev, std::abs(modulus(FunctionHandle::identity(), delta, {Exponent::infinity(), 0.5, 1.0}, mc).value -
                                         2.0 * s * s));
        }
        auto r = identity_report("closed_form_modulus mu=1", "delta in {0.1, 0.5, 1, 2}, p=inf, alpha=1/2", dev,
                                 cfg.tol_modulus);
        r.detail = "max |omega(id, delta) - 2 sin^2(delta/2)|";
        r.runtime_seconds = sw.seconds();
        out.push_back(r);
    }
    if (cfg.include_controls) {
        Stopwatch sw;
        TranslationConfig flipped = cfg.translation;
        flipped.kernel = KernelVariant::flipped_sign;
        auto r = identity_report("control_flipped_kernel mu=1", grid,
                                 normalization_deviation(1.0, xs, ts, flipped), cfg.tol_normalization, true);
        r.detail = "tau_t(1,x) = 1 with the kernel cos(mu(phi1+phi)); must fail";
        r.runtime_seconds = sw.seconds();
        out.push_back(r);
    }
    return out;
}

// ---- commutation -----------------------------------------------------------

namespace {

// 7-point central differences, exact for polynomials of degree <= 6.
template <class F>
std::pair<double, double> derivatives7(F&& g, double x, double h)
{
    const double m3 = g(x - 3 * h), m2 = g(x - 2 * h), m1 = g(x - h), c0 = g(x);
    const double p1 = g(x + h), p2 = g(x + 2 * h), p3 = g(x + 3 * h);
    const double d1 = (-m3 + 9 * m2 - 45 * m1 + 45 * p1 - 9 * p2 + p3) / (60 * h);
    const double d2 = (2 * m3 - 27 * m2 + 270 * m1 - 490 * c0 + 270 * p1 - 27 * p2 + 2 * p3) / (180 * h * h);
    return {d1, d2};
}

} // namespace

VerificationReport verify_commutation(double mu, const PolynomialCoeffs& f, const CommutationConfig& cfg)
{
    Stopwatch sw;
    if (!(f.basis() == JacobiBasis{mu, mu}))
        throw ContractError("verify_commutation: f must be expanded in the (mu, mu) basis");
    const FunctionHandle fh = FunctionHandle::polynomial(f);
    const FunctionHandle df = FunctionHandle::polynomial(sl_apply_coeffs(f, {mu, mu}));
    const TranslationConfig& tc = cfg.translation;
    double dev_ab = 0.0, dev_ac = 0.0, dev_bc = 0.0, scale = 0.0;
    for (int i = 0; i < cfg.x_points; ++i) {
        const double x = cfg.x_points == 1 ? 0.0 : -cfg.x_max + 2.0 * cfg.x_max * i / (cfg.x_points - 1);
        for (int j = 0; j < cfg.t_points; ++j) {
            const double t = cfg.t_points == 1 ? cfg.t_min : cfg.t_min + (cfg.t_max - cfg.t_min) * j / (cfg.t_points - 1);
            const double y = std::cos(t);
            const double a = asym_translate(df, t, mu, x, tc);

            const double hx = std::min(0.02, (1.0 - std::abs(x)) / 4.0);
            const auto [gx1, gx2] =
                derivatives7([&](double u) { return asym_translate(fh, t, mu, u, tc); }, x, hx);
            const double b = (1.0 - x * x) * gx2 - (2.0 * mu + 2.0) * x * gx1;

            const double hy = std::min(0.02, (1.0 - std::abs(y)) / 4.0);
            const auto [gy1, gy2] =
                derivatives7([&](double v) { return asym_translate(fh, std::acos(v), mu, x, tc); }, y, hy);
            // D_{y,0,2mu}; the control swaps the indices
            const double drift = cfg.control ? -2.0 * mu - (2.0 * mu + 2.0) * y : 2.0 * mu - (2.0 * mu + 2.0) * y;
            const double c = (1.0 - y * y) * gy2 + drift * gy1;

            dev_ab = std::max(dev_ab, std::abs(a - b));
            dev_ac = std::max(dev_ac, std::abs(a - c));
            dev_bc = std::max(dev_bc, std::abs(b - c));
            scale = std::max(scale, std::abs(a));
        }
    }
    const double dev = std::max({dev_ab, dev_ac, dev_bc});
    VerificationReport r = identity_report(
        std::string(cfg.control ? "control_commutation" : "commutation") + " mu=" + num(mu) +
            " degree=" + std::to_string(f.degree()),
        std::to_string(cfg.x_points) + "x" + std::to_string(cfg.t_points) + " (|x| <= " + num(cfg.x_max) + ", " +
            num(cfg.t_min) + " <= t <= " + num(cfg.t_max) + ")",
        dev, cfg.tolerance, cfg.control);
    std::ostringstream d;
    if (cfg.control)
        d << "D_{y,2mu,0} in place of D_{y,0,2mu}; must fail. ";
    d << "pairwise max |tau(Df) - D_x tau f| = " << dev_ab << ", |tau(Df) - D_y tau f| = " << dev_ac
      << ", |D_x tau f - D_y tau f| = " << dev_bc << ", max |tau(Df)| = " << scale;
    r.detail = d.str();
    r.runtime_seconds = sw.seconds();
    return r;
}

// ---- integral representation -------------------------------------------

namespace {

// Gauss rule on [lo, hi] (any orientation), doubled until it settles.
template <class G>
double settled_integral(G&& g, double lo, double hi, int nodes, int doublings, double tol, const char* what)
{
    if (lo == hi)
        return 0.0;
    const double sign = hi > lo ? 1.0 : -1.0;
    const double a = std::min(lo, hi), b = std::max(lo, hi);
    auto rule_sum = [&](int m) {
        const QuadratureRule r = gauss_legendre_on(m, a, b);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            s += r.weights[i] * g(r.nodes[i]);
        return s;
    };
    std::vector<double> trace;
    int m = nodes;
    double value = rule_sum(m);
    trace.push_back(value);
    for (int level = 0; level < doublings; ++level) {
        m *= 2;
        const double next = rule_sum(m);
        trace.push_back(next);
        if (std::abs(next - value) <= tol * std::max(1.0, std::abs(next)))
            return sign * next;
        value = next;
    }
    std::ostringstream msg;
    msg << "integral identity: " << what << " rule on [" << a << ", " << b << "] did not settle; values by node count";
    int k = nodes;
    for (double v : trace) {
        msg << ' ' << k << ':' << v;
        k *= 2;
    }
    throw NumericError(msg.str());
}

// int_0^1 s^e g(s) ds with a Gauss-Jacobi rule in s, doubled until it settles.
template <class G>
double settled_jacobi_01(G&& g, double e, int nodes, int doublings, double tol, const char* what)
{
    auto rule_sum = [&](int m) {
        const QuadratureRule& r = gauss_jacobi_rule(m, {0.0, e});
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            s += r.weights[i] * g(0.5 * (1.0 + r.nodes[i]));
        return s * std::pow(0.5, e + 1.0);
    };
    int m = nodes;
    double value = rule_sum(m);
    for (int level = 0; level < doublings; ++level) {
        m *= 2;
        const double next = rule_sum(m);
        if (std::abs(next - value) <= tol * std::max(1.0, std::abs(next)))
            return next;
        value = next;
    }
    std::ostringstream msg;
    msg << "integral identity: " << what << " rule did not settle at " << m << " nodes (last " << value << ")";
    throw NumericError(msg.str());
}

} // namespace

std::vector<VerificationReport> verify_integral_identity(const PolynomialCoeffs& f, double y, double mu,
                                                         const IntegralIdentityConfig& cfg)
{
    if (!(y > -1.0 && y <= 1.0))
        throw DomainError("verify_integral_identity: y must lie in (-1, 1]");
    if (!(f.basis() == JacobiBasis{mu, mu}))
        throw ContractError("verify_integral_identity: f must be expanded in the (mu, mu) basis");
    Stopwatch sw;
    const FunctionHandle fh = FunctionHandle::polynomial(f);
    const FunctionHandle df = FunctionHandle::polynomial(sl_apply_coeffs(f, {mu, mu}));
    const TranslationConfig& tc = cfg.translation;
    const int n0 = cfg.initial_nodes;
    const int dbl = cfg.max_doublings;
    const double qt = cfg.quadrature_tolerance;
    const double t_y = std::acos(y);
    // exponent of the inner weight (1+u)^e
    const double e = cfg.control ? 2.0 * mu + 1.0 : 2.0 * mu;

    double dev[4] = {0.0, 0.0, 0.0, 0.0};
    for (double x : cfg.xs) {
        auto g = [&](double u) { return asym_translate(df, std::acos(std::clamp(u, -1.0, 1.0)), mu, x, tc); };
        auto gt = [&](double a) { return asym_translate(df, a, mu, x, tc); };
        const double ty = asym_translate(fh, t_y, mu, x, tc);
        const double t0 = asym_translate(fh, 0.5 * kPi, mu, x, tc);

        // tau_y f - f = int_y^1 (1+v)^{-2mu-1} int_0^1 (1+u)^{2mu} g(u) ds dv, u = v + (1-v) s
        const double rhs1 = settled_integral(
            [&](double v) {
                const double inner = settled_integral(
                    [&](double s) {
                        const double u = v + (1.0 - v) * s;
                        return std::pow(1.0 + u, e) * g(u);
                    },
                    0.0, 1.0, n0, dbl, qt, "inner (first identity)");
                return std::pow(1.0 + v, -2.0 * mu - 1.0) * inner;
            },
            y, 1.0, n0, dbl, qt, "outer (first identity)");
        dev[0] = std::max(dev[0], std::abs((ty - fh(x)) - rhs1));

        // tau_y f - tau_0 f = int_0^y (1-v)^{-1} int_0^1 s^{2mu} g(-1 + (1+v) s) ds dv
        const double rhs2 = settled_integral(
            [&](double v) {
                const double inner = settled_jacobi_01([&](double s) { return g(-1.0 + (1.0 + v) * s); }, e, n0, dbl,
                                                       qt, "inner (second identity)");
                return std::pow(1.0 + v, e - 2.0 * mu) * inner / (1.0 - v);
            },
            0.0, y, n0, dbl, qt, "outer (second identity)");
        dev[1] = std::max(dev[1], std::abs((ty - t0) - rhs2));

        // t-forms, with w(b) = sin b / ((1 - cos b)(1 + cos b)^{2mu+1}) and the inner
        // weight (1 + cos a)^{2mu} sin a
        auto outer_w = [&](double b) {
            const double sh = std::sin(0.5 * b), ch = std::cos(0.5 * b);
            return std::sin(b) / (2.0 * sh * sh * std::pow(2.0 * ch * ch, 2.0 * mu + 1.0));
        };
        auto inner_w = [&](double a) {
            const double ch = std::cos(0.5 * a);
            return std::pow(2.0 * ch * ch, e) * std::sin(a);
        };
        const double rhs3 = settled_integral(
            [&](double b) {
                const double inner = settled_integral([&](double a) { return gt(a) * inner_w(a); }, 0.0, b, n0, dbl, qt,
                                                      "inner (first t-form)");
                return outer_w(b) * inner;
            },
            0.0, t_y, n0, dbl, qt, "outer (first t-form)");
        dev[2] = std::max(dev[2], std::abs((ty - fh(x)) - rhs3));

        const double rhs4 = -settled_integral(
            [&](double b) {
                const double inner = settled_integral([&](double a) { return gt(a) * inner_w(a); }, b, kPi, n0, dbl, qt,
                                                      "inner (second t-form)");
                return outer_w(b) * inner;
            },
            0.5 * kPi, t_y, n0, dbl, qt, "outer (second t-form)");
        dev[3] = std::max(dev[3], std::abs((ty - t0) - rhs4));
    }
    const std::string tag = " mu=" + num(mu) + " y=" + num(y) + " degree=" + std::to_string(f.degree());
    std::string grid = "x in {";
    for (std::size_t i = 0; i < cfg.xs.size(); ++i)
        grid += (i ? ", " : "") + num(cfg.xs[i]);
    grid += "}";
    const char* names[4] = {"integral_identity_1", "integral_identity_2", "integral_identity_t1", "integral_identity_t2"};
    const char* details[4] = {
        "tau_y f - f = int_1^y (1-v)^{-1}(1+v)^{-2mu-1} int_1^v (1+u)^{2mu} tau_u(Df) du dv",
        "tau_y f - tau_0 f = -int_0^y (1-v)^{-1}(1+v)^{-2mu-1} int_v^{-1} (1+u)^{2mu} tau_u(Df) du dv",
        "first identity in the angle variables",
        "second identity in the angle variables",
    };
    std::vector<VerificationReport> out;
    for (int k = 0; k < 4; ++k) {
        auto r = identity_report((cfg.control ? "control_" : "") + std::string(names[k]) + tag, grid, dev[k],
                                 cfg.tolerance, cfg.control);
        r.detail = cfg.control ? std::string("inner weight (1+u)^{2mu+1}; must fail. ") + details[k] : details[k];
        out.push_back(r);
    }
    out.front().runtime_seconds = sw.seconds();
    return out;
}

// ---- Markov-Bernstein --------------------------------------------------------

ExperimentOutput verify_markov(Exponent p, double alpha, double mu, const MarkovConfig& cfg)
{
    Stopwatch sw;
    std::mt19937_64 rng(cfg.seed);
    Table table;
    table.name = "markov p=" + p.to_string() + " alpha=" + num(alpha) + " mu=" + num(mu);
    table.columns = {"degree", "max_r1", "max_r2"};
    for (int d : cfg.degrees) {
        double r1 = 0.0, r2 = 0.0;
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int k = 0; k < cfg.draws; ++k) {
            // standard normal coefficients in the orthonormal basis, so every
            // degree carries the same weighted L2 energy
            std::vector<double> c(d + 1);
            for (int j = 0; j <= d; ++j)
                c[j] = nd(rng) / std::sqrt(jacobi_norm_sq(j, {mu, mu}));
            const MarkovBernsteinRatios m =
                markov_bernstein_check(PolynomialCoeffs({mu, mu}, std::move(c)), p, alpha, cfg.rho, cfg.resolution);
            r1 = std::max(r1, m.r1);
            r2 = std::max(r2, m.r2);
        }
        table.rows.push_back({static_cast<double>(d), r1, r2});
    }
    ExperimentOutput out;
    const std::string grid = std::to_string(cfg.draws) + " random orthonormal-basis polynomials per degree, p=" + p.to_string() +
                             ", alpha=" + num(alpha) + ", rho=" + num(cfg.rho);
    for (int col : {1, 2}) {
        VerificationReport r;
        r.name = std::string(col == 1 ? "markov_r1" : "markov_r2") + " p=" + p.to_string() + " alpha=" + num(alpha);
        r.kind = "inequality";
        r.grid = grid;
        r.spread_limit = cfg.factor;
        r.ratio_min = std::numeric_limits<double>::infinity();
        r.ratio_max = 0.0;
        bool ok = table.rows.size() >= 2;
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            const double ratio = table.rows[i][col] / table.rows[i - 1][col];
            r.ratio_min = std::min(r.ratio_min, ratio);
            r.ratio_max = std::max(r.ratio_max, ratio);
            ok = ok && std::isfinite(ratio) && ratio < cfg.factor && ratio > 1.0 / cfg.factor;
        }
        r.passed = ok;
        r.detail = "ratio of the maxima between consecutive degrees must lie in (1/" + num(cfg.factor) + ", " +
                   num(cfg.factor) + "); largest growth " + num(r.ratio_max);
        out.reports.push_back(r);
    }
    out.reports.front().runtime_seconds = sw.seconds();
    out.tables.push_back(std::move(table));
    return out;
}

} // namespace gtrans
