#include "gtrans/translation.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace gtrans {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1.0 - 1e-9;

double clamp_unit(double v)
{
    return std::clamp(v, -1.0, 1.0);
}

// cos/sin of j*pi/M, j = 0..M.
template <class Real>
struct TrigTable {
    std::vector<Real> cosv;
    std::vector<Real> sinv;
};

template <class Real>
const TrigTable<Real>& trapezoid_table(int intervals)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<TrigTable<Real>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[intervals];
    if (!slot) {
        slot = std::make_unique<TrigTable<Real>>();
        slot->cosv.resize(intervals + 1);
        slot->sinv.resize(intervals + 1);
        const Real pi = std::numbers::pi_v<Real>;
        for (int j = 0; j <= intervals; ++j) {
            const Real a = pi * j / intervals;
            slot->cosv[j] = std::cos(a);
            slot->sinv[j] = std::sin(a);
        }
        slot->sinv[0] = 0.0;
        slot->sinv[intervals] = 0.0;
        slot->cosv[0] = 1.0;
        slot->cosv[intervals] = -1.0;
    }
    return *slot;
}

bool is_small_integer(double mu)
{
    return mu == std::round(mu) && mu <= 64.0;
}

// The phi1-integrand of tau_t without the prefactor. Real = long double is
// used on the trapezoid path when the prefactor is tiny: the integral then
// cancels down to far below the size of the integrand.
template <class Real>
class TranslationIntegrandT {
public:
    TranslationIntegrandT(const FunctionHandle& f, double t, double mu, double x, KernelVariant kernel)
        : f_(f), mu_(mu), x_(x), kernel_(kernel)
    {
        const Real xl = x;
        s_ = std::sqrt((Real(1) - xl) * (Real(1) + xl));
        c_ = std::cos(static_cast<Real>(t));
        st_ = std::sin(static_cast<Real>(t));
        integer_power_ = is_small_integer(mu) ? static_cast<int>(mu) : -1;
    }

    double R(Real cos_phi1) const
    {
        return clamp_unit(static_cast<double>(x_ * c_ - cos_phi1 * s_ * st_));
    }

    Real operator()(Real cos_phi1, Real sin_phi1) const
    {
        const double r = R(cos_phi1);
        const Real sc = x_ * st_ + s_ * c_ * cos_phi1;
        const Real ss = s_ * sin_phi1;
        return f_(r) * kernel(sc, ss, cos_phi1, sin_phi1);
    }

    // sin(theta)^mu cos(mu (phi1 -+ phi)).
    Real kernel(Real sc, Real ss, Real cos_phi1, Real sin_phi1) const
    {
        if (integer_power_ >= 0) {
            // w = sin(theta) e^{i(phi1 - phi)} = conj(W) e^{i phi1},  W = sc + i ss.
            const Real sign = kernel_ == KernelVariant::standard ? Real(-1) : Real(1);
            const std::complex<Real> w(sc * cos_phi1 - sign * ss * sin_phi1,
                                       sc * sin_phi1 + sign * ss * cos_phi1);
            std::complex<Real> acc(Real(1), Real(0));
            for (int k = 0; k < integer_power_; ++k)
                acc *= w;
            return acc.real();
        }
        const double r = std::hypot(static_cast<double>(sc), static_cast<double>(ss));
        const double phi = r == 0.0 ? 0.0 : std::atan2(static_cast<double>(ss), static_cast<double>(sc));
        const double phi1 = std::atan2(static_cast<double>(sin_phi1), static_cast<double>(cos_phi1));
        const double arg = kernel_ == KernelVariant::standard ? phi1 - phi : phi1 + phi;
        return std::pow(r, mu_) * std::cos(mu_ * arg);
    }

    double spread() const { return static_cast<double>(s_ * st_); }
    double center() const { return static_cast<double>(x_ * c_); }

private:
    const FunctionHandle& f_;
    double mu_;
    Real x_;
    KernelVariant kernel_;
    Real s_ = 0.0;
    Real c_ = 0.0;
    Real st_ = 0.0;
    int integer_power_ = -1;
};

using TranslationIntegrand = TranslationIntegrandT<double>;

[[noreturn]] void refinement_failure(const char* what, double previous, double last, int nodes)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": refinement did not converge at " << nodes << " nodes (last iterates " << previous << ", "
        << last << ")";
    throw NumericError(msg.str());
}

// Trapezoid rule in phi1 with nested doubling.
template <class Real>
double trapezoid_integral(const TranslationIntegrandT<Real>& g, const TranslationConfig& cfg)
{
    int intervals = std::max(cfg.nodes, 8);
    const TrigTable<Real>* table = &trapezoid_table<Real>(intervals);
    Real sum = Real(0);
    Real abs_sum = Real(0);
    for (int j = 0; j <= intervals; ++j) {
        const Real v = g(table->cosv[j], table->sinv[j]);
        const Real w = (j == 0 || j == intervals) ? Real(0.5) : Real(1);
        sum += w * v;
        abs_sum += w * std::abs(v);
    }
    double value = static_cast<double>(sum * kPi / intervals);
    double previous_delta = std::numeric_limits<double>::infinity();
    for (int level = 0; level < cfg.max_doublings; ++level) {
        intervals *= 2;
        table = &trapezoid_table<Real>(intervals);
        Real added = Real(0);
        Real added_abs = Real(0);
        for (int j = 1; j < intervals; j += 2) {
            const Real v = g(table->cosv[j], table->sinv[j]);
            added += v;
            added_abs += std::abs(v);
        }
        sum += added;
        abs_sum += added_abs;
        const double next = static_cast<double>(sum * kPi / intervals);
        const double scale = std::max(static_cast<double>(abs_sum * kPi / intervals), 1e-300);
        const double delta = std::abs(next - value);
        if (delta <= cfg.tolerance * scale)
            return next;
        // A trigonometric polynomial is integrated exactly once the rule is
        // fine enough; differences that stop shrinking at a small level are
        // the roundoff of f itself (e.g. 1 - R^2 with R near 1).
        if (delta <= 1e-9 * scale && delta >= 0.5 * previous_delta)
            return next;
        previous_delta = delta;
        if (level + 1 == cfg.max_doublings)
            refinement_failure("asym_translate", value, next, intervals);
        value = next;
    }
    return value;
}

// Gauss-Legendre panels between the given split points in phi1.
double panel_integral(const TranslationIntegrand& g, const std::vector<double>& edges, const TranslationConfig& cfg)
{
    int m = std::max(cfg.nodes / 2, 8);
    auto evaluate = [&](int nodes, double& abs_total) {
        const QuadratureRule& ref = gauss_jacobi_rule(nodes, {0.0, 0.0});
        double total = 0.0;
        abs_total = 0.0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double half = 0.5 * (edges[p + 1] - edges[p]);
            const double mid = 0.5 * (edges[p + 1] + edges[p]);
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const double phi1 = mid + half * ref.nodes[i];
                const double v = g(std::cos(phi1), std::sin(phi1));
                total += half * ref.weights[i] * v;
                abs_total += half * ref.weights[i] * std::abs(v);
            }
        }
        return total;
    };
    double abs_total = 0.0;
    double value = evaluate(m, abs_total);
    for (int level = 0; level < cfg.max_doublings; ++level) {
        m *= 2;
        const double next = evaluate(m, abs_total);
        if (std::abs(next - value) <= cfg.tolerance * std::max(abs_total, 1e-300))
            return next;
        if (level + 1 == cfg.max_doublings)
            refinement_failure("asym_translate (panels)", value, next, m);
        value = next;
    }
    return value;
}

// phi1 locations where R crosses a declared breakpoint of f.
std::vector<double> split_points(const TranslationIntegrand& g, const std::vector<double>& breakpoints)
{
    std::vector<double> edges{0.0};
    const double spread = g.spread();
    if (spread != 0.0) {
        for (double b : breakpoints) {
            const double z = (g.center() - b) / spread;
            if (z > -1.0 && z < 1.0)
                edges.push_back(std::acos(z));
        }
    }
    edges.push_back(kPi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace

GeodesicFrame geodesic_frame(double x, double t, double phi1)
{
    GeodesicFrame fr;
    fr.x = x;
    fr.t = t;
    fr.phi1 = phi1;
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    const double z = std::cos(phi1);
    fr.R = clamp_unit(x * std::cos(t) - z * s * std::sin(t));
    fr.sin_theta_cos_phi = x * std::sin(t) + s * std::cos(t) * z;
    fr.sin_theta_sin_phi = s * std::sin(phi1);
    const double r = std::hypot(fr.sin_theta_cos_phi, fr.sin_theta_sin_phi);
    // sin(theta) at roundoff level counts as zero
    fr.phi = r <= 4.0 * std::numeric_limits<double>::epsilon() ? 0.0 : std::atan2(fr.sin_theta_sin_phi, fr.sin_theta_cos_phi);
    return fr;
}

double asym_translate(const FunctionHandle& f, double t, double mu, double x, const TranslationConfig& cfg)
{
    if (!(std::abs(t) < kPi))
        throw DomainError("asym_translate: |t| must be < pi");
    if (!(mu >= 0.0))
        throw DomainError("asym_translate: mu must be >= 0");
    if (!(x >= -1.0 && x <= 1.0))
        throw DomainError("asym_translate: x outside [-1,1]");
    if (cfg.nodes < 8 || !(cfg.tolerance > 0.0))
        throw ContractError("asym_translate: config needs nodes >= 8 and tolerance > 0");
    const double xc = std::clamp(x, -kEdge, kEdge);
    if (t == 0.0)
        return f(xc);

    const TranslationIntegrand g(f, t, mu, xc, cfg.kernel);
    const std::vector<double> edges = split_points(g, f.breakpoints());
    // The trapezoid rule relies on the even periodic extension in phi1 being
    // smooth, which fails for non-integer mu (the kernel's slope at the ends
    // does not vanish) and across breakpoints of f.
    const bool periodic_smooth = edges.size() == 2 && is_small_integer(mu);
    const double s = std::sqrt((1.0 - xc) * (1.0 + xc));
    const double half_cos = std::cos(0.5 * t);
    double integral = 0.0;
    if (!periodic_smooth)
        integral = panel_integral(g, edges, cfg);
    else if (std::pow(s, mu) * std::pow(half_cos, 2.0 * mu) < 1e-3)
        integral = trapezoid_integral(TranslationIntegrandT<long double>(f, t, mu, xc, cfg.kernel), cfg);
    else
        integral = trapezoid_integral(g, cfg);

    if (mu == 0.0)
        return integral / kPi;
    if (half_cos < 1e-6) {
        const double log_pref = -std::log(kPi) - mu * std::log(s) - 2.0 * mu * std::log(half_cos);
        return integral * std::exp(log_pref);
    }
    return integral / (kPi * std::pow(s, mu) * std::pow(half_cos, 2.0 * mu));
}

FunctionHandle asym_translated(const FunctionHandle& f, double t, double mu, const TranslationConfig& cfg)
{
    std::ostringstream label;
    label << "tau[" << f.label() << "](t=" << t << ")";
    return FunctionHandle([f, t, mu, cfg](double x) { return asym_translate(f, t, mu, x, cfg); }, label.str());
}

double sym_translate(const FunctionHandle& f, double y, double mu, double x, const TranslationConfig& cfg)
{
    if (!(mu >= 0.0))
        throw DomainError("sym_translate: mu must be >= 0");
    if (!(x >= -1.0 && x <= 1.0) || !(y >= -1.0 && y <= 1.0))
        throw DomainError("sym_translate: x and y must lie in [-1,1]");
    const double sx = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    const double sy = std::sqrt(std::max(0.0, (1.0 - y) * (1.0 + y)));
    const double e = mu - 0.5;

    // z where R(z) = xy - z sx sy crosses a breakpoint of f
    std::vector<double> edges{-1.0};
    const double spread = sx * sy;
    if (spread > 0.0) {
        std::vector<double> cuts;
        for (double b : f.breakpoints()) {
            const double z = (x * y - b) / spread;
            if (z > -1.0 && z < 1.0)
                cuts.push_back(z);
        }
        std::sort(cuts.begin(), cuts.end());
        edges.insert(edges.end(), cuts.begin(), cuts.end());
    }
    edges.push_back(1.0);

    // Outer panels carry the (1 -+ z)^e singularity in a one-sided
    // Gauss-Jacobi rule; the other factor of the weight is evaluated.
    auto evaluate = [&](int m) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double lo = edges[p], hi = edges[p + 1];
            if (!(hi > lo))
                continue;
            const bool left = lo == -1.0, right = hi == 1.0;
            const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
            const QuadratureRule& rule = gauss_jacobi_rule(m, {right ? e : 0.0, left ? e : 0.0});
            const double scale = half * std::pow(half, (left ? e : 0.0) + (right ? e : 0.0));
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const double z = mid + half * rule.nodes[i];
                double w = rule.weights[i] * scale;
                if (!right)
                    w *= std::pow(1.0 - z, e);
                if (!left)
                    w *= std::pow(1.0 + z, e);
                num += w * f(clamp_unit(x * y - z * spread));
                den += w;
            }
        }
        return num / den;
    };
    int m = std::max(cfg.nodes / 2, 4);
    double value = evaluate(m);
    for (int level = 0; level < cfg.max_doublings; ++level) {
        m *= 2;
        const double next = evaluate(m);
        if (std::abs(next - value) <= cfg.tolerance * std::max(1.0, std::abs(next)))
            return next;
        if (level + 1 == cfg.max_doublings)
            refinement_failure("sym_translate", value, next, m);
        value = next;
    }
    return value;
}

TranslationBound translate_norm_bound_check(const FunctionHandle& f, double t, const SpaceParams& space,
                                            const TranslationConfig& cfg, const NormResolution& res)
{
    const Admissibility adm = check_admissible(space);
    if (!adm.admissible)
        throw DomainError("translate_norm_bound_check: space not admissible: " + adm.diagnostic);
    TranslationBound out;
    out.norm = weighted_norm(f, space.p, space.alpha, res);
    if (out.norm == 0.0)
        throw ContractError("translate_norm_bound_check: f has zero norm");
    out.translated_norm = weighted_norm(asym_translated(f, t, space.mu, cfg), space.p, space.alpha, res);
    out.ratio = out.translated_norm * std::pow(std::cos(0.5 * t), 2.0 * space.mu) / out.norm;
    return out;
}

std::pair<double, double> duality_check(const FunctionHandle& f, const FunctionHandle& g, double y, double mu,
                                        const TranslationConfig& cfg, int nodes)
{
    if (!(y > -1.0 && y <= 1.0))
        throw DomainError("duality_check: y must lie in (-1,1]");
    const double t = std::acos(y);
    const QuadratureRule& rule = gauss_jacobi_rule(nodes, {mu, mu});
    double left = 0.0;
    double right = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        left += rule.weights[i] * f(x) * asym_translate(g, t, mu, x, cfg);
        right += rule.weights[i] * g(x) * asym_translate(f, t, mu, x, cfg);
    }
    return {left, right};
}

void kernel_self_test(const TranslationConfig& cfg)
{
    const FunctionHandle one = FunctionHandle::constant(1.0);
    double worst = 0.0;
    double worst_x = 0.0;
    double worst_t = 0.0;
    double worst_mu = 0.0;
    for (double mu : {0.0, 1.0, 2.0, 3.0}) {
        for (int i = 0; i <= 8; ++i) {
            const double x = -0.95 + 1.9 * i / 8.0;
            for (int j = 0; j <= 8; ++j) {
                const double t = -2.5 + 5.0 * j / 8.0;
                const double dev = std::abs(asym_translate(one, t, mu, x, cfg) - 1.0);
                if (dev > worst) {
                    worst = dev;
                    worst_x = x;
                    worst_t = t;
                    worst_mu = mu;
                }
            }
        }
    }
    if (worst > 1e-10) {
        std::ostringstream msg;
        msg << "translation kernel self-test failed: |tau(1)-1| = " << worst << " at mu=" << worst_mu
            << ", x=" << worst_x << ", t=" << worst_t;
        throw NumericError(msg.str());
    }
}

} // namespace gtrans
