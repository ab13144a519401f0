#include "irls.hpp"

#include "gtrans/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gtrans::detail {

namespace {

struct Weighted {
    Eigen::VectorXd w;
    double norm = 0.0;
};

// Weights W with grad ||r||_p = W .* r, computed in scaled form so large p
// neither overflows nor underflows. For p < 2 |r| is floored at eps * max|r|.
Weighted gradient_weights(const Eigen::VectorXd& r, double p, double eps)
{
    Weighted out;
    out.w = Eigen::VectorXd::Zero(r.size());
    const double m = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    if (m == 0.0)
        return out;
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
        s += std::pow(std::abs(r[i]) / m, p);
    out.norm = m * std::pow(s, 1.0 / p);
    const double denom = m * std::pow(s, (p - 1.0) / p);
    const double floor = eps * m;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double a = std::max(std::abs(r[i]), floor) / m;
        out.w[i] = std::pow(a, p - 2.0) / denom;
    }
    return out;
}

double objective(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, double lambda, double p)
{
    double v = discrete_norm(r1, p);
    if (r2.size() && lambda != 0.0)
        v += lambda * discrete_norm(r2, p);
    return v;
}

Eigen::VectorXd solve_weighted(const DiscreteProblem& pr, const Eigen::VectorXd& w1, const Eigen::VectorXd& w2)
{
    const bool penalty = pr.P.rows() && pr.lambda != 0.0;
    const Eigen::Index rows = pr.B.rows() + (penalty ? pr.P.rows() : 0);
    Eigen::MatrixXd S(rows, pr.B.cols());
    S.topRows(pr.B.rows()) = w1.cwiseSqrt().asDiagonal() * pr.B;
    if (penalty)
        S.bottomRows(pr.P.rows()) = (pr.lambda * w2).cwiseSqrt().asDiagonal() * pr.P;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(pr.B.cols(), pr.B.cols());
    M.selfadjointView<Eigen::Lower>().rankUpdate(S.transpose());
    const Eigen::VectorXd rhs = pr.B.transpose() * w1.cwiseProduct(pr.b);
    const double ridge = 1e-15 * std::max(M.diagonal().maxCoeff(), 1e-300);
    M.diagonal().array() += ridge;
    return M.selfadjointView<Eigen::Lower>().ldlt().solve(rhs);
}

} // namespace

double discrete_norm(const Eigen::VectorXd& r, double p)
{
    if (r.size() == 0)
        return 0.0;
    const double m = r.cwiseAbs().maxCoeff();
    if (std::isinf(p) || m == 0.0)
        return m;
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
        s += std::pow(std::abs(r[i]) / m, p);
    return m * std::pow(s, 1.0 / p);
}

IrlsResult irls_minimize(const DiscreteProblem& pr, const IrlsOptions& opts, const Eigen::VectorXd* start)
{
    const Eigen::Index k = pr.B.cols();
    if (pr.B.rows() != pr.b.size() || (pr.P.rows() && pr.P.cols() != k))
        throw ContractError("irls_minimize: inconsistent problem dimensions");
    const bool has_penalty = pr.P.rows() > 0 && pr.lambda != 0.0;
    const double target = opts.p;

    std::vector<double> stages;
    if (std::isinf(target)) {
        for (double q = 4.0; q <= 1024.0; q *= 2.0)
            stages.push_back(q);
    } else {
        stages.push_back(target);
    }

    IrlsResult out;
    Eigen::VectorXd c;
    if (start && start->size() == k) {
        c = *start;
    } else {
        const Eigen::VectorXd ones1 = Eigen::VectorXd::Ones(pr.B.rows());
        const Eigen::VectorXd ones2 = Eigen::VectorXd::Ones(pr.P.rows());
        c = solve_weighted(pr, ones1, ones2);
    }
    auto residuals = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r1, Eigen::VectorXd& r2) {
        r1 = pr.b - pr.B * x;
        r2 = has_penalty ? Eigen::VectorXd(pr.P * x) : Eigen::VectorXd();
    };
    Eigen::VectorXd r1, r2;
    residuals(c, r1, r2);
    out.coeffs = c;
    out.objective = objective(r1, r2, pr.lambda, target);
    out.history.push_back(out.objective);
    if (!std::isfinite(out.objective))
        throw NumericError("irls_minimize: non-finite objective at the start");

    for (std::size_t stage = 0; stage < stages.size(); ++stage) {
        const double p = stages[stage];
        // continuation stages only need a rough minimizer
        const bool last = stage + 1 == stages.size();
        const int cap = last ? opts.max_iterations : std::max(6, opts.max_iterations / 5);
        const double tol = last ? opts.tolerance : 1e-4;
        double eps = p < 2.0 ? 1e-2 : 0.0;
        double current = objective(r1, r2, pr.lambda, p);
        for (int it = 0; it < cap; ++it) {
            const Weighted g1 = gradient_weights(r1, p, eps);
            const Weighted g2 = has_penalty ? gradient_weights(r2, p, eps) : Weighted{};
            if (g1.norm == 0.0 && g2.norm == 0.0)
                break;
            const Eigen::VectorXd next = solve_weighted(pr, g1.w, has_penalty ? g2.w : Eigen::VectorXd());
            const Eigen::VectorXd d = next - c;
            const Eigen::VectorXd dr1 = pr.B * d;
            const Eigen::VectorXd dr2 = has_penalty ? Eigen::VectorXd(pr.P * d) : Eigen::VectorXd();
            auto phi = [&](double s) {
                const Eigen::VectorXd a = r1 - s * dr1;
                const Eigen::VectorXd b = has_penalty ? Eigen::VectorXd(r2 + s * dr2) : Eigen::VectorXd();
                return objective(a, b, pr.lambda, p);
            };
            // golden-section line search on [0, 1.5]; the plain IRLS step is s = 1
            double lo = 0.0, hi = 1.5;
            const double g = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            double f1 = phi(x1), f2 = phi(x2);
            for (int ls = 0; ls < 30; ++ls) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = phi(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = phi(x2);
                }
            }
            double s = f1 <= f2 ? x1 : x2;
            double fs = std::min(f1, f2);
            const double f_one = phi(1.0);
            if (f_one < fs) {
                s = 1.0;
                fs = f_one;
            }
            ++out.iterations;
            const bool improved = fs < current;
            if (improved) {
                c += s * d;
                r1 -= s * dr1;
                if (has_penalty)
                    r2 += s * dr2;
            }
            const double change = improved ? (current - fs) / std::max(current, 1e-300) : 0.0;
            if (improved)
                current = fs;
            const double at_target = objective(r1, r2, pr.lambda, target);
            out.history.push_back(at_target);
            if (at_target < out.objective) {
                out.objective = at_target;
                out.coeffs = c;
            }
            const double step = improved ? (s * d).norm() : 0.0;
            if (eps > opts.weight_floor) {
                eps = std::max(eps * 0.1, opts.weight_floor);
                continue;
            }
            if (change <= tol && step <= tol * std::max(1.0, c.norm()))
                break;
        }
    }
    return out;
}

} // namespace gtrans::detail
