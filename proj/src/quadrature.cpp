#include "gtrans/quadrature.hpp"

#include "gtrans/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace gtrans {

namespace {

struct Recurrence {
    std::vector<double> alpha; // diagonal, size m
    std::vector<double> beta;  // beta[k] for k = 0..m; beta[0] = weight mass
};

Recurrence monic_recurrence(int m, double a, double b)
{
    Recurrence r;
    r.alpha.resize(m);
    r.beta.resize(m + 1);
    for (int k = 0; k < m; ++k) {
        const double s = 2.0 * k + a + b;
        r.alpha[k] = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    r.beta[0] = jacobi_weight_mass({a, b});
    for (int k = 1; k <= m; ++k) {
        const double s = 2.0 * k + a + b;
        if (k == 1) {
            r.beta[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
        } else {
            r.beta[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        }
    }
    return r;
}

// Orthonormal p_m(x), its derivative, and sum_{k<m} p_k(x)^2.
struct OrthoEval {
    double value;
    double slope;
    double christoffel_sum;
};

OrthoEval orthonormal_eval(const Recurrence& r, int m, double x)
{
    double p_prev = 0.0;
    double p = 1.0 / std::sqrt(r.beta[0]);
    double d_prev = 0.0;
    double d = 0.0;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
        sum += p * p;
        const double sb_next = std::sqrt(r.beta[k + 1]);
        const double sb = k == 0 ? 0.0 : std::sqrt(r.beta[k]);
        const double p_next = ((x - r.alpha[k]) * p - sb * p_prev) / sb_next;
        const double d_next = (p + (x - r.alpha[k]) * d - sb * d_prev) / sb_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {p, d, sum};
}

std::unique_ptr<QuadratureRule> build_rule(int m, JacobiBasis basis)
{
    const Recurrence rec = monic_recurrence(m, basis.a, basis.b);
    Eigen::VectorXd diag(m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k)
        diag[k] = rec.alpha[k];
    for (int k = 1; k < m; ++k)
        sub[k - 1] = std::sqrt(rec.beta[k]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    if (m > 1) {
        solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            std::ostringstream msg;
            msg << "Golub-Welsch eigenproblem did not converge (m=" << m << ", a=" << basis.a
                << ", b=" << basis.b << ", info=" << static_cast<int>(solver.info()) << ")";
            throw NumericError(msg.str());
        }
    }

    auto rule = std::make_unique<QuadratureRule>();
    rule->basis = basis;
    rule->nodes.resize(m);
    rule->weights.resize(m);
    for (int i = 0; i < m; ++i) {
        double x = m > 1 ? solver.eigenvalues()[i] : diag[0];
        for (int it = 0; it < 3; ++it) {
            const OrthoEval e = orthonormal_eval(rec, m, x);
            if (e.slope == 0.0)
                break;
            const double step = e.value / e.slope;
            x -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        const OrthoEval e = orthonormal_eval(rec, m, x);
        rule->nodes[i] = x;
        rule->weights[i] = 1.0 / e.christoffel_sum;
    }
    for (int i = 0; i < m; ++i) {
        const bool inside = rule->nodes[i] > -1.0 && rule->nodes[i] < 1.0;
        const bool ordered = i == 0 || rule->nodes[i] > rule->nodes[i - 1];
        if (!inside || !ordered || !(rule->weights[i] > 0.0)) {
            std::ostringstream msg;
            msg << "Gauss-Jacobi rule degenerated at node " << i << " (m=" << m << ", a=" << basis.a
                << ", b=" << basis.b << ", x=" << rule->nodes[i] << ", w=" << rule->weights[i] << ")";
            throw NumericError(msg.str());
        }
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_jacobi_rule(int m, JacobiBasis basis)
{
    basis.validate();
    if (m < 1)
        throw DomainError("quadrature node count must be >= 1");

    using Key = std::tuple<int, double, double>;
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<QuadratureRule>> cache;

    const Key key{m, basis.a, basis.b};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return *it->second;
    }
    auto rule = build_rule(m, basis);
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    return *it->second;
}

QuadratureRule gauss_legendre_on(int m, double lo, double hi)
{
    const QuadratureRule& ref = gauss_jacobi_rule(m, {0.0, 0.0});
    QuadratureRule out = ref;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.nodes[i] = mid + half * ref.nodes[i];
        out.weights[i] = half * ref.weights[i];
    }
    return out;
}

} // namespace gtrans
