#include "doctest.h"

#include "gtrans/approx.hpp"
#include "gtrans/errors.hpp"
#include "gtrans/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gtrans;

namespace {

const Exponent inf = Exponent::infinity();

FunctionHandle abs_handle()
{
    return FunctionHandle([](double x) { return std::abs(x); }).with_breakpoints({0.0});
}

FunctionHandle basis_poly(int n, double mu)
{
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    return FunctionHandle::polynomial(PolynomialCoeffs({mu, mu}, std::move(c)));
}

// min over c of int |x - c| dx, by scanning c and then a local golden search
double constant_scan_l1()
{
    auto cost = [](double c) {
        // closed form of int_{-1}^{1} |x - c| dx for |c| <= 1
        return ((1.0 + c) * (1.0 + c) + (1.0 - c) * (1.0 - c)) / 2.0;
    };
    double best = cost(-1.0);
    for (int i = 0; i <= 20000; ++i)
        best = std::min(best, cost(-1.0 + 2.0 * i / 20000.0));
    return best;
}

// (1/gamma) int_0^pi cos(t) K(t) dt with the kernel written out, by composite Simpson
double simpson_multiplier_r1(int m, int q, double mu)
{
    auto K = [&](double t) {
        if (t == 0.0)
            return 0.0;
        return std::pow(std::sin(m * t / 2) / std::sin(t / 2), 2 * (q + 2)) * std::pow(std::sin(t), 2 * mu + 1);
    };
    const int N = 200000;
    const double h = std::numbers::pi / N;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double t = i * h;
        const double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        num += w * std::cos(t) * K(t);
        den += w * K(t);
    }
    return num / den;
}

} // namespace

TEST_CASE("minimax of x^2 by constants and lines")
{
    const FunctionHandle sq([](double x) { return x * x; });
    const BestApproxResult r = best_approx(sq, 2, {inf, 0.0, 0.0});
    CHECK(r.method == "remez");
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.coeffs(0.3) == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(r.alternation.size() == 3);
    double prev = 0.0;
    for (std::size_t i = 0; i < r.alternation.size(); ++i) {
        const double x = r.alternation[i];
        const double e = x * x - r.coeffs(x);
        CHECK(std::abs(std::abs(e) - r.value) <= 1e-7 * r.value);
        if (i > 0)
            CHECK(e * prev < 0.0);
        prev = e;
    }
}

TEST_CASE("L1 best constant for x matches the constant scan")
{
    const BestApproxResult r = best_approx(FunctionHandle([](double x) { return x; }), 1,
                                           {Exponent::finite(1.0), 0.0, 0.0});
    CHECK(std::abs(r.value - constant_scan_l1()) <= 1e-6);
    CHECK(std::abs(r.value - 1.0) <= 1e-6);
}

TEST_CASE("polynomials in the space are reproduced")
{
    const auto r3 = basis_poly(3, 1.0);
    for (Exponent p : {inf, Exponent::finite(1.0), Exponent::finite(2.0)}) {
        const BestApproxResult r = best_approx(r3, 4, {p, 0.5, 1.0});
        CHECK(r.value <= 1e-9);
        CHECK(r.method == "exact");
    }
    // a plain rule that happens to be a polynomial goes through the solvers
    const FunctionHandle cubic([](double x) { return x * x * x - 0.2 * x; });
    CHECK(best_approx(cubic, 4, {inf, 0.5, 1.0}).value <= 1e-9);
    CHECK(best_approx(cubic, 5, {Exponent::finite(2.0), 0.5, 1.0}).value <= 1e-9);
}

TEST_CASE("p = 2 agrees with the orthogonal projection")
{
    const double alpha = 0.3, mu = 0.6;
    const SpaceParams sp{Exponent::finite(2.0), alpha, mu};
    const FunctionHandle f([](double x) { return std::exp(x) * std::sin(3 * x); });
    for (int n : {3, 6}) {
        const BestApproxResult r = best_approx(f, n, sp);
        // the weight (1-x^2)^{2 alpha} has the (2alpha, 2alpha) orthogonal basis
        const PolynomialCoeffs proj = project(f, n - 1, {2 * alpha, 2 * alpha}, 200);
        const double ref = weighted_distance(f, FunctionHandle::polynomial(proj), sp.p, alpha);
        CHECK(r.value == doctest::Approx(ref).epsilon(1e-9));
        for (double x : {-0.8, 0.0, 0.45})
            CHECK(r.coeffs(x) == doctest::Approx(proj(x)).epsilon(1e-7));
    }
}

TEST_CASE("weighted minimax of |x| equioscillates")
{
    const SpaceParams sp{inf, 0.5, 1.0};
    const auto f = abs_handle();
    for (int n : {3, 8, 17}) {
        const BestApproxResult r = best_approx(f, n, sp);
        CHECK(r.method == "remez");
        REQUIRE(r.alternation.size() == static_cast<std::size_t>(n + 1));
        double prev = 0.0;
        for (std::size_t i = 0; i < r.alternation.size(); ++i) {
            const double x = r.alternation[i];
            const double e = (std::abs(x) - r.coeffs(x)) * std::sqrt(1 - x * x);
            CHECK(std::abs(std::abs(e) - r.value) <= 1e-7 * r.value);
            if (i > 0)
                CHECK(e * prev < 0.0);
            prev = e;
        }
        CHECK(r.value <= weighted_norm(f, sp.p, sp.alpha));
    }
}

TEST_CASE("best approximation sequence")
{
    const SpaceParams sp{inf, 0.0, 0.0};
    const BestApproxSequence s = best_approx_sequence(abs_handle(), 12, sp);
    REQUIRE(s.values.size() == 12);
    double acc = 0.0;
    for (int n = 1; n <= 12; ++n) {
        if (n > 1)
            CHECK(s.values[n - 1] <= s.values[n - 2] + 1e-8);
        acc += n * s.values[n - 1];
        CHECK(s.weighted_sums[n - 1] == doctest::Approx(acc / (n * n)));
    }
    // n E_n stays bounded for |x|
    for (int n : {4, 8, 12})
        CHECK(n * s.values[n - 1] <= 0.6);

    const auto p2 = FunctionHandle::polynomial(PolynomialCoeffs({0.0, 0.0}, {1.0, 0.0, 2.0}));
    const BestApproxSequence z = best_approx_sequence(p2, 5, {Exponent::finite(1.0), 0.0, 0.0});
    for (int n = 3; n <= 5; ++n)
        CHECK(z.values[n - 1] == 0.0);

    CHECK_THROWS_AS(best_approx(abs_handle(), 0, sp), DomainError);
    CHECK_THROWS_AS(best_approx(abs_handle(), 3, {inf, 0.8, 0.0}), DomainError);
}

TEST_CASE("Jackson spec")
{
    for (double mu : {0.0, 0.5, 1.0, 2.0, 2.7}) {
        for (int n : {1, 2, 5, 8, 9, 17, 64}) {
            const JacksonSpec s = make_jackson_spec(n, mu);
            CHECK(s.q > mu);
            CHECK(s.q - 1 <= mu);
            CHECK(s.degree_bound() <= n - 1);
            CHECK(s.m > (n - 1.0) / (s.q + 2));
            CHECK(s.m <= (n - 1.0) / (s.q + 2) + 1);
            CHECK(s.gamma > 0.0);
        }
    }
    CHECK_THROWS_AS(make_jackson_spec(0, 1.0), DomainError);
    CHECK_THROWS_AS(make_jackson_spec(4, -0.5), DomainError);
}

TEST_CASE("Jackson operator reproduces constants and scales R_1")
{
    for (double mu : {0.0, 1.0, 1.5}) {
        const JacksonSpec s = make_jackson_spec(12, mu);
        const JacksonResult one = jackson_operator(FunctionHandle::constant(1.0), s);
        CHECK(one.coeffs.degree() == 11);
        CHECK(one.coeffs.coeffs()[0] == doctest::Approx(1.0).epsilon(1e-11));
        for (int k = 1; k <= 11; ++k)
            CHECK(std::abs(one.coeffs.coeffs()[k]) <= 1e-11);
    }
    const double mu = 1.0;
    std::vector<double> gap;
    for (int m : {4, 8, 16, 32}) {
        const int n = 4 * (m - 1) + 1; // q = 2 for mu = 1
        const JacksonSpec s = make_jackson_spec(n, mu);
        REQUIRE(s.m == m);
        const double lam = simpson_multiplier_r1(m, s.q, mu);
        CHECK(jackson_multiplier(s, 1) == doctest::Approx(lam).epsilon(1e-10));
        if (m <= 16) {
            const JacksonResult r1 = jackson_operator(basis_poly(1, mu), s);
            CHECK(r1.coeffs.coeffs()[1] == doctest::Approx(lam).epsilon(1e-10));
            CHECK(std::abs(r1.coeffs.coeffs()[0]) <= 1e-11);
        }
        gap.push_back(1.0 - lam);
    }
    for (std::size_t i = 1; i < gap.size(); ++i) {
        const double ratio = gap[i - 1] / gap[i];
        CHECK(ratio > 3.0);
        CHECK(ratio < 5.0);
    }
}

TEST_CASE("Jackson operator acts spectrally and keeps the degree")
{
    const double mu = 1.0;
    const JacksonSpec s = make_jackson_spec(10, mu);
    const PolynomialCoeffs p({mu, mu}, {0.3, -1.0, 0.5, 0.25, 0.0, 0.1});
    const JacksonResult q = jackson_operator(FunctionHandle::polynomial(p), s);
    for (int k = 0; k <= 5; ++k)
        CHECK(std::abs(q.coeffs.coeffs()[k] - jackson_multiplier(s, k) * p.coeffs()[k]) <= 1e-11);
    for (int k = 6; k < 10; ++k)
        CHECK(std::abs(q.coeffs.coeffs()[k]) <= 1e-11);

    for (int n : {5, 12, 24}) {
        const JacksonResult a = jackson_operator(abs_handle(), make_jackson_spec(n, mu));
        CHECK(a.coeffs.degree() <= n - 1);
        CHECK(a.above_degree_mass <= 1e-6);
    }
    // the kernel multipliers vanish past the degree bound
    CHECK(std::abs(jackson_multiplier(s, s.degree_bound() + 1)) <= 1e-12);
    CHECK(std::abs(jackson_multiplier(s, s.degree_bound())) > 1e-6);
}

TEST_CASE("Jackson error is at least the best approximation")
{
    const SpaceParams sp{inf, 0.5, 1.0};
    const FunctionHandle f([](double x) { return (1 - x * x) * (1 - x * x) * std::cos(2 * x); });
    for (int n : {6, 12}) {
        const JacksonResult q = jackson_operator(f, make_jackson_spec(n, sp.mu));
        const double err = weighted_distance(f, FunctionHandle::polynomial(q.coeffs), sp.p, sp.alpha);
        CHECK(err >= best_approx(f, n, sp).value - 1e-8);
    }
}

TEST_CASE("Markov-Bernstein ratios")
{
    const PolynomialCoeffs c({1.0, 1.0}, {2.0});
    CHECK(markov_bernstein_check(c, inf, 0.5, 0.3).r1 == 0.0);
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    std::vector<double> coeffs(9);
    for (double& v : coeffs)
        v = nd(rng);
    const PolynomialCoeffs p({1.0, 1.0}, coeffs);
    for (Exponent e : {inf, Exponent::finite(1.0), Exponent::finite(3.0)}) {
        const MarkovBernsteinRatios r = markov_bernstein_check(p, e, 0.5, 0.0);
        CHECK(r.r2 == 1.0);
        CHECK(r.n == 9);
        CHECK(r.r1 > 0.0);
        CHECK(std::isfinite(r.r1));
        CHECK(markov_bernstein_check(p, e, 0.5, 0.5).r2 > 0.0);
    }
    CHECK_THROWS_AS(markov_bernstein_check(PolynomialCoeffs({1.0, 1.0}, {0.0, 0.0}), inf, 0.5, 0.0), ContractError);
    CHECK_THROWS_AS(markov_bernstein_check(p, inf, -0.1, 0.0), DomainError);
    CHECK_THROWS_AS(markov_bernstein_check(p, Exponent::finite(2.0), -0.6, 0.0), DomainError);
}
