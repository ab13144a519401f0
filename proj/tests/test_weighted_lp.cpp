#include "doctest.h"
#include "oracles.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/weighted_lp.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace gtrans;

namespace {

const Exponent inf = Exponent::infinity();

FunctionHandle random_poly(std::mt19937_64& rng, int degree)
{
    std::normal_distribution<double> g;
    std::vector<double> c(degree + 1);
    for (double& v : c)
        v = g(rng);
    return FunctionHandle::polynomial(PolynomialCoeffs({0.0, 0.0}, c));
}

} // namespace

TEST_CASE("admissibility window")
{
    CHECK(check_admissible({inf, 0.5, 1.0}).admissible);
    CHECK(check_admissible({Exponent::finite(1.0), 0.5, 1.0}).admissible);
    const Admissibility upper = check_admissible({inf, 0.6, 0.0});
    CHECK_FALSE(upper.admissible);
    CHECK(upper.diagnostic.find("upper bound < 0.5") != std::string::npos);

    CHECK_FALSE(check_admissible({inf, 0.4, 1.0}).admissible); // d < 0
    CHECK_FALSE(check_admissible({Exponent::finite(1.0), 0.6, 1.0}).admissible); // d > 0
    CHECK_FALSE(check_admissible({Exponent::finite(1.0), -0.5, 0.0}).admissible); // d = -1/2
    CHECK(check_admissible({Exponent::finite(2.0), 0.0, 0.0}).admissible);
    CHECK_FALSE(check_admissible({Exponent::finite(2.0), 0.25, 0.0}).admissible); // d = 1/2 - 1/(2p)
    CHECK(check_admissible({Exponent::finite(2.0), -0.24, 0.0}).admissible);
    CHECK_FALSE(check_admissible({Exponent::finite(2.0), -0.25, 0.0}).admissible);
}

TEST_CASE("exponent parsing")
{
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("2.5").value() == 2.5);
    CHECK(Exponent::parse("2.5").to_string() == "2.5");
    CHECK(Exponent::infinity().to_string() == "inf");
    CHECK_THROWS_AS(Exponent::parse("0.5"), DomainError);
    CHECK_THROWS_AS(Exponent::parse("abc"), DomainError);
}

TEST_CASE("norm closed forms")
{
    const auto one = FunctionHandle::constant(1.0);
    const auto id = FunctionHandle::identity();
    CHECK(weighted_norm(one, inf, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weighted_norm(id, inf, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(weighted_norm(one, Exponent::finite(1.0), 0.5) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    // int x^2 (1-x^2) dx = 4/15
    CHECK(weighted_norm(id, Exponent::finite(2.0), 0.5) == doctest::Approx(std::sqrt(4.0 / 15.0)).epsilon(1e-12));

    CHECK(weighted_distance(id, id, inf, 0.5) == 0.0);
    CHECK(weighted_distance(id, FunctionHandle::constant(0.0), inf, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    const FunctionHandle sq([](double x) { return x * x; });
    CHECK(weighted_distance(sq, FunctionHandle::constant(0.5), inf, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("non-integrable weight and non-finite values are rejected")
{
    CHECK_THROWS_AS(weighted_norm(FunctionHandle::constant(1.0), Exponent::finite(2.0), -0.5), DomainError);
    const FunctionHandle bad([](double x) { return x > 0.3 ? std::nan("") : 1.0; });
    CHECK_THROWS_AS(weighted_norm(bad, inf, 0.0), NumericError);
    CHECK_THROWS_AS(weighted_norm(bad, Exponent::finite(1.0), 0.0), NumericError);
}

TEST_CASE("norm axioms on random polynomials")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_poly(rng, 6), g = random_poly(rng, 9), h = random_poly(rng, 4);
        for (Exponent p : {Exponent::finite(1.0), Exponent::finite(2.5), inf}) {
            const double alpha = p.is_infinite() ? 0.5 : 0.2;
            const double fg = weighted_distance(f, g, p, alpha);
            const double fh = weighted_distance(f, h, p, alpha);
            const double hg = weighted_distance(h, g, p, alpha);
            CHECK(fg <= fh + hg + 1e-9);
            const double nf = weighted_norm(f, p, alpha);
            CHECK(weighted_norm(scaled(f, -3.5), p, alpha) == doctest::Approx(3.5 * nf).epsilon(1e-12));
        }
    }
}

TEST_CASE("error estimate bounds the change under doubling")
{
    // |f|^p must be smooth for the estimate to be meaningful: f keeps its sign
    // for p = 1, and the kinks of |f|^3 at sign changes are mild
    const FunctionHandle f([](double x) { return std::exp(x) * (1.5 + std::cos(5 * x)); });
    const FunctionHandle g([](double x) { return std::exp(x) * std::cos(5 * x); });
    const auto abs = FunctionHandle([](double x) { return std::abs(x - 0.2); }).with_breakpoints({0.2});
    const std::vector<std::pair<FunctionHandle, bool>> cases{{f, true}, {g, false}, {abs, true}};
    for (const auto& [h, allow_p1] : cases) {
        for (Exponent p : {Exponent::finite(1.0), Exponent::finite(3.0), inf}) {
            if (!allow_p1 && p == Exponent::finite(1.0))
                continue;
            NormResolution res;
            res.quadrature_nodes = 64;
            res.sup_grid = 257;
            const NormEstimate est = weighted_norm_estimate(h, p, 0.5, res);
            NormResolution fine = res;
            fine.quadrature_nodes *= 2;
            fine.sup_grid = 2 * fine.sup_grid - 1;
            const double doubled = weighted_norm(h, p, 0.5, fine);
            CHECK(std::abs(doubled - est.value) <= std::max(est.error_estimate, 1e-14));
        }
    }
}

TEST_CASE("weighted sup matches a dense brute-force scan")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_poly(rng, 12);
        for (double alpha : {0.0, 0.5, 1.0}) {
            double brute = 0.0;
            const int n = 1000000;
            for (int i = 0; i <= n; ++i) {
                const double x = -1.0 + 2.0 * i / n;
                brute = std::max(brute, std::abs(f(x)) * std::pow(1 - x * x, alpha));
            }
            const double lib = weighted_norm(f, inf, alpha);
            CHECK(lib >= brute - 1e-12);
            CHECK(lib - brute <= 1e-8);
            CHECK(std::abs(lib - weighted_norm(f, inf, alpha, {256, 513, 60})) <= 1e-12);
        }
    }
}

TEST_CASE("sampled functions")
{
    const SampledFunction lin({-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, 1);
    CHECK(lin(0.5) == doctest::Approx(0.5));
    CHECK(lin(-0.25) == doctest::Approx(0.25));

    std::vector<double> xs, ys;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(-1.0 + 0.1 * i);
        ys.push_back(std::tanh(4 * xs.back()));
    }
    const SampledFunction cub(xs, ys);
    for (size_t i = 0; i < xs.size(); ++i)
        CHECK(cub(xs[i]) == ys[i]);
    // monotone data stays monotone between samples
    double prev = cub(-1.0);
    for (int i = 1; i <= 400; ++i) {
        const double v = cub(-1.0 + 0.005 * i);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(SampledFunction({0.0, 0.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(SampledFunction({0.0, 1.5}, {1.0, 2.0}), DomainError);

    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "gtrans_test_good.csv";
    {
        std::ofstream out(good);
        out << "x,value\n-1,1\n0,0\n1,1\n";
    }
    const SampledFunction loaded = load_sampled_csv(good, 1);
    CHECK(loaded.abscissae().size() == 3);
    CHECK(loaded(0.5) == doctest::Approx(0.5));
    CHECK(weighted_norm(loaded.to_handle(), inf, 0.0) == doctest::Approx(1.0));
    CHECK(weighted_norm(loaded.to_handle(), Exponent::finite(1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-13));

    const auto bad = dir / "gtrans_test_bad.csv";
    {
        std::ofstream out(bad);
        out << "0.5,1\n0.1,2\n";
    }
    CHECK_THROWS_AS(load_sampled_csv(bad), DomainError);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}
