#include "doctest.h"
#include "oracles.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"
#include "gtrans/spectral.hpp"
#include "gtrans/translation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace gtrans;

namespace {

FunctionHandle basis_poly(int n, JacobiBasis basis)
{
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    return FunctionHandle::polynomial(PolynomialCoeffs(basis, std::move(c)));
}

FunctionHandle abs_handle()
{
    return FunctionHandle([](double x) { return std::abs(x); }, "abs").with_breakpoints({0.0});
}

} // namespace

TEST_CASE("geodesic frame relations")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), ut(-3.1, 3.1), up(0.0, std::numbers::pi);
    for (int i = 0; i < 2000; ++i) {
        const double x = ux(rng), t = ut(rng), p1 = up(rng);
        const GeodesicFrame g = geodesic_frame(x, t, p1);
        const double s1 = std::sqrt(1.0 - x * x);
        CHECK(std::abs(g.R - (x * std::cos(t) - std::cos(p1) * s1 * std::sin(t))) <= 1e-12);
        CHECK(std::abs(g.sin_theta_cos_phi - (x * std::sin(t) + s1 * std::cos(t) * std::cos(p1))) <= 1e-12);
        CHECK(std::abs(g.sin_theta_sin_phi - s1 * std::sin(p1)) <= 1e-12);
        const double r2 = g.sin_theta_cos_phi * g.sin_theta_cos_phi + g.sin_theta_sin_phi * g.sin_theta_sin_phi;
        CHECK(std::abs(r2 - (1.0 - g.R * g.R)) <= 1e-12);
        CHECK(g.R >= -1.0);
        CHECK(g.R <= 1.0);
        CHECK(g.phi >= 0.0);
        CHECK(g.phi <= std::numbers::pi);
    }

    const GeodesicFrame a = geodesic_frame(0.3, 0.0, 1.1);
    CHECK(a.R == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(a.phi == doctest::Approx(1.1).epsilon(1e-14));
    const GeodesicFrame b = geodesic_frame(1.0, 0.7, 2.0);
    CHECK(b.R == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(b.phi == 0.0);
    const GeodesicFrame c = geodesic_frame(-0.4, 1.3, std::numbers::pi / 2);
    CHECK(c.R == doctest::Approx(-0.4 * std::cos(1.3)).epsilon(1e-14));
    // R = 1 exactly: sin(theta) = 0 and phi falls back to 0
    const GeodesicFrame d = geodesic_frame(std::cos(0.5), -0.5, 0.0);
    CHECK(d.phi == 0.0);
}

TEST_CASE("translation of the constant function is the constant")
{
    const auto one = FunctionHandle::constant(1.0);
    for (double mu : {0.0, 1.0, 2.0, 3.0}) {
        for (double x : {-0.99, -0.6, 0.0, 0.25, 0.9}) {
            for (double t : {-2.6, -1.2, 0.0, 0.4, 2.0})
                CHECK(std::abs(asym_translate(one, t, mu, x) - 1.0) <= 1e-10);
        }
    }
    for (double x : {-0.6, 0.0, 0.9})
        for (double t : {-1.2, 0.4})
            CHECK(std::abs(asym_translate(one, t, 5.0, x) - 1.0) <= 1e-10);
    // the clipped endpoint loses digits to cancellation, more so for larger mu
    for (double t : {-2.0, 0.4, 2.6}) {
        CHECK(std::abs(asym_translate(one, t, 1.0, 1.0) - 1.0) <= 1e-8);
        CHECK(std::abs(asym_translate(one, t, 1.0, -1.0) - 1.0) <= 1e-8);
    }
    CHECK_NOTHROW(kernel_self_test());
}

TEST_CASE("closed form of the translated identity for mu = 1")
{
    const auto id = FunctionHandle::identity();
    for (double x : {-0.95, -0.3, 0.0, 0.5, 0.8}) {
        for (double t : {-2.9, -1.0, 0.3, 1.5, 2.5}) {
            const double expect = x * (2.0 * std::cos(t) - 1.0);
            CHECK(asym_translate(id, t, 1.0, x) == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
            // independent route: the literal integral by Simpson's rule
            CHECK(oracle::translation_literal([](double r) { return r; }, t, 1, x) ==
                  doctest::Approx(expect).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("library agrees with the literal integral")
{
    auto g = [](double r) { return std::exp(r) * std::cos(3.0 * r); };
    const FunctionHandle f(g);
    for (int mu : {1, 2, 3}) {
        for (double x : {-0.7, 0.1, 0.6}) {
            for (double t : {-2.0, 0.5, 1.7}) {
                const double ref = oracle::translation_literal(g, t, mu, x);
                CHECK(asym_translate(f, t, mu, x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("translation is even in t and the identity at t = 0")
{
    const auto abs = abs_handle();
    const FunctionHandle smooth([](double x) { return std::sin(2.0 * x) + x * x; });
    for (double mu : {1.0, 2.0}) {
        for (double x : {-0.8, -0.1, 0.45}) {
            for (double t : {0.3, 1.4, 2.7}) {
                CHECK(std::abs(asym_translate(smooth, t, mu, x) - asym_translate(smooth, -t, mu, x)) <= 1e-12);
                CHECK(std::abs(asym_translate(abs, t, mu, x) - asym_translate(abs, -t, mu, x)) <= 1e-12);
            }
            CHECK(std::abs(asym_translate(smooth, 0.0, mu, x) - smooth(x)) <= 1e-12);
            CHECK(std::abs(asym_translate(abs, 0.0, mu, x) - std::abs(x)) <= 1e-12);
        }
    }
}

TEST_CASE("Jacobi polynomials are eigenfunctions for integer mu")
{
    for (double mu : {1.0, 2.0, 3.0}) {
        for (int n : {0, 1, 2, 5, 9, 14, 20}) {
            const auto rn = basis_poly(n, {mu, mu});
            for (double x : {-0.95, -0.5, 0.0, 0.3, 0.9}) {
                for (double t : {-2.5, -1.0, 0.2, 1.8, 2.6}) {
                    const double expect = jacobi_eval(n, {mu, mu}, x) * jacobi_eval(n, {0.0, 2.0 * mu}, std::cos(t));
                    CHECK(std::abs(asym_translate(rn, t, mu, x) - expect) <= 1e-8);
                }
            }
        }
    }
}

TEST_CASE("non-integer mu keeps the identities only inside the branch-free region")
{
    const double mu = 0.5;
    const auto one = FunctionHandle::constant(1.0);
    // |t| < theta1 < pi - |t|
    for (double theta1 : {0.8, 1.2, 1.9}) {
        for (double t : {0.1, 0.4, 0.7}) {
            if (!(t < theta1 && theta1 < std::numbers::pi - t))
                continue;
            CHECK(std::abs(asym_translate(one, t, mu, std::cos(theta1)) - 1.0) <= 1e-10);
        }
    }
    // outside it the principal branch no longer reproduces tau 1 = 1
    CHECK(std::abs(asym_translate(one, 2.0, mu, -0.95) - 1.0) > 1e-3);
}

TEST_CASE("flipped kernel breaks the identities")
{
    TranslationConfig cfg;
    cfg.kernel = KernelVariant::flipped_sign;
    const auto one = FunctionHandle::constant(1.0);
    double worst = 0.0;
    for (double x : {-0.5, 0.2, 0.7})
        for (double t : {0.5, 1.5})
            worst = std::max(worst, std::abs(asym_translate(one, t, 1.0, x, cfg) - 1.0));
    CHECK(worst > 1e-3);
}

TEST_CASE("symmetric operator")
{
    const auto one = FunctionHandle::constant(1.0);
    const FunctionHandle f([](double x) { return std::exp(x); });
    for (double mu : {0.0, 0.5, 1.0, 2.5}) {
        for (double x : {-0.9, 0.0, 0.6}) {
            CHECK(sym_translate(one, 0.3, mu, x) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(sym_translate(f, 1.0, mu, x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
        }
    }
    // Gegenbauer product formula against a tanh-sinh oracle of the defining integral.
    // With the weight (1-z^2)^{mu-1/2} the multiplicative basis is (mu, mu).
    for (double mu : {0.5, 1.0, 2.0}) {
        const double lam = mu;
        for (int n : {1, 3, 6, 10}) {
            const auto rn = basis_poly(n, {lam, lam});
            for (double x : {-0.7, 0.2, 0.85}) {
                for (double y : {-0.4, 0.5}) {
                    const double sx = std::sqrt(1 - x * x), sy = std::sqrt(1 - y * y);
                    auto w = [&](double z) { return std::pow(1 - z * z, mu - 0.5); };
                    const double num = oracle::tanh_sinh(
                        [&](double z) { return w(z) * oracle::jacobi_normalized(n, lam, lam, x * y - z * sx * sy); });
                    const double den = oracle::tanh_sinh(w);
                    const double lib = sym_translate(rn, y, mu, x);
                    CHECK(lib == doctest::Approx(num / den).epsilon(1e-9).scale(1.0));
                    CHECK(lib == doctest::Approx(jacobi_eval(n, {lam, lam}, x) * jacobi_eval(n, {lam, lam}, y))
                                     .epsilon(1e-11)
                                     .scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("duality of the translation")
{
    for (double mu : {1.0, 2.0}) {
        for (int i = 0; i <= 8; ++i) {
            for (int j = 0; j <= 8; j += 2) {
                const auto f = basis_poly(i, {mu, mu});
                const FunctionHandle g = FunctionHandle::polynomial(
                    PolynomialCoeffs({mu, mu}, std::vector<double>(j + 1, 0.5)));
                for (double y : {-0.6, 0.3, 0.9}) {
                    const auto [lhs, rhs] = duality_check(f, g, y, mu);
                    CHECK(std::abs(lhs - rhs) <= 1e-9);
                }
            }
        }
    }
    const auto [l1, r1] = duality_check(basis_poly(1, {1, 1}), basis_poly(2, {1, 1}), 0.3, 1.0);
    CHECK(std::abs(l1) <= 1e-12);
    CHECK(std::abs(r1) <= 1e-12);

    const FunctionHandle e([](double x) { return std::exp(x); });
    const auto [l2, r2] = duality_check(e, FunctionHandle::constant(1.0), 0.3, 2.0);
    CHECK(l2 == doctest::Approx(r2).epsilon(1e-11));
}

TEST_CASE("Fourier-Jacobi coefficients are carried by the y-factor")
{
    const double mu = 1.0;
    const FunctionHandle f([](double x) { return std::exp(x) + std::sin(3 * x); });
    const QuadratureRule& rule = gauss_jacobi_rule(48, {mu, mu});
    for (double t : {0.4, 1.3, 2.2}) {
        const auto ft = asym_translated(f, t, mu);
        for (int n = 0; n <= 10; ++n) {
            const double lhs = fourier_jacobi_coeff(ft, n, mu, rule);
            const double rhs = fourier_jacobi_coeff(f, n, mu, rule) * jacobi_eval(n, {0.0, 2 * mu}, std::cos(t));
            CHECK(std::abs(lhs - rhs) <= 1e-8);
        }
    }
}

TEST_CASE("norm bound ratio")
{
    const SpaceParams space{Exponent::infinity(), 0.5, 1.0};
    for (double t : {0.0, 0.7, 1.9, 2.8}) {
        const double c2 = std::pow(std::cos(t / 2), 2.0);
        const TranslationBound one = translate_norm_bound_check(FunctionHandle::constant(1.0), t, space);
        CHECK(one.ratio == doctest::Approx(c2).epsilon(1e-9));
        const TranslationBound id = translate_norm_bound_check(FunctionHandle::identity(), t, space);
        CHECK(id.ratio == doctest::Approx(std::abs(2 * std::cos(t) - 1) * c2).epsilon(1e-8));
        CHECK(id.ratio <= 3.0);
    }
    CHECK_THROWS_AS(translate_norm_bound_check(FunctionHandle::constant(0.0), 0.5, space), ContractError);
    CHECK_THROWS_AS(translate_norm_bound_check(FunctionHandle::identity(), 0.5, {Exponent::infinity(), 0.6, 0.0}),
                    DomainError);
}

TEST_CASE("translation rejects t outside (-pi, pi)")
{
    CHECK_THROWS_AS(asym_translate(FunctionHandle::identity(), std::numbers::pi, 1.0, 0.2), DomainError);
    CHECK_THROWS_AS(asym_translate(FunctionHandle::identity(), 0.3, -1.0, 0.2), DomainError);
}

TEST_CASE("translation near the ends keeps its accuracy")
{
    // 1 - x^2 = 4/5 (1 - R_2^{(1,1)}), so tau_t of it is 4/5 (1 - R_2(x) R_2^{(0,2)}(cos t))
    const FunctionHandle f = FunctionHandle::polynomial(PolynomialCoeffs({1.0, 1.0}, {0.8, 0.0, -0.8}));
    for (double x : {1.0 - 1e-9, -(1.0 - 1e-7), 0.9995}) {
        for (double t : {1e-3, 0.01, 2.6}) {
            const double xc = std::clamp(x, -(1.0 - 1e-9), 1.0 - 1e-9);
            const double expect =
                0.8 * (1.0 - oracle::jacobi_normalized(2, 1.0, 1.0, xc) * oracle::jacobi_normalized(2, 0.0, 2.0, std::cos(t)));
            INFO("x=" << x << " t=" << t);
            CHECK(asym_translate(f, t, 1.0, x) == doctest::Approx(expect).epsilon(1e-6).scale(0.0));
        }
    }
    // tau 1 = 1 where the prefactor is ~1e-14
    for (double mu : {2.0, 3.0})
        CHECK(std::abs(asym_translate(FunctionHandle::constant(1.0), 2.64, mu, 0.9997) - 1.0) < 1e-11);
}

TEST_CASE("symmetric operator on a function with a kink")
{
    const auto abs = abs_handle();
    const double pi = std::numbers::pi;
    for (double mu : {0.0, 1.0, 1.5}) {
        for (double x : {-0.6, 0.1, 0.7}) {
            for (double y : {-0.3, 0.4, 0.95}) {
                const double sx = std::sqrt(1 - x * x), sy = std::sqrt(1 - y * y);
                // z = cos(theta) removes the endpoint singularity; tanh-sinh on
                // each side of the kink theta*
                const double ts = std::acos(std::clamp(x * y / (sx * sy), -1.0, 1.0));
                auto piece = [&](double a, double b, bool with_f) {
                    const double h = 0.5 * (b - a), m = 0.5 * (b + a);
                    return h * oracle::tanh_sinh(
                                   [&](double u) {
                                       const double th = m + h * u;
                                       const double w = std::pow(std::sin(th), 2 * mu);
                                       return with_f ? w * std::abs(x * y - std::cos(th) * sx * sy) : w;
                                   },
                                   1.0 / 256.0);
                };
                const double ref = (piece(0.0, ts, true) + piece(ts, pi, true)) / piece(0.0, pi, false);
                CHECK(sym_translate(abs, y, mu, x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
            }
        }
    }
}
