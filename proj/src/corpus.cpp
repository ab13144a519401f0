#include "gtrans/corpus.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/spectral.hpp"

#include <cmath>
#include <sstream>

namespace gtrans {

namespace {

std::string fmt(double v)
{
    std::ostringstream o;
    o << v;
    return o.str();
}

bool is_integer(double v)
{
    return std::abs(v - std::round(v)) < 1e-12;
}

} // namespace

std::vector<std::pair<std::string, std::string>> corpus_catalog()
{
    return {
        {"abs_power", "|x|^gamma (gamma > 0)"},
        {"jacobi_series", "sum_{k=1}^{K} k^{-s} R_k^{(mu,mu)}(x)"},
        {"bump", "(1-x^2)^s (s > 0)"},
        {"runge", "1/(1+25x^2)"},
        {"poly", "sum_k c_k R_k^{(mu,mu)}(x)"},
        {"user_csv", "interpolated two-column CSV x,value"},
    };
}

CorpusFunction corpus(const std::string& name, const CorpusParams& params)
{
    CorpusFunction out;
    out.name = name;
    if (name == "abs_power") {
        const double g = params.gamma;
        if (!(g > 0.0) || !std::isfinite(g))
            throw DomainError("corpus abs_power: gamma must be positive, got " + fmt(g));
        out.description = "abs_power(gamma=" + fmt(g) + ")";
        out.handle = FunctionHandle([g](double x) { return std::pow(std::abs(x), g); }, out.description)
                         .with_breakpoints({0.0});
        out.bounded_d = g >= 2.0;
    } else if (name == "jacobi_series") {
        if (params.terms < 1)
            throw DomainError("corpus jacobi_series: K must be >= 1");
        if (!(params.mu >= 0.0))
            throw DomainError("corpus jacobi_series: mu must be >= 0");
        std::vector<double> c(params.terms + 1, 0.0);
        for (int k = 1; k <= params.terms; ++k)
            c[k] = std::pow(k, -params.s);
        out.description = "jacobi_series(s=" + fmt(params.s) + ",K=" + std::to_string(params.terms) +
                          ",mu=" + fmt(params.mu) + ")";
        out.handle = FunctionHandle::polynomial(PolynomialCoeffs({params.mu, params.mu}, std::move(c)), out.description);
        out.bounded_d = true;
    } else if (name == "bump") {
        const double s = params.s;
        if (!(s > 0.0) || !std::isfinite(s))
            throw DomainError("corpus bump: s must be positive, got " + fmt(s));
        out.description = "bump(s=" + fmt(s) + ")";
        const FunctionHandle rule([s](double x) { return std::pow(std::max(0.0, (1.0 - x) * (1.0 + x)), s); },
                                  out.description);
        if (is_integer(s)) {
            const int deg = 2 * static_cast<int>(std::round(s));
            out.handle = FunctionHandle::polynomial(project(rule, deg, {0.0, 0.0}, deg + 1), out.description);
        } else {
            out.handle = rule;
        }
        out.bounded_d = s >= 1.0;
    } else if (name == "runge") {
        out.description = "runge";
        out.handle = FunctionHandle([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, out.description)
                         .with_derivatives(
                             [](double x) {
                                 const double d = 1.0 + 25.0 * x * x;
                                 return -50.0 * x / (d * d);
                             },
                             [](double x) {
                                 const double d = 1.0 + 25.0 * x * x;
                                 return (3750.0 * x * x - 50.0) / (d * d * d);
                             });
        out.bounded_d = true;
    } else if (name == "poly") {
        if (params.coeffs.empty())
            throw DomainError("corpus poly: no coefficients given");
        if (!(params.mu >= 0.0))
            throw DomainError("corpus poly: mu must be >= 0");
        out.description = "poly(degree=" + std::to_string(params.coeffs.size() - 1) + ",mu=" + fmt(params.mu) + ")";
        out.handle = FunctionHandle::polynomial(PolynomialCoeffs({params.mu, params.mu}, params.coeffs), out.description);
        out.bounded_d = true;
    } else if (name == "user_csv") {
        if (params.csv_path.empty())
            throw DomainError("corpus user_csv: no CSV path given");
        const SampledFunction sf = load_sampled_csv(params.csv_path, params.csv_order);
        out.description = "user_csv(" + params.csv_path.filename().string() + ")";
        out.handle = sf.to_handle(out.description);
        out.bounded_d = false;
    } else {
        throw DomainError("corpus: unknown function family '" + name + "'");
    }
    return out;
}

} // namespace gtrans
