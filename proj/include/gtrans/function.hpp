#pragma once

#include "gtrans/jacobi.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gtrans {

/// A real function on [-1, 1]: an evaluation rule, optional analytic first and
/// second derivatives, and a provenance label. Handles are immutable; the
/// `with_*` builders return modified copies.
///
/// Breakpoints mark interior points where the function (or a low derivative)
/// is not smooth. Integrators split their panels there.
class FunctionHandle {
public:
    using Rule = std::function<double(double)>;

    FunctionHandle() = default;
    explicit FunctionHandle(Rule rule, std::string label = "user");

    static FunctionHandle constant(double c);
    static FunctionHandle identity();
    /// Handle backed by a Jacobi expansion; derivatives are analytic.
    static FunctionHandle polynomial(PolynomialCoeffs p, std::string label = "poly");

    FunctionHandle with_derivatives(Rule first, Rule second) const;
    FunctionHandle with_breakpoints(std::vector<double> points) const;
    FunctionHandle with_label(std::string label) const;

    double operator()(double x) const { return rule_(x); }

    bool has_derivatives() const { return static_cast<bool>(first_) && static_cast<bool>(second_); }
    double first_derivative(double x) const { return first_(x); }
    double second_derivative(double x) const { return second_(x); }

    const std::optional<PolynomialCoeffs>& polynomial() const { return poly_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::string& label() const { return label_; }

    explicit operator bool() const { return static_cast<bool>(rule_); }

private:
    Rule rule_;
    Rule first_;
    Rule second_;
    std::optional<PolynomialCoeffs> poly_;
    std::vector<double> breakpoints_;
    std::string label_ = "user";
};

/// f - g, keeping derivatives/breakpoints when both sides have them.
FunctionHandle difference(const FunctionHandle& f, const FunctionHandle& g);

/// c * f.
FunctionHandle scaled(const FunctionHandle& f, double c);

/// Tabulated data with a piecewise interpolant. Order 1 is linear; order 3 is
/// the monotone-preserving cubic Hermite (Fritsch-Carlson) interpolant. Values
/// outside the tabulated range are held constant.
class SampledFunction {
public:
    SampledFunction(std::vector<double> abscissae, std::vector<double> values, int order = 3);

    double operator()(double x) const;

    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    int order() const { return order_; }

    FunctionHandle to_handle(std::string label = "user_csv") const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slopes_;
    int order_;
};

/// Reads a two-column CSV (x,value), optional header line, abscissae strictly
/// increasing inside [-1, 1]. Throws DomainError with the offending line.
SampledFunction load_sampled_csv(const std::filesystem::path& path, int order = 3);

} // namespace gtrans
