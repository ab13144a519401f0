#include "gtrans/function.hpp"

#include "gtrans/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gtrans {

FunctionHandle::FunctionHandle(Rule rule, std::string label)
    : rule_(std::move(rule)), label_(std::move(label))
{
}

FunctionHandle FunctionHandle::constant(double c)
{
    FunctionHandle h([c](double) { return c; }, "constant");
    h.first_ = [](double) { return 0.0; };
    h.second_ = [](double) { return 0.0; };
    h.poly_ = PolynomialCoeffs({0.0, 0.0}, {c});
    return h;
}

FunctionHandle FunctionHandle::identity()
{
    FunctionHandle h([](double x) { return x; }, "identity");
    h.first_ = [](double) { return 1.0; };
    h.second_ = [](double) { return 0.0; };
    h.poly_ = PolynomialCoeffs({0.0, 0.0}, {0.0, 1.0});
    return h;
}

FunctionHandle FunctionHandle::polynomial(PolynomialCoeffs p, std::string label)
{
    auto shared = std::make_shared<const PolynomialCoeffs>(p);
    FunctionHandle h([shared](double x) { return (*shared)(x); }, std::move(label));
    h.first_ = [shared](double x) { return shared->derivative(x, 1); };
    h.second_ = [shared](double x) { return shared->derivative(x, 2); };
    h.poly_ = std::move(p);
    return h;
}

FunctionHandle FunctionHandle::with_derivatives(Rule first, Rule second) const
{
    FunctionHandle h = *this;
    h.first_ = std::move(first);
    h.second_ = std::move(second);
    return h;
}

FunctionHandle FunctionHandle::with_breakpoints(std::vector<double> points) const
{
    FunctionHandle h = *this;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::erase_if(points, [](double p) { return !(p > -1.0 && p < 1.0); });
    h.breakpoints_ = std::move(points);
    return h;
}

FunctionHandle FunctionHandle::with_label(std::string label) const
{
    FunctionHandle h = *this;
    h.label_ = std::move(label);
    return h;
}

namespace {

std::vector<double> merged_breakpoints(const FunctionHandle& f, const FunctionHandle& g)
{
    std::vector<double> out = f.breakpoints();
    out.insert(out.end(), g.breakpoints().begin(), g.breakpoints().end());
    return out;
}

} // namespace

FunctionHandle difference(const FunctionHandle& f, const FunctionHandle& g)
{
    FunctionHandle h([f, g](double x) { return f(x) - g(x); }, f.label() + "-" + g.label());
    if (f.has_derivatives() && g.has_derivatives()) {
        h = h.with_derivatives([f, g](double x) { return f.first_derivative(x) - g.first_derivative(x); },
                               [f, g](double x) { return f.second_derivative(x) - g.second_derivative(x); });
    }
    return h.with_breakpoints(merged_breakpoints(f, g));
}

FunctionHandle scaled(const FunctionHandle& f, double c)
{
    FunctionHandle h([f, c](double x) { return c * f(x); }, f.label());
    if (f.has_derivatives()) {
        h = h.with_derivatives([f, c](double x) { return c * f.first_derivative(x); },
                               [f, c](double x) { return c * f.second_derivative(x); });
    }
    return h.with_breakpoints(f.breakpoints());
}

SampledFunction::SampledFunction(std::vector<double> abscissae, std::vector<double> values, int order)
    : x_(std::move(abscissae)), y_(std::move(values)), order_(order)
{
    if (x_.size() != y_.size())
        throw DomainError("sampled function: abscissae and values differ in length");
    if (x_.size() < 2)
        throw DomainError("sampled function: need at least two samples");
    if (order_ != 1 && order_ != 3)
        throw DomainError("sampled function: interpolation order must be 1 or 3");
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(x_[i] >= -1.0 && x_[i] <= 1.0))
            throw DomainError("sampled function: abscissa " + std::to_string(x_[i]) + " outside [-1,1]");
        if (i > 0 && !(x_[i] > x_[i - 1]))
            throw DomainError("sampled function: abscissae not strictly increasing at index " +
                              std::to_string(i));
        if (!std::isfinite(y_[i]))
            throw DomainError("sampled function: non-finite value at index " + std::to_string(i));
    }

    // Fritsch-Carlson slopes.
    const std::size_t n = x_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    slopes_.assign(n, 0.0);
    slopes_[0] = secant[0];
    slopes_[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            slopes_[i] = 0.0;
        } else {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            const double w0 = 2.0 * h1 + h0;
            const double w1 = h1 + 2.0 * h0;
            slopes_[i] = (w0 + w1) / (w0 / secant[i - 1] + w1 / secant[i]);
        }
    }
}

double SampledFunction::operator()(double x) const
{
    if (x <= x_.front())
        return y_.front();
    if (x >= x_.back())
        return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    if (order_ == 1)
        return y_[i] + s * (y_[i + 1] - y_[i]);
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * slopes_[i + 1];
}

FunctionHandle SampledFunction::to_handle(std::string label) const
{
    auto shared = std::make_shared<const SampledFunction>(*this);
    return FunctionHandle([shared](double x) { return (*shared)(x); }, std::move(label))
        .with_breakpoints(x_);
}

namespace {

bool parse_row(const std::string& line, double& x, double& y)
{
    std::string normalized = line;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string extra;
    if (!(in >> x >> y))
        return false;
    return !(in >> extra);
}

} // namespace

SampledFunction load_sampled_csv(const std::filesystem::path& path, int order)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open CSV file " + path.string());
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    int line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        double x = 0.0;
        double y = 0.0;
        if (!parse_row(line, x, y)) {
            if (!seen_data && xs.empty()) {
                seen_data = true; // header line
                continue;
            }
            throw DomainError(path.string() + ":" + std::to_string(line_no) + ": malformed row '" + line + "'");
        }
        seen_data = true;
        xs.push_back(x);
        ys.push_back(y);
    }
    try {
        return SampledFunction(std::move(xs), std::move(ys), order);
    } catch (const DomainError& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

} // namespace gtrans
