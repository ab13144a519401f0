#pragma once

#include "gtrans/function.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gtrans {

/// Parameters of the corpus families. Each family reads only its own fields.
struct CorpusParams {
    double gamma = 1.0;             ///< abs_power exponent
    double s = 1.0;                 ///< bump exponent, jacobi_series decay
    int terms = 16;                 ///< jacobi_series K
    double mu = 1.0;                ///< jacobi_series / poly basis (mu, mu)
    std::vector<double> coeffs;     ///< poly
    std::filesystem::path csv_path; ///< user_csv
    int csv_order = 3;
};

struct CorpusFunction {
    std::string name;
    std::string description; ///< family and parameters, e.g. "abs_power(gamma=1)"
    FunctionHandle handle;
    bool bounded_d = false;  ///< whether D_{x,mu,mu} f is bounded on [-1, 1]
};

/// abs_power: |x|^gamma; jacobi_series: sum_{k=1}^K k^{-s} R_k^{(mu,mu)};
/// bump: (1-x^2)^s; runge: 1/(1+25x^2); poly: sum c_k R_k^{(mu,mu)};
/// user_csv: monotone cubic (or linear) interpolant of a two-column CSV.
/// Integer bump exponents, jacobi_series and poly give polynomial handles.
/// Throws DomainError for an unknown name or invalid parameters.
CorpusFunction corpus(const std::string& name, const CorpusParams& params = {});

/// Family names in a fixed order, with a one-line description each.
std::vector<std::pair<std::string, std::string>> corpus_catalog();

} // namespace gtrans
