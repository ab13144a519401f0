#pragma once

#include "gtrans/approx.hpp"
#include "gtrans/corpus.hpp"
#include "gtrans/smoothness.hpp"
#include "gtrans/translation.hpp"

#include <filesystem>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gtrans {

/// Outcome of one check. Identity checks compare max_deviation with
/// tolerance; inequality checks compare the observed ratio range with a
/// spread limit. Negative controls are expected to fail.
struct VerificationReport {
    std::string name;
    std::string kind = "identity"; ///< "identity" or "inequality"
    bool control = false;
    std::string grid;
    double max_deviation = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    double ratio_min = std::numeric_limits<double>::quiet_NaN();
    double ratio_max = std::numeric_limits<double>::quiet_NaN();
    double spread_limit = std::numeric_limits<double>::quiet_NaN();
    bool passed = false;
    std::string detail;
    double runtime_seconds = 0.0; ///< console only; never written to files

    /// passed for ordinary checks, !passed for controls
    bool as_expected() const { return control ? !passed : passed; }
};

/// A numeric table; NaN cells mark a zero denominator.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentOutput {
    std::vector<Table> tables;
    std::vector<VerificationReport> reports;
};

/// 0 iff every ordinary check passed and every control failed.
int exit_code(const std::vector<VerificationReport>& reports);

/// x_i = cos((2i+1) pi / (2n)), i = 0..n-1.
std::vector<double> identity_x_grid(int n);
/// n points evenly spaced on [-t_max, t_max].
std::vector<double> identity_t_grid(int n, double t_max);

/// Random polynomial of exact degree `degree` in the (mu, mu) basis, with
/// standard normal coefficients.
PolynomialCoeffs random_polynomial(int degree, double mu, std::mt19937_64& rng);

struct IdentitySuiteConfig {
    std::vector<double> mus{0.5, 1.0, 2.0, 3.0};
    int n_max = 20;
    int x_points = 41;
    int t_points = 41;
    double t_max = std::numbers::pi - 0.5;
    double tol_normalization = 1e-10;
    double tol_eigen = 1e-8;
    double tol_duality = 1e-9;
    double tol_transport = 1e-8;
    double tol_closed_form = 1e-10;
    double tol_eigenvalue_coeffs = 1e-12;
    double tol_eigenvalue_pointwise = 1e-8;
    double tol_modulus = 1e-7;
    int duality_degree = 8;
    int duality_pairs = 4;
    int transport_degree = 8;
    unsigned long seed = 1;
    bool include_controls = true;
    TranslationConfig translation;
};

/// Translation identity suite: tau 1 = 1, the Jacobi eigenfunction property,
/// duality, Fourier-Jacobi coefficient transport, evenness in t, tau_0 = id,
/// the closed form of tau_t(id) and its modulus for mu = 1, and the
/// Sturm-Liouville eigenvalues. Controls: the flipped kernel and a wrong
/// eigenvalue -n(n+2mu).
std::vector<VerificationReport> verify_translation_identities(const IdentitySuiteConfig& cfg = {});

struct CommutationConfig {
    int x_points = 7;  ///< on [-x_max, x_max]
    int t_points = 7;  ///< on [t_min, t_max]
    double x_max = 0.9;
    double t_min = 0.1;
    double t_max = std::numbers::pi - 0.5;
    double tolerance = 1e-6;
    bool control = false; ///< use D_{y,2mu,0} in place of D_{y,0,2mu}; must fail
    TranslationConfig translation;
};

/// tau_t(D f), D_x tau_t f and D_{y,0,2mu} tau f (y = cos t) for a polynomial
/// f; the x- and y-operators use 7-point central differences with step
/// min(0.02, (1-|.|)/4). Reports the largest pairwise deviation.
VerificationReport verify_commutation(double mu, const PolynomialCoeffs& f, const CommutationConfig& cfg = {});

struct IntegralIdentityConfig {
    std::vector<double> xs{-0.7, -0.2, 0.3, 0.8};
    double tolerance = 1e-6;
    int initial_nodes = 8;
    int max_doublings = 6;
    double quadrature_tolerance = 1e-12;
    bool control = false; ///< inner weight (1+u)^{2mu+1} in place of (1+u)^{2mu}; must fail
    TranslationConfig translation;
};

/// Both integral representations of tau_y f - f (anchored at y = 1) and
/// tau_y f - tau_0 f, plus their t-parameterized forms, for a polynomial f.
/// Throws NumericError with the panel trace when a nested rule does not settle.
std::vector<VerificationReport> verify_integral_identity(const PolynomialCoeffs& f, double y, double mu,
                                                         const IntegralIdentityConfig& cfg = {});

struct MarkovConfig {
    std::vector<int> degrees{8, 16, 32};
    int draws = 200;
    double rho = 0.5;
    double factor = 2.0; ///< allowed change of the maxima under degree doubling
    unsigned long seed = 1;
    NormResolution resolution;
};

/// Max of r1 and r2 over random polynomials of each degree (standard normal
/// coefficients in the orthonormal (mu, mu) basis); the reports pass when the
/// maxima change by less than `factor`, up or down, between consecutive degrees.
ExperimentOutput verify_markov(Exponent p, double alpha, double mu, const MarkovConfig& cfg = {});

struct JacksonExperimentConfig {
    std::vector<int> ns; ///< empty selects 2..64
    BestApproxConfig approx;
    ModulusConfig modulus;
    bool rate_check = false; ///< omega n^2 spread <= rate_factor (functions with bounded D f)
    double rate_factor = 4.0;
};

/// Columns n, E_n, omega(f,1/n), S(n), omega/E_n, omega/S. The reports assert
/// min omega/E_n > 0 and max omega/S < inf, with the spreads recorded.
ExperimentOutput run_jackson_experiment(const CorpusFunction& f, const SpaceParams& space,
                                        const JacksonExperimentConfig& cfg = {});

struct JacksonOperatorConfig {
    std::vector<int> ns{8, 16, 32, 64};
    double rate_factor = 4.0;
    JacksonConfig jackson;
    BestApproxConfig approx;
};

/// Q_n f for each n: above-degree mass, ||f - Q_n|| n^2 spread, and
/// ||f - Q_n|| >= E_n - 1e-8.
ExperimentOutput verify_jackson_operator(const CorpusFunction& f, const SpaceParams& space,
                                         const JacksonOperatorConfig& cfg = {});

struct EquivalenceExperimentConfig {
    std::vector<double> deltas; ///< empty selects pi/2^k, k = 1..8
    ModulusConfig modulus;
    KFunctionalConfig k_functional;
    double spread_limit = 100.0;
};

/// Columns delta, omega, K, rho, rho cos^{2mu}(delta/2).
ExperimentOutput run_equivalence_experiment(const CorpusFunction& f, const SpaceParams& space,
                                            const EquivalenceExperimentConfig& cfg = {});

/// Writes every table as <out>/<name>.csv or .json and <out>/summary.json with
/// the checks, the overall status and the echoed configuration. Output is a
/// pure function of its arguments. Throws std::runtime_error naming the path
/// on I/O failure and DomainError for an unknown format.
void report_emit(const std::vector<VerificationReport>& reports, const std::vector<Table>& tables,
                 const std::string& format, const std::filesystem::path& out_dir,
                 const std::vector<std::pair<std::string, std::string>>& config = {});

} // namespace gtrans
