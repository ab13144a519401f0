#pragma once

#include "gtrans/function.hpp"
#include "gtrans/weighted_lp.hpp"

#include <utility>

namespace gtrans {

/// Coordinates of the rotated point: x = cos(theta1), y = cos(t),
/// z = cos(phi1), R = cos(theta) and the azimuth phi, related by
///   R = x y - z sqrt(1-x^2) sqrt(1-y^2)
///   sin(theta) cos(phi) = cos(theta1) sin(t) + sin(theta1) cos(t) cos(phi1)
///   sin(theta) sin(phi) = sin(theta1) sin(phi1)
struct GeodesicFrame {
    double x = 0.0;
    double t = 0.0;
    double phi1 = 0.0;
    double R = 0.0;
    double phi = 0.0;
    double sin_theta_cos_phi = 0.0;
    double sin_theta_sin_phi = 0.0;
};

/// Builds the frame. phi comes from atan2(sin_theta_sin_phi, sin_theta_cos_phi)
/// and is 0 when sin(theta) = 0. R is clamped to [-1,1] after roundoff.
GeodesicFrame geodesic_frame(double x, double t, double phi1);

enum class KernelVariant {
    standard,     ///< cos(mu (phi1 - phi))
    flipped_sign, ///< cos(mu (phi1 + phi)); negative control only
};

struct TranslationConfig {
    int nodes = 32;            ///< initial node count of the phi1 (or z) rule
    double tolerance = 1e-13;  ///< relative change that stops node doubling
    int max_doublings = 10;
    KernelVariant kernel = KernelVariant::standard;
};

/// The asymmetric generalized translation
///   tau_t(f,x) = 1 / (pi (1-x^2)^{mu/2} cos^{2mu}(t/2))
///                * int_0^pi (1-R^2)^{mu/2} f(R) cos(mu (phi1 - phi)) dphi1.
///
/// The phi1 integral is taken with the trapezoid rule in phi1 (the
/// Chebyshev-Lobatto rule in z = cos(phi1)), doubling the node count until two
/// successive values agree. When f declares breakpoints that R crosses, the
/// interval is split there and Gauss-Legendre panels are used instead; the
/// panels are also used for non-integer mu.
///
/// |x| is clipped to 1 - 1e-9; |t| must be < pi. The identities of the
/// operator (tau 1 = 1, the Jacobi eigenfunction property, duality) hold for
/// integer mu; for non-integer mu the principal branch of the kernel is used
/// and the identities only hold while |t| < theta1 < pi - |t|.
double asym_translate(const FunctionHandle& f, double t, double mu, double x, const TranslationConfig& cfg = {});

/// x -> tau_t(f, x) as a handle.
FunctionHandle asym_translated(const FunctionHandle& f, double t, double mu, const TranslationConfig& cfg = {});

/// The symmetric operator T_y(f,x,mu) = (1/gamma_mu) int (1-z^2)^{mu-1/2} f(R) dz,
/// evaluated by a self-normalizing Gauss-Jacobi (mu-1/2, mu-1/2) rule, split into
/// panels where R crosses a breakpoint of f. Its eigenfunctions are the
/// (mu, mu) Jacobi polynomials: T_y R_n = R_n(x) R_n(y).
double sym_translate(const FunctionHandle& f, double y, double mu, double x, const TranslationConfig& cfg = {});

struct TranslationBound {
    double ratio = 0.0;           ///< ||tau_t f|| cos^{2mu}(t/2) / ||f||
    double translated_norm = 0.0; ///< ||tau_t f||_{p,alpha}
    double norm = 0.0;            ///< ||f||_{p,alpha}
};

/// Boundedness ratio of the translation in L_{p,alpha}. Throws ContractError
/// for a zero-norm f and DomainError for a non-admissible space.
TranslationBound translate_norm_bound_check(const FunctionHandle& f, double t, const SpaceParams& space,
                                            const TranslationConfig& cfg = {}, const NormResolution& res = {});

/// Both sides of  int f T_y g w = int g T_y f w,  w = (1-x^2)^mu, each with an
/// m-point Gauss-Jacobi (mu, mu) rule. T_y is the asymmetric operator at
/// t = arccos(y).
std::pair<double, double> duality_check(const FunctionHandle& f, const FunctionHandle& g, double y, double mu,
                                        const TranslationConfig& cfg = {}, int nodes = 32);

/// Confirms tau_t(1, x) = 1 to 1e-10 on a grid for mu in {0,1,2,3}; throws
/// NumericError naming the worst point otherwise.
void kernel_self_test(const TranslationConfig& cfg = {});

} // namespace gtrans
