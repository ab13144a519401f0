#pragma once

// Discrete convex solver shared by the K-functional and best approximation.

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace gtrans::detail {

/// minimize  ||b - B c||_p + lambda ||P c||_p  over c, where the norms are
/// plain discrete p-norms of the (already weighted) rows. p = +inf means the
/// max norm. P may have zero rows, which drops the penalty.
struct DiscreteProblem {
    Eigen::MatrixXd B;
    Eigen::VectorXd b;
    Eigen::MatrixXd P;
    double lambda = 0.0;
};

struct IrlsOptions {
    double p = 2.0;
    int max_iterations = 60; ///< per stage; p = inf runs several stages
    double tolerance = 1e-10;
    double weight_floor = 1e-12; ///< relative floor on |r| in the p < 2 weights
};

struct IrlsResult {
    Eigen::VectorXd coeffs;
    double objective = 0.0; ///< at the target p (max norms for p = inf)
    int iterations = 0;
    std::vector<double> history; ///< objective at the target p per iteration
};

double discrete_norm(const Eigen::VectorXd& r, double p);

IrlsResult irls_minimize(const DiscreteProblem& problem, const IrlsOptions& opts,
                         const Eigen::VectorXd* start = nullptr);

} // namespace gtrans::detail
