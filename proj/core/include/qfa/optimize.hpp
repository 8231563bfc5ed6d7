#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qfa {

/// Closed-form optima: (52 + 4*sqrt(7))/81 and 1/2 + 3*sqrt(15)/50.
double problem1_optimum();
double problem3_optimum();

/// Reduced variables of the first problem: p = min(cos^2(a-b),
/// sin^2(a) cos^2(b) + p2, 1 - p2).
struct Problem1Point {
    double alpha = 0.0;  // in [0, pi/2]
    double beta = 0.0;   // in [0, pi/2]
    double p2 = 0.0;     // in [0, 1]
};
double problem1_objective(const Problem1Point& pt);

/// Reduced variables of the third problem. The two case objectives are
/// f = 1 - E^2 sin^2(3a) and g = (1 - E^2 cos^3(2a)) / 2.
struct Problem3Point {
    double e_sq = 0.0;   // E^2 in [0, 1]
    double alpha = 0.0;  // in [0, pi/2]
    double y() const;    // -cos(2 alpha)
};
std::pair<double, double> problem3_objectives(const Problem3Point& pt);

/// The boundary-case objective 1/2 + y^3 / (2 (5y^3 - 3y + 1)) on
/// [sqrt(3/5), 1].
double problem3_y_objective(double y);

/// A candidate for the second problem. E_a is the span of the first
/// accept_dim coordinates; pr1/pr2 complete the halting probabilities.
struct Problem2Point {
    int dim = 0;
    int accept_dim = 0;
    Eigen::VectorXd v1, v2, v3;
    double pa1 = 0.0, pr1 = 0.0, pa2 = 0.0, pr2 = 0.0;
};

/// Returns (p, residual): p = min of the three term values, residual = the
/// largest violation of the equality/orthogonality/range constraints.
std::pair<double, double> problem2_evaluate(const Problem2Point& pt);

struct OptimizationResult {
    int problem = 0;
    double p = 0.0;
    double feasibility_residual = 0.0;
    long iterations = 0;
    std::uint64_t seed = 0;
    int restarts = 0;
    std::optional<Problem1Point> witness1;
    std::optional<Problem2Point> witness2;
    std::optional<Problem3Point> witness3;
};

/// Closed form first, then an independent zoomed-grid scan that must agree
/// within 1e-7 (throws std::logic_error otherwise).
OptimizationResult solve_problem1();
OptimizationResult solve_problem3();

/// Multi-start penalized Nelder-Mead; deterministic in (dim, restarts, seed).
OptimizationResult solve_problem2(int dim, int restarts, std::uint64_t seed);

/// Random feasible points for the given problem (1, 2 or 3); used to check
/// that no sample beats the reported optimum.
struct SampleBatch {
    std::vector<double> p_values;
    double max_p = 0.0;
    double max_residual = 0.0;  // worst feasibility violation over the batch
};
SampleBatch feasible_sampler(int problem_id, int count, std::uint64_t seed, int dim = 6);

}  // namespace qfa
