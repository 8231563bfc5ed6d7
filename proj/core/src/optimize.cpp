#include "qfa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qfa {

namespace {

using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic RNG with a platform-independent gaussian (Box-Muller).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * kPi * uniform();
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    VectorXd gaussian_vector(int n, double scale) {
        VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = scale * gaussian();
        return v;
    }

private:
    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// ---------------------------------------------------------------------------
// Zoomed grid search: full grid per level, re-centered and shrunk around the
// best point. Deterministic; good to ~1e-10 in the argument after 14 levels.
// ---------------------------------------------------------------------------

struct ZoomResult {
    std::vector<double> x;
    double f = 0.0;
    long evals = 0;
};

ZoomResult zoom_maximize(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> lo, std::vector<double> hi,
                         int levels, int pts) {
    const int dims = static_cast<int>(lo.size());
    std::vector<double> cur_lo = lo, cur_hi = hi;
    ZoomResult best;
    best.f = -1e300;

    for (int level = 0; level < levels; ++level) {
        std::vector<int> idx(dims, 0);
        std::vector<double> x(dims);
        for (;;) {
            for (int d = 0; d < dims; ++d) {
                x[d] = pts == 1 ? cur_lo[d]
                                : cur_lo[d] + (cur_hi[d] - cur_lo[d]) * idx[d] / (pts - 1);
            }
            double v = f(x);
            ++best.evals;
            if (v > best.f) {
                best.f = v;
                best.x = x;
            }
            int d = 0;
            while (d < dims && ++idx[d] == pts) idx[d++] = 0;
            if (d == dims) break;
        }
        // shrink around the incumbent, clamped to the original box
        for (int d = 0; d < dims; ++d) {
            double half = (cur_hi[d] - cur_lo[d]) * 2.5 / (pts - 1);
            cur_lo[d] = std::max(lo[d], best.x[d] - half);
            cur_hi[d] = std::min(hi[d], best.x[d] + half);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Nelder-Mead (minimization)
// ---------------------------------------------------------------------------

struct NmResult {
    VectorXd x;
    double f = 0.0;
    long evals = 0;
};

NmResult nelder_mead(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                     double step, int max_iter, double diam_tol) {
    const int n = static_cast<int>(x0.size());
    std::vector<VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    long evals = 0;
    for (int i = 1; i <= n; ++i) xs[i](i - 1) += step;
    for (int i = 0; i <= n; ++i) {
        fs[i] = f(xs[i]);
        ++evals;
    }

    auto order = [&] {
        std::vector<int> perm(n + 1);
        for (int i = 0; i <= n; ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<VectorXd> xs2(n + 1);
        std::vector<double> fs2(n + 1);
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[perm[i]];
            fs2[i] = fs[perm[i]];
        }
        xs = std::move(xs2);
        fs = std::move(fs2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        double diam = 0.0;
        for (int i = 1; i <= n; ++i) diam = std::max(diam, (xs[i] - xs[0]).norm());
        if (diam < diam_tol) break;

        VectorXd centroid = VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;

        VectorXd xr = centroid + (centroid - xs[n]);
        double fr = f(xr);
        ++evals;
        if (fr < fs[0]) {
            VectorXd xe = centroid + 2.0 * (centroid - xs[n]);
            double fe = f(xe);
            ++evals;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            VectorXd xc = centroid + 0.5 * (xs[n] - centroid);
            double fc = f(xc);
            ++evals;
            if (fc < fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = f(xs[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return {xs[0], fs[0], evals};
}

}  // namespace

// ---------------------------------------------------------------------------
// Problem 1
// ---------------------------------------------------------------------------

double problem1_optimum() { return (52.0 + 4.0 * std::sqrt(7.0)) / 81.0; }

double problem1_objective(const Problem1Point& pt) {
    double sa = std::sin(pt.alpha);
    double cb = std::cos(pt.beta);
    double t1 = std::cos(pt.alpha - pt.beta);
    return std::min({t1 * t1, sa * sa * cb * cb + pt.p2, 1.0 - pt.p2});
}

OptimizationResult solve_problem1() {
    OptimizationResult res;
    res.problem = 1;
    const double y = (4.0 + std::sqrt(7.0)) / 9.0;  // sin^2(alpha)
    Problem1Point w;
    w.alpha = std::asin(std::sqrt(y));
    w.beta = kPi / 2.0 - w.alpha;
    w.p2 = (1.0 - y * y) / 2.0;
    res.p = problem1_optimum();
    res.witness1 = w;
    res.feasibility_residual = 0.0;

    ZoomResult num = zoom_maximize(
        [](const std::vector<double>& x) {
            return problem1_objective({x[0], x[1], x[2]});
        },
        {0.0, 0.0, 0.0}, {kPi / 2.0, kPi / 2.0, 1.0}, 14, 21);
    res.iterations = num.evals;
    if (std::abs(num.f - res.p) > 1e-7) {
        throw std::logic_error("solve_problem1: numeric scan disagrees with closed form");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Problem 3
// ---------------------------------------------------------------------------

double problem3_optimum() { return 0.5 + 3.0 * std::sqrt(15.0) / 50.0; }

double Problem3Point::y() const { return -std::cos(2.0 * alpha); }

std::pair<double, double> problem3_objectives(const Problem3Point& pt) {
    double s3 = std::sin(3.0 * pt.alpha);
    double c2 = std::cos(2.0 * pt.alpha);
    double f = 1.0 - pt.e_sq * s3 * s3;
    double g = (1.0 - pt.e_sq * c2 * c2 * c2) / 2.0;
    return {f, g};
}

double problem3_y_objective(double y) {
    return 0.5 + y * y * y / (2.0 * (5.0 * y * y * y - 3.0 * y + 1.0));
}

OptimizationResult solve_problem3() {
    OptimizationResult res;
    res.problem = 3;
    const double y = std::sqrt(3.0 / 5.0);
    Problem3Point w;
    w.e_sq = 1.0;
    w.alpha = std::acos(-y) / 2.0;  // cos(2 alpha) = -y
    res.p = problem3_optimum();
    res.witness3 = w;
    res.feasibility_residual = 0.0;

    ZoomResult scan1 = zoom_maximize(
        [](const std::vector<double>& x) { return problem3_y_objective(x[0]); },
        {std::sqrt(3.0 / 5.0)}, {1.0}, 14, 41);
    ZoomResult scan2 = zoom_maximize(
        [](const std::vector<double>& x) {
            auto [f, g] = problem3_objectives({x[0], x[1]});
            return std::min(f, g);
        },
        {0.0, 0.0}, {1.0, kPi / 2.0}, 14, 33);
    res.iterations = scan1.evals + scan2.evals;
    if (std::abs(scan1.f - res.p) > 1e-7 || std::abs(scan2.f - res.p) > 1e-7) {
        throw std::logic_error("solve_problem3: numeric scan disagrees with closed form");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Problem 2
// ---------------------------------------------------------------------------

std::pair<double, double> problem2_evaluate(const Problem2Point& pt) {
    if (pt.dim <= 0 || pt.accept_dim < 0 || pt.accept_dim > pt.dim ||
        pt.v1.size() != pt.dim || pt.v2.size() != pt.dim || pt.v3.size() != pt.dim) {
        throw std::invalid_argument("problem2_evaluate: inconsistent dimensions");
    }
    auto pa_sq = [&pt](const VectorXd& v) { return v.head(pt.accept_dim).squaredNorm(); };

    VectorXd u = pt.v1 + pt.v2;
    VectorXd s = u + pt.v3;
    double t1 = pa_sq(s);
    double t2 = pa_sq(u) + pt.pa1;
    double t3 = 1.0 - pa_sq(pt.v1) - pt.pa1 - pt.pa2;
    double p = std::min({t1, t2, t3});

    double r = 0.0;
    r = std::max(r, std::abs(s.norm() - 1.0));
    r = std::max(r, std::abs(pt.v1.dot(pt.v2)));
    r = std::max(r, std::abs(s.dot(pt.v2)));
    r = std::max(r, std::abs(u.dot(pt.v3)));
    r = std::max(r, std::abs(pt.pa1 + pt.pr1 - pt.v3.squaredNorm()));
    r = std::max(r, std::abs(pt.pa2 + pt.pr2 - pt.v2.squaredNorm()));
    for (double q : {pt.pa1, pt.pr1, pt.pa2, pt.pr2}) {
        r = std::max(r, std::max(-q, q - 1.0));
    }
    return {p, r};
}

namespace {

/// Maps raw coordinates onto the feasible set: orthogonalize v2 against v1,
/// rebuild v3 so both mixed conditions hold, rescale everything to unit sum,
/// clamp the probabilities into range.
Problem2Point project_problem2(const VectorXd& x, int dim, int accept_dim) {
    Problem2Point pt;
    pt.dim = dim;
    pt.accept_dim = accept_dim;
    VectorXd v1 = x.segment(0, dim);
    VectorXd v2 = x.segment(dim, dim);
    VectorXd w = x.segment(2 * dim, dim) + v2;

    double n1 = v1.squaredNorm();
    if (n1 < 1e-16) {
        v1.setZero();
        v2.setZero();
    } else {
        v2 -= (v2.dot(v1) / n1) * v1;
    }
    double n2 = v2.squaredNorm();
    if (n2 > 1e-16) {
        w -= (w.dot(v2) / n2) * v2;
    }
    if (n1 >= 1e-16) {
        w += ((v2.squaredNorm() - w.dot(v1)) / n1) * v1;
    }
    VectorXd v3 = w - v2;

    VectorXd s = v1 + v2 + v3;
    double ns = s.norm();
    if (ns < 1e-9) {
        v1.setZero();
        v2.setZero();
        v3 = VectorXd::Zero(dim);
        v3(0) = 1.0;
    } else {
        v1 /= ns;
        v2 /= ns;
        v3 /= ns;
    }
    pt.v1 = std::move(v1);
    pt.v2 = std::move(v2);
    pt.v3 = std::move(v3);
    pt.pa1 = std::clamp(x(3 * dim), 0.0, std::min(1.0, pt.v3.squaredNorm()));
    pt.pa2 = std::clamp(x(3 * dim + 1), 0.0, std::min(1.0, pt.v2.squaredNorm()));
    pt.pr1 = pt.v3.squaredNorm() - pt.pa1;
    pt.pr2 = pt.v2.squaredNorm() - pt.pa2;
    return pt;
}

/// Raw coordinates read directly as a candidate; conditions 5-6 hold by
/// construction, the rest is penalized.
Problem2Point raw_problem2(const VectorXd& x, int dim, int accept_dim) {
    Problem2Point pt;
    pt.dim = dim;
    pt.accept_dim = accept_dim;
    pt.v1 = x.segment(0, dim);
    pt.v2 = x.segment(dim, dim);
    pt.v3 = x.segment(2 * dim, dim);
    pt.pa1 = x(3 * dim);
    pt.pa2 = x(3 * dim + 1);
    pt.pr1 = pt.v3.squaredNorm() - pt.pa1;
    pt.pr2 = pt.v2.squaredNorm() - pt.pa2;
    return pt;
}

}  // namespace

OptimizationResult solve_problem2(int dim, int restarts, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("solve_problem2: dim must be >= 1");
    if (restarts < 1) throw std::invalid_argument("solve_problem2: restarts must be >= 1");

    OptimizationResult best;
    best.problem = 2;
    best.seed = seed;
    best.restarts = restarts;
    best.p = -1.0;

    const int n = 3 * dim + 2;
    const double penalties[] = {1e1, 1e3, 1e5, 1e7};
    const int sweep = std::max(1, dim - 1);

    for (int r = 0; r < restarts; ++r) {
        Rng rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ull * (r + 1))));
        const int accept_dim = 1 + r % sweep;

        VectorXd x(n);
        x.segment(0, 3 * dim) = rng.gaussian_vector(3 * dim, 0.5);
        x(3 * dim) = rng.uniform(0.0, 0.3);
        x(3 * dim + 1) = rng.uniform(0.0, 0.1);
        {
            // start near the feasible set
            Problem2Point p0 = project_problem2(x, dim, accept_dim);
            x.segment(0, dim) = p0.v1;
            x.segment(dim, dim) = p0.v2;
            x.segment(2 * dim, dim) = p0.v3;
            x(3 * dim) = p0.pa1;
            x(3 * dim + 1) = p0.pa2;
        }

        double step = 0.15;
        for (double mu : penalties) {
            auto objective = [&](const VectorXd& z) {
                auto [p, res] = problem2_evaluate(raw_problem2(z, dim, accept_dim));
                return -p + mu * res * res;
            };
            NmResult nm = nelder_mead(objective, x, step, 2500, 1e-10);
            x = nm.x;
            best.iterations += nm.evals;
            step *= 0.5;
        }

        Problem2Point cand = project_problem2(x, dim, accept_dim);
        auto [p, res] = problem2_evaluate(cand);
        if (res <= 1e-8 && p > best.p) {
            best.p = p;
            best.feasibility_residual = res;
            best.witness2 = std::move(cand);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Feasible sampling
// ---------------------------------------------------------------------------

SampleBatch feasible_sampler(int problem_id, int count, std::uint64_t seed, int dim) {
    if (count < 1) throw std::invalid_argument("feasible_sampler: count must be >= 1");
    if (dim < 2) throw std::invalid_argument("feasible_sampler: dim must be >= 2");
    SampleBatch batch;
    batch.p_values.reserve(count);
    batch.max_p = -1.0;
    Rng rng(splitmix64(seed ^ (0xabcdef12345ull + problem_id)));

    auto record = [&batch](double p, double res) {
        batch.p_values.push_back(p);
        batch.max_p = std::max(batch.max_p, p);
        batch.max_residual = std::max(batch.max_residual, res);
    };

    for (int i = 0; i < count; ++i) {
        if (problem_id == 1) {
            // E_a = first da coords, E_r = next dr coords (orthogonal).
            int da = 1 + static_cast<int>(rng.uniform() * (dim - 1));
            int dr = 1 + static_cast<int>(rng.uniform() * (dim - da));
            da = std::min(da, dim - 1);
            dr = std::min(dr, dim - da);
            VectorXd v1 = rng.gaussian_vector(dim, 1.0);
            VectorXd v2 = rng.gaussian_vector(dim, 1.0);
            double n1 = v1.squaredNorm();
            if (n1 > 1e-16) v2 -= (v2.dot(v1) / n1) * v1;
            double ns = (v1 + v2).norm();
            if (ns < 1e-9) {
                record(0.0, 0.0);
                continue;
            }
            v1 /= ns;
            v2 /= ns;
            double p2 = clamp01(rng.uniform()) * v2.squaredNorm();
            double t1 = (v1 + v2).head(da).squaredNorm();
            double t2 = v1.segment(da, dr).squaredNorm() + p2;
            double t3 = 1.0 - p2;
            double res = std::max(std::abs(v1.dot(v2)), std::abs((v1 + v2).norm() - 1.0));
            record(std::min({t1, t2, t3}), res);
        } else if (problem_id == 2) {
            int accept_dim = 1 + static_cast<int>(rng.uniform() * (dim - 1));
            accept_dim = std::min(accept_dim, dim - 1);
            VectorXd x(3 * dim + 2);
            x.segment(0, 3 * dim) = rng.gaussian_vector(3 * dim, 1.0);
            x(3 * dim) = rng.uniform();
            x(3 * dim + 1) = rng.uniform();
            auto [p, res] = problem2_evaluate(project_problem2(x, dim, accept_dim));
            record(p, res);
        } else if (problem_id == 3) {
            // E_a and E_r are independent random subspaces (not orthogonal).
            int da = 1 + static_cast<int>(rng.uniform() * (dim - 1));
            int dr = 1 + static_cast<int>(rng.uniform() * (dim - 1));
            da = std::min(da, dim - 1);
            dr = std::min(dr, dim - 1);
            Eigen::MatrixXd a(dim, da), rr(dim, dr);
            auto fill_orthonormal = [&rng, dim](Eigen::MatrixXd& m) {
                for (int j = 0; j < m.cols(); ++j) {
                    VectorXd v = rng.gaussian_vector(dim, 1.0);
                    for (int t = 0; t < 2; ++t) {
                        for (int l = 0; l < j; ++l) v -= m.col(l).dot(v) * m.col(l);
                    }
                    double nv = v.norm();
                    if (nv < 1e-9) {
                        v = VectorXd::Unit(dim, j % dim);
                        for (int l = 0; l < j; ++l) v -= m.col(l).dot(v) * m.col(l);
                        nv = v.norm();
                    }
                    m.col(j) = v / nv;
                }
            };
            fill_orthonormal(a);
            fill_orthonormal(rr);
            VectorXd v1 = rng.gaussian_vector(dim, 1.0);
            VectorXd v2 = rng.gaussian_vector(dim, 1.0);
            double n1 = v1.squaredNorm();
            if (n1 > 1e-16) v2 -= (v2.dot(v1) / n1) * v1;
            double ns = (v1 + v2).norm();
            if (ns < 1e-9) {
                record(0.0, 0.0);
                continue;
            }
            v1 /= ns;
            v2 /= ns;
            double p1 = clamp01(rng.uniform()) * v2.squaredNorm();
            double p2 = v2.squaredNorm() - p1;
            VectorXd s = v1 + v2;
            double t1 = (a.transpose() * s).squaredNorm();
            double t2 = (rr.transpose() * s).squaredNorm();
            double t3 = 1.0 - (a.transpose() * v1).squaredNorm() - p1;
            double t4 = 1.0 - (rr.transpose() * v1).squaredNorm() - p2;
            double res = std::max(std::abs(v1.dot(v2)), std::abs(s.norm() - 1.0));
            record(std::min({t1, t2, t3, t4}), res);
        } else {
            throw std::invalid_argument("feasible_sampler: problem_id must be 1, 2 or 3");
        }
    }
    return batch;
}

}  // namespace qfa
