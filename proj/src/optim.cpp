#include "riskconv/optim.hpp"

#include <cmath>
#include <limits>

#include "riskconv/errors.hpp"

namespace riskconv::optim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, const Eigen::VectorXd& upper) {
    if (y.size() != upper.size()) {
        throw structural_error("projection inputs have mismatched sizes");
    }
    if (upper.sum() < 1.0 - 1e-12) {
        throw invalid_input("capped simplex is empty: upper bounds sum below one");
    }
    auto mass = [&](double tau) {
        double total = 0.0;
        for (Eigen::Index k = 0; k < y.size(); ++k) {
            total += std::min(std::max(y[k] - tau, 0.0), upper[k]);
        }
        return total;
    };
    // mass(tau) is nonincreasing; bracket the root of mass(tau) = 1
    double lo = (y - upper).minCoeff() - 1.0;
    double hi = y.maxCoeff();
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mass(mid) >= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double tau = 0.5 * (lo + hi);
    Eigen::VectorXd q(y.size());
    for (Eigen::Index k = 0; k < y.size(); ++k) {
        q[k] = std::min(std::max(y[k] - tau, 0.0), upper[k]);
    }
    // absorb the bisection residual into a free coordinate
    double deficit = 1.0 - q.sum();
    for (Eigen::Index k = 0; k < q.size() && std::abs(deficit) > 0.0; ++k) {
        const double room = deficit > 0.0 ? upper[k] - q[k] : q[k];
        const double step = std::clamp(deficit, -room, room);
        q[k] += step;
        deficit -= step;
    }
    return q;
}

PgResult maximize_projected_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
    Eigen::VectorXd start, long max_iters, double stationarity_tol) {
    PgResult out;
    Eigen::VectorXd x = project(start);
    double fx = f(x);
    double step = 1.0;

    for (long iter = 0; iter < max_iters; ++iter) {
        const Eigen::VectorXd g = gradient(x);
        const Eigen::VectorXd fixed_point = project(x + g);
        if ((x - fixed_point).cwiseAbs().maxCoeff() <= stationarity_tol) {
            out.converged = true;
            out.iterations = static_cast<int>(iter);
            break;
        }

        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            const Eigen::VectorXd candidate = project(x + step * g);
            const Eigen::VectorXd d = candidate - x;
            const double improvement = g.dot(d);
            const double fc = f(candidate);
            if (fc >= fx + 1e-4 * improvement && fc > fx - 1e-18) {
                x = candidate;
                fx = fc;
                step = std::min(step * 1.5, 1e6);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            // no ascent at the smallest step; treat as stationary
            out.converged = (x - project(x + g)).cwiseAbs().maxCoeff() <= 1e3 * stationarity_tol;
            out.iterations = static_cast<int>(iter);
            break;
        }
        out.iterations = static_cast<int>(iter + 1);
    }
    out.x = std::move(x);
    out.value = fx;
    return out;
}

MinResult minimize_bfgs(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& value_and_gradient,
    Eigen::VectorXd start, int max_iters, double grad_tol) {
    const Eigen::Index n = start.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = std::move(start);
    Eigen::VectorXd g(n);
    double fx = value_and_gradient(x, g);

    MinResult out;
    for (int iter = 0; iter < max_iters; ++iter) {
        out.iterations = iter;
        if (g.cwiseAbs().maxCoeff() <= grad_tol) break;
        Eigen::VectorXd d = -(H * g);
        double dg = d.dot(g);
        if (dg >= 0.0) { // reset on loss of descent
            H.setIdentity();
            d = -g;
            dg = -g.squaredNorm();
        }

        // weak Wolfe bracketing (Armijo 1e-4, curvature 0.9)
        double lo = 0.0;
        double hi = kInf;
        double t = 1.0;
        Eigen::VectorXd xt = x;
        Eigen::VectorXd gt = g;
        double ft = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            xt = x + t * d;
            ft = value_and_gradient(xt, gt);
            if (!(ft <= fx + 1e-4 * t * dg)) {
                hi = t;
            } else if (gt.dot(d) < 0.9 * dg) {
                lo = t;
            } else {
                accepted = true;
                break;
            }
            t = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * t;
            if (t < 1e-18) break;
        }
        if (!accepted && !(ft < fx)) break; // line search failed to improve

        const Eigen::VectorXd s = xt - x;
        const Eigen::VectorXd y = gt - g;
        x = xt;
        fx = ft;
        g = gt;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const Eigen::VectorXd Hy = H * y;
            const double yHy = y.dot(Hy);
            H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
                 (Hy * s.transpose() + s * Hy.transpose()) / sy;
        }
    }
    out.x = std::move(x);
    out.value = fx;
    return out;
}

MinResult minimize_pattern_search(const std::function<double(const Eigen::VectorXd&)>& f,
                                  Eigen::VectorXd start, double initial_step, double min_step,
                                  double divergence_floor, long max_sweeps) {
    Eigen::VectorXd x = std::move(start);
    double fx = f(x);
    double step = initial_step;

    MinResult out;
    for (long sweep = 0; sweep < max_sweeps && step >= min_step; ++sweep) {
        out.iterations = static_cast<int>(sweep);
        if (fx < divergence_floor) {
            out.diverged = true;
            break;
        }
        bool improved = false;
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            for (double sign : {+1.0, -1.0}) {
                Eigen::VectorXd candidate = x;
                candidate[k] += sign * step;
                const double fc = f(candidate);
                if (fc < fx - 1e-15 * std::max(1.0, std::abs(fx))) {
                    x = std::move(candidate);
                    fx = fc;
                    improved = true;
                    break;
                }
            }
        }
        if (improved) {
            step = std::min(step * 2.0, 1e8);
        } else {
            step *= 0.5;
        }
    }
    out.x = std::move(x);
    out.value = fx;
    return out;
}

} // namespace riskconv::optim
