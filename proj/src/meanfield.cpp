#include "blockspin/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blockspin/entropy.hpp"

namespace blockspin {

double cw_fixed_point(double b) {
    if (!std::isfinite(b)) throw std::invalid_argument("b must be finite");
    if (b <= 1.0) return 0.0;

    // bracket the positive root of f(z) = z - tanh(bz): f < 0 near 0+, f(1) > 0
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::tanh(b * mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double z = 0.5 * (lo + hi);

    // Newton polish; f' = 1 - b sech^2(bz) > 0 at the largest root
    for (int it = 0; it < 60; ++it) {
        const double t = std::tanh(b * z);
        const double fp = 1.0 - b * (1.0 - t * t);
        if (!(fp > 0.0)) break;
        const double step = (z - t) / fp;
        z -= step;
        if (std::abs(step) < 1e-17) break;
    }
    return std::max(z, 0.0);
}

std::string phase_name(Phase p) {
    switch (p) {
    case Phase::Paramagnetic: return "Paramagnetic";
    case Phase::FourPoint: return "FourPoint";
    case Phase::AlignedTwoPoint: return "AlignedTwoPoint";
    case Phase::AntiAlignedTwoPoint: return "AntiAlignedTwoPoint";
    }
    return "?";
}

PhaseDiagnosis classify_phase(double beta, double alpha_a) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    PhaseDiagnosis d;
    if (beta + std::abs(alpha_a) <= 2.0) {
        d.phase = Phase::Paramagnetic;
        d.z_star = 0.0;
        d.limit_points = {{{0.0, 0.0}, 1.0}};
    } else if (alpha_a == 0.0) {
        d.phase = Phase::FourPoint;
        d.z_star = cw_fixed_point(beta / 2.0);
        const double z = d.z_star;
        d.limit_points = {{{z, z}, 0.25},
                          {{z, -z}, 0.25},
                          {{-z, z}, 0.25},
                          {{-z, -z}, 0.25}};
    } else if (alpha_a > 0.0) {
        d.phase = Phase::AlignedTwoPoint;
        d.z_star = cw_fixed_point((beta + alpha_a) / 2.0);
        const double z = d.z_star;
        d.limit_points = {{{z, z}, 0.5}, {{-z, -z}, 0.5}};
    } else {
        d.phase = Phase::AntiAlignedTwoPoint;
        d.z_star = cw_fixed_point((beta - alpha_a) / 2.0); // beta + |alpha_a|
        const double z = d.z_star;
        d.limit_points = {{{z, -z}, 0.5}, {{-z, z}, 0.5}};
    }
    return d;
}

namespace {

struct Point {
    double x1, x2;
};

constexpr double kBoxEdge = 0.5;          // |x_i| <= 1/2, i.e. |m_i| <= 1
constexpr double kInterior = 0.5 - 5e-13; // keep atanh(2x) finite
constexpr int kGridK = 401;

double clamp_interior(double v) { return std::clamp(v, -kInterior, kInterior); }

double objective_impl(double beta, double lambda, double x1, double x2) {
    const double f =
        0.5 * (beta * x1 * x1 + beta * x2 * x2 + 2.0 * lambda * x1 * x2);
    return f - 0.5 * spin_entropy(2.0 * x1) - 0.5 * spin_entropy(2.0 * x2);
}

Point gradient(double beta, double lambda, const Point& x) {
    return {beta * x.x1 + lambda * x.x2 - std::atanh(2.0 * x.x1),
            beta * x.x2 + lambda * x.x1 - std::atanh(2.0 * x.x2)};
}

// Ascend G from a seed: a short damped fixed-point pass on the stationarity
// system 2x_i = tanh(beta x_i + lambda x_j), then Newton with backtracking.
// Newton handles the quartic-flat direction at the phase boundary (linear
// rate 1/3), where the plain fixed-point map crawls.
Point ascend(double beta, double lambda, Point x) {
    x.x1 = clamp_interior(x.x1);
    x.x2 = clamp_interior(x.x2);

    double omega = 1.0;
    for (int it = 0; it < 400; ++it) {
        const double y1 = 0.5 * std::tanh(beta * x.x1 + lambda * x.x2);
        const double y2 = 0.5 * std::tanh(beta * x.x2 + lambda * x.x1);
        const double r = std::max(std::abs(y1 - x.x1), std::abs(y2 - x.x2));
        if (r < 1e-13) break;
        const Point xn{x.x1 + omega * (y1 - x.x1), x.x2 + omega * (y2 - x.x2)};
        if (objective_impl(beta, lambda, xn.x1, xn.x2) + 1e-15 <
            objective_impl(beta, lambda, x.x1, x.x2)) {
            omega *= 0.5;
            if (omega < 1e-3) break;
            continue;
        }
        x = xn;
    }

    for (int it = 0; it < 120; ++it) {
        const Point g = gradient(beta, lambda, x);
        if (std::max(std::abs(g.x1), std::abs(g.x2)) < 1e-13) break;
        const double h11 =
            beta - 2.0 / (1.0 - 4.0 * x.x1 * x.x1);
        const double h22 =
            beta - 2.0 / (1.0 - 4.0 * x.x2 * x.x2);
        const double det = h11 * h22 - lambda * lambda;
        Point d;
        if (std::abs(det) > 1e-300) {
            // Newton direction -H^{-1} g
            d = {-(h22 * g.x1 - lambda * g.x2) / det,
                 -(h11 * g.x2 - lambda * g.x1) / det};
            // fall back to plain ascent if Newton points downhill
            if (d.x1 * g.x1 + d.x2 * g.x2 <= 0.0) d = {g.x1, g.x2};
        } else {
            d = {g.x1, g.x2};
        }
        const double g0 = objective_impl(beta, lambda, x.x1, x.x2);
        double t = 1.0;
        Point xn = x;
        while (t > 1e-14) {
            xn = {clamp_interior(x.x1 + t * d.x1), clamp_interior(x.x2 + t * d.x2)};
            if (objective_impl(beta, lambda, xn.x1, xn.x2) >= g0 - 1e-15) break;
            t *= 0.5;
        }
        if (std::abs(xn.x1 - x.x1) < 1e-17 && std::abs(xn.x2 - x.x2) < 1e-17)
            break;
        x = xn;
    }
    return x;
}

} // namespace

double RateLandscape::objective(double x1, double x2) const {
    if (!(std::abs(2.0 * x1) <= 1.0) || !(std::abs(2.0 * x2) <= 1.0))
        throw std::invalid_argument("|2 x_i| must be <= 1");
    return objective_impl(beta, lambda, x1, x2);
}

double RateLandscape::rate(double x1, double x2) const {
    return sup - objective(x1, x2);
}

RateLandscape rate_landscape(double beta, double lambda) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    RateLandscape ls;
    ls.beta = beta;
    ls.lambda = lambda;

    // coarse grid scan
    std::vector<double> grid(kGridK * kGridK);
    double gmax = -1e300;
    for (int i = 0; i < kGridK; ++i) {
        const double x1 = -kBoxEdge + i / double(kGridK - 1);
        for (int j = 0; j < kGridK; ++j) {
            const double x2 = -kBoxEdge + j / double(kGridK - 1);
            const double v = objective_impl(beta, lambda, x1, x2);
            grid[static_cast<std::size_t>(i) * kGridK + j] = v;
            gmax = std::max(gmax, v);
        }
    }

    // ascend from every near-global grid local maximum
    auto at = [&](int i, int j) {
        return grid[static_cast<std::size_t>(i) * kGridK + j];
    };
    std::vector<Point> candidates;
    for (int i = 0; i < kGridK; ++i)
        for (int j = 0; j < kGridK; ++j) {
            if (at(i, j) < gmax - 1e-6) continue;
            bool local_max = true;
            for (int di = -1; di <= 1 && local_max; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ni = i + di, nj = j + dj;
                    if (ni < 0 || nj < 0 || ni >= kGridK || nj >= kGridK)
                        continue;
                    if (at(ni, nj) > at(i, j)) {
                        local_max = false;
                        break;
                    }
                }
            if (local_max)
                candidates.push_back(ascend(
                    beta, lambda,
                    {-kBoxEdge + i / double(kGridK - 1),
                     -kBoxEdge + j / double(kGridK - 1)}));
        }

    // cluster the ascent results; each cluster keeps its best member
    std::vector<Point> reps;
    std::vector<double> rep_val;
    for (const Point& c : candidates) {
        const double v = objective_impl(beta, lambda, c.x1, c.x2);
        bool merged = false;
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (std::hypot(c.x1 - reps[k].x1, c.x2 - reps[k].x2) < 1e-3) {
                if (v > rep_val[k]) {
                    reps[k] = c;
                    rep_val[k] = v;
                }
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(c);
            rep_val.push_back(v);
        }
    }

    double best = -1e300;
    for (double v : rep_val) best = std::max(best, v);
    ls.sup = best;
    for (std::size_t k = 0; k < reps.size(); ++k)
        if (rep_val[k] >= best - 1e-10)
            ls.maximizers.push_back({2.0 * reps[k].x1, 2.0 * reps[k].x2});

    std::sort(ls.maximizers.begin(), ls.maximizers.end(),
              [](const Magnetization& a, const Magnetization& b) {
                  if (a.m1 != b.m1) return a.m1 > b.m1;
                  return a.m2 > b.m2;
              });
    return ls;
}

double rate_function(double x1, double x2, double beta, double lambda) {
    return rate_landscape(beta, lambda).rate(x1, x2);
}

std::vector<Magnetization> rate_minimizers(double beta, double lambda) {
    return rate_landscape(beta, lambda).maximizers;
}

double free_energy_variational(double beta, double lambda) {
    return std::log(2.0) + rate_landscape(beta, lambda).sup;
}

} // namespace blockspin
