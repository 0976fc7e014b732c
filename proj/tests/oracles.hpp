#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// First exit along direction th, or `cap` when none is found before it.
inline double ray_exit(const std::function<bool(double, double)>& inside, double x, double y, double th, double reach,
                       int steps, double cap) {
    const double cx = std::cos(th), cy = std::sin(th);
    double prev = 0.0;
    for (int i = 1; i <= steps && prev < cap; ++i) {
        const double s = reach * i / steps;
        if (!inside(x + s * cx, y + s * cy)) {
            double lo = prev, hi = s;
            for (int b = 0; b < 60; ++b) {
                const double mid = 0.5 * (lo + hi);
                (inside(x + mid * cx, y + mid * cy) ? lo : hi) = mid;
            }
            return std::min(cap, hi);
        }
        prev = s;
    }
    return cap;
}

// Distance from x to the complement of an open set given only by a membership predicate:
// shoot rays in `rays` directions, then refine around the best one.
inline double distance_by_rays(const std::function<bool(double, double)>& inside, double x, double y, double reach,
                               int rays = 4096, int steps = 4000) {
    double best = reach, best_th = 0.0;
    double dth = 2.0 * std::numbers::pi / rays;
    for (int k = 0; k < rays; ++k) {
        const double e = ray_exit(inside, x, y, k * dth, reach, steps, best);
        if (e < best) best = e, best_th = k * dth;
    }
    for (int round = 0; round < 4; ++round) {
        const double centre = best_th, span = 2.0 * dth;
        for (int k = -500; k <= 500; ++k) {
            const double th = centre + span * k / 500.0;
            const double e = ray_exit(inside, x, y, th, reach, steps, best);
            if (e < best) best = e, best_th = th;
        }
        dth /= 100.0;
    }
    return best;
}

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Smallest eigenvalue of the symmetric tridiagonal pencil (K, M) by bisection on the inertia of K - x M.
inline double tridiagonal_min_eig(const std::vector<double>& kd, const std::vector<double>& ko,
                                  const std::vector<double>& md, const std::vector<double>& mo, double lo, double hi) {
    auto negatives = [&](double x) {
        int count = 0;
        double piv = 0.0;
        for (std::size_t i = 0; i < kd.size(); ++i) {
            const double a = kd[i] - x * md[i];
            if (i == 0) {
                piv = a;
            } else {
                const double b = ko[i - 1] - x * mo[i - 1];
                piv = a - b * b / piv;
            }
            if (piv == 0.0) piv = -1e-300;
            if (piv < 0.0) ++count;
        }
        return count;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (negatives(mid) >= 1 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
