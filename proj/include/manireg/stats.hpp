#pragma once

#include <span>

#include "manireg/signal.hpp"

namespace manireg {

struct MeanConfig {
    int max_iters = 100;
    /// Stop when the tangent-update norm falls below tol.
    double tol = 1e-9;
    /// p=1 subgradient step schedule a/k; 0 selects a = mean pairwise
    /// distance of the input points.
    double step_scale = 0.0;
    /// Optional warm start; defaults to the first input point.
    const Vec* init = nullptr;
};

struct FrechetResult {
    Vec point;
    double cost = 0.0; // sum_i w_i d(point, z_i)^p / p
    int iters = 0;
    bool converged = true;
    /// Sphere inputs whose pairwise spread exceeds a hemisphere (max
    /// pairwise distance > pi/2); the minimizer may not be unique.
    bool may_be_non_unique = false;
    /// p=2 cost increased between two iterations (should not happen on
    /// Cartan-Hadamard backends).
    bool descent_violated = false;
};

/// Weighted p-power Frechet point by (sub)gradient descent.
/// p=2 uses the full-gradient step z <- exp_z(sum_i w_i log_z z_i / sum w);
/// p=1 uses subgradient descent with the tangent rescaled to unit length and
/// diminishing steps a/k, returning the lowest-cost iterate.
FrechetResult frechet_point(const Manifold& m, std::span<const Vec> points,
                            std::span<const double> weights, double p,
                            const MeanConfig& cfg = {});

struct IntervalExtra {
    const Signal* anchor = nullptr; // same length as the data signal
    double mu = 0.0;
};

struct IntervalResult {
    double eps = 0.0;
    Vec minimizer;
    bool may_be_non_unique = false;
    bool converged = true;
};

/// Best constant-approximation error of data[l..r] (0-based, inclusive):
///   eps = min_h (1/p) [ sum_i d^p(h, f_i) + mu * sum_i d^p(h, anchor_i) ].
IntervalResult interval_error_potts(const Manifold& m, const Signal& data, int l, int r,
                                    double p, const IntervalExtra& extra = {},
                                    const Vec* warm = nullptr, const MeanConfig& cfg = {});

} // namespace manireg
