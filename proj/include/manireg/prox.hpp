#pragma once

#include <utility>

#include "manireg/signal.hpp"

namespace manireg {

struct CppaConfig {
    double lambda0 = 2.0; // per-sweep parameter lambda_k = lambda0 / k
    int sweeps = 300;
    double tol = 1e-8; // relative energy-change stopping threshold
};

/// L^p-V^q problem
///   V(x) = (1/p) sum_i d^p(x_i, f_i) + (mu/p) sum_i d^p(x_i, anchor_i)
///          + (alpha/q) sum_i d^q(x_i, x_{i+1}).
struct VqProblem {
    Signal data;
    double p = 2.0; // in {1, 2}
    double q = 2.0; // in {1, 2}
    double alpha = 1.0;
    const Signal* anchor = nullptr;
    double mu = 0.0;
};

/// Proximal map of the coupling term lambda * (1/q) d^q(., .): both points
/// move towards each other along the connecting geodesic by arc length
///   q=1: t = min(lambda, d/2),   q=2: t = lambda/(1+2 lambda) * d.
std::pair<Vec, Vec> prox_pair(const Manifold& m, const Vec& a, const Vec& b, double lambda,
                              double q);

/// Proximal map of the data term lambda * (1/p) d^p(., f): moves x towards f
/// by arc length
///   p=1: s = min(lambda, d),     p=2: s = lambda/(1+lambda) * d.
Vec prox_data(const Manifold& m, const Vec& x, const Vec& f, double lambda, double p);

struct CppaResult {
    Signal x;
    double energy = 0.0;
    int sweeps = 0;
    bool converged = true;
};

double vq_energy(const Manifold& m, const VqProblem& prob, const Signal& x);

/// Cyclic proximal point algorithm for VqProblem. One sweep applies the data
/// prox at every index, the anchor prox (parameter lambda_k * mu) when an
/// anchor is present, then the coupling proxes left to right with parameter
/// lambda_k * alpha. lambda_k decreases per sweep.
CppaResult cppa_solve(const Manifold& m, const VqProblem& prob, const Signal* init = nullptr,
                      const CppaConfig& cfg = {});

} // namespace manireg
