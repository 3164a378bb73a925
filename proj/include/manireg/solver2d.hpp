#pragma once

#include "manireg/dp1d.hpp"

namespace manireg {

/// Finite-difference neighborhood system with weights.
struct Neighborhood {
    struct Dir {
        int di = 1, dj = 0;
        double weight = 1.0;
    };
    std::vector<Dir> dirs;

    /// Axial + diagonal system (1,0),(0,1),(1,1),(1,-1) with weights
    /// sqrt(2)-1 on the axes and 1-sqrt(2)/2 on the diagonals.
    static Neighborhood standard4();
    static Neighborhood axial(); // (1,0),(0,1), unit weights
    int size() const { return static_cast<int>(dirs.size()); }
};

struct SplitConfig {
    double mu0 = 1e-2;
    double tau = 0.0; // coupling growth mu_k = mu0 * tau^k; 0 selects 2^p
    int outer_iters = 40;
    /// Stop when max_s mean-pixel dist(x_s^{k+1}, x_s^k) < stop_tol.
    double stop_tol = 1e-4;
    unsigned threads = 0;
    SolverConfig inner;
};

struct IterRecord {
    int k = 0;
    double mu = 0.0;
    std::vector<double> block_energy; // per-block subproblem energy after update
    double consensus = 0.0;           // max pixelwise dist between any two blocks
    double gap_dp = 0.0;              // d^p(x_1^{k+1}, x_R^k)
    double wall_ms = 0.0;
};

struct SplitTrace {
    std::vector<IterRecord> iters;
    bool converged = false;
};

struct Solve2dResult {
    Image x;
    double energy = 0.0;
    SplitTrace trace;
    bool may_be_non_unique = false;
};

/// Penalty splitting over the neighborhood directions: every outer
/// iteration solves one univariate Potts/Mumford-Shah subproblem per grid
/// line per direction (exactly, via DpEngine), coupled through mu_k-weighted
/// proximity to the previously updated block. Lines within a block are
/// independent and solved in parallel; results do not depend on the thread
/// count.
Solve2dResult solve_2d(const Manifold& m, const Image& f, const MsParams& params,
                       const Neighborhood& nb = Neighborhood::standard4(),
                       const SplitConfig& cfg = {});

/// Verifies the splitting decay bound gap_k <= C / (mu_k - 1) for k >= 4,
/// with C fitted as max over the first three iterations of
/// gap_k * (mu_k - 1). Requires at least 5 recorded iterations.
bool iterate_decay_check(const SplitTrace& trace);

/// Single-image discrete energy
///   (1/p) sum d^p(x, f) + sum_s w_s sum_pairs psi(x_{(i,j)+a_s}, x_ij)
/// with psi = gamma * [w != z] (Potts) or (alpha/q) min(s^q, d^q)
/// (Mumford-Shah); pairs with an endpoint outside the grid are omitted.
double image_energy(const Manifold& m, const Image& x, const Image& f, const MsParams& params,
                    const Neighborhood& nb);

/// Energy of one block's subproblem (normalized by 1/p as in dp1d); used to
/// check blockwise optimality.
double block_energy(const Manifold& m, const Image& x, const Image& f, const Image& anchor,
                    const MsParams& params, const Neighborhood::Dir& dir, int n_dirs, double mu);

struct LpvqResult {
    Image x;
    double energy = 0.0;
    int sweeps = 0;
    bool converged = true;
};

/// L^p-V^q regularization of an image (the comparison method): cyclic
/// proximal point over the data term and all neighborhood coupling terms
///   (1/p) sum d^p(x,f) + alpha sum_s w_s (1/q) sum_pairs d^q.
LpvqResult lpvq_image(const Manifold& m, const Image& f, double p, double q, double alpha,
                      const Neighborhood& nb = Neighborhood::standard4(),
                      const CppaConfig& cfg = {});

} // namespace manireg
