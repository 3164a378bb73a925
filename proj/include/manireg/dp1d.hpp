#pragma once

#include <optional>

#include "manireg/prox.hpp"
#include "manireg/stats.hpp"

namespace manireg {

enum class Variant { Potts, MumfordShah };

/// Model parameters for the univariate solvers. The minimized functionals
/// (0-based indices, J(x) the jump set) are
///   Potts:        (1/p) sum d^p(x_i, f_i) + (mu/p) sum d^p(x_i, a_i)
///                 + gamma |J(x)|,            J(x) = { i : x_i != x_{i+1} }
///   Mumford-Shah: the same data terms
///                 + (alpha/q) sum_{i not in J} d^q(x_i, x_{i+1}) + gamma |J(x)|,
///                 J(x) = { i : d(x_i, x_{i+1}) > s },  s = (q gamma / alpha)^(1/q).
struct MsParams {
    Variant variant = Variant::Potts;
    double p = 2.0; // in {1, 2}
    double q = 2.0; // in {1, 2}, Mumford-Shah only
    double alpha = 1.0; // Mumford-Shah only
    double gamma = 1.0;
    const Signal* anchor = nullptr; // optional extra data term
    double mu = 0.0;

    double jump_height() const;
};

struct SegmentInfo {
    int l = 0, r = 0; // 0-based inclusive
    double eps = 0.0; // interval approximation error
};

struct Partition {
    std::vector<SegmentInfo> segments; // ordered, covering [0, n)
    int jumps() const { return static_cast<int>(segments.size()) - 1; }
};

/// Inner-solver configuration. Defaults are tightened relative to the
/// standalone module defaults so DP candidate comparisons are stable.
struct SolverConfig {
    MeanConfig mean;
    CppaConfig cppa;
    SolverConfig() { cppa.tol = 1e-9; }
};

struct DpResult {
    Signal x;
    Partition partition;
    double energy = 0.0;
    bool may_be_non_unique = false; // any interval solver raised the flag
    bool inner_converged = true;    // solvers of the returned segments converged
};

/// Safe pruning rule: the candidate with left endpoint l cannot strictly
/// improve on `best` when B_{l-1} + gamma >= best (interval errors are
/// nonnegative).
inline bool prune_bound(double b_prev, double gamma, double best) {
    return b_prev + gamma >= best;
}

/// Exact dynamic program for the univariate Potts / Mumford-Shah problem.
/// Interval errors are solved by frechet_point (Potts) or cppa_solve
/// (Mumford-Shah), warm-started column by column (fixed right endpoint,
/// decreasing left endpoint). Ties in the candidate minimization prefer the
/// largest left endpoint (fewest, rightmost jumps).
class DpEngine {
  public:
    DpEngine(const Manifold& m, const Signal& f, const MsParams& params,
             const SolverConfig& cfg = {}, bool cache_all = false);

    /// Solve with jump penalty `gamma` (params.gamma is ignored here so one
    /// engine can be reused across a gamma sweep with a shared error cache).
    DpResult solve(double gamma, bool prune = true);

    /// Interval error / minimizer exactly as the DP sees them. Requires
    /// cache_all; computes on demand. 0-based inclusive bounds.
    double interval_error(int l, int r);
    Signal interval_minimizer(int l, int r);

  private:
    struct Entry {
        double eps = 0.0;
        Signal h; // length 1 (Potts) or r-l+1 (Mumford-Shah)
        bool flag = false;
        bool converged = true;
    };
    struct ColumnOut {
        double best;
        int best_l; // 1-based
        Entry winner;
    };

    Entry compute_entry(int l, int r, const Entry* right_neighbor); // 1-based
    const Entry& cached_entry(int l, int r);
    ColumnOut run_column(int r, double gamma, bool prune, const std::vector<double>& B);

    Manifold m_;
    Signal f_;
    MsParams params_;
    SolverConfig cfg_;
    bool cache_all_;
    bool any_flag_ = false;
    std::vector<std::optional<Entry>> cache_;
    std::size_t cache_index(int l, int r) const {
        return static_cast<std::size_t>(r - 1) * r / 2 + (l - 1);
    }
};

DpResult solve_1d(const Manifold& m, const Signal& f, const MsParams& params,
                  const SolverConfig& cfg = {}, bool prune = true);

/// Energy of the corresponding functional at x (Mumford-Shah in the
/// truncated Blake-Zisserman form; Potts jumps counted where
/// d(x_i, x_{i+1}) > 1e-10).
double functional_energy(const Manifold& m, const Signal& x, const Signal& f,
                         const MsParams& params);

} // namespace manireg
