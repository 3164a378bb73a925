#include "manireg/dp1d.hpp"

#include <cmath>
#include <limits>

namespace manireg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJumpEps = 1e-10; // Potts: treat closer pairs as equal

void validate_params(const MsParams& p, int n) {
    if (n < 1) throw UserError("solve_1d: empty signal");
    if (p.p != 1.0 && p.p != 2.0) throw UserError("solve_1d: p must be 1 or 2");
    if (p.variant == Variant::MumfordShah) {
        if (p.q != 1.0 && p.q != 2.0) throw UserError("solve_1d: q must be 1 or 2");
        if (p.alpha <= 0) throw UserError("solve_1d: alpha must be positive for Mumford-Shah");
    }
    if (p.mu < 0) throw UserError("solve_1d: mu must be nonnegative");
}

} // namespace

double MsParams::jump_height() const { return std::pow(q * gamma / alpha, 1.0 / q); }

DpEngine::DpEngine(const Manifold& m, const Signal& f, const MsParams& params,
                   const SolverConfig& cfg, bool cache_all)
    : m_(m), f_(f), params_(params), cfg_(cfg), cache_all_(cache_all) {
    validate_params(params_, f_.size());
    if (params_.anchor && params_.anchor->size() != f_.size())
        throw UserError("solve_1d: anchor length mismatch");
    if (cache_all_) {
        const std::size_t n = static_cast<std::size_t>(f_.size());
        cache_.resize(n * (n + 1) / 2);
    }
}

DpEngine::Entry DpEngine::compute_entry(int l, int r, const Entry* right_neighbor) {
    const int l0 = l - 1, r0 = r - 1; // to 0-based
    Entry e;
    IntervalExtra extra{params_.anchor, params_.mu};
    if (params_.variant == Variant::Potts || l == r) {
        // Single-index Mumford-Shah intervals have no coupling term and
        // coincide with the Potts interval problem.
        const Vec* warm = right_neighbor && right_neighbor->h.size() > 0
                              ? &right_neighbor->h[0]
                              : nullptr;
        IntervalResult ir = interval_error_potts(m_, f_, l0, r0, params_.p, extra, warm, cfg_.mean);
        e.eps = ir.eps;
        e.h = Signal(m_, {ir.minimizer});
        e.flag = ir.may_be_non_unique;
        e.converged = ir.converged;
        return e;
    }
    VqProblem prob;
    prob.data = Signal(m_, {f_.pts.begin() + l0, f_.pts.begin() + r0 + 1});
    prob.p = params_.p;
    prob.q = params_.q;
    prob.alpha = params_.alpha;
    Signal anchor_slice;
    if (params_.anchor && params_.mu > 0) {
        anchor_slice =
            Signal(m_, {params_.anchor->pts.begin() + l0, params_.anchor->pts.begin() + r0 + 1});
        prob.anchor = &anchor_slice;
        prob.mu = params_.mu;
    }
    Signal init;
    const Signal* init_ptr = nullptr;
    if (right_neighbor && right_neighbor->h.size() == r - l) {
        init = Signal(m_, {});
        init.pts.reserve(static_cast<std::size_t>(r - l + 1));
        init.pts.push_back(f_[l0]);
        init.pts.insert(init.pts.end(), right_neighbor->h.pts.begin(),
                        right_neighbor->h.pts.end());
        init_ptr = &init;
    }
    CppaResult cr = cppa_solve(m_, prob, init_ptr, cfg_.cppa);
    e.eps = cr.energy;
    e.h = std::move(cr.x);
    e.converged = cr.converged;
    return e;
}

const DpEngine::Entry& DpEngine::cached_entry(int l, int r) {
    auto& slot = cache_[cache_index(l, r)];
    if (!slot) {
        // Fill the tail of column r so the warm-start chain matches a full
        // column sweep.
        Entry prev;
        bool have_prev = false;
        for (int ll = r; ll >= l; --ll) {
            auto& s = cache_[cache_index(ll, r)];
            if (s) {
                prev = *s;
                have_prev = true;
                continue;
            }
            Entry e = compute_entry(ll, r, have_prev ? &prev : nullptr);
            s = e;
            prev = std::move(e);
            have_prev = true;
        }
    }
    return *slot;
}

DpEngine::ColumnOut DpEngine::run_column(int r, double gamma, bool prune,
                                         const std::vector<double>& B) {
    ColumnOut out{kInf, r, {}};
    Entry prev;
    bool have_prev = false;
    for (int l = r; l >= 1; --l) {
        if (prune && out.best < kInf && prune_bound(B[l - 1], gamma, out.best)) continue;
        Entry e;
        if (cache_all_) {
            e = cached_entry(l, r);
        } else {
            e = compute_entry(l, r, have_prev ? &prev : nullptr);
        }
        if (e.flag) any_flag_ = true;
        double b = B[l - 1] + gamma + e.eps;
        if (b < out.best) { // strict: ties keep the larger l seen first
            out.best = b;
            out.best_l = l;
            out.winner = e;
        }
        prev = std::move(e);
        have_prev = true;
    }
    return out;
}

DpResult DpEngine::solve(double gamma, bool prune) {
    if (gamma <= 0) throw UserError("solve_1d: gamma must be positive");
    const int n = f_.size();
    std::vector<double> B(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> jp(static_cast<std::size_t>(n) + 1, 0);
    B[0] = -gamma;
    any_flag_ = false;
    for (int r = 1; r <= n; ++r) {
        ColumnOut col = run_column(r, gamma, prune, B);
        B[r] = col.best;
        jp[r] = col.best_l - 1;
    }

    DpResult res;
    res.energy = B[n];
    res.may_be_non_unique = any_flag_;
    res.x = Signal(m_, std::vector<Vec>(static_cast<std::size_t>(n)));

    // Reconstruct right to left. Re-running a column reproduces the same
    // warm-start chain and prune skips as the forward pass, so the segment
    // minimizers match the errors that entered B exactly.
    int r = n;
    while (r > 0) {
        int l = jp[r] + 1;
        ColumnOut col = run_column(r, gamma, prune, B);
        const Entry& e = col.winner;
        if (!e.converged) res.inner_converged = false;
        for (int i = l; i <= r; ++i)
            res.x[i - 1] = params_.variant == Variant::Potts ? e.h[0] : e.h[i - l];
        res.partition.segments.push_back({l - 1, r - 1, e.eps});
        r = l - 1;
    }
    std::reverse(res.partition.segments.begin(), res.partition.segments.end());
    return res;
}

double DpEngine::interval_error(int l, int r) {
    if (!cache_all_) throw Error("interval_error requires cache_all mode");
    return cached_entry(l + 1, r + 1).eps;
}

Signal DpEngine::interval_minimizer(int l, int r) {
    if (!cache_all_) throw Error("interval_minimizer requires cache_all mode");
    const Entry& e = cached_entry(l + 1, r + 1);
    if (params_.variant == Variant::Potts) {
        Signal s(m_, std::vector<Vec>(static_cast<std::size_t>(r - l + 1), e.h[0]));
        return s;
    }
    return e.h;
}

DpResult solve_1d(const Manifold& m, const Signal& f, const MsParams& params,
                  const SolverConfig& cfg, bool prune) {
    DpEngine engine(m, f, params, cfg);
    return engine.solve(params.gamma, prune);
}

double functional_energy(const Manifold& m, const Signal& x, const Signal& f,
                         const MsParams& params) {
    if (x.size() != f.size()) throw UserError("functional_energy: length mismatch");
    const int n = f.size();
    double e = 0;
    for (int i = 0; i < n; ++i) e += std::pow(m.dist(x[i], f[i]), params.p);
    if (params.anchor && params.mu > 0) {
        for (int i = 0; i < n; ++i)
            e += params.mu * std::pow(m.dist(x[i], (*params.anchor)[i]), params.p);
    }
    e /= params.p;
    if (params.variant == Variant::Potts) {
        for (int i = 0; i + 1 < n; ++i)
            if (m.dist(x[i], x[i + 1]) > kJumpEps) e += params.gamma;
        return e;
    }
    const double sq = std::pow(params.jump_height(), params.q);
    for (int i = 0; i + 1 < n; ++i) {
        double dq = std::pow(m.dist(x[i], x[i + 1]), params.q);
        e += params.alpha / params.q * std::min(sq, dq);
    }
    return e;
}

} // namespace manireg
