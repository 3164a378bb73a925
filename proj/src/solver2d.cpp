#include "manireg/solver2d.hpp"

#include <chrono>
#include <cmath>

#include "manireg/parallel.hpp"

namespace manireg {

namespace {

constexpr double kJumpEps = 1e-10;

std::vector<std::vector<int>> extract_lines(int rows, int cols, int di, int dj) {
    std::vector<std::vector<int>> lines;
    auto inside = [&](int i, int j) { return i >= 0 && i < rows && j >= 0 && j < cols; };
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (inside(i - di, j - dj)) continue; // not a chain start
            std::vector<int> line;
            for (int ci = i, cj = j; inside(ci, cj); ci += di, cj += dj)
                line.push_back(ci * cols + cj);
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

double image_dist_p(const Manifold& m, const Image& a, const Image& b, double p) {
    double s = 0;
    for (int i = 0; i < a.size(); ++i) s += std::pow(m.dist(a.pts[i], b.pts[i]), p);
    return s;
}

double mean_pixel_dist(const Manifold& m, const Image& a, const Image& b) {
    double s = 0;
    for (int i = 0; i < a.size(); ++i) s += m.dist(a.pts[i], b.pts[i]);
    return s / std::max(1, a.size());
}

} // namespace

Neighborhood Neighborhood::standard4() {
    const double wa = std::sqrt(2.0) - 1.0;
    const double wd = 1.0 - std::sqrt(2.0) / 2.0;
    return {{{1, 0, wa}, {0, 1, wa}, {1, 1, wd}, {1, -1, wd}}};
}

Neighborhood Neighborhood::axial() { return {{{1, 0, 1.0}, {0, 1, 1.0}}}; }

double image_energy(const Manifold& m, const Image& x, const Image& f, const MsParams& params,
                    const Neighborhood& nb) {
    double e = image_dist_p(m, x, f, params.p) / params.p;
    const double sq =
        params.variant == Variant::MumfordShah ? std::pow(params.jump_height(), params.q) : 0;
    for (const auto& dir : nb.dirs) {
        double psi = 0;
        for (int i = 0; i < x.rows; ++i) {
            for (int j = 0; j < x.cols; ++j) {
                int i2 = i + dir.di, j2 = j + dir.dj;
                if (i2 < 0 || i2 >= x.rows || j2 < 0 || j2 >= x.cols) continue;
                double d = m.dist(x.at(i, j), x.at(i2, j2));
                if (params.variant == Variant::Potts) {
                    if (d > kJumpEps) psi += params.gamma;
                } else {
                    psi += params.alpha / params.q * std::min(sq, std::pow(d, params.q));
                }
            }
        }
        e += dir.weight * psi;
    }
    return e;
}

double block_energy(const Manifold& m, const Image& x, const Image& f, const Image& anchor,
                    const MsParams& params, const Neighborhood::Dir& dir, int n_dirs, double mu) {
    MsParams lp = params;
    lp.alpha = n_dirs * dir.weight * params.alpha;
    lp.gamma = n_dirs * dir.weight * params.gamma;
    lp.mu = mu;
    double e = 0;
    for (const auto& idx : extract_lines(x.rows, x.cols, dir.di, dir.dj)) {
        Signal xs(x.m, {}), fs(x.m, {}), as(x.m, {});
        for (int id : idx) {
            xs.pts.push_back(x.pts[id]);
            fs.pts.push_back(f.pts[id]);
            as.pts.push_back(anchor.pts[id]);
        }
        lp.anchor = &as;
        e += functional_energy(m, xs, fs, lp);
    }
    return e;
}

Solve2dResult solve_2d(const Manifold& m, const Image& f, const MsParams& params,
                       const Neighborhood& nb, const SplitConfig& cfg) {
    if (f.size() == 0) throw UserError("solve_2d: empty image");
    if (nb.dirs.empty()) throw UserError("solve_2d: empty neighborhood");
    for (const auto& d : nb.dirs) {
        if (d.di == 0 && d.dj == 0) throw UserError("solve_2d: zero offset in neighborhood");
        if (d.weight < 0) throw UserError("solve_2d: negative neighborhood weight");
    }
    if (params.anchor) throw UserError("solve_2d: params.anchor is reserved for internal use");

    const int R = nb.size();
    const double tau = cfg.tau > 0 ? cfg.tau : std::pow(2.0, params.p);
    if (tau <= 1) throw UserError("solve_2d: tau must exceed 1");

    // Precompute line index sets per direction.
    std::vector<std::vector<std::vector<int>>> lines(R);
    for (int s = 0; s < R; ++s) lines[s] = extract_lines(f.rows, f.cols, nb.dirs[s].di, nb.dirs[s].dj);

    std::vector<Image> x(static_cast<std::size_t>(R), f);
    Solve2dResult res;
    double mu = cfg.mu0;
    for (int k = 1; k <= cfg.outer_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        mu *= tau; // mu_k = mu0 * tau^k
        IterRecord rec;
        rec.k = k;
        rec.mu = mu;
        double max_move = 0;
        for (int s = 0; s < R; ++s) {
            const Image& anchor = s == 0 ? x[R - 1] : x[s - 1];
            const Image old = x[s];
            MsParams lp = params;
            lp.alpha = R * nb.dirs[s].weight * params.alpha;
            lp.gamma = R * nb.dirs[s].weight * params.gamma;
            lp.mu = mu;
            double block_e = 0;
            std::vector<double> line_e(lines[s].size(), 0.0);
            std::vector<char> line_flag(lines[s].size(), 0);
            // Each line task reads only its own pixel slots of `anchor`
            // before writing them, and lines partition the grid, so even the
            // self-anchored R=1 case is race-free and schedule-independent.
            Image& xs = x[s];
            parallel_for(lines[s].size(), cfg.threads, [&](std::size_t li) {
                const auto& idx = lines[s][li];
                Signal fs(f.m, {}), as(f.m, {});
                fs.pts.reserve(idx.size());
                as.pts.reserve(idx.size());
                for (int id : idx) {
                    fs.pts.push_back(f.pts[id]);
                    as.pts.push_back(anchor.pts[id]);
                }
                MsParams line_params = lp;
                line_params.anchor = &as;
                DpResult dr = solve_1d(m, fs, line_params, cfg.inner);
                for (std::size_t t = 0; t < idx.size(); ++t) xs.pts[idx[t]] = dr.x[t];
                line_e[li] = dr.energy;
                line_flag[li] = dr.may_be_non_unique ? 1 : 0;
            });
            for (std::size_t li = 0; li < lines[s].size(); ++li) {
                block_e += line_e[li];
                if (line_flag[li]) res.may_be_non_unique = true;
            }
            rec.block_energy.push_back(block_e);
            if (s == 0) rec.gap_dp = image_dist_p(m, x[0], R == 1 ? old : x[R - 1], params.p);
            max_move = std::max(max_move, mean_pixel_dist(m, x[s], old));
        }
        double consensus = 0;
        for (int s = 0; s < R; ++s)
            for (int s2 = s + 1; s2 < R; ++s2)
                for (int i = 0; i < f.size(); ++i)
                    consensus = std::max(consensus, m.dist(x[s].pts[i], x[s2].pts[i]));
        rec.consensus = consensus;
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        res.trace.iters.push_back(std::move(rec));
        if (max_move < cfg.stop_tol) {
            res.trace.converged = true;
            break;
        }
    }
    res.x = x[static_cast<std::size_t>(R) - 1];
    res.energy = image_energy(m, res.x, f, params, nb);
    return res;
}

bool iterate_decay_check(const SplitTrace& trace) {
    const auto& it = trace.iters;
    if (it.size() < 5) throw UserError("iterate_decay_check: need at least 5 outer iterations");
    double c = 0;
    for (std::size_t k = 0; k < 3; ++k) c = std::max(c, it[k].gap_dp * (it[k].mu - 1.0));
    for (std::size_t k = 3; k < it.size(); ++k) {
        if (it[k].mu <= 1.0) return false;
        if (it[k].gap_dp > c / (it[k].mu - 1.0) + 1e-12) return false;
    }
    return true;
}

LpvqResult lpvq_image(const Manifold& m, const Image& f, double p, double q, double alpha,
                      const Neighborhood& nb, const CppaConfig& cfg) {
    if (f.size() == 0) throw UserError("lpvq_image: empty image");
    struct Pair {
        int a, b;
        double w;
    };
    std::vector<Pair> pairs;
    for (const auto& dir : nb.dirs)
        for (int i = 0; i < f.rows; ++i)
            for (int j = 0; j < f.cols; ++j) {
                int i2 = i + dir.di, j2 = j + dir.dj;
                if (i2 < 0 || i2 >= f.rows || j2 < 0 || j2 >= f.cols) continue;
                pairs.push_back({i * f.cols + j, i2 * f.cols + j2, dir.weight});
            }

    auto energy = [&](const Image& x) {
        double e = image_dist_p(m, x, f, p) / p;
        for (const auto& pr : pairs)
            e += alpha * pr.w / q * std::pow(m.dist(x.pts[pr.a], x.pts[pr.b]), q);
        return e;
    };

    LpvqResult res;
    res.x = f;
    double prev = energy(res.x);
    res.converged = false;
    int k = 0;
    while (k < cfg.sweeps) {
        ++k;
        double lambda = cfg.lambda0 / k;
        for (int i = 0; i < f.size(); ++i)
            res.x.pts[i] = prox_data(m, res.x.pts[i], f.pts[i], lambda, p);
        if (alpha > 0) {
            for (const auto& pr : pairs) {
                auto [a, b] =
                    prox_pair(m, res.x.pts[pr.a], res.x.pts[pr.b], lambda * alpha * pr.w, q);
                res.x.pts[pr.a] = std::move(a);
                res.x.pts[pr.b] = std::move(b);
            }
        }
        double e = energy(res.x);
        double rel = std::abs(prev - e) / std::max(std::abs(prev), 1e-300);
        prev = e;
        if (rel < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    res.energy = prev;
    res.sweeps = k;
    return res;
}

} // namespace manireg
