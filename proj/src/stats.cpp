#include "manireg/stats.hpp"

#include <cmath>
#include <numbers>

namespace manireg {

namespace {

double power_cost(const Manifold& m, std::span<const Vec> pts, std::span<const double> w,
                  double p, const Vec& z) {
    double c = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) c += w[i] * std::pow(m.dist(z, pts[i]), p);
    return c / p;
}

double mean_pairwise_dist(const Manifold& m, std::span<const Vec> pts) {
    const std::size_t n = pts.size();
    if (n < 2) return 0;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += m.dist(pts[i], pts[j]);
    return s / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

bool beyond_hemisphere(const Manifold& m, std::span<const Vec> pts) {
    if (m.kind() != Manifold::Kind::Sphere) return false;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (m.dist(pts[i], pts[j]) > std::numbers::pi / 2) return true;
    return false;
}

} // namespace

FrechetResult frechet_point(const Manifold& m, std::span<const Vec> points,
                            std::span<const double> weights, double p,
                            const MeanConfig& cfg) {
    if (points.empty()) throw UserError("frechet_point: no input points");
    if (points.size() != weights.size())
        throw UserError("frechet_point: points/weights length mismatch");
    if (p < 1.0) throw UserError("frechet_point: p must be >= 1");
    double wsum = 0;
    for (double w : weights) {
        if (w < 0) throw UserError("frechet_point: negative weight");
        wsum += w;
    }
    if (wsum <= 0) throw UserError("frechet_point: weights must not all be zero");

    FrechetResult res;
    res.may_be_non_unique = beyond_hemisphere(m, points);
    Vec z = cfg.init ? *cfg.init : points[0];

    if (p == 1.0) {
        // Subgradient descent: unit-length direction, steps a/k
        // (square-summable, not summable). Terms coinciding with the current
        // iterate are skipped for that iteration.
        double a = cfg.step_scale > 0 ? cfg.step_scale : mean_pairwise_dist(m, points);
        Vec best = z;
        double best_cost = power_cost(m, points, weights, p, z);
        if (cfg.init) {
            // A bad warm start must never beat the trivial candidate.
            double c0 = power_cost(m, points, weights, p, points[0]);
            if (c0 < best_cost) {
                best_cost = c0;
                best = points[0];
            }
        }
        int k = 0;
        if (a > 0) {
            for (k = 1; k <= cfg.max_iters; ++k) {
                double step = a / k;
                if (step < cfg.tol) break;
                Vec g = Vec::Zero(m.coord_count());
                for (std::size_t i = 0; i < points.size(); ++i) {
                    double d = m.dist(z, points[i]);
                    if (d <= 0 || weights[i] == 0) continue;
                    g += (weights[i] / d) * m.log(z, points[i]);
                }
                double gn = m.norm(z, g);
                if (gn < 1e-15) break;
                z = m.exp(z, g * (step / gn));
                double c = power_cost(m, points, weights, p, z);
                if (c < best_cost) {
                    best_cost = c;
                    best = z;
                }
            }
        }
        res.point = best;
        res.cost = best_cost;
        res.iters = k > cfg.max_iters ? cfg.max_iters : k;
        res.converged = true;
        return res;
    }

    // Smooth case. For p=2 the step is the paper's full gradient with 1/N
    // averaging (weighted form: divide by sum of weights); for general p>1
    // the normalization generalizes to sum_i w_i d^(p-2).
    double prev_cost = power_cost(m, points, weights, p, z);
    int k = 0;
    bool converged = false;
    for (k = 0; k < cfg.max_iters; ++k) {
        Vec g = Vec::Zero(m.coord_count());
        double norm_w = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (weights[i] == 0) continue;
            double scale = weights[i];
            if (p != 2.0) {
                double d = m.dist(z, points[i]);
                if (d <= 0) continue;
                scale *= std::pow(d, p - 2.0);
            }
            g += scale * m.log(z, points[i]);
            norm_w += scale;
        }
        if (norm_w <= 0) {
            converged = true;
            break;
        }
        g /= norm_w;
        if (m.norm(z, g) < cfg.tol) {
            converged = true;
            break;
        }
        z = m.exp(z, g);
        double c = power_cost(m, points, weights, p, z);
        if (c > prev_cost + 1e-12 * (1.0 + std::abs(prev_cost))) res.descent_violated = true;
        prev_cost = c;
    }
    res.point = z;
    res.cost = prev_cost;
    res.iters = k;
    res.converged = converged;
    return res;
}

IntervalResult interval_error_potts(const Manifold& m, const Signal& data, int l, int r,
                                    double p, const IntervalExtra& extra, const Vec* warm,
                                    const MeanConfig& cfg) {
    if (l < 0 || r >= data.size() || l > r)
        throw UserError("interval_error_potts: bad interval bounds");
    const int n = r - l + 1;
    if (n == 1 && !(extra.anchor && extra.mu > 0)) {
        // Single data point, no anchor: the point itself is exact.
        return {0.0, data[l], false, true};
    }
    std::vector<Vec> pts;
    std::vector<double> w;
    pts.reserve(static_cast<std::size_t>(n) * (extra.anchor ? 2 : 1));
    w.reserve(pts.capacity());
    for (int i = l; i <= r; ++i) {
        pts.push_back(data[i]);
        w.push_back(1.0);
    }
    if (extra.anchor && extra.mu > 0) {
        if (extra.anchor->size() != data.size())
            throw UserError("interval_error_potts: anchor length mismatch");
        for (int i = l; i <= r; ++i) {
            pts.push_back((*extra.anchor)[i]);
            w.push_back(extra.mu);
        }
    }
    MeanConfig c = cfg;
    c.init = warm;
    FrechetResult fr = frechet_point(m, pts, w, p, c);
    return {fr.cost, fr.point, fr.may_be_non_unique, fr.converged};
}

Signal scalar_signal(const std::vector<double>& values) {
    Signal s(Manifold::euclidean(1), {});
    s.pts.reserve(values.size());
    for (double v : values) {
        Vec x(1);
        x[0] = v;
        s.pts.push_back(x);
    }
    return s;
}

} // namespace manireg
