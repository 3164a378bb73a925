#include "manireg/prox.hpp"

#include <cmath>

namespace manireg {

namespace {

void check_exponent(double e, const char* which) {
    if (e != 1.0 && e != 2.0)
        throw UserError(std::string("closed-form proximal maps require ") + which + " in {1, 2}");
}

} // namespace

std::pair<Vec, Vec> prox_pair(const Manifold& m, const Vec& a, const Vec& b, double lambda,
                              double q) {
    check_exponent(q, "q");
    if (lambda <= 0) throw UserError("prox_pair: lambda must be positive");
    double d = m.dist(a, b);
    if (d == 0.0) return {a, b};
    double t = (q == 1.0) ? std::min(lambda, d / 2) : lambda / (1 + 2 * lambda) * d;
    return {m.geopoint(a, b, t), m.geopoint(b, a, t)};
}

Vec prox_data(const Manifold& m, const Vec& x, const Vec& f, double lambda, double p) {
    check_exponent(p, "p");
    if (lambda <= 0) throw UserError("prox_data: lambda must be positive");
    double d = m.dist(x, f);
    if (d == 0.0) return x;
    double s = (p == 1.0) ? std::min(lambda, d) : lambda / (1 + lambda) * d;
    return m.geopoint(x, f, s);
}

double vq_energy(const Manifold& m, const VqProblem& prob, const Signal& x) {
    const int n = prob.data.size();
    double e = 0;
    for (int i = 0; i < n; ++i) e += std::pow(m.dist(x[i], prob.data[i]), prob.p);
    if (prob.anchor && prob.mu > 0)
        for (int i = 0; i < n; ++i)
            e += prob.mu * std::pow(m.dist(x[i], (*prob.anchor)[i]), prob.p);
    e /= prob.p;
    if (prob.alpha > 0) {
        double v = 0;
        for (int i = 0; i + 1 < n; ++i) v += std::pow(m.dist(x[i], x[i + 1]), prob.q);
        e += prob.alpha / prob.q * v;
    }
    return e;
}

CppaResult cppa_solve(const Manifold& m, const VqProblem& prob, const Signal* init,
                      const CppaConfig& cfg) {
    check_exponent(prob.p, "p");
    check_exponent(prob.q, "q");
    const int n = prob.data.size();
    if (n == 0) throw UserError("cppa_solve: empty data");
    if (prob.alpha < 0 || prob.mu < 0) throw UserError("cppa_solve: negative penalty");
    if (prob.anchor && prob.anchor->size() != n)
        throw UserError("cppa_solve: anchor length mismatch");
    if (init && init->size() != n) throw UserError("cppa_solve: init length mismatch");

    CppaResult res;
    res.x = init ? *init : prob.data;
    const bool with_anchor = prob.anchor && prob.mu > 0;
    double prev = vq_energy(m, prob, res.x);
    res.converged = false;
    int k = 0;
    while (k < cfg.sweeps) {
        ++k;
        double lambda = cfg.lambda0 / k;
        for (int i = 0; i < n; ++i) res.x[i] = prox_data(m, res.x[i], prob.data[i], lambda, prob.p);
        if (with_anchor)
            for (int i = 0; i < n; ++i)
                res.x[i] = prox_data(m, res.x[i], (*prob.anchor)[i], lambda * prob.mu, prob.p);
        if (prob.alpha > 0) {
            for (int i = 0; i + 1 < n; ++i) {
                auto [a, b] = prox_pair(m, res.x[i], res.x[i + 1], lambda * prob.alpha, prob.q);
                res.x[i] = std::move(a);
                res.x[i + 1] = std::move(b);
            }
        }
        double e = vq_energy(m, prob, res.x);
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
