#include "manireg/manifold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace manireg {

namespace {

thread_local std::uint64_t g_spd_clamps = 0;

constexpr double kEigFloor = 1e-12;

using Mat3 = Eigen::Matrix3d;

Mat3 to_mat3(const Vec& x) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = x[3 * i + j];
    return 0.5 * (m + m.transpose());
}

Vec from_mat3(const Mat3& m) {
    Mat3 s = 0.5 * (m + m.transpose());
    Vec x(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            x[3 * i + j] = s(i, j);
    return x;
}

struct SpdEig {
    Mat3 vectors;
    Eigen::Vector3d values;
};

SpdEig spd_eig_clamped(const Mat3& m) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(m);
    SpdEig e{es.eigenvectors(), es.eigenvalues()};
    for (int i = 0; i < 3; ++i) {
        if (e.values[i] < kEigFloor) {
            e.values[i] = kEigFloor;
            ++g_spd_clamps;
        }
    }
    return e;
}

Mat3 apply_scalar(const SpdEig& e, double (*fn)(double)) {
    Eigen::Vector3d d;
    for (int i = 0; i < 3; ++i) d[i] = fn(e.values[i]);
    return e.vectors * d.asDiagonal() * e.vectors.transpose();
}

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

} // namespace

std::uint64_t spd_clamp_count() { return g_spd_clamps; }
void spd_clamp_reset() { g_spd_clamps = 0; }

Manifold Manifold::euclidean(int dim) {
    if (dim < 1) throw UserError("euclidean dimension must be positive");
    return Manifold(Kind::Euclidean, dim, dim);
}

Manifold Manifold::sphere(int ambient_dim) {
    if (ambient_dim < 2) throw UserError("sphere ambient dimension must be >= 2");
    return Manifold(Kind::Sphere, ambient_dim, ambient_dim);
}

Manifold Manifold::spd3() { return Manifold(Kind::Spd3, 9, 3); }

const char* Manifold::name() const {
    switch (kind_) {
        case Kind::Euclidean: return "euclidean";
        case Kind::Sphere: return "sphere";
        case Kind::Spd3: return "spd3";
    }
    return "?";
}

void Manifold::check_size(const Vec& x) const {
    if (x.size() != coords_)
        throw DimensionError("coordinate vector has size " + std::to_string(x.size()) +
                             ", manifold expects " + std::to_string(coords_));
}

double Manifold::dist(const Vec& x, const Vec& y) const {
    check_size(x);
    check_size(y);
    switch (kind_) {
        case Kind::Euclidean:
            return (x - y).norm();
        case Kind::Sphere:
            return std::acos(clamp_unit(x.dot(y)));
        case Kind::Spd3: {
            SpdEig ed = spd_eig_clamped(to_mat3(x));
            Mat3 isqrt = apply_scalar(ed, [](double v) { return 1.0 / std::sqrt(v); });
            Mat3 mid = isqrt * to_mat3(y) * isqrt;
            SpdEig em = spd_eig_clamped(0.5 * (mid + mid.transpose()));
            double s = 0;
            for (int i = 0; i < 3; ++i) {
                double l = std::log(em.values[i]);
                s += l * l;
            }
            return std::sqrt(s);
        }
    }
    return 0;
}

Vec Manifold::exp(const Vec& base, const Vec& w) const {
    check_size(base);
    check_size(w);
    switch (kind_) {
        case Kind::Euclidean:
            return base + w;
        case Kind::Sphere: {
            double wn = w.norm();
            if (std::abs(w.dot(base)) > 1e-10 * std::max(1.0, wn))
                throw UserError("sphere tangent vector is not orthogonal to its base point");
            if (wn == 0.0) return base;
            Vec out = base * std::cos(wn) + w * (std::sin(wn) / wn);
            out /= out.norm();
            return out;
        }
        case Kind::Spd3: {
            SpdEig ed = spd_eig_clamped(to_mat3(base));
            Mat3 sqrt = apply_scalar(ed, [](double v) { return std::sqrt(v); });
            Mat3 isqrt = apply_scalar(ed, [](double v) { return 1.0 / std::sqrt(v); });
            Mat3 a = isqrt * to_mat3(w) * isqrt;
            Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (a + a.transpose()));
            Mat3 expa = es.eigenvectors() *
                        es.eigenvalues().array().exp().matrix().asDiagonal() *
                        es.eigenvectors().transpose();
            return from_mat3(sqrt * expa * sqrt);
        }
    }
    return base;
}

Vec Manifold::log(const Vec& base, const Vec& target) const {
    check_size(base);
    check_size(target);
    switch (kind_) {
        case Kind::Euclidean:
            return target - base;
        case Kind::Sphere: {
            double c = clamp_unit(base.dot(target));
            if (c <= -1.0 + 1e-12)
                throw AntipodalError("sphere log undefined for antipodal points");
            Vec u = target - c * base;
            double un = u.norm();
            if (un < 1e-15) return Vec::Zero(coords_);
            return u * (std::acos(c) / un);
        }
        case Kind::Spd3: {
            SpdEig ed = spd_eig_clamped(to_mat3(base));
            Mat3 sqrt = apply_scalar(ed, [](double v) { return std::sqrt(v); });
            Mat3 isqrt = apply_scalar(ed, [](double v) { return 1.0 / std::sqrt(v); });
            Mat3 mid = isqrt * to_mat3(target) * isqrt;
            SpdEig em = spd_eig_clamped(0.5 * (mid + mid.transpose()));
            Mat3 logm = apply_scalar(em, [](double v) { return std::log(v); });
            return from_mat3(sqrt * logm * sqrt);
        }
    }
    return target;
}

Vec Manifold::geopoint(const Vec& x, const Vec& y, double t) const {
    double d = dist(x, y);
    if (t < 0) {
        if (t < -1e-12) throw UserError("geopoint: negative arc length");
        t = 0;
    }
    if (t > d) {
        if (t > d + 1e-9 * std::max(1.0, d))
            throw UserError("geopoint: arc length exceeds the distance between the endpoints");
        t = d;
    }
    if (t == 0.0 || d == 0.0) return x;
    return exp(x, log(x, y) * (t / d));
}

double Manifold::inner(const Vec& base, const Vec& u, const Vec& v) const {
    check_size(base);
    check_size(u);
    check_size(v);
    switch (kind_) {
        case Kind::Euclidean:
        case Kind::Sphere:
            return u.dot(v);
        case Kind::Spd3: {
            SpdEig ed = spd_eig_clamped(to_mat3(base));
            Mat3 isqrt = apply_scalar(ed, [](double v_) { return 1.0 / std::sqrt(v_); });
            Mat3 a = isqrt * to_mat3(u) * isqrt;
            Mat3 b = isqrt * to_mat3(v) * isqrt;
            return (a.array() * b.array()).sum();
        }
    }
    return 0;
}

double Manifold::norm(const Vec& base, const Vec& w) const {
    if (kind_ == Kind::Spd3) {
        SpdEig ed = spd_eig_clamped(to_mat3(base));
        Mat3 isqrt = apply_scalar(ed, [](double v) { return 1.0 / std::sqrt(v); });
        return (isqrt * to_mat3(w) * isqrt).norm();
    }
    check_size(base);
    check_size(w);
    return w.norm();
}

void Manifold::validate_point(const Vec& x) const {
    check_size(x);
    switch (kind_) {
        case Kind::Euclidean:
            break;
        case Kind::Sphere:
            if (std::abs(x.norm() - 1.0) > 1e-10)
                throw UserError("sphere point is not unit length");
            break;
        case Kind::Spd3: {
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (std::abs(x[3 * i + j] - x[3 * j + i]) > 1e-10)
                        throw UserError("spd3 point is not symmetric");
            Eigen::SelfAdjointEigenSolver<Mat3> es(to_mat3(x));
            if (es.eigenvalues().minCoeff() <= 0.0)
                throw UserError("spd3 point has a non-positive eigenvalue");
            break;
        }
    }
}

} // namespace manireg
