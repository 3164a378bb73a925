#pragma once

#include <vector>

#include "manireg/manifold.hpp"

namespace manireg {

/// 1D array of manifold points sharing one manifold handle.
struct Signal {
    Manifold m = Manifold::euclidean(1);
    std::vector<Vec> pts;

    Signal() = default;
    Signal(Manifold man, std::vector<Vec> p) : m(man), pts(std::move(p)) {}
    int size() const { return static_cast<int>(pts.size()); }
    const Vec& operator[](int i) const { return pts[static_cast<std::size_t>(i)]; }
    Vec& operator[](int i) { return pts[static_cast<std::size_t>(i)]; }
};

/// 2D row-major grid of manifold points.
struct Image {
    Manifold m = Manifold::euclidean(1);
    int rows = 0, cols = 0;
    std::vector<Vec> pts; // rows*cols, row-major

    Image() = default;
    Image(Manifold man, int r, int c) : m(man), rows(r), cols(c), pts(static_cast<std::size_t>(r) * c) {}
    int size() const { return rows * cols; }
    const Vec& at(int i, int j) const { return pts[static_cast<std::size_t>(i) * cols + j]; }
    Vec& at(int i, int j) { return pts[static_cast<std::size_t>(i) * cols + j]; }
};

inline Image image_from_signal(const Signal& s) {
    Image img(s.m, 1, s.size());
    img.pts = s.pts;
    return img;
}

inline Signal signal_from_image(const Image& img) {
    return Signal(img.m, img.pts);
}

/// Convenience for scalar (Euclidean R^1) signals.
Signal scalar_signal(const std::vector<double>& values);

} // namespace manireg
