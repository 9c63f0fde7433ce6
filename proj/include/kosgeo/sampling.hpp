#pragma once

#include "kosgeo/ball.hpp"
#include "kosgeo/rkhs.hpp"

namespace kosgeo {

/// Random interior point, Gaussian direction with radius below max_radius.
inline BallPoint random_ball_point(Rng& rng, std::size_t dim, double max_radius = 0.8) {
    cvector v(dim);
    for (auto& c : v) c = rng.cgauss();
    const double n = vec_norm(v);
    const double r = max_radius * std::pow(rng.uniform(), 1.0 / (2.0 * dim));
    for (auto& c : v) c = (n > 0.0) ? c / n * r : 0.0;
    return BallPoint(std::move(v));
}

/// Random configuration of well-separated points.
inline PointConfig random_config(Rng& rng, std::size_t count, std::size_t dim,
                                 double max_radius = 0.8, double min_sep = 0.05) {
    std::vector<BallPoint> pts;
    int guard = 0;
    while (pts.size() < count) {
        BallPoint cand = random_ball_point(rng, dim, max_radius);
        bool ok = true;
        for (const auto& p : pts)
            if (pseudo_dist(p, cand) < min_sep) ok = false;
        if (ok) pts.push_back(std::move(cand));
        if (++guard > 10000)
            throw std::runtime_error("random_config: failed to place separated points");
    }
    return PointConfig(std::move(pts));
}

/// Random Hermitian matrix with O(1) Gaussian entries.
inline HermitianMatrix random_hermitian(Rng& rng, std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = rng.gauss();
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = rng.cgauss() * 0.7;
            m(j, i) = std::conj(m(i, j));
        }
    }
    return HermitianMatrix(std::move(m));
}

/// Random PSD matrix A = B^H B scaled to O(1).
inline HermitianMatrix random_psd(Rng& rng, std::size_t n, std::size_t rank = 0) {
    const std::size_t r = (rank == 0) ? n : rank;
    std::vector<cvector> rows(n, cvector(r));
    for (auto& row : rows)
        for (auto& c : row) c = rng.cgauss() / std::sqrt(static_cast<double>(r));
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = herm_inner(rows[i], rows[j]);
    return HermitianMatrix(std::move(m));
}

/// Random GramSpec via a random configuration (always irreducible and PD for
/// separated interior points).
inline GramSpec random_gram_spec(Rng& rng, std::size_t n, std::size_t dim = 3) {
    return gram_of_config(random_config(rng, n, dim));
}

}  // namespace kosgeo
