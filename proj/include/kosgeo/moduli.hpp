#pragma once

#include "kosgeo/ball.hpp"
#include "kosgeo/rkhs.hpp"

namespace kosgeo {

/// Congruence-class coordinates of an ordered (n+1)-point configuration:
/// distances from the base point plus the base-point KOS matrix. By
/// construction this carries n real distances plus n(n-1)/2 complex kos
/// entries, i.e. n^2 real parameters in total.
class ModuliPoint {
  public:
    ModuliPoint(std::vector<double> rho, HermitianMatrix m,
                const Tolerance& tol = default_tol())
        : rho_(std::move(rho)), m_(std::move(m)) {
        if (rho_.size() != m_.size())
            throw std::invalid_argument("ModuliPoint: rho and M sizes disagree");
        for (double r : rho_)
            if (!(r > 0.0 && r < 1.0 - 1e-12))
                throw std::invalid_argument("ModuliPoint: rho entries must lie in (0,1)");
        for (std::size_t i = 0; i < m_.size(); ++i)
            if (std::abs(m_(i, i) - cdouble(1.0)) > tol.eq_tol)
                throw std::invalid_argument("ModuliPoint: M must have unit diagonal");
        if (is_psd(m_, tol).verdict != Verdict::psd)
            throw std::invalid_argument("ModuliPoint: M must be positive semidefinite");
    }

    std::size_t valence() const { return rho_.size(); }
    const std::vector<double>& rho() const { return rho_; }
    const HermitianMatrix& m() const { return m_; }

  private:
    std::vector<double> rho_;
    HermitianMatrix m_;
};

/// Moduli of an n-valent vertex: the KOS matrix alone.
class VertexModuli {
  public:
    explicit VertexModuli(HermitianMatrix m, const Tolerance& tol = default_tol())
        : m_(std::move(m)) {
        for (std::size_t i = 0; i < m_.size(); ++i)
            if (std::abs(m_(i, i) - cdouble(1.0)) > tol.eq_tol)
                throw std::invalid_argument("VertexModuli: M must have unit diagonal");
        if (is_psd(m_, tol).verdict != Verdict::psd)
            throw std::invalid_argument("VertexModuli: M must be positive semidefinite");
    }

    std::size_t valence() const { return m_.size(); }
    const HermitianMatrix& m() const { return m_; }

  private:
    HermitianMatrix m_;
};

/// rho_i = delta(x_0, x_{i+1}); M = KOS(DA(X), base).
inline ModuliPoint encode(const PointConfig& x, std::size_t base = 0,
                          const Tolerance& tol = default_tol()) {
    if (x.size() < 2) throw std::invalid_argument("encode: need at least 2 points");
    if (base >= x.size()) throw std::invalid_argument("encode: base out of range");
    std::vector<std::size_t> order{base};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (i != base) order.push_back(i);
    const PointConfig rebased = (base == 0) ? x : x.subset(order);

    std::vector<double> rho;
    for (std::size_t i = 1; i < rebased.size(); ++i)
        rho.push_back(pseudo_dist(rebased[0], rebased[i]));
    const GramSpec g = gram_of_config(rebased, tol);
    return ModuliPoint(std::move(rho), kos_matrix(g, 0, tol).m, tol);
}

/// Theorem converse: realize (rho, M) as x_0 = 0, x_{i+1} = rho_i * w_i with
/// {w_i} unit vectors whose Gram matrix is M.
inline PointConfig decode(const ModuliPoint& m, std::size_t ambient_dim = 0,
                          const Tolerance& tol = default_tol()) {
    auto w = gram_factorize(m.m(), tol);
    const std::size_t r = w.front().size();
    const std::size_t dim = std::max<std::size_t>(ambient_dim, r);
    std::vector<BallPoint> pts;
    pts.push_back(BallPoint::origin(dim));
    for (std::size_t i = 0; i < m.valence(); ++i) {
        cvector v = w[i];
        const double n = vec_norm(v);
        if (n < tol.eq_tol)
            throw std::invalid_argument("decode: M row factor degenerated to zero");
        for (auto& c : v) c *= m.rho()[i] / n;
        v.resize(dim, 0.0);
        pts.emplace_back(std::move(v));
    }
    return PointConfig(std::move(pts), tol);
}

/// Congruence test by encoding equality (complete by the moduli theorem).
inline bool congruent(const PointConfig& x, const PointConfig& y,
                      const Tolerance& tol = default_tol()) {
    if (x.size() != y.size()) throw std::invalid_argument("congruent: size mismatch");
    const ModuliPoint mx = encode(x, 0, tol);
    const ModuliPoint my = encode(y, 0, tol);
    for (std::size_t i = 0; i < mx.valence(); ++i)
        if (std::abs(mx.rho()[i] - my.rho()[i]) > tol.eq_tol) return false;
    for (std::size_t i = 0; i < mx.valence(); ++i)
        for (std::size_t j = 0; j < mx.valence(); ++j)
            if (std::abs(mx.m()(i, j) - my.m()(i, j)) > tol.eq_tol) return false;
    return true;
}

/// X is in general position iff M(X) is positive definite.
inline bool general_position(const PointConfig& x, const Tolerance& tol = default_tol()) {
    const ModuliPoint m = encode(x, 0, tol);
    return is_pd(m.m(), tol).verdict == Verdict::psd;
}

inline bool vertex_congruent(const VertexModuli& v, const VertexModuli& w,
                             const Tolerance& tol = default_tol()) {
    if (v.valence() != w.valence())
        throw std::invalid_argument("vertex_congruent: valence mismatch");
    for (std::size_t i = 0; i < v.valence(); ++i)
        for (std::size_t j = 0; j < v.valence(); ++j)
            if (std::abs(v.m()(i, j) - w.m()(i, j)) > tol.eq_tol) return false;
    return true;
}

}  // namespace kosgeo
