#pragma once

#include <functional>

#include "kosgeo/common.hpp"
#include "kosgeo/linalg.hpp"

namespace kosgeo {

/// Point of the open unit ball of complex n-space. Boundary points are
/// rejected outright; ideal vertices are out of scope.
class BallPoint {
  public:
    explicit BallPoint(cvector coords) : c_(std::move(coords)) {
        if (c_.empty()) throw std::invalid_argument("BallPoint: dimension must be >= 1");
        if (vec_norm(c_) >= 1.0 - 1e-12)
            throw std::invalid_argument("BallPoint: norm must be < 1 (boundary rejected)");
    }

    static BallPoint origin(std::size_t dim) { return BallPoint(cvector(dim, 0.0)); }

    std::size_t dim() const { return c_.size(); }
    const cvector& coords() const { return c_; }
    const cdouble& operator[](std::size_t k) const { return c_[k]; }
    double norm() const { return vec_norm(c_); }

    BallPoint padded(std::size_t dim) const {
        if (dim < c_.size()) throw std::invalid_argument("BallPoint::padded: cannot truncate");
        cvector v = c_;
        v.resize(dim, 0.0);
        return BallPoint(std::move(v));
    }

  private:
    cvector c_;
};

inline cdouble herm_inner(const BallPoint& w, const BallPoint& z) {
    return herm_inner(w.coords(), z.coords());
}

// k(w,z) = 1 / (1 - <<w,z>>), the kernel of the ball.
inline cdouble szego_kernel(const BallPoint& w, const BallPoint& z) {
    if (w.dim() != z.dim()) throw std::invalid_argument("szego_kernel: dimension mismatch");
    return 1.0 / (1.0 - herm_inner(w, z));
}

/// Pseudohyperbolic distance, delta(0,z) = |z|.
inline double pseudo_dist(const BallPoint& y, const BallPoint& w) {
    if (y.dim() != w.dim()) throw std::invalid_argument("pseudo_dist: dimension mismatch");
    const double num = (1.0 - norm2(y.coords())) * (1.0 - norm2(w.coords()));
    const double den = std::norm(cdouble(1.0) - herm_inner(y, w));
    const double d2 = 1.0 - num / den;
    return std::sqrt(std::max(d2, 0.0));
}

/// The involutive automorphism phi_a with phi_a(a) = 0, phi_a(0) = a.
class Involution {
  public:
    explicit Involution(BallPoint base) : a_(std::move(base)), anorm2_(norm2(a_.coords())) {}

    const BallPoint& base() const { return a_; }

    BallPoint operator()(const BallPoint& z) const {
        if (z.dim() != a_.dim()) throw std::invalid_argument("involution: dimension mismatch");
        if (anorm2_ == 0.0) return z;
        const cdouble za = herm_inner(z, a_);
        const double s = std::sqrt(1.0 - anorm2_);
        const cdouble proj = za / anorm2_;  // P_a z = proj * a
        cvector out(z.dim());
        const cdouble denom = 1.0 - za;
        for (std::size_t k = 0; k < z.dim(); ++k) {
            const cdouble p = proj * a_[k];
            const cdouble q = z[k] - p;
            out[k] = (a_[k] - p - s * q) / denom;
        }
        return BallPoint(std::move(out));
    }

  private:
    BallPoint a_;
    double anorm2_;
};

/// Unitary map of C^n, stored as the rows of the matrix; z -> U z.
class Unitary {
  public:
    explicit Unitary(std::vector<cvector> rows) : rows_(std::move(rows)) {}

    static Unitary identity(std::size_t n) {
        std::vector<cvector> rows(n, cvector(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
        return Unitary(std::move(rows));
    }

    std::size_t dim() const { return rows_.size(); }

    cvector apply(const cvector& z) const {
        cvector out(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = herm_inner(z, conj_row(i));
        return out;
    }

    BallPoint operator()(const BallPoint& z) const { return BallPoint(apply(z.coords())); }

    // Adjoint (= inverse) action.
    BallPoint adjoint(const BallPoint& z) const {
        cvector out(rows_.size(), 0.0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t k = 0; k < rows_.size(); ++k) out[k] += z[i] * std::conj(rows_[i][k]);
        return BallPoint(std::move(out));
    }

  private:
    // herm_inner(z, conj(u)) = sum z_k u_k; row i acts by sum_k U(i,k) z_k.
    cvector conj_row(std::size_t i) const {
        cvector r = rows_[i];
        for (auto& c : r) c = std::conj(c);
        return r;
    }

    std::vector<cvector> rows_;
};

namespace detail {

// Gram-Schmidt completion: orthonormalize `seed` vectors (dropping
// numerically dependent ones), then extend with standard basis vectors in
// index order. Returns a full orthonormal basis of C^dim.
inline std::vector<cvector> orthonormal_frame(const std::vector<cvector>& seed, std::size_t dim) {
    std::vector<cvector> basis;
    auto push = [&](cvector v) {
        for (const auto& b : basis) {
            const cdouble c = herm_inner(v, b);
            for (std::size_t k = 0; k < dim; ++k) v[k] -= c * b[k];
        }
        const double n = vec_norm(v);
        if (n < 1e-12) return;
        for (auto& c : v) c /= n;
        basis.push_back(std::move(v));
    };
    for (const auto& s : seed)
        if (basis.size() < dim) push(s);
    for (std::size_t i = 0; i < dim && basis.size() < dim; ++i) {
        cvector e(dim, 0.0);
        e[i] = 1.0;
        push(std::move(e));
    }
    return basis;
}

// Unitary sending basis[k] to e_k.
inline Unitary frame_to_axes(const std::vector<cvector>& basis) {
    std::vector<cvector> rows;
    rows.reserve(basis.size());
    for (const auto& b : basis) {
        cvector r = b;
        for (auto& c : r) c = std::conj(c);
        rows.push_back(std::move(r));
    }
    return Unitary(std::move(rows));
}

}  // namespace detail

/// A ball automorphism of the form z -> U(phi_base(z)). Compositions of
/// these reach the whole group.
class Automorphism {
  public:
    Automorphism(Unitary u, BallPoint base) : u_(std::move(u)), inv_(std::move(base)) {}

    static Automorphism identity(std::size_t dim) {
        return Automorphism(Unitary::identity(dim), BallPoint::origin(dim));
    }

    BallPoint operator()(const BallPoint& z) const { return u_(inv_(z)); }

    // phi^{-1} = phi_base . U^H, since the involution is its own inverse.
    BallPoint inverse(const BallPoint& z) const { return inv_(u_.adjoint(z)); }

  private:
    Unitary u_;
    Involution inv_;
};

/// Seeded random isometry: a Haar-ish unitary composed with an involution
/// at a random interior point. Preserves pseudo_dist.
inline Automorphism random_automorphism(std::uint64_t seed, std::size_t dim) {
    Rng rng(seed);
    std::vector<cvector> seed_vecs;
    for (std::size_t i = 0; i < dim; ++i) {
        cvector v(dim);
        for (auto& c : v) c = rng.cgauss();
        seed_vecs.push_back(std::move(v));
    }
    auto frame = detail::orthonormal_frame(seed_vecs, dim);
    cvector base(dim);
    const double r = 0.85 * rng.uniform();
    cvector dir(dim);
    for (auto& c : dir) c = rng.cgauss();
    const double dn = vec_norm(dir);
    for (std::size_t k = 0; k < dim; ++k) base[k] = dn > 0 ? dir[k] / dn * r : 0.0;
    return Automorphism(detail::frame_to_axes(frame), BallPoint(std::move(base)));
}

/// Ordered configuration of pairwise-distinct points, one ambient dimension.
class PointConfig {
  public:
    explicit PointConfig(std::vector<BallPoint> pts, const Tolerance& tol = default_tol())
        : p_(std::move(pts)) {
        if (p_.empty()) throw std::invalid_argument("PointConfig: empty");
        for (const auto& q : p_)
            if (q.dim() != p_.front().dim())
                throw std::invalid_argument("PointConfig: mixed ambient dimensions");
        for (std::size_t i = 0; i < p_.size(); ++i)
            for (std::size_t j = i + 1; j < p_.size(); ++j)
                if (pseudo_dist(p_[i], p_[j]) <= tol.eq_tol)
                    throw std::invalid_argument("PointConfig: points must be pairwise distinct");
    }

    std::size_t size() const { return p_.size(); }
    std::size_t dim() const { return p_.front().dim(); }
    const BallPoint& operator[](std::size_t i) const { return p_[i]; }
    const std::vector<BallPoint>& points() const { return p_; }

    PointConfig mapped(const std::function<BallPoint(const BallPoint&)>& f) const {
        std::vector<BallPoint> out;
        out.reserve(p_.size());
        for (const auto& q : p_) out.push_back(f(q));
        return PointConfig(std::move(out));
    }

    PointConfig subset(const std::vector<std::size_t>& idx) const {
        std::vector<BallPoint> out;
        out.reserve(idx.size());
        for (auto i : idx) out.push_back(p_.at(i));
        return PointConfig(std::move(out));
    }

  private:
    std::vector<BallPoint> p_;
};

/// Complex geodesic through two distinct points.
class ComplexGeodesic {
  public:
    ComplexGeodesic(BallPoint p, BallPoint q) : p_(std::move(p)), q_(std::move(q)) {
        if (p_.dim() != q_.dim())
            throw std::invalid_argument("ComplexGeodesic: dimension mismatch");
        if (pseudo_dist(p_, q_) <= default_tol().eq_tol)
            throw std::invalid_argument("ComplexGeodesic: points must be distinct");
    }

    const BallPoint& first() const { return p_; }
    const BallPoint& second() const { return q_; }

  private:
    BallPoint p_, q_;
};

/// Metric projection of x onto the complex geodesic G: move G's first point
/// to the origin and its second onto the first axis; there the projection
/// keeps the first coordinate and drops the rest; map back.
inline BallPoint project_to_complex_geodesic(const ComplexGeodesic& g, const BallPoint& x) {
    const std::size_t dim = x.dim();
    if (g.first().dim() != dim)
        throw std::invalid_argument("project_to_complex_geodesic: dimension mismatch");
    const Involution phi(g.first());
    const BallPoint q1 = phi(g.second());
    const auto frame = detail::orthonormal_frame({q1.coords()}, dim);
    const Unitary u = detail::frame_to_axes(frame);
    const BallPoint xm = u(phi(x));
    cvector proj(dim, 0.0);
    proj[0] = xm[0];
    return phi(u.adjoint(BallPoint(std::move(proj))));
}

/// Moves a 3- or 4-point configuration to the model position: x1 = 0,
/// x2 = (a,0,...) with a > 0, x3 = (x,b,0,...) with b >= 0, and for
/// tetrahedra x4 = (y,z,c) with c >= 0. Output lives in C^(|X|-1).
inline PointConfig normalize_to_model(const PointConfig& x) {
    if (x.size() != 3 && x.size() != 4)
        throw std::invalid_argument("normalize_to_model: |X| must be 3 or 4");
    const std::size_t dim = x.dim();
    const Involution phi(x[0]);
    std::vector<cvector> moved;
    for (std::size_t i = 1; i < x.size(); ++i) moved.push_back(phi(x[i]).coords());
    const auto frame = detail::orthonormal_frame(moved, dim);
    const Unitary u = detail::frame_to_axes(frame);

    const std::size_t out_dim = x.size() - 1;
    std::vector<BallPoint> out;
    out.push_back(BallPoint::origin(out_dim));
    for (const auto& m : moved) {
        cvector v = u.apply(m);
        v.resize(out_dim, 0.0);
        out.push_back(BallPoint(std::move(v)));
    }
    // Gram-Schmidt pivots make the "new" coordinate of each point real and
    // nonnegative by construction; snap roundoff.
    for (std::size_t i = 1; i < out.size(); ++i) {
        cvector v = out[i].coords();
        if (i <= v.size() && std::abs(v[i - 1].imag()) < 1e-12)
            v[i - 1] = cdouble(std::max(v[i - 1].real(), 0.0), 0.0);
        for (std::size_t k = i; k < v.size(); ++k)
            if (std::abs(v[k]) < 1e-13) v[k] = 0.0;
        out[i] = BallPoint(std::move(v));
    }
    return PointConfig(std::move(out));
}

}  // namespace kosgeo
