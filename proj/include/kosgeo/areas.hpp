#pragma once

#include "kosgeo/rkhs.hpp"

namespace kosgeo {

struct AreaResult {
    double area;         // unsigned
    double signed_area;  // signed by vertex orientation
};

namespace detail {

inline void require_dim1(const PointConfig& t, const char* who) {
    if (t.dim() != 1) throw std::invalid_argument(std::string(who) + ": points must be in CH^1");
}

// Signed area of a CH^1 triangle via both printed expressions, which must
// agree; returns pi - arg(kos product) folded to the principal branch.
inline double signed_triangle_area_ch1(const PointConfig& t, const Tolerance& tol) {
    const GramSpec g = gram_of_config(t, tol);
    const cdouble prod = kos(g, 0, 1, 2, tol) * kos(g, 1, 2, 0, tol) * kos(g, 2, 0, 1, tol);
    const double e1 = wrap_angle(pi - std::arg(prod));
    const double e2 = wrap_angle(2.0 * alpha(g, 0, 1, 2));
    if (std::abs(wrap_angle(e1 - e2)) > tol.eq_tol)
        throw internal_error("area_ch1: kos-product and angular-invariant expressions disagree");
    return e1;
}

}  // namespace detail

/// Area of a geodesic triangle in CH^1:
/// pi - arg(kos_1(2,3) kos_2(3,1) kos_3(1,2)) = 2 alpha(1,2,3).
inline AreaResult area_ch1(const PointConfig& t, const Tolerance& tol = default_tol()) {
    if (t.size() != 3) throw std::invalid_argument("area_ch1: need exactly 3 points");
    detail::require_dim1(t, "area_ch1");
    const double s = detail::signed_triangle_area_ch1(t, tol);
    return {std::abs(s), s};
}

/// Area of a convex hyperbolic polygon with cyclically ordered vertices:
/// (n-2) pi - sum arg kos_i(i+1,i-1) = -2 sum arg k_{x_i x_{i+1}}.
/// (The first sum runs over the angles between each vertex's two cyclic
/// neighbours; for n = 3 those are the triangle factors kos_i(i+1,i+2).)
/// Returns the triangulated sum, after checking both expressions against it
/// mod 2 pi. Convexity and cyclic order are assumed, not checked.
inline AreaResult polygon_area_ch1(const PointConfig& p, const Tolerance& tol = default_tol()) {
    if (p.size() < 3) throw std::invalid_argument("polygon_area_ch1: need at least 3 vertices");
    detail::require_dim1(p, "polygon_area_ch1");
    const std::size_t n = p.size();

    double triangulated = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        triangulated +=
            detail::signed_triangle_area_ch1(p.subset({0, i, i + 1}), tol);

    const GramSpec g = gram_of_config(p, tol);
    double kos_arg_sum = 0.0;
    double kernel_arg_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n, k = (i + n - 1) % n;
        kos_arg_sum += std::arg(kos(g, i, j, k, tol));
        // <k_{x_i}, k_{x_{i+1}}> in the paper's inner-product orientation is
        // the (j,i) entry of the Gram stored here.
        kernel_arg_sum += std::arg(g(j, i));
    }
    const double e1 = static_cast<double>(n - 2) * pi - kos_arg_sum;
    const double e2 = -2.0 * kernel_arg_sum;
    if (std::abs(wrap_angle(e1 - triangulated)) > tol.eq_tol ||
        std::abs(wrap_angle(e2 - triangulated)) > tol.eq_tol)
        throw internal_error("polygon_area_ch1: printed expressions disagree with the "
                             "triangulated sum");
    return {std::abs(triangulated), triangulated};
}

/// Area of a geodesic triangle in the Beltrami-Klein disk BK_2 (curvature
/// -1/4): 4 (pi - sum of the vertex angles), angles = arccos of the (real)
/// kos values.
inline double area_bk2(const PointConfig& t, const Tolerance& tol = default_tol()) {
    if (t.size() != 3) throw std::invalid_argument("area_bk2: need exactly 3 points");
    if (t.dim() != 2) throw std::invalid_argument("area_bk2: points must have 2 coordinates");
    for (const auto& q : t.points())
        for (const auto& c : q.coords())
            if (std::abs(c.imag()) > tol.eq_tol)
                throw std::invalid_argument("area_bk2: coordinates must be real");
    const GramSpec g = gram_of_config(t, tol);
    double angle_sum = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
        const std::size_t a = (v + 1) % 3, b = (v + 2) % 3;
        const cdouble k = kos(g, v, a, b, tol);
        if (std::abs(k.imag()) > 1e3 * tol.eq_tol)
            throw std::invalid_argument("area_bk2: configuration is not real");
        angle_sum += std::acos(clamp_to_unit(k.real(), 1e-9));
    }
    return 4.0 * (pi - angle_sum);
}

}  // namespace kosgeo
