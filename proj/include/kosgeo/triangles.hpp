#pragma once

#include "kosgeo/ball.hpp"
#include "kosgeo/rkhs.hpp"

namespace kosgeo {

/// S: normalized Gram moduli |h^_12|, |h^_23|, |h^_13| plus the angular invariant.
struct TriangleS {
    double m12, m23, m13;
    double alpha123;
};

/// S': the three side lengths plus the angular invariant.
struct TriangleSPrime {
    double d12, d13, d23;
    double alpha123;
};

/// S'': two side lengths at the distinguished vertex plus kos there.
struct TriangleSDoublePrime {
    double d12, d13;
    cdouble kos123;
};

namespace detail {

inline void check_open_unit(double d, const char* name) {
    if (!(d > 0.0 && d < 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

}  // namespace detail

/// Gamma_abc = sqrt((1 - d_ab^2)(1 - d_bc^2) / (1 - d_ca^2)).
inline double gamma_factor(double d_ab, double d_bc, double d_ca) {
    detail::check_open_unit(d_ab, "d_ab");
    detail::check_open_unit(d_bc, "d_bc");
    detail::check_open_unit(d_ca, "d_ca");
    return std::sqrt((1.0 - d_ab * d_ab) * (1.0 - d_bc * d_bc) / (1.0 - d_ca * d_ca));
}

inline TriangleSPrime s_to_sprime(const TriangleS& s) {
    auto d = [](double m) { return std::sqrt(std::max(0.0, 1.0 - m * m)); };
    return {d(s.m12), d(s.m13), d(s.m23), s.alpha123};
}

inline TriangleS sprime_to_s(const TriangleSPrime& s) {
    auto m = [](double d) { return std::sqrt(std::max(0.0, 1.0 - d * d)); };
    return {m(s.d12), m(s.d23), m(s.d13), s.alpha123};
}

/// Realizability of S' data as an actual triangle. Equivalent to
/// |kos_1(2,3)| <= 1 written in the Gamma variables:
///   Gamma_123 + Gamma_231 + Gamma_312
///     <= 2 cos(alpha) + sqrt((1-d12^2)(1-d23^2)(1-d13^2)),
/// with equality exactly on the complex-geodesic boundary.
inline bool realizable_sprime(const TriangleSPrime& s, const Tolerance& tol = default_tol()) {
    const double g123 = gamma_factor(s.d12, s.d23, s.d13);
    const double g231 = gamma_factor(s.d23, s.d13, s.d12);
    const double g312 = gamma_factor(s.d13, s.d12, s.d23);
    const double prod = std::sqrt((1.0 - s.d12 * s.d12) * (1.0 - s.d23 * s.d23) *
                                  (1.0 - s.d13 * s.d13));
    return g123 + g231 + g312 <= 2.0 * std::cos(s.alpha123) + prod + tol.eq_tol;
}

inline bool realizable_s(const TriangleS& s, const Tolerance& tol = default_tol()) {
    return realizable_sprime(s_to_sprime(s), tol);
}

inline bool realizable_sdp(const TriangleSDoublePrime& s, const Tolerance& tol = default_tol()) {
    detail::check_open_unit(s.d12, "d12");
    detail::check_open_unit(s.d13, "d13");
    return std::abs(s.kos123) <= 1.0 + tol.eq_tol;
}

inline bool in_complex_geodesic(const TriangleSDoublePrime& s,
                                const Tolerance& tol = default_tol()) {
    return std::abs(std::abs(s.kos123) - 1.0) <= tol.eq_tol;
}

/// S'' -> S'. In model position a*conj(x) = d12*d13*kos, the third side comes
/// from the distance formula; the angular invariant of the model triangle is
/// alpha(1,2,3) = -arg(1 - a*conj(x)).
inline TriangleSPrime sdp_to_sprime(const TriangleSDoublePrime& s,
                                    const Tolerance& tol = default_tol()) {
    if (!realizable_sdp(s, tol))
        throw std::invalid_argument("sdp_to_sprime: |kos| > 1, not realizable");
    const cdouble ax = s.d12 * s.d13 * s.kos123;  // <<x_2, x_3>> in model position
    const cdouble one_minus = 1.0 - ax;
    const double d23_sq =
        1.0 - (1.0 - s.d12 * s.d12) * (1.0 - s.d13 * s.d13) / std::norm(one_minus);
    return {s.d12, s.d13, std::sqrt(std::max(d23_sq, 0.0)), -std::arg(one_minus)};
}

/// S' -> S''. |1 - a*conj(x)| from the distance formula, phase from alpha.
inline TriangleSDoublePrime sprime_to_sdp(const TriangleSPrime& s,
                                          const Tolerance& tol = default_tol()) {
    if (!realizable_sprime(s, tol))
        throw std::invalid_argument("sprime_to_sdp: data violates the realizability inequality");
    // |1 - ax|^2 = (1-d12^2)(1-d13^2)/(1-d23^2)
    const double mod = std::sqrt((1.0 - s.d12 * s.d12) * (1.0 - s.d13 * s.d13) /
                                 (1.0 - s.d23 * s.d23));
    const cdouble ax = 1.0 - std::polar(mod, -s.alpha123);
    return {s.d12, s.d13, ax / (s.d12 * s.d13)};
}

/// Model triangle {(0,0), (a,0), (x,b)} with a = d12, x = d13*conj(kos),
/// b = sqrt(d13^2 - |x|^2) >= 0.
inline PointConfig build_model_triangle(const TriangleSDoublePrime& s,
                                        const Tolerance& tol = default_tol()) {
    if (!realizable_sdp(s, tol))
        throw std::invalid_argument("build_model_triangle: |kos| > 1, not realizable");
    const double a = s.d12;
    const cdouble x = s.d13 * std::conj(s.kos123);
    const double b2 = s.d13 * s.d13 - std::norm(x);
    const double b = std::sqrt(std::max(b2, 0.0));
    std::vector<BallPoint> pts;
    pts.emplace_back(cvector{0.0, 0.0});
    pts.emplace_back(cvector{a, 0.0});
    pts.emplace_back(cvector{x, b});
    return PointConfig(std::move(pts));
}

/// Extract S'' / S' data from a 3-point configuration (distinguished vertex
/// first).
inline TriangleSDoublePrime triangle_sdp(const PointConfig& x,
                                         const Tolerance& tol = default_tol()) {
    if (x.size() != 3) throw std::invalid_argument("triangle_sdp: need exactly 3 points");
    const GramSpec g = gram_of_config(x, tol);
    return {delta_h(g, 0, 1), delta_h(g, 0, 2), kos(g, 0, 1, 2, tol)};
}

inline TriangleSPrime triangle_sprime(const PointConfig& x,
                                      const Tolerance& tol = default_tol()) {
    if (x.size() != 3) throw std::invalid_argument("triangle_sprime: need exactly 3 points");
    const GramSpec g = gram_of_config(x, tol);
    return {delta_h(g, 0, 1), delta_h(g, 0, 2), delta_h(g, 1, 2), alpha(g, 0, 1, 2)};
}

/// The SSS counterexample family: all members share the same three side
/// lengths (1/2, 1/sqrt(2), 1/sqrt(3)) yet are pairwise non-congruent.
inline PointConfig sss_family(double t, const Tolerance& tol = default_tol()) {
    if (!(t >= 1.0 - tol.eq_tol && t <= std::sqrt(2.0) + tol.eq_tol))
        throw std::invalid_argument("sss_family: t must lie in [1, sqrt(2)]");
    const double c = clamp_to_unit((t * t + 7.0) / (8.0 * t), 1e-9);
    const double theta = std::acos(c);
    const double second = std::sqrt(std::max(0.0, 2.0 - t * t)) / 2.0;
    std::vector<BallPoint> pts;
    pts.emplace_back(cvector{0.0, 0.0});
    pts.emplace_back(cvector{0.5, 0.0});
    pts.emplace_back(cvector{std::polar(t / 2.0, theta), second});
    return PointConfig(std::move(pts));
}

/// Polar form of kos_1(2,3) by purely geometric routes: modulus from the
/// metric projection onto the complex geodesic through x1, x2; argument from
/// the Euclidean angle at the origin in model position.
inline std::pair<double, double> kos_polar(const PointConfig& x,
                                           const Tolerance& tol = default_tol()) {
    if (x.size() != 3) throw std::invalid_argument("kos_polar: need exactly 3 points");
    const ComplexGeodesic g(x[0], x[1]);
    const BallPoint y = project_to_complex_geodesic(g, x[2]);
    const double r = pseudo_dist(x[0], y) / pseudo_dist(x[0], x[2]);
    const PointConfig model = normalize_to_model(x);
    const cdouble z1 = model[2][0];
    const double theta = (std::abs(z1) < tol.eq_tol) ? 0.0 : -std::arg(z1);
    return {r, theta};
}

}  // namespace kosgeo
