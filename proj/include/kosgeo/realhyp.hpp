#pragma once

#include "kosgeo/linalg.hpp"
#include "kosgeo/rkhs.hpp"

namespace kosgeo {

/// Three angles in the open interval (0, pi).
struct AngleTriple {
    double a, b, c;

    AngleTriple(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        for (double v : {a, b, c})
            if (!(v > 0.0 && v < pi))
                throw std::invalid_argument("AngleTriple: angles must lie in (0, pi)");
    }

    std::array<double, 3> values() const { return {a, b, c}; }
};

/// 3x3 symmetric unit-diagonal matrix with entries cos(va_ij) for the pairs
/// (23), (24), (34).
struct VertexAngleMatrix {
    std::array<double, 3> cosines;

    HermitianMatrix matrix() const {
        ComplexMatrix m(3);
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        m(0, 1) = m(1, 0) = cosines[0];
        m(0, 2) = m(2, 0) = cosines[1];
        m(1, 2) = m(2, 1) = cosines[2];
        return HermitianMatrix(std::move(m));
    }
};

/// Same layout with entries -cos(da_ij).
struct DihedralAngleMatrix {
    std::array<double, 3> neg_cosines;

    HermitianMatrix matrix() const {
        ComplexMatrix m(3);
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        m(0, 1) = m(1, 0) = neg_cosines[0];
        m(0, 2) = m(2, 0) = neg_cosines[1];
        m(1, 2) = m(2, 1) = neg_cosines[2];
        return HermitianMatrix(std::move(m));
    }

    static DihedralAngleMatrix from_angles(const AngleTriple& da) {
        return {{-std::cos(da.a), -std::cos(da.b), -std::cos(da.c)}};
    }
};

/// A configuration sits in a copy of real hyperbolic space iff every kos
/// value over every base point is real.
inline bool is_real_gram(const GramSpec& g, const Tolerance& tol = default_tol()) {
    for (std::size_t s = 0; s < g.size(); ++s)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                if (s == i || s == j) continue;
                if (std::abs(kos(g, s, i, j, tol).imag()) > tol.eq_tol) return false;
            }
    return true;
}

inline bool is_real_config(const PointConfig& x, const Tolerance& tol = default_tol()) {
    if (x.size() < 3) return true;
    return is_real_gram(gram_of_config(x, tol), tol);
}

/// Vertex-angle cosines of a real 4-point configuration at its first vertex.
inline VertexAngleMatrix vertex_angles(const PointConfig& x,
                                       const Tolerance& tol = default_tol()) {
    if (x.size() != 4) throw std::invalid_argument("vertex_angles: need exactly 4 points");
    const GramSpec g = gram_of_config(x, tol);
    if (!is_real_gram(g, tol))
        throw std::invalid_argument("vertex_angles: configuration is not real");
    auto entry = [&](std::size_t i, std::size_t j) {
        return clamp_to_unit(kos(g, 0, i, j, tol).real(), tol.eq_tol);
    };
    return {{entry(1, 2), entry(1, 3), entry(2, 3)}};
}

/// Hyperbolic law of cosines: dihedral-angle cosines from the vertex angles
/// (va_23, va_24, va_34); returns (cos da_23, cos da_24, cos da_34).
inline std::array<double, 3> dihedral_from_vertex(const AngleTriple& va) {
    const std::array<double, 3> v = va.values();  // (23), (24), (34)
    auto da = [&](int ij, int ki, int kj) {
        const double s1 = std::sin(v[ki]), s2 = std::sin(v[kj]);
        if (s1 == 0.0 || s2 == 0.0)
            throw std::invalid_argument("dihedral_from_vertex: degenerate zero sine");
        return (std::cos(v[ij]) - std::cos(v[ki]) * std::cos(v[kj])) / (s1 * s2);
    };
    // da_23 pairs with va_23 opposite the edge through 4, etc.
    return {da(0, 1, 2), da(1, 0, 2), da(2, 0, 1)};
}

/// Inverse direction: vertex-angle cosines from the dihedral angles.
inline std::array<double, 3> vertex_from_dihedral(const AngleTriple& da) {
    const std::array<double, 3> d = da.values();
    auto va = [&](int ij, int ki, int kj) {
        const double s1 = std::sin(d[ki]), s2 = std::sin(d[kj]);
        if (s1 == 0.0 || s2 == 0.0)
            throw std::invalid_argument("vertex_from_dihedral: degenerate zero sine");
        return (std::cos(d[ij]) + std::cos(d[ki]) * std::cos(d[kj])) / (s1 * s2);
    };
    return {va(0, 1, 2), va(1, 0, 2), va(2, 0, 1)};
}

namespace detail {

// The cosine chain cos(b+c) <= cos(a) <= cos|b-c| unwinds to two margins on
// each side of the duality; both must be nonnegative.
inline std::pair<double, double> gva_margins(const AngleTriple& g) {
    const auto v = g.values();
    const double sum = v[0] + v[1] + v[2];
    const double mx = std::max({v[0], v[1], v[2]});
    return {sum - 2.0 * mx, 2.0 * pi - sum};
}

inline std::pair<double, double> gda_margins(const AngleTriple& g) {
    const auto v = g.values();
    const double sum = v[0] + v[1] + v[2];
    const double mn = std::min({v[0], v[1], v[2]});
    return {sum - pi, pi - (sum - 2.0 * mn)};
}

inline bool angle_check(const AngleTriple& g, bool vertex_side, const Tolerance& tol) {
    const auto v = g.values();
    const auto [m1, m2] = vertex_side ? gva_margins(g) : gda_margins(g);
    const bool simple = m1 >= -tol.eq_tol && m2 >= -tol.eq_tol;
    HermitianMatrix m = vertex_side
                            ? VertexAngleMatrix{{std::cos(v[0]), std::cos(v[1]),
                                                 std::cos(v[2])}}.matrix()
                            : DihedralAngleMatrix::from_angles(g).matrix();
    const auto psd = is_psd(m, tol);
    const bool matrix_route = psd.verdict == Verdict::psd;
    const bool band = std::min(std::abs(m1), std::abs(m2)) <= 2e-9 || psd.boundary;
    if (simple != matrix_route && !band)
        throw internal_error("angle criterion and PSD route disagree outside the band");
    return simple;
}

}  // namespace detail

/// Good vertex angles: the triple arises at a trivalent vertex iff each angle
/// is at most the sum of the other two and the total is at most 2 pi
/// (equivalently M_CVA is PSD).
inline bool gva_check(const AngleTriple& g, const Tolerance& tol = default_tol()) {
    return detail::angle_check(g, true, tol);
}

/// Good dihedral angles: the triple arises iff the angle sum is at least pi
/// and no pairwise sum exceeds the third by more than pi (equivalently
/// M_{-CDA} is PSD).
inline bool gda_check(const AngleTriple& g, const Tolerance& tol = default_tol()) {
    return detail::angle_check(g, false, tol);
}

/// Duality: Gamma in GVA iff Pi - Gamma in GDA. Involutive.
inline AngleTriple dual(const AngleTriple& g) {
    return AngleTriple(pi - g.a, pi - g.b, pi - g.c);
}

struct GateResult {
    bool feasible;
    bool boundary;
    double det;
};

/// Dihedral gate: L = M_{-CDA} of a tetrahedron vertex iff L is PSD; the
/// explicit trigonometric inequality is evaluated alongside as a cross-check.
inline GateResult dihedral_gate(const DihedralAngleMatrix& l,
                                const Tolerance& tol = default_tol()) {
    const HermitianMatrix m = l.matrix();
    const auto psd = is_psd(m, tol);
    const bool feasible = psd.verdict == Verdict::psd;

    const double c23 = -l.neg_cosines[0], c24 = -l.neg_cosines[1], c34 = -l.neg_cosines[2];
    const double lhs = (c34 + c23 * c24) * (c34 + c23 * c24);
    const double rhs = (1.0 - c23 * c23) * (1.0 - c24 * c24);
    const bool trig = lhs <= rhs + tol.eq_tol;
    if (feasible != trig && std::abs(lhs - rhs) > 10.0 * tol.eq_tol && !psd.boundary)
        throw internal_error("dihedral_gate: PSD route and trigonometric route disagree");
    return {feasible, psd.boundary, det_real(m, tol)};
}

struct Amplitude {
    double polynomial;
    double factorized;
};

/// Vertex-angle amplitude: det M_CVA in both its polynomial form and its
/// sine-product factorization (s = half the angle sum).
inline Amplitude amplitude_va(const AngleTriple& va) {
    const auto v = va.values();
    const double c1 = std::cos(v[0]), c2 = std::cos(v[1]), c3 = std::cos(v[2]);
    const double poly = 1.0 + 2.0 * c1 * c2 * c3 - c1 * c1 - c2 * c2 - c3 * c3;
    const double s = (v[0] + v[1] + v[2]) / 2.0;
    const double fac =
        4.0 * std::sin(s) * std::sin(s - v[0]) * std::sin(s - v[1]) * std::sin(s - v[2]);
    return {poly, fac};
}

/// Dihedral-angle amplitude: det M_{-CDA} and its cosine-product form.
inline Amplitude amplitude_da(const AngleTriple& da) {
    const auto v = da.values();
    const double c1 = std::cos(v[0]), c2 = std::cos(v[1]), c3 = std::cos(v[2]);
    const double poly = 1.0 - 2.0 * c1 * c2 * c3 - c1 * c1 - c2 * c2 - c3 * c3;
    const double s = (v[0] + v[1] + v[2]) / 2.0;
    const double fac =
        -4.0 * std::cos(s) * std::cos(s - v[0]) * std::cos(s - v[1]) * std::cos(s - v[2]);
    return {poly, fac};
}

struct CayleyPoint {
    double x, y, z;
};

/// Cayley's cubic p = 1 + 2xyz - x^2 - y^2 - z^2 (= det M_CVA on cosines).
inline double cayley_p(const CayleyPoint& p) {
    return 1.0 + 2.0 * p.x * p.y * p.z - p.x * p.x - p.y * p.y - p.z * p.z;
}

enum class CayleyClass { interior, smooth_boundary, singular, exterior, out_of_box };

/// The surface p = 0 bounds the vertex-angle moduli region; its singular
/// points are (+-1,+-1,+-1) with an even number of minus signs.
inline CayleyClass cayley_classify(const CayleyPoint& p, const Tolerance& tol = default_tol()) {
    for (double v : {p.x, p.y, p.z})
        if (std::abs(v) > 1.0 + tol.eq_tol) return CayleyClass::out_of_box;
    static constexpr std::array<std::array<double, 3>, 4> singular = {{
        {1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}}};
    for (const auto& s : singular)
        if (std::abs(p.x - s[0]) <= tol.eq_tol && std::abs(p.y - s[1]) <= tol.eq_tol &&
            std::abs(p.z - s[2]) <= tol.eq_tol)
            return CayleyClass::singular;
    const double val = cayley_p(p);
    if (std::abs(val) <= tol.eq_tol) return CayleyClass::smooth_boundary;
    return val > 0.0 ? CayleyClass::interior : CayleyClass::exterior;
}

}  // namespace kosgeo
