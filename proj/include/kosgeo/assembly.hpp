#pragma once

#include <map>

#include "kosgeo/moduli.hpp"
#include "kosgeo/rkhs.hpp"
#include "kosgeo/triangles.hpp"

namespace kosgeo {

/// Triangle seen from its distinguished first vertex: the two ray lengths
/// and the kos value there, ordered (ray a, ray b).
struct VertexTriangleData {
    double len_a;
    double len_b;
    cdouble kos;
};

/// The Q1 matched set: T2 -> (x1,x2,x3), T3 -> (x1,x3,x4), T4 -> (x1,x4,x2).
using MatchedTriangleSet = std::array<VertexTriangleData, 3>;

/// Feasible z-region of assemble_v3: the intersection of two closed disks.
struct DiskRegion {
    cdouble center3;
    double radius3;
    cdouble center4;
    double radius4;
    cdouble witness_z;
};

struct AssemblyVerdict {
    bool feasible = false;
    bool boundary = false;  // decisive quantity inside the tolerance band
    std::optional<PointConfig> witness;
    std::optional<GramSpec> witness_gram;
    std::vector<std::pair<std::vector<std::size_t>, double>> minors;
    std::optional<DiskRegion> free_parameters;
    std::string note;
};

/// Side-length identifications of the Q1 scheme:
/// l_2b = l_3a, l_3b = l_4a, l_4b = l_2a.
inline bool validate_matched(const MatchedTriangleSet& t, const Tolerance& tol = default_tol()) {
    return std::abs(t[0].len_b - t[1].len_a) <= tol.eq_tol &&
           std::abs(t[1].len_b - t[2].len_a) <= tol.eq_tol &&
           std::abs(t[2].len_b - t[0].len_a) <= tol.eq_tol;
}

/// Cocycle identity for the four faces of a labelled tetrahedron:
/// alpha(1,2,3) - alpha(2,3,4) + alpha(3,4,1) - alpha(4,1,2) = 0 (mod 2 pi).
inline bool validate_cocycle(double a123, double a234, double a341, double a412,
                             const Tolerance& tol = default_tol()) {
    return std::abs(wrap_angle(a123 - a234 + a341 - a412)) <= tol.eq_tol;
}

/// Fourth-face data from three matched S' faces with the S6.1 labelling:
/// faces (1,2,3), (1,3,4), (1,4,2) determine the face (2,3,4); its sides are
/// the already-known opposite edges, its angular invariant closes the cocycle.
inline TriangleSPrime derive_fourth(const TriangleSPrime& t2, const TriangleSPrime& t3,
                                    const TriangleSPrime& t4,
                                    const Tolerance& tol = default_tol()) {
    if (std::abs(t2.d13 - t3.d12) > tol.eq_tol || std::abs(t3.d13 - t4.d12) > tol.eq_tol ||
        std::abs(t4.d13 - t2.d12) > tol.eq_tol)
        throw std::invalid_argument("derive_fourth: side-length matching fails");
    // alpha(2,3,4) = alpha(1,2,3) + alpha(3,4,1) - alpha(4,1,2), with
    // alpha(T4) = alpha(1,4,2) = -alpha(4,1,2).
    const double a4 = wrap_angle(t2.alpha123 + t3.alpha123 + t4.alpha123);
    return {t2.d23, t4.d23, t3.d23, a4};
}

/// Core tetrahedron gate on the three kos values at the shared vertex.
/// All four equivalent conditions of the 3x3 matrix lemma are evaluated and
/// must agree; a witness tetrahedron is built from caller-supplied lengths.
inline AssemblyVerdict tetra_gate(cdouble k23, cdouble k24, cdouble k34,
                                  std::array<double, 3> rho = {0.5, 0.5, 0.5},
                                  const Tolerance& tol = default_tol()) {
    if (std::abs(k23) > 1.0 + tol.eq_tol || std::abs(k24) > 1.0 + tol.eq_tol)
        throw std::invalid_argument("tetra_gate: |K23| and |K24| must be <= 1 (they come from "
                                    "realizable triangles)");
    ComplexMatrix n(3);
    n(0, 0) = n(1, 1) = n(2, 2) = 1.0;
    n(0, 1) = k23;
    n(1, 0) = std::conj(k23);
    n(0, 2) = k24;
    n(2, 0) = std::conj(k24);
    n(1, 2) = k34;
    n(2, 1) = std::conj(k34);
    const HermitianMatrix m(std::move(n), tol);

    const auto psd = is_psd(m, tol);                      // condition (1)
    const double d = det_real(m, tol);                    // condition (2)
    const double poly = 1.0 + 2.0 * (k23 * std::conj(k24) * k34).real() -
                        std::norm(k23) - std::norm(k24) - std::norm(k34);  // condition (3)
    const double lhs4 = std::norm(k34 - std::conj(k23) * k24);
    const double rhs4 = (1.0 - std::norm(k23)) * (1.0 - std::norm(k24));   // condition (4)

    const bool c1 = psd.verdict == Verdict::psd;
    const bool c2 = d >= -tol.eq_tol;
    const bool c3 = poly >= -tol.eq_tol;
    const bool c4 = lhs4 <= rhs4 + tol.eq_tol;
    const bool band = psd.boundary || std::abs(d) <= 10.0 * tol.eq_tol ||
                      std::abs(poly) <= 10.0 * tol.eq_tol ||
                      std::abs(lhs4 - rhs4) <= 10.0 * tol.eq_tol;
    if (!band && (c1 != c2 || c1 != c3 || c1 != c4))
        throw internal_error("tetra_gate: the four equivalent PSD conditions disagree outside "
                             "the tolerance band");

    AssemblyVerdict v;
    v.feasible = c1;
    v.boundary = band;
    v.minors = principal_minors(m, tol);
    if (!v.feasible && psd.negative_minor) {
        v.note = "negative principal minor of M({T_i})";
    }
    if (v.feasible) {
        std::vector<double> r(rho.begin(), rho.end());
        try {
            v.witness = decode(ModuliPoint(std::move(r), m, tol), 3, tol);
        } catch (const std::invalid_argument&) {
            // Degenerate witnesses (coincident decoded points) are possible at
            // the PSD boundary; the verdict stands without a configuration.
            v.note = "witness degenerate at the PSD boundary";
        }
    }
    return v;
}

namespace detail {

// Entries (2,3) | (3,4) | (4,2) of M({T_i}) from the matched set, per the
// S6.1 wiring: K23 = kos(T2), K34 = kos(T3), K24 = conj(kos(T4)).
struct Q1Wiring {
    cdouble k23, k24, k34;
    std::array<double, 3> rho;  // delta(x1, x2), delta(x1, x3), delta(x1, x4)
};

inline Q1Wiring q1_wiring(const MatchedTriangleSet& t) {
    return {t[0].kos, std::conj(t[2].kos), t[1].kos,
            {t[0].len_a, t[0].len_b, t[1].len_b}};
}

}  // namespace detail

/// Question 1: can the matched triangles be assembled as the faces at the
/// distinguished vertex of a tetrahedron? Lengths play no role in the gate;
/// they only shape the witness.
inline AssemblyVerdict q1_from_triangles(const MatchedTriangleSet& t,
                                         const Tolerance& tol = default_tol()) {
    if (!validate_matched(t, tol))
        throw std::invalid_argument("q1_from_triangles: side-length matching fails");
    const auto w = detail::q1_wiring(t);
    return tetra_gate(w.k23, w.k24, w.k34, w.rho, tol);
}

/// Admissible kos-values for the third triangle once two are fixed: the disk
/// B(conj(K23) K24, sqrt(1-|K23|^2) sqrt(1-|K24|^2)).
inline std::pair<cdouble, double> third_triangle_disk(cdouble k23, cdouble k24,
                                                      const Tolerance& tol = default_tol()) {
    if (std::abs(k23) > 1.0 + tol.eq_tol || std::abs(k24) > 1.0 + tol.eq_tol)
        throw std::invalid_argument("third_triangle_disk: |kos| must be <= 1");
    const double r = std::sqrt(std::max(0.0, 1.0 - std::norm(k23))) *
                     std::sqrt(std::max(0.0, 1.0 - std::norm(k24)));
    return {std::conj(k23) * k24, r};
}

/// Variation 1 input: a triangle with first vertex at the global base point
/// (label 1) and the other two vertices at global labels a, b >= 2.
struct LabelledTriangle {
    int label_a;
    int label_b;
    double len_a;  // delta(base, vertex a)
    double len_b;  // delta(base, vertex b)
    cdouble kos;   // kos at the base, ordered (a, b)
};

/// Variation 1: triangles sharing the base point fill KOS({T_i},1); feasible
/// iff that matrix is PSD. Requires every pair of non-base labels covered.
inline AssemblyVerdict assemble_v1(const std::vector<LabelledTriangle>& pieces,
                                   const Tolerance& tol = default_tol()) {
    if (pieces.empty()) throw std::invalid_argument("assemble_v1: no pieces");
    std::map<int, double> length;  // label -> delta(base, label)
    auto note_length = [&](int label, double len) {
        if (label < 2) throw std::invalid_argument("assemble_v1: labels must be >= 2");
        auto [it, inserted] = length.emplace(label, len);
        if (!inserted && std::abs(it->second - len) > tol.eq_tol)
            throw std::invalid_argument("assemble_v1: coherence violation on edge lengths");
    };
    for (const auto& p : pieces) {
        if (p.label_a == p.label_b)
            throw std::invalid_argument("assemble_v1: degenerate triangle labels");
        note_length(p.label_a, p.len_a);
        note_length(p.label_b, p.len_b);
    }
    std::vector<int> labels;
    for (const auto& [l, unused] : length) labels.push_back(l);
    const std::size_t n = labels.size();
    auto pos = [&](int label) {
        return static_cast<std::size_t>(
            std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };

    ComplexMatrix m(n);
    std::vector<std::vector<bool>> covered(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        covered[i][i] = true;
    }
    for (const auto& p : pieces) {
        const std::size_t a = pos(p.label_a), b = pos(p.label_b);
        if (covered[a][b] && std::abs(m(a, b) - p.kos) > tol.eq_tol)
            throw std::invalid_argument("assemble_v1: coherence violation on kos values");
        m(a, b) = p.kos;
        m(b, a) = std::conj(p.kos);
        covered[a][b] = covered[b][a] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!covered[i][j])
                throw std::invalid_argument(
                    "assemble_v1: incomplete cover (missing kos entry); use assemble_v3 "
                    "semantics for one missing entry");

    const HermitianMatrix kosm(std::move(m), tol);
    const auto psd = is_psd(kosm, tol);
    AssemblyVerdict v;
    v.feasible = psd.verdict == Verdict::psd;
    v.boundary = psd.boundary;
    v.minors = principal_minors(kosm, tol);
    if (!v.feasible && psd.negative_minor) {
        v.note = "negative principal minor";
    }
    if (v.feasible) {
        std::vector<double> rho;
        for (int l : labels) rho.push_back(length.at(l));
        try {
            v.witness = decode(ModuliPoint(std::move(rho), kosm, tol), 0, tol);
        } catch (const std::invalid_argument&) {
            v.note = "witness degenerate at the PSD boundary";
        }
    }
    return v;
}

/// A piece for variations 2/3: a Gram spec (usually of an actual point
/// configuration) plus the global labels of its kernels. Label 1 is the
/// distinguished base and must appear.
struct LabelledGram {
    std::vector<int> labels;
    GramSpec gram;

    static LabelledGram of_config(std::vector<int> labels, const PointConfig& points,
                                  const Tolerance& tol = default_tol()) {
        return {std::move(labels), gram_of_config(points, tol)};
    }
};

namespace detail {

struct FacetInvariants {
    std::vector<int> labels;          // non-base global labels, ascending
    std::map<int, double> len;        // delta(base, label)
    std::map<std::pair<int, int>, cdouble> kos;  // ordered non-base pairs
};

inline FacetInvariants facet_invariants(const LabelledGram& f, const Tolerance& tol) {
    if (f.labels.size() != f.gram.size())
        throw std::invalid_argument("facet: label/kernel count mismatch");
    auto base_it = std::find(f.labels.begin(), f.labels.end(), 1);
    if (base_it == f.labels.end())
        throw std::invalid_argument("facet: must contain the base label 1");
    const std::size_t base = static_cast<std::size_t>(base_it - f.labels.begin());

    FacetInvariants out;
    const GramSpec& g = f.gram;
    for (std::size_t i = 0; i < f.labels.size(); ++i) {
        if (i == base) continue;
        out.labels.push_back(f.labels[i]);
        out.len[f.labels[i]] = delta_h(g, base, i);
    }
    std::sort(out.labels.begin(), out.labels.end());
    for (std::size_t i = 0; i < f.labels.size(); ++i)
        for (std::size_t j = 0; j < f.labels.size(); ++j)
            if (i != base && j != base && i != j)
                out.kos[{f.labels[i], f.labels[j]}] = kos(g, base, i, j, tol);
    return out;
}

}  // namespace detail

/// Variation 2: n facets of size n over labels {1..n+1}, facet i omitting
/// label i+1. Every proper minor is PSD by hypothesis; feasibility reduces
/// to the sign of the single full determinant.
inline AssemblyVerdict assemble_v2(const std::vector<LabelledGram>& facets,
                                   const Tolerance& tol = default_tol()) {
    if (facets.size() < 2) throw std::invalid_argument("assemble_v2: need at least 2 facets");
    std::vector<detail::FacetInvariants> inv;
    for (const auto& f : facets) inv.push_back(detail::facet_invariants(f, tol));

    std::map<int, double> length;
    std::map<std::pair<int, int>, cdouble> kosval;
    for (const auto& fi : inv) {
        for (const auto& [l, d] : fi.len) {
            auto [it, ins] = length.emplace(l, d);
            if (!ins && std::abs(it->second - d) > tol.eq_tol)
                throw std::invalid_argument("assemble_v2: coherence violation on lengths");
        }
        for (const auto& [pair, k] : fi.kos) {
            auto [it, ins] = kosval.emplace(pair, k);
            if (!ins && std::abs(it->second - k) > tol.eq_tol)
                throw std::invalid_argument("assemble_v2: coherence violation on kos overlaps");
        }
    }
    std::vector<int> labels;
    for (const auto& [l, unused] : length) labels.push_back(l);
    const std::size_t n = labels.size();
    ComplexMatrix m(n);
    for (std::size_t a = 0; a < n; ++a) {
        m(a, a) = 1.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            auto it = kosval.find({labels[a], labels[b]});
            if (it == kosval.end())
                throw std::invalid_argument("assemble_v2: facet scheme leaves kos entries "
                                            "uncovered");
            m(a, b) = it->second;
        }
    }
    const HermitianMatrix kosm(std::move(m), tol);
    const double d = det_real(kosm, tol);

    AssemblyVerdict v;
    v.feasible = d >= -tol.eq_tol;
    v.boundary = std::abs(d) <= 10.0 * tol.eq_tol;
    v.minors = principal_minors(kosm, tol);
    v.note = "top-level determinant = " + std::to_string(d);
    // Cross-check: the full PSD verdict must match the determinant sign since
    // all proper minors are nonnegative by hypothesis.
    const auto psd = is_psd(kosm, tol);
    if (!v.boundary && !psd.boundary && (psd.verdict == Verdict::psd) != v.feasible)
        throw internal_error("assemble_v2: determinant test and PSD verdict disagree");
    if (v.feasible) {
        std::vector<double> rho;
        for (int l : labels) rho.push_back(length.at(l));
        try {
            v.witness = decode(ModuliPoint(std::move(rho), kosm, tol), 0, tol);
        } catch (const std::invalid_argument&) {
            v.note += "; witness degenerate at the PSD boundary";
        }
    }
    return v;
}

namespace detail {

// det of the v3 matrix as a function of the unknown z: a real quadratic
// q(z) = q0 + 2 Re(conj(beta) z) - w |z|^2 recovered by interpolation.
struct ZQuadratic {
    double q0;
    cdouble beta;
    double w;

    double operator()(cdouble z) const {
        return q0 + 2.0 * (std::conj(beta) * z).real() - w * std::norm(z);
    }
};

inline ZQuadratic fit_z_quadratic(const std::function<double(cdouble)>& q) {
    const double q_0 = q(0.0);
    const double q_p1 = q(1.0), q_m1 = q(-1.0);
    const double q_pi = q(cdouble(0.0, 1.0)), q_mi = q(cdouble(0.0, -1.0));
    ZQuadratic out;
    out.q0 = q_0;
    out.w = -(q_p1 + q_m1 - 2.0 * q_0) / 2.0;
    out.beta = cdouble((q_p1 - q_m1) / 4.0, (q_pi - q_mi) / 4.0);
    return out;
}

inline std::vector<cdouble> circle_intersections(cdouble c1, double r1, cdouble c2, double r2) {
    std::vector<cdouble> out;
    const cdouble d = c2 - c1;
    const double dist = std::abs(d);
    if (dist < 1e-15) return out;  // concentric
    const double a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    const double h2 = r1 * r1 - a * a;
    if (h2 < -1e-12) return out;
    const double h = std::sqrt(std::max(h2, 0.0));
    const cdouble u = d / dist;
    const cdouble mid = c1 + a * u;
    const cdouble perp = cdouble(-u.imag(), u.real());
    out.push_back(mid + h * perp);
    if (h > 0.0) out.push_back(mid - h * perp);
    return out;
}

// Maximize the concave quadratic q over the intersection of two closed disks.
// Returns (max value, argmax); the region is assumed nonempty.
inline std::pair<double, cdouble> maximize_on_disks(const ZQuadratic& q, cdouble c3, double r3,
                                                    cdouble c4, double r4) {
    auto in3 = [&](cdouble z) { return std::abs(z - c3) <= r3 + 1e-12; };
    auto in4 = [&](cdouble z) { return std::abs(z - c4) <= r4 + 1e-12; };

    std::vector<cdouble> candidates;
    if (q.w > 1e-14) {
        const cdouble zstar = q.beta / q.w;
        if (in3(zstar) && in4(zstar)) candidates.push_back(zstar);
    }
    // Per-circle maxima of q restricted to each boundary circle.
    auto circle_peak = [&](cdouble c, double r) -> std::optional<cdouble> {
        const cdouble dir = q.beta - q.w * c;
        if (std::abs(dir) < 1e-15) return c + cdouble(r, 0.0);  // q constant on the circle
        return c + r * dir / std::abs(dir);
    };
    if (auto p = circle_peak(c3, r3); p && in4(*p)) candidates.push_back(*p);
    if (auto p = circle_peak(c4, r4); p && in3(*p)) candidates.push_back(*p);
    for (const auto& z : circle_intersections(c3, r3, c4, r4)) candidates.push_back(z);
    // Fallbacks for degenerate geometry (tangency, zero radii).
    if (candidates.empty()) {
        if (in4(c3)) candidates.push_back(c3);
        if (in3(c4)) candidates.push_back(c4);
        const cdouble d = c4 - c3;
        if (std::abs(d) > 0) candidates.push_back(c3 + d / std::abs(d) * r3);
    }

    double best = -std::numeric_limits<double>::infinity();
    cdouble best_z = c3;
    for (const auto& z : candidates) {
        if (!in3(z) || !in4(z)) continue;
        const double v = q(z);
        if (v > best) {
            best = v;
            best_z = z;
        }
    }
    return {best, best_z};
}

// Grid search over the bounding box of the disk intersection; 201x201 with
// two local refinement passes.
inline std::pair<double, cdouble> grid_maximize_on_disks(const ZQuadratic& q, cdouble c3,
                                                         double r3, cdouble c4, double r4) {
    double lo_x = std::max(c3.real() - r3, c4.real() - r4);
    double hi_x = std::min(c3.real() + r3, c4.real() + r4);
    double lo_y = std::max(c3.imag() - r3, c4.imag() - r4);
    double hi_y = std::min(c3.imag() + r3, c4.imag() + r4);
    double best = -std::numeric_limits<double>::infinity();
    cdouble best_z = 0.5 * (c3 + c4);
    for (int pass = 0; pass < 3; ++pass) {
        cdouble local_best_z = best_z;
        for (int i = 0; i <= 200; ++i) {
            for (int j = 0; j <= 200; ++j) {
                const cdouble z(lo_x + (hi_x - lo_x) * i / 200.0,
                                lo_y + (hi_y - lo_y) * j / 200.0);
                if (std::abs(z - c3) > r3 || std::abs(z - c4) > r4) continue;
                const double v = q(z);
                if (v > best) {
                    best = v;
                    local_best_z = z;
                }
            }
        }
        best_z = local_best_z;
        const double span_x = (hi_x - lo_x) / 50.0, span_y = (hi_y - lo_y) / 50.0;
        lo_x = best_z.real() - span_x;
        hi_x = best_z.real() + span_x;
        lo_y = best_z.imag() - span_y;
        hi_y = best_z.imag() + span_y;
    }
    return {best, best_z};
}

}  // namespace detail

/// Variation 3: two 4-point pieces over labels {1,2,3,4} and {1,3,4,5} whose
/// only unknown is the kos_1(2,5) entry z. Feasible iff some z in the
/// intersection of the two minor disks makes the full determinant
/// nonnegative; the maximum is a concave quadratic in z.
inline AssemblyVerdict assemble_v3(const LabelledGram& ya, const LabelledGram& yb,
                                   const Tolerance& tol = default_tol()) {
    const auto fa = detail::facet_invariants(ya, tol);
    const auto fb = detail::facet_invariants(yb, tol);
    if (fa.labels != std::vector<int>{2, 3, 4} || fb.labels != std::vector<int>{3, 4, 5})
        throw std::invalid_argument("assemble_v3: label sets must be {1,2,3,4} and {1,3,4,5}");
    // Coherence: the shared triangle over labels {1,3,4}.
    for (int l : {3, 4})
        if (std::abs(fa.len.at(l) - fb.len.at(l)) > tol.eq_tol)
            throw std::invalid_argument("assemble_v3: coherence violation on shared lengths");
    if (std::abs(fa.kos.at({3, 4}) - fb.kos.at({3, 4})) > tol.eq_tol)
        throw std::invalid_argument("assemble_v3: coherence violation on shared kos");

    const cdouble k23 = fa.kos.at({2, 3}), k24 = fa.kos.at({2, 4});
    const cdouble k34 = fa.kos.at({3, 4});
    const cdouble k35 = fb.kos.at({3, 5}), k45 = fb.kos.at({4, 5});

    // Matrix over labels (2,3,4,5) with z at (2,5).
    auto build = [&](cdouble z) {
        ComplexMatrix m(4);
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
        auto put = [&](std::size_t i, std::size_t j, cdouble v) {
            m(i, j) = v;
            m(j, i) = std::conj(v);
        };
        put(0, 1, k23);
        put(0, 2, k24);
        put(1, 2, k34);
        put(1, 3, k35);
        put(2, 3, k45);
        put(0, 3, z);
        return m;
    };
    auto qfun = [&](cdouble z) { return det(build(z)).real(); };
    const auto q = detail::fit_z_quadratic(qfun);
    // The |z|^2 coefficient of det(Y(z)) is -det(Y_34); the interpolated
    // quadratic must reproduce it.
    if (std::abs(q.w - (1.0 - std::norm(k34))) > 1e3 * tol.eq_tol)
        throw internal_error("assemble_v3: quadratic fit disagrees with det(Y_34)");

    // Disks from the 3x3 minors Y_253 and Y_254.
    const cdouble c3 = k23 * k35;
    const double r3 = std::sqrt(std::max(0.0, (1.0 - std::norm(k23)) * (1.0 - std::norm(k35))));
    const cdouble c4 = k24 * k45;
    const double r4 = std::sqrt(std::max(0.0, (1.0 - std::norm(k24)) * (1.0 - std::norm(k45))));

    AssemblyVerdict v;
    v.free_parameters = DiskRegion{c3, r3, c4, r4, 0.0};
    if (std::abs(c3 - c4) > r3 + r4 + tol.eq_tol) {
        v.feasible = false;
        v.note = "minor disks are disjoint";
        return v;
    }
    const double det_y34 = 1.0 - std::norm(k34);
    auto [qmax, zstar] = detail::maximize_on_disks(q, c3, r3, c4, r4);
    if (det_y34 <= tol.psd_tol) {
        // Degenerate quadratic: corroborate the closed form with a grid scan
        // and keep whichever found the better admissible point.
        const auto [gmax, gz] = detail::grid_maximize_on_disks(q, c3, r3, c4, r4);
        if (gmax > qmax) {
            qmax = gmax;
            zstar = gz;
        }
    }
    v.feasible = qmax >= -tol.eq_tol;
    v.boundary = std::abs(qmax) <= 10.0 * tol.eq_tol;
    v.free_parameters->witness_z = zstar;
    v.note = "max det over z-region = " + std::to_string(qmax);
    if (v.feasible) {
        const HermitianMatrix full(build(zstar), tol);
        std::vector<double> rho{fa.len.at(2), fa.len.at(3), fa.len.at(4), fb.len.at(5)};
        try {
            v.witness = decode(ModuliPoint(std::move(rho), full, tol), 0, tol);
        } catch (const std::invalid_argument&) {
            v.note += "; witness degenerate at the PSD boundary";
        }
    }
    return v;
}

/// Question 2: three 3-dimensional CPP Gram specs with the S6.1 face scheme;
/// feasible iff the assembled KOS matrix is PSD, in which case the witness is
/// the DA-space of a decoded tetrahedron.
inline AssemblyVerdict q2_gate(const GramSpec& j2, const GramSpec& j3, const GramSpec& j4,
                               const Tolerance& tol = default_tol()) {
    for (const GramSpec* j : {&j2, &j3, &j4}) {
        if (j->size() != 3) throw std::invalid_argument("q2_gate: pieces must be 3-dimensional");
        if (!cpp_certify(*j, tol).is_cpp)
            throw std::invalid_argument("q2_gate: piece without the complete Pick property "
                                        "(with RK-only inputs, |kos| <= 1 must be added)");
    }
    // Scheme: J2 -> (x1,x2,x3), J3 -> (x1,x3,x4), J4 -> (x1,x4,x2).
    const double d12 = delta_h(j2, 0, 1), d13 = delta_h(j2, 0, 2);
    const double d13b = delta_h(j3, 0, 1), d14 = delta_h(j3, 0, 2);
    const double d14b = delta_h(j4, 0, 1), d12b = delta_h(j4, 0, 2);
    if (std::abs(d13 - d13b) > tol.eq_tol || std::abs(d14 - d14b) > tol.eq_tol ||
        std::abs(d12 - d12b) > tol.eq_tol)
        throw std::invalid_argument("q2_gate: coherence violation on shared delta data");

    const cdouble l23 = kos(j2, 0, 1, 2, tol);
    const cdouble l34 = kos(j3, 0, 1, 2, tol);
    const cdouble l42 = kos(j4, 0, 1, 2, tol);
    AssemblyVerdict v = tetra_gate(l23, std::conj(l42), l34, {d12, d13, d14}, tol);
    if (v.feasible && v.witness) {
        const GramSpec h = gram_of_config(*v.witness, tol);
        v.witness_gram = h;
        // The witness's 3-dim regular subspaces must be rescalings of the inputs.
        const bool ok2 = is_rescaling_equivalent(regular_subspace(h, {0, 1, 2}, tol), j2, tol);
        const bool ok3 = is_rescaling_equivalent(regular_subspace(h, {0, 2, 3}, tol), j3, tol);
        const bool ok4 = is_rescaling_equivalent(regular_subspace(h, {0, 3, 1}, tol), j4, tol);
        if (!ok2 || !ok3 || !ok4)
            throw internal_error("q2_gate: witness subspaces fail rescaling equivalence");
    }
    return v;
}

}  // namespace kosgeo
