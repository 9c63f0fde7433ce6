#pragma once

#include "kosgeo/ball.hpp"
#include "kosgeo/common.hpp"
#include "kosgeo/linalg.hpp"

namespace kosgeo {

/// Gram matrix of a finite irreducible RKHS: Hermitian positive definite,
/// positive diagonal, and no zero entries (irreducibility).
class GramSpec {
  public:
    explicit GramSpec(HermitianMatrix g, const Tolerance& tol = default_tol())
        : g_(std::move(g)) {
        const double scale = std::max(1.0, g_.max_abs());
        for (std::size_t i = 0; i < g_.size(); ++i) {
            if (g_(i, i).real() <= tol.eq_tol * scale)
                throw std::invalid_argument("GramSpec: diagonal must be positive");
            for (std::size_t j = 0; j < g_.size(); ++j)
                if (std::abs(g_(i, j)) <= tol.eq_tol * scale)
                    throw std::invalid_argument("GramSpec: zero entry (space is reducible)");
        }
        if (is_pd(g_, tol).verdict != Verdict::psd)
            throw std::invalid_argument("GramSpec: matrix is not positive definite");
    }

    std::size_t size() const { return g_.size(); }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
    const HermitianMatrix& matrix() const { return g_; }

  private:
    HermitianMatrix g_;
};

/// Gram matrix of DA(X): G(i,j) = 1 / (1 - <<x_i, x_j>>).
inline GramSpec gram_of_config(const PointConfig& x, const Tolerance& tol = default_tol()) {
    const std::size_t n = x.size();
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = szego_kernel(x[i], x[j]);
    return GramSpec(HermitianMatrix(std::move(g), tol), tol);
}

/// delta_H(i,j) = sqrt(1 - |G(i,j)|^2 / (G(i,i) G(j,j))).
inline double delta_h(const GramSpec& g, std::size_t i, std::size_t j) {
    if (i >= g.size() || j >= g.size()) throw std::invalid_argument("delta_h: index out of range");
    if (i == j) throw std::invalid_argument("delta_h: indices must differ");
    const double v = 1.0 - std::norm(g(i, j)) / (g(i, i).real() * g(j, j).real());
    return std::sqrt(std::max(v, 0.0));
}

/// Angular invariant: minus the argument of the cyclic triple product of
/// inner products <h_i,h_j><h_j,h_k><h_k,h_i>, principal branch. In the
/// kernel orientation stored here that product is the conjugate of
/// G(i,j)G(j,k)G(k,i), so alpha(i,j,k) = +arg(G(i,j)G(j,k)G(k,i)).
inline double alpha(const GramSpec& g, std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) throw std::invalid_argument("alpha: indices must be distinct");
    return std::arg(g(i, j) * g(j, k) * g(k, i));
}

/// kos_s(i,j) = (1 - G(i,s)G(s,j) / (G(s,s)G(i,j))) / (delta_si * delta_sj).
/// For DA(X) with x_s at the origin this equals <<x_i/|x_i|, x_j/|x_j|>>.
inline cdouble kos(const GramSpec& g, std::size_t s, std::size_t i, std::size_t j,
                   const Tolerance& tol = default_tol()) {
    if (s == i || s == j) throw std::invalid_argument("kos: base must differ from both arguments");
    const double dsi = delta_h(g, s, i);
    const double dsj = delta_h(g, s, j);
    if (dsi <= tol.eq_tol || dsj <= tol.eq_tol)
        throw std::invalid_argument("kos: coincident kernels (delta below tolerance)");
    if (i == j) return 1.0;
    const cdouble ratio = g(i, s) * g(s, j) / (g(s, s) * g(i, j));
    return (1.0 - ratio) / (dsi * dsj);
}

/// KOS(H,s): the (n-1)x(n-1) matrix of kos_s(i,j) over the non-base indices.
struct KosMatrix {
    std::size_t base;
    std::vector<std::size_t> labels;  // original index of each row/column
    HermitianMatrix m;
};

inline KosMatrix kos_matrix(const GramSpec& g, std::size_t s,
                            const Tolerance& tol = default_tol()) {
    if (s >= g.size()) throw std::invalid_argument("kos_matrix: base out of range");
    if (g.size() < 2) throw std::invalid_argument("kos_matrix: need dimension >= 2");
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (i != s) labels.push_back(i);
    ComplexMatrix m(labels.size());
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b)
            m(a, b) = kos(g, s, labels[a], labels[b], tol);
    return KosMatrix{s, labels, HermitianMatrix(std::move(m), tol)};
}

/// MQ(H,s) = D KOS(H,s) D for D = diag(delta_si); entrywise
/// 1 - G(i,s)G(s,j)/(G(i,j)G(s,s)). Same positivity verdicts as KOS.
inline KosMatrix mq_matrix(const GramSpec& g, std::size_t s,
                           const Tolerance& tol = default_tol()) {
    if (s >= g.size()) throw std::invalid_argument("mq_matrix: base out of range");
    if (g.size() < 2) throw std::invalid_argument("mq_matrix: need dimension >= 2");
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (i != s) labels.push_back(i);
    ComplexMatrix m(labels.size());
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const std::size_t i = labels[a], j = labels[b];
            m(a, b) = 1.0 - g(i, s) * g(s, j) / (g(i, j) * g(s, s));
        }
    return KosMatrix{s, labels, HermitianMatrix(std::move(m), tol)};
}

/// Canonical representative of the rescaling class: unit diagonal, first row
/// (and column) real positive. Idempotent.
inline GramSpec canonical_rescaling_form(const GramSpec& g, const Tolerance& tol = default_tol()) {
    const std::size_t n = g.size();
    std::vector<cdouble> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = 1.0 / std::sqrt(g(j, j).real());
        const double theta = (j == 0) ? 0.0 : std::arg(g(0, j));
        d[j] = std::polar(r, theta);
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = d[i] * g(i, j) * std::conj(d[j]);
    return GramSpec(HermitianMatrix(std::move(out), tol), tol);
}

inline bool is_rescaling_equivalent(const GramSpec& g, const GramSpec& h,
                                    const Tolerance& tol = default_tol()) {
    if (g.size() != h.size()) throw std::invalid_argument("is_rescaling_equivalent: size mismatch");
    const GramSpec cg = canonical_rescaling_form(g, tol);
    const GramSpec ch = canonical_rescaling_form(h, tol);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (std::abs(cg(i, j) - ch(i, j)) > tol.eq_tol) return false;
    return true;
}

/// Regular subspace = principal submatrix on the retained kernel indices.
inline GramSpec regular_subspace(const GramSpec& g, const std::vector<std::size_t>& indices,
                                 const Tolerance& tol = default_tol()) {
    if (indices.empty()) throw std::invalid_argument("regular_subspace: empty index set");
    return GramSpec(g.matrix().submatrix(indices), tol);
}

struct CppCertificate {
    bool is_cpp;
    double min_eigenvalue;  // of KOS(H, 0)
    std::optional<std::pair<std::vector<std::size_t>, double>> witness;  // negative minor
};

/// CPP decision: PSD of KOS(H,0), audited against every other base point
/// (all verdicts must agree). Witness is a failing principal minor.
inline CppCertificate cpp_certify(const GramSpec& g, const Tolerance& tol = default_tol()) {
    if (g.size() < 2) return {true, 0.0, std::nullopt};
    std::optional<PsdResult> primary;
    bool primary_verdict = true;
    for (std::size_t s = 0; s < g.size(); ++s) {
        const auto km = kos_matrix(g, s, tol);
        const auto r = is_psd(km.m, tol);
        const bool v = r.verdict == Verdict::psd;
        if (s == 0) {
            primary = r;
            primary_verdict = v;
        } else if (v != primary_verdict && !r.boundary && !primary->boundary) {
            throw internal_error("cpp_certify: KOS positivity verdicts disagree across base "
                                 "points (tolerance pathology near the PSD boundary)");
        }
    }
    CppCertificate c{primary_verdict, primary->min_eigenvalue, std::nullopt};
    if (!primary_verdict) {
        c.witness = primary->negative_minor;
        if (!c.witness) {
            // Eigenvalue route decided; find the minor certificate explicitly.
            const auto km = kos_matrix(g, 0, tol);
            auto minors = principal_minors(km.m, tol);
            for (const auto& [idx, m] : minors)
                if (!c.witness || m < c.witness->second) c.witness = std::make_pair(idx, m);
        }
    }
    return c;
}

/// Koranyi-Reimann cross ratio X(i,j,k,l) = G(k,i)G(l,j) / (G(k,j)G(l,i)).
/// Each index appears once in the same argument slot of numerator and
/// denominator, which is what makes the value rescaling invariant.
inline cdouble cross_ratio(const GramSpec& g, std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l) {
    if (i == j || i == k || i == l || j == k || j == l || k == l)
        throw std::invalid_argument("cross_ratio: indices must be distinct");
    return g(k, i) * g(l, j) / (g(k, j) * g(l, i));
}

/// The extremal point of the first multiplier-ball slice in the direction of
/// coordinate j: (0, delta_01 kos_0(j,1), ..., delta_0,n-1 kos_0(j,n-1)).
inline cvector multiplier_slice_extremal(const GramSpec& g, std::size_t j,
                                         const Tolerance& tol = default_tol()) {
    if (j == 0 || j >= g.size())
        throw std::invalid_argument("multiplier_slice_extremal: need 1 <= j < dim");
    if (!cpp_certify(g, tol).is_cpp)
        throw std::invalid_argument("multiplier_slice_extremal: space is not CPP");
    cvector out(g.size(), 0.0);
    for (std::size_t t = 1; t < g.size(); ++t)
        out[t] = delta_h(g, 0, t) * kos(g, 0, j, t, tol);
    return out;
}

/// Quiggin's family H_x, 0 < x < 1, with s = (1-x) sqrt(x).
inline GramSpec quiggin_gram(double x, const Tolerance& tol = default_tol()) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("quiggin_gram: need 0 < x < 1");
    const double s = (1.0 - x) * std::sqrt(x);
    const cdouble xis(x, s), xmis(x, -s);
    ComplexMatrix g(4);
    const cdouble grid[4][4] = {
        {1.0, x, x, xis},
        {x, 1.0, xmis, x},
        {x, xis, 1.0, x},
        {xmis, x, x, 1.0},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = grid[i][j];
    return GramSpec(HermitianMatrix(std::move(g), tol), tol);
}

struct QuigginReport {
    double x;
    // leading principal minors of Gr(H_x), sizes 1..4, computed and closed form
    std::array<double, 4> leading_minors;
    std::array<double, 4> leading_minors_formula;
    // det of the four 2x2 blocks J_1..J_4 certifying the subspaces, and formulas
    std::array<double, 4> det_j;
    std::array<double, 4> det_j_formula;
    double det_mq;          // det MQ(H_x, 1)
    double det_mq_formula;  // -x^3 (x+1)^2 (x-1)^4 / (x^2 - x + 1)
    std::array<bool, 4> subspace_cpp;  // regular 3-dim subspaces, omitting index i
    bool full_cpp;
};

inline QuigginReport quiggin_report(double x, const Tolerance& tol = default_tol()) {
    const GramSpec g = quiggin_gram(x, tol);
    QuigginReport r{};
    r.x = x;

    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        r.leading_minors[k - 1] = det_real(g.matrix().submatrix(idx), tol);
    }
    r.leading_minors_formula = {1.0, (1.0 + x) * (1.0 - x), (1.0 + x) * (1.0 - x) * (1.0 - x),
                                std::pow(1.0 + x, 2) * std::pow(1.0 - x, 4)};

    // J_i certifies the subspace omitting kernel i. For i >= 1 it is the 2x2
    // block of MQ(H_x, base 0) with the row/column labelled i removed; for
    // J_0 the base moves to kernel 1.
    const auto mq0 = mq_matrix(g, 0, tol);  // labels {1,2,3}
    const auto mq1 = mq_matrix(g, 1, tol);  // labels {0,2,3}
    auto block_det = [&](const KosMatrix& km, std::size_t omit_label) {
        std::vector<std::size_t> keep;
        for (std::size_t a = 0; a < km.labels.size(); ++a)
            if (km.labels[a] != omit_label) keep.push_back(a);
        return det_real(km.m.submatrix(keep), tol);
    };
    r.det_j[0] = block_det(mq1, 0);
    r.det_j[1] = block_det(mq0, 1);
    r.det_j[2] = block_det(mq0, 2);
    r.det_j[3] = block_det(mq0, 3);
    const double dj = x * x * (x + 1.0) * (x - 1.0) * (x - 1.0);
    const double q = x * x - x + 1.0;
    r.det_j_formula = {dj, dj, dj, x * dj / q};

    r.det_mq = det_real(mq0.m, tol);
    r.det_mq_formula = -std::pow(x, 3) * std::pow(x + 1.0, 2) * std::pow(x - 1.0, 4) / q;

    for (std::size_t omit = 0; omit < 4; ++omit) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != omit) keep.push_back(i);
        r.subspace_cpp[omit] = cpp_certify(regular_subspace(g, keep, tol), tol).is_cpp;
    }
    r.full_cpp = cpp_certify(g, tol).is_cpp;
    return r;
}

}  // namespace kosgeo
