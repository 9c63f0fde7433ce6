#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "kosgeo/common.hpp"

namespace kosgeo {

/// Dense square complex matrix. Row-major, n >= 1; everything here targets
/// the n <= 16 range the library works in.
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t n, cdouble fill = 0.0) : n_(n), a_(n * n, fill) {
        if (n == 0) throw std::invalid_argument("ComplexMatrix: n must be >= 1");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }
    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : a_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Principal submatrix on the given (0-based, strictly increasing) rows/cols.
    ComplexMatrix submatrix(const std::vector<std::size_t>& idx) const {
        if (idx.empty()) throw std::invalid_argument("submatrix: empty index set");
        ComplexMatrix s(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(idx[i], idx[j]);
        return s;
    }

  private:
    std::size_t n_;
    cvector a_;
};

inline bool is_hermitian(const ComplexMatrix& a, double tol) {
    const double scale = std::max(1.0, a.max_abs());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
    return true;
}

/// Hermitian matrix. Construction rejects non-Hermitian input rather than
/// symmetrizing it (silent repair hides caller bugs).
class HermitianMatrix {
  public:
    explicit HermitianMatrix(ComplexMatrix a, const Tolerance& tol = default_tol())
        : m_(std::move(a)) {
        if (!is_hermitian(m_, tol.eq_tol))
            throw std::invalid_argument("HermitianMatrix: input is not Hermitian within tolerance");
        // Snap to exact Hermitian symmetry so downstream algebra sees clean data.
        for (std::size_t i = 0; i < m_.size(); ++i) {
            m_(i, i) = cdouble(m_(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < m_.size(); ++j) {
                const cdouble avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
                m_(i, j) = avg;
                m_(j, i) = std::conj(avg);
            }
        }
    }

    static HermitianMatrix identity(std::size_t n) {
        return HermitianMatrix(ComplexMatrix::identity(n));
    }

    std::size_t size() const { return m_.size(); }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const ComplexMatrix& matrix() const { return m_; }
    double max_abs() const { return m_.max_abs(); }

    HermitianMatrix submatrix(const std::vector<std::size_t>& idx) const {
        return HermitianMatrix(m_.submatrix(idx));
    }

  private:
    ComplexMatrix m_;
};

/// Determinant via pivoted Gaussian elimination.
inline cdouble det(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    ComplexMatrix lu = a;
    cdouble d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); piv = i; }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            d = -d;
        }
        d *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cdouble f = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return d;
}

inline double det_real(const HermitianMatrix& a, const Tolerance& tol = default_tol()) {
    const cdouble d = det(a.matrix());
    const double scale = std::max(1.0, std::abs(d));
    if (std::abs(d.imag()) > 1e4 * tol.eq_tol * scale)
        throw internal_error("det of Hermitian matrix has a non-negligible imaginary part");
    return d.real();
}

/// All nonempty principal minors, keyed by the 0-based index subsets.
inline std::vector<std::pair<std::vector<std::size_t>, double>>
principal_minors(const HermitianMatrix& a, const Tolerance& tol = default_tol()) {
    const std::size_t n = a.size();
    std::vector<std::pair<std::vector<std::size_t>, double>> out;
    out.reserve((std::size_t{1} << n) - 1);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        out.emplace_back(idx, det_real(a.submatrix(idx), tol));
    }
    return out;
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns; A = V diag(values) V^H
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Plenty for the <= 16x16 matrices this library handles.
inline EigenDecomposition hermitian_eig(const HermitianMatrix& h) {
    const std::size_t n = h.size();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double base = std::max(1.0, a.max_abs());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) < 1e-15 * base * n) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble g = a(p, q);
                const double ag = std::abs(g);
                if (ag < 1e-18 * base) continue;
                // Phase out a(p,q), then a real Jacobi rotation.
                const cdouble phase = g / ag;  // a(p,q) = ag * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Column update: [col_p, col_q] <- [col_p, col_q] * J with
                // J = [[c, s],[-conj(phase) s, conj(phase) c]].
                const cdouble jpq = s, jpp = c;
                const cdouble jqp = -std::conj(phase) * s, jqq = std::conj(phase) * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * jpp + aiq * jqp;
                    a(i, q) = aip * jpq + aiq * jqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(jpp) * apj + std::conj(jqp) * aqj;
                    a(q, j) = std::conj(jpq) * apj + std::conj(jqq) * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * jpp + viq * jqp;
                    v(i, q) = vip * jpq + viq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

enum class Verdict { psd, not_psd };

struct PsdResult {
    Verdict verdict;
    double min_eigenvalue;
    // Offending certificate when not PSD: the eigenvalue and, when the
    // Sylvester scan finds one, the most negative principal minor.
    std::optional<std::pair<std::vector<std::size_t>, double>> negative_minor;
    bool boundary;  // decisive quantity within the tolerance band
};

namespace detail {

inline double minor_threshold(double psd_tol, double scale, std::size_t k) {
    return psd_tol * std::pow(std::max(1.0, scale), static_cast<double>(k));
}

struct SylvesterScan {
    std::optional<std::pair<std::vector<std::size_t>, double>> offender;
    bool in_band = false;  // some inspected minor sits inside 10x its threshold
};

inline SylvesterScan sylvester_scan(const HermitianMatrix& a, const Tolerance& tol,
                                    bool leading_only, bool strict) {
    const double scale = std::max(1.0, a.max_abs());
    SylvesterScan out;
    const std::size_t n = a.size();
    auto consider = [&](const std::vector<std::size_t>& idx) {
        const double m = det_real(a.submatrix(idx), tol);
        const double thr = minor_threshold(tol.psd_tol, scale, idx.size());
        if (std::abs(m) <= 10.0 * thr) out.in_band = true;
        const bool bad = strict ? (m <= thr) : (m < -thr);
        if (bad && (!out.offender || m < out.offender->second))
            out.offender = std::make_pair(idx, m);
    };
    if (leading_only) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; ++k) {
            idx.push_back(k);
            consider(idx);
        }
    } else {
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t{1} << i)) idx.push_back(i);
            consider(idx);
        }
    }
    return out;
}

}  // namespace detail

/// PSD test with two independent routes: smallest eigenvalue (primary) and a
/// Sylvester scan over all principal minors. Disagreement away from the
/// tolerance band is an internal error.
inline PsdResult is_psd(const HermitianMatrix& a, const Tolerance& tol = default_tol()) {
    const double scale = std::max(1.0, a.max_abs());
    const auto eig = hermitian_eig(a);
    const double lmin = eig.values.front();
    const bool eig_psd = lmin >= -tol.psd_tol * scale;
    const auto scan = detail::sylvester_scan(a, tol, /*leading_only=*/false, /*strict=*/false);
    const bool syl_psd = !scan.offender.has_value();
    const bool boundary = std::abs(lmin) <= 10.0 * tol.psd_tol * scale || scan.in_band;
    if (eig_psd != syl_psd && !boundary)
        throw internal_error("is_psd: eigenvalue and Sylvester verdicts disagree away from the "
                             "tolerance band");
    PsdResult r{eig_psd ? Verdict::psd : Verdict::not_psd, lmin, std::nullopt, boundary};
    if (!eig_psd) r.negative_minor = scan.offender;
    return r;
}

/// Strict positive definiteness: smallest eigenvalue above +psd_tol*scale,
/// cross-checked against positivity of the leading principal minors.
inline PsdResult is_pd(const HermitianMatrix& a, const Tolerance& tol = default_tol()) {
    const double scale = std::max(1.0, a.max_abs());
    const auto eig = hermitian_eig(a);
    const double lmin = eig.values.front();
    const bool eig_pd = lmin > tol.psd_tol * scale;
    const auto scan = detail::sylvester_scan(a, tol, /*leading_only=*/true, /*strict=*/true);
    const bool syl_pd = !scan.offender.has_value();
    const bool boundary = std::abs(lmin) <= 10.0 * tol.psd_tol * scale || scan.in_band;
    if (eig_pd != syl_pd && !boundary)
        throw internal_error("is_pd: eigenvalue and Sylvester verdicts disagree away from the "
                             "tolerance band");
    PsdResult r{eig_pd ? Verdict::psd : Verdict::not_psd, lmin, std::nullopt, boundary};
    if (!eig_pd) r.negative_minor = scan.offender;
    return r;
}

inline std::size_t numerical_rank(const HermitianMatrix& a, const Tolerance& tol = default_tol()) {
    const double scale = std::max(1.0, a.max_abs());
    const auto eig = hermitian_eig(a);
    std::size_t r = 0;
    for (double l : eig.values)
        if (l > tol.psd_tol * scale) ++r;
    return r;
}

/// Spectral square-root factorization of a PSD matrix: returns n vectors
/// w_i in C^r (r = numerical rank) with herm_inner(w_i, w_j) = A(i,j).
inline std::vector<cvector> gram_factorize(const HermitianMatrix& a,
                                           const Tolerance& tol = default_tol()) {
    const auto psd = is_psd(a, tol);
    if (psd.verdict != Verdict::psd)
        throw std::invalid_argument("gram_factorize: input is not positive semidefinite");
    const double scale = std::max(1.0, a.max_abs());
    const auto eig = hermitian_eig(a);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] > tol.psd_tol * scale) keep.push_back(k);
    const std::size_t r = std::max<std::size_t>(keep.size(), 1);

    std::vector<cvector> w(a.size(), cvector(r, 0.0));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        const std::size_t k = keep[c];
        const double root = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < a.size(); ++i) w[i][c] = eig.vectors(i, k) * root;
    }
    return w;
}

}  // namespace kosgeo
