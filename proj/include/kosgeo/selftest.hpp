#pragma once

#include <sstream>

#include "kosgeo/areas.hpp"
#include "kosgeo/assembly.hpp"
#include "kosgeo/moduli.hpp"
#include "kosgeo/realhyp.hpp"
#include "kosgeo/sampling.hpp"
#include "kosgeo/triangles.hpp"

namespace kosgeo {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Seeded sweep over the library's cross-cutting invariants. Each check is a
/// reduced version of the corresponding property suite; the CLI `selftest`
/// verb runs them all.
inline std::vector<CheckResult> selftest(std::uint64_t seed = 20240901,
                                         const Tolerance& tol = default_tol()) {
    std::vector<CheckResult> out;
    auto record = [&](const std::string& name, double worst, double limit) {
        std::ostringstream ss;
        ss << "worst " << worst << " (limit " << limit << ")";
        out.push_back({name, worst <= limit, ss.str()});
    };

    {  // strong triangle inequality
        Rng rng(seed);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const std::size_t dim = 1 + it % 3;
            const PointConfig c = random_config(rng, 3, dim);
            const double dxz = pseudo_dist(c[0], c[2]), dzy = pseudo_dist(c[2], c[1]);
            const double dxy = pseudo_dist(c[0], c[1]);
            const double lo = std::abs(dxz - dzy) / (1.0 - dxz * dzy);
            const double hi = (dxz + dzy) / (1.0 + dxz * dzy);
            worst = std::max({worst, lo - dxy, dxy - hi});
        }
        record("strong triangle inequality", worst, 1e-12);
    }
    {  // fundamental kernel identity under involutions
        Rng rng(seed + 1);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const std::size_t dim = 1 + it % 4;
            const BallPoint y = random_ball_point(rng, dim), z = random_ball_point(rng, dim),
                            w = random_ball_point(rng, dim);
            const Involution phi(y);
            const cdouble lhs = szego_kernel(phi(z), phi(w));
            const cdouble kyy = szego_kernel(y, y);
            const cdouble rhs = std::sqrt(kyy.real()) / szego_kernel(z, y) *
                                std::sqrt(kyy.real()) / szego_kernel(y, w) * szego_kernel(z, w);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        record("fundamental identity", worst, 1e-9);
    }
    {  // involutions are involutive and exchange base with origin
        Rng rng(seed + 2);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const std::size_t dim = 1 + it % 4;
            const BallPoint a = random_ball_point(rng, dim), z = random_ball_point(rng, dim);
            const Involution phi(a);
            const BallPoint round = phi(phi(z));
            cvector diff = round.coords();
            for (std::size_t k = 0; k < dim; ++k) diff[k] -= z[k];
            worst = std::max(worst, vec_norm(diff));
            worst = std::max(worst, phi(a).norm());
        }
        record("involution involutive", worst, 1e-9);
    }
    {  // automorphism invariance of delta, kos, alpha, cross ratio, encodings
        Rng rng(seed + 3);
        double worst = 0.0;
        for (int it = 0; it < 60; ++it) {
            const std::size_t dim = 2 + it % 3;
            const PointConfig c = random_config(rng, 4, dim);
            const Automorphism phi = random_automorphism(rng.bits(), dim);
            const PointConfig d = c.mapped([&](const BallPoint& p) { return phi(p); });
            const GramSpec gc = gram_of_config(c), gd = gram_of_config(d);
            worst = std::max(worst, std::abs(delta_h(gc, 0, 1) - delta_h(gd, 0, 1)));
            worst = std::max(worst, std::abs(kos(gc, 0, 1, 2) - kos(gd, 0, 1, 2)));
            worst = std::max(worst,
                             std::abs(wrap_angle(alpha(gc, 0, 1, 2) - alpha(gd, 0, 1, 2))));
            worst = std::max(worst,
                             std::abs(cross_ratio(gc, 0, 1, 2, 3) - cross_ratio(gd, 0, 1, 2, 3)));
            const ModuliPoint mc = encode(c), md = encode(d);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    worst = std::max(worst, std::abs(mc.m()(i, j) - md.m()(i, j)));
        }
        record("automorphism invariance", worst, 1e-8);
    }
    {  // PSD engine: eigenvalue route vs Sylvester route
        Rng rng(seed + 4);
        int disagreements = 0;
        for (int it = 0; it < 300; ++it) {
            const std::size_t n = 2 + it % 5;
            const HermitianMatrix h = (it % 2 == 0) ? random_hermitian(rng, n)
                                                    : random_psd(rng, n);
            try {
                (void)is_psd(h, tol);
            } catch (const internal_error&) {
                ++disagreements;
            }
        }
        record("psd engine agreement", disagreements, 0);
    }
    {  // det equals the product of eigenvalues
        Rng rng(seed + 5);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const HermitianMatrix h = random_hermitian(rng, 2 + it % 5);
            const double d = det_real(h);
            double prod = 1.0;
            for (double l : hermitian_eig(h).values) prod *= l;
            worst = std::max(worst, std::abs(d - prod) / std::max(1.0, std::abs(d)));
        }
        record("det = prod eigenvalues", worst, 1e-8);
    }
    {  // gram_factorize reproduces its input
        Rng rng(seed + 6);
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            const std::size_t n = 2 + it % 5;
            const HermitianMatrix a = random_psd(rng, n, 1 + it % n);
            const auto w = gram_factorize(a);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    num += std::norm(herm_inner(w[i], w[j]) - a(i, j));
                    den += std::norm(a(i, j));
                }
            worst = std::max(worst, std::sqrt(num / std::max(den, 1e-30)));
        }
        record("gram factorization round trip", worst, 1e-9);
    }
    {  // moduli round trip
        Rng rng(seed + 7);
        double worst = 0.0;
        bool all_congruent = true;
        for (int it = 0; it < 80; ++it) {
            const std::size_t count = 3 + it % 3, dim = 2 + it % 3;
            const PointConfig c = random_config(rng, count, dim);
            const ModuliPoint m = encode(c);
            const PointConfig back = decode(m, dim);
            all_congruent = all_congruent && congruent(c, back, Tolerance(1e-7, tol.psd_tol));
            const ModuliPoint m2 = encode(back);
            for (std::size_t i = 0; i + 1 < count; ++i)
                worst = std::max(worst, std::abs(m.rho()[i] - m2.rho()[i]));
            for (std::size_t i = 0; i + 1 < count; ++i)
                for (std::size_t j = 0; j + 1 < count; ++j)
                    worst = std::max(worst, std::abs(m.m()(i, j) - m2.m()(i, j)));
        }
        record("moduli round trip", all_congruent ? worst : 1.0, 1e-9);
    }
    {  // cocycle identity
        Rng rng(seed + 8);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const GramSpec g = random_gram_spec(rng, 4, 2 + it % 3);
            const double c = alpha(g, 0, 1, 2) - alpha(g, 1, 2, 3) + alpha(g, 2, 3, 0) -
                             alpha(g, 3, 0, 1);
            worst = std::max(worst, std::abs(wrap_angle(c)));
        }
        record("cocycle identity", worst, 1e-9);
    }
    {  // amplitude factorizations
        Rng rng(seed + 9);
        double worst = 0.0;
        for (int it = 0; it < 300; ++it) {
            const AngleTriple t(rng.uniform(0.05, pi - 0.05), rng.uniform(0.05, pi - 0.05),
                                rng.uniform(0.05, pi - 0.05));
            const Amplitude av = amplitude_va(t), ad = amplitude_da(t);
            worst = std::max({worst, std::abs(av.polynomial - av.factorized),
                              std::abs(ad.polynomial - ad.factorized)});
        }
        record("amplitude factorizations", worst, 1e-9);
    }
    {  // law of cosines round trip on realizable triples
        Rng rng(seed + 10);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            AngleTriple va(rng.uniform(0.3, pi - 0.3), rng.uniform(0.3, pi - 0.3),
                           rng.uniform(0.3, pi - 0.3));
            if (!gva_check(va)) continue;
            const auto cda = dihedral_from_vertex(va);
            if (std::abs(cda[0]) >= 0.999 || std::abs(cda[1]) >= 0.999 ||
                std::abs(cda[2]) >= 0.999)
                continue;
            const AngleTriple da(std::acos(cda[0]), std::acos(cda[1]), std::acos(cda[2]));
            const auto cva = vertex_from_dihedral(da);
            worst = std::max({worst, std::abs(cva[0] - std::cos(va.a)),
                              std::abs(cva[1] - std::cos(va.b)),
                              std::abs(cva[2] - std::cos(va.c))});
        }
        record("law of cosines round trip", worst, 1e-9);
    }
    {  // vertex/dihedral duality on a coarse grid
        int bad = 0;
        const int steps = 20;
        for (int i = 1; i < steps; ++i)
            for (int j = 1; j < steps; ++j)
                for (int k = 1; k < steps; ++k) {
                    const AngleTriple g(i * pi / steps, j * pi / steps, k * pi / steps);
                    if (gva_check(g) != gda_check(dual(g))) ++bad;
                }
        record("vertex/dihedral duality", bad, 0);
    }
    {  // CH^1 area expressions
        Rng rng(seed + 11);
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            const PointConfig t = random_config(rng, 3, 1);
            const GramSpec g = gram_of_config(t);
            const cdouble prod = kos(g, 0, 1, 2) * kos(g, 1, 2, 0) * kos(g, 2, 0, 1);
            worst = std::max(worst, std::abs(wrap_angle(pi - std::arg(prod) -
                                                        2.0 * alpha(g, 0, 1, 2))));
        }
        record("area expressions", worst, 1e-9);
    }
    {  // tetra gate against direct model coordinates
        Rng rng(seed + 12);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const PointConfig x = random_config(rng, 4, 3);
            const PointConfig m = normalize_to_model(x);
            const ModuliPoint mod = encode(m);
            // K23 = conj(xi), K24 = conj(eta), K34 = xi conj(eta) + beta conj(zeta)
            const cvector x2 = m[1].coords(), x3 = m[2].coords(), x4 = m[3].coords();
            const double n3 = vec_norm(x3), n4 = vec_norm(x4);
            const cdouble xi = x3[0] / n3;
            const double beta = x3[1].real() / n3;
            const cdouble eta = x4[0] / n4, zeta = x4[1] / n4;
            worst = std::max(worst, std::abs(mod.m()(0, 1) - std::conj(xi)));
            worst = std::max(worst, std::abs(mod.m()(0, 2) - std::conj(eta)));
            worst = std::max(worst,
                             std::abs(mod.m()(1, 2) - (xi * std::conj(eta) +
                                                       beta * std::conj(zeta))));
        }
        record("tetra gate coordinate identity", worst, 1e-9);
    }
    return out;
}

}  // namespace kosgeo
