#include "helpers.hpp"

#include "kosgeo/linalg.hpp"
#include "kosgeo/rkhs.hpp"

using namespace kosgeo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("det on small exact cases") {
    CHECK_THAT(det(ComplexMatrix::identity(3)).real(), WithinAbs(1.0, 1e-15));

    ComplexMatrix d(2);
    d(0, 0) = 2.0;
    d(1, 1) = 3.0;
    CHECK_THAT(det(d).real(), WithinAbs(6.0, 1e-14));

    // Quiggin Gram determinant at x = 1/4: (1+x)^2 (1-x)^4 = 2025/4096.
    const GramSpec g = quiggin_gram(0.25);
    CHECK_THAT(det_real(g.matrix()), WithinRel(2025.0 / 4096.0, 1e-12));
}

TEST_CASE("hermitian matrices reject non-hermitian input") {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(0, 1) = cdouble(0.0, 0.5);
    m(1, 0) = cdouble(0.0, 0.5);  // should be -0.5i
    CHECK_THROWS_AS(HermitianMatrix(m), std::invalid_argument);
}

TEST_CASE("principal minors") {
    SECTION("identity 2x2") {
        const auto minors = principal_minors(HermitianMatrix::identity(2));
        REQUIRE(minors.size() == 3);
        for (const auto& [idx, v] : minors) CHECK_THAT(v, WithinAbs(1.0, 1e-15));
    }
    SECTION("2x2 closed form") {
        const cdouble a(0.3, 0.4);
        ComplexMatrix m(2);
        m(0, 0) = m(1, 1) = 1.0;
        m(0, 1) = a;
        m(1, 0) = std::conj(a);
        const auto minors = principal_minors(HermitianMatrix(m));
        for (const auto& [idx, v] : minors) {
            if (idx.size() == 1)
                CHECK_THAT(v, WithinAbs(1.0, 1e-15));
            else
                CHECK_THAT(v, WithinAbs(1.0 - std::norm(a), 1e-14));
        }
    }
    SECTION("Quiggin MQ full minor") {
        const auto mq = mq_matrix(quiggin_gram(0.25), 0);
        const auto minors = principal_minors(mq.m);
        const auto& full = minors.back();
        REQUIRE(full.first.size() == 3);
        CHECK_THAT(full.second, WithinRel(-2025.0 / 212992.0, 1e-10));
    }
}

TEST_CASE("is_psd verdicts and certificates") {
    CHECK(is_psd(HermitianMatrix::identity(3)).verdict == Verdict::psd);

    ComplexMatrix bad(2);
    bad(0, 0) = bad(1, 1) = 1.0;
    bad(0, 1) = bad(1, 0) = 2.0;
    const auto r = is_psd(HermitianMatrix(bad));
    CHECK(r.verdict == Verdict::not_psd);
    REQUIRE(r.negative_minor.has_value());
    CHECK(r.negative_minor->first == std::vector<std::size_t>{0, 1});
    CHECK_THAT(r.negative_minor->second, WithinAbs(-3.0, 1e-12));

    const auto mq = mq_matrix(quiggin_gram(0.25), 0);
    CHECK(is_psd(mq.m).verdict == Verdict::not_psd);
}

TEST_CASE("is_pd verdicts") {
    CHECK(is_pd(HermitianMatrix::identity(4)).verdict == Verdict::psd);

    // Rank-1 projector: psd but not pd.
    cvector v{cdouble(0.6, 0.0), cdouble(0.0, 0.8)};
    ComplexMatrix p(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p(i, j) = v[i] * std::conj(v[j]);
    const HermitianMatrix proj(p);
    CHECK(is_pd(proj).verdict == Verdict::not_psd);
    CHECK(is_psd(proj).verdict == Verdict::psd);

    CHECK(is_pd(quiggin_gram(0.5).matrix()).verdict == Verdict::psd);
}

TEST_CASE("gram_factorize") {
    SECTION("identity gives an orthonormal system") {
        const auto w = gram_factorize(HermitianMatrix::identity(3));
        REQUIRE(w.size() == 3);
        REQUIRE(w.front().size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK_THAT(std::abs(herm_inner(w[i], w[j]) - (i == j ? 1.0 : 0.0)),
                           WithinAbs(0.0, 1e-12));
    }
    SECTION("all-ones matrix is rank one") {
        ComplexMatrix ones(2, 1.0);
        const auto w = gram_factorize(HermitianMatrix(ones));
        REQUIRE(w.front().size() == 1);
        CHECK_THAT(std::abs(herm_inner(w[0], w[0]) - cdouble(1.0)), WithinAbs(0.0, 1e-12));
        CHECK_THAT(std::abs(w[0][0] - w[1][0]), WithinAbs(0.0, 1e-12));
    }
    SECTION("random PSD matrices reproduce") {
        Rng rng(11);
        for (int it = 0; it < 50; ++it) {
            const std::size_t n = 2 + it % 5;
            const HermitianMatrix a = random_psd(rng, n, 1 + it % n);
            const auto w = gram_factorize(a);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    CHECK_THAT(std::abs(herm_inner(w[i], w[j]) - a(i, j)),
                               WithinAbs(0.0, 1e-9));
        }
    }
    SECTION("rejects non-psd input") {
        ComplexMatrix bad(2);
        bad(0, 0) = bad(1, 1) = 1.0;
        bad(0, 1) = bad(1, 0) = 2.0;
        CHECK_THROWS_AS(gram_factorize(HermitianMatrix(bad)), std::invalid_argument);
    }
}

TEST_CASE("eigenvalue and Sylvester routes agree away from the boundary") {
    Rng rng(23);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        const std::size_t n = 2 + it % 5;
        const HermitianMatrix h = random_hermitian(rng, n);
        const double scale = std::max(1.0, h.max_abs());
        const auto eig = hermitian_eig(h);
        if (std::abs(eig.values.front()) <= 10.0 * default_tol().psd_tol * scale) continue;
        ++checked;
        // is_psd itself throws if the two routes disagree outside the band.
        const auto r = is_psd(h);
        CHECK((r.verdict == Verdict::psd) == (eig.values.front() >= 0.0));
    }
    CHECK(checked > 950);

    // rank-deficient PSD inputs sit on the boundary; the engine must not
    // report a disagreement for them either
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + it % 5;
        CHECK_NOTHROW(is_psd(random_psd(rng, n, 1 + it % n)));
    }
}

TEST_CASE("det equals the product of eigenvalues") {
    Rng rng(31);
    for (int it = 0; it < 300; ++it) {
        const HermitianMatrix h = random_hermitian(rng, 2 + it % 5);
        double prod = 1.0;
        for (double l : hermitian_eig(h).values) prod *= l;
        const double d = det_real(h);
        CHECK_THAT(d, WithinRel(prod, 1e-8));
    }
}

TEST_CASE("eigenvectors diagonalize") {
    Rng rng(47);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 2 + it % 6;
        const HermitianMatrix h = random_hermitian(rng, n);
        const auto eig = hermitian_eig(h);
        for (std::size_t k = 0; k < n; ++k) {
            // || A v_k - lambda_k v_k ||
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cdouble acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += h(i, j) * eig.vectors(j, k);
                err += std::norm(acc - eig.values[k] * eig.vectors(i, k));
            }
            CHECK_THAT(std::sqrt(err), WithinAbs(0.0, 1e-10));
        }
    }
}
