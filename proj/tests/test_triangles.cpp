#include "helpers.hpp"

#include "kosgeo/moduli.hpp"
#include "kosgeo/triangles.hpp"

using namespace kosgeo;
using kosgeo::test::config;
using kosgeo::test::pt;
using Catch::Matchers::WithinAbs;

TEST_CASE("gamma factor") {
    CHECK_THAT(gamma_factor(0.3, 0.3, 0.3), WithinAbs(std::sqrt(1.0 - 0.09), 1e-15));
    CHECK_THAT(gamma_factor(0.5, 0.3, 0.6), WithinAbs(std::sqrt(0.75 * 0.91 / 0.64), 1e-15));
    CHECK_THROWS_AS(gamma_factor(0.5, 0.3, 1.0), std::invalid_argument);
}

TEST_CASE("S and S-prime conversions are mutually inverse") {
    const TriangleSPrime sp{0.5, 0.45, 0.3, 0.2};
    const TriangleS s = sprime_to_s(sp);
    const TriangleSPrime back = s_to_sprime(s);
    CHECK_THAT(back.d12, WithinAbs(sp.d12, 1e-12));
    CHECK_THAT(back.d13, WithinAbs(sp.d13, 1e-12));
    CHECK_THAT(back.d23, WithinAbs(sp.d23, 1e-12));
}

TEST_CASE("realizability of S-prime data") {
    SECTION("collinear real triple sits on the boundary and is realizable") {
        const PointConfig line = config({pt({0.0}), pt({0.3}), pt({0.5})});
        const TriangleSPrime sp = triangle_sprime(line);
        CHECK(realizable_sprime(sp));
        // boundary: the inequality is tight for |kos| = 1
        const double g123 = gamma_factor(sp.d12, sp.d23, sp.d13);
        const double g231 = gamma_factor(sp.d23, sp.d13, sp.d12);
        const double g312 = gamma_factor(sp.d13, sp.d12, sp.d23);
        const double prod = std::sqrt((1 - sp.d12 * sp.d12) * (1 - sp.d23 * sp.d23) *
                                      (1 - sp.d13 * sp.d13));
        CHECK_THAT(g123 + g231 + g312 - 2.0 * std::cos(sp.alpha123) - prod,
                   WithinAbs(0.0, 1e-12));
    }
    SECTION("alpha = pi is never realizable") {
        CHECK_FALSE(realizable_sprime({0.4, 0.4, 0.4, pi}));
    }
    SECTION("extracted data is always realizable") {
        Rng rng(109);
        for (int it = 0; it < 100; ++it) {
            const PointConfig x = random_config(rng, 3, 2 + it % 3);
            CHECK(realizable_sprime(triangle_sprime(x)));
            CHECK(realizable_sdp(triangle_sdp(x)));
        }
    }
}

TEST_CASE("realizability of S-double-prime data") {
    CHECK(realizable_sdp({0.5, 0.5, 0.6}));
    CHECK_FALSE(in_complex_geodesic({0.5, 0.5, 0.6}));
    CHECK(realizable_sdp({0.5, 0.5, std::polar(1.0, 0.7)}));
    CHECK(in_complex_geodesic({0.5, 0.5, std::polar(1.0, 0.7)}));
    CHECK_FALSE(realizable_sdp({0.5, 0.5, 1.2}));
}

TEST_CASE("conversions between S-prime and S-double-prime") {
    SECTION("real collinear example") {
        const TriangleSPrime sp = sdp_to_sprime({0.5, 0.3, 1.0});
        CHECK_THAT(sp.d23, WithinAbs(0.2 / 0.85, 1e-9));
        CHECK_THAT(sp.alpha123, WithinAbs(0.0, 1e-12));
    }
    SECTION("round trips") {
        Rng rng(113);
        for (int it = 0; it < 100; ++it) {
            const PointConfig x = random_config(rng, 3, 2);
            const TriangleSDoublePrime sdp = triangle_sdp(x);
            const TriangleSPrime sp = sdp_to_sprime(sdp);
            // forward matches the direct extraction
            const TriangleSPrime direct = triangle_sprime(x);
            CHECK_THAT(sp.d23, WithinAbs(direct.d23, 1e-10));
            CHECK_THAT(wrap_angle(sp.alpha123 - direct.alpha123), WithinAbs(0.0, 1e-9));
            // backward recovers kos
            const TriangleSDoublePrime back = sprime_to_sdp(sp);
            CHECK_THAT(test::cdist(back.kos123, sdp.kos123), WithinAbs(0.0, 1e-9));
            const TriangleSPrime again = sdp_to_sprime(back);
            CHECK_THAT(again.d23, WithinAbs(sp.d23, 1e-9));
        }
    }
    SECTION("real kos gives alpha in {0, pi}") {
        const TriangleSPrime a = sdp_to_sprime({0.5, 0.4, 0.7});
        CHECK_THAT(a.alpha123, WithinAbs(0.0, 1e-12));
        const TriangleSPrime b = sdp_to_sprime({0.5, 0.4, -0.9});
        CHECK(std::abs(wrap_angle(b.alpha123)) == 0.0);  // 1 - ax > 0 for |ax| < 1
    }
}

TEST_CASE("model triangle construction") {
    SECTION("fixture inversion") {
        const PointConfig m = build_model_triangle({0.5, 0.5, 0.6});
        CHECK_THAT(test::cdist(m[1][0], 0.5), WithinAbs(0.0, 1e-12));
        CHECK_THAT(test::cdist(m[2][0], 0.3), WithinAbs(0.0, 1e-12));
        CHECK_THAT(test::cdist(m[2][1], 0.4), WithinAbs(0.0, 1e-12));
    }
    SECTION("real kos = 1 collapses to a line") {
        const PointConfig m = build_model_triangle({0.5, 0.3, 1.0});
        CHECK_THAT(std::abs(m[2][1]), WithinAbs(0.0, 1e-12));
    }
    SECTION("unimodular kos lies in the complex geodesic") {
        const cdouble k = std::polar(1.0, pi / 3.0);
        const PointConfig m = build_model_triangle({0.4, 0.5, k});
        CHECK_THAT(test::cdist(m[2][0], 0.5 * std::polar(1.0, -pi / 3.0)),
                   WithinAbs(0.0, 1e-12));
        CHECK_THAT(std::abs(m[2][1]), WithinAbs(0.0, 1e-7));
    }
    SECTION("extraction inverts construction") {
        Rng rng(127);
        for (int it = 0; it < 100; ++it) {
            const double d12 = rng.uniform(0.1, 0.8), d13 = rng.uniform(0.1, 0.8);
            const cdouble k = std::polar(rng.uniform(0.0, 0.999), rng.uniform(-pi, pi));
            const TriangleSDoublePrime in{d12, d13, k};
            const TriangleSDoublePrime out = triangle_sdp(build_model_triangle(in));
            CHECK_THAT(out.d12, WithinAbs(d12, 1e-10));
            CHECK_THAT(out.d13, WithinAbs(d13, 1e-10));
            CHECK_THAT(test::cdist(out.kos123, k), WithinAbs(0.0, 1e-9));
        }
    }
    SECTION("rejects non-realizable data") {
        CHECK_THROWS_AS(build_model_triangle({0.5, 0.5, 1.2}), std::invalid_argument);
    }
}

TEST_CASE("SSS counterexample family") {
    SECTION("t = 1 pins the third vertex") {
        const PointConfig t1 = sss_family(1.0);
        CHECK_THAT(test::cdist(t1[2][0], 0.5), WithinAbs(0.0, 1e-12));
        CHECK_THAT(test::cdist(t1[2][1], 0.5), WithinAbs(0.0, 1e-12));
    }
    SECTION("t = sqrt(2) degenerates into a complex geodesic") {
        const PointConfig t2 = sss_family(std::sqrt(2.0));
        CHECK_THAT(std::abs(t2[2][1]), WithinAbs(0.0, 1e-9));
        CHECK(in_complex_geodesic(triangle_sdp(t2)));
    }
    SECTION("equal side lengths, distinct kos") {
        const std::vector<double> ts{1.0, 1.1, 1.2, std::sqrt(2.0)};
        std::vector<std::array<double, 3>> sides;
        std::vector<cdouble> kos_vals;
        for (double t : ts) {
            const PointConfig x = sss_family(t);
            sides.push_back({pseudo_dist(x[0], x[1]), pseudo_dist(x[0], x[2]),
                             pseudo_dist(x[1], x[2])});
            kos_vals.push_back(triangle_sdp(x).kos123);
        }
        for (std::size_t i = 1; i < ts.size(); ++i)
            for (int k = 0; k < 3; ++k)
                CHECK_THAT(sides[i][k], WithinAbs(sides[0][k], 1e-10));
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                CHECK(test::cdist(kos_vals[i], kos_vals[j]) > 1e-3);
    }
    SECTION("domain") {
        CHECK_THROWS_AS(sss_family(0.9), std::invalid_argument);
        CHECK_THROWS_AS(sss_family(1.5), std::invalid_argument);
    }
}

TEST_CASE("kos polar form") {
    SECTION("fixture") {
        const auto [r, theta] = kos_polar(test::fixture_triangle());
        CHECK_THAT(r, WithinAbs(0.6, 1e-10));
        CHECK_THAT(theta, WithinAbs(0.0, 1e-10));
    }
    SECTION("imaginary first coordinate") {
        const PointConfig gamma =
            config({pt({0.0, 0.0}), pt({0.5, 0.0}), pt({cdouble(0.0, 0.3), 0.4})});
        const auto [r, theta] = kos_polar(gamma);
        const cdouble direct = kos(gram_of_config(gamma), 0, 1, 2);
        CHECK_THAT(test::cdist(std::polar(r, theta), direct), WithinAbs(0.0, 1e-10));
    }
    SECTION("complex geodesic gives r = 1") {
        const PointConfig flat =
            config({pt({0.0}), pt({0.4}), pt({cdouble(0.1, 0.3)})});
        const auto [r, theta] = kos_polar(flat);
        CHECK_THAT(r, WithinAbs(1.0, 1e-9));
        (void)theta;
    }
    SECTION("agrees with kos on random triangles") {
        Rng rng(131);
        for (int it = 0; it < 60; ++it) {
            const PointConfig x = random_config(rng, 3, 2 + it % 2);
            const auto [r, theta] = kos_polar(x);
            const cdouble direct = kos(gram_of_config(x), 0, 1, 2);
            CHECK_THAT(test::cdist(std::polar(r, theta), direct), WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("model triangles preserve congruence class") {
    Rng rng(137);
    for (int it = 0; it < 60; ++it) {
        const PointConfig x = random_config(rng, 3, 2 + it % 3);
        const PointConfig rebuilt = build_model_triangle(triangle_sdp(x));
        // pad to a common dimension for the congruence test
        const std::size_t dim = std::max(x.dim(), rebuilt.dim());
        auto lift = [&](const PointConfig& c) {
            return c.mapped([&](const BallPoint& p) { return p.padded(dim); });
        };
        CHECK(congruent(lift(x), lift(rebuilt), Tolerance(1e-8, 1e-9)));
    }
}
