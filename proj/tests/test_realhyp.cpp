#include "helpers.hpp"

#include "kosgeo/assembly.hpp"
#include "kosgeo/realhyp.hpp"

using namespace kosgeo;
using kosgeo::test::config;
using kosgeo::test::pt;
using Catch::Matchers::WithinAbs;

TEST_CASE("reality detection") {
    SECTION("real coordinates give a real configuration") {
        const PointConfig x = config({pt({0.1, 0.0, 0.0}), pt({0.5, 0.2, 0.0}),
                                      pt({-0.3, 0.4, 0.0}), pt({0.0, -0.2, 0.3})});
        CHECK(is_real_config(x));
    }
    SECTION("an imaginary model coordinate breaks reality") {
        const PointConfig gamma =
            config({pt({0.0, 0.0}), pt({0.5, 0.0}), pt({cdouble(0.0, 0.3), 0.4})});
        CHECK_FALSE(is_real_config(gamma));
    }
    SECTION("the Quiggin Gram is not real") {
        CHECK_FALSE(is_real_gram(quiggin_gram(0.25)));
    }
}

TEST_CASE("vertex angles of real tetrahedra") {
    SECTION("orthogonal rays give right angles") {
        const auto va = vertex_angles(test::orthogonal_tetrahedron());
        for (double c : va.cosines) CHECK_THAT(c, WithinAbs(0.0, 1e-12));
    }
    SECTION("a separating point gives angle pi") {
        const PointConfig x = config({pt({0.0, 0.0, 0.0}), pt({0.3, 0.0, 0.0}),
                                      pt({-0.4, 0.0, 0.0}), pt({0.0, 0.0, 0.5})});
        const auto va = vertex_angles(x);
        CHECK_THAT(va.cosines[0], WithinAbs(-1.0, 1e-12));
    }
    SECTION("vertex angles agree with kos exactly") {
        Rng rng(211);
        for (int it = 0; it < 40; ++it) {
            // random real configuration
            std::vector<BallPoint> pts{BallPoint::origin(3)};
            Rng local(rng.bits());
            while (pts.size() < 4) {
                cvector v(3);
                for (auto& c : v) c = local.gauss();
                const double n = vec_norm(v);
                const double r = 0.7 * local.uniform();
                for (auto& c : v) c *= r / n;
                BallPoint cand(v);
                bool ok = true;
                for (const auto& p : pts)
                    if (pseudo_dist(p, cand) < 0.05) ok = false;
                if (ok) pts.push_back(cand);
            }
            const PointConfig x(pts);
            const auto va = vertex_angles(x);
            const GramSpec g = gram_of_config(x);
            CHECK_THAT(va.cosines[0] - kos(g, 0, 1, 2).real(), WithinAbs(0.0, 1e-10));
            CHECK_THAT(va.cosines[1] - kos(g, 0, 1, 3).real(), WithinAbs(0.0, 1e-10));
            CHECK_THAT(va.cosines[2] - kos(g, 0, 2, 3).real(), WithinAbs(0.0, 1e-10));
        }
    }
    SECTION("planar equilateral vertex sits on the Cayley surface") {
        // three rays at 2pi/3 in a plane: cos = -1/2, det = 0
        CHECK_THAT(cayley_p({-0.5, -0.5, -0.5}), WithinAbs(0.0, 1e-15));
        CHECK(cayley_classify({-0.5, -0.5, -0.5}) == CayleyClass::smooth_boundary);
    }
    SECTION("nonreal input is rejected") {
        const PointConfig gamma = config({pt({0.0, 0.0, 0.0}), pt({0.5, 0.0, 0.0}),
                                          pt({cdouble(0.0, 0.3), 0.4, 0.0}),
                                          pt({0.1, 0.1, 0.3})});
        CHECK_THROWS_AS(vertex_angles(gamma), std::invalid_argument);
    }
}

TEST_CASE("hyperbolic law of cosines") {
    SECTION("orthogonal corner") {
        const auto cda = dihedral_from_vertex(AngleTriple(pi / 2, pi / 2, pi / 2));
        for (double c : cda) CHECK_THAT(c, WithinAbs(0.0, 1e-15));
    }
    SECTION("equilateral pi/3 corner") {
        const auto cda = dihedral_from_vertex(AngleTriple(pi / 3, pi / 3, pi / 3));
        for (double c : cda) CHECK_THAT(c, WithinAbs(1.0 / 3.0, 1e-12));
        const auto cva =
            vertex_from_dihedral(AngleTriple(std::acos(1.0 / 3.0), std::acos(1.0 / 3.0),
                                             std::acos(1.0 / 3.0)));
        for (double c : cva) CHECK_THAT(c, WithinAbs(0.5, 1e-12));
    }
    SECTION("unrealizable vertex pushes |cos da| above one") {
        const auto cda = dihedral_from_vertex(AngleTriple(pi / 2, pi / 4, pi / 5));
        const bool some_out = std::abs(cda[0]) > 1.0 || std::abs(cda[1]) > 1.0 ||
                              std::abs(cda[2]) > 1.0;
        CHECK(some_out);
        CHECK_FALSE(gva_check(AngleTriple(pi / 2, pi / 4, pi / 5)));
    }
    SECTION("round trips on realizable triples") {
        Rng rng(223);
        int done = 0;
        while (done < 200) {
            const AngleTriple va(rng.uniform(0.3, pi - 0.3), rng.uniform(0.3, pi - 0.3),
                                 rng.uniform(0.3, pi - 0.3));
            if (!gva_check(va)) continue;
            const auto cda = dihedral_from_vertex(va);
            if (std::abs(cda[0]) > 0.999 || std::abs(cda[1]) > 0.999 ||
                std::abs(cda[2]) > 0.999)
                continue;
            const auto cva = vertex_from_dihedral(
                AngleTriple(std::acos(cda[0]), std::acos(cda[1]), std::acos(cda[2])));
            CHECK_THAT(cva[0], WithinAbs(std::cos(va.a), 1e-9));
            CHECK_THAT(cva[1], WithinAbs(std::cos(va.b), 1e-9));
            CHECK_THAT(cva[2], WithinAbs(std::cos(va.c), 1e-9));
            ++done;
        }
    }
}

TEST_CASE("good vertex and dihedral angle criteria") {
    CHECK(gva_check(AngleTriple(pi / 2, pi / 2, pi / 2)));
    CHECK(gda_check(AngleTriple(pi / 2, pi / 2, pi / 2)));
    CHECK(gva_check(AngleTriple(pi / 4, pi / 4, pi / 4)));
    CHECK_FALSE(gda_check(AngleTriple(pi / 4, pi / 4, pi / 4)));
    CHECK_FALSE(gva_check(AngleTriple(pi / 2, pi / 4, pi / 5)));

    SECTION("criteria match the PSD routes on a grid") {
        const int steps = 24;
        for (int i = 1; i < steps; ++i)
            for (int j = 1; j < steps; ++j)
                for (int k = 1; k < steps; ++k) {
                    const AngleTriple g(i * pi / steps, j * pi / steps, k * pi / steps);
                    // gva_check itself throws if the two routes disagree
                    CHECK_NOTHROW(gva_check(g));
                    CHECK_NOTHROW(gda_check(g));
                }
    }
}

TEST_CASE("duality between vertex and dihedral angles") {
    const AngleTriple right(pi / 2, pi / 2, pi / 2);
    const AngleTriple dual_right = dual(right);
    CHECK_THAT(dual_right.a, WithinAbs(pi / 2, 1e-15));

    CHECK(gva_check(AngleTriple(pi / 3, pi / 3, pi / 3)));
    CHECK(gda_check(dual(AngleTriple(pi / 3, pi / 3, pi / 3))));

    SECTION("involutive and exchange of criteria") {
        Rng rng(227);
        for (int it = 0; it < 300; ++it) {
            const AngleTriple g(rng.uniform(0.05, pi - 0.05), rng.uniform(0.05, pi - 0.05),
                                rng.uniform(0.05, pi - 0.05));
            const AngleTriple dd = dual(dual(g));
            CHECK_THAT(dd.a, WithinAbs(g.a, 1e-15));
            CHECK(gva_check(g) == gda_check(dual(g)));
            CHECK(gda_check(g) == gva_check(dual(g)));
        }
    }
}

TEST_CASE("dihedral gate") {
    SECTION("orthogonal dihedral angles are feasible") {
        const auto r = dihedral_gate(DihedralAngleMatrix::from_angles(
            AngleTriple(pi / 2, pi / 2, pi / 2)));
        CHECK(r.feasible);
    }
    SECTION("pi/4 everywhere is infeasible") {
        const auto r = dihedral_gate(DihedralAngleMatrix::from_angles(
            AngleTriple(pi / 4, pi / 4, pi / 4)));
        CHECK_FALSE(r.feasible);
        CHECK_FALSE(gda_check(AngleTriple(pi / 4, pi / 4, pi / 4)));
    }
    SECTION("2pi/3 everywhere is feasible with det 1/2") {
        const auto r = dihedral_gate(DihedralAngleMatrix::from_angles(
            AngleTriple(2 * pi / 3, 2 * pi / 3, 2 * pi / 3)));
        CHECK(r.feasible);
        CHECK_THAT(r.det, WithinAbs(0.5, 1e-12));
    }
    SECTION("gate agrees with gda_check across samples") {
        Rng rng(229);
        for (int it = 0; it < 200; ++it) {
            const AngleTriple g(rng.uniform(0.1, pi - 0.1), rng.uniform(0.1, pi - 0.1),
                                rng.uniform(0.1, pi - 0.1));
            const auto r = dihedral_gate(DihedralAngleMatrix::from_angles(g));
            CHECK(r.feasible == gda_check(g));
        }
    }
}

TEST_CASE("amplitude factorizations") {
    SECTION("orthogonal corner has amplitude one") {
        const auto a = amplitude_va(AngleTriple(pi / 2, pi / 2, pi / 2));
        CHECK_THAT(a.polynomial, WithinAbs(1.0, 1e-15));
        CHECK_THAT(a.factorized, WithinAbs(1.0, 1e-12));
    }
    SECTION("degenerate triple has amplitude zero") {
        const auto a = amplitude_va(AngleTriple(pi / 2, pi / 4, pi / 4));
        CHECK_THAT(a.polynomial, WithinAbs(0.0, 1e-14));
        CHECK_THAT(a.factorized, WithinAbs(0.0, 1e-14));
    }
    SECTION("polynomial equals the factorization everywhere") {
        Rng rng(233);
        for (int it = 0; it < 1000; ++it) {
            const AngleTriple g(rng.uniform(0.02, pi - 0.02), rng.uniform(0.02, pi - 0.02),
                                rng.uniform(0.02, pi - 0.02));
            const auto av = amplitude_va(g);
            const auto ad = amplitude_da(g);
            CHECK_THAT(av.polynomial - av.factorized, WithinAbs(0.0, 1e-9));
            CHECK_THAT(ad.polynomial - ad.factorized, WithinAbs(0.0, 1e-9));
        }
    }
    SECTION("amplitudes are the matrix determinants") {
        Rng rng(239);
        for (int it = 0; it < 100; ++it) {
            const AngleTriple g(rng.uniform(0.05, pi - 0.05), rng.uniform(0.05, pi - 0.05),
                                rng.uniform(0.05, pi - 0.05));
            const VertexAngleMatrix mva{{std::cos(g.a), std::cos(g.b), std::cos(g.c)}};
            CHECK_THAT(amplitude_va(g).polynomial - det_real(mva.matrix()),
                       WithinAbs(0.0, 1e-12));
            const DihedralAngleMatrix mda = DihedralAngleMatrix::from_angles(g);
            CHECK_THAT(amplitude_da(g).polynomial - det_real(mda.matrix()),
                       WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("cayley surface") {
    CHECK_THAT(cayley_p({0.0, 0.0, 0.0}), WithinAbs(1.0, 1e-15));
    CHECK(cayley_classify({0.0, 0.0, 0.0}) == CayleyClass::interior);

    for (const auto& s : {CayleyPoint{1, 1, 1}, CayleyPoint{1, -1, -1},
                          CayleyPoint{-1, 1, -1}, CayleyPoint{-1, -1, 1}}) {
        CHECK_THAT(cayley_p(s), WithinAbs(0.0, 1e-15));
        CHECK(cayley_classify(s) == CayleyClass::singular);
    }
    // an odd number of minus signs is far off the surface (p = -4)
    CHECK_THAT(cayley_p({-1.0, 1.0, 1.0}), WithinAbs(-4.0, 1e-15));
    CHECK(cayley_classify({-1.0, 1.0, 1.0}) == CayleyClass::exterior);

    SECTION("planar degenerations satisfy the equation") {
        const double a = 1.0, b = 0.7;
        const CayleyPoint p{std::cos(a), std::cos(b), std::cos(2 * pi - a - b)};
        CHECK_THAT(cayley_p(p), WithinAbs(0.0, 1e-14));
        CHECK(cayley_classify(p) == CayleyClass::smooth_boundary);
    }
    SECTION("out of box") {
        CHECK(cayley_classify({1.5, 0.0, 0.0}) == CayleyClass::out_of_box);
    }
    SECTION("exterior") {
        CHECK(cayley_classify({0.99, -0.99, 0.9}) == CayleyClass::exterior);
    }
    SECTION("cayley polynomial is the vertex-angle determinant") {
        Rng rng(241);
        for (int it = 0; it < 200; ++it) {
            const double x = rng.uniform(-0.99, 0.99), y = rng.uniform(-0.99, 0.99),
                         z = rng.uniform(-0.99, 0.99);
            const VertexAngleMatrix m{{x, y, z}};
            CHECK_THAT(cayley_p({x, y, z}) - det_real(m.matrix()), WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("reality bridge to the tetra gate") {
    // For real data the gate conditions reduce to the vertex-angle criteria.
    Rng rng(251);
    for (int it = 0; it < 100; ++it) {
        const double c1 = rng.uniform(-0.95, 0.95), c2 = rng.uniform(-0.95, 0.95),
                     c3 = rng.uniform(-0.95, 0.95);
        const VertexAngleMatrix m{{c1, c2, c3}};
        const double d = det_real(m.matrix());
        if (std::abs(d) < 1e-6) continue;
        const bool psd = is_psd(m.matrix()).verdict == Verdict::psd;
        const bool trig = (c3 - c1 * c2) * (c3 - c1 * c2) <= (1 - c1 * c1) * (1 - c2 * c2);
        CHECK(psd == (d >= 0.0 && trig));
        // tetra gate with real kos values agrees
        CHECK(psd == tetra_gate(c1, c2, c3).feasible);
    }
}
