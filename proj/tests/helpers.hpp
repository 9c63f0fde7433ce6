#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "kosgeo/ball.hpp"
#include "kosgeo/sampling.hpp"

namespace kosgeo::test {

inline BallPoint pt(std::initializer_list<cdouble> coords) { return BallPoint(cvector(coords)); }

inline PointConfig config(std::initializer_list<BallPoint> pts) {
    return PointConfig(std::vector<BallPoint>(pts));
}

// The model triangle Gamma(a = 0.5, x = 0.3, b = 0.4) used throughout.
inline PointConfig fixture_triangle() {
    return config({pt({0.0, 0.0}), pt({0.5, 0.0}), pt({0.3, 0.4})});
}

// Orthogonal-rays tetrahedron {0, 0.5 e1, 0.5 e2, 0.5 e3}.
inline PointConfig orthogonal_tetrahedron() {
    return config({pt({0.0, 0.0, 0.0}), pt({0.5, 0.0, 0.0}), pt({0.0, 0.5, 0.0}),
                   pt({0.0, 0.0, 0.5})});
}

inline double cdist(cdouble a, cdouble b) { return std::abs(a - b); }

}  // namespace kosgeo::test
