#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kosgeo {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

inline constexpr double pi = std::numbers::pi;

/// Thrown when two independent numerical routes disagree beyond their shared
/// tolerance band (signals tolerance misconfiguration near a PSD boundary).
class internal_error : public std::runtime_error {
  public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

/// Relative tolerances used by every equality / positivity decision.
struct Tolerance {
    double eq_tol = 1e-9;
    double psd_tol = 1e-9;

    Tolerance() = default;
    Tolerance(double eq, double psd) : eq_tol(eq), psd_tol(psd) {
        if (!(eq > 0.0 && eq < 1.0) || !(psd > 0.0 && psd < 1.0))
            throw std::invalid_argument("Tolerance: both tolerances must be in (0,1)");
    }
};

inline const Tolerance& default_tol() {
    static const Tolerance t;
    return t;
}

// Inner product on C^n, linear in the first argument.
inline cdouble herm_inner(const cvector& w, const cvector& z) {
    if (w.size() != z.size())
        throw std::invalid_argument("herm_inner: dimension mismatch");
    cdouble s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * std::conj(z[k]);
    return s;
}

inline double norm2(const cvector& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

inline double vec_norm(const cvector& v) { return std::sqrt(norm2(v)); }

// Maps an angle to the principal branch (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
}

inline double clamp_to_unit(double x, double tol) {
    if (x > 1.0) {
        if (x > 1.0 + tol) throw std::invalid_argument("value outside [-1,1] beyond tolerance");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - tol) throw std::invalid_argument("value outside [-1,1] beyond tolerance");
        return -1.0;
    }
    return x;
}

/// Deterministic random source. Distributions are hand-rolled from raw
/// mt19937_64 output so a fixed seed yields identical streams on every
/// standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    cdouble cgauss() { return {gauss(), gauss()}; }

    std::uint64_t bits() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace kosgeo
