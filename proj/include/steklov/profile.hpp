#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace steklov {

/// Tube half-width profile rho, a positive function on [-L/2, L/2].
/// Three concrete families:
///   constant(c)            rho(x) = c, any domain
///   cosine_bump(c0,c1,L)   rho(x) = c0 + c1 * cos(pi x / L)
///   table(samples)         piecewise-linear through (x, rho) samples
class TubeProfile {
public:
    enum class Kind { Constant, CosineBump, Table };

    static TubeProfile constant(double c);
    static TubeProfile cosine_bump(double c0, double c1, double length);
    static TubeProfile table(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }

    /// rho(x1). Throws OutOfDomain when |x1| exceeds the profile's domain.
    double operator()(double x1) const;

    /// Domain half-length (L/2); infinite for a constant profile.
    double half_length() const { return half_length_; }

    /// Largest value over a dense sample grid of [-h, h], h = min(half_length, limit).
    double max_on(double half_span, int samples = 2048) const;
    double min_on(double half_span, int samples = 2048) const;

    /// Throws DegenerateProfile unless rho > 0 on a dense sample grid.
    void require_positive(double half_span, int samples = 2048) const;

    /// Profile with every value multiplied by s (> 0).
    TubeProfile scaled(double s) const;

    double constant_value() const { return c0_; }
    double bump_base() const { return c0_; }
    double bump_amplitude() const { return c1_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

private:
    Kind kind_ = Kind::Constant;
    double c0_ = 1.0, c1_ = 0.0;
    double half_length_ = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> samples_;
};

} // namespace steklov
