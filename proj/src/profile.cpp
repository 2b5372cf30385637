#include "steklov/profile.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace steklov {

TubeProfile TubeProfile::constant(double c) {
    if (!(c > 0.0)) throw DegenerateProfile("constant profile must be positive");
    TubeProfile p;
    p.kind_ = Kind::Constant;
    p.c0_ = c;
    return p;
}

TubeProfile TubeProfile::cosine_bump(double c0, double c1, double length) {
    if (!(length > 0.0)) throw InvalidArgument("cosine_bump: length must be positive");
    TubeProfile p;
    p.kind_ = Kind::CosineBump;
    p.c0_ = c0;
    p.c1_ = c1;
    p.half_length_ = length / 2.0;
    p.require_positive(p.half_length_);
    return p;
}

TubeProfile TubeProfile::table(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw InvalidArgument("table profile needs >= 2 samples");
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first == samples[i - 1].first)
            throw InvalidArgument("table profile has duplicate abscissa");
    TubeProfile p;
    p.kind_ = Kind::Table;
    p.samples_ = std::move(samples);
    p.half_length_ = std::max(std::abs(p.samples_.front().first), std::abs(p.samples_.back().first));
    for (const auto& [x, v] : p.samples_)
        if (!(v > 0.0)) throw DegenerateProfile("table profile value <= 0 at x=" + std::to_string(x));
    return p;
}

double TubeProfile::operator()(double x1) const {
    if (std::abs(x1) > half_length_ * (1.0 + 1e-12))
        throw OutOfDomain("profile evaluated at x1=" + std::to_string(x1) +
                          " outside [-L/2, L/2]");
    switch (kind_) {
    case Kind::Constant:
        return c0_;
    case Kind::CosineBump:
        return c0_ + c1_ * std::cos(M_PI * x1 / (2.0 * half_length_));
    case Kind::Table: {
        const double x = std::clamp(x1, samples_.front().first, samples_.back().first);
        auto it = std::upper_bound(samples_.begin(), samples_.end(), std::make_pair(x, 1e300));
        if (it == samples_.begin()) return samples_.front().second;
        if (it == samples_.end()) return samples_.back().second;
        const auto& [x1a, v1] = *(it - 1);
        const auto& [x2a, v2] = *it;
        const double t = (x - x1a) / (x2a - x1a);
        return v1 + t * (v2 - v1);
    }
    }
    return c0_;
}

double TubeProfile::max_on(double half_span, int samples) const {
    const double h = std::isfinite(half_length_) ? std::min(half_length_, half_span) : half_span;
    double m = -1e300;
    for (int i = 0; i <= samples; ++i) {
        const double t = double(i) / samples;
        m = std::max(m, (*this)((1.0 - t) * -h + t * h));
    }
    return m;
}

double TubeProfile::min_on(double half_span, int samples) const {
    const double h = std::isfinite(half_length_) ? std::min(half_length_, half_span) : half_span;
    double m = 1e300;
    for (int i = 0; i <= samples; ++i) {
        const double t = double(i) / samples;
        m = std::min(m, (*this)((1.0 - t) * -h + t * h));
    }
    return m;
}

void TubeProfile::require_positive(double half_span, int samples) const {
    if (min_on(half_span, samples) <= 0.0)
        throw DegenerateProfile("profile is not positive on the sample grid");
}

TubeProfile TubeProfile::scaled(double s) const {
    if (!(s > 0.0)) throw InvalidArgument("profile scale must be positive");
    TubeProfile p(*this);
    p.c0_ *= s;
    p.c1_ *= s;
    for (auto& [x, v] : p.samples_) v *= s;
    return p;
}

} // namespace steklov
