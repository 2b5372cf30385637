#include "steklov/limit1d.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace steklov {

double unit_ball_volume(int n) {
    if (n < 0) throw InvalidArgument("unit_ball_volume: negative dimension");
    return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

Limit1DProblem Limit1DProblem::dynamic_2d(TubeProfile profile, double L, double P1, double P2) {
    Limit1DProblem p;
    p.profile = std::move(profile);
    p.L = L;
    p.n = 2;
    p.P1 = P1;
    p.P2 = P2;
    p.w_b = 0.5;
    p.validate();
    return p;
}

Limit1DProblem Limit1DProblem::dynamic_weighted(TubeProfile profile, double L, int n,
                                                double P1, double P2, double eps,
                                                AngularConvention conv) {
    if (n < 3) throw InvalidArgument("dynamic_weighted: requires n >= 3");
    if (!(eps > 0.0)) throw InvalidArgument("dynamic_weighted: eps must be positive");
    Limit1DProblem p;
    p.profile = std::move(profile);
    p.L = L;
    p.n = n;
    p.P1 = P1;
    p.P2 = P2;
    p.w_b = std::pow(eps, -(n - 2));
    p.convention = conv;
    p.validate();
    return p;
}

Limit1DProblem Limit1DProblem::dirichlet(TubeProfile profile, double L, int n,
                                         double P1, double P2, AngularConvention conv) {
    if (n < 3) throw InvalidArgument("dirichlet: requires n >= 3");
    Limit1DProblem p;
    p.profile = std::move(profile);
    p.L = L;
    p.n = n;
    p.P1 = P1;
    p.P2 = P2;
    p.w_b = 0.0;
    p.convention = conv;
    p.validate();
    return p;
}

void Limit1DProblem::validate() const {
    if (!(L > 0.0)) throw InvalidArgument("Limit1DProblem: L must be positive");
    if (!(P1 > 0.0) || !(P2 > 0.0)) throw InvalidArgument("Limit1DProblem: P1, P2 must be positive");
    if (n < 2) throw InvalidArgument("Limit1DProblem: n must be >= 2");
    profile.require_positive(L / 2.0);
}

double Limit1DProblem::angular_mass_constant() const {
    return convention == AngularConvention::Paper ? unit_ball_volume(n - 2)
                                                  : (n - 1) * unit_ball_volume(n - 1);
}

double Limit1DProblem::stiffness_coeff(double rho_value) const {
    if (n == 2) return rho_value;
    return unit_ball_volume(n - 1) * std::pow(rho_value, n - 1);
}

double Limit1DProblem::mass_coeff(double rho_value) const {
    if (n == 2) return 1.0;
    return angular_mass_constant() * std::pow(rho_value, n - 2);
}

double Spectrum1D::gram_inner(const std::vector<double>& u, const std::vector<double>& v) const {
    const std::size_t n = m_diag.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mu = m_diag[i] * u[i];
        if (i > 0) mu += m_off[i - 1] * u[i - 1];
        if (i + 1 < n) mu += m_off[i] * u[i + 1];
        s += mu * v[i];
    }
    return s;
}

double Spectrum1D::stiffness_inner(const std::vector<double>& u, const std::vector<double>& v) const {
    const std::size_t n = k_diag.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ku = k_diag[i] * u[i];
        if (i > 0) ku += k_off[i - 1] * u[i - 1];
        if (i + 1 < n) ku += k_off[i] * u[i + 1];
        s += ku * v[i];
    }
    return s;
}

namespace {

double lerp01(double a, double b, double t) { return (1.0 - t) * a + t * b; }

struct Bands {
    std::vector<double> grid, k_diag, k_off, m_diag, m_off;
};

// P1 bands on N intervals: rho at element midpoints for the stiffness,
// at nodes (linearly interpolated inside each element) for the mass.
Bands assemble_bands(const Limit1DProblem& p, int N) {
    Bands b;
    const double L = p.L;
    const double h = L / N;
    b.grid.resize(N + 1);
    for (int i = 0; i <= N; ++i) b.grid[i] = lerp01(-L / 2.0, L / 2.0, double(i) / N);
    b.k_diag.assign(N + 1, 0.0);
    b.k_off.assign(N, 0.0);
    b.m_diag.assign(N + 1, 0.0);
    b.m_off.assign(N, 0.0);
    for (int e = 0; e < N; ++e) {
        const double x_mid = 0.5 * (b.grid[e] + b.grid[e + 1]);
        const double a = p.stiffness_coeff(p.profile(x_mid));
        b.k_diag[e] += a / h;
        b.k_diag[e + 1] += a / h;
        b.k_off[e] -= a / h;
        const double b0 = p.mass_coeff(p.profile(b.grid[e]));
        const double b1 = p.mass_coeff(p.profile(b.grid[e + 1]));
        b.m_diag[e] += h * (3.0 * b0 + b1) / 12.0;
        b.m_diag[e + 1] += h * (b0 + 3.0 * b1) / 12.0;
        b.m_off[e] += h * (b0 + b1) / 12.0;
    }
    return b;
}

void check_grid(int N, int k_max) {
    if (N < 64) throw InvalidGrid("N must be >= 64");
    if (k_max < 0 || k_max > N / 4) throw InvalidGrid("k_max must be <= N/4");
}

// Orient each eigenfunction so its largest-magnitude sample is positive.
void fix_signs(Spectrum1D& s) {
    for (auto& v : s.samples) {
        double best = 0.0;
        for (double x : v)
            if (std::abs(x) > std::abs(best)) best = x;
        if (best < 0.0)
            for (double& x : v) x = -x;
    }
}

} // namespace

Spectrum1D solve_dynamic_bc(const Limit1DProblem& p, int N, int k_max,
                            const NumericSettings& settings) {
    p.validate();
    check_grid(N, k_max);
    Bands b = assemble_bands(p, N);
    const double mass_left = p.w_b * p.P1;
    const double mass_right = p.w_b * p.P2;
    b.m_diag.front() += mass_left;
    b.m_diag.back() += mass_right;

    Spectrum eig = tri_gen_eig(b.k_diag, b.k_off, b.m_diag, b.m_off, k_max + 1, settings);

    Spectrum1D out;
    out.eigenvalues = std::move(eig.eigenvalues);
    out.samples = std::move(eig.vectors);
    out.grid = std::move(b.grid);
    out.endpoint_mass_left = mass_left;
    out.endpoint_mass_right = mass_right;
    out.k_diag = std::move(b.k_diag);
    out.k_off = std::move(b.k_off);
    out.m_diag = std::move(b.m_diag);
    out.m_off = std::move(b.m_off);
    fix_signs(out);
    return out;
}

Spectrum1D solve_dirichlet_weighted(const Limit1DProblem& p, int N, int k_max,
                                    const NumericSettings& settings) {
    p.validate();
    if (p.n < 3) throw InvalidArgument("solve_dirichlet_weighted: requires n >= 3");
    if (k_max < 1) throw InvalidArgument("solve_dirichlet_weighted: k_max must be >= 1");
    check_grid(N, k_max);
    Bands b = assemble_bands(p, N);

    // Eliminate the clamped endpoint rows/columns.
    std::vector<double> kd(b.k_diag.begin() + 1, b.k_diag.end() - 1);
    std::vector<double> ko(b.k_off.begin() + 1, b.k_off.end() - 1);
    std::vector<double> md(b.m_diag.begin() + 1, b.m_diag.end() - 1);
    std::vector<double> mo(b.m_off.begin() + 1, b.m_off.end() - 1);

    Spectrum eig = tri_gen_eig(kd, ko, md, mo, k_max, settings);

    Spectrum1D out;
    out.eigenvalues = std::move(eig.eigenvalues);
    for (auto& v : eig.vectors) {
        std::vector<double> full(N + 1, 0.0);
        std::copy(v.begin(), v.end(), full.begin() + 1);
        out.samples.push_back(std::move(full));
    }
    out.grid = std::move(b.grid);
    out.k_diag = std::move(b.k_diag);
    out.k_off = std::move(b.k_off);
    out.m_diag = std::move(b.m_diag);
    out.m_off = std::move(b.m_off);
    fix_signs(out);
    return out;
}

double sigma1_closed_form(const Limit1DProblem& p) {
    p.validate();
    if (p.n < 3) throw InvalidArgument("sigma1_closed_form: requires n >= 3");
    const int panels = 1 << 14;
    const double h = p.L / panels;
    // Composite Simpson for I = int rho^{1-n}.
    auto f = [&](double x) { return std::pow(p.profile(x), 1 - p.n); };
    double integral = f(-p.L / 2.0) + f(p.L / 2.0);
    for (int i = 1; i < panels; ++i) {
        const double x = lerp01(-p.L / 2.0, p.L / 2.0, double(i) / panels);
        integral += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
    }
    integral *= h / 3.0;
    const double omega = unit_ball_volume(p.n - 1);
    return omega * (p.P1 + p.P2) / (p.P1 * p.P2 * integral);
}

double sigma1_determinant_oracle(const Limit1DProblem& p, int N) {
    p.validate();
    if (p.n < 3) throw InvalidArgument("sigma1_determinant_oracle: requires n >= 3");
    if (N < 16) throw InvalidArgument("sigma1_determinant_oracle: N too small");
    const double omega = unit_ball_volume(p.n - 1);

    // Shooting residual: start from V(-L/2) = 1 with the left boundary
    // condition satisfied, march V' = W / rho^{n-1} (W is constant along the
    // tube) by classical RK4, and test the right boundary condition.
    auto residual = [&](double sigma) {
        const double w_flux = -(sigma / omega) * p.P1;
        double v = 1.0;
        const double h = p.L / N;
        auto slope = [&](double x) { return w_flux * std::pow(p.profile(x), 1 - p.n); };
        for (int i = 0; i < N; ++i) {
            const double x0 = lerp01(-p.L / 2.0, p.L / 2.0, double(i) / N);
            const double k1 = slope(x0);
            const double k2 = slope(x0 + h / 2.0);
            const double k4 = slope(std::min(x0 + h, p.L / 2.0));
            v += h / 6.0 * (k1 + 4.0 * k2 + k4);
        }
        return w_flux - (sigma / omega) * p.P2 * v;
    };

    double lo = 1e-8, hi = 1e4;
    double flo = residual(lo), fhi = residual(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoBracket("sigma1_determinant_oracle: no sign change in (1e-8, 1e4)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

double root_function(double w, double L, double P1, double P2) {
    return std::cos(w * L) / std::sin(w * L) -
           (w * w * P1 * P2 - 4.0) / (2.0 * w * (P1 + P2));
}

} // namespace

std::vector<double> transcendental_roots(double L, double P1, double P2, int k_max) {
    if (!(L > 0.0) || !(P1 > 0.0) || !(P2 > 0.0))
        throw InvalidArgument("transcendental_roots: L, P1, P2 must be positive");
    if (k_max < 1) throw InvalidArgument("transcendental_roots: k_max must be >= 1");

    std::vector<double> roots;
    roots.reserve(k_max);
    for (int m = 1; m <= k_max; ++m) {
        const double left = (m - 1) * M_PI / L;
        const double right = m * M_PI / L;
        // g -> +inf at the left pole edge and -inf at the right one.
        double delta = (right - left) * 1e-9;
        double a = 0.0, b = 0.0;
        bool bracketed = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            a = left + delta;
            b = right - delta;
            if (root_function(a, L, P1, P2) > 0.0 && root_function(b, L, P1, P2) < 0.0) {
                bracketed = true;
                break;
            }
            delta /= 16.0;
        }
        if (!bracketed)
            throw NoBracket("transcendental_roots: sign assumption failed on interval (" +
                            std::to_string(left) + ", " + std::to_string(right) + ")");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (root_function(mid, L, P1, P2) > 0.0)
                a = mid;
            else
                b = mid;
            if (b - a <= 1e-13) break;
        }
        roots.push_back(0.5 * (a + b));
    }
    return roots;
}

double f_eval(double w, double L) {
    if (!(w > 0.0)) throw InvalidArgument("f_eval: w must be positive");
    if (!(L > 0.0)) throw InvalidArgument("f_eval: L must be positive");
    const double wl = w * L;
    const double nearest = std::round(wl / M_PI) * M_PI;
    if (std::abs(wl - nearest) < 1e-12)
        throw PoleAt("f_eval: wL within 1e-12 of a multiple of pi");
    return std::cos(wl) / std::sin(wl) - (w * w * M_PI - 1.0) / (2.0 * std::sqrt(M_PI) * w);
}

} // namespace steklov
