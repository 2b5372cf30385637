#pragma once

#include "steklov/linalg.hpp"
#include "steklov/profile.hpp"

#include <string>
#include <vector>

namespace steklov {

/// Which constant multiplies the rho^{n-2} mass density in the n >= 3
/// problems: Paper uses omega_{n-2} (the unit-ball volume the text writes),
/// Sphere uses (n-1) omega_{n-1} (the surface measure of the unit
/// (n-2)-sphere). The choice rescales eigenvalues by a positive constant.
enum class AngularConvention { Paper, Sphere };

/// Lebesgue measure of the n-dimensional unit ball.
double unit_ball_volume(int n);

/// Data for the one-dimensional limit problems on (-L/2, L/2).
/// The dynamic boundary condition carries an endpoint mass w_b * P_i.
struct Limit1DProblem {
    TubeProfile profile = TubeProfile::constant(1.0);
    double L = 1.0;
    int n = 2;           // ambient dimension
    double P1 = 1.0, P2 = 1.0;
    double w_b = 0.5;    // boundary weight scale
    AngularConvention convention = AngularConvention::Paper;

    /// n = 2 dynamic problem: -(rho V')' = mu V with endpoint masses P_i/2.
    static Limit1DProblem dynamic_2d(TubeProfile profile, double L, double P1, double P2);

    /// n >= 3 dynamic problem with eps-scaled endpoint masses P_i/eps^{n-2}.
    static Limit1DProblem dynamic_weighted(TubeProfile profile, double L, int n,
                                           double P1, double P2, double eps,
                                           AngularConvention conv = AngularConvention::Paper);

    /// n >= 3 Dirichlet problem (endpoints clamped; P_i unused).
    static Limit1DProblem dirichlet(TubeProfile profile, double L, int n,
                                    double P1, double P2,
                                    AngularConvention conv = AngularConvention::Paper);

    void validate() const;

    double stiffness_coeff(double rho_value) const; // rho (n=2), w_{n-1} rho^{n-1} (n>=3)
    double mass_coeff(double rho_value) const;      // 1 (n=2), kappa rho^{n-2} (n>=3)
    double angular_mass_constant() const;           // kappa for the chosen convention
};

/// Eigenpairs of a 1D problem on the uniform grid. Eigenvectors are
/// orthonormal in the problem's weighted-L2-plus-endpoint-mass inner
/// product; the matrix bands are kept so tests can evaluate the identities.
struct Spectrum1D {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> samples; // samples[k] over the full grid
    std::vector<double> grid;                 // N+1 uniform nodes on [-L/2, L/2]
    double endpoint_mass_left = 0.0;          // w_b * P1 (0 for Dirichlet)
    double endpoint_mass_right = 0.0;
    // Full-grid bands of the assembled matrices (Dirichlet rows included
    // before elimination), for Gram / identity checks.
    std::vector<double> k_diag, k_off;
    std::vector<double> m_diag, m_off;

    /// Weighted inner product <u, v> including the endpoint masses.
    double gram_inner(const std::vector<double>& u, const std::vector<double>& v) const;
    /// Stiffness inner product int a(x) u' v'.
    double stiffness_inner(const std::vector<double>& u, const std::vector<double>& v) const;
};

/// Dynamic-boundary-condition eigenproblem, P1 FEM on N intervals:
/// int a V' phi' = mu [ int b V phi + w_b P1 V phi(-L/2) + w_b P2 V phi(L/2) ].
/// The lowest eigenvalue is 0 with constant eigenfunction.
Spectrum1D solve_dynamic_bc(const Limit1DProblem& p, int N, int k_max,
                            const NumericSettings& settings = {});

/// Dirichlet problem (ends clamped): eigenvalues alpha_1 <= alpha_2 <= ...
/// all positive; returned samples include the zero endpoint values.
Spectrum1D solve_dirichlet_weighted(const Limit1DProblem& p, int N, int k_max,
                                    const NumericSettings& settings = {});

/// First nonzero eigenvalue scale of the n >= 3 problem whose solution has
/// constant flux: sigma_1 = w_{n-1} (P1 + P2) / (P1 P2 I) with
/// I = int rho^{1-n}, integrated by composite Simpson with 2^14 panels.
double sigma1_closed_form(const Limit1DProblem& p);

/// Independent check: shooting on the constant-flux ODE with an RK4 march of
/// N steps, bisecting the boundary-condition determinant on sigma.
/// Throws NoBracket when no sign change exists in (1e-8, 1e4).
double sigma1_determinant_oracle(const Limit1DProblem& p, int N);

/// Roots w_1 < w_2 < ... of cot(wL) = (w^2 P1 P2 - 4) / (2 w (P1 + P2)),
/// one per interval ((m-1)pi/L, m pi/L), bisected to |dw| <= 1e-12.
std::vector<double> transcendental_roots(double L, double P1, double P2, int k_max);

/// f(w) = cot(wL) - (w^2 pi - 1)/(2 sqrt(pi) w): the root function above
/// specialized to P1 = P2 = 2 sqrt(pi) (unit-area disks).
double f_eval(double w, double L);

} // namespace steklov
