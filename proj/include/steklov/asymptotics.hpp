#pragma once

#include "steklov/fem.hpp"
#include "steklov/limit1d.hpp"
#include "steklov/meshgen.hpp"

#include <functional>
#include <string>
#include <vector>

namespace steklov {

/// Log-log least-squares fit sigma ~ C eps^gamma.
struct RateFit {
    double gamma = 0.0;
    double C = 0.0;
    double residual = 0.0; // RMS of log deviations
};

/// Eigenfunction samples along the tube midline x2 = 0.
struct TubeTrace {
    std::vector<double> x; // uniform over [-L/2, L/2]
    std::vector<double> v;
};

struct SweepRecord {
    double eps = 0.0;
    double h = 0.0;
    MeshQuality quality;
    std::vector<double> sigma; // sigma_0 .. sigma_k_max
    double mu1 = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    std::vector<TubeTrace> traces;       // per k, 0..k_max
    std::vector<double> disk1_plateau;   // mean over interior disk-1 nodes, per k
    std::vector<double> disk2_plateau;
};

struct SweepReport {
    std::vector<SweepRecord> records; // eps strictly decreasing
    Spectrum1D limit;                 // dynamic-BC reference spectrum (n = 2)
    int k_max = 0;
    bool complete = true;
    std::string error;                // first failure when incomplete
};

struct SweepOptions {
    /// Mesh size per eps; default keeps the mesh fixed across the sweep.
    std::function<double(double)> h_of_eps;
    int n_y = 4;
    int trace_samples = 129;
    int limit_grid = 2048;
    /// Perimeters for the reference limit problem; 0 means the ideal disk
    /// perimeters 2 pi r_i.
    double P1 = 0.0, P2 = 0.0;
    int threads = 1;
    NumericSettings numerics;
};

/// Run the FEM pipeline for each eps (strictly decreasing), recording
/// Steklov and Neumann eigenvalues, realized area/perimeter, midline traces
/// and disk plateau means, against the 1D limit spectrum.
SweepReport sweep(const DumbbellSpec& spec_base, const std::vector<double>& eps_list,
                  int k_max, const SweepOptions& options = {});

/// Least squares on (log eps, log sigma). Throws NonPositiveValue for
/// non-positive data, InvalidArgument for fewer than 3 pairs.
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& sigma);

/// P1 interpolant of eigenfunction k along the midline; exact because the
/// midline is a grid line of the structured tube block.
TubeTrace trace_tube(const SteklovResult& result, const DumbbellMesh& mesh, int k,
                     int n_samples);

/// Relative L2(-L/2, L/2) distance between the (normalized, sign-aligned)
/// trace and limit eigenfunction k, trapezoid quadrature on the trace grid.
double compare_eigenfunctions(const TubeTrace& trace, const Spectrum1D& limit, int k);

std::string sweep_to_json(const SweepReport& report);
std::string sweep_to_csv(const SweepReport& report);
/// Plot data: eps, sigma_k/eps columns and the mu_k reference values.
std::string sweep_plot_data(const SweepReport& report);

} // namespace steklov
