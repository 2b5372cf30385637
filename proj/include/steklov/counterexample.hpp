#pragma once

#include "steklov/linalg.hpp"
#include "steklov/meshgen.hpp"

#include <string>
#include <vector>

namespace steklov {

/// One FEM probe of the inequality on the two-unit-disk dumbbell.
/// The verdict is always recomputed from the stored numbers.
struct InequalityRecord {
    double eps = 0.0;
    double h = 0.0;
    double mu1 = 0.0;
    double sigma1 = 0.0;
    double area = 0.0;      // mesh-measured |Omega_eps|
    double perimeter = 0.0; // mesh-measured P(Omega_eps)
    int n_nodes = 0;

    double lhs() const { return mu1 * area; }
    double rhs() const { return sigma1 * perimeter; }
    bool verdict() const { return lhs() < rhs(); } // reversed inequality holds
};

struct CounterexampleReport {
    double L = 0.0;
    double threshold = 0.0;       // (3/4)(sqrt(2)+1) pi^{3/2}
    bool above_threshold = false;
    double alpha1 = 0.0;          // w_1^2 from the transcendental equation
    double lower_alpha = 0.0;     // 9 pi^2 / (16 L^2)
    double bound_mu = 0.0;        // 4 / ((2 sqrt(pi) + L) L)
    int f_samples = 0;
    int f_positive_count = 0;     // samples of f found positive on (0, 3pi/4L)
    bool f_all_positive = false;
    bool alpha_ge_lower = false;  // alpha1 >= 9 pi^2/(16 L^2)
    bool lower_gt_bound = false;  // 9 pi^2/(16 L^2) > bound_mu
    bool chain_holds = false;     // both, asserted only above the threshold
    std::vector<InequalityRecord> fem;

    int first_true_record() const; // index of first verdict-true probe, -1 if none
};

/// Limit-level check for the two-unit-disk dumbbell (P1 = P2 = 2 sqrt(pi)):
/// root of the transcendental equation, positivity of f on (0, 3pi/(4L))
/// sampled at `f_samples` points, and the bound chain when L exceeds the
/// threshold. Below the threshold the report records which step failed
/// without claiming the inequality either way.
CounterexampleReport check_limit_inequality(double L, int f_samples = 1000);

/// One FEM probe: unit-area disks, rho = 1, given eps and mesh size h;
/// Neumann and Steklov run on the identical mesh and assembled system.
InequalityRecord check_fem_inequality(double L, double eps, double h,
                                      const NumericSettings& settings = {});

/// Limit-level report plus FEM probes over the given eps list.
CounterexampleReport run_counterexample(double L, const std::vector<double>& eps_list,
                                        double h, const NumericSettings& settings = {});

std::string counterexample_to_json(const CounterexampleReport& report);
CounterexampleReport counterexample_from_json(const std::string& text);
std::string counterexample_summary(const CounterexampleReport& report);

} // namespace steklov
