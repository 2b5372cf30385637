#pragma once

#include "steklov/linalg.hpp"
#include "steklov/meshgen.hpp"

#include <vector>

namespace steklov {

/// P1 matrices on a TriMesh, with the interior-first / boundary-last DOF
/// permutation recorded. K, B, M are in mesh node ordering; K 1 = 0 on a
/// connected mesh, 1^T B 1 = boundary length, 1^T M 1 = mesh area.
struct AssembledSystem {
    SparseSym K; // stiffness, int grad u . grad v
    SparseSym B; // boundary mass, int_dOmega u v
    SparseSym M; // domain mass, int_Omega u v
    std::vector<int> interior; // mesh node ids, interior DOFs
    std::vector<int> boundary; // mesh node ids, boundary DOFs
    const TriMesh* mesh = nullptr;
};

AssembledSystem assemble(const TriMesh& mesh, const NumericSettings& settings = {});

/// Discrete Dirichlet-to-Neumann operator on the boundary DOFs:
/// S = K_GG - K_GI K_II^{-1} K_IG, one Jacobi-preconditioned CG solve per
/// boundary column. S is symmetric PSD with S 1 = 0.
DenseSym dtn_schur(const AssembledSystem& sys, const NumericSettings& settings = {});

/// Steklov eigenpairs. Boundary spectrum of (S, B_GG); eigenvectors are
/// B-orthonormal (unit L^2(dOmega) norm) and harmonically extended to the
/// interior, full-field values in mesh node ordering.
struct SteklovResult {
    Spectrum boundary;                    // sigma_0 <= sigma_1 <= ...
    std::vector<std::vector<double>> fields; // fields[k][node]
    const TriMesh* mesh = nullptr;
    std::vector<int> boundary_dofs;       // mesh node ids of the boundary DOFs
};

SteklovResult solve_steklov(const TriMesh& mesh, int k_max,
                            const NumericSettings& settings = {});
SteklovResult solve_steklov(const AssembledSystem& sys, int k_max,
                            const NumericSettings& settings = {});

/// Neumann eigenvalues of (K, M) with the constant mode removed: returns
/// mu_1 <= mu_2 <= ... <= mu_k_max with M-orthonormal eigenvectors.
Spectrum solve_neumann(const TriMesh& mesh, int k_max,
                       const NumericSettings& settings = {});
Spectrum solve_neumann(const AssembledSystem& sys, int k_max,
                       const NumericSettings& settings = {});

/// P1 interpolant of nodal values at an arbitrary point (linear scan over
/// triangles). Returns false when the point lies outside the mesh.
bool eval_p1(const TriMesh& mesh, const std::vector<double>& values, Vec2 p, double& out);

} // namespace steklov
