#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace steklov {

/// Tolerances and iteration limits shared by the numerical kernels.
/// Defaults are the values used throughout; callers may tighten them.
struct NumericSettings {
    double cg_tol = 1e-10;           // relative residual for CG solves
    double schur_cg_tol = 1e-12;     // tighter tolerance for the DtN column solves
    int cg_max_iter_factor = 10;     // max iterations = factor * dimension
    double chol_pivot_rel = 1e-14;   // pivot threshold relative to max |A|
    double jacobi_offdiag_rel = 1e-12; // Jacobi sweep stop, relative to max |A|
    int jacobi_max_sweeps = 100;
};

/// Symmetric sparse matrix; only the lower triangle is stored.
/// Build with add(), then finalize() before any product/solve.
class SparseSym {
public:
    explicit SparseSym(int dimension = 0);

    int dim() const { return dim_; }

    /// Accumulate a[i][j] += v (order of i,j irrelevant; stored lower).
    void add(int i, int j, double v);

    /// Compress triplets to CSR, merging duplicates and dropping zeros.
    void finalize();
    bool finalized() const { return finalized_; }

    /// y = A x using the symmetric expansion of the stored triangle.
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    /// Diagonal entries (for Jacobi preconditioning).
    std::vector<double> diagonal() const;

    double max_abs() const;

    /// Entry access for tests and sub-block extraction (O(row nnz)).
    double at(int i, int j) const;

    /// Iterate stored (lower-triangle) entries: f(i, j, value), j <= i.
    template <class F>
    void for_each(F&& f) const {
        for (int i = 0; i < dim_; ++i)
            for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                f(i, col_[k], val_[k]);
    }

private:
    int dim_ = 0;
    bool finalized_ = false;
    struct Triplet { int i, j; double v; };
    std::vector<Triplet> triplets_;
    std::vector<int> row_ptr_, col_;
    std::vector<double> val_;
};

/// Dense symmetric matrix, full row-major storage, writes mirrored so
/// a[i][j] == a[j][i] holds exactly.
class DenseSym {
public:
    explicit DenseSym(int dimension = 0) : n_(dimension), a_(std::size_t(dimension) * dimension, 0.0) {}

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
    void set(int i, int j, double v) {
        a_[std::size_t(i) * n_ + j] = v;
        a_[std::size_t(j) * n_ + i] = v;
    }
    void add(int i, int j, double v) {
        a_[std::size_t(i) * n_ + j] += v;
        if (i != j) a_[std::size_t(j) * n_ + i] += v;
    }
    double max_abs() const;
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Names the inner product a Spectrum's eigenvectors are orthonormal against.
enum class Gram { Identity, B, M };

/// Eigenvalues in ascending order with matching eigenvectors.
/// vectors[k] is the k-th eigenvector; all are Gram-orthonormal.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> vectors;
    Gram gram = Gram::Identity;
};

/// Dense Cholesky factor A = L L^T with solve helpers.
class Cholesky {
public:
    /// Throws NotPositiveDefinite when a pivot falls below
    /// settings.chol_pivot_rel * max|A|.
    Cholesky(const DenseSym& a, const NumericSettings& settings = {});

    int dim() const { return n_; }
    double lower(int i, int j) const { return j <= i ? l_[std::size_t(i) * n_ + j] : 0.0; }

    std::vector<double> solve(const std::vector<double>& b) const;   // A x = b
    std::vector<double> solve_lower(const std::vector<double>& b) const;    // L y = b
    std::vector<double> solve_lower_t(const std::vector<double>& b) const;  // L^T x = y

private:
    int n_;
    std::vector<double> l_; // row-major lower triangle (diag included)
};

/// Preconditioned conjugate gradient for SPD systems, Jacobi (diagonal)
/// preconditioner. Throws NoConvergence after cg_max_iter_factor * dim
/// iterations. Reentrant: no shared mutable state.
std::vector<double> cg_solve(const SparseSym& a, const std::vector<double>& b,
                             double tol, const NumericSettings& settings = {});

/// Cyclic Jacobi rotations on a dense symmetric matrix; stops when the
/// largest off-diagonal drops below jacobi_offdiag_rel * max|A|.
Spectrum sym_eig(const DenseSym& a, const NumericSettings& settings = {});

/// Generalized problem A v = lambda B v with B SPD, reduced through
/// B = L L^T to a standard problem; returned vectors are B-orthonormal.
Spectrum gen_sym_eig(const DenseSym& a, const DenseSym& b,
                     const NumericSettings& settings = {});

/// Symmetric tridiagonal pencil K v = lambda M v (M SPD), both matrices
/// given by diagonal/off-diagonal bands. Computes the lowest `count`
/// eigenpairs by Sturm-sequence bisection plus inverse iteration; suits the
/// large 1D discretizations where a dense solve would be wasteful.
Spectrum tri_gen_eig(const std::vector<double>& k_diag, const std::vector<double>& k_off,
                     const std::vector<double>& m_diag, const std::vector<double>& m_off,
                     int count, const NumericSettings& settings = {});

} // namespace steklov
