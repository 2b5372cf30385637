#include "steklov/linalg.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace steklov {

// ---------------------------------------------------------------- SparseSym

SparseSym::SparseSym(int dimension) : dim_(dimension) {
    if (dimension < 0) throw InvalidArgument("SparseSym: negative dimension");
}

void SparseSym::add(int i, int j, double v) {
    if (finalized_) throw InvalidArgument("SparseSym: add after finalize");
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw InvalidArgument("SparseSym: index out of range");
    if (j > i) std::swap(i, j);
    triplets_.push_back({i, j, v});
}

void SparseSym::finalize() {
    if (dim_ < 1) throw InvalidArgument("SparseSym: dimension must be >= 1");
    std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    row_ptr_.assign(dim_ + 1, 0);
    col_.clear();
    val_.clear();
    std::size_t k = 0;
    for (int i = 0; i < dim_; ++i) {
        row_ptr_[i] = int(col_.size());
        while (k < triplets_.size() && triplets_[k].i == i) {
            int j = triplets_[k].j;
            double v = 0.0;
            while (k < triplets_.size() && triplets_[k].i == i && triplets_[k].j == j)
                v += triplets_[k++].v;
            if (v != 0.0) {
                col_.push_back(j);
                val_.push_back(v);
            }
        }
    }
    row_ptr_[dim_] = int(col_.size());
    triplets_.clear();
    triplets_.shrink_to_fit();
    finalized_ = true;
}

void SparseSym::apply(std::span<const double> x, std::span<double> y) const {
    if (!finalized_) throw InvalidArgument("SparseSym: apply before finalize");
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < dim_; ++i) {
        double yi = 0.0;
        const double xi = x[i];
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const int j = col_[k];
            const double v = val_[k];
            yi += v * x[j];
            if (j != i) y[j] += v * xi;
        }
        y[i] += yi;
    }
}

std::vector<double> SparseSym::apply(const std::vector<double>& x) const {
    std::vector<double> y(dim_);
    apply(std::span<const double>(x), std::span<double>(y));
    return y;
}

std::vector<double> SparseSym::diagonal() const {
    std::vector<double> d(dim_, 0.0);
    for_each([&](int i, int j, double v) {
        if (i == j) d[i] = v;
    });
    return d;
}

double SparseSym::max_abs() const {
    double m = 0.0;
    for (double v : val_) m = std::max(m, std::abs(v));
    return m;
}

double SparseSym::at(int i, int j) const {
    if (j > i) std::swap(i, j);
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (col_[k] == j) return val_[k];
    return 0.0;
}

// ---------------------------------------------------------------- DenseSym

double DenseSym::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------- Cholesky

Cholesky::Cholesky(const DenseSym& a, const NumericSettings& settings) : n_(a.dim()) {
    l_.assign(std::size_t(n_) * n_, 0.0);
    const double pivot_floor = settings.chol_pivot_rel * a.max_abs();
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            const double* li = &l_[std::size_t(i) * n_];
            const double* lj = &l_[std::size_t(j) * n_];
            for (int k = 0; k < j; ++k) s -= li[k] * lj[k];
            if (i == j) {
                if (s <= pivot_floor)
                    throw NotPositiveDefinite("Cholesky: pivot " + std::to_string(s) +
                                              " at row " + std::to_string(i));
                l_[std::size_t(i) * n_ + j] = std::sqrt(s);
            } else {
                l_[std::size_t(i) * n_ + j] = s / lj[j];
            }
        }
    }
}

std::vector<double> Cholesky::solve_lower(const std::vector<double>& b) const {
    std::vector<double> y(n_);
    for (int i = 0; i < n_; ++i) {
        double s = b[i];
        const double* li = &l_[std::size_t(i) * n_];
        for (int k = 0; k < i; ++k) s -= li[k] * y[k];
        y[i] = s / li[i];
    }
    return y;
}

std::vector<double> Cholesky::solve_lower_t(const std::vector<double>& b) const {
    std::vector<double> x(b);
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n_; ++k) s -= l_[std::size_t(k) * n_ + i] * x[k];
        x[i] = s / l_[std::size_t(i) * n_ + i];
    }
    return x;
}

std::vector<double> Cholesky::solve(const std::vector<double>& b) const {
    return solve_lower_t(solve_lower(b));
}

// ---------------------------------------------------------------- CG

std::vector<double> cg_solve(const SparseSym& a, const std::vector<double>& b,
                             double tol, const NumericSettings& settings) {
    const int n = a.dim();
    if (int(b.size()) != n) throw InvalidArgument("cg_solve: size mismatch");
    if (!(tol > 0.0)) throw InvalidArgument("cg_solve: tol must be positive");

    const double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    std::vector<double> x(n, 0.0);
    if (bnorm == 0.0) return x;

    std::vector<double> inv_diag = a.diagonal();
    for (double& d : inv_diag) d = (d > 0.0) ? 1.0 / d : 1.0;

    std::vector<double> r(b), z(n), p(n), ap(n);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

    const long max_iter = long(settings.cg_max_iter_factor) * n;
    for (long iter = 0; iter < max_iter; ++iter) {
        a.apply(std::span<const double>(p), std::span<double>(ap));
        const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
        if (pap <= 0.0)
            throw NotPositiveDefinite("cg_solve: non-SPD curvature encountered");
        const double alpha = rz / pap;
        double rnorm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rnorm2 += r[i] * r[i];
        }
        if (std::sqrt(rnorm2) <= tol * bnorm) return x;
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw NoConvergence("cg_solve: no convergence after " +
                        std::to_string(long(settings.cg_max_iter_factor) * n) + " iterations");
}

// ---------------------------------------------------------------- Jacobi

namespace {

void sort_spectrum(Spectrum& s) {
    const int n = int(s.eigenvalues.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return s.eigenvalues[a] < s.eigenvalues[b]; });
    Spectrum out;
    out.gram = s.gram;
    out.eigenvalues.reserve(n);
    out.vectors.reserve(n);
    for (int k : order) {
        out.eigenvalues.push_back(s.eigenvalues[k]);
        out.vectors.push_back(std::move(s.vectors[k]));
    }
    s = std::move(out);
}

} // namespace

Spectrum sym_eig(const DenseSym& a_in, const NumericSettings& settings) {
    const int n = a_in.dim();
    std::vector<double> a = a_in.data();          // working copy, row-major, kept symmetric
    std::vector<double> v(std::size_t(n) * n, 0.0); // accumulated rotations, rows = eigenvectors
    for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;

    const double stop = settings.jacobi_offdiag_rel * a_in.max_abs();
    auto A = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };

    int sweep = 0;
    for (; sweep < settings.jacobi_max_sweeps; ++sweep) {
        double off_max = 0.0, off_sum = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double m = std::abs(A(p, q));
                off_max = std::max(off_max, m);
                off_sum += m;
            }
        if (off_max <= stop) break;
        // Threshold schedule: early sweeps skip negligible rotations.
        const double thresh =
            sweep < 4 ? std::max(stop, 0.2 * off_sum / (double(n) * n)) : stop * 1e-2;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= thresh) continue;
                const double app = A(p, p), aqq = A(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Rows p and q of the two-sided rotation, using symmetry
                // (columns are refreshed by mirroring afterwards).
                double* rp = &a[std::size_t(p) * n];
                double* rq = &a[std::size_t(q) * n];
                for (int k = 0; k < n; ++k) {
                    const double akp = rp[k], akq = rq[k];
                    rp[k] = c * akp - s * akq;
                    rq[k] = s * akp + c * akq;
                }
                const double app_new = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                const double aqq_new = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                rp[p] = app_new;
                rp[q] = 0.0;
                rq[p] = 0.0;
                rq[q] = aqq_new;
                for (int k = 0; k < n; ++k) {
                    a[std::size_t(k) * n + p] = rp[k];
                    a[std::size_t(k) * n + q] = rq[k];
                }

                double* vp = &v[std::size_t(p) * n];
                double* vq = &v[std::size_t(q) * n];
                for (int k = 0; k < n; ++k) {
                    const double vkp = vp[k], vkq = vq[k];
                    vp[k] = c * vkp - s * vkq;
                    vq[k] = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep >= settings.jacobi_max_sweeps)
        throw NoConvergence("sym_eig: Jacobi did not converge in " +
                            std::to_string(settings.jacobi_max_sweeps) + " sweeps");

    Spectrum s;
    s.gram = Gram::Identity;
    s.eigenvalues.resize(n);
    s.vectors.resize(n);
    for (int k = 0; k < n; ++k) {
        s.eigenvalues[k] = A(k, k);
        s.vectors[k].assign(v.begin() + std::size_t(k) * n, v.begin() + std::size_t(k + 1) * n);
    }
    sort_spectrum(s);
    return s;
}

Spectrum gen_sym_eig(const DenseSym& a, const DenseSym& b, const NumericSettings& settings) {
    const int n = a.dim();
    if (b.dim() != n) throw InvalidArgument("gen_sym_eig: dimension mismatch");
    Cholesky chol(b, settings);

    // C = L^{-1} A L^{-T}: solve L X = A columnwise, then L C^T = X^T.
    std::vector<std::vector<double>> x_rows(n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> col(n);
        for (int i = 0; i < n; ++i) col[i] = a(i, j);
        std::vector<double> y = chol.solve_lower(col);
        for (int i = 0; i < n; ++i) {
            if (x_rows[i].empty()) x_rows[i].resize(n);
            x_rows[i][j] = y[i];
        }
    }
    DenseSym c(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> z = chol.solve_lower(x_rows[i]);
        for (int j = 0; j <= i; ++j) c.set(i, j, z[j]);
    }

    Spectrum s = sym_eig(c, settings);
    for (auto& vec : s.vectors) vec = chol.solve_lower_t(vec);
    s.gram = Gram::B;
    return s;
}

// ----------------------------------------------------- tridiagonal pencil

namespace {

// Number of eigenvalues of the pencil (K, M) strictly below x: negative
// pivots of the LDL^T factorization of K - x M (standard Sturm count).
int sturm_count(const std::vector<double>& kd, const std::vector<double>& ko,
                const std::vector<double>& md, const std::vector<double>& mo, double x) {
    const int n = int(kd.size());
    int count = 0;
    double q = kd[0] - x * md[0];
    const double tiny = 1e-300;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e = ko[i - 1] - x * mo[i - 1];
        q = (kd[i] - x * md[i]) - e * e / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

// Tridiagonal solve of (K - shift M) y = rhs with partial pivoting
// (bandwidth grows to 2 on the upper side; fine for inverse iteration).
std::vector<double> tri_shift_solve(const std::vector<double>& kd, const std::vector<double>& ko,
                                    const std::vector<double>& md, const std::vector<double>& mo,
                                    double shift, std::vector<double> rhs) {
    const int n = int(kd.size());
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0), f(n > 2 ? n - 2 : 0, 0.0), sub(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) d[i] = kd[i] - shift * md[i];
    for (int i = 0; i + 1 < n; ++i) { e[i] = ko[i] - shift * mo[i]; sub[i] = e[i]; }

    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(d[i])) {
            std::swap(d[i], sub[i]);
            std::swap(e[i], d[i + 1]);
            if (i + 2 < n) std::swap(f[i], e[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (d[i] == 0.0) d[i] = 1e-300;
        const double m = sub[i] / d[i];
        d[i + 1] -= m * e[i];
        if (i + 2 < n) e[i + 1] -= m * f[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
    std::vector<double> y(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        if (i + 1 < n) s -= e[i] * y[i + 1];
        if (i + 2 < n) s -= f[i] * y[i + 2];
        y[i] = s / d[i];
    }
    return y;
}

void m_apply(const std::vector<double>& md, const std::vector<double>& mo,
             const std::vector<double>& x, std::vector<double>& y) {
    const int n = int(md.size());
    for (int i = 0; i < n; ++i) {
        double s = md[i] * x[i];
        if (i > 0) s += mo[i - 1] * x[i - 1];
        if (i + 1 < n) s += mo[i] * x[i + 1];
        y[i] = s;
    }
}

double m_dot(const std::vector<double>& md, const std::vector<double>& mo,
             const std::vector<double>& x, const std::vector<double>& y) {
    const int n = int(md.size());
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double mx = md[i] * x[i];
        if (i > 0) mx += mo[i - 1] * x[i - 1];
        if (i + 1 < n) mx += mo[i] * x[i + 1];
        s += mx * y[i];
    }
    return s;
}

} // namespace

Spectrum tri_gen_eig(const std::vector<double>& k_diag, const std::vector<double>& k_off,
                     const std::vector<double>& m_diag, const std::vector<double>& m_off,
                     int count, const NumericSettings& settings) {
    const int n = int(k_diag.size());
    if (n < 1 || int(k_off.size()) != n - 1 || int(m_diag.size()) != n ||
        int(m_off.size()) != n - 1)
        throw InvalidArgument("tri_gen_eig: band size mismatch");
    if (count < 1 || count > n) throw InvalidArgument("tri_gen_eig: bad eigenpair count");

    // Gershgorin-style bound on the pencil spectrum via lambda <= max (row K)/(row M he)
    double kmax = 0.0, mmin = 1e300;
    for (int i = 0; i < n; ++i) {
        double rk = std::abs(k_diag[i]), rm = m_diag[i];
        if (i > 0) { rk += std::abs(k_off[i - 1]); rm -= std::abs(m_off[i - 1]); }
        if (i + 1 < n) { rk += std::abs(k_off[i]); rm -= std::abs(m_off[i]); }
        kmax = std::max(kmax, rk);
        mmin = std::min(mmin, rm);
    }
    if (mmin <= 0.0) mmin = 1e-12; // M strictly diagonally dominant for P1 mass; guard anyway
    double lo = -kmax / mmin - 1.0, hi = kmax / mmin + 1.0;
    while (sturm_count(k_diag, k_off, m_diag, m_off, hi) < count) hi *= 2.0;

    Spectrum s;
    s.gram = Gram::M;
    s.eigenvalues.reserve(count);
    s.vectors.reserve(count);

    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(k_diag, k_off, m_diag, m_off, mid) >= k + 1)
                b = mid;
            else
                a = mid;
            if (b - a <= 1e-15 * std::max(1.0, std::abs(b)) + 1e-300) break;
        }
        const double lambda = 0.5 * (a + b);

        // Inverse iteration at a slightly offset shift.
        const double offset = std::max(1e-12, 1e-10 * std::abs(lambda)) + (b - a);
        const double shift = lambda - offset;
        std::vector<double> x(n, 1.0);
        for (int i = 0; i < n; ++i) x[i] = 1.0 + 1e-3 * std::sin(7.0 * (i + 1));
        std::vector<double> mx(n);
        for (int iter = 0; iter < 4; ++iter) {
            // orthogonalize against previously found vectors in the M inner product
            for (const auto& prev : s.vectors) {
                const double proj = m_dot(m_diag, m_off, prev, x);
                for (int i = 0; i < n; ++i) x[i] -= proj * prev[i];
            }
            m_apply(m_diag, m_off, x, mx);
            x = tri_shift_solve(k_diag, k_off, m_diag, m_off, shift, mx);
            const double nrm = std::sqrt(std::max(m_dot(m_diag, m_off, x, x), 1e-300));
            for (double& xi : x) xi /= nrm;
        }
        for (const auto& prev : s.vectors) {
            const double proj = m_dot(m_diag, m_off, prev, x);
            for (int i = 0; i < n; ++i) x[i] -= proj * prev[i];
        }
        const double nrm = std::sqrt(std::max(m_dot(m_diag, m_off, x, x), 1e-300));
        for (double& xi : x) xi /= nrm;

        s.eigenvalues.push_back(lambda);
        s.vectors.push_back(std::move(x));
    }
    (void)settings;
    return s;
}

} // namespace steklov
