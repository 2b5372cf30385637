#include "steklov/fem.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace steklov {

AssembledSystem assemble(const TriMesh& mesh, const NumericSettings& settings) {
    (void)settings;
    const int n = mesh.n_nodes();
    if (n < 3) throw InvalidArgument("assemble: mesh too small");

    double scale = 0.0;
    for (const auto& p : mesh.nodes) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double area_floor = 1e-14 * scale * scale;

    AssembledSystem sys;
    sys.mesh = &mesh;
    sys.K = SparseSym(n);
    sys.B = SparseSym(n);
    sys.M = SparseSym(n);

    for (const auto& tri : mesh.triangles) {
        const Vec2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
        const double a2 = cross(p1 - p0, p2 - p0); // 2 * area
        const double area = 0.5 * a2;
        if (area < area_floor)
            throw DegenerateTriangle("triangle area " + std::to_string(area) + " below floor");
        // Gradient of the P1 basis: grad phi_i = b_i / (2 area); b_i from edge normals.
        const double bx[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
        const double by[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j) {
                const double kij = (bx[i] * bx[j] + by[i] * by[j]) / (4.0 * area);
                sys.K.add(tri[i], tri[j], kij);
                sys.M.add(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
            }
    }
    for (const auto& e : mesh.boundary_edges) {
        const double len = norm(mesh.nodes[e.b] - mesh.nodes[e.a]);
        sys.B.add(e.a, e.a, len / 3.0);
        sys.B.add(e.b, e.b, len / 3.0);
        sys.B.add(e.a, e.b, len / 6.0);
    }
    sys.K.finalize();
    sys.B.finalize();
    sys.M.finalize();
    sys.interior = mesh.interior_nodes;
    sys.boundary = mesh.boundary_nodes;
    return sys;
}

namespace {

// Sub-blocks of K for the interior/boundary splitting. K_II as SparseSym,
// the coupling K_IG as per-boundary-column sparse lists.
struct SchurBlocks {
    SparseSym k_ii;
    // for boundary column j (position in sys.boundary): pairs (interior pos, value)
    std::vector<std::vector<std::pair<int, double>>> k_ig;
    DenseSym k_gg;
    std::vector<int> pos_of_node; // node id -> position in its class
    std::vector<char> is_boundary;
};

SchurBlocks split_blocks(const AssembledSystem& sys) {
    const int n = sys.K.dim();
    SchurBlocks blk;
    blk.is_boundary.assign(n, 0);
    blk.pos_of_node.assign(n, -1);
    for (std::size_t p = 0; p < sys.boundary.size(); ++p) {
        blk.is_boundary[sys.boundary[p]] = 1;
        blk.pos_of_node[sys.boundary[p]] = int(p);
    }
    for (std::size_t p = 0; p < sys.interior.size(); ++p)
        blk.pos_of_node[sys.interior[p]] = int(p);

    blk.k_ii = SparseSym(std::max<std::size_t>(sys.interior.size(), 1));
    blk.k_ig.resize(sys.boundary.size());
    blk.k_gg = DenseSym(int(sys.boundary.size()));

    sys.K.for_each([&](int i, int j, double v) {
        const bool bi = blk.is_boundary[i], bj = blk.is_boundary[j];
        const int pi = blk.pos_of_node[i], pj = blk.pos_of_node[j];
        if (!bi && !bj) {
            blk.k_ii.add(pi, pj, v);
        } else if (bi && bj) {
            blk.k_gg.add(pi, pj, v);
        } else if (bi && !bj) {
            blk.k_ig[pi].push_back({pj, v});
        } else {
            blk.k_ig[pj].push_back({pi, v});
        }
    });
    if (!sys.interior.empty()) blk.k_ii.finalize();
    return blk;
}

} // namespace

DenseSym dtn_schur(const AssembledSystem& sys, const NumericSettings& settings) {
    const SchurBlocks blk = split_blocks(sys);
    const int nb = int(sys.boundary.size());
    const int ni = int(sys.interior.size());

    DenseSym s(nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j <= i; ++j) s.set(i, j, blk.k_gg(i, j));
    if (ni == 0) return s; // single-layer mesh: S = K on the boundary

    // Column solves K_II x = K_IG e_j; each CG call is independent.
    std::vector<std::vector<double>> correction(nb);
    for (int j = 0; j < nb; ++j) {
        std::vector<double> rhs(ni, 0.0);
        for (const auto& [pi, v] : blk.k_ig[j]) rhs[pi] += v;
        const std::vector<double> x = cg_solve(blk.k_ii, rhs, settings.schur_cg_tol, settings);
        correction[j].assign(nb, 0.0);
        for (int i = 0; i < nb; ++i) {
            double dot = 0.0;
            for (const auto& [pi, v] : blk.k_ig[i]) dot += v * x[pi];
            correction[j][i] = dot;
        }
    }
    // Symmetrize the CG noise so the DenseSym invariant holds exactly.
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j <= i; ++j)
            s.set(i, j, s(i, j) - 0.5 * (correction[j][i] + correction[i][j]));
    return s;
}

SteklovResult solve_steklov(const AssembledSystem& sys, int k_max,
                            const NumericSettings& settings) {
    const int nb = int(sys.boundary.size());
    if (k_max < 0 || k_max >= nb)
        throw InvalidArgument("solve_steklov: k_max must be < number of boundary DOFs");

    const DenseSym s = dtn_schur(sys, settings);
    DenseSym b_gg(nb);
    {
        std::vector<int> pos(sys.K.dim(), -1);
        for (int p = 0; p < nb; ++p) pos[sys.boundary[p]] = p;
        sys.B.for_each([&](int i, int j, double v) {
            if (pos[i] >= 0 && pos[j] >= 0) b_gg.add(pos[i], pos[j], v);
        });
    }

    Spectrum full = gen_sym_eig(s, b_gg, settings);

    SteklovResult res;
    res.mesh = sys.mesh;
    res.boundary_dofs = sys.boundary;
    res.boundary.gram = Gram::B;
    const SchurBlocks blk = split_blocks(sys);
    const int ni = int(sys.interior.size());
    for (int k = 0; k <= k_max; ++k) {
        res.boundary.eigenvalues.push_back(full.eigenvalues[k]);
        res.boundary.vectors.push_back(full.vectors[k]);
        // Harmonic extension: K_II u_I = -K_IG u_G.
        std::vector<double> field(sys.K.dim(), 0.0);
        for (int p = 0; p < nb; ++p) field[sys.boundary[p]] = full.vectors[k][p];
        if (ni > 0) {
            std::vector<double> rhs(ni, 0.0);
            for (int j = 0; j < nb; ++j)
                for (const auto& [pi, v] : blk.k_ig[j]) rhs[pi] -= v * full.vectors[k][j];
            const std::vector<double> u_i = cg_solve(blk.k_ii, rhs, settings.cg_tol, settings);
            for (int p = 0; p < ni; ++p) field[sys.interior[p]] = u_i[p];
        }
        res.fields.push_back(std::move(field));
    }
    return res;
}

SteklovResult solve_steklov(const TriMesh& mesh, int k_max, const NumericSettings& settings) {
    const AssembledSystem sys = assemble(mesh, settings);
    SteklovResult res = solve_steklov(sys, k_max, settings);
    res.mesh = &mesh;
    return res;
}

Spectrum solve_neumann(const AssembledSystem& sys, int k_max, const NumericSettings& settings) {
    const int n = sys.K.dim();
    if (k_max < 1 || k_max >= n)
        throw InvalidArgument("solve_neumann: require 1 <= k_max < n_nodes");

    DenseSym kd(n), md(n);
    sys.K.for_each([&](int i, int j, double v) { kd.add(i, j, v); });
    sys.M.for_each([&](int i, int j, double v) { md.add(i, j, v); });
    Spectrum full = gen_sym_eig(kd, md, settings);

    // The constant mode sits at (numerical) zero; report from mu_1 up.
    const double zero_tol = 1e-8 * std::max(1.0, std::abs(full.eigenvalues.back()));
    if (std::abs(full.eigenvalues[0]) > zero_tol)
        throw NoConvergence("solve_neumann: constant mode not resolved near zero");
    Spectrum out;
    out.gram = Gram::M;
    for (int k = 1; k <= k_max; ++k) {
        out.eigenvalues.push_back(full.eigenvalues[k]);
        out.vectors.push_back(std::move(full.vectors[k]));
    }
    return out;
}

Spectrum solve_neumann(const TriMesh& mesh, int k_max, const NumericSettings& settings) {
    const AssembledSystem sys = assemble(mesh, settings);
    return solve_neumann(sys, k_max, settings);
}

bool eval_p1(const TriMesh& mesh, const std::vector<double>& values, Vec2 p, double& out) {
    for (const auto& tri : mesh.triangles) {
        const Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
        const double det = cross(b - a, c - a);
        const double l1 = cross(p - a, c - a) / det;
        const double l2 = cross(b - a, p - a) / det;
        const double l0 = 1.0 - l1 - l2;
        const double eps = 1e-12;
        if (l0 >= -eps && l1 >= -eps && l2 >= -eps) {
            out = l0 * values[tri[0]] + l1 * values[tri[1]] + l2 * values[tri[2]];
            return true;
        }
    }
    return false;
}

} // namespace steklov
