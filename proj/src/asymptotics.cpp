#include "steklov/asymptotics.hpp"

#include "steklov/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace steklov {

namespace {

double lerp01(double a, double b, double t) { return (1.0 - t) * a + t * b; }

double trapezoid_norm2(const std::vector<double>& x, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (v[i] * v[i] + v[i - 1] * v[i - 1]);
    return s;
}

double interp_linear(const std::vector<double>& grid, const std::vector<double>& values, double x) {
    if (x <= grid.front()) return values.front();
    if (x >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = std::size_t(it - grid.begin());
    const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return lerp01(values[i - 1], values[i], t);
}

SweepRecord run_one(const DumbbellSpec& spec_base, double eps, int k_max,
                    const SweepOptions& opt) {
    DumbbellSpec spec = spec_base;
    spec.eps = eps;
    const double h = opt.h_of_eps ? opt.h_of_eps(eps) : std::min(0.1, spec.L / 60.0);

    const DumbbellGeometry geom = make_dumbbell(spec);
    const DumbbellMesh dm = mesh_dumbbell(geom, h, opt.n_y);
    const AssembledSystem sys = assemble(dm.tri, opt.numerics);

    SweepRecord rec;
    rec.eps = eps;
    rec.h = h;
    rec.quality = mesh_quality(dm.tri);
    const SteklovResult steklov = solve_steklov(sys, k_max, opt.numerics);
    rec.sigma = steklov.boundary.eigenvalues;
    rec.mu1 = solve_neumann(sys, 1, opt.numerics).eigenvalues.front();
    rec.area = mesh_area(dm.tri);
    double per = 0.0;
    for (const auto& e : dm.tri.boundary_edges) per += norm(dm.tri.nodes[e.b] - dm.tri.nodes[e.a]);
    rec.perimeter = per;

    for (int k = 0; k <= k_max; ++k) {
        rec.traces.push_back(trace_tube(steklov, dm, k, opt.trace_samples));
        double mean1 = 0.0, mean2 = 0.0;
        for (int i : dm.disk1_interior) mean1 += steklov.fields[k][i];
        for (int i : dm.disk2_interior) mean2 += steklov.fields[k][i];
        rec.disk1_plateau.push_back(mean1 / double(dm.disk1_interior.size()));
        rec.disk2_plateau.push_back(mean2 / double(dm.disk2_interior.size()));
    }
    return rec;
}

} // namespace

SweepReport sweep(const DumbbellSpec& spec_base, const std::vector<double>& eps_list,
                  int k_max, const SweepOptions& options) {
    if (eps_list.empty()) throw InvalidArgument("sweep: empty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw InvalidArgument("sweep: eps list must be strictly decreasing");
    for (double eps : eps_list) {
        DumbbellSpec s = spec_base;
        s.eps = eps;
        s.validate();
    }
    if (k_max < 0) throw InvalidArgument("sweep: k_max must be >= 0");

    SweepReport report;
    report.k_max = k_max;
    {
        const double p1 = options.P1 > 0.0 ? options.P1 : 2.0 * M_PI * spec_base.r1;
        const double p2 = options.P2 > 0.0 ? options.P2 : 2.0 * M_PI * spec_base.r2;
        const Limit1DProblem limit_problem =
            Limit1DProblem::dynamic_2d(spec_base.profile, spec_base.L, p1, p2);
        report.limit = solve_dynamic_bc(limit_problem, options.limit_grid,
                                        std::max(k_max, 1), options.numerics);
    }

    const int n = int(eps_list.size());
    std::vector<std::string> errors(n);
    std::vector<SweepRecord> records(n);
    std::vector<char> ok(n, 0);

    auto work = [&](int i) {
        try {
            records[i] = run_one(spec_base, eps_list[i], k_max, options);
            ok[i] = 1;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };

    if (options.threads > 1) {
        std::vector<std::future<void>> futures;
        for (int i = 0; i < n; ++i)
            futures.push_back(std::async(std::launch::async, work, i));
        for (auto& f : futures) f.get();
    } else {
        for (int i = 0; i < n; ++i) {
            work(i);
            if (!ok[i]) break; // abort the remaining sweep, keep partial results
        }
    }

    for (int i = 0; i < n; ++i) {
        if (!ok[i]) {
            report.complete = false;
            report.error = "eps=" + std::to_string(eps_list[i]) + ": " +
                           (errors[i].empty() ? "skipped after earlier failure" : errors[i]);
            break;
        }
        report.records.push_back(std::move(records[i]));
    }
    return report;
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& sigma) {
    if (eps.size() != sigma.size()) throw InvalidArgument("fit_rate: length mismatch");
    if (eps.size() < 3) throw InvalidArgument("fit_rate: needs >= 3 points");
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (!(eps[i] > 0.0) || !(sigma[i] > 0.0))
            throw NonPositiveValue("fit_rate: data must be positive");

    const std::size_t n = eps.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(eps[i]), y = std::log(sigma[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    RateFit fit;
    fit.gamma = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - fit.gamma * sx) / n;
    fit.C = std::exp(intercept);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::log(sigma[i]) - (intercept + fit.gamma * std::log(eps[i]));
        rss += d * d;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

TubeTrace trace_tube(const SteklovResult& result, const DumbbellMesh& mesh, int k,
                     int n_samples) {
    if (k < 0 || k >= int(result.fields.size()))
        throw InvalidArgument("trace_tube: k out of range");
    if (n_samples < 2) throw InvalidArgument("trace_tube: n_samples must be >= 2");
    const double L = mesh.geom.spec.L;
    const std::vector<double>& field = result.fields[k];

    // Midline node abscissas (the row y = 0 of the tube block).
    std::vector<double> mx(mesh.midline.size());
    for (std::size_t i = 0; i < mesh.midline.size(); ++i)
        mx[i] = mesh.tri.nodes[mesh.midline[i]].x;

    TubeTrace trace;
    trace.x.resize(n_samples);
    trace.v.resize(n_samples);
    for (int s = 0; s < n_samples; ++s) {
        const double x = lerp01(-L / 2.0, L / 2.0, double(s) / (n_samples - 1));
        if (x < mx.front() - 1e-12 || x > mx.back() + 1e-12)
            throw OutsideTube("trace sample x=" + std::to_string(x) + " misses the tube");
        trace.x[s] = x;
        std::vector<double> mv(mesh.midline.size());
        for (std::size_t i = 0; i < mesh.midline.size(); ++i) mv[i] = field[mesh.midline[i]];
        trace.v[s] = interp_linear(mx, mv, x);
    }
    return trace;
}

double compare_eigenfunctions(const TubeTrace& trace, const Spectrum1D& limit, int k) {
    if (k < 0 || k >= int(limit.samples.size()))
        throw InvalidArgument("compare_eigenfunctions: k out of range");
    const std::size_t n = trace.x.size();
    std::vector<double> ref(n);
    for (std::size_t i = 0; i < n; ++i)
        ref[i] = interp_linear(limit.grid, limit.samples[k], trace.x[i]);

    const double nt = std::sqrt(trapezoid_norm2(trace.x, trace.v));
    const double nr = std::sqrt(trapezoid_norm2(trace.x, ref));
    if (nt < 1e-12 || nr < 1e-12)
        throw ZeroFunction("compare_eigenfunctions: near-zero function");

    std::vector<double> a(trace.v), b(ref);
    for (double& v : a) v /= nt;
    for (double& v : b) v /= nr;
    double inner = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        inner += 0.5 * (trace.x[i] - trace.x[i - 1]) * (a[i] * b[i] + a[i - 1] * b[i - 1]);
    if (inner < 0.0)
        for (double& v : a) v = -v;
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    return std::sqrt(trapezoid_norm2(trace.x, diff)); // ||b|| = 1 after normalization
}

// ------------------------------------------------------------------ export

namespace {

nlohmann::json trace_json(const TubeTrace& t) {
    return {{"x", t.x}, {"v", t.v}};
}

} // namespace

std::string sweep_to_json(const SweepReport& report) {
    nlohmann::json j;
    j["k_max"] = report.k_max;
    j["complete"] = report.complete;
    if (!report.complete) j["error"] = report.error;
    j["limit"] = {{"eigenvalues", report.limit.eigenvalues}, {"grid", report.limit.grid}};
    j["records"] = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json jr;
        jr["eps"] = r.eps;
        jr["h"] = r.h;
        jr["n_nodes"] = r.quality.n_nodes;
        jr["n_tris"] = r.quality.n_tris;
        jr["min_angle"] = r.quality.min_angle;
        jr["max_aspect"] = r.quality.max_aspect;
        jr["sigma"] = r.sigma;
        jr["mu1"] = r.mu1;
        jr["area"] = r.area;
        jr["perimeter"] = r.perimeter;
        jr["disk1_plateau"] = r.disk1_plateau;
        jr["disk2_plateau"] = r.disk2_plateau;
        jr["traces"] = nlohmann::json::array();
        for (const auto& t : r.traces) jr["traces"].push_back(trace_json(t));
        j["records"].push_back(std::move(jr));
    }
    // Successive-ratio diagnostics alongside the global fit.
    if (report.records.size() >= 2) {
        nlohmann::json ratios = nlohmann::json::array();
        for (std::size_t i = 1; i < report.records.size(); ++i) {
            nlohmann::json row;
            row["eps_pair"] = {report.records[i - 1].eps, report.records[i].eps};
            nlohmann::json g = nlohmann::json::array();
            for (int k = 1; k <= report.k_max; ++k) {
                const double num = std::log(report.records[i].sigma[k] /
                                            report.records[i - 1].sigma[k]);
                const double den = std::log(report.records[i].eps / report.records[i - 1].eps);
                g.push_back(num / den);
            }
            row["gamma"] = g;
            ratios.push_back(row);
        }
        j["successive_gamma"] = ratios;
    }
    if (report.records.size() >= 3) {
        nlohmann::json fits = nlohmann::json::array();
        std::vector<double> eps;
        for (const auto& r : report.records) eps.push_back(r.eps);
        for (int k = 1; k <= report.k_max; ++k) {
            std::vector<double> sig;
            for (const auto& r : report.records) sig.push_back(r.sigma[k]);
            const RateFit fit = fit_rate(eps, sig);
            fits.push_back({{"k", k}, {"gamma", fit.gamma}, {"C", fit.C},
                            {"residual", fit.residual}});
        }
        j["fits"] = fits;
    }
    return j.dump(2);
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string sweep_to_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "eps";
    for (int k = 0; k <= report.k_max; ++k) out << ",sigma" << k;
    out << ",mu1,area,perimeter\n";
    for (const auto& r : report.records) {
        out << fmt17(r.eps);
        for (double s : r.sigma) out << "," << fmt17(s);
        out << "," << fmt17(r.mu1) << "," << fmt17(r.area) << "," << fmt17(r.perimeter) << "\n";
    }
    return out.str();
}

std::string sweep_plot_data(const SweepReport& report) {
    std::ostringstream out;
    out << "eps";
    for (int k = 1; k <= report.k_max; ++k) out << ",sigma" << k << "_over_eps";
    for (int k = 1; k <= report.k_max; ++k) out << ",mu" << k << "_ref";
    out << "\n";
    for (const auto& r : report.records) {
        out << fmt17(r.eps);
        for (int k = 1; k <= report.k_max; ++k) out << "," << fmt17(r.sigma[k] / r.eps);
        for (int k = 1; k <= report.k_max; ++k)
            out << "," << fmt17(report.limit.eigenvalues[k]);
        out << "\n";
    }
    return out.str();
}

} // namespace steklov
