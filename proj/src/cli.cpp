#include "steklov/cli.hpp"

#include "steklov/asymptotics.hpp"
#include "steklov/counterexample.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/limit1d.hpp"
#include "steklov/meshgen.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace steklov::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double get_num(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing required key '" + key + "'");
    if (!j.at(key).is_number()) throw ConfigError("key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

TubeProfile parse_profile(const json& config, double L) {
    if (!config.contains("rho")) return TubeProfile::constant(1.0);
    const json& r = config.at("rho");
    reject_unknown(r, {"kind", "c", "c0", "c1", "samples"}, "rho");
    const std::string kind = r.value("kind", "constant");
    if (kind == "constant") return TubeProfile::constant(get_num(r, "c", 1.0));
    if (kind == "cosine_bump")
        return TubeProfile::cosine_bump(get_num(r, "c0"), get_num(r, "c1"), L);
    if (kind == "table") {
        std::vector<std::pair<double, double>> samples;
        for (const auto& s : r.at("samples")) samples.push_back({s.at(0), s.at(1)});
        return TubeProfile::table(std::move(samples));
    }
    throw ConfigError("rho.kind must be constant, cosine_bump or table");
}

NumericSettings parse_numerics(const json& config) {
    NumericSettings s;
    if (!config.contains("numerics")) return s;
    const json& n = config.at("numerics");
    reject_unknown(n,
                   {"cg_tol", "schur_cg_tol", "cg_max_iter_factor", "chol_pivot_rel", "jacobi_offdiag_rel",
                    "jacobi_max_sweeps"},
                   "numerics");
    s.cg_tol = get_num(n, "cg_tol", s.cg_tol);
    s.schur_cg_tol = get_num(n, "schur_cg_tol", s.schur_cg_tol);
    s.cg_max_iter_factor = get_int(n, "cg_max_iter_factor", s.cg_max_iter_factor);
    s.chol_pivot_rel = get_num(n, "chol_pivot_rel", s.chol_pivot_rel);
    s.jacobi_offdiag_rel = get_num(n, "jacobi_offdiag_rel", s.jacobi_offdiag_rel);
    s.jacobi_max_sweeps = get_int(n, "jacobi_max_sweeps", s.jacobi_max_sweeps);
    return s;
}

AngularConvention parse_convention(const json& config) {
    const std::string c = config.value("convention", "paper");
    if (c == "paper") return AngularConvention::Paper;
    if (c == "sphere") return AngularConvention::Sphere;
    throw ConfigError("convention must be 'paper' or 'sphere'");
}

struct Context {
    fs::path out_dir;
    json resolved; // fully-resolved config echoed to the manifest
    std::uint64_t seed = 0;
    int threads = 1;

    void write_text(const std::string& name, const std::string& text) const {
        const fs::path p = out_dir / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot open " + p.string() + " for writing");
        f << text;
    }
    void finish(const std::string& command) const {
        json manifest;
        manifest["command"] = command;
        manifest["config"] = resolved;
        manifest["seed"] = seed;
        manifest["threads"] = threads;
        const fs::path p = out_dir / "manifest.json";
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot open " + p.string() + " for writing");
        f << manifest.dump(2) << "\n";
    }
};

std::string spectrum_csv(const std::vector<double>& values, int first_index = 0) {
    std::ostringstream out;
    out << "k,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (first_index + int(i)) << "," << fmt17(values[i]) << "\n";
    return out.str();
}

// ----------------------------------------------------------------- limit

void cmd_limit(Context& ctx) {
    const json& config = ctx.resolved;
    reject_unknown(config,
                   {"problem", "rho", "L", "P1", "P2", "N", "k", "n", "eps", "convention",
                    "numerics", "out", "seed", "threads"},
                   "limit config");
    const std::string problem = config.value("problem", "");
    const double L = get_num(config, "L");
    const NumericSettings numerics = parse_numerics(config);
    const TubeProfile rho = parse_profile(config, L);
    const int N = get_int(config, "N", 1024);
    const int k = get_int(config, "k", 5);

    if (problem == "roots") {
        const double P1 = get_num(config, "P1", 2.0 * std::sqrt(M_PI));
        const double P2 = get_num(config, "P2", 2.0 * std::sqrt(M_PI));
        const std::vector<double> w = transcendental_roots(L, P1, P2, k);
        std::ostringstream csv;
        csv << "k,w\n";
        for (std::size_t i = 0; i < w.size(); ++i) csv << (i + 1) << "," << fmt17(w[i]) << "\n";
        ctx.write_text("roots.csv", csv.str());
        json j;
        j["roots"] = w;
        ctx.write_text("roots.json", j.dump(2) + "\n");
        return;
    }

    Spectrum1D spec;
    json extra;
    if (problem == "ep1") {
        const auto p = Limit1DProblem::dynamic_2d(rho, L, get_num(config, "P1"),
                                                  get_num(config, "P2"));
        spec = solve_dynamic_bc(p, N, k, numerics);
    } else if (problem == "ep4") {
        const auto p = Limit1DProblem::dynamic_weighted(
            rho, L, get_int(config, "n", 3), get_num(config, "P1"), get_num(config, "P2"),
            get_num(config, "eps"), parse_convention(config));
        spec = solve_dynamic_bc(p, N, k, numerics);
    } else if (problem == "ep3") {
        const auto p =
            Limit1DProblem::dirichlet(rho, L, get_int(config, "n", 3),
                                      get_num(config, "P1", 1.0), get_num(config, "P2", 1.0),
                                      parse_convention(config));
        spec = solve_dirichlet_weighted(p, N, std::max(k, 1), numerics);
    } else if (problem == "ep2") {
        const auto p =
            Limit1DProblem::dirichlet(rho, L, get_int(config, "n", 3), get_num(config, "P1"),
                                      get_num(config, "P2"), parse_convention(config));
        const double closed = sigma1_closed_form(p);
        const double oracle = sigma1_determinant_oracle(p, N);
        ctx.write_text("spectrum.csv", spectrum_csv({closed}, 1));
        extra["sigma1_closed_form"] = closed;
        extra["sigma1_determinant_oracle"] = oracle;
        ctx.write_text("spectrum.json", extra.dump(2) + "\n");
        return;
    } else {
        throw ConfigError("problem must be one of ep1, ep3, ep2, ep4, roots");
    }

    ctx.write_text("spectrum.csv", spectrum_csv(spec.eigenvalues));
    json j;
    j["eigenvalues"] = spec.eigenvalues;
    j["grid"] = spec.grid;
    j["samples"] = spec.samples;
    ctx.write_text("spectrum.json", j.dump(2) + "\n");
}

// ------------------------------------------------------------------- fem

void cmd_fem(Context& ctx) {
    const json& config = ctx.resolved;
    reject_unknown(config,
                   {"fixture", "radius", "h", "k", "L", "eps", "r1", "r2", "n_arc", "n_y",
                    "rho", "neumann", "trace_samples", "numerics", "out", "seed", "threads"},
                   "fem config");
    const std::string fixture = config.value("fixture", "dumbbell");
    const double h = get_num(config, "h", 0.1);
    const int k = get_int(config, "k", 4);
    const NumericSettings numerics = parse_numerics(config);
    const bool neumann = config.value("neumann", false);

    TriMesh mesh;
    DumbbellMesh dm;
    bool have_dumbbell = false;
    if (fixture == "disk") {
        mesh = mesh_disk(get_num(config, "radius", 1.0), h);
    } else if (fixture == "square") {
        const double side = get_num(config, "L", 1.0);
        const int n = std::max(1, int(std::ceil(side / h - 1e-9)));
        mesh = mesh_rect(side, side, n, n);
    } else if (fixture == "dumbbell") {
        DumbbellSpec spec;
        spec.r1 = get_num(config, "r1", 1.0 / std::sqrt(M_PI));
        spec.r2 = get_num(config, "r2", spec.r1);
        spec.L = get_num(config, "L");
        spec.eps = get_num(config, "eps");
        spec.n_arc = get_int(config, "n_arc", 48);
        spec.profile = parse_profile(config, spec.L);
        dm = mesh_dumbbell(make_dumbbell(spec), h, get_int(config, "n_y", 4));
        mesh = dm.tri;
        have_dumbbell = true;
    } else {
        throw ConfigError("fixture must be disk, square or dumbbell");
    }

    ctx.write_text("mesh.json", mesh_to_json(mesh) + "\n");

    json j;
    if (neumann) {
        const Spectrum mu = solve_neumann(mesh, k, numerics);
        ctx.write_text("spectrum.csv", spectrum_csv(mu.eigenvalues, 1));
        j["neumann_eigenvalues"] = mu.eigenvalues;
    } else {
        const SteklovResult res = solve_steklov(mesh, k, numerics);
        ctx.write_text("spectrum.csv", spectrum_csv(res.boundary.eigenvalues));
        j["steklov_eigenvalues"] = res.boundary.eigenvalues;
        if (have_dumbbell) {
            const int samples = get_int(config, "trace_samples", 129);
            json traces = json::array();
            for (int i = 0; i <= k; ++i) {
                dm.tri = mesh; // keep node indexing shared
                const TubeTrace t = trace_tube(res, dm, i, samples);
                traces.push_back({{"k", i}, {"x", t.x}, {"v", t.v}});
            }
            j["midline_traces"] = traces;
        }
    }
    ctx.write_text("spectrum.json", j.dump(2) + "\n");
}

// ----------------------------------------------------------------- sweep

void cmd_sweep(Context& ctx) {
    const json& config = ctx.resolved;
    reject_unknown(config,
                   {"r1", "r2", "L", "rho", "eps_list", "k", "h", "n_y", "n_arc",
                    "limit_grid", "P1", "P2", "numerics", "out", "seed", "threads"},
                   "sweep config");
    DumbbellSpec spec;
    spec.L = get_num(config, "L");
    spec.r1 = get_num(config, "r1", 1.0 / std::sqrt(M_PI));
    spec.r2 = get_num(config, "r2", spec.r1);
    spec.n_arc = get_int(config, "n_arc", 48);
    spec.profile = parse_profile(config, spec.L);

    if (!config.contains("eps_list")) throw ConfigError("missing required key 'eps_list'");
    std::vector<double> eps_list;
    for (const auto& e : config.at("eps_list")) eps_list.push_back(e.get<double>());
    const int k = get_int(config, "k", 3);
    if (eps_list.size() < 3)
        throw ConfigError("eps_list needs >= 3 entries for the rate fit");

    SweepOptions opt;
    opt.numerics = parse_numerics(config);
    opt.n_y = get_int(config, "n_y", 4);
    opt.limit_grid = get_int(config, "limit_grid", 2048);
    opt.P1 = get_num(config, "P1", 0.0);
    opt.P2 = get_num(config, "P2", 0.0);
    opt.threads = ctx.threads;
    if (config.contains("h")) {
        const double h = get_num(config, "h");
        opt.h_of_eps = [h](double) { return h; };
    }

    const SweepReport report = sweep(spec, eps_list, k, opt);
    ctx.write_text("sweep.csv", sweep_to_csv(report));
    ctx.write_text("sweep.json", sweep_to_json(report) + "\n");
    ctx.write_text("plotdata.csv", sweep_plot_data(report));
    if (!report.complete)
        throw NoConvergence("sweep aborted: " + report.error + " (partial results written)");
}

// -------------------------------------------------------- counterexample

void cmd_counterexample(Context& ctx) {
    const json& config = ctx.resolved;
    reject_unknown(config, {"L", "fem", "eps", "h", "f_samples", "numerics", "out", "seed",
                            "threads"},
                   "counterexample config");
    const double L = get_num(config, "L");
    CounterexampleReport rep;
    if (config.value("fem", false)) {
        std::vector<double> eps_list = {0.1, 0.05, 0.025};
        if (config.contains("eps")) {
            eps_list.clear();
            for (const auto& e : config.at("eps")) eps_list.push_back(e.get<double>());
        }
        rep = run_counterexample(L, eps_list, get_num(config, "h", 0.15),
                                 parse_numerics(config));
    } else {
        rep = check_limit_inequality(L, get_int(config, "f_samples", 1000));
    }
    ctx.write_text("counterexample.json", counterexample_to_json(rep) + "\n");
    ctx.write_text("summary.txt", counterexample_summary(rep));
}

// ------------------------------------------------------------------ mesh

void cmd_mesh(Context& ctx) {
    const json& config = ctx.resolved;
    reject_unknown(config,
                   {"fixture", "radius", "h", "L", "eps", "r1", "r2", "n_arc", "n_y", "rho",
                    "numerics", "out", "seed", "threads"},
                   "mesh config");
    const std::string fixture = config.value("fixture", "dumbbell");
    const double h = get_num(config, "h", 0.1);
    if (fixture == "disk") {
        ctx.write_text("mesh.json", mesh_to_json(mesh_disk(get_num(config, "radius", 1.0), h)) + "\n");
        return;
    }
    if (fixture == "square") {
        const double side = get_num(config, "L", 1.0);
        const int n = std::max(1, int(std::ceil(side / h - 1e-9)));
        ctx.write_text("mesh.json", mesh_to_json(mesh_rect(side, side, n, n)) + "\n");
        return;
    }
    if (fixture != "dumbbell") throw ConfigError("fixture must be disk, square or dumbbell");
    DumbbellSpec spec;
    spec.r1 = get_num(config, "r1", 1.0 / std::sqrt(M_PI));
    spec.r2 = get_num(config, "r2", spec.r1);
    spec.L = get_num(config, "L");
    spec.eps = get_num(config, "eps");
    spec.n_arc = get_int(config, "n_arc", 48);
    spec.profile = parse_profile(config, spec.L);
    const DumbbellGeometry geom = make_dumbbell(spec);
    const DumbbellMesh dm = mesh_dumbbell(geom, h, get_int(config, "n_y", 4));
    ctx.write_text("geometry.json", geometry_to_json(dm.geom) + "\n");
    ctx.write_text("mesh.json", mesh_to_json(dm.tri) + "\n");
}

// ------------------------------------------------------------------ driver

json apply_set_overrides(json config, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const auto pos = kv.find('=');
        if (pos == std::string::npos) throw ConfigError("--set expects key=value: " + kv);
        const std::string key = kv.substr(0, pos);
        const std::string raw = kv.substr(pos + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw; // plain string
        }
        // dotted path into the object
        json* node = &config;
        std::size_t start = 0;
        while (true) {
            const std::size_t dot = key.find('.', start);
            const std::string part = key.substr(start, dot - start);
            if (part.empty()) throw ConfigError("--set has empty key segment: " + kv);
            if (dot == std::string::npos) {
                (*node)[part] = value;
                break;
            }
            node = &(*node)[part];
            start = dot + 1;
        }
    }
    return config;
}

int dispatch(const std::string& command, Context& ctx) {
    if (command == "limit") cmd_limit(ctx);
    else if (command == "fem") cmd_fem(ctx);
    else if (command == "sweep") cmd_sweep(ctx);
    else if (command == "counterexample") cmd_counterexample(ctx);
    else if (command == "mesh") cmd_mesh(ctx);
    else throw ConfigError("unknown command " + command);
    ctx.finish(command);
    return 0;
}

bool is_validation_error(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
           dynamic_cast<const InvalidSpec*>(&e) || dynamic_cast<const InvalidGrid*>(&e) ||
           dynamic_cast<const OutOfDomain*>(&e) || dynamic_cast<const DegenerateProfile*>(&e) ||
           dynamic_cast<const NonPositiveValue*>(&e) || dynamic_cast<const IoError*>(&e);
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Steklov/Neumann spectra of dumbbell domains and their 1D limit problems"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<std::string> sets;

    const std::vector<std::string> names = {"limit", "fem", "sweep", "counterexample", "mesh"};
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads for per-eps work");
        sub->add_option("--seed", seed, "seed recorded in the manifest");
        sub->add_option("--set", sets, "override config entries, key=value (flags win)");
    }

    std::vector<const char*> argv;
    argv.push_back("steklov");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        json config = json::object();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read config file " + config_path);
            try {
                config = json::parse(f);
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("malformed config JSON: ") + e.what());
            }
        }
        config = apply_set_overrides(std::move(config), sets);
        if (config.contains("out") && out_dir == ".") out_dir = config.at("out").get<std::string>();
        if (config.contains("seed") && seed == 0) seed = config.at("seed").get<std::uint64_t>();
        if (config.contains("threads") && threads == 1) threads = config.at("threads").get<int>();

        Context ctx;
        ctx.out_dir = out_dir;
        ctx.resolved = std::move(config);
        ctx.seed = seed;
        ctx.threads = std::max(1, threads);
        fs::create_directories(ctx.out_dir);
        return dispatch(app.get_subcommands().front()->get_name(), ctx);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e) ? 2 : 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run(args);
}

} // namespace steklov::cli
