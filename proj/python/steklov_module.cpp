#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steklov/asymptotics.hpp"
#include "steklov/counterexample.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/limit1d.hpp"
#include "steklov/meshgen.hpp"

namespace py = pybind11;
using namespace steklov;

namespace {

TubeProfile profile_from_args(const std::string& kind, double c0, double c1, double L,
                              const std::vector<std::pair<double, double>>& samples) {
    if (kind == "constant") return TubeProfile::constant(c0);
    if (kind == "cosine_bump") return TubeProfile::cosine_bump(c0, c1, L);
    if (kind == "table") return TubeProfile::table(samples);
    throw InvalidArgument("profile kind must be constant, cosine_bump or table");
}

} // namespace

PYBIND11_MODULE(steklov_dumbbell, m) {
    m.doc() = "Steklov/Neumann spectra of planar dumbbell domains and the 1D limit problems";

    py::register_exception<Error>(m, "SteklovError");

    py::class_<TubeProfile>(m, "TubeProfile")
        .def_static("constant", &TubeProfile::constant, py::arg("c"))
        .def_static("cosine_bump", &TubeProfile::cosine_bump, py::arg("c0"), py::arg("c1"),
                    py::arg("length"))
        .def_static("table", &TubeProfile::table, py::arg("samples"))
        .def("__call__", &TubeProfile::operator(), py::arg("x1"));

    py::class_<DumbbellSpec>(m, "DumbbellSpec")
        .def(py::init([](double r1, double r2, double L, double eps, const TubeProfile& rho,
                         int n_arc) {
                 DumbbellSpec s;
                 s.r1 = r1;
                 s.r2 = r2;
                 s.L = L;
                 s.eps = eps;
                 s.profile = rho;
                 s.n_arc = n_arc;
                 s.validate();
                 return s;
             }),
             py::arg("r1"), py::arg("r2"), py::arg("L"), py::arg("eps"),
             py::arg("rho") = TubeProfile::constant(1.0), py::arg("n_arc") = 48)
        .def_readwrite("r1", &DumbbellSpec::r1)
        .def_readwrite("r2", &DumbbellSpec::r2)
        .def_readwrite("L", &DumbbellSpec::L)
        .def_readwrite("eps", &DumbbellSpec::eps)
        .def_readwrite("n_arc", &DumbbellSpec::n_arc);

    py::class_<DumbbellGeometry>(m, "DumbbellGeometry")
        .def_property_readonly("n_chains",
                               [](const DumbbellGeometry& g) { return g.chains.size(); })
        .def("perimeter", [](const DumbbellGeometry& g) { return perimeter(g); })
        .def("perimeter_of",
             [](const DumbbellGeometry& g, const std::string& tag) {
                 return perimeter(g, tag_from_string(tag));
             })
        .def("area", [](const DumbbellGeometry& g) { return area(g); })
        .def("to_json", &geometry_to_json);

    m.def("make_dumbbell", &make_dumbbell, py::arg("spec"));

    py::class_<MeshQuality>(m, "MeshQuality")
        .def_readonly("min_angle", &MeshQuality::min_angle)
        .def_readonly("max_aspect", &MeshQuality::max_aspect)
        .def_readonly("n_nodes", &MeshQuality::n_nodes)
        .def_readonly("n_tris", &MeshQuality::n_tris);

    py::class_<TriMesh>(m, "TriMesh")
        .def_property_readonly("n_nodes", &TriMesh::n_nodes)
        .def_property_readonly("n_triangles", &TriMesh::n_triangles)
        .def("area", &mesh_area)
        .def("quality", &mesh_quality)
        .def("to_json", &mesh_to_json);

    py::class_<DumbbellMesh>(m, "DumbbellMesh")
        .def_readonly("tri", &DumbbellMesh::tri)
        .def_readonly("n_x", &DumbbellMesh::n_x)
        .def_readonly("n_y", &DumbbellMesh::n_y);

    m.def("mesh_dumbbell", &mesh_dumbbell, py::arg("geometry"), py::arg("h"), py::arg("n_y") = 4);
    m.def("mesh_disk", &mesh_disk, py::arg("radius"), py::arg("h"));
    m.def("mesh_rect", &mesh_rect, py::arg("width"), py::arg("height"), py::arg("nx"),
          py::arg("ny"));

    m.def(
        "solve_steklov",
        [](const TriMesh& mesh, int k_max) {
            const SteklovResult res = solve_steklov(mesh, k_max);
            return py::make_tuple(res.boundary.eigenvalues, res.fields);
        },
        py::arg("mesh"), py::arg("k_max"),
        "Returns (eigenvalues sigma_0..sigma_k, full-field eigenvectors)");
    m.def(
        "solve_neumann",
        [](const TriMesh& mesh, int k_max) { return solve_neumann(mesh, k_max).eigenvalues; },
        py::arg("mesh"), py::arg("k_max"), "Neumann eigenvalues mu_1..mu_k (zero mode removed)");

    py::class_<Spectrum1D>(m, "Spectrum1D")
        .def_readonly("eigenvalues", &Spectrum1D::eigenvalues)
        .def_readonly("samples", &Spectrum1D::samples)
        .def_readonly("grid", &Spectrum1D::grid);

    m.def(
        "solve_dynamic_bc",
        [](const std::string& kind, double c0, double c1,
           const std::vector<std::pair<double, double>>& samples, double L, int n, double P1,
           double P2, double eps, int N, int k_max, const std::string& convention) {
            const TubeProfile rho = profile_from_args(kind, c0, c1, L, samples);
            const AngularConvention conv =
                convention == "sphere" ? AngularConvention::Sphere : AngularConvention::Paper;
            const Limit1DProblem p =
                n == 2 ? Limit1DProblem::dynamic_2d(rho, L, P1, P2)
                       : Limit1DProblem::dynamic_weighted(rho, L, n, P1, P2, eps, conv);
            return solve_dynamic_bc(p, N, k_max);
        },
        py::arg("kind"), py::arg("c0"), py::arg("c1"), py::arg("samples"), py::arg("L"),
        py::arg("n"), py::arg("P1"), py::arg("P2"), py::arg("eps"), py::arg("N"),
        py::arg("k_max"), py::arg("convention") = "paper");

    m.def(
        "solve_dirichlet_weighted",
        [](const std::string& kind, double c0, double c1,
           const std::vector<std::pair<double, double>>& samples, double L, int n, int N,
           int k_max, const std::string& convention) {
            const TubeProfile rho = profile_from_args(kind, c0, c1, L, samples);
            const AngularConvention conv =
                convention == "sphere" ? AngularConvention::Sphere : AngularConvention::Paper;
            return solve_dirichlet_weighted(Limit1DProblem::dirichlet(rho, L, n, 1.0, 1.0, conv),
                                            N, k_max);
        },
        py::arg("kind"), py::arg("c0"), py::arg("c1"), py::arg("samples"), py::arg("L"),
        py::arg("n"), py::arg("N"), py::arg("k_max"), py::arg("convention") = "paper");

    m.def(
        "sigma1_closed_form",
        [](const std::string& kind, double c0, double c1,
           const std::vector<std::pair<double, double>>& samples, double L, int n, double P1,
           double P2) {
            const TubeProfile rho = profile_from_args(kind, c0, c1, L, samples);
            return sigma1_closed_form(Limit1DProblem::dirichlet(rho, L, n, P1, P2));
        },
        py::arg("kind"), py::arg("c0"), py::arg("c1"), py::arg("samples"), py::arg("L"),
        py::arg("n"), py::arg("P1"), py::arg("P2"));

    m.def("transcendental_roots", &transcendental_roots, py::arg("L"), py::arg("P1"),
          py::arg("P2"), py::arg("k_max"));
    m.def("f_eval", &f_eval, py::arg("w"), py::arg("L"));
    m.def("unit_ball_volume", &unit_ball_volume, py::arg("n"));

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("gamma", &RateFit::gamma)
        .def_readonly("C", &RateFit::C)
        .def_readonly("residual", &RateFit::residual);
    m.def("fit_rate", &fit_rate, py::arg("eps"), py::arg("sigma"));

    py::class_<InequalityRecord>(m, "InequalityRecord")
        .def_readonly("eps", &InequalityRecord::eps)
        .def_readonly("mu1", &InequalityRecord::mu1)
        .def_readonly("sigma1", &InequalityRecord::sigma1)
        .def_readonly("area", &InequalityRecord::area)
        .def_readonly("perimeter", &InequalityRecord::perimeter)
        .def_property_readonly("lhs", &InequalityRecord::lhs)
        .def_property_readonly("rhs", &InequalityRecord::rhs)
        .def_property_readonly("verdict", &InequalityRecord::verdict);

    py::class_<CounterexampleReport>(m, "CounterexampleReport")
        .def_readonly("L", &CounterexampleReport::L)
        .def_readonly("threshold", &CounterexampleReport::threshold)
        .def_readonly("alpha1", &CounterexampleReport::alpha1)
        .def_readonly("bound_mu", &CounterexampleReport::bound_mu)
        .def_readonly("f_all_positive", &CounterexampleReport::f_all_positive)
        .def_readonly("chain_holds", &CounterexampleReport::chain_holds)
        .def_readonly("fem", &CounterexampleReport::fem)
        .def("summary", &counterexample_summary);

    m.def("check_limit_inequality", &check_limit_inequality, py::arg("L"),
          py::arg("f_samples") = 1000);
    m.def("check_fem_inequality",
          [](double L, double eps, double h) { return check_fem_inequality(L, eps, h); },
          py::arg("L"), py::arg("eps"), py::arg("h"));
}
