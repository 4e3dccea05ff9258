#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mslab/diagnostics.hpp"
#include "mslab/energy.hpp"
#include "mslab/identities.hpp"
#include "mslab/solver.hpp"
#include "mslab/spectral.hpp"

namespace py = pybind11;
using namespace mslab;

namespace {

ScalarField field_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                             double h, std::pair<double, double> origin) {
  if (arr.ndim() != 2) throw Error("expected a 2-D array");
  const int ny = static_cast<int>(arr.shape(0));
  const int nx = static_cast<int>(arr.shape(1));
  ScalarField f({origin.first, origin.second}, h, nx, ny);
  auto r = arr.unchecked<2>();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.at(i, j) = r(j, i);
  return f;
}

py::array_t<double> field_to_array(const ScalarField& f) {
  py::array_t<double> arr({f.ny(), f.nx()});
  auto w = arr.mutable_unchecked<2>();
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) w(j, i) = f.at(i, j);
  return arr;
}

Vec2 to_vec(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_mslab, m) {
  m.doc() = "planar Mumford-Shah energies, regularity diagnostics, and spectral tools";

  py::register_exception<TangentialCrossing>(m, "TangentialCrossingError");
  py::register_exception<WrongCrossingCount>(m, "WrongCrossingCountError");

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>())
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y);

  py::class_<Disk>(m, "Disk")
      .def(py::init([](std::pair<double, double> c, double r) { return Disk(to_vec(c), r); }),
           py::arg("center"), py::arg("radius"));

  py::class_<JumpSet>(m, "JumpSet")
      .def(py::init<>())
      .def("add_chain",
           [](JumpSet& j, const std::vector<std::pair<double, double>>& pts, bool closed) {
             std::vector<Vec2> v;
             for (auto p : pts) v.push_back(to_vec(p));
             j.add_chain(std::move(v), closed);
           },
           py::arg("points"), py::arg("closed") = false)
      .def("total_length", &JumpSet::total_length)
      .def("chain_count", &JumpSet::chain_count)
      .def("chains",
           [](const JumpSet& j) {
             std::vector<std::vector<std::pair<double, double>>> out;
             for (const auto& ch : j.chains()) {
               std::vector<std::pair<double, double>> c;
               for (Vec2 p : ch) c.push_back({p.x, p.y});
               out.push_back(std::move(c));
             }
             return out;
           })
      .def("closed_flags", [](const JumpSet& j) {
        std::vector<bool> out(j.closed_flags().begin(), j.closed_flags().end());
        return out;
      })
      .def("to_json", &JumpSet::to_json)
      .def_static("from_json", &JumpSet::from_json);

  m.def("length_in_disk", &length_in_disk);
  m.def("crossing_count", &crossing_count, py::arg("jumps"), py::arg("disk"),
        py::arg("tangential_tol") = 1e-6);
  m.def("hausdorff_distance",
        [](const std::vector<std::pair<double, double>>& a,
           const std::vector<std::pair<double, double>>& b) {
          std::vector<Vec2> va, vb;
          for (auto p : a) va.push_back(to_vec(p));
          for (auto p : b) vb.push_back(to_vec(p));
          return hausdorff_distance(va, vb);
        });

  py::class_<ModelMinimizer>(m, "ModelMinimizer")
      .def_static("constant", &ModelMinimizer::constant, py::arg("value") = 0.0)
      .def_static("pure_jump",
                  [](double theta, std::pair<double, double> c, double lo, double hi) {
                    return ModelMinimizer::pure_jump(theta, to_vec(c), lo, hi);
                  },
                  py::arg("theta") = 0.0, py::arg("center") = std::pair<double, double>{0, 0},
                  py::arg("lo") = 0.0, py::arg("hi") = 1.0)
      .def_static("triple_junction",
                  [](double theta, std::pair<double, double> c, std::vector<double> values) {
                    return ModelMinimizer::triple_junction(theta, to_vec(c), std::move(values));
                  },
                  py::arg("theta") = 0.0, py::arg("center") = std::pair<double, double>{0, 0},
                  py::arg("values") = std::vector<double>{0.0, 1.0, 2.0})
      .def_static("cracktip",
                  [](double theta, std::pair<double, double> tip, double b, bool negative) {
                    return ModelMinimizer::cracktip(theta, to_vec(tip), b, negative);
                  },
                  py::arg("theta") = 0.0, py::arg("tip") = std::pair<double, double>{0, 0},
                  py::arg("b") = std::sqrt(kCracktipFactorSq), py::arg("negative") = false)
      .def("eval",
           [](const ModelMinimizer& mm, std::pair<double, double> p) {
             const auto r = eval(mm, to_vec(p));
             return std::make_tuple(r.u, std::make_pair(r.grad.x, r.grad.y));
           })
      .def("jump_set",
           [](const ModelMinimizer& mm, double extent) { return model_jump_set(mm, extent); },
           py::arg("extent") = 16.0)
      .def("to_json", &ModelMinimizer::to_json)
      .def_static("from_json", &ModelMinimizer::from_json);

  m.def("conjugate_eval", [](const ModelMinimizer& mm, std::pair<double, double> p) {
    const auto r = conjugate(mm).eval(to_vec(p));
    return std::make_tuple(r.u, std::make_pair(r.grad.x, r.grad.y));
  });

  py::class_<PairView>(m, "PairView")
      .def_static("of_model", &PairView::of_model, py::arg("model"), py::arg("lam") = 0.0,
                  py::arg("g") = 0.0);

  m.def("rescale", [](const PairView& p, std::pair<double, double> x, double r) {
    return rescale(p, to_vec(x), r);
  });

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("dirichlet", &EnergyReport::dirichlet)
      .def_readonly("length", &EnergyReport::length)
      .def_readonly("fidelity", &EnergyReport::fidelity)
      .def_readonly("total", &EnergyReport::total)
      .def_readonly("d", &EnergyReport::d)
      .def_readonly("ell_over_r", &EnergyReport::ell_over_r)
      .def_readonly("F", &EnergyReport::F)
      .def_readonly("upper_bound", &EnergyReport::upper_bound)
      .def_readonly("upper_bound_ok", &EnergyReport::upper_bound_ok);

  m.def("dirichlet", &dirichlet, py::arg("pair"), py::arg("disk"), py::arg("rel_tol") = 1e-8);
  m.def("energy_total", &energy_total, py::arg("pair"), py::arg("disk"),
        py::arg("rel_tol") = 1e-8);
  m.def("radial_profile",
        [](const PairView& p, std::pair<double, double> x, std::vector<double> radii) {
          const auto prof = radial_profile(p, to_vec(x), radii);
          py::dict out;
          out["r"] = prof.r;
          out["d"] = prof.d;
          out["ell_over_r"] = prof.ell_over_r;
          out["F"] = prof.F;
          out["N"] = prof.N;
          out["F_decreasing_intervals"] = prof.F_decreasing_intervals;
          out["d_decreasing_intervals"] = prof.d_decreasing_intervals;
          return out;
        });
  m.def("linspace", &linspace);

  py::class_<FlatnessReport>(m, "FlatnessReport")
      .def_readonly("beta", &FlatnessReport::beta)
      .def_readonly("excess", &FlatnessReport::excess);
  m.def("mean_flatness", &mean_flatness);
  m.def("excess", [](const JumpSet& j, const Disk& d) { return excess(j, d); });
  m.def("excess_along", [](const JumpSet& j, const Disk& d, std::pair<double, double> v) {
    return excess(j, d, to_vec(v));
  });

  py::enum_<ModelClass>(m, "ModelClass")
      .value("Jump", ModelClass::Jump)
      .value("Triple", ModelClass::Triple)
      .value("Cracktip", ModelClass::Cracktip);

  py::class_<ClosenessReport>(m, "ClosenessReport")
      .def_readonly("theta_star", &ClosenessReport::theta_star)
      .def_readonly("hausdorff_part", &ClosenessReport::hausdorff_part)
      .def_readonly("dirichlet_part", &ClosenessReport::dirichlet_part)
      .def_readonly("omega", &ClosenessReport::omega);
  m.def("closeness",
        [](const PairView& p, std::pair<double, double> x, double r, ModelClass cls) {
          return closeness(p, to_vec(x), r, cls);
        });
  m.def("classify_point",
        [](const PairView& p, std::pair<double, double> x, std::vector<double> scales,
           double eps, double d_min) {
          return classify_point(p, to_vec(x), scales, {eps, d_min}).to_json();
        },
        py::arg("pair"), py::arg("x"), py::arg("scales"), py::arg("eps") = 0.05,
        py::arg("d_min") = 0.1);

  py::class_<IdentityResidual>(m, "IdentityResidual")
      .def_readonly("lhs", &IdentityResidual::lhs)
      .def_readonly("rhs", &IdentityResidual::rhs)
      .def_readonly("residual", &IdentityResidual::residual)
      .def_readonly("terms", &IdentityResidual::terms)
      .def("to_json", &IdentityResidual::to_json);

  m.def("dlms_residual", [](const PairView& p, std::pair<double, double> y, double r) {
    return dlms_residual(p, to_vec(y), r);
  });
  py::enum_<BoundaryVariationKind>(m, "BoundaryVariationKind")
      .value("Translation", BoundaryVariationKind::Translation)
      .value("Rotation", BoundaryVariationKind::Rotation);
  m.def("boundary_identity_residual",
        [](const PairView& p, std::pair<double, double> y, double r, BoundaryVariationKind k,
           std::pair<double, double> v) {
          return boundary_identity_residual(p, to_vec(y), r, k, to_vec(v));
        },
        py::arg("pair"), py::arg("y"), py::arg("r"), py::arg("kind"),
        py::arg("v") = std::pair<double, double>{1.0, 0.0});
  m.def("am_identity_residual",
        [](const PairView& p, double r) { return am_identity_residual(p, r); });

  py::class_<CracktipFactorResult>(m, "CracktipFactorResult")
      .def_readonly("b", &CracktipFactorResult::b)
      .def_readonly("b_squared", &CracktipFactorResult::b_squared)
      .def_readonly("deviation", &CracktipFactorResult::deviation)
      .def_readonly("nodes", &CracktipFactorResult::nodes);
  m.def("cracktip_factor_solve", &cracktip_factor_solve, py::arg("circle_nodes") = 2048,
        py::arg("negative") = false);

  m.def("magic_formula_residual", &magic_formula_residual, py::arg("model"), py::arg("z0"),
        py::arg("truncation_R") = 1e4);

  m.def("lweak_profile", [](const PairView& p, const Disk& U, std::vector<double> M) {
    const auto prof = lweak_profile(p, U, M);
    return std::make_tuple(prof.M, prof.measure, prof.M_times_measure, prof.sup);
  });

  py::class_<VentselSpectrum>(m, "VentselSpectrum")
      .def_readonly("nu", &VentselSpectrum::nu)
      .def_readonly("psi_residual", &VentselSpectrum::psi_residual)
      .def("to_csv", &VentselSpectrum::to_csv);
  m.def("ventsel_eigenvalues", &ventsel_eigenvalues);
  m.def("ventsel_psi", &ventsel_psi);

  py::class_<Mode>(m, "Mode")
      .def(py::init([](int k, double C, double D) { return Mode{k, C, D}; }), py::arg("k"),
           py::arg("C"), py::arg("D"));
  py::class_<SpectralSolution>(m, "SpectralSolution")
      .def_static("even", &SpectralSolution::even)
      .def("coefficients_at", &SpectralSolution::coefficients_at)
      .def("ode_residual_fd", &SpectralSolution::ode_residual_fd, py::arg("tgrid"),
           py::arg("dt") = 3e-5);
  py::class_<ThreeAnnuliReport>(m, "ThreeAnnuliReport")
      .def_readonly("G01", &ThreeAnnuliReport::G01)
      .def_readonly("G12", &ThreeAnnuliReport::G12)
      .def_readonly("G23", &ThreeAnnuliReport::G23)
      .def_readonly("hypothesis", &ThreeAnnuliReport::hypothesis)
      .def_readonly("conclusion", &ThreeAnnuliReport::conclusion)
      .def_readonly("implication_holds", &ThreeAnnuliReport::implication_holds)
      .def_readonly("convexity_ok", &ThreeAnnuliReport::convexity_ok);
  m.def("three_annuli_check", &three_annuli_check, py::arg("solution"), py::arg("eta"),
        py::arg("c0") = 0.01);

  py::class_<PhaseFieldState>(m, "PhaseFieldState")
      .def_property_readonly("u", [](const PhaseFieldState& s) { return field_to_array(s.u); })
      .def_property_readonly("z", [](const PhaseFieldState& s) { return field_to_array(s.z); })
      .def_readonly("energy_log", &PhaseFieldState::energy_log)
      .def("extract_jumpset",
           [](const PhaseFieldState& s, double thr) { return extract_jumpset(s, thr); },
           py::arg("threshold") = 0.5)
      .def("diagnose",
           [](const PhaseFieldState& s, std::vector<std::pair<double, double>> pts,
              std::vector<double> scales, double eps) {
             std::vector<Vec2> v;
             for (auto p : pts) v.push_back(to_vec(p));
             std::vector<std::string> out;
             for (const auto& c : diagnose_segmentation(s, v, scales, {eps, 0.1}))
               out.push_back(c.to_json());
             return out;
           },
           py::arg("points"), py::arg("scales"), py::arg("eps") = 0.25);

  m.def("at_minimize",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> g, double lambda,
           double eps_phase, int sweeps, double h) {
          auto gf = std::make_shared<ScalarField>(field_from_array(g, h, {0.0, 0.0}));
          return at_minimize(gf, lambda, eps_phase, sweeps);
        },
        py::arg("g"), py::arg("lam"), py::arg("eps_phase"), py::arg("sweeps"),
        py::arg("h") = 1.0);

  m.def("read_pgm", [](const std::string& path) { return field_to_array(read_pgm(path)); });
}
