#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isodiam/acceptance.hpp"
#include "isodiam/bodies.hpp"
#include "isodiam/decomposition.hpp"
#include "isodiam/dr.hpp"
#include "isodiam/ellipsoid.hpp"
#include "isodiam/positions.hpp"

namespace py = pybind11;
using namespace isodiam;

namespace {

std::vector<Eigen::VectorXd> to_vectors(
    const std::vector<std::vector<double>>& rows) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(),
                                                    static_cast<int>(r.size())));
  }
  return out;
}

py::dict decomposition_dict(const IdentityDecomposition& d) {
  py::list dirs;
  for (const auto& u : d.directions) dirs.append(u);
  py::dict out;
  out["dim"] = d.dim;
  out["directions"] = dirs;
  out["weights"] = d.weights;
  out["residual"] = d.residual;
  return out;
}

py::dict certificate_dict(const PositionCertificate& c) {
  py::dict out;
  out["kind"] = c.kind == PositionKind::Behrend ? "behrend" : "isominwidth";
  out["map"] = c.map.matrix();
  out["quotient_before"] = c.quotient_before;
  out["quotient_after"] = c.quotient_after;
  out["decomposition"] = decomposition_dict(c.decomposition);
  out["residual"] = c.residual;
  return out;
}

py::dict witness_dict(const DRWitness& w) {
  py::dict out = decomposition_dict(w.decomposition);
  out["value"] = w.value;
  out["subset"] = w.subset;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polytope positions, enclosing ellipsoids, decompositions of the "
            "identity, and Dvoretzky-Rogers volume constants";

  py::register_exception<Error>(m, "IsodiamError");

  py::class_<Polytope>(m, "Polytope")
      .def_static("from_points",
                  [](const std::vector<std::vector<double>>& pts) {
                    return Polytope::from_points(to_vectors(pts));
                  },
                  py::arg("points"))
      .def_property_readonly("dim", &Polytope::dim)
      .def_property_readonly("vertices",
                             [](const Polytope& p) {
                               py::list out;
                               for (const auto& v : p.vertices()) out.append(v);
                               return out;
                             })
      .def_property_readonly("volume", &Polytope::volume)
      .def_property_readonly("diameter", &Polytope::diameter)
      .def("support", &Polytope::support, py::arg("u"))
      .def("width", &Polytope::width, py::arg("u"))
      .def("transformed",
           [](const Polytope& p, const Eigen::MatrixXd& a) {
             return p.transformed(LinearMap(a));
           },
           py::arg("matrix"))
      .def("__repr__", [](const Polytope& p) {
        return "<Polytope dim=" + std::to_string(p.dim()) + " vertices=" +
               std::to_string(p.vertices().size()) + ">";
      });

  py::class_<Ellipsoid>(m, "Ellipsoid")
      .def_property_readonly("dim", &Ellipsoid::dim)
      .def_property_readonly("shape", &Ellipsoid::shape)
      .def_property_readonly("center", &Ellipsoid::center)
      .def_property_readonly("volume", &Ellipsoid::volume);

  m.def("make_body", &make_body, py::arg("kind"), py::arg("param") = 0.0,
        "cube | crosspolytope | regular_simplex | icosahedron | "
        "sailing_boat | septagon | triangle");
  m.def("iq", &iq, py::arg("body"));
  m.def("iwq", &iwq, py::arg("body"));
  m.def("volume", [](const Polytope& p) { return p.volume(); });
  m.def("diameter", [](const Polytope& p) { return p.diameter(); });
  m.def("difference_body", &difference_body, py::arg("body"));
  m.def("polar", &polar, py::arg("body"));
  m.def("min_width", [](const Polytope& p) {
    const auto r = min_width(p);
    py::list dirs;
    for (const auto& u : r.directions.directions()) dirs.append(u);
    return py::make_tuple(r.value, dirs);
  });
  m.def("diametrical_directions",
        [](const Polytope& p, double rel_tol) {
          py::list out;
          for (const auto& u : diametrical_directions(p, rel_tol).directions()) {
            out.append(u);
          }
          return out;
        },
        py::arg("body"), py::arg("rel_tol") = tol::diametrical_rel);
  m.def("subspace_angle",
        [](const std::vector<std::vector<double>>& basis,
           const std::vector<double>& v) {
          return subspace_angle(
              to_vectors(basis),
              Eigen::Map<const Eigen::VectorXd>(v.data(),
                                                static_cast<int>(v.size())));
        },
        py::arg("basis"), py::arg("v"));

  m.def("mvee",
        [](const std::vector<std::vector<double>>& pts, bool centered,
           double eps) {
          MveeOptions opts;
          opts.eps = eps;
          const auto r = centered ? mvee_centered(to_vectors(pts), opts)
                                  : mvee_general(to_vectors(pts), opts);
          py::list contact_points;
          for (const auto& u : r.contact.points) contact_points.append(u);
          py::dict contact;
          contact["points"] = contact_points;
          contact["weights"] = r.contact.weights;
          contact["residual"] = r.contact.residual;
          contact["barycenter_residual"] = r.contact.barycenter_residual;
          return py::make_tuple(r.ellipsoid, contact);
        },
        py::arg("points"), py::arg("centered") = false,
        py::arg("eps") = tol::mvee_eps);
  m.def("is_loewner",
        [](const Polytope& p, double tol) {
          const auto r = is_loewner(p, tol);
          return r.in_position;
        },
        py::arg("body"), py::arg("tol") = 1e-6);
  m.def("john_ellipsoid_symmetric",
        [](const Polytope& p) { return john_ellipsoid_symmetric(p); },
        py::arg("body"));

  m.def("behrend_normalize",
        [](const Polytope& p, double eps) {
          const auto r = behrend_normalize(p, eps);
          return py::make_tuple(r.map.matrix(), r.body,
                                certificate_dict(r.certificate));
        },
        py::arg("body"), py::arg("eps") = tol::mvee_eps);
  m.def("isominwidth_normalize",
        [](const Polytope& p, double eps) {
          const auto r = isominwidth_normalize(p, eps);
          return py::make_tuple(r.map.matrix(), r.body,
                                certificate_dict(r.certificate));
        },
        py::arg("body"), py::arg("eps") = tol::mvee_eps);
  m.def("is_behrend",
        [](const Polytope& p, double tol) {
          const auto r = is_behrend(p, tol);
          return py::make_tuple(r.in_position, r.achieved_residual);
        },
        py::arg("body"), py::arg("tol") = tol::behrend_fit);
  m.def("duality_check", &duality_check, py::arg("body"));
  m.def("distribution_check",
        [](const Polytope& p, const std::vector<std::vector<double>>& basis) {
          const auto r = distribution_check(p, to_vectors(basis));
          return py::make_tuple(r.min_angle, r.max_angle);
        },
        py::arg("body"), py::arg("basis"));
  m.def("greedy_simplex_bound",
        [](const Polytope& p) {
          const auto r = greedy_simplex_bound(p);
          py::list dirs;
          for (const auto& u : r.directions) dirs.append(u);
          return py::make_tuple(r.value, dirs);
        },
        py::arg("body"));

  m.def("verify_decomposition",
        [](const std::vector<std::vector<double>>& dirs,
           const std::vector<double>& weights, double tol) {
          const auto r = verify(
              to_vectors(dirs),
              Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                static_cast<int>(weights.size())),
              tol);
          py::dict out;
          out["frobenius_residual"] = r.frobenius_residual;
          out["trace_deviation"] = r.trace_deviation;
          out["pass"] = r.pass;
          return out;
        },
        py::arg("directions"), py::arg("weights"), py::arg("tol") = 1e-8);
  m.def("fit_weights",
        [](const std::vector<std::vector<double>>& dirs, double tol) {
          const auto r = fit_weights(to_vectors(dirs), tol);
          return py::make_tuple(r.feasible, r.weights, r.residual);
        },
        py::arg("directions"), py::arg("tol") = 1e-8);

  m.def("dr_lower_bound",
        [](int m_, int n_, int j_) { return dr_lower_bound(m_, n_, j_); },
        py::arg("m"), py::arg("n"), py::arg("j"));
  m.def("dr_simplex_value", &dr_simplex_value, py::arg("n"), py::arg("j"));
  m.def("dr_search",
        [](int m_, int n_, std::uint64_t seed, int restarts, int iters,
           int threads) {
          DrSearchOptions opts{seed, restarts, iters, threads};
          return witness_dict(dr_search(m_, n_, opts));
        },
        py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("restarts") = 64,
        py::arg("iters") = 5000, py::arg("threads") = 1);
  m.def("witness", [](const std::string& name) {
    return witness_dict(witness_library(name));
  });
  m.def("equiangular_check",
        [](const std::vector<std::vector<double>>& dirs) {
          const auto r = equiangular_check(to_vectors(dirs));
          return py::make_tuple(r.equiangular, r.common_cos, r.target);
        },
        py::arg("directions"));

  m.def("verify_paper", []() {
    py::list out;
    for (const auto& r : run_acceptance_suite(nullptr)) {
      py::dict item;
      item["id"] = r.id;
      item["title"] = r.title;
      item["pass"] = r.pass;
      item["detail"] = r.detail;
      out.append(item);
    }
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
