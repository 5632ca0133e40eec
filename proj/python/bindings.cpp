#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <string>
#include <vector>

#include "distmatch/distopt.hpp"
#include "distmatch/gadgets.hpp"
#include "distmatch/io.hpp"
#include "distmatch/matcher.hpp"
#include "distmatch/metric.hpp"
#include "distmatch/nets.hpp"
#include "distmatch/oracle.hpp"
#include "distmatch/wspd.hpp"

namespace py = pybind11;
using namespace distmatch;

namespace {

std::vector<Index> targets(const Matching& m) { return m.targets(); }

std::vector<std::vector<Index>> all_targets(const std::vector<Matching>& ms) {
  std::vector<std::vector<Index>> out;
  out.reserve(ms.size());
  for (const Matching& m : ms) out.push_back(m.targets());
  return out;
}

py::dict estimate_dict(const DistortionEstimate& e) {
  py::dict d;
  d["delta"] = e.delta;
  d["matching"] = targets(e.matching);
  d["probes"] = e.probes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Low-distortion matching of a small pattern metric into a doubling metric";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);

  py::class_<FiniteMetric>(m, "FiniteMetric")
      .def_static("from_points", &FiniteMetric::from_points, py::arg("points"))
      .def_static("from_matrix", &FiniteMetric::from_matrix, py::arg("rows"), py::arg("validate") = true)
      .def_static("from_json",
                  [](const std::string& text, bool validate) {
                    return metric_from_json(nlohmann::json::parse(text), validate);
                  },
                  py::arg("text"), py::arg("validate") = true)
      .def_static("load", [](const std::string& path, bool validate) { return load_metric(path, validate); },
                  py::arg("path"), py::arg("validate") = true)
      .def("to_json", [](const FiniteMetric& M) { return metric_to_json(M).dump(); })
      .def("distance", &FiniteMetric::distance)
      .def("__len__", &FiniteMetric::size)
      .def_property_readonly("is_euclidean", &FiniteMetric::is_euclidean)
      .def_property_readonly("dim", &FiniteMetric::dim)
      .def("diam", [](const FiniteMetric& M) { return diam(M); })
      .def("dmin", [](const FiniteMetric& M) { return dmin(M); })
      .def("rescale", &rescale, py::arg("factor"));

  m.def("validate_metric", [](const FiniteMetric& M, std::size_t max_violations) {
        const ValidationReport r = validate_metric(M, max_violations);
        py::list violations;
        for (const Violation& v : r.violations) {
          violations.append(py::make_tuple(to_string(v.kind), v.i, v.j, v.l));
        }
        py::dict d;
        d["valid"] = r.ok();
        d["violations"] = violations;
        d["truncated"] = r.truncated;
        return d;
      },
      py::arg("metric"), py::arg("max_violations") = 0);

  m.def("verify_matching",
        [](const std::vector<Index>& sigma, const FiniteMetric& X, const FiniteMetric& Y, double rho) {
          return verify_matching(Matching(sigma), X, Y, rho);
        },
        py::arg("matching"), py::arg("X"), py::arg("Y"), py::arg("rho"));
  m.def("distortion", [](const std::vector<Index>& sigma, const FiniteMetric& X,
                         const FiniteMetric& Y) { return distortion(Matching(sigma), X, Y); });
  m.def("achieved_rho", [](const std::vector<Index>& sigma, const FiniteMetric& X,
                           const FiniteMetric& Y) { return achieved_rho(Matching(sigma), X, Y); });

  m.def("solve_distortion",
        [](const FiniteMetric& X, const FiniteMetric& Y, double rho, double eps, bool want_all,
           unsigned threads) {
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = solve_distortion(X, Y, rho, eps, {.want_all = want_all, .threads = threads});
          }
          py::dict stats;
          stats["layers_built"] = r.stats.layers_built;
          stats["max_set_size"] = r.stats.max_set_size;
          stats["candidates"] = r.stats.candidates;
          stats["kept"] = r.stats.kept;
          stats["early_exit"] = r.stats.early_exit;
          py::dict d;
          d["found"] = r.found();
          d["matchings"] = all_targets(r.matchings);
          d["stats"] = stats;
          return d;
        },
        py::arg("X"), py::arg("Y"), py::arg("rho"), py::arg("eps"), py::arg("want_all") = false,
        py::arg("threads") = 1);

  m.def("decide_distortion",
        [](const FiniteMetric& X, const FiniteMetric& Y, double delta, double eps, unsigned threads) {
          Decision dec;
          {
            py::gil_scoped_release release;
            dec = decide_distortion(X, Y, delta, eps, threads);
          }
          return py::make_tuple(dec.positive, dec.witness ? py::cast(targets(*dec.witness)) : py::none());
        },
        py::arg("X"), py::arg("Y"), py::arg("delta"), py::arg("eps"), py::arg("threads") = 1);

  m.def("min_distortion",
        [](const FiniteMetric& X, const FiniteMetric& Y, double eps, bool naive, unsigned threads) {
          DistortionEstimate e;
          {
            py::gil_scoped_release release;
            e = naive ? min_distortion_naive(X, Y, eps, threads) : min_distortion(X, Y, eps, threads);
          }
          return estimate_dict(e);
        },
        py::arg("X"), py::arg("Y"), py::arg("eps"), py::arg("naive") = false, py::arg("threads") = 1);

  m.def("r_net",
        [](const FiniteMetric& Y, int r_exp) {
          NetLayer layer = build_r_net(Y, Scale{r_exp});
          horizontal_edges(layer, Y);
          py::dict d;
          d["r_exp"] = r_exp;
          d["centers"] = layer.centers;
          d["cover"] = layer.cover;
          d["adjacency"] = layer.adjacency;
          return d;
        },
        py::arg("Y"), py::arg("r_exp"));

  m.def("candidate_lengths", &candidate_lengths, py::arg("Y"), py::arg("eps"));

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>(), py::arg("m"),
           py::arg("edges"))
      .def_static("random",
                  [](std::size_t n, double p, std::uint64_t seed) {
                    std::mt19937_64 rng(seed);
                    return Graph::random(n, p, rng);
                  },
                  py::arg("m"), py::arg("p"), py::arg("seed"))
      .def_property_readonly("m", &Graph::m)
      .def_property_readonly("edges", &Graph::edges)
      .def("adjacent", &Graph::adjacent)
      .def("is_clique", &Graph::is_clique)
      .def("with_clique", &Graph::with_clique);

  py::class_<CliqueInstance>(m, "CliqueInstance")
      .def_readonly("X", &CliqueInstance::X)
      .def_readonly("Y", &CliqueInstance::Y)
      .def_readonly("k", &CliqueInstance::k)
      .def_readonly("rho", &CliqueInstance::rho)
      .def_readonly("lambda_", &CliqueInstance::lambda)
      .def("decode", &CliqueInstance::decode)
      .def("flat_index", &CliqueInstance::flat_index)
      .def("matching_to_clique",
           [](const CliqueInstance& inst, const std::vector<Index>& sigma) {
             return matching_to_clique(Matching(sigma), inst);
           })
      .def("clique_to_matching", [](const CliqueInstance& inst, const std::vector<std::size_t>& vs) {
        return targets(clique_to_matching(vs, inst));
      });

  m.def("gen_clique_instance", &gen_clique_instance, py::arg("graph"), py::arg("k"), py::arg("rho"));
  m.def("gen_min_distortion_instance", &gen_min_distortion_instance, py::arg("graph"), py::arg("k"),
        py::arg("rho"));

  m.def("brute_rho_matchings",
        [](const FiniteMetric& X, const FiniteMetric& Y, double rho, std::size_t limit) {
          return all_targets(brute_rho_matchings(X, Y, rho, limit));
        },
        py::arg("X"), py::arg("Y"), py::arg("rho"), py::arg("limit") = 0);
  m.def("brute_min_distortion", [](const FiniteMetric& X, const FiniteMetric& Y) {
    const auto [value, sigma] = brute_min_distortion(X, Y);
    return py::make_tuple(value, targets(sigma));
  });
  m.def("brute_k_clique", &brute_k_clique, py::arg("graph"), py::arg("k"));
}
