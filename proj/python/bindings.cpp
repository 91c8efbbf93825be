#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "paspec/census.hpp"
#include "paspec/density.hpp"
#include "paspec/edge_localize.hpp"
#include "paspec/exact_prob.hpp"
#include "paspec/graph.hpp"
#include "paspec/harness.hpp"
#include "paspec/lanczos.hpp"
#include "paspec/moment_theory.hpp"
#include "paspec/spectra.hpp"
#include "paspec/symbolic.hpp"

namespace py = pybind11;
using namespace paspec;

namespace {

py::int_ to_pyint(const BigInt& v) { return py::int_(py::str(v.str())); }

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_pyint(boost::multiprecision::numerator(r)), to_pyint(boost::multiprecision::denominator(r)));
}

LabeledGraph labeled(const std::vector<std::pair<Vertex, Vertex>>& edges) {
  LabeledGraph s;
  for (const auto& [out, in] : edges) s.edges.push_back({out, in});
  return s;
}

MultiGraph sample(std::int64_t m, Vertex n, std::uint64_t seed, std::optional<double> epsilon) {
  auto g = generate({m, n, seed});
  return epsilon ? truncate(g, {*epsilon}) : g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra of preferential attachment graphs";

  py::class_<MultiGraph>(m, "Graph")
      .def_property_readonly("n", &MultiGraph::n)
      .def_property_readonly("m", &MultiGraph::m)
      .def_property_readonly("seed", &MultiGraph::seed)
      .def_property_readonly("vertex_offset", &MultiGraph::vertex_offset)
      .def_property_readonly("vertex_count", &MultiGraph::vertex_count)
      .def_property_readonly("edge_count", &MultiGraph::edge_count)
      .def("edges",
           [](const MultiGraph& g) {
             std::vector<std::pair<Vertex, Vertex>> out;
             out.reserve(g.edge_count());
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("degrees", &MultiGraph::degree_vector)
      .def("to_edge_list", [](const MultiGraph& g) { return to_edge_list(g); })
      .def("__eq__", [](const MultiGraph& a, const MultiGraph& b) { return a == b; })
      .def("__repr__", [](const MultiGraph& g) {
        std::ostringstream s;
        s << "<Graph m=" << g.m() << " n=" << g.n() << " offset=" << g.vertex_offset() << " edges=" << g.edge_count()
          << '>';
        return s.str();
      });

  m.def("generate", &sample, py::arg("m"), py::arg("n"), py::arg("seed") = 0, py::arg("epsilon") = py::none(),
        "Sample G_{m,n}, optionally truncated to vertices above ceil(epsilon n).");
  m.def("parse_edge_list", &parse_edge_list);
  m.def("from_pairs", &MultiGraph::from_pairs, py::arg("n"), py::arg("pairs"));

  m.def(
      "exact_probability",
      [](const std::vector<std::pair<Vertex, Vertex>>& edges, Vertex n) {
        return to_fraction(labeled_probability_exact(labeled(edges), n).value);
      },
      py::arg("edges"), py::arg("n"), "P[S in G_{1,n}] for edges given as (out, in) pairs.");
  m.def(
      "enumerated_probability",
      [](const std::vector<std::pair<Vertex, Vertex>>& edges, Vertex n) {
        return to_fraction(marginal_probability(enumerate_process(n), labeled(edges)));
      },
      py::arg("edges"), py::arg("n"));

  m.def(
      "adjacency", [](const MultiGraph& g) { return adjacency(g).entries; }, py::arg("g"));
  m.def(
      "eigenvalues", [](const MultiGraph& g) { return eigen_full(adjacency(g)).measure.atoms; }, py::arg("g"),
      "Full spectrum, descending.");
  m.def(
      "trace_power", [](const MultiGraph& g, int k) { return to_pyint(trace_power_walks(g, k).value); },
      py::arg("g"), py::arg("k"), "Tr(A^k) as an exact integer.");
  m.def(
      "interval_distance",
      [](std::vector<double> a, std::vector<double> b, double merge_tol) {
        return interval_distance(SpectralMeasure{std::move(a)}, SpectralMeasure{std::move(b)}, merge_tol);
      },
      py::arg("a"), py::arg("b"), py::arg("merge_tol") = 0.0);

  m.def("limit_moment", &limit_moment_C, py::arg("k"), py::arg("epsilon"), py::arg("m"));
  m.def(
      "moment_table",
      [](int K, double epsilon, std::int64_t mm) { return build_moment_table(K, epsilon, mm).moments; },
      py::arg("K"), py::arg("epsilon"), py::arg("m"));
  m.def(
      "psi", [](const std::vector<int>& d, double epsilon, std::int64_t mm) { return static_cast<double>(psi(d, epsilon, mm)); },
      py::arg("degrees"), py::arg("epsilon"), py::arg("m"));

  m.def(
      "count_subgraphs",
      [](const MultiGraph& g, int t, const std::vector<std::pair<int, int>>& edges) {
        return count_ordered_subgraphs(g, OrderedGraph(t, edges));
      },
      py::arg("g"), py::arg("t"), py::arg("edges"), "Copies of the ordered graph on vertices 1..t.");

  m.def(
      "reconstruct_density",
      [](const std::vector<double>& moments, std::optional<double> sigma, std::optional<double> half_width,
         int gridsize) {
        DensityParams p;
        if (!sigma || !half_width) p = default_density_params(moments);
        if (sigma) p.sigma = *sigma;
        if (half_width) p.half_width = *half_width;
        p.gridsize = gridsize;
        const auto e = reconstruct_density(moments, p);
        py::dict out;
        out["grid"] = e.grid;
        out["density"] = e.values;
        out["sigma"] = e.sigma;
        out["warning"] = e.warning;
        out["suggested_sigma"] = e.suggested_sigma;
        return out;
      },
      py::arg("moments"), py::arg("sigma") = py::none(), py::arg("half_width") = py::none(),
      py::arg("gridsize") = 2048);

  m.def(
      "top_eigenpairs",
      [](const MultiGraph& g, int K) {
        std::vector<std::pair<double, Eigen::VectorXd>> out;
        for (auto& p : top_eigenpairs(g, K)) out.emplace_back(p.value, std::move(p.vector));
        return out;
      },
      py::arg("g"), py::arg("K"));
  m.def(
      "edge_law",
      [](const MultiGraph& g, int K) {
        std::vector<double> ratios;
        for (const auto& row : edge_law_report(g, K).rows) ratios.push_back(row.ratio);
        return ratios;
      },
      py::arg("g"), py::arg("K"), "lambda_i / sqrt(Delta_i) for i = 1..K.");
  m.def(
      "localization",
      [](const MultiGraph& g, int K) {
        std::vector<std::pair<double, double>> out;
        for (const auto& row : localization_report(g, K)) out.emplace_back(row.sup_norm, row.second_largest);
        return out;
      },
      py::arg("g"), py::arg("K"), "(sup norm, second largest |coordinate|) per top eigenvector.");

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  m.def(
      "run_experiment",
      [](const std::string& config_text, const std::string& output_dir) {
        auto cfg = parse_config_text(config_text);
        cfg.output_dir = output_dir;
        const auto r = run(cfg);
        py::dict out;
        out["exit_code"] = r.exit_code;
        out["artifacts"] = r.artifacts;
        out["failures"] = r.failures;
        out["config_hash"] = config_hash(cfg);
        return out;
      },
      py::arg("config_text"), py::arg("output_dir"));
}
