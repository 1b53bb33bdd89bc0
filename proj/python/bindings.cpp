#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exind/conditional.hpp"
#include "exind/crosscheck.hpp"
#include "exind/estimation.hpp"
#include "exind/graph.hpp"
#include "exind/independence.hpp"
#include "exind/measure_io.hpp"
#include "exind/rng.hpp"
#include "exind/simulation.hpp"

namespace py = pybind11;
using namespace exind;

namespace {

// nlohmann::json -> Python objects through the json module; reports are small.
py::object to_python(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

IndexSet to_index_set(const std::vector<std::size_t>& indices) { return IndexSet::from_indices(indices); }

Bipartition to_bipartition(std::size_t d, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c) {
  return Bipartition(d, to_index_set(a), to_index_set(c));
}

py::array_t<double> batch_array(const SampleBatch& batch) {
  py::array_t<double> out({batch.n, batch.d});
  std::copy(batch.data.begin(), batch.data.end(), out.mutable_data());
  return out;
}

SampleBatch array_batch(const py::array_t<double, py::array::c_style | py::array::forcecast>& data, SampleKind kind,
                        std::optional<std::size_t> k) {
  if (data.ndim() != 2) throw std::invalid_argument("samples must be a 2-d array");
  SampleBatch batch;
  batch.kind = kind;
  batch.k = k;
  batch.n = static_cast<std::size_t>(data.shape(0));
  batch.d = static_cast<std::size_t>(data.shape(1));
  batch.data.assign(data.data(), data.data() + batch.n * batch.d);
  return batch;
}

ExponentMeasure make_measure(std::size_t d, const std::vector<std::pair<std::vector<double>, double>>& atoms) {
  std::vector<SpectralAtom> out;
  out.reserve(atoms.size());
  for (const auto& [omega, mass] : atoms) out.push_back({omega, mass});
  return ExponentMeasure(d, std::move(out));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Extremal independence for exponent measures with atoms on faces (0-based indices).";

  py::register_exception<InvalidMeasure>(m, "InvalidMeasure", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<ExponentMeasure>(m, "ExponentMeasure")
      .def(py::init(&make_measure), py::arg("d"), py::arg("atoms"),
           "atoms: sequence of (omega, mass); near-zero entries are snapped and rays merged")
      .def_property_readonly("dim", &ExponentMeasure::dim)
      .def_property_readonly("atoms",
                             [](const ExponentMeasure& self) {
                               std::vector<std::pair<std::vector<double>, double>> out;
                               for (const auto& a : self.atoms()) out.emplace_back(a.omega, a.mass);
                               return out;
                             })
      .def_property_readonly("faces",
                             [](const ExponentMeasure& self) {
                               std::vector<std::vector<std::size_t>> out;
                               for (IndexSet f : self.faces()) out.push_back(f.members());
                               return out;
                             })
      .def("to_json", [](const ExponentMeasure& self) { return to_json(self).dump(); })
      .def("__len__", &ExponentMeasure::size)
      .def("__eq__", [](const ExponentMeasure& a, const ExponentMeasure& b) { return a == b; })
      .def("__repr__", [](const ExponentMeasure& self) { return "ExponentMeasure(" + to_json(self).dump() + ")"; });

  m.def("parse_measure", [](const std::string& text) { return parse_measure(text); }, py::arg("text"));
  m.def("load_measure", [](const std::string& path) { return load_measure(path); }, py::arg("path"));
  m.def(
      "validate",
      [](const ExponentMeasure& measure) {
        std::vector<std::string> out;
        for (const auto& v : validate(measure)) out.push_back(v.to_string());
        return out;
      },
      py::arg("measure"));
  m.def(
      "exponent_function", [](const ExponentMeasure& measure, std::vector<double> x) { return exponent_function(measure, x); },
      py::arg("measure"), py::arg("x"));
  m.def(
      "marginalize",
      [](const ExponentMeasure& measure, const std::vector<std::size_t>& subset) {
        return marginalize(measure, to_index_set(subset));
      },
      py::arg("measure"), py::arg("subset"));
  m.def("margins", &margins, py::arg("measure"));
  m.def("standardize", &standardize, py::arg("measure"));
  m.def(
      "generate_random_measure",
      [](std::size_t d, std::size_t n_atoms, std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> block,
         std::uint64_t seed) {
        std::optional<Bipartition> part;
        if (block) part = to_bipartition(d, block->first, block->second);
        return generate_random_measure(d, n_atoms, part, seed);
      },
      py::arg("d"), py::arg("n_atoms"), py::arg("block") = py::none(), py::arg("seed"));

  m.def(
      "check",
      [](const ExponentMeasure& measure, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c) {
        return to_python(to_json(full_report(measure, to_bipartition(measure.dim(), a, c))));
      },
      py::arg("measure"), py::arg("A"), py::arg("C"), "Full independence report as a dict");
  m.def(
      "joint_exceedance_mass",
      [](const ExponentMeasure& measure, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c,
         std::vector<double> x) { return joint_exceedance_mass(measure, to_bipartition(measure.dim(), a, c), x); },
      py::arg("measure"), py::arg("A"), py::arg("C"), py::arg("x"));
  m.def(
      "structural_new_notion",
      [](const ExponentMeasure& measure, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c) {
        return structural_new_notion(measure, to_bipartition(measure.dim(), a, c)).holds;
      },
      py::arg("measure"), py::arg("A"), py::arg("C"));

  py::class_<ConditionalLaw>(m, "ConditionalLaw")
      .def_property_readonly("k", &ConditionalLaw::k)
      .def_property_readonly("normalizer", &ConditionalLaw::normalizer)
      .def_property_readonly("weights",
                             [](const ConditionalLaw& law) {
                               std::vector<double> w;
                               for (const auto& c : law.components()) w.push_back(c.weight);
                               return w;
                             })
      .def_property_readonly("r_min",
                             [](const ConditionalLaw& law) {
                               std::vector<double> r;
                               for (const auto& c : law.components()) r.push_back(c.r_min);
                               return r;
                             })
      .def(
          "rectangle_probability",
          [](const ConditionalLaw& law, std::vector<double> x) { return rectangle_probability(law, x); }, py::arg("x"))
      .def(
          "orthant_probability",
          [](const ConditionalLaw& law, std::vector<double> x) { return orthant_probability(law, x); }, py::arg("x"));
  m.def("build_conditional", &build_conditional, py::arg("measure"), py::arg("k"));

  m.def(
      "sample_max_stable",
      [](const ExponentMeasure& measure, std::size_t n, std::uint64_t seed) {
        return batch_array(sample_max_stable(measure, n, seed));
      },
      py::arg("measure"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_conditional",
      [](const ExponentMeasure& measure, std::size_t k, std::size_t n, std::uint64_t seed) {
        return batch_array(sample_conditional(measure, k, n, seed));
      },
      py::arg("measure"), py::arg("k"), py::arg("n"), py::arg("seed"));

  m.def("chi_exact", &chi_exact, py::arg("measure"), py::arg("i"), py::arg("j"));
  m.def(
      "chi_empirical",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples, double q) {
        const auto chi = chi_empirical(array_batch(samples, SampleKind::kMaxStable, std::nullopt), q);
        py::array_t<double> out({chi.d, chi.d});
        std::copy(chi.chi.begin(), chi.chi.end(), out.mutable_data());
        return out;
      },
      py::arg("samples"), py::arg("q") = kDefaultChiLevel);
  m.def(
      "factorization_test",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples, std::size_t k,
         const std::vector<std::size_t>& a, const std::vector<std::size_t>& c, std::size_t n_perm, double alpha,
         std::uint64_t seed) {
        const auto batch = array_batch(samples, SampleKind::kConditional, k);
        return to_python(to_json(factorization_test(batch, to_bipartition(batch.d, a, c), n_perm, alpha, seed)));
      },
      py::arg("samples"), py::arg("k"), py::arg("A"), py::arg("C"), py::arg("n_perm") = kDefaultPermutations,
      py::arg("alpha") = kDefaultAlpha, py::arg("seed"));

  m.def(
      "build_graph", [](const ExponentMeasure& measure) { return to_python(to_json(build_graph(measure))); },
      py::arg("measure"), "Graph dict with 1-based vertices, matching the CLI output");
  m.def(
      "finest_partition",
      [](const ExponentMeasure& measure) {
        std::vector<std::vector<std::size_t>> out;
        for (IndexSet block : finest_partition(measure)) out.push_back(block.members());
        return out;
      },
      py::arg("measure"));
  m.def("certify_partition_bruteforce", &certify_partition_bruteforce, py::arg("measure"));

  m.def(
      "crosscheck",
      [](std::size_t d_min, std::size_t d_max, std::size_t atoms_min, std::size_t atoms_max, std::size_t trials,
         std::uint64_t seed) {
        CrosscheckConfig config;
        config.d_min = d_min;
        config.d_max = d_max;
        config.atoms_min = atoms_min;
        config.atoms_max = atoms_max;
        config.trials = trials;
        config.seed = seed;
        return to_python(to_json(run_crosscheck(config)));
      },
      py::arg("d_min"), py::arg("d_max"), py::arg("atoms_min"), py::arg("atoms_max"), py::arg("trials"),
      py::arg("seed"));

  m.attr("RNG_ALGORITHM") = std::string(kRngAlgorithm);
}
