#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "rift/dataset.hpp"
#include "rift/error.hpp"
#include "rift/judge.hpp"
#include "rift/metrics.hpp"
#include "rift/prompts.hpp"
#include "rift/review_store.hpp"
#include "rift/signals.hpp"
#include "rift/taxonomy.hpp"

namespace py = pybind11;
using namespace rift;

namespace {

// Structured values cross the boundary as JSON text; the Python package
// turns them into dicts.
template <typename T>
T from_text(const std::string& text) {
  return Json::parse(text).get<T>();
}

BinaryMatrix matrix(const std::vector<std::vector<Cell>>& rows) { return BinaryMatrix::from_rows(rows); }

py::dict calibration_dict(const CalibrationResult& r) {
  py::dict d;
  d["threshold"] = r.threshold;
  d["direction"] = to_string(r.direction);
  d["f1"] = r.f1;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["auc"] = r.auc ? py::object(py::float_(*r.auc)) : py::object(py::none());
  d["n_positive"] = r.n_positive;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rubric failure-mode diagnostics: agreement statistics, judge aggregation, signals.";
  m.attr("__version__") = RIFT_VERSION;

  static py::exception<Error> base(m, "RiftError");
  static py::exception<UsageError> usage(m, "UsageError", base.ptr());
  static py::exception<DataError> data(m, "DataError", base.ptr());
  static py::exception<ProviderError> provider(m, "ProviderError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = provider;
      if (e.kind() == ErrorKind::usage) cls = usage;
      if (e.kind() == ErrorKind::data) cls = data;
      py::object inst = cls(e.what());
      inst.attr("code") = e.code();
      PyErr_SetObject(cls.ptr(), inst.ptr());
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("pairwise_agreement", [](const std::vector<std::vector<Cell>>& rows) {
    return pairwise_agreement(matrix(rows));
  }, py::arg("rows"));
  m.def("cohen_kappa", [](const std::vector<Cell>& a, const std::vector<Cell>& b) {
    return cohen_kappa(a, b);
  }, py::arg("rater_a"), py::arg("rater_b"));
  m.def("mean_pairwise_kappa", [](const std::vector<std::vector<Cell>>& rows) {
    return mean_pairwise_kappa(matrix(rows));
  }, py::arg("rows"));
  m.def("krippendorff_alpha", [](const std::vector<std::vector<Cell>>& rows) {
    return krippendorff_alpha(matrix(rows));
  }, py::arg("rows"));
  m.def("consolidate_gold", [](const std::vector<Cell>& votes) { return consolidate_gold(votes); },
        py::arg("votes"));
  m.def("f1_threshold_sweep", [](const std::vector<double>& scores, const std::vector<bool>& gold) {
    return calibration_dict(f1_threshold_sweep(scores, gold));
  }, py::arg("scores"), py::arg("gold"));
  m.def("roc_auc", [](const std::vector<double>& scores, const std::vector<bool>& gold) {
    return roc_auc_direction_agnostic(scores, gold);
  }, py::arg("scores"), py::arg("gold"));
  m.def("pearson_r", [](const std::vector<double>& x, const std::vector<double>& y, int permutations,
                        std::uint64_t seed) {
    auto r = pearson_r(x, y, permutations, seed);
    py::dict d;
    d["r"] = r.r;
    d["p_value"] = r.p_value;
    d["n"] = r.n;
    d["permutations"] = r.permutations;
    return d;
  }, py::arg("x"), py::arg("y"), py::arg("permutations") = 1000, py::arg("seed") = 0);

  m.def("majority_vote", [](const std::string& verdicts, int n_runs) {
    return majority_vote(from_text<std::vector<JudgeVerdict>>(verdicts), n_runs);
  }, py::arg("verdicts_json"), py::arg("n_runs"));

  m.def("default_taxonomy", [] { return Json(load_default_taxonomy()).dump(); });
  m.def("validate_taxonomy", [](const std::string& t) {
    return Json(validate_taxonomy(from_text<Taxonomy>(t))).dump();
  }, py::arg("taxonomy_json"));
  m.def("diff_taxonomies", [](const std::string& a, const std::string& b) {
    return Json(diff_taxonomies(from_text<Taxonomy>(a), from_text<Taxonomy>(b))).dump();
  }, py::arg("old_json"), py::arg("new_json"));
  m.def("build_annotation_prompt", [](const std::string& t, const std::string& r) {
    return build_annotation_prompt(from_text<Taxonomy>(t), from_text<Rubric>(r));
  }, py::arg("taxonomy_json"), py::arg("rubric_json"));

  m.def("plan_rounds", [](const std::string& config_path) {
    auto cfg = load_dataset_config(config_path);
    return Json(plan_all(cfg, load_pool(cfg))).dump();
  }, py::arg("dataset_config_path"));

  m.def("irr_signal", [](const std::string& labels) {
    return irr_signal(from_text<std::vector<PreferenceLabel>>(labels)).value;
  }, py::arg("labels_json"));
  m.def("alignment_signal", [](const std::string& labels, const std::string& reference,
                               const std::vector<std::string>& weak) {
    return alignment_signal(from_text<std::vector<PreferenceLabel>>(labels), reference, weak).value;
  }, py::arg("labels_json"), py::arg("reference_labeler"), py::arg("weak_labelers"));
  m.def("population_variance", &population_variance, py::arg("values"));

  m.def("replay_review_log", [](const std::string& path) {
    return state_to_json(replay_log(path)).dump();
  }, py::arg("log_path"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
