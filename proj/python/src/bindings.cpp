#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agerec/baselines.hpp"
#include "agerec/corpus.hpp"
#include "agerec/error.hpp"
#include "agerec/evaluation.hpp"
#include "agerec/explain.hpp"
#include "agerec/feature_registry.hpp"
#include "agerec/interval_metrics.hpp"
#include "agerec/model.hpp"
#include "agerec/pipeline.hpp"
#include "agerec/synthetic.hpp"
#include "agerec/text.hpp"

namespace py = pybind11;
using namespace agerec;

namespace {

Dataset dataset(const Corpus& corpus, const std::string& level) {
  static const HeuristicAnnotator annotator;
  static const ResourceBundle resources = ResourceBundle::bundled();
  return make_dataset(corpus, extract_corpus_features(corpus, annotator, resources),
                      parse_level(level));
}

}  // namespace

PYBIND11_MODULE(_agerec, m) {
  m.doc() = "Readability and age-range recommendation toolkit";

  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SchemaMismatch>(m, "SchemaMismatch", PyExc_ValueError);
  py::register_exception<TrainingDiverged>(m, "TrainingDiverged", PyExc_RuntimeError);

  py::class_<AgeRange>(m, "AgeRange")
      .def(py::init(&AgeRange::make), py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &AgeRange::lo)
      .def_readonly("hi", &AgeRange::hi)
      .def("mean", &AgeRange::mean)
      .def("__repr__", [](const AgeRange& r) { return "AgeRange" + to_string(r); });

  m.def("mu_e", &mu_e, py::arg("reference"), py::arg("hypothesis"));
  m.def("l2", &l2, py::arg("reference"), py::arg("hypothesis"));
  m.def("theta_l2", &theta_l2, py::arg("reference"), py::arg("hypothesis"), py::arg("alpha") = 0.5);
  m.def("jaccard", &jaccard, py::arg("reference"), py::arg("hypothesis"));
  m.def("beta_ie", &beta_ie, py::arg("reference"), py::arg("hypothesis"),
        py::arg("beta") = 1.0 / 3.0);

  m.def("flesch_kincaid_age", [](double w, double s, double syl, double base) {
    return flesch_kincaid_age(w, s, syl, base).lo;
  }, py::arg("words"), py::arg("sentences"), py::arg("syllables"), py::arg("base_age") = 5.5);

  py::class_<RangePrediction>(m, "RangePrediction")
      .def_readonly("lo", &RangePrediction::lo)
      .def_readonly("hi", &RangePrediction::hi)
      .def_readonly("mu", &RangePrediction::mu)
      .def_readonly("normalized", &RangePrediction::normalized)
      .def_static("normalize", [](double lo, double hi) { return RangePrediction::normalize(lo, hi); })
      .def("__repr__", [](const RangePrediction& p) {
        return "RangePrediction[" + std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]";
      });
  m.def("aggregate_mean", [](const std::vector<RangePrediction>& ps) { return aggregate_mean(ps); });

  m.def("sentence_split", [](const std::string& t) { return sentence_split(t); });
  m.def("tokenize", &tokenize);

  m.def("feature_names", [] { return expert_schema().columns; });
  m.def("registry_fingerprint", &registry_fingerprint);

  py::class_<Document>(m, "Document")
      .def_readonly("id", &Document::id)
      .def_property_readonly("genre", [](const Document& d) { return std::string(genre_name(d.genre)); })
      .def_readonly("age", &Document::age)
      .def_readonly("sentences", &Document::sentences);
  py::class_<Corpus>(m, "Corpus")
      .def("__len__", &Corpus::size)
      .def_readonly("documents", &Corpus::documents)
      .def("save", [](const Corpus& c, const std::string& path) { save_corpus(path, c); });
  m.def("load_corpus", [](const std::string& path) { return load_corpus(path); });
  m.def("generate_synthetic_corpus", &generate_synthetic_corpus, py::arg("seed"), py::arg("size"),
        py::arg("profile") = "monotone");
  m.def("split_corpus", [](const Corpus& c, double tr, double va, double te, std::uint64_t seed) {
    const auto s = split_corpus(c, SplitSpec{tr, va, te, seed});
    return py::make_tuple(s.train, s.validation, s.test);
  }, py::arg("corpus"), py::arg("train") = 0.683, py::arg("validation") = 0.165,
     py::arg("test") = 0.152, py::arg("seed") = 1);

  // Returns (keys, X, targets) where targets is an (n, 2) array of bounds.
  m.def("features", [](const Corpus& c, const std::string& level) {
    const auto ds = dataset(c, level);
    return py::make_tuple(ds.keys, ds.X, targets_matrix(ds.targets));
  }, py::arg("corpus"), py::arg("level") = "text");

  py::class_<ModelArtifact>(m, "Model")
      .def_property_readonly("kind", [](const ModelArtifact& a) { return std::string(model_kind_name(a.kind)); })
      .def_property_readonly("id", &ModelArtifact::id)
      .def_property_readonly("fingerprint", [](const ModelArtifact& a) { return a.schema.fingerprint; })
      .def("predict", [](const ModelArtifact& a, const Eigen::MatrixXd& X) {
        return predict_batch(a, a.schema, X);
      })
      .def("save", [](const ModelArtifact& a, const std::string& path) { save_model(a, path); });

  m.def("train", [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const std::string& kind,
                    std::uint64_t seed, int epochs, int estimators, int hidden_layers,
                    int hidden_units) {
    if (Y.cols() != 2 || Y.rows() != X.rows()) throw InvalidArgument("targets must be (n, 2)");
    std::vector<AgeRange> ys;
    for (Eigen::Index i = 0; i < Y.rows(); ++i) ys.push_back(AgeRange::make(Y(i, 0), Y(i, 1)));
    TrainConfig cfg;
    cfg.kind = parse_model_kind(kind);
    cfg.seed = seed;
    cfg.epochs = epochs;
    cfg.n_estimators = estimators;
    cfg.hidden_layers = hidden_layers;
    cfg.hidden_units = hidden_units;
    const Schema schema = X.cols() == kFeatureCount ? expert_schema() : [&] {
      std::vector<std::string> cols;
      for (Eigen::Index j = 0; j < X.cols(); ++j) cols.push_back("x" + std::to_string(j));
      return Schema::of(cols);
    }();
    py::gil_scoped_release release;
    return train_model(schema, X, ys, cfg);
  }, py::arg("X"), py::arg("Y"), py::arg("kind") = "ff", py::arg("seed") = 1,
     py::arg("epochs") = 500, py::arg("estimators") = 100, py::arg("hidden_layers") = 6,
     py::arg("hidden_units") = 200);
  m.def("load_model", &load_model);

  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); });
}
