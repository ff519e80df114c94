// python/bindings.cc

// Copyright 2026  The rwt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Python module _rwt.  Thin wrappers; vectors and matrices cross as numpy
// arrays through pybind11's Eigen support.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rwt/commands.h"
#include "rwt/config.h"
#include "rwt/corpus_io.h"
#include "rwt/error.h"
#include "rwt/eval.h"
#include "rwt/experiment.h"
#include "rwt/plda.h"
#include "rwt/projection.h"
#include "rwt/stats.h"
#include "rwt/synth.h"
#include "rwt/whitening.h"

namespace py = pybind11;
using namespace rwt;

namespace {

py::dict ReportDict(const EvalReport &r) {
  py::dict d;
  d["eer"] = r.eer;
  for (const auto &name : r.op_names) {
    d[py::str(MetricKey("min", name))] = r.min_dcf.at(name);
    d[py::str(MetricKey("act", name))] = r.act_dcf.at(name);
  }
  d["c_primary"] = r.c_primary;
  d["n_target"] = r.n_target;
  d["n_nontarget"] = r.n_nontarget;
  return d;
}

std::vector<CorpusLevel> ToLevels(
    const std::vector<std::vector<std::pair<std::string, VectorSet>>> &levels) {
  std::vector<CorpusLevel> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    CorpusLevel l;
    l.level = static_cast<int>(i) + 1;
    for (const auto &[id, set] : levels[i]) l.candidates.push_back({id, set});
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_rwt, m) {
  m.doc() = "Recursive whitening backend for embedding-based speaker verification";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  // corpus_io
  py::enum_<TrialLabel>(m, "TrialLabel")
      .value("target", TrialLabel::kTarget)
      .value("nontarget", TrialLabel::kNontarget)
      .value("unknown", TrialLabel::kUnknown);

  py::class_<VectorEntry>(m, "VectorEntry")
      .def_readonly("id", &VectorEntry::id)
      .def_readonly("corpus", &VectorEntry::corpus)
      .def_readonly("speaker", &VectorEntry::speaker)
      .def_readonly("values", &VectorEntry::values);

  py::class_<VectorSet>(m, "VectorSet")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &VectorSet::dim)
      .def("__len__", &VectorSet::size)
      .def("__getitem__",
           [](const VectorSet &s, std::size_t i) {
             if (i >= s.size()) throw py::index_error();
             return s[i];
           })
      .def("add",
           py::overload_cast<std::string, std::string,
                             std::optional<std::string>, Eigen::VectorXd>(
               &VectorSet::Add),
           py::arg("id"), py::arg("corpus"), py::arg("speaker"),
           py::arg("values"))
      .def("corpus_ids", &VectorSet::CorpusIds)
      .def("select_corpora", &VectorSet::SelectCorpora)
      .def("matrix",
           [](const VectorSet &s) {
             Eigen::MatrixXd x(s.size(), s.dim());
             for (std::size_t i = 0; i < s.size(); ++i)
               x.row(static_cast<Eigen::Index>(i)) = s[i].values.transpose();
             return x;
           })
      .def("__eq__", &VectorSet::operator==);

  py::class_<Trial>(m, "Trial")
      .def(py::init<std::string, std::string, TrialLabel>())
      .def_readonly("enroll", &Trial::enroll)
      .def_readonly("test", &Trial::test)
      .def_readonly("label", &Trial::label);
  py::class_<TrialList>(m, "TrialList")
      .def(py::init<>())
      .def("add", &TrialList::Add)
      .def("__len__", &TrialList::size)
      .def("trials", &TrialList::trials);

  py::class_<Score>(m, "Score")
      .def(py::init<std::string, std::string, double, TrialLabel>())
      .def_readonly("enroll", &Score::enroll)
      .def_readonly("test", &Score::test)
      .def_readonly("score", &Score::score)
      .def_readonly("label", &Score::label);
  py::class_<ScoreSet>(m, "ScoreSet")
      .def(py::init<>())
      .def("add", &ScoreSet::Add)
      .def("__len__", &ScoreSet::size)
      .def("scores", &ScoreSet::scores);

  m.def("load_vector_table", &LoadVectorTable);
  m.def("save_vector_table", &SaveVectorTable, py::arg("set"), py::arg("path"),
        py::arg("comments") = std::vector<std::string>{});
  m.def("load_trials", &LoadTrials);
  m.def("load_scores", &LoadScores);
  m.def("save_scores", &SaveScores, py::arg("scores"), py::arg("path"),
        py::arg("comments") = std::vector<std::string>{});

  // stats
  py::class_<Moments>(m, "Moments")
      .def_readonly("mean", &Moments::mean)
      .def_readonly("cov", &Moments::cov)
      .def_readonly("n", &Moments::n)
      .def_readonly("corpus_id", &Moments::corpus_id);
  m.def("estimate_moments",
        [](const std::vector<Eigen::VectorXd> &v, std::string id, double g) {
          return EstimateMoments(v, std::move(id), g);
        },
        py::arg("vectors"), py::arg("corpus_id"), py::arg("shrinkage"));
  m.def("cholesky_lower", &CholeskyLower);
  m.def("whitening_matrix",
        py::overload_cast<const Eigen::MatrixXd &>(&WhiteningMatrix));
  m.def("gaussian_loglik", &GaussianLogLik);

  // whitening
  py::class_<WhiteningStage>(m, "WhiteningStage")
      .def_readonly("level", &WhiteningStage::level)
      .def_readonly("corpus_id", &WhiteningStage::corpus_id)
      .def_readonly("mean", &WhiteningStage::mean)
      .def_readonly("transform", &WhiteningStage::transform);
  py::class_<LevelSelection>(m, "LevelSelection")
      .def_readonly("level", &LevelSelection::level)
      .def_readonly("candidates", &LevelSelection::candidates)
      .def_readonly("logliks", &LevelSelection::logliks)
      .def_readonly("chosen", &LevelSelection::chosen);
  py::class_<RecursiveWhitener>(m, "RecursiveWhitener")
      .def_property_readonly("stages", &RecursiveWhitener::stages)
      .def_property_readonly("selection_log", &RecursiveWhitener::selection_log)
      .def("transform", &RecursiveWhitener::Transform)
      .def("transform_set", &RecursiveWhitener::TransformSet)
      .def("serialize", &RecursiveWhitener::Serialize,
           py::arg("comments") = std::vector<std::string>{})
      .def_static("parse", &RecursiveWhitener::Parse, py::arg("text"),
                  py::arg("source") = "<string>")
      .def("save", &RecursiveWhitener::Save, py::arg("path"),
           py::arg("comments") = std::vector<std::string>{})
      .def_static("load", &RecursiveWhitener::Load)
      .def("__eq__", &RecursiveWhitener::operator==);
  m.def("fit_stage", &FitStage, py::arg("data"), py::arg("level") = 0,
        py::arg("shrinkage") = std::nullopt, py::arg("corpus_id") = "");
  m.def("apply_stage", &ApplyStage);
  m.def("length_normalize", &LengthNormalize);
  m.def("select_subcorpus",
        [](const std::vector<Moments> &c, const std::vector<Eigen::VectorXd> &t) {
          const SelectionResult r = SelectSubcorpus(c, t);
          return py::make_tuple(r.chosen, r.logliks);
        });
  m.def("fit_recursive",
        [](const VectorSet &in_domain,
           const std::vector<std::vector<std::pair<std::string, VectorSet>>> &levels,
           const VectorSet &targets, std::optional<double> shrinkage) {
          return FitRecursive(in_domain, ToLevels(levels), targets, shrinkage);
        },
        py::arg("in_domain"), py::arg("levels"), py::arg("targets"),
        py::arg("shrinkage") = std::nullopt,
        "levels: one list of (candidate_id, VectorSet) pairs per level");

  // plda
  py::class_<PldaModel>(m, "PldaModel")
      .def(py::init<Eigen::VectorXd, Eigen::MatrixXd, Eigen::MatrixXd,
                    std::optional<int>>(),
           py::arg("mean"), py::arg("ac"), py::arg("wc"),
           py::arg("rank") = std::nullopt)
      .def_property_readonly("mean", &PldaModel::mean)
      .def_property_readonly("ac", &PldaModel::ac)
      .def_property_readonly("wc", &PldaModel::wc)
      .def_property_readonly("rank", &PldaModel::rank)
      .def("score_pair", &PldaModel::ScorePair)
      .def("serialize", &PldaModel::Serialize,
           py::arg("comments") = std::vector<std::string>{})
      .def_static("parse", &PldaModel::Parse, py::arg("text"),
                  py::arg("source") = "<string>")
      .def("save", &PldaModel::Save, py::arg("path"),
           py::arg("comments") = std::vector<std::string>{})
      .def_static("load", &PldaModel::Load);
  m.def("train_plda", &TrainPlda, py::arg("data"),
        py::arg("rank") = std::nullopt);
  m.def("score_trials", &ScoreTrials);

  // eval
  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def(py::init([](std::string name, double p, double cm, double cf) {
             OperatingPoint op{std::move(name), p, cm, cf};
             op.Validate();
             return op;
           }),
           py::arg("name"), py::arg("p_target"), py::arg("c_miss") = 1.0,
           py::arg("c_fa") = 1.0)
      .def_readonly("name", &OperatingPoint::name)
      .def_readonly("p_target", &OperatingPoint::p_target)
      .def_readonly("c_miss", &OperatingPoint::c_miss)
      .def_readonly("c_fa", &OperatingPoint::c_fa);
  m.def("default_operating_points", &DefaultOperatingPoints);
  m.def("compute_eer", &ComputeEer);
  m.def("compute_min_dcf", &ComputeMinDcf);
  m.def("compute_act_dcf", &ComputeActDcf, py::arg("scores"), py::arg("op"),
        py::arg("threshold") = std::nullopt);
  m.def("evaluate",
        [](const ScoreSet &s, std::optional<std::vector<OperatingPoint>> ops) {
          return ReportDict(Evaluate(s, ops ? *ops : DefaultOperatingPoints()));
        },
        py::arg("scores"), py::arg("ops") = std::nullopt);
  m.def("snorm", &SNorm);
  m.def("fuse", &Fuse);

  // synth
  py::class_<SubcorpusSpec>(m, "SubcorpusSpec")
      .def(py::init<std::string, double, double>(), py::arg("name"),
           py::arg("shift"), py::arg("kappa"))
      .def_readwrite("name", &SubcorpusSpec::name)
      .def_readwrite("shift", &SubcorpusSpec::shift)
      .def_readwrite("kappa", &SubcorpusSpec::kappa);
  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init(&SynthConfig::Default))
      .def_readwrite("dim", &SynthConfig::dim)
      .def_readwrite("seed", &SynthConfig::seed)
      .def_readwrite("across_var", &SynthConfig::across_var)
      .def_readwrite("within_var", &SynthConfig::within_var)
      .def_readwrite("ood_speakers", &SynthConfig::ood_speakers)
      .def_readwrite("ood_sessions", &SynthConfig::ood_sessions)
      .def_readwrite("subcorpora", &SynthConfig::subcorpora)
      .def_readwrite("indomain_speakers", &SynthConfig::indomain_speakers)
      .def_readwrite("enroll_sessions", &SynthConfig::enroll_sessions)
      .def_readwrite("test_sessions", &SynthConfig::test_sessions)
      .def_readwrite("unlabeled", &SynthConfig::unlabeled)
      .def_readwrite("unlabeled_speakers", &SynthConfig::unlabeled_speakers)
      .def_readwrite("indomain_shift", &SynthConfig::indomain_shift)
      .def_readwrite("indomain_scale", &SynthConfig::indomain_scale)
      .def_readwrite("indomain_kappa", &SynthConfig::indomain_kappa)
      .def_readwrite("shared_basis", &SynthConfig::shared_basis);
  py::class_<SynthWorld>(m, "SynthWorld")
      .def_readonly("ood_labeled", &SynthWorld::ood_labeled)
      .def_readonly("indomain_unlabeled", &SynthWorld::indomain_unlabeled)
      .def_readonly("enroll", &SynthWorld::enroll)
      .def_readonly("test", &SynthWorld::test)
      .def_readonly("trials", &SynthWorld::trials);
  m.def("generate_world", &GenerateWorld);
  m.def("random_spd", &RandomSpd, py::arg("dim"), py::arg("kappa"),
        py::arg("seed"));

  // projection
  py::class_<Projection>(m, "Projection")
      .def_readonly("ids", &Projection::ids)
      .def_readonly("corpora", &Projection::corpora)
      .def_readonly("coords", &Projection::coords)
      .def_readonly("components", &Projection::components)
      .def_readonly("variances", &Projection::variances);
  m.def("pca_project", &PcaProject, py::arg("data"),
        py::arg("n_components") = 2);

  // commands
  m.def("run_experiment",
        [](const std::string &config_text, const std::string &out_dir) {
          return CmdRunExperiment(Config::Parse(config_text, "<string>"), out_dir);
        },
        py::arg("config_text"), py::arg("out_dir"),
        "Runs the level comparison; returns the comparison table.");
  m.def("synth",
        [](const std::string &config_text, const std::string &out_dir) {
          CmdSynth(Config::Parse(config_text, "<string>"), out_dir);
        },
        py::arg("config_text"), py::arg("out_dir"));
}
