// tests/acceptance.cc

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

// Acceptance checks.  Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oracles.h"
#include "rwt/commands.h"
#include "rwt/error.h"
#include "rwt/experiment.h"
#include "rwt/plda.h"
#include "rwt/rng.h"
#include "rwt/stats.h"
#include "rwt/synth.h"
#include "rwt/whitening.h"

namespace rwt {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string Fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char *format, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, format);
  std::vsnprintf(buf, sizeof(buf), format, ap);
  va_end(ap);
  return buf;
}

VectorSet ToSet(const std::vector<Eigen::VectorXd> &xs, const std::string &corpus) {
  VectorSet set(static_cast<int>(xs.front().size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    set.Add(corpus + std::to_string(i), corpus, std::nullopt, xs[i]);
  return set;
}

Outcome Whiteness() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  const int d = 20;
  const Eigen::MatrixXd cov = oracle::RandomSpd(d, 2.0, rng);
  const Eigen::VectorXd mu = rng.normal_vector(d) * 3.0;
  const auto xs = oracle::Gaussian(2000, mu, cov, rng);
  const WhiteningStage st = FitStage(ToSet(xs, "c"), 0, 0.0);
  std::vector<Eigen::VectorXd> ys;
  for (const auto &x : xs) ys.push_back(ApplyStage(st, x));
  // A fresh draw from the same distribution, reported for context only.
  std::vector<Eigen::VectorXd> zs;
  for (const auto &x : oracle::Gaussian(2000, mu, cov, rng))
    zs.push_back(ApplyStage(st, x));
  const double dt = Seconds(t0);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const double cov_err = oracle::MaxAbs(oracle::Covariance(ys) - id);
  const double mean_err = oracle::Mean(ys).cwiseAbs().maxCoeff();
  const double held_cov = oracle::MaxAbs(oracle::Covariance(zs) - id);
  const double held_mean = oracle::Mean(zs).cwiseAbs().maxCoeff();
  return {cov_err < 0.15 && mean_err < 0.05 && dt < 1.0,
          Fmt("cov err %.2e mean err %.2e (held-out draw, not gated: "
              "%.3f / %.3f), %.3fs",
              cov_err, mean_err, held_cov, held_mean, dt)};
}

Outcome Factorization() {
  Rng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(rng.next() % 64);
    const Eigen::MatrixXd a = oracle::RandomSpd(d, 4.0 * rng.uniform(), rng);
    const Eigen::MatrixXd l = CholeskyLower(a);
    worst = std::max(worst, oracle::MaxAbs(l * l.transpose() - a) /
                                oracle::MaxAbs(a));
  }
  return {worst < 1e-10, Fmt("worst relative error %.2e", worst)};
}

Outcome Selection() {
  Rng rng(1003);
  int agree = 0, ties = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int d = 1 + static_cast<int>(rng.next() % 16);
    const int k = 1 + static_cast<int>(rng.next() % 5);
    std::vector<Moments> cands;
    for (int j = 0; j < k; ++j) {
      Moments m;
      m.mean = rng.normal_vector(d) * 0.5;
      m.cov = oracle::RandomSpd(d, rng.uniform(), rng);
      m.n = 100;
      m.corpus_id = "c" + std::to_string(j);
      cands.push_back(m);
    }
    // Every third instance plants an exact tie by duplicating a candidate.
    if (inst % 3 == 0 && k > 1) {
      const std::size_t src = rng.next() % k;
      const std::size_t dst = rng.next() % k;
      cands[dst] = cands[src];
    }
    const int n = 1 + static_cast<int>(rng.next() % 20);
    std::vector<Eigen::VectorXd> targets;
    for (int i = 0; i < n; ++i) targets.push_back(rng.normal_vector(d));

    std::vector<double> sums;
    for (const auto &c : cands) {
      double s = 0.0;
      for (const auto &t : targets) s += oracle::LogDensity(t, c.mean, c.cov);
      sums.push_back(s);
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < sums.size(); ++j)
      if (sums[j] > sums[best] + 1e-9 * std::abs(sums[best])) best = j;
    bool tied = false;
    for (std::size_t j = 0; j < best; ++j)
      if (cands[j].mean == cands[best].mean && cands[j].cov == cands[best].cov)
        tied = true;

    const SelectionResult r = SelectSubcorpus(cands, targets);
    bool ok = r.chosen == best;
    for (std::size_t j = 0; j < sums.size(); ++j)
      ok = ok && std::abs(r.logliks[j] - sums[j]) <= 1e-9 * std::abs(sums[j]);
    // Exact duplicates must produce bit-identical sums.
    for (std::size_t a = 0; a < cands.size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (cands[a].mean == cands[b].mean && cands[a].cov == cands[b].cov) {
          ++ties;
          ok = ok && r.logliks[a] == r.logliks[b] && r.chosen != a;
        }
    (void)tied;
    agree += ok;
  }
  return {agree == 100, Fmt("%d/100 instances agree, %d engineered ties", agree, ties)};
}

Outcome Reduction() {
  Rng rng(1004);
  const int d = 12;
  const auto xs = oracle::Gaussian(300, rng.normal_vector(d),
                                   oracle::RandomSpd(d, 1.5, rng), rng);
  const VectorSet in = ToSet(xs, "in");
  const RecursiveWhitener w = FitRecursive(in, {}, in, std::nullopt);
  // Direct path from the stored parameters: f = W (x - mu); f / |f|.
  const Eigen::VectorXd mu = w.stages()[0].mean;
  const Eigen::MatrixXd wm = w.stages()[0].transform;
  // The stored parameters themselves against independently computed ones.
  const Eigen::MatrixXd c = oracle::Covariance(xs);
  Eigen::MatrixXd reg = c;
  reg += (DefaultShrinkage(300, d) * c.trace() / d + kCovarianceFloor) *
         Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(reg).matrixL();
  const double param_err = std::max(
      oracle::MaxAbs(mu - oracle::Mean(xs)),
      oracle::MaxAbs(wm * l - Eigen::MatrixXd::Identity(d, d)));
  int exact = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::VectorXd v = rng.normal_vector(d) * 2.0;
    const Eigen::VectorXd centered = v - mu;
    const Eigen::VectorXd f = wm * centered;
    const Eigen::VectorXd direct = f / f.norm();
    exact += (w.Transform(v).array() == direct.array()).all();
  }
  return {exact == 1000 && param_err < 1e-9,
          Fmt("%d/1000 bit-identical, parameter error %.2e", exact, param_err)};
}

Outcome PldaOracle() {
  Rng rng(1005);
  double worst = 0.0;
  bool symmetric = true, zero = true;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(rng.next() % 5);
    const Eigen::VectorXd mu = rng.normal_vector(d);
    const Eigen::MatrixXd ac = oracle::RandomSpd(d, 2.0 * rng.uniform(), rng);
    const Eigen::MatrixXd wc = oracle::RandomSpd(d, 2.0 * rng.uniform(), rng);
    const PldaModel m(mu, ac, wc);
    const Eigen::VectorXd e = mu + rng.normal_vector(d) * 2.0;
    const Eigen::VectorXd t = mu + rng.normal_vector(d) * 2.0;
    worst = std::max(worst, std::abs(m.ScorePair(e, t) -
                                     oracle::JointPldaLlr(mu, ac, wc, e, t)));
    symmetric = symmetric && m.ScorePair(e, t) == m.ScorePair(t, e);
    const PldaModel flat(mu, Eigen::MatrixXd::Zero(d, d), wc);
    zero = zero && flat.ScorePair(e, t) == 0.0;
  }
  return {worst < 1e-8 && symmetric && zero,
          Fmt("max |llr - oracle| %.2e, symmetric %s, ac=0 gives 0 %s", worst,
              symmetric ? "yes" : "no", zero ? "yes" : "no")};
}

Outcome PldaRecovery() {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = 10;
  // Strongly anisotropic speaker covariance and a smaller session
  // covariance; see README for why these generating values.
  const Eigen::MatrixXd ac = 10.0 * RandomSpd(d, 1e4, 61);
  const Eigen::MatrixXd wc = RandomSpd(d, 10.0, 62);
  Rng rng(1006);
  const Eigen::MatrixXd lac = CholeskyLower(ac), lwc = CholeskyLower(wc);
  VectorSet data(d);
  for (int s = 0; s < 500; ++s) {
    const std::string spk = "s" + std::to_string(s);
    const Eigen::VectorXd y = lac * rng.normal_vector(d);
    for (int k = 0; k < 8; ++k)
      data.Add(spk + "_" + std::to_string(k), "c", spk,
               y + lwc * rng.normal_vector(d));
  }
  const PldaModel m = TrainPlda(data, std::nullopt);
  const double dt = Seconds(t0);
  const double eac = (m.ac() - ac).norm() / ac.norm();
  const double ewc = (m.wc() - wc).norm() / wc.norm();
  return {eac < 0.10 && ewc < 0.10 && dt < 5.0,
          Fmt("ac rel err %.3f, wc rel err %.3f, %.2fs", eac, ewc, dt)};
}

ScoreSet RandomScoreSet(Rng &rng, int n, bool quantized) {
  ScoreSet s;
  bool have_t = false, have_n = false;
  for (int i = 0; i < n; ++i) {
    const bool target = rng.uniform() < 0.2;
    double x = rng.normal() + (target ? 2.0 : 0.0);
    if (quantized) x = std::round(x * 16.0) / 16.0;
    if (i == n - 1 && !have_t) {
      s.Add({"m", "x" + std::to_string(i), x, TrialLabel::kTarget});
      have_t = true;
      continue;
    }
    if (i == n - 2 && !have_n) {
      s.Add({"m", "x" + std::to_string(i), x, TrialLabel::kNontarget});
      have_n = true;
      continue;
    }
    s.Add({"m", "x" + std::to_string(i), x,
           target ? TrialLabel::kTarget : TrialLabel::kNontarget});
    have_t |= target;
    have_n |= !target;
  }
  return s;
}

ScoreSet Labeled(const std::vector<double> &tar, const std::vector<double> &non) {
  ScoreSet s;
  for (std::size_t i = 0; i < tar.size(); ++i)
    s.Add({"m", "t" + std::to_string(i), tar[i], TrialLabel::kTarget});
  for (std::size_t i = 0; i < non.size(); ++i)
    s.Add({"m", "n" + std::to_string(i), non[i], TrialLabel::kNontarget});
  return s;
}

Outcome MetricOracle() {
  Rng rng(1007);
  int agree = 0;
  bool act_ok = true;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + static_cast<int>(rng.next() % 999);
    const ScoreSet s = RandomScoreSet(rng, n, i % 2 == 0);
    bool ok = ComputeEer(s) == oracle::Eer(s);
    for (const auto &op : DefaultOperatingPoints()) {
      ok = ok && ComputeMinDcf(s, op) == oracle::MinDcf(s, op);
      act_ok = act_ok && ComputeActDcf(s, op) >= ComputeMinDcf(s, op);
    }
    agree += ok;
  }
  const double e_sep = ComputeEer(Labeled({2, 3}, {0, 1}));
  const double e_inv = ComputeEer(Labeled({1}, {2}));
  const ScoreSet flat = Labeled({0.3, 0.3, 0.3}, {0.3, 0.3, 0.3, 0.3, 0.3});
  bool flat_ok = true;
  for (const auto &op : DefaultOperatingPoints())
    flat_ok = flat_ok && ComputeMinDcf(flat, op) == 1.0;
  return {agree == 50 && e_sep == 0.0 && e_inv == 1.0 && flat_ok && act_ok,
          Fmt("%d/50 sets agree exactly; EER separated %.1f, inverted %.1f; "
              "flat minDCF %s; act>=min %s",
              agree, e_sep, e_inv, flat_ok ? "1" : "!=1", act_ok ? "yes" : "no")};
}

Outcome RankInvariance() {
  Rng rng(1008);
  int same = 0;
  const std::vector<std::function<double(double)>> maps = {
      [](double x) { return 2.0 * x + 1.0; },
      [](double x) { return 0.25 * x - 3.0; },
      [](double x) { return x * x * x + x; },
  };
  int total = 0;
  for (int i = 0; i < 20; ++i) {
    // Dyadic scores keep every map exact in floating point.
    const ScoreSet s = RandomScoreSet(rng, 50 + 40 * i, true);
    for (const auto &f : maps) {
      ScoreSet g;
      for (const auto &x : s) g.Add({x.enroll, x.test, f(x.score), x.label});
      bool ok = ComputeEer(g) == ComputeEer(s);
      for (const auto &op : DefaultOperatingPoints())
        ok = ok && ComputeMinDcf(g, op) == ComputeMinDcf(s, op);
      same += ok;
      ++total;
    }
  }
  return {same == total, Fmt("%d/%d mapped score sets unchanged", same, total)};
}

ExperimentConfig SynthExperiment(const SynthConfig &sc) {
  ExperimentConfig ec;
  ec.synth = sc;
  for (const auto &s : sc.subcorpora) {
    if (ec.hierarchy.empty()) ec.hierarchy.emplace_back();
    ec.hierarchy[0].push_back({s.name, {s.name}});
  }
  ec.levels = {0, 1};
  return ec;
}

Outcome Directional() {
  const auto t0 = std::chrono::steady_clock::now();
  int wins = 0;
  double rel = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthConfig sc = SynthConfig::Default();
    sc.seed = seed;
    const ExperimentConfig ec = SynthExperiment(sc);
    const auto r = RunExperiment(ec, LoadExperimentData(ec));
    const double e0 = r[0].report.eer, e1 = r[1].report.eer;
    wins += e1 < e0;
    rel += (e0 - e1) / e0;
    per_seed += Fmt(" %.3f>%.3f", e0, e1);
  }
  rel /= 10.0;
  const double dt = Seconds(t0);
  std::printf("    eer level0>level1 per seed:%s\n", per_seed.c_str());
  return {wins >= 8 && rel > 0.05 && dt < 120.0,
          Fmt("level 1 better in %d/10 seeds, mean relative EER reduction "
              "%.1f%%, %.1fs", wins, 100.0 * rel, dt)};
}

Outcome Harmless() {
  SynthConfig sc = SynthConfig::Default();
  sc.indomain_shift = 0.0;
  sc.indomain_scale = 1.0;
  // No mismatch anywhere: every sub-corpus shares the in-domain mean and,
  // through the shared basis and equal kappa, its covariance.
  for (auto &s : sc.subcorpora) {
    s.shift = 0.0;
    s.kappa = sc.indomain_kappa;
  }
  const ExperimentConfig ec = SynthExperiment(sc);
  const auto r = RunExperiment(ec, LoadExperimentData(ec));
  const double diff = std::abs(r[1].report.c_primary - r[0].report.c_primary);
  return {diff < 0.02, Fmt("c_primary %.4f vs %.4f, |diff| %.4f",
                           r[0].report.c_primary, r[1].report.c_primary, diff)};
}

Outcome TinyInDomain() {
  SynthConfig sc = SynthConfig::Default();
  sc.dim = 200;
  sc.unlabeled = 100;
  sc.seed = 11;
  const ExperimentConfig ec = SynthExperiment(sc);
  try {
    const ExperimentData data = LoadExperimentData(ec);
    const RecursiveWhitener w0 = FitWhitenerForDepth(ec, data, 0);
    bool finite = w0.stages()[0].transform.allFinite();
    for (const auto &e : w0.TransformSet(data.unlabeled))
      finite = finite && e.values.allFinite();
    for (const auto &e : w0.TransformSet(data.ood))
      finite = finite && e.values.allFinite();
    const auto r = RunExperiment(ec, data);
    finite = finite && std::isfinite(r[0].report.eer) &&
             std::isfinite(r[1].report.eer);
    return {finite, Fmt("n=100, d=200: completed, stage-0 output finite %s, "
                        "eer %.3f / %.3f", finite ? "yes" : "no",
                        r[0].report.eer, r[1].report.eer)};
  } catch (const Error &e) {
    return {false, std::string("pipeline failed: ") + e.what()};
  }
}

Outcome Determinism() {
  const fs::path base = fs::temp_directory_path() / "rwt_acceptance_determinism";
  fs::remove_all(base);
  const Config cfg = Config::Parse(
      "[synth]\nseed = 5\n[experiment]\nlevels = 0, 1\n", "acceptance");
  CmdRunExperiment(cfg, (base / "a").string());
  CmdRunExperiment(cfg, (base / "b").string());
  int files = 0, identical = 0;
  for (const auto &entry : fs::directory_iterator(base / "a")) {
    ++files;
    const fs::path other = base / "b" / entry.path().filename();
    identical += fs::exists(other) &&
                 ReadFileText(entry.path().string()) == ReadFileText(other.string());
  }
  fs::remove_all(base);
  return {files > 0 && identical == files,
          Fmt("%d/%d report files byte-identical", identical, files)};
}

}  // namespace
}  // namespace rwt

int main() {
  using namespace rwt;
  const std::vector<std::pair<const char *, Outcome (*)()>> criteria = {
      {"whiteness", Whiteness},
      {"factorization", Factorization},
      {"selection oracle", Selection},
      {"zero-level reduction", Reduction},
      {"plda oracle", PldaOracle},
      {"plda recovery", PldaRecovery},
      {"metric oracle", MetricOracle},
      {"rank invariance", RankInvariance},
      {"directional reproduction", Directional},
      {"harmlessness control", Harmless},
      {"tiny in-domain robustness", TinyInDomain},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed ? 1 : 0;
}
