// src/synth.cc

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

#include "rwt/synth.h"

#include <cmath>
#include <cstdio>

#include "rwt/error.h"
#include "rwt/stats.h"

namespace rwt {

namespace {

std::string Numbered(const std::string &prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d", i);
  return prefix + buf;
}

Eigen::MatrixXd SpdFromBasis(const Eigen::MatrixXd &q, double kappa) {
  const int d = static_cast<int>(q.rows());
  if (kappa == 1.0) return Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd m =
      q * LogSpacedSpectrum(d, kappa).asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

// Draws from N(mean, scale * cov) given chol = CholeskyLower(cov).
Eigen::VectorXd Draw(const Eigen::VectorXd &mean, const Eigen::MatrixXd &chol,
                     double scale, Rng &rng) {
  return mean + std::sqrt(scale) * (chol * rng.normal_vector(
                                               static_cast<int>(mean.size())));
}

}  // namespace

SynthConfig SynthConfig::Default() {
  SynthConfig cfg;
  cfg.subcorpora = {{"ood_a", 1.0, 10.0}, {"ood_b", 4.0, 10.0}};
  return cfg;
}

void SynthConfig::Validate() const {
  auto require = [](bool ok, const std::string &what) {
    if (!ok) throw ConfigError("synth: " + what);
  };
  require(dim >= 2, "dim must be at least 2");
  require(across_var > 0 && within_var > 0, "variances must be positive");
  require(ood_speakers >= 1 && ood_sessions >= 1, "OOD counts must be >= 1");
  require(!subcorpora.empty(), "at least one OOD sub-corpus is required");
  for (const auto &s : subcorpora) {
    require(!s.name.empty(), "sub-corpus names must be non-empty");
    require(s.shift >= 0 && std::isfinite(s.shift), "sub-corpus shift must be >= 0");
    require(s.kappa >= 1, "condition numbers must be >= 1");
  }
  require(indomain_speakers >= 1 && enroll_sessions >= 1 && test_sessions >= 1,
          "in-domain counts must be >= 1");
  require(unlabeled >= 1 && unlabeled_speakers >= 1,
          "unlabeled counts must be >= 1");
  require(indomain_shift >= 0 && std::isfinite(indomain_shift),
          "in-domain shift must be >= 0");
  require(indomain_scale > 0, "in-domain scale must be positive");
  require(indomain_kappa >= 1, "condition numbers must be >= 1");
}

Eigen::MatrixXd RandomOrthogonal(int dim, Rng &rng) {
  Eigen::MatrixXd g(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) g(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd &r = qr.matrixQR();
  for (int i = 0; i < dim; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

Eigen::VectorXd LogSpacedSpectrum(int dim, double kappa) {
  if (!(kappa >= 1.0)) throw ConfigError("condition number must be >= 1");
  Eigen::VectorXd lambda(dim);
  const double log_lo = -0.5 * std::log(kappa);
  const double log_hi = 0.5 * std::log(kappa);
  for (int i = 0; i < dim; ++i) {
    const double t = dim == 1 ? 0.5 : static_cast<double>(i) / (dim - 1);
    lambda[i] = std::exp(log_lo + t * (log_hi - log_lo));
  }
  if (dim > 1) {
    lambda[0] = 1.0 / std::sqrt(kappa);
    lambda[dim - 1] = std::sqrt(kappa);
  }
  return lambda;
}

Eigen::MatrixXd RandomSpd(int dim, double kappa, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (!(kappa >= 1.0)) throw ConfigError("condition number must be >= 1");
  Rng rng(seed);
  return SpdFromBasis(RandomOrthogonal(dim, rng), kappa);
}

SynthWorld GenerateWorld(const SynthConfig &cfg) {
  cfg.Validate();
  const int d = cfg.dim;
  Rng master(cfg.seed);
  Rng basis_rng = master.fork();
  const Eigen::MatrixXd shared_q = RandomOrthogonal(d, basis_rng);

  SynthWorld world;
  world.ood_labeled = VectorSet(d);
  world.indomain_unlabeled = VectorSet(d);
  world.enroll = VectorSet(d);
  world.test = VectorSet(d);

  auto make_domain = [&](const std::string &name, double shift, double kappa,
                         double scale, Rng &rng) {
    Eigen::VectorXd direction = rng.normal_vector(d);
    direction.normalize();
    const Eigen::MatrixXd q = cfg.shared_basis ? shared_q : RandomOrthogonal(d, rng);
    return DomainTruth{name, shift * direction, scale * SpdFromBasis(q, kappa)};
  };

  for (const auto &spec : cfg.subcorpora) {
    Rng rng = master.fork();
    DomainTruth dom = make_domain(spec.name, spec.shift, spec.kappa, 1.0, rng);
    const Eigen::MatrixXd chol = CholeskyLower(dom.cov);
    for (int s = 0; s < cfg.ood_speakers; ++s) {
      const std::string speaker = Numbered(spec.name + "_s", s);
      const Eigen::VectorXd spk_mean = Draw(dom.mean, chol, cfg.across_var, rng);
      for (int k = 0; k < cfg.ood_sessions; ++k)
        world.ood_labeled.Add(Numbered(speaker + "_", k), spec.name, speaker,
                              Draw(spk_mean, chol, cfg.within_var, rng));
    }
    world.domains.push_back(std::move(dom));
  }

  Rng rng = master.fork();
  DomainTruth in = make_domain("indomain", cfg.indomain_shift,
                               cfg.indomain_kappa, cfg.indomain_scale, rng);
  const Eigen::MatrixXd chol = CholeskyLower(in.cov);

  std::vector<std::string> speakers;
  for (int s = 0; s < cfg.indomain_speakers; ++s) {
    const std::string speaker = Numbered("in_s", s);
    speakers.push_back(speaker);
    const Eigen::VectorXd spk_mean = Draw(in.mean, chol, cfg.across_var, rng);
    for (int k = 0; k < cfg.enroll_sessions; ++k)
      world.enroll.Add(Numbered("enr_" + speaker + "_", k), "enroll", speaker,
                       Draw(spk_mean, chol, cfg.within_var, rng));
    for (int k = 0; k < cfg.test_sessions; ++k)
      world.test.Add(Numbered("tst_" + speaker + "_", k), "test", speaker,
                     Draw(spk_mean, chol, cfg.within_var, rng));
  }

  // Unlabeled vectors cycle over their own speakers.
  std::vector<Eigen::VectorXd> unlabeled_means;
  for (int s = 0; s < cfg.unlabeled_speakers; ++s)
    unlabeled_means.push_back(Draw(in.mean, chol, cfg.across_var, rng));
  for (int i = 0; i < cfg.unlabeled; ++i)
    world.indomain_unlabeled.Add(
        Numbered("unl_", i), "unlabeled", std::nullopt,
        Draw(unlabeled_means[i % cfg.unlabeled_speakers], chol, cfg.within_var,
             rng));
  world.domains.push_back(std::move(in));

  for (const auto &speaker : speakers)
    for (const auto &t : world.test)
      world.trials.Add(Trial{speaker, t.id,
                             *t.speaker == speaker ? TrialLabel::kTarget
                                                   : TrialLabel::kNontarget});
  return world;
}

}  // namespace rwt
