#include "rcplan/oracle/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "rcplan/error.hpp"
#include "rcplan/oracle/rng.hpp"

namespace rcplan::oracle {

using poly::VarClass;

void McConfig::validate() const {
  if (samples < 100) {
    throw InputError("Monte Carlo needs at least 100 samples, got " + std::to_string(samples));
  }
}

McEstimate make_estimate(std::size_t hits, std::size_t n, std::uint64_t seed) {
  McEstimate e;
  e.n = n;
  e.seed = seed;
  e.p_hat = n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
  e.stderr_ = n == 0 ? 0.0 : std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

RiskSampler::RiskSampler(const risk::UncertainObstacle& obstacle, const McConfig& cfg)
    : obstacle_(&obstacle), seed_(cfg.seed), n_(cfg.samples) {
  cfg.validate();
  const auto& space = *obstacle.space();
  const auto& poly = obstacle.polynomial();

  // Uncertain variables actually used, in space order.
  std::vector<std::size_t> omega_vars;
  for (std::size_t v : space.indices(VarClass::Uncertain)) {
    if (poly.uses(v)) omega_vars.push_back(v);
  }

  std::map<std::vector<int>, std::size_t> pattern_ids;
  std::vector<std::vector<int>> patterns;
  for (const auto& [e, c] : poly.terms()) {
    std::vector<int> key;
    key.reserve(omega_vars.size());
    for (std::size_t v : omega_vars) key.push_back(e[v]);
    auto [it, fresh] = pattern_ids.try_emplace(key, patterns.size());
    if (fresh) patterns.push_back(key);
    Term term{it->second, c, {}};
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] != 0 && space[v].cls != VarClass::Uncertain) term.powers.emplace_back(v, e[v]);
    }
    terms_.push_back(std::move(term));
  }
  patterns_ = patterns.size();

  std::vector<const uncertainty::Distribution*> dists;
  for (std::size_t v : omega_vars) dists.push_back(&obstacle.omega().at(space[v].name));

  SplitMix64 rng(cfg.seed, cfg.stream);
  values_.assign(n_ * patterns_, 0.0);
  std::vector<double> w(omega_vars.size());
  for (std::size_t s = 0; s < n_; ++s) {
    for (std::size_t j = 0; j < dists.size(); ++j) w[j] = sample(*dists[j], rng);
    double* row = values_.data() + s * patterns_;
    for (std::size_t k = 0; k < patterns_; ++k) {
      double m = 1.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        for (int p = 0; p < patterns[k][j]; ++p) m *= w[j];
      }
      row[k] = m;
    }
  }
}

McEstimate RiskSampler::at(std::span<const double> x, std::optional<double> t) const {
  const auto& space = *obstacle_->space();
  const auto state = space.indices(VarClass::State);
  if (x.size() != state.size()) {
    throw StructuralError("point has " + std::to_string(x.size()) + " coordinates, obstacle '" +
                          obstacle_->name() + "' expects " + std::to_string(state.size()));
  }
  if (obstacle_->dynamic() && !t) {
    throw StructuralError("obstacle '" + obstacle_->name() + "' is time-varying; a time is required");
  }
  std::vector<double> full(space.size(), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) full[state[i]] = x[i];
  if (auto ti = space.time_index(); ti && t) full[*ti] = *t;

  std::vector<double> c(patterns_, 0.0);
  for (const auto& term : terms_) {
    double v = term.coeff;
    for (auto [var, p] : term.powers) v *= std::pow(full[var], p);
    c[term.pattern] += v;
  }

  std::size_t hits = 0;
  const double* row = values_.data();
  for (std::size_t s = 0; s < n_; ++s, row += patterns_) {
    double acc = 0.0;
    for (std::size_t k = 0; k < patterns_; ++k) acc += c[k] * row[k];
    hits += acc >= 0.0 ? 1 : 0;
  }
  return make_estimate(hits, n_, seed_);
}

McEstimate mc_point_risk(const risk::UncertainObstacle& o, std::span<const double> x,
                         std::optional<double> t, const McConfig& cfg) {
  return RiskSampler(o, cfg).at(x, t);
}

std::vector<McEstimate> mc_points(const risk::UncertainObstacle& o, const std::vector<Probe>& probes,
                                  const McConfig& cfg) {
  const RiskSampler sampler(o, cfg);
  std::vector<McEstimate> out(probes.size());
  const auto n = static_cast<std::ptrdiff_t>(probes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = sampler.at(probes[i].x, probes[i].t);
  }
  return out;
}

std::vector<McEstimate> mc_points_serial(const risk::UncertainObstacle& o,
                                         const std::vector<Probe>& probes, const McConfig& cfg) {
  const RiskSampler sampler(o, cfg);
  std::vector<McEstimate> out;
  out.reserve(probes.size());
  for (const auto& p : probes) out.push_back(sampler.at(p.x, p.t));
  return out;
}

bool ObstacleRiskProfile::bounded_by(double delta) const {
  return std::all_of(estimates.begin(), estimates.end(),
                     [delta](const McEstimate& e) { return e.within(delta); });
}

double TrajectoryRisk::max_p_hat() const {
  double m = 0.0;
  for (const auto& p : per_obstacle) m = std::max(m, p.max().p_hat);
  return m;
}

bool TrajectoryRisk::bounded_by(double delta) const {
  return std::all_of(per_obstacle.begin(), per_obstacle.end(),
                     [delta](const ObstacleRiskProfile& p) { return p.bounded_by(delta); });
}

TrajectoryRisk mc_trajectory_risk(const safety::Trajectory& traj,
                                  const std::vector<risk::ObstaclePtr>& obstacles, std::size_t m,
                                  const McConfig& cfg) {
  if (m < 10) throw InputError("trajectory risk needs at least 10 time samples");
  std::vector<double> times(m);
  std::vector<Probe> probes(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(m - 1);
    times[i] = i + 1 == m ? traj.tf() : traj.t0() + s * (traj.tf() - traj.t0());
    probes[i] = Probe{traj.position(times[i]), times[i]};
  }
  TrajectoryRisk out;
  for (const auto& o : obstacles) {
    ObstacleRiskProfile prof;
    prof.obstacle = o->name();
    prof.times = times;
    prof.estimates = mc_points(*o, probes, cfg);
    double sum = 0.0, se = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sum += prof.estimates[i].p_hat;
      se += prof.estimates[i].stderr_;
      if (prof.estimates[i].p_hat > prof.estimates[prof.argmax].p_hat) prof.argmax = i;
    }
    prof.average = sum / static_cast<double>(m);
    prof.average_stderr = se / static_cast<double>(m);
    out.per_obstacle.push_back(std::move(prof));
  }
  return out;
}

namespace {

void add_entry(ValidationReport& r, const risk::RiskEvaluation& ev, const McEstimate& mc) {
  ValidationEntry e{ev.x, *ev.bound, mc, !mc.within(r.delta)};
  r.violations += e.violation ? 1 : 0;
  const double gap = e.bound - mc.p_hat;
  const auto bin = static_cast<std::size_t>(std::clamp(gap, 0.0, 0.999999) * 10.0);
  ++r.tightness[bin];
  r.entries.push_back(std::move(e));
}

}  // namespace

std::vector<ValidationReport> validate_contours(const std::vector<risk::RiskContour>& contours,
                                                const risk::GridSpec& grid,
                                                std::optional<double> t, const McConfig& cfg) {
  if (contours.empty()) return {};
  const auto& obstacle = contours.front().obstacle();
  for (const auto& c : contours) {
    if (&c.obstacle() != &obstacle) {
      throw StructuralError("validate_contours: contours must share one obstacle");
    }
  }
  std::vector<risk::Raster> rasters;
  for (const auto& c : contours) rasters.push_back(risk::rasterize(c, grid, t));

  // Sample each point once, only where some contour claims membership.
  std::vector<std::size_t> wanted;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& r : rasters) {
      if (r.cells[i].member()) {
        wanted.push_back(i);
        break;
      }
    }
  }
  std::vector<Probe> probes;
  probes.reserve(wanted.size());
  for (std::size_t i : wanted) probes.push_back(Probe{grid.point(i), t});
  const auto est = mc_points(obstacle, probes, cfg);

  std::vector<ValidationReport> out;
  for (std::size_t k = 0; k < contours.size(); ++k) {
    ValidationReport r;
    r.obstacle = obstacle.name();
    r.delta = contours[k].delta();
    r.t = t;
    r.grid_points = grid.size();
    for (std::size_t j = 0; j < wanted.size(); ++j) {
      const auto& cell = rasters[k].cells[wanted[j]];
      if (cell.member()) add_entry(r, cell, est[j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ValidationReport validate_contour(const risk::RiskContour& c, const risk::GridSpec& grid,
                                  std::optional<double> t, const McConfig& cfg) {
  return validate_contours({c}, grid, t, cfg).front();
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "obstacle=%s delta=%.6g", r.obstacle.c_str(), r.delta);
  os << buf;
  if (r.t) {
    std::snprintf(buf, sizeof buf, " t=%.6g", *r.t);
    os << buf;
  }
  os << "\ngrid_points=" << r.grid_points << " member_points=" << r.entries.size()
     << " violations=" << r.violations << "\n";
  double worst = 0.0;
  for (const auto& e : r.entries) worst = std::max(worst, e.mc.p_hat);
  std::snprintf(buf, sizeof buf, "max_p_hat=%.6g\n", worst);
  os << buf << "tightness (bound - p_hat):\n";
  for (std::size_t b = 0; b < r.tightness.size(); ++b) {
    std::snprintf(buf, sizeof buf, "  [%.1f, %.1f) %zu\n", b / 10.0, (b + 1) / 10.0, r.tightness[b]);
    os << buf;
  }
  return os.str();
}

std::string to_csv(const ValidationReport& r) {
  std::ostringstream os;
  const std::size_t dim = r.entries.empty() ? 0 : r.entries.front().x.size();
  for (std::size_t i = 0; i < dim; ++i) os << "x" << (i + 1) << ",";
  os << "bound,p_hat,stderr,verdict\n";
  char buf[64];
  for (const auto& e : r.entries) {
    for (double v : e.x) {
      std::snprintf(buf, sizeof buf, "%.9g,", v);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,", e.bound, e.mc.p_hat, e.mc.stderr_);
    os << buf << (e.violation ? "violation" : "ok") << "\n";
  }
  return os.str();
}

}  // namespace rcplan::oracle
