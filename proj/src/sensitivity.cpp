#include "mcda/sensitivity.hpp"

#include "mcda/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>

namespace mcda {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::size_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
}

// Unbiased draw from [0, n). std::uniform_int_distribution is implementation-defined,
// which would break cross-platform report reproducibility.
std::size_t uniform_index(std::mt19937_64& eng, std::size_t n) {
  const auto bound = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

// First `count` entries of a partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> draw_distinct(std::mt19937_64& eng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + uniform_index(eng, n - i)]);
  idx.resize(count);
  return idx;
}

struct SubstitutionSetup {
  std::vector<IndicatorId> unselected;
  std::vector<std::vector<double>> xi;  // scaled scores, alternative x data column
  std::vector<double> baseline;
};

SubstitutionSetup prepare(const FeatureSelection& sel, const TotalWeights& omega, const DecisionMatrix& data,
                          const PerturbationConfig& cfg) {
  if (sel.ids.empty()) throw ValidationError("feature selection is empty");
  if (cfg.trials < 1) throw ValidationError("sensitivity needs at least one trial");
  if (cfg.n_swap > sel.ids.size()) throw ValidationError("n_swap exceeds the number of selected features");
  SubstitutionSetup s;
  for (const auto& id : omega.ids) {
    if (std::find(sel.ids.begin(), sel.ids.end(), id) == sel.ids.end()) s.unselected.push_back(id);
  }
  if (s.unselected.size() < cfg.n_swap) {
    throw ValidationError("only " + std::to_string(s.unselected.size()) + " unselected indicators for " +
                          std::to_string(cfg.n_swap) + " substitutions");
  }
  for (const auto& id : sel.ids) {
    if (!data.column_index(id)) throw ValidationError("data has no column for feature " + id.str());
  }
  s.xi = scale_features(data, data.col_ids());
  for (const auto& row : s.xi) {
    double chi = 0.0;
    for (std::size_t j = 0; j < sel.ids.size(); ++j) {
      chi += sel.gamma[j] * row[*data.column_index(sel.ids[j])];
    }
    s.baseline.push_back(chi);
  }
  return s;
}

SubstitutionTrial run_trial(const FeatureSelection& sel, const TotalWeights& omega,
                            const DecisionMatrix& data, const PerturbationConfig& cfg,
                            const SubstitutionSetup& setup, std::size_t t) {
  auto eng = trial_engine(cfg.seed, t);
  SubstitutionTrial trial;
  auto incoming = draw_distinct(eng, setup.unselected.size(), cfg.n_swap);
  trial.positions = draw_distinct(eng, sel.ids.size(), cfg.n_swap);
  std::sort(trial.positions.begin(), trial.positions.end());
  for (std::size_t i = 0; i < cfg.n_swap; ++i) {
    trial.removed.push_back(sel.ids[trial.positions[i]]);
    trial.inserted.push_back(setup.unselected[incoming[i]]);
  }
  const auto group = substitute(sel, omega, trial.positions, trial.inserted);
  std::vector<std::size_t> cols;
  for (const auto& id : group.ids) {
    auto j = data.column_index(id);
    if (!j) throw ValidationError("data has no column for indicator " + id.str());
    cols.push_back(*j);
  }
  for (std::size_t i = 0; i < setup.xi.size(); ++i) {
    double chi = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j) chi += group.gamma[j] * setup.xi[i][cols[j]];
    const double dev = chi - setup.baseline[i];
    trial.chi.push_back(chi);
    trial.abs_deviation.push_back(dev);
    const double base = std::abs(setup.baseline[i]);
    trial.rel_deviation.push_back(base > 0.0 ? dev / base
                                             : (dev == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN()));
  }
  return trial;
}

SensitivityReport assemble(const DecisionMatrix& data, const PerturbationConfig& cfg, SubstitutionSetup setup,
                           std::vector<SubstitutionTrial> trials) {
  SensitivityReport r;
  r.seed = cfg.seed;
  r.n_swap = cfg.n_swap;
  r.alternatives = data.row_labels();
  r.baseline_chi = std::move(setup.baseline);
  r.trials = std::move(trials);
  double sum = 0.0, sum_sq = 0.0, sum_rel = 0.0;
  std::size_t count = 0, rel_count = 0;
  for (const auto& t : r.trials) {
    for (std::size_t i = 0; i < t.abs_deviation.size(); ++i) {
      const double a = std::abs(t.abs_deviation[i]);
      sum += a;
      sum_sq += a * a;
      r.summary.max_abs = std::max(r.summary.max_abs, a);
      ++count;
      if (!std::isnan(t.rel_deviation[i])) {
        const double rel = std::abs(t.rel_deviation[i]);
        sum_rel += rel;
        r.summary.max_rel = std::max(r.summary.max_rel, rel);
        ++rel_count;
      }
    }
  }
  if (count > 0) {
    r.summary.mean_abs = sum / static_cast<double>(count);
    r.summary.std_abs = std::sqrt(
        std::max(0.0, sum_sq / static_cast<double>(count) - r.summary.mean_abs * r.summary.mean_abs));
  }
  if (rel_count > 0) r.summary.mean_rel = sum_rel / static_cast<double>(rel_count);
  return r;
}

}  // namespace

FeatureSelection substitute(const FeatureSelection& sel, const TotalWeights& omega,
                            std::span<const std::size_t> positions,
                            std::span<const IndicatorId> replacements) {
  if (positions.size() != replacements.size())
    throw ValidationError("positions and replacements differ in length");
  FeatureSelection out;
  out.ids = sel.ids;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= out.ids.size()) throw ValidationError("substitution position out of range");
    out.ids[positions[i]] = replacements[i];
  }
  double mass = 0.0;
  for (const auto& id : out.ids) {
    out.gamma.push_back(omega.at(id));
    mass += out.gamma.back();
  }
  if (!(mass > 0.0)) throw NumericError("substituted feature group carries no weight");
  for (double& g : out.gamma) g /= mass;
  out.coverage = mass / omega.sum();
  return out;
}

SensitivityReport factor_substitution(const FeatureSelection& sel, const TotalWeights& omega,
                                      const DecisionMatrix& data, const PerturbationConfig& cfg) {
  auto setup = prepare(sel, omega, data, cfg);
  std::vector<SubstitutionTrial> trials(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  const auto count = static_cast<std::ptrdiff_t>(cfg.trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const auto k = static_cast<std::size_t>(t);
    try {
      trials[k] = run_trial(sel, omega, data, cfg, setup, k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(data, cfg, std::move(setup), std::move(trials));
}

namespace serial {

SensitivityReport factor_substitution(const FeatureSelection& sel, const TotalWeights& omega,
                                      const DecisionMatrix& data, const PerturbationConfig& cfg) {
  auto setup = prepare(sel, omega, data, cfg);
  std::vector<SubstitutionTrial> trials;
  for (std::size_t t = 0; t < cfg.trials; ++t) trials.push_back(run_trial(sel, omega, data, cfg, setup, t));
  return assemble(data, cfg, std::move(setup), std::move(trials));
}

}  // namespace serial

BBDesign bbd_design(std::size_t k, std::size_t center_replicates) {
  if (k < 2) throw ValidationError("Box-Behnken design needs at least two factors");
  BBDesign d{k, center_replicates, {}};
  if (k == 2) {
    for (double a : {-1.0, 0.0, 1.0}) {
      for (double b : {-1.0, 0.0, 1.0}) {
        if (a != 0.0 || b != 0.0) d.points.push_back({a, b});
      }
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (double b : {-1.0, 1.0}) {
          for (double a : {-1.0, 1.0}) {
            std::vector<double> p(k, 0.0);
            p[i] = a;
            p[j] = b;
            d.points.push_back(std::move(p));
          }
        }
      }
    }
  }
  for (std::size_t c = 0; c < center_replicates; ++c) d.points.emplace_back(k, 0.0);
  return d;
}

namespace {

void model_row(std::span<const double> x, std::span<double> row) {
  const std::size_t k = x.size();
  std::size_t c = 0;
  row[c++] = 1.0;
  for (std::size_t i = 0; i < k; ++i) row[c++] = x[i];
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) row[c++] = x[i] * x[j];
  }
  for (std::size_t i = 0; i < k; ++i) row[c++] = x[i] * x[i];
}

}  // namespace

double QuadraticSurface::evaluate(std::span<const double> x) const {
  if (x.size() != factors) throw ValidationError("surface evaluated at a point of the wrong dimension");
  std::vector<double> row(coefficients.size());
  model_row(x, row);
  double v = 0.0;
  for (std::size_t c = 0; c < row.size(); ++c) v += coefficients[c] * row[c];
  return v;
}

QuadraticSurface fit_response_surface(const BBDesign& design, std::span<const double> responses) {
  const std::size_t k = design.factors;
  const std::size_t p = QuadraticSurface::coefficient_count(k);
  const std::size_t n = design.points.size();
  if (responses.size() != n) throw ValidationError("response count does not match the design");
  if (n < p) throw NumericError("design has fewer runs than quadratic coefficients");
  Eigen::MatrixXd a(n, p);
  Eigen::VectorXd y(n);
  std::vector<double> row(p);
  for (std::size_t r = 0; r < n; ++r) {
    if (design.points[r].size() != k) throw ValidationError("design point has the wrong dimension");
    model_row(design.points[r], row);
    for (std::size_t c = 0; c < p; ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    y(static_cast<Eigen::Index>(r)) = responses[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < static_cast<Eigen::Index>(p))
    throw NumericError("response-surface design matrix is rank deficient");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - a * beta;

  QuadraticSurface s;
  s.factors = k;
  s.coefficients.assign(beta.data(), beta.data() + beta.size());
  s.residual_norm = resid.norm();
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = resid.squaredNorm();
  s.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  // Constant responses: the fit is exact; drop rounding noise in the non-intercept terms.
  if (ss_tot == 0.0) {
    std::fill(s.coefficients.begin(), s.coefficients.end(), 0.0);
    s.coefficients[0] = mean;
    s.residual_norm = 0.0;
    s.r_squared = 1.0;
  }
  return s;
}

namespace {

// Gradient b + H x of the quadratic, with H the symmetric Hessian.
void gradient_parts(const QuadraticSurface& s, Eigen::VectorXd& b, Eigen::MatrixXd& hess) {
  const auto k = static_cast<Eigen::Index>(s.factors);
  b.resize(k);
  hess.setZero(k, k);
  std::size_t c = 1;
  for (Eigen::Index i = 0; i < k; ++i) b(i) = s.coefficients[c++];
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      hess(i, j) = s.coefficients[c];
      hess(j, i) = s.coefficients[c];
      ++c;
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) hess(i, i) = 2.0 * s.coefficients[c++];
}

FactorRange make_range(double lo, double hi, double baseline) {
  const double absolute = hi - lo;
  return {absolute,
          baseline != 0.0 ? absolute / std::abs(baseline) : std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace

SurfaceExtrema surface_extrema(const QuadraticSurface& s, std::span<const std::pair<double, double>> box,
                               std::span<const double> baseline) {
  const std::size_t k = s.factors;
  if (box.size() != k) throw ValidationError("box dimension does not match the surface");
  for (const auto& [lo, hi] : box) {
    if (!(lo <= hi)) throw ValidationError("box bounds are inverted");
  }
  std::vector<double> base(k);
  if (baseline.empty()) {
    for (std::size_t i = 0; i < k; ++i) base[i] = 0.5 * (box[i].first + box[i].second);
  } else {
    if (baseline.size() != k) throw ValidationError("baseline dimension does not match the surface");
    base.assign(baseline.begin(), baseline.end());
  }

  Eigen::VectorXd b;
  Eigen::MatrixXd hess;
  gradient_parts(s, b, hess);

  SurfaceExtrema out;
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<double>& x) {
    const double v = s.evaluate(x);
    if (v < out.min_value) {
      out.min_value = v;
      out.min_point = x;
    }
    if (v > out.max_value) {
      out.max_value = v;
      out.max_point = x;
    }
  };

  // Each coordinate is free, at its lower bound, or at its upper bound.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < k; ++i) combos *= 3;
  std::vector<int> state(k);
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    std::vector<Eigen::Index> free;
    std::vector<double> x(k);
    for (std::size_t i = 0; i < k; ++i) {
      state[i] = static_cast<int>(rest % 3);
      rest /= 3;
      if (state[i] == 0) {
        free.push_back(static_cast<Eigen::Index>(i));
      } else {
        x[i] = state[i] == 1 ? box[i].first : box[i].second;
      }
    }
    if (!free.empty()) {
      const auto f = static_cast<Eigen::Index>(free.size());
      Eigen::MatrixXd hf(f, f);
      Eigen::VectorXd rhs(f);
      for (Eigen::Index r = 0; r < f; ++r) {
        double acc = b(free[static_cast<std::size_t>(r)]);
        for (std::size_t j = 0; j < k; ++j) {
          if (state[j] != 0)
            acc += hess(free[static_cast<std::size_t>(r)], static_cast<Eigen::Index>(j)) * x[j];
        }
        rhs(r) = -acc;
        for (Eigen::Index c = 0; c < f; ++c) {
          hf(r, c) = hess(free[static_cast<std::size_t>(r)], free[static_cast<std::size_t>(c)]);
        }
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(hf);
      if (!lu.isInvertible()) continue;  // flat direction: extrema sit on lower-dimensional faces
      const Eigen::VectorXd sol = lu.solve(rhs);
      bool inside = true;
      for (Eigen::Index r = 0; r < f; ++r) {
        const auto i = static_cast<std::size_t>(free[static_cast<std::size_t>(r)]);
        const double tol = 1e-12 * std::max(1.0, box[i].second - box[i].first);
        if (sol(r) < box[i].first - tol || sol(r) > box[i].second + tol) inside = false;
        x[i] = std::clamp(sol(r), box[i].first, box[i].second);
      }
      if (!inside) continue;
    }
    consider(x);
  }

  out.baseline_value = s.evaluate(base);
  out.joint = make_range(out.min_value, out.max_value, out.baseline_value);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> x = base;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto probe = [&](double t) {
      x[i] = t;
      const double v = s.evaluate(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    };
    probe(box[i].first);
    probe(box[i].second);
    // d/dx_i = b_i + Σ_j H_ij x_j = 0 along the line.
    const double curv = hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    if (curv != 0.0) {
      double acc = b(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) acc += hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * base[j];
      }
      const double t = -acc / curv;
      if (t > box[i].first && t < box[i].second) probe(t);
    }
    out.per_factor.push_back(make_range(lo, hi, out.baseline_value));
  }
  return out;
}

double perturbed_chi(const FeatureSelection& sel, std::span<const double> xi,
                     std::span<const std::size_t> factors, std::span<const double> levels, double delta,
                     bool renormalize) {
  if (factors.size() != levels.size()) throw ValidationError("factor and level counts differ");
  if (xi.size() != sel.gamma.size())
    throw ValidationError("feature value count does not match the selection");
  std::vector<double> gamma = sel.gamma;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f] >= gamma.size()) throw ValidationError("perturbed factor index out of range");
    gamma[factors[f]] *= 1.0 + delta * levels[f];
  }
  double scale = 1.0;
  if (renormalize) {
    const double mass = std::accumulate(gamma.begin(), gamma.end(), 0.0);
    if (!(mass > 0.0)) throw NumericError("perturbed weights carry no mass");
    scale = 1.0 / mass;
  }
  double chi = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) chi += gamma[j] * scale * xi[j];
  return chi;
}

}  // namespace mcda
