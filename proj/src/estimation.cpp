#include "qwf/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qwf/error.hpp"
#include "qwf/parallel.hpp"
#include "qwf/qfim_oracle.hpp"

namespace qwf {

double PositionDistribution::at(std::int64_t x) const noexcept {
  if (x < origin || x > x_max()) return 0.0;
  return probs[static_cast<std::size_t>(x - origin)];
}

PositionDistribution position_distribution(const WalkerState& s) {
  PositionDistribution d{s.x_min(), {}};
  d.probs.reserve(s.sites().size());
  for (const Vec2& v : s.sites()) d.probs.push_back(norm2(v));
  return d;
}

DistributionDerivatives distribution_derivatives(const WalkerState& init, const CoinParams& p,
                                                 std::int64_t t) {
  const WalkerState s = evolve(init, p, t);
  DistributionDerivatives out{position_distribution(s), {}, {}};
  // the product rule is quadratic in t; the per-node sum is cubic and the score
  // path calls this dozens of times per fit
  DerivativeOptions opts;
  opts.method = DerivativeMethod::ProductRule;
  const LatticeField dth = derivative_state(init, p, t, Param::Theta, opts);
  const LatticeField dal = derivative_state(init, p, t, Param::Alpha, opts);
  const std::size_t n = out.dist.probs.size();
  out.d_theta.resize(n);
  out.d_alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t x = out.dist.origin + static_cast<std::int64_t>(i);
    const Vec2 psi = s.at(x);
    out.d_theta[i] = 2.0 * inner(psi, dth.at(x)).real();
    out.d_alpha[i] = 2.0 * inner(psi, dal.at(x)).real();
  }
  return out;
}

// ---- measurement record ----

nlohmann::json MeasurementRecord::to_json() const {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& [x, n] : counts) c.push_back({x, n});
  nlohmann::json j{{"t", t}, {"shots", shots}, {"seed", seed}, {"stream", stream}, {"counts", c}};
  if (params_true) {
    j["params_true"] = {{"theta", params_true->theta},
                        {"alpha", params_true->alpha},
                        {"beta", params_true->beta}};
  }
  return j;
}

MeasurementRecord MeasurementRecord::from_json(const nlohmann::json& j) {
  MeasurementRecord r;
  r.t = j.at("t").get<std::int64_t>();
  r.shots = j.at("shots").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.stream = j.value("stream", std::uint64_t{0});
  std::int64_t total = 0;
  for (const auto& e : j.at("counts")) {
    const auto n = e.at(1).get<std::int64_t>();
    if (n < 0) throw Error(ErrorKind::InvalidParams, "negative count in measurement record");
    if (n > 0) r.counts[e.at(0).get<std::int64_t>()] = n;
    total += n;
  }
  if (total != r.shots) throw Error(ErrorKind::InvalidParams, "counts do not sum to shots");
  if (j.contains("params_true")) {
    const auto& p = j["params_true"];
    r.params_true = CoinAngles{p.at("theta").get<double>(), p.at("alpha").get<double>(),
                               p.at("beta").get<double>()};
  }
  return r;
}

Table MeasurementRecord::counts_table() const {
  Table t({"x", "count"});
  for (const auto& [x, n] : counts) t.add_row({static_cast<double>(x), static_cast<double>(n)});
  return t;
}

MeasurementRecord sample(const PositionDistribution& dist, std::int64_t shots, std::uint64_t seed,
                         std::uint64_t stream) {
  if (shots < 1) throw Error(ErrorKind::InvalidParams, "shots must be >= 1");
  double total = 0.0;
  for (double p : dist.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::InvalidParams, "probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidParams, "distribution has no mass");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);

  MeasurementRecord rec;
  rec.shots = shots;
  rec.seed = seed;
  rec.stream = stream;
  // sequential conditional binomials
  std::int64_t remaining = shots;
  double mass_left = total;
  const std::size_t n = dist.probs.size();
  for (std::size_t i = 0; i < n && remaining > 0; ++i) {
    const double p = dist.probs[i];
    if (p <= 0.0) continue;
    std::int64_t k;
    const double frac = mass_left > 0.0 ? std::min(1.0, p / mass_left) : 1.0;
    bool last = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist.probs[j] > 0.0) {
        last = false;
        break;
      }
    }
    if (last || frac >= 1.0) {
      k = remaining;
    } else {
      std::binomial_distribution<std::int64_t> bin(remaining, frac);
      k = bin(rng);
    }
    mass_left -= p;
    remaining -= k;
    if (k > 0) rec.counts[dist.origin + static_cast<std::int64_t>(i)] = k;
  }
  return rec;
}

MeasurementRecord sample(const WalkerState& s, std::int64_t shots, std::uint64_t seed,
                         std::uint64_t stream) {
  MeasurementRecord r = sample(position_distribution(s), shots, seed, stream);
  r.t = s.steps_elapsed();
  return r;
}

ParamMatrix classical_fi(const CoinParams& p, const WalkerState& init, std::int64_t t) {
  const DistributionDerivatives dd = distribution_derivatives(init, p, t);
  KahanSum tt, ta, aa;
  for (std::size_t i = 0; i < dd.dist.probs.size(); ++i) {
    const double q = dd.dist.probs[i];
    if (q < kZeroProbability) continue;
    tt.add(dd.d_theta[i] * dd.d_theta[i] / q);
    ta.add(dd.d_theta[i] * dd.d_alpha[i] / q);
    aa.add(dd.d_alpha[i] * dd.d_alpha[i] / q);
  }
  return ParamMatrix({"theta", "alpha"}, {tt.value(), ta.value(), ta.value(), aa.value()}, t,
                     Regime::FiniteT);
}

// ---- grid ----

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParams, "grid needs at least one point");
  if (!(hi >= lo)) throw Error(ErrorKind::InvalidParams, "grid range must satisfy lo <= hi");
  if (lo == hi || n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

SearchGrid SearchGrid::theta_only(double lo, double hi, std::size_t n, double alpha, double beta) {
  SearchGrid g;
  g.theta_lo = lo;
  g.theta_hi = hi;
  g.theta_n = n;
  g.alpha_lo = g.alpha_hi = alpha;
  g.alpha_n = 1;
  g.beta = beta;
  return g;
}

std::vector<double> SearchGrid::thetas() const { return linspace(theta_lo, theta_hi, theta_n); }
std::vector<double> SearchGrid::alphas() const { return linspace(alpha_lo, alpha_hi, alpha_n); }

GridModel::GridModel(const WalkerState& init, std::int64_t t, const SearchGrid& grid)
    : init_(init), t_(t), grid_(grid) {
  if (t < 0) throw Error(ErrorKind::InvalidParams, "t must be non-negative");
  if (!(grid.theta_lo > 0.0) || !(grid.theta_hi < kPi)) {
    throw Error(ErrorKind::InvalidParams, "theta grid must lie inside (0, pi)");
  }
  const auto th = grid_.thetas();
  const auto al = grid_.alphas();
  origin_ = init.x_min() - t;
  window_ = init.sites().size() + 2 * static_cast<std::size_t>(t);
  probs_.assign(th.size() * al.size() * window_, 0.0);
  parallel_for(th.size() * al.size(), [&](std::size_t c) {
    const std::size_t it = c / al.size();
    const std::size_t ia = c % al.size();
    const WalkerState s = evolve(init_, CoinParams(th[it], al[ia], grid_.beta), t_);
    double* out = probs_.data() + c * window_;
    for (std::size_t i = 0; i < window_; ++i) out[i] = norm2(s.sites()[i]);
  });
}

const double* GridModel::cell(std::size_t it, std::size_t ia) const noexcept {
  return probs_.data() + (it * grid_.alphas().size() + ia) * window_;
}

// ---- likelihood ----

namespace {

double log_likelihood(const std::vector<double>& w, const double* p, std::size_t n) {
  KahanSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    if (p[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    acc.add(w[i] * std::log(p[i]));
  }
  return acc.value();
}

struct ScoreEval {
  double loglik = 0.0;
  double score[2] = {0.0, 0.0};
  double info[3] = {0.0, 0.0, 0.0};  // per-shot expected information tt, ta, aa
};

ScoreEval score_at(const std::vector<double>& w, std::int64_t origin, const WalkerState& init,
                   std::int64_t t, double theta, double alpha, double beta) {
  const DistributionDerivatives dd = distribution_derivatives(init, CoinParams(theta, alpha, beta), t);
  ScoreEval e;
  KahanSum l, s0, s1, i0, i1, i2;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double q = dd.dist.at(origin + static_cast<std::int64_t>(i));
    const std::size_t k = static_cast<std::size_t>(origin + static_cast<std::int64_t>(i) - dd.dist.origin);
    if (q < kZeroProbability) {
      if (w[i] > 0.0 && q <= 0.0) l.add(-std::numeric_limits<double>::infinity());
      continue;
    }
    const double gt = dd.d_theta[k];
    const double ga = dd.d_alpha[k];
    if (w[i] > 0.0) {
      l.add(w[i] * std::log(q));
      s0.add(w[i] * gt / q);
      s1.add(w[i] * ga / q);
    }
    i0.add(gt * gt / q);
    i1.add(gt * ga / q);
    i2.add(ga * ga / q);
  }
  e.loglik = l.value();
  e.score[0] = s0.value();
  e.score[1] = s1.value();
  e.info[0] = i0.value();
  e.info[1] = i1.value();
  e.info[2] = i2.value();
  return e;
}

MleResult fit(const std::vector<double>& w, const GridModel& model) {
  const SearchGrid& g = model.grid();
  const auto th = g.thetas();
  const auto al = g.alphas();
  const std::size_t nt = th.size();
  const std::size_t na = al.size();
  double total = 0.0;
  for (double x : w) total += x;

  std::vector<double> ll(nt * na);
  parallel_for(nt * na, [&](std::size_t c) {
    ll[c] = log_likelihood(w, model.cell(c / na, c % na), model.window());
  });
  const std::size_t best = static_cast<std::size_t>(std::max_element(ll.begin(), ll.end()) - ll.begin());
  const std::size_t bt = best / na;
  const std::size_t ba = best % na;
  MleResult r;
  r.grid_theta = th[bt];
  r.grid_alpha = al[ba];
  if (!std::isfinite(ll[best])) {
    throw Error(ErrorKind::NoConvergence, "likelihood is zero on every grid cell");
  }

  const double alpha_span = g.alpha_hi - g.alpha_lo;
  const bool alpha_periodic =
      na > 1 && alpha_span + (alpha_span / static_cast<double>(na - 1)) >= 2.0 * kPi - 1e-9;
  auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (alpha_periodic) j = (j + static_cast<std::ptrdiff_t>(na)) % static_cast<std::ptrdiff_t>(na);
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(nt) || j < 0 || j >= static_cast<std::ptrdiff_t>(na)) {
      return -std::numeric_limits<double>::infinity();
    }
    return ll[static_cast<std::size_t>(i) * na + static_cast<std::size_t>(j)];
  };
  // other interior grid peaks, best first
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const std::size_t c = i * na + j;
      if (c == best || !std::isfinite(ll[c])) continue;
      if ((nt > 1 && (i == 0 || i == nt - 1)) || (na > 1 && !alpha_periodic && (j == 0 || j == na - 1))) {
        continue;
      }
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di == 0 && dj == 0) || (nt == 1 && di != 0) || (na == 1 && dj != 0)) continue;
          if (at(static_cast<std::ptrdiff_t>(i) + di, static_cast<std::ptrdiff_t>(j) + dj) > ll[c]) {
            peak = false;
            break;
          }
        }
      }
      if (peak) peaks.push_back(c);
    }
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return ll[a] > ll[b]; });
  if (peaks.size() > 4) peaks.resize(4);

  const double beta = g.beta;
  const WalkerState& init = model.init();
  const std::int64_t t = model.t();
  const std::int64_t origin = model.origin();
  const bool alpha_free_requested = na > 1;
  {
    const ScoreEval e0 = score_at(w, origin, init, t, r.grid_theta, r.grid_alpha, beta);
    r.alpha_identifiable = e0.info[2] > 1e-8 * std::max(1.0, e0.info[0]);
  }
  const bool alpha_free = alpha_free_requested && r.alpha_identifiable;
  if (alpha_free_requested && !r.alpha_identifiable) {
    r.diagnostics.push_back("alpha is not identifiable from position counts; held at its grid value");
  }

  struct Refined {
    double theta, alpha, loglik;
    int iterations = 0;
    bool converged = false;
  };
  // Fisher scoring with step halving
  auto refine = [&](double theta, double alpha) {
    ScoreEval e = score_at(w, origin, init, t, theta, alpha, beta);
    Refined out{theta, alpha, e.loglik};
    constexpr int kMaxIter = 100;
    for (int it = 0; it < kMaxIter; ++it) {
      out.iterations = it + 1;
      double d0, d1 = 0.0;
      if (alpha_free) {
        const double a = total * e.info[0], b = total * e.info[1], c = total * e.info[2];
        const double det = a * c - b * b;
        if (!(det > 0.0)) break;
        d0 = (c * e.score[0] - b * e.score[1]) / det;
        d1 = (-b * e.score[0] + a * e.score[1]) / det;
      } else {
        if (!(e.info[0] > 0.0)) break;
        d0 = e.score[0] / (total * e.info[0]);
      }
      double lam = 1.0;
      bool moved = false;
      for (int k = 0; k < 40; ++k, lam *= 0.5) {
        const double nth = theta + lam * d0;
        if (!(nth > 0.0 && nth < kPi)) continue;
        const ScoreEval ne = score_at(w, origin, init, t, nth, alpha + lam * d1, beta);
        if (ne.loglik >= e.loglik - 1e-12 * std::abs(e.loglik)) {
          theta = nth;
          alpha += lam * d1;
          e = ne;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      if (std::abs(lam * d0) + std::abs(lam * d1) < 1e-10) {
        out.converged = true;
        break;
      }
    }
    out.theta = theta;
    out.alpha = alpha;
    out.loglik = e.loglik;
    return out;
  };

  Refined main = refine(r.grid_theta, r.grid_alpha);
  // a secondary peak is a separate mode if it refines to a distinct point
  // whose likelihood is within 10 log-units (count scale) of the best
  const double dth = nt > 1 ? (g.theta_hi - g.theta_lo) / static_cast<double>(nt - 1) : 0.0;
  const double dal = na > 1 ? alpha_span / static_cast<double>(na - 1) : 0.0;
  for (std::size_t c : peaks) {
    Refined other = refine(th[c / na], al[c % na]);
    const bool distinct = std::abs(other.theta - main.theta) > 2.0 * dth ||
                          (alpha_free && std::abs(wrap_angle(other.alpha - main.alpha)) > 2.0 * dal);
    if (!distinct) continue;
    if (other.loglik > main.loglik) std::swap(main, other);
    if (other.loglik >= main.loglik - 10.0) r.multimodal = true;
  }
  r.on_boundary = (nt > 1 && (bt == 0 || bt == nt - 1)) ||
                  (na > 1 && !alpha_periodic && (ba == 0 || ba == na - 1));
  if (r.multimodal) r.diagnostics.push_back("likelihood has competing local maxima");
  if (r.on_boundary) r.diagnostics.push_back("grid optimum lies on the prior box boundary");
  r.iterations = main.iterations;
  r.converged = main.converged;
  if (!r.converged) r.diagnostics.push_back("Fisher scoring did not reach the step tolerance");
  const double theta = main.theta;
  const double alpha = main.alpha;
  r.theta = theta;
  r.alpha = alpha;
  r.log_likelihood = main.loglik;

  // observed information from the exact score by central differences
  const double h = 1e-5;
  const std::size_t np = alpha_free ? 2 : 1;
  std::vector<double> obs(np * np, 0.0);
  for (std::size_t j = 0; j < np; ++j) {
    const double dt = j == 0 ? h : 0.0;
    const double da = j == 1 ? h : 0.0;
    const ScoreEval ep = score_at(w, origin, init, t, theta + dt, alpha + da, beta);
    const ScoreEval em = score_at(w, origin, init, t, theta - dt, alpha - da, beta);
    for (std::size_t i = 0; i < np; ++i) obs[i * np + j] = -(ep.score[i] - em.score[i]) / (2.0 * h);
  }
  if (np == 2) obs[1] = obs[2] = 0.5 * (obs[1] + obs[2]);
  std::vector<std::string> labels = np == 2 ? std::vector<std::string>{"theta", "alpha"}
                                            : std::vector<std::string>{"theta"};
  r.observed_information = ParamMatrix(labels, obs, t, Regime::FiniteT);
  std::vector<double> cov(np * np, 0.0);
  if (np == 1) {
    if (obs[0] > 0.0) cov[0] = 1.0 / obs[0];
  } else {
    const double det = obs[0] * obs[3] - obs[1] * obs[2];
    if (det > 0.0) cov = {obs[3] / det, -obs[1] / det, -obs[2] / det, obs[0] / det};
  }
  if (cov[0] > 0.0) {
    r.covariance = ParamMatrix(labels, cov, t, Regime::FiniteT);
  } else {
    r.diagnostics.push_back("observed information is not positive definite");
  }
  return r;
}

std::vector<double> to_window(const PositionDistribution& d, const GridModel& model) {
  std::vector<double> w(model.window(), 0.0);
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    if (d.probs[i] == 0.0) continue;
    const std::int64_t x = d.origin + static_cast<std::int64_t>(i);
    const std::int64_t k = x - model.origin();
    if (k < 0 || k >= static_cast<std::int64_t>(model.window())) {
      throw Error(ErrorKind::InvalidParams,
                  "observation at x = " + std::to_string(x) + " lies outside the light cone");
    }
    w[static_cast<std::size_t>(k)] = d.probs[i];
  }
  return w;
}

}  // namespace

nlohmann::json MleResult::to_json() const {
  nlohmann::json j{{"theta_hat", theta},
                   {"alpha_hat", alpha},
                   {"log_likelihood", log_likelihood},
                   {"grid_theta", grid_theta},
                   {"grid_alpha", grid_alpha},
                   {"iterations", iterations},
                   {"converged", converged},
                   {"multimodal", multimodal},
                   {"on_boundary", on_boundary},
                   {"alpha_identifiable", alpha_identifiable},
                   {"diagnostics", diagnostics}};
  j["observed_information"] = observed_information ? observed_information->to_json() : nlohmann::json(nullptr);
  j["covariance"] = covariance ? covariance->to_json() : nlohmann::json(nullptr);
  return j;
}

MleResult mle_fit(const MeasurementRecord& rec, const GridModel& model) {
  if (rec.t != model.t()) throw Error(ErrorKind::InvalidParams, "record and model use different t");
  PositionDistribution d;
  if (!rec.counts.empty()) {
    d.origin = rec.counts.begin()->first;
    d.probs.assign(static_cast<std::size_t>(rec.counts.rbegin()->first - d.origin + 1), 0.0);
    for (const auto& [x, n] : rec.counts) d.probs[static_cast<std::size_t>(x - d.origin)] = static_cast<double>(n);
  }
  return fit(to_window(d, model), model);
}

MleResult mle_fit(const MeasurementRecord& rec, const WalkerState& init, const SearchGrid& grid) {
  return mle_fit(rec, GridModel(init, rec.t, grid));
}

MleResult mle_fit_weights(const PositionDistribution& weights, const GridModel& model,
                          double nominal_shots) {
  if (!(nominal_shots > 0.0)) throw Error(ErrorKind::InvalidParams, "nominal_shots must be positive");
  std::vector<double> w = to_window(weights, model);
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidParams, "weights have no mass");
  for (double& x : w) x *= nominal_shots / total;
  return fit(w, model);
}

}  // namespace qwf
