#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwf/coin.hpp"
#include "qwf/param_matrix.hpp"
#include "qwf/table.hpp"
#include "qwf/walker.hpp"

namespace qwf {

/// Position outcome probabilities p(x) = sum_j |c_{x,j}|^2 over a window.
struct PositionDistribution {
  std::int64_t origin = 0;
  std::vector<double> probs;

  std::int64_t x_max() const noexcept { return origin + static_cast<std::int64_t>(probs.size()) - 1; }
  double at(std::int64_t x) const noexcept;
};

PositionDistribution position_distribution(const WalkerState& s);

/// p(x) and its derivatives with respect to theta and alpha (exact derivative
/// states, d p = 2 Re <psi(x)|d psi(x)>).
struct DistributionDerivatives {
  PositionDistribution dist;
  std::vector<double> d_theta;
  std::vector<double> d_alpha;
};

DistributionDerivatives distribution_derivatives(const WalkerState& init, const CoinParams& p,
                                                 std::int64_t t);

struct MeasurementRecord {
  std::int64_t t = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::map<std::int64_t, std::int64_t> counts;  // site -> count, zero bins omitted
  std::optional<CoinAngles> params_true;        // for scoring only

  nlohmann::json to_json() const;
  static MeasurementRecord from_json(const nlohmann::json& j);
  /// site, count
  Table counts_table() const;
};

/// Multinomial draw of `shots` outcomes. Deterministic in (seed, stream): the
/// generator is seeded through a seed sequence keyed by both.
MeasurementRecord sample(const PositionDistribution& dist, std::int64_t shots, std::uint64_t seed,
                         std::uint64_t stream = 0);
/// Samples the position of an evolved state; the record's t is its step count.
MeasurementRecord sample(const WalkerState& s, std::int64_t shots, std::uint64_t seed,
                         std::uint64_t stream = 0);

inline constexpr double kZeroProbability = 1e-12;

/// Classical Fisher information of the position outcome, over (theta, alpha).
/// Bins with p < kZeroProbability are excluded.
ParamMatrix classical_fi(const CoinParams& p, const WalkerState& init, std::int64_t t);

/// Prior box and resolution of the grid search. A degenerate range (lo == hi)
/// fixes that parameter.
struct SearchGrid {
  double theta_lo = 0.05;
  double theta_hi = kPi / 2.0 - 0.05;
  std::size_t theta_n = 200;
  double alpha_lo = -kPi;
  double alpha_hi = kPi - 2.0 * kPi / 200.0;
  std::size_t alpha_n = 200;
  double beta = 0.0;  // assumed known

  static SearchGrid theta_only(double lo, double hi, std::size_t n, double alpha, double beta);
  std::vector<double> thetas() const;
  std::vector<double> alphas() const;
};

/// Outcome probabilities on every grid cell, computed once and reused across
/// records that share (init, t, grid).
class GridModel {
public:
  GridModel(const WalkerState& init, std::int64_t t, const SearchGrid& grid);

  const SearchGrid& grid() const noexcept { return grid_; }
  const WalkerState& init() const noexcept { return init_; }
  std::int64_t t() const noexcept { return t_; }
  std::int64_t origin() const noexcept { return origin_; }
  std::size_t window() const noexcept { return window_; }
  /// Probabilities of cell (i_theta, i_alpha).
  const double* cell(std::size_t it, std::size_t ia) const noexcept;

private:
  WalkerState init_;
  std::int64_t t_;
  SearchGrid grid_;
  std::int64_t origin_ = 0;
  std::size_t window_ = 0;
  std::vector<double> probs_;
};

struct MleResult {
  double theta = 0.0;
  double alpha = 0.0;
  double log_likelihood = 0.0;
  double grid_theta = 0.0;
  double grid_alpha = 0.0;
  /// Observed information and its inverse over the fitted parameters
  /// ({theta} alone when alpha is fixed or not identifiable).
  std::optional<ParamMatrix> observed_information;
  std::optional<ParamMatrix> covariance;
  int iterations = 0;
  bool converged = false;
  bool multimodal = false;
  bool on_boundary = false;
  bool alpha_identifiable = true;
  std::vector<std::string> diagnostics;

  nlohmann::json to_json() const;
};

/// Multinomial maximum likelihood: grid search over the model, then Fisher
/// scoring on the continuous likelihood, observed information from a central
/// difference of the exact score.
MleResult mle_fit(const MeasurementRecord& rec, const GridModel& model);
MleResult mle_fit(const MeasurementRecord& rec, const WalkerState& init, const SearchGrid& grid);
/// Same with real-valued weights over sites (e.g. exact probabilities),
/// rescaled to `nominal_shots` so that likelihood differences and the
/// reported covariance refer to that many shots.
MleResult mle_fit_weights(const PositionDistribution& weights, const GridModel& model,
                          double nominal_shots = 1e6);

}  // namespace qwf
