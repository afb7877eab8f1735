#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qwf/error.hpp"
#include "qwf/estimation.hpp"
#include "qwf/qfim_oracle.hpp"

using namespace qwf;

TEST_CASE("position distribution") {
  const double th = 0.6;
  const PositionDistribution d =
      position_distribution(evolve(make_initial(Localized{0, {1.0, 0.0}}), CoinParams(th, 0.0, 0.0), 1));
  CHECK(d.at(1) == doctest::Approx(std::cos(th) * std::cos(th)).epsilon(1e-14));
  CHECK(d.at(-1) == doctest::Approx(std::sin(th) * std::sin(th)).epsilon(1e-14));
  const PositionDistribution big = position_distribution(evolve(make_initial(Entangled{0, 1}), CoinParams(0.9, 0.1, 0.2), 500));
  double s = 0.0;
  for (double p : big.probs) s += p;
  CHECK(std::abs(s - 1.0) < 1e-12);
  // symmetric coin and start: p(x) = p(-x)
  const WalkerState sym = evolve(make_initial(Localized{0, {1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0))}}),
                                 CoinParams(kPi / 4.0, 0.0, 0.0), 40);
  const PositionDistribution ds = position_distribution(sym);
  for (std::int64_t x = 0; x <= 40; ++x) CHECK(std::abs(ds.at(x) - ds.at(-x)) < 1e-12);
}

TEST_CASE("sampling is seeded and multinomial") {
  const PositionDistribution d{0, {0.5, 0.5}};
  const MeasurementRecord a = sample(d, 1000000, 42);
  const MeasurementRecord b = sample(d, 1000000, 42);
  CHECK(a.counts == b.counts);
  CHECK(sample(d, 1000000, 43).counts != a.counts);
  CHECK(sample(d, 1000000, 42, 1).counts != a.counts);
  std::int64_t total = 0;
  for (const auto& [x, n] : a.counts) {
    total += n;
    CHECK(std::abs(static_cast<double>(n) - 5e5) <= 5.0 * std::sqrt(2.5e5));
  }
  CHECK(total == 1000000);
  CHECK_THROWS_AS(sample(d, 0, 1), Error);
}

TEST_CASE("empirical distribution approaches the true one") {
  const PositionDistribution d = position_distribution(evolve(make_initial(Entangled{0, 1}), CoinParams(0.7, 0.3, 0.0), 20));
  double prev = 1.0;
  for (std::int64_t shots : {1000, 100000, 10000000}) {
    const MeasurementRecord r = sample(d, shots, 5);
    double tv = 0.0;
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
      const std::int64_t x = d.origin + static_cast<std::int64_t>(i);
      const auto it = r.counts.find(x);
      const double emp = it == r.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
      tv += 0.5 * std::abs(emp - d.probs[i]);
    }
    CHECK(tv < prev);
    prev = tv;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("record serialization") {
  MeasurementRecord r = sample(evolve(make_initial(Entangled{0, 1}), CoinParams(0.7, 0.3, 0.0), 5), 1000, 9);
  CHECK(r.t == 5);
  r.params_true = CoinAngles{0.7, 0.3, 0.0};
  const MeasurementRecord back = MeasurementRecord::from_json(r.to_json());
  CHECK(back.counts == r.counts);
  CHECK(back.shots == 1000);
  CHECK(back.params_true->alpha == 0.3);
  CHECK(r.counts_table().rows().size() == r.counts.size());
  auto bad = r.to_json();
  bad["shots"] = 999;
  CHECK_THROWS_AS(MeasurementRecord::from_json(bad), Error);
}

TEST_CASE("classical Fisher information") {
  // t = 1 from |0>: binomial with p = cos^2 theta, I = 4
  const ParamMatrix i1 = classical_fi(CoinParams(0.6, 0.2, 0.0), make_initial(Localized{0, {1.0, 0.0}}), 1);
  CHECK(i1(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(i1(1, 1)) < 1e-12);
  // against central differences of the distribution
  const CoinParams p(0.8, 0.5, -0.3);
  const WalkerState init = make_initial(GammaState{0.9});
  const ParamMatrix i = classical_fi(p, init, 30);
  const double h = 1e-6;
  const auto dp = position_distribution(evolve(init, p.shifted(Param::Theta, h), 30));
  const auto dm = position_distribution(evolve(init, p.shifted(Param::Theta, -h), 30));
  const auto d0 = position_distribution(evolve(init, p, 30));
  double ref = 0.0;
  for (std::size_t k = 0; k < d0.probs.size(); ++k) {
    if (d0.probs[k] < kZeroProbability) continue;
    const double g = (dp.probs[k] - dm.probs[k]) / (2 * h);
    ref += g * g / d0.probs[k];
  }
  CHECK(i(0, 0) == doctest::Approx(ref).epsilon(1e-6));
  // entangled fixture: the position marginal is blind to alpha
  const ParamMatrix ie = classical_fi(CoinParams(kPi / 4.0, 0.0, 0.0), make_initial(Entangled{0, 1}), 50);
  CHECK(std::abs(ie(1, 1)) < 1e-10 * ie(0, 0));
  CHECK(ie.is_psd());
}

TEST_CASE("quantum dominance on a few configurations") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const CoinParams p = testing::random_coin(rng);
    const WalkerState init = make_initial(GammaState{0.7 * k});
    const ParamMatrix f = qfim_exact(init, p, 40).fisher.block({"theta", "alpha"});
    const ParamMatrix i = classical_fi(p, init, 40);
    CHECK(f.minus(i).min_eigenvalue() >= -1e-8 * std::max(1.0, f.max_abs()));
  }
}

TEST_CASE("zero-noise fit recovers the parameters") {
  const CoinParams p(0.9, 0.6, 0.0);
  // coin azimuth 0.4: the position marginal is symmetric under alpha -> 0.8 - alpha
  const WalkerState init = make_initial(GammaState{0.4});
  const std::int64_t t = 15;
  const PositionDistribution exact = position_distribution(evolve(init, p, t));
  SearchGrid box{0.5, 1.3, 41, 0.45, 1.5, 40, 0.0};
  const MleResult r = mle_fit_weights(exact, GridModel(init, t, box));
  CHECK(r.alpha_identifiable);
  CHECK(r.converged);
  CHECK_FALSE(r.multimodal);
  CHECK(r.theta == doctest::Approx(0.9).epsilon(1e-8));
  CHECK(r.alpha == doctest::Approx(0.6).epsilon(1e-7));
  CHECK(std::abs(r.grid_theta - 0.9) <= 0.8 / 40);
  // over the full circle both mirror images fit; the grid search says so
  SearchGrid full{0.5, 1.3, 41, -kPi, kPi - 2 * kPi / 60, 60, 0.0};
  const MleResult m = mle_fit_weights(exact, GridModel(init, t, full));
  CHECK(m.multimodal);
  const double a = wrap_angle(m.alpha);
  CHECK((std::abs(a - 0.6) < 1e-6 || std::abs(a - 0.2) < 1e-6));
}

TEST_CASE("MLE on sampled counts with alpha not identifiable") {
  const CoinParams p(kPi / 4.0, 0.0, 0.0);
  const WalkerState init = make_initial(Entangled{0, 1});
  const std::int64_t t = 50;
  const std::int64_t shots = 100000;
  const GridModel model(init, t, SearchGrid::theta_only(0.5, 1.1, 200, 0.0, 0.0));
  const double ith = classical_fi(p, init, t)(0, 0);
  const WalkerState s = evolve(init, p, t);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MleResult r = mle_fit(sample(s, shots, seed), model);
    CHECK(std::abs(r.theta - p.theta()) <= 5.0 / std::sqrt(shots * ith));
    CHECK_FALSE(r.multimodal);
    CHECK(r.covariance.has_value());
  }
  // a 2-D grid flags alpha and still fits theta
  const GridModel model2(init, t, SearchGrid{0.5, 1.1, 30, -kPi, kPi - 2 * kPi / 12, 12, 0.0});
  const MleResult r2 = mle_fit(sample(s, shots, 3), model2);
  CHECK_FALSE(r2.alpha_identifiable);
  CHECK(std::abs(r2.theta - p.theta()) <= 5.0 / std::sqrt(shots * ith));
  // counts outside the light cone
  MeasurementRecord bad = sample(s, 10, 1);
  bad.counts[1000] = 1;
  CHECK_THROWS_AS(mle_fit(bad, model), Error);
}

TEST_CASE("boundary optimum is flagged") {
  const CoinParams p(0.9, 0.0, 0.0);
  const WalkerState init = make_initial(Entangled{0, 1});
  const GridModel model(init, 10, SearchGrid::theta_only(0.3, 0.6, 20, 0.0, 0.0));
  const MleResult r = mle_fit_weights(position_distribution(evolve(init, p, 10)), model);
  CHECK(r.on_boundary);
}
