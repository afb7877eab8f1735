#include "qwf/walker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwf/error.hpp"

namespace qwf {

WalkerState::WalkerState(std::int64_t origin, std::vector<Vec2> sites, std::int64_t steps_elapsed)
    : origin_(origin), sites_(std::move(sites)), steps_(steps_elapsed) {
  if (sites_.empty()) throw Error(ErrorKind::InvalidParams, "walker state has no sites");
  if (steps_ < 0) throw Error(ErrorKind::InvalidParams, "steps_elapsed must be non-negative");
  for (const Vec2& v : sites_) {
    if (!std::isfinite(v.c0.real()) || !std::isfinite(v.c0.imag()) ||
        !std::isfinite(v.c1.real()) || !std::isfinite(v.c1.imag())) {
      throw Error(ErrorKind::InvalidParams, "walker amplitudes must be finite");
    }
  }
  const double n = norm2();
  if (std::abs(n - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "walker state is not normalized (|psi|^2 = " << n << ")";
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
}

Vec2 WalkerState::at(std::int64_t x) const noexcept {
  if (x < origin_ || x > x_max()) return {};
  return sites_[static_cast<std::size_t>(x - origin_)];
}

double WalkerState::norm2() const noexcept {
  double acc = 0.0;
  for (const Vec2& v : sites_) acc += qwf::norm2(v);
  return acc;
}

WalkerState step(const WalkerState& s, const Mat2& coin) {
  const std::size_t n = s.sites_.size();
  std::vector<Vec2> next(n + 2);
  // new window starts at origin - 1: site i moves its coin-0 part to index
  // i + 2 and its coin-1 part to index i
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = coin * s.sites_[i];
    next[i + 2].c0 = c.c0;
    next[i].c1 = c.c1;
  }
  return WalkerState(WalkerState::Unchecked{}, s.origin_ - 1, std::move(next), s.steps_ + 1);
}

WalkerState step(const WalkerState& s, const CoinParams& p) { return step(s, build_coin(p)); }

WalkerState evolve(const WalkerState& init, const Mat2& coin, std::int64_t t) {
  if (t < 0) throw Error(ErrorKind::InvalidParams, "number of steps must be non-negative");
  WalkerState s = init;
  for (std::int64_t i = 0; i < t; ++i) s = step(s, coin);
  // A rounded coin is a scalar multiple of a unitary, C^dag C = rho I with
  // rho one ulp or so away from 1. That bias is systematic and would grow
  // linearly in t, so divide rho^t out once, rho taken in extended precision.
  long double rho = 0.0L;
  for (const cplx z : {coin.a, coin.b, coin.c, coin.d}) {
    rho += static_cast<long double>(z.real()) * z.real() + static_cast<long double>(z.imag()) * z.imag();
  }
  rho /= 2.0L;
  if (t > 0 && std::abs(rho - 1.0L) < 1e-12L) {
    const double scale = static_cast<double>(std::pow(rho, -0.5L * static_cast<long double>(t)));
    std::vector<Vec2> sites(s.sites().begin(), s.sites().end());
    for (Vec2& v : sites) v = scale * v;
    return with_steps(s, s.origin(), std::move(sites), s.steps_elapsed());
  }
  return s;
}

WalkerState evolve(const WalkerState& init, const CoinParams& p, std::int64_t t) {
  return evolve(init, build_coin(p), t);
}

WalkerState with_steps(const WalkerState&, std::int64_t origin, std::vector<Vec2> sites,
                       std::int64_t steps) {
  return WalkerState(WalkerState::Unchecked{}, origin, std::move(sites), steps);
}

CoinBlochState::CoinBlochState(std::array<double, 3> v) : r(v) {
  for (double x : r) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, "Bloch vector must be finite");
  }
  if (length() > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidParams, "Bloch vector longer than 1");
  }
}

double CoinBlochState::length() const noexcept {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

Vec2 spinor_from_bloch(const CoinBlochState& b) {
  const double len = b.length();
  if (std::abs(len - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidParams,
                "a pure coin spinor needs a unit Bloch vector (|r| = " + std::to_string(len) + ")");
  }
  const double polar = std::acos(std::clamp(b.r[2] / len, -1.0, 1.0));
  const double azimuth = std::atan2(b.r[1], b.r[0]);
  return {std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth)};
}

CoinBlochState bloch_of_spinor(const Vec2& v) {
  const double n = norm2(v);
  const cplx rho01 = v.c0 * std::conj(v.c1) / n;
  return CoinBlochState({2.0 * rho01.real(), -2.0 * rho01.imag(),
                         (std::norm(v.c0) - std::norm(v.c1)) / n});
}

Localized localized_from_bloch(std::int64_t x0, const CoinBlochState& b) {
  return Localized{x0, spinor_from_bloch(b)};
}

WalkerState make_initial(const InitialKind& kind) {
  return std::visit(
      [](const auto& k) -> WalkerState {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Localized>) {
          const double n = norm2(k.coin);
          if (!std::isfinite(n) || n <= 1e-300) {
            throw Error(ErrorKind::InvalidParams, "coin spinor is not normalizable");
          }
          const double inv = 1.0 / std::sqrt(n);
          return WalkerState(k.x0, {inv * k.coin}, 0);
        } else if constexpr (std::is_same_v<K, Entangled>) {
          const double h = 1.0 / std::sqrt(2.0);
          if (k.x1 == k.x2) return WalkerState(k.x1, {Vec2{h, h}}, 0);
          const std::int64_t lo = std::min(k.x1, k.x2);
          const std::int64_t hi = std::max(k.x1, k.x2);
          std::vector<Vec2> sites(static_cast<std::size_t>(hi - lo + 1));
          sites[static_cast<std::size_t>(k.x1 - lo)].c0 = h;
          sites[static_cast<std::size_t>(k.x2 - lo)].c1 = h;
          return WalkerState(lo, std::move(sites), 0);
        } else {
          if (!std::isfinite(k.gamma)) throw Error(ErrorKind::InvalidParams, "gamma must be finite");
          const double h = 1.0 / std::sqrt(2.0);
          return WalkerState(0, {Vec2{h, std::polar(h, k.gamma)}}, 0);
        }
      },
      kind);
}

std::vector<std::string> initial_warnings(const InitialKind& kind) {
  std::vector<std::string> out;
  if (const auto* e = std::get_if<Entangled>(&kind)) {
    if ((e->x1 - e->x2) % 2 == 0) {
      out.push_back("entangled initial state with even separation |x1 - x2| = " +
                    std::to_string(std::abs(e->x1 - e->x2)) +
                    ": state-dependent Fisher terms are not guaranteed to vanish");
    }
  }
  return out;
}

std::string describe(const InitialKind& kind) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Localized>) {
          os << "localized(x0=" << k.x0 << ", coin=(" << k.coin.c0 << ", " << k.coin.c1 << "))";
        } else if constexpr (std::is_same_v<K, Entangled>) {
          os << "entangled(x1=" << k.x1 << ", x2=" << k.x2 << ")";
        } else {
          os << "gamma(" << k.gamma << ")";
        }
      },
      kind);
  return os.str();
}

nlohmann::json to_json(const WalkerState& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (const Vec2& v : s.sites()) {
    amps.push_back({v.c0.real(), v.c0.imag()});
    amps.push_back({v.c1.real(), v.c1.imag()});
  }
  return {{"origin", s.origin()}, {"steps_elapsed", s.steps_elapsed()}, {"amps", amps}};
}

WalkerState walker_from_json(const nlohmann::json& j) {
  try {
    const auto& amps = j.at("amps");
    if (!amps.is_array() || amps.size() % 2 != 0) {
      throw Error(ErrorKind::InvalidParams, "amps must hold two [re, im] pairs per site");
    }
    std::vector<Vec2> sites(amps.size() / 2);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const auto& a = amps[2 * i];
      const auto& b = amps[2 * i + 1];
      sites[i] = {cplx{a.at(0).get<double>(), a.at(1).get<double>()},
                  cplx{b.at(0).get<double>(), b.at(1).get<double>()}};
    }
    return WalkerState(j.at("origin").get<std::int64_t>(), std::move(sites),
                       j.at("steps_elapsed").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("malformed walker JSON: ") + e.what());
  }
}

}  // namespace qwf
