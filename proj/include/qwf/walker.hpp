#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qwf/coin.hpp"
#include "qwf/mat2.hpp"

namespace qwf {

/// Pure walker state over a contiguous window of lattice sites. Site i of the
/// window is x = origin + i and holds both coin amplitudes.
class WalkerState {
public:
  static constexpr double kNormTolerance = 1e-12;

  /// Validates finiteness, non-emptiness and unit norm.
  WalkerState(std::int64_t origin, std::vector<Vec2> sites, std::int64_t steps_elapsed = 0);

  std::int64_t origin() const noexcept { return origin_; }
  std::int64_t steps_elapsed() const noexcept { return steps_; }
  std::int64_t width() const noexcept { return static_cast<std::int64_t>(sites_.size()); }
  std::int64_t x_min() const noexcept { return origin_; }
  std::int64_t x_max() const noexcept { return origin_ + width() - 1; }
  std::span<const Vec2> sites() const noexcept { return sites_; }

  /// Amplitudes at x; zero outside the stored window.
  Vec2 at(std::int64_t x) const noexcept;
  double norm2() const noexcept;

private:
  struct Unchecked {};
  WalkerState(Unchecked, std::int64_t origin, std::vector<Vec2> sites, std::int64_t steps)
      : origin_(origin), sites_(std::move(sites)), steps_(steps) {}

  friend WalkerState step(const WalkerState& s, const Mat2& coin);
  friend WalkerState with_steps(const WalkerState& s, std::int64_t origin, std::vector<Vec2> sites,
                                std::int64_t steps);

  std::int64_t origin_;
  std::vector<Vec2> sites_;
  std::int64_t steps_;
};

/// One application of U = S (1 x C): coin-0 amplitude moves to x+1, coin-1 to
/// x-1. The window grows by one site on each side.
WalkerState step(const WalkerState& s, const CoinParams& p);
WalkerState step(const WalkerState& s, const Mat2& coin);

WalkerState evolve(const WalkerState& init, const CoinParams& p, std::int64_t t);
WalkerState evolve(const WalkerState& init, const Mat2& coin, std::int64_t t);

/// Rebuilds a state from evolved amplitudes without the norm re-check
/// (used by the momentum-space inverse transform, which has its own checks).
WalkerState with_steps(const WalkerState& s, std::int64_t origin, std::vector<Vec2> sites,
                       std::int64_t steps);

/// Bloch vector of the initial coin density operator, |r| <= 1.
struct CoinBlochState {
  std::array<double, 3> r{0.0, 0.0, 1.0};

  CoinBlochState() = default;
  explicit CoinBlochState(std::array<double, 3> v);
  double length() const noexcept;
};

/// Pure spinor with the given Bloch vector; requires |r| = 1.
Vec2 spinor_from_bloch(const CoinBlochState& b);
CoinBlochState bloch_of_spinor(const Vec2& v);

// Initial-state kinds.
struct Localized {
  std::int64_t x0 = 0;
  Vec2 coin{1.0, 0.0};  // normalized by make_initial
};
struct Entangled {
  std::int64_t x1 = 0;
  std::int64_t x2 = 1;
};
/// Localized at x = 0 with coin (1 + cos g sx + sin g sy) / 2.
struct GammaState {
  double gamma = 0.0;
};

using InitialKind = std::variant<Localized, Entangled, GammaState>;

Localized localized_from_bloch(std::int64_t x0, const CoinBlochState& b);

WalkerState make_initial(const InitialKind& kind);

/// Non-fatal diagnostics about an initial state (e.g. an entangled pair with
/// even separation, for which the state-dependent Fisher terms need not vanish).
std::vector<std::string> initial_warnings(const InitialKind& kind);

std::string describe(const InitialKind& kind);

/// JSON layout: {"origin": int, "steps_elapsed": int, "amps": [[re, im], ...]}
/// with two entries per site, coin 0 first.
nlohmann::json to_json(const WalkerState& s);
WalkerState walker_from_json(const nlohmann::json& j);

}  // namespace qwf
