// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qwf/bloch.hpp"
#include "qwf/bounds.hpp"
#include "qwf/cases.hpp"
#include "qwf/estimation.hpp"
#include "qwf/kspace.hpp"
#include "qwf/qfim_analytic.hpp"
#include "qwf/qfim_oracle.hpp"

using namespace qwf;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  [%02d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<CoinParams> random_coins(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::vector<CoinParams> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(th(rng), ph(rng), ph(rng));
  return out;
}

const WalkerState& fixture() {
  static const WalkerState s = make_initial(Entangled{0, 1});
  return s;
}

void run(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

void c01() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double th = 0.1 + (kPi / 2.0 - 0.1) * (i + 0.5) / 50.0;
    const ParamMatrix f = qfim_asymptotic(CoinParams(th, 0.0, 0.0), fixture(), 1).fisher;
    const double s = std::sin(th);
    worst = std::max({worst, std::abs(f(0, 0) / (4.0 * s / (1.0 + s)) - 1.0),
                      std::abs(f(1, 1) / (4.0 * (1.0 - s)) - 1.0)});
  }
  const double dt = seconds_since(t0);
  report(1, "maximal diagonal QFIm entries", worst <= 1e-6 && dt < 10.0,
         fmt("max rel err %.2e (tol 1e-6) over 50 theta", worst) + fmt(", %.2f s (limit 10 s)", dt));
}

void c02() {
  const auto grid = uniform_k_grid(512);
  double worst = 0.0;
  for (const CoinParams& p : random_coins(100, 2)) worst = std::max(worst, beta_null_check(p, grid));
  report(2, "beta nullity", worst <= 1e-12, fmt("max |A1 O_beta| %.2e (tol 1e-12), 100 coins x 512 nodes", worst));
}

void c03() {
  const auto grid = uniform_k_grid(512);
  double idem = 0.0, fixed = 0.0, tr = 0.0;
  for (const CoinParams& p : random_coins(100, 3)) {
    for (double k : grid) {
      const Superop4 a = projector_A1(p, k);
      idem = std::max(idem, max_abs(a * a - a));
      fixed = std::max(fixed, max_abs(superop_matrix(p, k) * a - a));
      tr = std::max(tr, std::abs(a.trace() - 2.0));
    }
  }
  report(3, "projector algebra", idem <= 1e-12 && fixed <= 1e-12 && tr <= 1e-12,
         fmt("|A1^2-A1| %.2e", idem) + fmt(", |A A1-A1| %.2e", fixed) + fmt(", |tr-2| %.2e (tol 1e-12)", tr));
}

void c04() {
  const auto t0 = std::chrono::steady_clock::now();
  const CoinParams p(kPi / 4.0, 0.0, 0.0);
  const auto [ft, fa] = qfim_max_diag(p.theta(), 1);
  std::array<double, 3> dev_t{}, dev_a{};
  const std::array<std::int64_t, 3> ts{100, 200, 400};
  for (std::size_t i = 0; i < 3; ++i) {
    const double t2 = static_cast<double>(ts[i] * ts[i]);
    const ParamMatrix f = qfim_exact(fixture(), p, ts[i]).fisher;
    dev_t[i] = std::abs(f(0, 0) / (t2 * ft) - 1.0);
    dev_a[i] = std::abs(f(1, 1) / (t2 * fa) - 1.0);
  }
  const double dt = seconds_since(t0);
  const bool ok = dev_t[1] <= 0.05 && dev_a[1] <= 0.05 && dev_t[2] < dev_t[0] && dev_a[2] < dev_a[0] && dt < 60.0;
  report(4, "oracle convergence to the asymptotic QFIm", ok,
         fmt("t=200 dev theta %.2e", dev_t[1]) + fmt(" alpha %.2e (tol 0.05); ", dev_a[1]) +
             fmt("t=100/400 theta %.2e", dev_t[0]) + fmt("/%.2e", dev_t[2]) + fmt(", alpha %.2e", dev_a[0]) +
             fmt("/%.2e", dev_a[2]) + fmt("; %.2f s (limit 60 s)", dt));
}

void c05() {
  const CoinParams p(kPi / 4.0, 0.0, 0.0);
  const OracleResult o = qfim_exact(fixture(), p, 200);
  const double ratio = std::abs(o.uhlmann(0, 1)) / o.fisher(0, 0);
  const double r = incompatibility_R(o.fisher, o.uhlmann);
  const AsymptoticQfim a = qfim_asymptotic(p, fixture(), 200);
  const bool zero = a.uhlmann.max_abs() == 0.0;
  report(5, "asymptotic classicality", ratio <= 0.05 && r <= 0.05 && zero,
         fmt("|D_ta|/F_tt %.2e", ratio) + fmt(", R %.2e (tol 0.05) at t=200", r) +
             (zero ? ", analytic D identically 0" : ", analytic D nonzero"));
}

void c06() {
  double ratio_err = 0.0;
  for (int i = 1; i < 50; ++i) {
    const double th = kPi / 2.0 * i / 50.0;
    ratio_err = std::max(ratio_err, std::abs(single_param_qfi(th, 0.0, 10) / single_param_qfi(th, 1.0, 10) -
                                             (1.0 + std::sin(th))));
  }
  const CoinParams p(kPi / 4.0, 0.0, 0.0);
  const double t = 200.0;
  double worst = 0.0;
  for (double ry : {1.0, -1.0}) {
    const WalkerState init = make_initial(localized_from_bloch(0, CoinBlochState({0.0, ry, 0.0})));
    const double f = qfim_exact(init, p, 200).fisher(0, 0);
    worst = std::max(worst, std::abs(f / (t * t * 0.97056) - 1.0));
  }
  report(6, "single-parameter QFI curves", ratio_err <= 1e-9 && worst <= 0.05,
         fmt("ratio vs 1+sin theta err %.2e (tol 1e-9)", ratio_err) +
             fmt("; oracle r_y=+-1 at t=200 dev from t^2*0.97056 %.2e (tol 0.05)", worst));
}

void c07() {
  const WeightMatrix w = WeightMatrix::identity();
  const double t = 50.0;
  std::string detail;
  bool ok = true;
  const std::array<double, 2> thetas{kPi / 4.0, 3.0 * kPi / 8.0};
  const std::array<double, 2> quoted{1.45711, 3.80474};
  // quoted constants carry 5-6 significant digits; the 3pi/8 one was rounded
  // from truncated intermediates and is checked at its arithmetic precision
  const std::array<double, 2> quoted_tol{5e-6, 2e-4};
  for (std::size_t i = 0; i < 2; ++i) {
    const AsymptoticQfim a = qfim_asymptotic(CoinParams(thetas[i], 0.0, 0.0), fixture(), 50);
    const HolevoReport h = holevo_compatible(a.fisher, w, a.uhlmann, thetas[i]);
    const double ch = h.holevo * t * t;
    const double g = holevo_g(thetas[i]);
    const double tr = symmetric_bound(a.fisher2()) * t * t;
    const bool this_ok = h.certified && std::abs(ch - g) <= 1e-6 && std::abs(tr - g) <= 1e-6 &&
                         std::abs(g - quoted[i]) <= quoted_tol[i];
    ok = ok && this_ok;
    detail += fmt("C^H t^2 %.7f", ch) + fmt(" g %.7f", g) + fmt(" |Tr F^-1 - g| %.1e", std::abs(tr - g)) +
              fmt(" quoted %.5f", quoted[i]) + "; ";
  }
  const Table tab = sweep_fig2({kPi / 4.0, 3.0 * kPi / 8.0}, 1000, 10);
  std::vector<double> ts, ch;
  for (const auto& row : tab.rows()) {
    if (row[1] != tab.rows().front()[1]) break;
    ts.push_back(row[0]);
    ch.push_back(row[2]);
  }
  const double slope = loglog_slope(ts, ch);
  ok = ok && std::abs(slope + 2.0) <= 1e-6;
  report(7, "Holevo bound curves", ok, detail + fmt("log-log slope %.9f (target -2 +- 1e-6)", slope));
}

void c08() {
  const double th = golden_theta();
  const ParamMatrix f = qfim_asymptotic(CoinParams(th, 0.0, 0.0), fixture(), 1).fisher;
  const double diff = std::abs(f(0, 0) - f(1, 1));
  const double common = 4.0 * (1.0 - std::sin(th));
  report(8, "golden-ratio coin", diff <= 1e-9 && std::abs(f(0, 0) - common) <= 1e-9 &&
                                      std::abs(common - 1.52786) <= 5e-6,
         fmt("|F_tt - F_aa|/t^2 %.2e (tol 1e-9)", diff) + fmt(", common value %.6f t^2", f(0, 0)));
}

void c09() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double th = 0.1 + (kPi - 0.2) * i / 9.0;
    for (int j = 0; j < 10; ++j) {
      const double phi = -kPi + 2.0 * kPi * j / 10.0;
      const CoinParams p(th, phi, 0.0);
      for (int k = 0; k < 8; ++k) {
        const double gamma = -kPi + 2.0 * kPi * k / 8.0;
        const ParamMatrix closed = qfim_localized(p, CoinBlochState({std::cos(gamma), std::sin(gamma), 0.0}), 1);
        const ParamMatrix quad = qfim_asymptotic(p, make_initial(GammaState{gamma}), 1).fisher2();
        worst = std::max(worst, closed.minus(quad).max_abs());
      }
    }
  }
  // gamma = phi: off-diagonal vanishes and F_aa stays below its maximum
  const double th = 0.9, phi = 0.6;
  const ParamMatrix f = qfim_localized(CoinParams(th, phi, 0.0), CoinBlochState({std::cos(phi), std::sin(phi), 0.0}), 1);
  const double amax = 4.0 * (1.0 - std::sin(th));
  const bool special = std::abs(f(0, 1)) <= 1e-12 && f(1, 1) < amax - 1e-6;
  report(9, "localized closed forms", worst <= 1e-8 && special,
         fmt("max |closed - quadrature| %.2e (tol 1e-8) over 10x10x8", worst) +
             fmt("; gamma=phi: F_ta %.1e", f(0, 1)) + fmt(", F_aa %.4f", f(1, 1)) + fmt(" < max %.4f", amax) +
             fmt("; %.2f s", seconds_since(t0)));
}

void c10() {
  double kerr = 0.0;
  std::mt19937_64 rng(10);
  for (const CoinParams& p : random_coins(8, 10)) {
    const WalkerState init = make_initial(GammaState{std::uniform_real_distribution<double>(-kPi, kPi)(rng)});
    for (std::int64_t t : {1, 5, 17, 33, 64}) {
      const WalkerState s = evolve(init, p, t);
      const WalkerState k = from_k_space(evolve_k(to_k_space(init, min_nodes_for(init.width() + 2 * t)), p, t));
      for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) {
        kerr = std::max({kerr, std::abs(s.at(x).c0 - k.at(x).c0), std::abs(s.at(x).c1 - k.at(x).c1)});
      }
    }
  }
  const WalkerState longrun = evolve(fixture(), CoinParams(kPi / 4.0, 0.3, 0.1), 10000);
  const double norm_err = std::abs(longrun.norm2() - 1.0);
  // light cone: localized start at 0, t = 64
  const WalkerState lc = evolve(make_initial(Localized{0, {1.0, 1.0}}), CoinParams(0.7, 0.2, 0.4), 64);
  bool cone = lc.x_min() == -64 && lc.x_max() == 64 && norm2(lc.at(64)) > 0.0 && norm2(lc.at(-64)) > 0.0;
  for (std::int64_t x = -63; x <= 63; x += 2) cone = cone && norm2(lc.at(x)) == 0.0;  // parity
  cone = cone && norm2(lc.at(65)) == 0.0 && norm2(lc.at(-65)) == 0.0;
  report(10, "evolution correctness", kerr <= 1e-10 && norm_err <= 1e-12 && cone,
         fmt("k-space vs position %.2e (tol 1e-10, t<=64)", kerr) + fmt("; norm err at t=1e4 %.2e (tol 1e-12)", norm_err) +
             (cone ? "; light cone exact" : "; light cone violated"));
}

void c11() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gd(-kPi, kPi);
  std::uniform_int_distribution<int> sep(0, 3);
  double worst = 1e300;
  int n = 0;
  for (const CoinParams& p : random_coins(20, 11)) {
    const WalkerState init = (n++ % 2) ? make_initial(GammaState{gd(rng)}) : make_initial(Entangled{0, 2 * sep(rng) + 1});
    const ParamMatrix f = qfim_exact(init, p, 100).fisher.block({"theta", "alpha"});
    const ParamMatrix c = classical_fi(p, init, 100);
    worst = std::min(worst, f.minus(c).min_eigenvalue());
  }
  report(11, "quantum dominance", worst >= -1e-8, fmt("min eigenvalue of F - I %.3e (tol -1e-8), 20 configs at t=100", worst));
}

void c12() {
  const auto t0 = std::chrono::steady_clock::now();
  const CoinParams p(kPi / 4.0, 0.0, 0.0);
  const std::int64_t t = 50;
  const WalkerState s = evolve(fixture(), p, t);
  // alpha is invisible in the position marginal of this fixture: fit theta alone
  const GridModel model(fixture(), t, SearchGrid::theta_only(0.5, 1.1, 200, 0.0, 0.0));
  const double fq = qfim_exact(fixture(), p, t).fisher(0, 0);
  const int seeds = 200;
  std::vector<double> shots_list{1e3, 1e4, 1e5, 1e6};
  std::vector<double> rms;
  double var_1e5 = 0.0;
  for (double shots : shots_list) {
    std::vector<double> est(seeds);
    for (int i = 0; i < seeds; ++i) {
      est[i] = mle_fit(sample(s, static_cast<std::int64_t>(shots), static_cast<std::uint64_t>(i), 12), model).theta;
    }
    double mean = 0.0, sse = 0.0, mse = 0.0;
    for (double e : est) mean += e / seeds;
    for (double e : est) {
      sse += (e - mean) * (e - mean);
      mse += (e - p.theta()) * (e - p.theta());
    }
    rms.push_back(std::sqrt(mse / seeds));
    if (shots == 1e5) var_1e5 = sse / (seeds - 1);
  }
  const double crb = 0.9 / (1e5 * fq);
  const double slope = loglog_slope(shots_list, rms);
  report(12, "estimation closure", var_1e5 >= crb && std::abs(slope + 0.5) <= 0.05,
         fmt("var(theta_hat) at 1e5 shots %.3e", var_1e5) + fmt(" >= 0.9/(N F) = %.3e", crb) +
             fmt("; error slope %.4f (target -0.5 +- 0.05)", slope) + fmt("; %.1f s", seconds_since(t0)));
}

void c13() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> rad(0.01, 0.99 * kWindow);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double mag = 0.0, dir = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x = rad(rng), a = ang(rng);
    const MagneticField f{x * std::cos(a), x * std::sin(a)};
    if (std::abs(f.b2) > 1e-6) {
      const MagneticInverse inv = magnetic_from_coin(coin_from_magnetic(f));
      mag = std::max({mag, std::abs(inv.field.b2 - f.b2), std::abs(inv.field.b3 - f.b3)});
    }
    const double eps = 0.05, ax = 0.8;
    const DiracParams d{x * std::cos(a) / eps, x * std::sin(a) / (eps * ax), ax, eps};
    if (std::abs(d.m) > 1e-4) {
      const DiracInverse inv = dirac_from_coin(coin_from_dirac(d), ax, eps);
      dir = std::max({dir, std::abs(inv.m - d.m) / std::max(1.0, std::abs(d.m)),
                      std::abs(inv.q - d.q) / std::max(1.0, std::abs(d.q))});
    }
  }
  std::vector<double> eps_list, err;
  for (int i = 0; i <= 8; ++i) {
    const double eps = 1e-3 * std::pow(10.0, i * 0.25);
    const auto [m1, q1] = dirac_first_order_inverse(coin_from_dirac({1.0, 1.0, 1.0, eps}), 1.0, eps);
    eps_list.push_back(eps);
    err.push_back(std::max(std::abs(m1 - 1.0), std::abs(q1 - 1.0)));
  }
  const double slope = loglog_slope(eps_list, err);
  report(13, "physical map round trips", mag <= 1e-10 && dir <= 1e-10 && std::abs(slope - 2.0) <= 0.1,
         fmt("magnetic %.2e", mag) + fmt(", Dirac %.2e (tol 1e-10)", dir) +
             fmt("; first-order error slope %.4f (target 2 +- 0.1)", slope));
}

}  // namespace

int main() {
  run(1, "maximal diagonal QFIm entries", c01);
  run(2, "beta nullity", c02);
  run(3, "projector algebra", c03);
  run(4, "oracle convergence to the asymptotic QFIm", c04);
  run(5, "asymptotic classicality", c05);
  run(6, "single-parameter QFI curves", c06);
  run(7, "Holevo bound curves", c07);
  run(8, "golden-ratio coin", c08);
  run(9, "localized closed forms", c09);
  run(10, "evolution correctness", c10);
  run(11, "quantum dominance", c11);
  run(12, "estimation closure", c12);
  run(13, "physical map round trips", c13);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
