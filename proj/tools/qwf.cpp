#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwf/bounds.hpp"
#include "qwf/cases.hpp"
#include "qwf/error.hpp"
#include "qwf/estimation.hpp"
#include "qwf/qfim_analytic.hpp"
#include "qwf/qfim_oracle.hpp"
#include "qwf/table.hpp"
#include "qwf/version.hpp"
#include "qwf/walker.hpp"

using nlohmann::json;
using namespace qwf;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---- shared option groups ----

struct CoinOpts {
  double theta = kPi / 4.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct StateOpts {
  std::string init = "entangled:0:1";
  std::string coin_state = "0,0,1";
};

void add_coin(CLI::App* app, CoinOpts& c) {
  app->add_option("--theta", c.theta, "coin angle theta")->capture_default_str();
  app->add_option("--alpha", c.alpha, "coin phase alpha")->capture_default_str();
  app->add_option("--beta", c.beta, "coin phase beta")->capture_default_str();
}

void add_state(CLI::App* app, StateOpts& s, const std::string& default_init) {
  s.init = default_init;
  app->add_option("--init", s.init, "localized[:X0] | entangled:X1:X2 | gamma:G")->capture_default_str();
  app->add_option("--coin-state", s.coin_state,
                  "coin Bloch vector rx,ry,rz (unit) or one of 0, 1, +x, -x, +y, -y")
      ->capture_default_str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParams, "cannot parse " + what + " from '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParams, "cannot parse " + what + " from '" + s + "'");
  }
}

CoinBlochState parse_coin_state(const std::string& s) {
  static const std::map<std::string, std::array<double, 3>> named{
      {"0", {0, 0, 1}},  {"1", {0, 0, -1}}, {"+x", {1, 0, 0}},
      {"-x", {-1, 0, 0}}, {"+y", {0, 1, 0}}, {"-y", {0, -1, 0}}};
  if (auto it = named.find(s); it != named.end()) return CoinBlochState(it->second);
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(ErrorKind::InvalidParams, "coin state needs rx,ry,rz");
  return CoinBlochState({parse_double(parts[0], "rx"), parse_double(parts[1], "ry"),
                         parse_double(parts[2], "rz")});
}

InitialKind parse_init(const StateOpts& o) {
  const auto parts = split(o.init, ':');
  if (parts.empty()) throw Error(ErrorKind::InvalidParams, "empty --init");
  if (parts[0] == "localized" && parts.size() <= 2) {
    const std::int64_t x0 = parts.size() == 2 ? parse_int(parts[1], "x0") : 0;
    return localized_from_bloch(x0, parse_coin_state(o.coin_state));
  }
  if (parts[0] == "entangled" && parts.size() == 3) {
    return Entangled{parse_int(parts[1], "x1"), parse_int(parts[2], "x2")};
  }
  if (parts[0] == "gamma" && parts.size() == 2) return GammaState{parse_double(parts[1], "gamma")};
  throw Error(ErrorKind::InvalidParams, "unrecognized --init '" + o.init + "'");
}

struct Range {
  double lo, hi;
  std::size_t n;
};

Range parse_range(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {parse_double(parts[0], what), parse_double(parts[0], what), 1};
  if (parts.size() != 3) throw Error(ErrorKind::InvalidParams, what + " needs lo:hi:n or a single value");
  const std::int64_t n = parse_int(parts[2], what + " points");
  if (n < 1) throw Error(ErrorKind::InvalidParams, what + " needs at least one point");
  return {parse_double(parts[0], what), parse_double(parts[1], what), static_cast<std::size_t>(n)};
}

// ---- run context: config echo, warnings, output ----

struct Context {
  bool strict = false;
  std::string output;
  json config;
  std::vector<std::string> warnings;

  void warn(const std::string& msg, ErrorKind kind = ErrorKind::InvalidParams) {
    if (strict) throw Error(kind, "(strict) " + msg);
    warnings.push_back(msg);
  }
};

json config_echo(const std::string& command, CLI::App* sub) {
  json opts = json::object();
  std::istringstream is(sub->config_to_str(true, false));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(' ');
      const auto e = v.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    opts[key] = val;
  }
  return {{"command", command}, {"options", opts}};
}

void emit(const Context& ctx, json doc, const std::optional<Table>& table) {
  json out = provenance(ctx.config);
  for (auto& [k, v] : doc.items()) out[k] = v;
  out["warnings"] = ctx.warnings;
  for (const auto& w : ctx.warnings) std::cerr << "warning: " << w << '\n';
  if (ctx.output.empty()) {
    if (table) {
      table->write_csv(std::cout, ctx.config);
    } else {
      std::cout << out.dump(2) << '\n';
    }
    return;
  }
  {
    std::ofstream js(ctx.output + ".json");
    if (!js) throw Error(ErrorKind::InvalidParams, "cannot write " + ctx.output + ".json");
    js << out.dump(2) << '\n';
  }
  if (table) {
    std::ofstream cs(ctx.output + ".csv");
    if (!cs) throw Error(ErrorKind::InvalidParams, "cannot write " + ctx.output + ".csv");
    table->write_csv(cs, ctx.config);
  }
}

json params_json(const CoinParams& p) {
  return {{"theta", p.theta()}, {"alpha", p.alpha()}, {"beta", p.beta()}};
}

WalkerState prepare_state(Context& ctx, const StateOpts& so, InitialKind& kind) {
  kind = parse_init(so);
  for (const auto& w : initial_warnings(kind)) ctx.warn(w);
  return make_initial(kind);
}

double rel_dev(const ParamMatrix& a, const ParamMatrix& ref) {
  const ParamMatrix ab = a.block({"theta", "alpha"});
  const ParamMatrix rb = ref.block({"theta", "alpha"});
  return ab.minus(rb).max_abs() / std::max(rb.max_abs(), 1e-300);
}

// ---- commands ----

struct EvolveCmd {
  CoinOpts coin;
  StateOpts state;
  std::int64_t t = 0;
};

void run_evolve(Context& ctx, const EvolveCmd& c) {
  const CoinParams p(c.coin.theta, c.coin.alpha, c.coin.beta);
  InitialKind kind;
  const WalkerState init = prepare_state(ctx, c.state, kind);
  if (c.t < 0) throw Error(ErrorKind::InvalidParams, "--t must be >= 0");
  const WalkerState s = evolve(init, p, c.t);
  const PositionDistribution d = position_distribution(s);
  Table tab({"x", "p"});
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    tab.add_row({static_cast<double>(d.origin + static_cast<std::int64_t>(i)), d.probs[i]});
  }
  emit(ctx, {{"params", params_json(p)}, {"init", describe(kind)}, {"state", to_json(s)}}, tab);
}

struct QfimCmd {
  CoinOpts coin;
  StateOpts state;
  std::int64_t t = 100;
  std::vector<std::string> routes{"analytic"};
  double rel_tol = 1e-9;
  std::size_t beta_nodes = 512;
};

void run_qfim(Context& ctx, const QfimCmd& c) {
  const CoinParams p(c.coin.theta, c.coin.alpha, c.coin.beta);
  InitialKind kind;
  const WalkerState init = prepare_state(ctx, c.state, kind);
  if (c.t < 1) throw Error(ErrorKind::InvalidParams, "--t must be >= 1");
  json routes = json::object();
  std::map<std::string, ParamMatrix> fisher;
  for (const auto& r : c.routes) {
    if (r == "analytic") {
      QuadratureOptions qo;
      qo.rel_tol = c.rel_tol;
      const AsymptoticQfim a = qfim_asymptotic(p, init, c.t, qo);
      routes[r] = {{"fisher", a.fisher.to_json()},
                   {"uhlmann", a.uhlmann.to_json()},
                   {"nodes_used", a.nodes_used},
                   {"last_change", a.last_change},
                   {"imag_residue", a.imag_residue}};
      fisher.emplace(r, a.fisher);
    } else if (r == "localized") {
      const auto* loc = std::get_if<Localized>(&kind);
      CoinBlochState b;
      if (loc) {
        b = bloch_of_spinor(loc->coin);
      } else if (const auto* g = std::get_if<GammaState>(&kind)) {
        b = CoinBlochState({std::cos(g->gamma), std::sin(g->gamma), 0.0});
      } else {
        throw Error(ErrorKind::InvalidParams, "the localized route needs a localized or gamma initial state");
      }
      const ParamMatrix f = qfim_localized(p, b, c.t);
      routes[r] = {{"fisher", f.to_json()}};
      fisher.emplace(r, f);
    } else if (r == "oracle") {
      const OracleResult o = qfim_exact(init, p, c.t);
      routes[r] = {{"fisher", o.fisher.to_json()}, {"uhlmann", o.uhlmann.to_json()}, {"n_nodes", o.n_nodes}};
      fisher.emplace(r, o.fisher);
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown route '" + r + "' (analytic, localized, oracle)");
    }
  }
  json deviation = json::object();
  const std::string& ref = c.routes.front();
  for (const auto& [name, f] : fisher) {
    if (name != ref) deviation[name + "_vs_" + ref] = rel_dev(f, fisher.at(ref));
  }
  const double beta_res = beta_null_check(p, uniform_k_grid(c.beta_nodes));
  if (beta_res > 1e-12) ctx.warn("beta null check residual " + format_double(beta_res) + " exceeds 1e-12");

  const std::vector<std::string> all{"analytic", "localized", "oracle"};
  Table tab({"row", "col", "analytic", "localized", "oracle"});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      std::vector<double> row{static_cast<double>(i), static_cast<double>(j)};
      const std::string ri(param_name(kAllParams[i]));
      const std::string cj(param_name(kAllParams[j]));
      for (const auto& name : all) {
        auto it = fisher.find(name);
        row.push_back(it != fisher.end() && it->second.has(ri) && it->second.has(cj) ? it->second.at(ri, cj) : kNaN);
      }
      tab.add_row(row);
    }
  }
  emit(ctx,
       {{"params", params_json(p)},
        {"init", describe(kind)},
        {"t", c.t},
        {"routes", routes},
        {"relative_deviation", deviation},
        {"beta_null_residual", beta_res}},
       ctx.output.empty() ? std::nullopt : std::optional<Table>(tab));
}

struct BoundsCmd {
  CoinOpts coin;
  StateOpts state;
  std::int64_t t = 100;
  std::string route = "analytic";
  std::vector<double> weights{1.0, 0.0, 1.0};
};

json bounds_block(Context& ctx, const ParamMatrix& f, const ParamMatrix& d, const WeightMatrix& w,
                  std::optional<double> entangled_theta, Table& tab) {
  HolevoReport rep;
  try {
    rep = holevo_compatible(f, w, d, entangled_theta);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IncompatibleModel) throw;
    ctx.warn(e.what(), ErrorKind::IncompatibleModel);
    rep = holevo_sandwich(f, w, d);
  }
  tab.add_row({static_cast<double>(f.t()), rep.symmetric, rep.certified ? rep.holevo : kNaN,
               rep.incompatibility, rep.upper, rep.closed_form.value_or(kNaN)});
  return rep.to_json();
}

void run_bounds(Context& ctx, const BoundsCmd& c) {
  const CoinParams p(c.coin.theta, c.coin.alpha, c.coin.beta);
  InitialKind kind;
  const WalkerState init = prepare_state(ctx, c.state, kind);
  if (c.t < 1) throw Error(ErrorKind::InvalidParams, "--t must be >= 1");
  if (c.weights.size() != 3) throw Error(ErrorKind::InvalidParams, "--weights needs w00,w01,w11");
  const WeightMatrix w(c.weights[0], c.weights[1], c.weights[2]);
  std::optional<ParamMatrix> f, d;
  if (c.route == "analytic") {
    const AsymptoticQfim a = qfim_asymptotic(p, init, c.t);
    f = a.fisher;
    d = a.uhlmann;
  } else if (c.route == "oracle") {
    const OracleResult o = qfim_exact(init, p, c.t);
    f = o.fisher;
    d = o.uhlmann;
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown route '" + c.route + "' (analytic, oracle)");
  }
  // the closed form applies to the two-site entangled fixture with odd separation
  std::optional<double> ent;
  if (const auto* e = std::get_if<Entangled>(&kind); e && (e->x1 - e->x2) % 2 != 0) ent = p.theta();
  Table tab({"t", "symmetric_bound", "holevo_bound", "incompatibility_R", "holevo_upper", "closed_form"});
  const json rep = bounds_block(ctx, *f, *d, w, ent, tab);
  emit(ctx,
       {{"params", params_json(p)},
        {"init", describe(kind)},
        {"t", c.t},
        {"route", c.route},
        {"fisher", f->to_json()},
        {"uhlmann", d->to_json()},
        {"bounds", rep}},
       ctx.output.empty() ? std::nullopt : std::optional<Table>(tab));
}

struct SweepCmd {
  std::string kind;
  double theta = kPi / 4.0;
  std::vector<double> thetas{kPi / 4.0, 3.0 * kPi / 8.0};
  std::int64_t t_max = 100;
  std::int64_t t_step = 1;
  std::size_t points = 200;
};

void run_sweep(Context& ctx, const SweepCmd& c) {
  Table tab = c.kind == "fig1"   ? sweep_fig1(c.theta, c.t_max, c.t_step)
              : c.kind == "fig2" ? sweep_fig2(c.thetas, c.t_max, c.t_step)
                                 : sweep_insets(c.points);
  emit(ctx, {{"kind", c.kind}, {"table", tab.to_json(ctx.config)}}, tab);
}

struct CaseCmd {
  std::string kind;
  double b2 = 0.3, b3 = 0.4;
  double m = 1.0, q = 1.0, a_x = 1.0, eps = 0.01;
  StateOpts state;
  std::int64_t t = 100;
  std::vector<double> weights{1.0, 0.0, 1.0};
};

void run_case(Context& ctx, const CaseCmd& c) {
  InitialKind kind;
  const WalkerState init = prepare_state(ctx, c.state, kind);
  if (c.t < 1) throw Error(ErrorKind::InvalidParams, "--t must be >= 1");
  const WeightMatrix w(c.weights.at(0), c.weights.at(1), c.weights.at(2));
  json doc;
  Table tab({"t", "p1", "p2", "theta", "alpha", "F11", "F12", "F22", "symmetric_bound",
             "roundtrip_error", "first_order_error"});
  std::optional<CoinParams> coin;
  Jacobian2 jac;
  double p1, p2, roundtrip, first_order;
  if (c.kind == "magnetic") {
    const MagneticField f{c.b2, c.b3};
    coin = coin_from_magnetic(f);
    jac = magnetic_jacobian(f);
    const MagneticInverse inv = magnetic_from_coin(*coin);
    if (inv.report.condition > 1e8) ctx.warn("inverse map is ill-conditioned (condition " + format_double(inv.report.condition) + ")");
    roundtrip = std::max(std::abs(inv.field.b2 - f.b2), std::abs(inv.field.b3 - f.b3));
    const CoinAngles lin = magnetic_coin_angles_first_order(f);
    const CoinAngles ex = magnetic_coin_angles(f);
    first_order = std::max(std::abs(lin.theta - ex.theta), std::abs(lin.alpha - ex.alpha));
    p1 = f.b2;
    p2 = f.b3;
    doc["field"] = {{"b2", f.b2}, {"b3", f.b3}, {"magnitude", f.magnitude()}};
    doc["inverse"] = {{"b2", inv.field.b2}, {"b3", inv.field.b3}, {"iterations", inv.report.iterations},
                      {"residual", inv.report.residual}, {"condition", inv.report.condition}};
    doc["first_order_angle_error"] = first_order;
  } else {
    const DiracParams d{c.m, c.q, c.a_x, c.eps};
    coin = coin_from_dirac(d);
    jac = dirac_jacobian(d);
    const DiracInverse inv = dirac_from_coin(*coin, d.a_x, d.eps);
    if (inv.report.condition > 1e8) ctx.warn("inverse map is ill-conditioned (condition " + format_double(inv.report.condition) + ")");
    roundtrip = std::max(std::abs(inv.m - d.m), std::abs(inv.q - d.q));
    const auto [m1, q1] = dirac_first_order_inverse(*coin, d.a_x, d.eps);
    first_order = std::max(std::abs(m1 - d.m), std::abs(q1 - d.q));
    p1 = d.m;
    p2 = d.q;
    doc["dirac"] = {{"m", d.m}, {"q", d.q}, {"A_x", d.a_x}, {"eps", d.eps}, {"omega", d.omega()}};
    doc["inverse"] = {{"m", inv.m}, {"q", inv.q}, {"iterations", inv.report.iterations},
                      {"residual", inv.report.residual}, {"condition", inv.report.condition}};
    doc["first_order_recovery"] = {{"m", m1}, {"q", q1}, {"error", first_order}};
  }
  const AsymptoticQfim a = qfim_asymptotic(*coin, init, c.t);
  const ParamMatrix fphys = pullback_qfim(a.fisher, jac);
  const double cs = symmetric_bound(fphys, w);
  doc["coin"] = params_json(*coin);
  doc["init"] = describe(kind);
  doc["t"] = c.t;
  doc["jacobian"] = {{"labels", jac.labels}, {"entries", jac.j}};
  doc["fisher_coin"] = a.fisher.block({"theta", "alpha"}).to_json();
  doc["fisher_physical"] = fphys.to_json();
  doc["symmetric_bound_physical"] = cs;
  doc["holevo_bound_physical"] = cs;  // asymptotic Uhlmann curvature vanishes
  doc["roundtrip_error"] = roundtrip;
  tab.add_row({static_cast<double>(c.t), p1, p2, coin->theta(), coin->alpha(), fphys(0, 0), fphys(0, 1),
               fphys(1, 1), cs, roundtrip, first_order});
  emit(ctx, doc, ctx.output.empty() ? std::nullopt : std::optional<Table>(tab));
}

struct EstimateCmd {
  CoinOpts coin;
  StateOpts state;
  std::int64_t t = 50;
  std::int64_t shots = 100000;
  std::uint64_t seed = 7;
  std::uint64_t stream = 0;
  std::string grid_theta = "0.05:1.5207963267948966:200";
  std::string grid_alpha = "-3.141592653589793:3.1101767270538954:200";
};

void run_estimate(Context& ctx, const EstimateCmd& c) {
  const CoinParams p(c.coin.theta, c.coin.alpha, c.coin.beta);
  InitialKind kind;
  const WalkerState init = prepare_state(ctx, c.state, kind);
  if (c.t < 1) throw Error(ErrorKind::InvalidParams, "--t must be >= 1");
  const Range rt = parse_range(c.grid_theta, "--grid-theta");
  const Range ra = parse_range(c.grid_alpha, "--grid-alpha");
  SearchGrid g{rt.lo, rt.hi, rt.n, ra.lo, ra.hi, ra.n, p.beta()};
  MeasurementRecord rec = sample(evolve(init, p, c.t), c.shots, c.seed, c.stream);
  rec.params_true = CoinAngles{p.theta(), p.alpha(), p.beta()};
  const MleResult fit = mle_fit(rec, init, g);
  for (const auto& d : fit.diagnostics) ctx.warn(d, ErrorKind::NoConvergence);
  const ParamMatrix cfi = classical_fi(p, init, c.t);
  const OracleResult q = qfim_exact(init, p, c.t);
  const double n = static_cast<double>(c.shots);
  emit(ctx,
       {{"params", params_json(p)},
        {"init", describe(kind)},
        {"record", rec.to_json()},
        {"fit", fit.to_json()},
        {"classical_fisher", cfi.to_json()},
        {"quantum_fisher", q.fisher.to_json()},
        {"cramer_rao_theta", {{"classical", cfi(0, 0) > 0 ? 1.0 / (n * cfi(0, 0)) : kNaN},
                              {"quantum", 1.0 / (n * q.fisher(0, 0))}}}},
       ctx.output.empty() ? std::nullopt : std::optional<Table>(rec.counts_table()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qwf: quantum-walk Fisher information toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);
  Context ctx;
  int threads = 0;
  app.add_flag("--strict", ctx.strict, "promote warnings to errors");
  app.add_option("--threads", threads, "worker threads (overrides QWF_THREADS)");
  app.add_option("--output", ctx.output, "output path prefix (writes PREFIX.json and PREFIX.csv)");

  EvolveCmd ev;
  auto* s_ev = app.add_subcommand("evolve", "evolve a walker and dump state and position distribution");
  add_coin(s_ev, ev.coin);
  add_state(s_ev, ev.state, "localized:0");
  s_ev->add_option("--t", ev.t, "steps")->capture_default_str();

  QfimCmd qf;
  auto* s_qf = app.add_subcommand("qfim", "quantum Fisher information matrix by one or more routes");
  add_coin(s_qf, qf.coin);
  add_state(s_qf, qf.state, "entangled:0:1");
  s_qf->add_option("--t", qf.t, "steps")->capture_default_str();
  s_qf->add_option("--route", qf.routes, "analytic, localized, oracle")->delimiter(',')->capture_default_str();
  s_qf->add_option("--rel-tol", qf.rel_tol, "quadrature relative tolerance")->capture_default_str();
  s_qf->add_option("--beta-nodes", qf.beta_nodes, "k-grid size for the beta null check")->capture_default_str();

  BoundsCmd bd;
  auto* s_bd = app.add_subcommand("bounds", "symmetric and Holevo bounds");
  add_coin(s_bd, bd.coin);
  add_state(s_bd, bd.state, "entangled:0:1");
  s_bd->add_option("--t", bd.t, "steps")->capture_default_str();
  s_bd->add_option("--route", bd.route, "analytic or oracle")->capture_default_str();
  s_bd->add_option("--weights", bd.weights, "w00,w01,w11")->delimiter(',')->expected(3)->capture_default_str();

  SweepCmd sw;
  auto* s_sw = app.add_subcommand("sweep", "figure data: fig1, fig2, insets");
  s_sw->add_option("kind", sw.kind, "fig1 | fig2 | insets")->required()->check(CLI::IsMember({"fig1", "fig2", "insets"}));
  s_sw->add_option("--theta", sw.theta, "theta for fig1")->capture_default_str();
  s_sw->add_option("--thetas", sw.thetas, "theta list for fig2")->delimiter(',')->capture_default_str();
  s_sw->add_option("--t-max", sw.t_max, "largest t")->capture_default_str();
  s_sw->add_option("--t-step", sw.t_step, "t increment")->capture_default_str();
  s_sw->add_option("--points", sw.points, "theta points for insets")->capture_default_str();

  CaseCmd cs;
  auto* s_cs = app.add_subcommand("case", "physical case studies: magnetic, dirac");
  s_cs->add_option("kind", cs.kind, "magnetic | dirac")->required()->check(CLI::IsMember({"magnetic", "dirac"}));
  s_cs->add_option("--b2", cs.b2, "field component b2")->capture_default_str();
  s_cs->add_option("--b3", cs.b3, "field component b3")->capture_default_str();
  s_cs->add_option("--m", cs.m, "mass")->capture_default_str();
  s_cs->add_option("--q", cs.q, "charge")->capture_default_str();
  s_cs->add_option("--Ax,--ax", cs.a_x, "vector potential component")->capture_default_str();
  s_cs->add_option("--eps", cs.eps, "Trotter step")->capture_default_str();
  add_state(s_cs, cs.state, "entangled:0:1");
  s_cs->add_option("--t", cs.t, "steps")->capture_default_str();
  s_cs->add_option("--weights", cs.weights, "w00,w01,w11")->delimiter(',')->expected(3)->capture_default_str();

  EstimateCmd es;
  auto* s_es = app.add_subcommand("estimate", "sample positions and fit (theta, alpha) by maximum likelihood");
  add_coin(s_es, es.coin);
  add_state(s_es, es.state, "entangled:0:1");
  s_es->add_option("--t", es.t, "steps")->capture_default_str();
  s_es->add_option("--shots", es.shots, "measurement shots")->capture_default_str();
  s_es->add_option("--seed", es.seed, "RNG seed")->capture_default_str();
  s_es->add_option("--stream", es.stream, "RNG stream")->capture_default_str();
  s_es->add_option("--grid-theta", es.grid_theta, "lo:hi:n or a fixed value")->capture_default_str();
  s_es->add_option("--grid-alpha", es.grid_alpha, "lo:hi:n or a fixed value")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) setenv("QWF_THREADS", std::to_string(threads).c_str(), 1);
  try {
    CLI::App* sub = app.get_subcommands().front();
    ctx.config = config_echo(sub->get_name(), sub);
    ctx.config["strict"] = ctx.strict;
    if (sub == s_ev) run_evolve(ctx, ev);
    else if (sub == s_qf) run_qfim(ctx, qf);
    else if (sub == s_bd) run_bounds(ctx, bd);
    else if (sub == s_sw) run_sweep(ctx, sw);
    else if (sub == s_cs) run_case(ctx, cs);
    else if (sub == s_es) run_estimate(ctx, es);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
