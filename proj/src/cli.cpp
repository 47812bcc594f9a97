#include "pscale/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pscale/control.hpp"
#include "pscale/error.hpp"
#include "pscale/model_io.hpp"
#include "pscale/network.hpp"
#include "pscale/oracle.hpp"
#include "pscale/passage_laws.hpp"

namespace pscale {

namespace {

using nlohmann::json;

struct Options {
  std::string model;
  std::string spec;
  std::string out;
  std::string law;
  std::string objective;
  std::string penalty;
  std::string theta = "0";
  std::string vartheta = "0";
  std::string b = "1";
  std::string x_grid;
  double q = 0.0;
  std::optional<double> r;
  double k = 0.0;
  double K = 0.0;
  double x = 0.0;
  double a = 0.0;
  double y = 0.5;
  double u0 = 0.0;
  std::optional<double> horizon;
  std::optional<double> b_max;
  std::uint64_t seed = 1;
  std::size_t paths = 100000;
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

double parse_real(const std::string& text, const char* what, bool allow_inf) {
  if (allow_inf && (text == "INF" || text == "inf" || text == "Inf" || text == "infinity"))
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    raise(Errc::domain_error, std::string("cannot parse ") + what + " '" + text + "'");
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) raise(Errc::domain_error, "--x-grid expects a:b:n");
  const double lo = parse_real(parts[0], "grid start", false);
  const double hi = parse_real(parts[1], "grid end", false);
  const double n_real = parse_real(parts[2], "grid size", false);
  if (n_real < 1 || n_real != std::floor(n_real)) raise(Errc::domain_error, "grid size must be a positive integer");
  const auto n = static_cast<std::size_t>(n_real);
  if (n == 1) return {lo};
  if (!(hi > lo)) raise(Errc::domain_error, "grid must be strictly increasing (a < b)");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

Penalty parse_penalty(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "exp") return ExponentialPenalty{parse_real(args, "penalty theta", false)};
  if (kind == "const") return ConstantPenalty{parse_real(args, "penalty constant", false)};
  if (kind == "linear") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) raise(Errc::domain_error, "linear penalty expects linear:k,K");
    return LinearPenalty{parse_real(args.substr(0, comma), "penalty slope", false),
                         parse_real(args.substr(comma + 1), "penalty intercept", false)};
  }
  raise(Errc::unsupported_penalty, "penalty '" + spec + "'; use exp:theta, linear:k,K or const:K");
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) raise(Errc::domain_error, "cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> x_values(const Options& o) { return o.x_grid.empty() ? std::vector<double>{o.x} : parse_grid(o.x_grid); }

LevyModel need_model(const Options& o) {
  if (o.model.empty()) raise(Errc::invalid_model, "--model FILE is required");
  return load_model(o.model);
}

void write_row(std::ostream& os, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
  os << '\n';
}

// ---------------------------------------------------------------------------

void cmd_scale(const Options& o, std::ostream& os) {
  const LevyModel m = need_model(o);
  const ScaleContext ctx(m, o.q);
  const bool with_theta = o.theta != "0";
  const double theta = parse_real(o.theta, "--theta", false);
  std::optional<ParisianContext> pctx;
  if (o.r) pctx.emplace(ctx, *o.r);

  os << "x,W,dW,Wbar,Z,Zbar,Z1";
  if (with_theta) os << ",Z_theta";
  if (pctx) {
    os << ",W_qr,Z_qr";
    if (o.q > 0.0) os << ",S";
  }
  os << '\n';
  for (double x : x_values(o)) {
    if (x < 0.0) raise(Errc::domain_error, "scale tables need x >= 0");
    std::vector<double> row{x,
                            ctx.W(x),
                            ctx.W(x, 1),
                            ctx.Wbar(x),
                            ctx.plain(x, ZKind::Z),
                            ctx.plain(x, ZKind::Zbar),
                            ctx.plain(x, ZKind::Z1)};
    if (with_theta) row.push_back(ctx.Z(x, theta));
    if (pctx) {
      row.push_back(pctx->W(x));
      row.push_back(pctx->Z(x, theta));
      if (o.q > 0.0) row.push_back(pctx->scriptS(x));
    }
    write_row(os, row);
  }
}

void cmd_law(const Options& o, std::ostream& os) {
  bool known = false;
  for (const auto& n : law_names()) known = known || n == o.law;
  if (!known) {
    std::string msg = "unknown law '" + o.law + "'; valid laws:";
    for (const auto& n : law_names()) msg += " " + n;
    raise(Errc::domain_error, msg);
  }

  const LevyModel m = need_model(o);
  const ScaleContext ctx(m, o.q);
  std::optional<ParisianContext> pctx;
  if (law_needs_parisian(o.law)) {
    if (!o.r) raise(Errc::domain_error, "law '" + o.law + "' needs --r");
    pctx.emplace(ctx, *o.r);
  }
  LawQuery query;
  query.name = o.law;
  query.a = o.a;
  query.b = parse_real(o.b, "--b", false);
  query.y = o.y;
  query.theta = parse_real(o.theta, "--theta", true);
  query.vartheta = parse_real(o.vartheta, "--vartheta", true);
  query.r_red = o.r.value_or(0.0);
  if (!o.penalty.empty()) query.penalty = parse_penalty(o.penalty);

  os << "x,value\n";
  for (double x : x_values(o)) {
    query.x = x;
    write_row(os, {x, evaluate_law(ctx, pctx ? &*pctx : nullptr, query).value});
  }
}

const std::vector<std::string>& objective_names() {
  static const std::vector<std::string> names = {
      "dividends_classic", "definetti",         "slg_classic",     "parisian_vf_div",
      "parisian_vf_bail",  "parisian_vs_div",   "parisian_vs_div_theta", "parisian_vs_bail",
      "slg_parisian"};
  return names;
}

void cmd_value(const Options& o, std::ostream& os) {
  bool known = false;
  for (const auto& n : objective_names()) known = known || n == o.objective;
  if (!known) {
    std::string msg = "unknown objective '" + o.objective + "'; valid objectives:";
    for (const auto& n : objective_names()) msg += " " + n;
    raise(Errc::domain_error, msg);
  }
  const LevyModel m = need_model(o);
  const ScaleContext ctx(m, o.q);
  const bool parisian = o.objective.rfind("parisian_", 0) == 0 || o.objective == "slg_parisian";
  std::optional<ParisianContext> pctx;
  if (parisian) {
    if (!o.r) raise(Errc::domain_error, "objective '" + o.objective + "' needs --r");
    pctx.emplace(ctx, *o.r);
  }
  // definetti without --penalty uses w(y) = k y + K
  const Penalty penalty = o.penalty.empty() ? Penalty{LinearPenalty{o.k, o.K}} : parse_penalty(o.penalty);
  const double theta = parse_real(o.theta, "--theta", false);

  double b;
  if (o.b == "optimal") {
    std::optional<BarrierFunction> G;
    if (o.objective == "dividends_classic") G = BarrierFunction::definetti_classic(ctx, ConstantPenalty{0.0});
    else if (o.objective == "definetti") G = BarrierFunction::definetti_classic(ctx, penalty);
    else if (o.objective == "slg_classic") G = BarrierFunction::slg_classic(ctx, o.k);
    else if (o.objective == "slg_parisian") G = BarrierFunction::slg_parisian(*pctx, o.k);
    else raise(Errc::domain_error, "--b optimal is available for dividends_classic, definetti, slg_classic, slg_parisian");
    b = optimize_barrier(*G, o.b_max).b_star;
  } else {
    b = parse_real(o.b, "--b", false);
  }

  const std::map<std::string, std::function<double(double)>> eval = {
      {"dividends_classic", [&](double x) { return vf_dividends_classic(ctx, x, b); }},
      {"definetti", [&](double x) { return value_definetti(ctx, x, b, penalty); }},
      {"slg_classic", [&](double x) { return value_slg_classic(ctx, x, b, o.k); }},
      {"parisian_vf_div", [&](double x) { return value_parisian(*pctx, x, b, ParisianPart::vf_div); }},
      {"parisian_vf_bail", [&](double x) { return value_parisian(*pctx, x, b, ParisianPart::vf_bail); }},
      {"parisian_vs_div", [&](double x) { return value_parisian(*pctx, x, b, ParisianPart::vs_div); }},
      {"parisian_vs_div_theta",
       [&](double x) { return value_parisian(*pctx, x, b, ParisianPart::vs_div_theta, theta); }},
      {"parisian_vs_bail", [&](double x) { return value_parisian(*pctx, x, b, ParisianPart::vs_bail); }},
      {"slg_parisian", [&](double x) { return slg_parisian_value(*pctx, x, b, o.k); }},
  };
  const auto& f = eval.at(o.objective);
  os << "x,b,value\n";
  for (double x : x_values(o)) write_row(os, {x, b, f(x)});
}

void cmd_efficiency(const Options& o, std::ostream& os) {
  if (!o.r) raise(Errc::domain_error, "efficiency needs --r");
  const LevyModel m = need_model(o);
  const ParisianContext pctx(m, o.q, *o.r);
  const double threshold = efficiency_index(pctx);
  json j = {{"threshold", json_number(threshold)},
            {"efficient", is_efficient(pctx, o.k)},
            {"patience", json_number(solve_patience(pctx, o.k))}};
  os << j.dump() << '\n';
}

void cmd_simulate(const Options& o, std::ostream& os) {
  const LevyModel m = need_model(o);
  OracleQuery query;
  query.name = o.law;
  query.q = o.q;
  query.x = o.x;
  query.a = o.a;
  query.b = parse_real(o.b, "--b", false);
  query.theta = parse_real(o.theta, "--theta", true);
  query.vartheta = parse_real(o.vartheta, "--vartheta", true);
  query.k = o.k;
  query.r = o.r.value_or(0.0);
  query.r_red = o.r.value_or(0.0);
  OracleCase c = make_oracle_case(m, query);
  if (o.horizon) c.config.horizon = o.horizon;
  const MCEstimate est = estimate(c.config, c.functional, o.paths, o.seed);
  const double gap = est.mean - c.analytic;
  const double z = est.std_error > 0.0 ? gap / est.std_error : (gap == 0.0 ? 0.0 : std::copysign(INFINITY, gap));
  json j = {{"law", o.law},
            {"mean", est.mean},
            {"se", est.std_error},
            {"ci95", {est.ci95_lo, est.ci95_hi}},
            {"analytic", json_number(c.analytic)},
            {"z_score", json_number(z)},
            {"n_paths", est.n_paths},
            {"tail_bound", json_number(est.tail_bound)}};
  os << j.dump() << '\n';
}

void cmd_network(const Options& o, std::ostream& os) {
  if (o.spec.empty()) raise(Errc::invalid_model, "--spec FILE is required");
  const NetworkSpec spec = load_network(o.spec);
  const NetworkCheck chk = network_check(spec);
  const double b = parse_real(o.b, "--b", false);
  const NetworkValue v = network_value_mc(spec, o.u0, b, o.paths, o.seed, o.horizon);
  json j = {{"cheap", chk.cheap},
            {"gamma", chk.gamma},
            {"c_tilde", chk.c_tilde},
            {"claims_line", network_claims_line(spec, o.u0)},
            {"mc_value", v.value.mean},
            {"se", v.value.std_error},
            {"lemma_value", v.lemma_value.mean},
            {"max_path_gap", v.max_path_gap},
            {"bailouts", v.bailouts}};
  os << j.dump() << '\n';
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::convergence_failure:
    case Errc::degenerate_roots:
    case Errc::no_solution:
    case Errc::barrier_search:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale-function toolkit for spectrally negative Levy risk processes"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "model JSON file");
    sub->add_option("--q", o.q, "discount rate")->check(CLI::NonNegativeNumber);
    sub->add_option("--r", o.r, "Poisson observation rate");
    sub->add_option("--theta", o.theta, "transform argument theta (INF allowed)");
    sub->add_option("--vartheta", o.vartheta, "dividend transform argument (INF allowed)");
    sub->add_option("--k", o.k, "proportional bailout cost or penalty slope");
    sub->add_option("--K", o.K, "fixed penalty");
    sub->add_option("--x", o.x, "initial reserve");
    sub->add_option("--x-grid", o.x_grid, "grid a:b:n of initial reserves");
    sub->add_option("--a", o.a, "lower level");
    sub->add_option("--b", o.b, "upper barrier (or 'optimal' for value)");
    sub->add_option("--y", o.y, "resolvent point");
    sub->add_option("--penalty", o.penalty, "exp:theta | linear:k,K | const:K");
    sub->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* scale = app.add_subcommand("scale", "tabulate W, Z and their Parisian versions");
  common(scale);
  auto* law = app.add_subcommand("law", "evaluate a first-passage law");
  common(law);
  law->add_option("--law", o.law, "law name");
  auto* value = app.add_subcommand("value", "evaluate a dividend/bailout value function");
  common(value);
  value->add_option("--objective", o.objective, "objective name")->required();
  value->add_option("--b-max", o.b_max, "search range for --b optimal");
  auto* eff = app.add_subcommand("efficiency", "efficiency threshold and patience");
  common(eff);
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo check of a closed-form law");
  common(sim);
  sim->add_option("--law,--functional", o.law, "law to simulate")->required();
  sim->add_option("--seed", o.seed, "random seed");
  sim->add_option("--paths", o.paths, "number of paths")->check(CLI::PositiveNumber);
  sim->add_option("--horizon", o.horizon, "truncation time");
  auto* net = app.add_subcommand("network", "claims-line valuation of a central-branch network");
  net->add_option("--spec", o.spec, "network JSON file")->required();
  net->add_option("--u0", o.u0, "CB initial reserve");
  net->add_option("--b", o.b, "CB dividend barrier");
  net->add_option("--seed", o.seed, "random seed");
  net->add_option("--paths", o.paths, "number of paths")->check(CLI::PositiveNumber);
  net->add_option("--horizon", o.horizon, "truncation time");
  net->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Output sink(o.out, out);
    std::ostream& os = sink.get();
    if (*scale) cmd_scale(o, os);
    else if (*law) cmd_law(o, os);
    else if (*value) cmd_value(o, os);
    else if (*eff) cmd_efficiency(o, os);
    else if (*sim) cmd_simulate(o, os);
    else if (*net) cmd_network(o, os);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace pscale
