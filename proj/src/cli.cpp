#include "sharpmax/cli.hpp"

#include "sharpmax/covering.hpp"
#include "sharpmax/dstruct.hpp"
#include "sharpmax/error.hpp"
#include "sharpmax/io.hpp"
#include "sharpmax/maximal.hpp"
#include "sharpmax/poincare.hpp"
#include "sharpmax/samples.hpp"
#include "sharpmax/sobolev.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace sharpmax {

namespace {

using nlohmann::json;

struct Inputs {
  MetricMeasureSpace space;
  std::vector<HolderFunction> functions;
  std::string function_source;
};

DStructureKind kind_of(const CliOptions& o) {
  if (o.kind == "hajlasz") return DStructureKind::hajlasz(o.beta);
  if (o.kind == "upper") return DStructureKind::graph_upper();
  throw Error(ErrorCode::InvalidArgument, "--kind must be hajlasz or upper");
}

Inputs load_inputs(const CliOptions& o, std::size_t sample_count) {
  Inputs in{load_space(o.space), {}, {}};
  if (o.function) {
    in.functions.push_back(parse_function(read_file(*o.function), in.space, *o.function));
    in.function_source = *o.function;
  } else {
    in.functions = holder_samples(in.space, sample_count, o.beta, o.seed);
    in.function_source = "samples";
  }
  return in;
}

Index checked_point(const MetricMeasureSpace& space, long long x, const char* flag) {
  if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidIndex, std::string(flag) + " out of range");
  return static_cast<Index>(x);
}

Ball base_ball(const MetricMeasureSpace& space, const CliOptions& o) {
  Index c = 0;
  if (o.center) {
    c = checked_point(space, *o.center, "--center");
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (Index x = 0; x < space.size(); ++x) {
      const double ecc = space.dist().row(x).maxCoeff();
      if (ecc < best) {
        best = ecc;
        c = x;
      }
    }
  }
  const double r = o.radius ? *o.radius : 0.5 * space.diameter();
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "--radius must be positive");
  return ball(space, c, r);
}

json ball_json(const Ball& b) {
  return {{"center", b.center}, {"radius", b.radius}, {"set_diam", b.set_diam}, {"members", b.members}};
}

GradientCandidate gradient_for(const Inputs& in, const CliOptions& o, const HolderFunction& f) {
  if (o.gradient) return parse_gradient(read_file(*o.gradient), in.space, *o.gradient);
  return minimal_gradient(in.space, f.values, kind_of(o), o.p);
}

Table per_point(const std::string& name, const std::string& column, const Eigen::VectorXd& v) {
  Table t{name, {"point", column}, {}};
  for (Index i = 0; i < v.size(); ++i) t.rows.push_back({static_cast<double>(i), v(i)});
  return t;
}

std::string fmt(double x) { return format_number(x); }

CommandResult cmd_stats(const CliOptions& o) {
  const MetricMeasureSpace space = load_space(o.space);
  const SpaceStats st = space_stats(space);
  CommandResult r;
  r.report = {{"c_mu", st.c_mu}, {"s", st.s}, {"geo_defect", st.geo_defect}, {"diameter", st.diameter},
              {"mesh", space.mesh()}, {"n", space.size()}, {"total_measure", space.total_measure()}};
  r.tables.push_back({"stats", {"n", "c_mu", "s", "geo_defect", "diameter", "mesh"},
                      {{static_cast<double>(space.size()), st.c_mu, st.s, st.geo_defect, st.diameter, space.mesh()}}});
  r.summary = "stats: n=" + std::to_string(space.size()) + " c_mu=" + fmt(st.c_mu) + " s=" + fmt(st.s) +
              " geo_defect=" + fmt(st.geo_defect);
  return r;
}

CommandResult cmd_maximal(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  BallFamily family = global_family(in.space);
  json fam = "global";
  if (o.center || o.radius) {
    const Ball b0 = base_ball(in.space, o);
    family = localized_family(in.space, b0, family);
    fam = {{"localized", ball_json(b0)}};
  }
  const MaximalProfile prof = sharp_maximal(in.space, f.values, o.p, o.beta, family);
  CommandResult r;
  r.report = {{"family", fam}, {"family_size", family.balls.size()}, {"profile", vector_to_json(prof.values)},
              {"max", prof.values.maxCoeff()}};
  r.tables.push_back(per_point("profile", "value", prof.values));
  r.summary = "maximal: n=" + std::to_string(in.space.size()) + " max=" + fmt(prof.values.maxCoeff());
  return r;
}

CommandResult cmd_gradient(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  const GradientCandidate g = gradient_for(in, o, f);
  const Feasibility feas = feasibility(in.space, f.values, g);
  CommandResult r;
  r.report = {{"gradient", gradient_to_json(g)}, {"source", o.gradient ? "supplied" : "minimal"},
              {"norm", lp_norm(in.space, g.values, o.p)}, {"feasible", feas.feasible},
              {"worst_violation", feas.worst_violation}};
  if (feas.witness) r.report["witness"] = feas.witness->vertices;
  r.tables.push_back(per_point("gradient", "g", g.values));
  r.violations = !feas.feasible;
  r.summary = "gradient: kind=" + o.kind + " norm=" + fmt(lp_norm(in.space, g.values, o.p)) +
              (feas.feasible ? " feasible" : " INFEASIBLE");
  return r;
}

CommandResult cmd_poincare(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  const GradientCandidate g = gradient_for(in, o, f);
  const Feasibility feas = feasibility(in.space, f.values, g);
  const double k = poincare_constant(in.space, f.values, g.values, {o.q, o.p, o.beta, o.tau}, global_family(in.space));
  CommandResult r;
  const bool hajlasz_bound = g.kind.tag == GradientKind::Hajlasz && o.q == o.p && o.tau == 1.0 && !o.gradient;
  const double bound = std::pow(2.0, o.p);
  r.report = {{"K", k}, {"gradient_feasible", feas.feasible}, {"gradient", gradient_to_json(g)}};
  if (hajlasz_bound) r.report["hajlasz_bound"] = {{"bound", bound}, {"holds", k <= bound + 1e-9}};
  r.violations = !std::isfinite(k) || !feas.feasible || (hajlasz_bound && k > bound + 1e-9);
  r.tables.push_back({"poincare", {"q", "p", "beta", "tau", "K"}, {{o.q, o.p, o.beta, o.tau, k}}});
  r.summary = "poincare: K=" + fmt(k);
  return r;
}

CommandResult cmd_improve(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  const GradientCandidate g = gradient_for(in, o, f);
  const SelfImprovementReport rep = self_improvement_report(in.space, f.values, g.values, o.p, o.beta, o.tau, o.Q);
  CommandResult r;
  json rows = json::array();
  Table t{"improve", {"q", "K_qp", "ratio"}, {}};
  bool finite = std::isfinite(rep.k_1p);
  for (const auto& row : rep.table) {
    rows.push_back({{"q", row.q}, {"K_qp", row.k_qp}, {"ratio", row.ratio}});
    t.rows.push_back({row.q, row.k_qp, row.ratio});
    finite = finite && std::isfinite(row.k_qp);
  }
  r.report = {{"Q", rep.Q}, {"q_max", rep.q_max}, {"K_1p", rep.k_1p}, {"table", rows},
              {"jensen_ordered", rep.jensen_ordered}};
  r.tables.push_back(std::move(t));
  r.violations = !rep.jensen_ordered || !finite;
  r.summary = "improve: q_max=" + fmt(rep.q_max) + " K_1p=" + fmt(rep.k_1p);
  return r;
}

CommandResult cmd_audit(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  const GradientCandidate g = gradient_for(in, o, f);
  const Ball b0 = base_ball(in.space, o);
  const AuditReport a = main_inequality_audit(in.space, b0, f.values, g.values, o.p, o.beta, {o.k, o.epsilon});
  CommandResult r;
  r.report = {{"B0", ball_json(b0)},          {"lhs", a.lhs},
              {"term_absorb", a.term_absorb}, {"term_gradient", a.term_gradient},
              {"C_k_eps", a.c_k_eps},         {"implied_C1", a.implied_C1},
              {"implied_C", a.implied_C},     {"alpha", a.alpha},
              {"s", a.s},                     {"K_pp", a.k_pp},
              {"family_size", a.family_size}, {"empty_family", a.empty_family}};
  r.tables.push_back({"audit",
                      {"lhs", "term_absorb", "term_gradient", "implied_C1", "implied_C"},
                      {{a.lhs, a.term_absorb, a.term_gradient, a.implied_C1, a.implied_C}}});
  r.violations = !std::isfinite(a.implied_C) || !std::isfinite(a.implied_C1);
  r.summary = "audit: lhs=" + fmt(a.lhs) + " implied_C=" + fmt(a.implied_C) + " implied_C1=" + fmt(a.implied_C1);
  return r;
}

CommandResult cmd_kz(const CliOptions& o) {
  const Inputs in = load_inputs(o, o.samples);
  const KzReport rep = kz_sweep(in.space, kind_of(o), o.p, o.beta, o.epsilons, in.functions);
  CommandResult r;
  json rows = json::array();
  Table per_eps{"kz", {"epsilon", "max"}, {}};
  Table per_sample{"kz_samples", {"epsilon", "sample", "constant"}, {}};
  for (const KzRow& row : rep.rows) {
    rows.push_back({{"epsilon", row.epsilon}, {"constants", row.constants}, {"max", row.max}});
    per_eps.rows.push_back({row.epsilon, row.max});
    for (std::size_t s = 0; s < row.constants.size(); ++s) {
      per_sample.rows.push_back({row.epsilon, static_cast<double>(s), row.constants[s]});
    }
  }
  bool mono = true;
  for (bool m : rep.monotone) mono = mono && m;
  r.report = {{"rows", rows}, {"monotone", rep.monotone}, {"samples", in.functions.size()}};
  r.tables.push_back(std::move(per_eps));
  r.tables.push_back(std::move(per_sample));
  r.violations = !mono;
  r.summary = "kz: " + std::to_string(rep.rows.size()) + " epsilons, " + std::to_string(in.functions.size()) +
              " samples" + (mono ? "" : ", non-monotone");
  return r;
}

CommandResult cmd_norms(const CliOptions& o) {
  const Inputs in = load_inputs(o, o.samples);
  const DStructureKind kind = kind_of(o);
  const NormEquivalenceReport rep = norm_equivalence_report(in.space, in.functions, o.p, o.beta, kind);
  CommandResult r;
  json rows = json::array();
  Table t{"norms", {"sample", "lp", "grad", "sobolev", "sharp", "eta", "ratio"}, {}};
  bool bad = false;
  for (std::size_t s = 0; s < rep.rows.size(); ++s) {
    const NormReport& n = rep.rows[s];
    rows.push_back({{"lp", n.lp_norm}, {"grad", n.grad_norm}, {"sobolev", n.sobolev_norm}, {"sharp", n.sharp_norm},
                    {"eta", n.eta}, {"ratio", n.ratio}});
    t.rows.push_back({static_cast<double>(s), n.lp_norm, n.grad_norm, n.sobolev_norm, n.sharp_norm, n.eta, n.ratio});
    bad = bad || !(n.ratio > 0.0 && std::isfinite(n.ratio)) ||
          n.sobolev_norm > std::max(1.0, n.eta) * n.sharp_norm * (1.0 + 1e-9);
  }
  r.report = {{"rows", rows}, {"min_ratio", rep.min_ratio}, {"max_ratio", rep.max_ratio}, {"spread", rep.spread}};
  r.tables.push_back(std::move(t));
  r.violations = bad;
  r.summary = "norms: " + std::to_string(rep.rows.size()) + " samples, ratio in [" + fmt(rep.min_ratio) + ", " +
              fmt(rep.max_ratio) + "]";
  return r;
}

CommandResult cmd_whitney(const CliOptions& o) {
  const MetricMeasureSpace space = load_space(o.space);
  const Ball b0 = base_ball(space, o);
  const WhitneyCover cover = whitney_or_trivial(space, b0, o.cw);
  const WhitneyProperties w = check_whitney_properties(space, cover);
  CommandResult r;
  json cells = json::array();
  Table t{"cells", {"cell", "center", "radius", "q_size", "q_star_size", "boundary_distance"}, {}};
  for (std::size_t i = 0; i < cover.cells.size(); ++i) {
    const WhitneyCell& c = cover.cells[i];
    cells.push_back({{"q", ball_json(c.q)}, {"q_star", ball_json(c.q_star)}, {"boundary_distance", c.boundary_distance}});
    t.rows.push_back({static_cast<double>(i), static_cast<double>(c.q.center), c.q.radius,
                      static_cast<double>(c.q.members.size()), static_cast<double>(c.q_star.members.size()),
                      c.boundary_distance});
  }
  r.report = {{"B0", ball_json(b0)},
              {"c_w", o.cw},
              {"trivial", cover.trivial},
              {"overlap", cover.overlap},
              {"cells", cells},
              {"properties",
               {{"w1_uncovered", w.w1_uncovered},
                {"w2_overlap", w.w2_overlap},
                {"w2_inside_base", w.w2_inside_base},
                {"w3", {{"checked", w.w3_checked}, {"violations", w.w3_violations}}},
                {"w4", {{"checked", w.w4_checked}, {"violations", w.w4_violations}}},
                {"w5", {{"checked", w.w5_checked}, {"violations", w.w5_violations}}},
                {"w6", {{"checked", w.w6_checked}, {"violations", w.w6_violations}}}}}};
  r.tables.push_back(std::move(t));
  r.violations = w.w1_uncovered > 0 || !w.w2_inside_base;
  r.summary = "whitney: " + std::to_string(cover.cells.size()) + " cells, overlap " + std::to_string(cover.overlap) +
              ", violations W3..W6 = " + std::to_string(w.w3_violations) + "/" + std::to_string(w.w4_violations) + "/" +
              std::to_string(w.w5_violations) + "/" + std::to_string(w.w6_violations);
  return r;
}

CommandResult cmd_chain(const CliOptions& o) {
  const MetricMeasureSpace space = load_space(o.space);
  const Ball b = base_ball(space, o);
  Index x = b.center;
  if (o.point) {
    x = checked_point(space, *o.point, "--point");
  } else {
    for (Index y : b.members) {
      if (space.d(b.center, y) > space.d(b.center, x)) x = y;
    }
  }
  const Chain chain = build_chain(space, b, x, o.tau, o.a);
  const ChainCheck check = check_chain(space, chain);
  CommandResult r;
  json balls = json::array();
  json links = json::array();
  Table t{"chain", {"index", "center", "radius", "size"}, {}};
  for (std::size_t i = 0; i < chain.balls.size(); ++i) {
    balls.push_back(ball_json(chain.balls[i]));
    t.rows.push_back({static_cast<double>(i), static_cast<double>(chain.balls[i].center), chain.balls[i].radius,
                      static_cast<double>(chain.balls[i].members.size())});
  }
  for (const Ball& l : chain.links) links.push_back(ball_json(l));
  r.report = {{"B", ball_json(b)}, {"target", x},       {"tau", o.tau},     {"a", o.a},
              {"M", chain.M},      {"balls", balls},    {"links", links},
              {"check",
               {{"inside", check.inside}, {"terminal", check.terminal}, {"radii", check.radii}, {"links", check.links}}}};
  r.tables.push_back(std::move(t));
  r.violations = !check.ok();
  r.summary = "chain: " + std::to_string(chain.balls.size()) + " balls, M=" + fmt(chain.M) +
              (check.ok() ? " ok" : " FAILED");
  return r;
}

CommandResult cmd_stopping(const CliOptions& o) {
  const Inputs in = load_inputs(o, 1);
  const HolderFunction& f = in.functions.front();
  const Ball b0 = base_ball(in.space, o);
  const WhitneyCover cover = whitney_or_trivial(in.space, b0, o.cw);
  if (o.cell >= cover.cells.size()) throw Error(ErrorCode::InvalidIndex, "--cell out of range");
  const double lambda_q = normalized_oscillation(in.space, f.values, cover.cells[o.cell].q_star, o.p, o.beta);
  const double lambda = o.lambda ? *o.lambda : (lambda_q > 0.0 ? lambda_q : 1.0);
  const StoppingFamily fam = stopping_family(in.space, cover, o.cell, lambda, f.values, o.p, o.beta);
  const double c_mu = doubling_constant(in.space);
  const double upper = 2.0 * 32.0 * std::pow(c_mu, 5.0 / o.p) * lambda;
  CommandResult r;
  json balls = json::array();
  Table t{"stopping", {"seed", "center", "radius", "oscillation", "parent_oscillation"}, {}};
  bool bad = false;
  for (const StoppingBall& s : fam.balls) {
    balls.push_back({{"ball", ball_json(s.ball)}, {"seed", s.seed}, {"oscillation", s.oscillation},
                     {"parent_oscillation", s.parent_oscillation}});
    t.rows.push_back({static_cast<double>(s.seed), static_cast<double>(s.ball.center), s.ball.radius, s.oscillation,
                      s.parent_oscillation});
    bad = bad || !(s.oscillation > lambda) || s.oscillation > upper;
  }
  r.report = {{"B0", ball_json(b0)},       {"cell", o.cell},         {"lambda", lambda},
              {"lambda_Q", fam.lambda_q},  {"level_points", fam.level_points},
              {"balls", balls},            {"parent_steps", fam.steps.size()},
              {"upper_bound", upper}};
  r.tables.push_back(std::move(t));
  r.violations = bad;
  r.summary = "stopping: " + std::to_string(fam.balls.size()) + " balls at lambda=" + fmt(lambda);
  return r;
}

json params_json(const CliOptions& o) {
  json p{{"space", o.space},     {"p", o.p},         {"beta", o.beta},           {"q", o.q},
         {"tau", o.tau},         {"k", o.k},         {"epsilon", o.epsilon},     {"kind", o.kind},
         {"cw", o.cw},           {"seed", o.seed},   {"format", o.format},       {"cell", o.cell},
         {"samples", o.samples}, {"a", o.a},         {"epsilons", o.epsilons}};
  p["function"] = o.function ? json(*o.function) : json(nullptr);
  p["gradient"] = o.gradient ? json(*o.gradient) : json(nullptr);
  p["center"] = o.center ? json(*o.center) : json(nullptr);
  p["radius"] = o.radius ? json(*o.radius) : json(nullptr);
  p["point"] = o.point ? json(*o.point) : json(nullptr);
  p["lambda"] = o.lambda ? json(*o.lambda) : json(nullptr);
  p["Q"] = o.Q ? json(*o.Q) : json(nullptr);
  return p;
}

std::string stem(const CliOptions& o) { return "sharpmax-" + o.command; }

}  // namespace

CommandResult run_command(const CliOptions& opts) {
  CommandResult r;
  if (opts.command == "stats") r = cmd_stats(opts);
  else if (opts.command == "maximal") r = cmd_maximal(opts);
  else if (opts.command == "gradient") r = cmd_gradient(opts);
  else if (opts.command == "poincare") r = cmd_poincare(opts);
  else if (opts.command == "improve") r = cmd_improve(opts);
  else if (opts.command == "audit") r = cmd_audit(opts);
  else if (opts.command == "kz") r = cmd_kz(opts);
  else if (opts.command == "norms") r = cmd_norms(opts);
  else if (opts.command == "whitney") r = cmd_whitney(opts);
  else if (opts.command == "chain") r = cmd_chain(opts);
  else if (opts.command == "stopping") r = cmd_stopping(opts);
  else throw Error(ErrorCode::UnknownCommand, "unknown command '" + opts.command + "'");

  const MetricMeasureSpace space = load_space(opts.space);
  json doc;
  doc["command"] = opts.command;
  doc["version"] = kToolkitVersion;
  doc["seed"] = opts.seed;
  doc["params"] = params_json(opts);
  doc["space"] = {{"name", space.name()}, {"n", space.size()}, {"total_measure", space.total_measure()},
                  {"mesh", space.mesh()}, {"diameter", space.diameter()}};
  doc["result"] = std::move(r.report);
  doc["violations"] = r.violations;
  r.report = std::move(doc);
  return r;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::string render_plotdata(const Table& table) {
  std::string out = "#";
  for (const auto& h : table.header) out += ' ' + h;
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::vector<std::string> emit(const CommandResult& result, const CliOptions& opts) {
  std::vector<std::string> written;
  if (opts.format == "json") {
    const std::string path = opts.out.value_or(stem(opts) + ".json");
    write_file(path, dump_json(result.report));
    written.push_back(path);
  } else if (opts.format == "csv") {
    const std::string path = opts.out.value_or(stem(opts) + ".csv");
    write_file(path, result.tables.empty() ? std::string() : render_csv(result.tables.front()));
    written.push_back(path);
  } else if (opts.format == "plotdata") {
    const std::string prefix = opts.out.value_or(stem(opts));
    for (const Table& t : result.tables) {
      const std::string path = prefix + "." + t.name + ".dat";
      write_file(path, render_plotdata(t));
      written.push_back(path);
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "--format must be json, csv or plotdata");
  }
  return written;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Sharp maximal functions, gradients and Poincaré audits on finite metric measure spaces"};
  CliOptions o;
  app.add_option("command", o.command,
                 "stats | maximal | gradient | poincare | improve | audit | kz | norms | whitney | chain | stopping")
      ->required();
  app.add_option("--space", o.space, "space document, or grid:WxH, path:N, cycle:N, tree:DEPTH")->required();
  app.add_option("--function", o.function, "function document (default: a seeded sample)");
  app.add_option("--gradient", o.gradient, "gradient document (default: the minimal gradient of --kind)");
  app.add_option("--p", o.p, "integrability exponent");
  app.add_option("--beta", o.beta, "Hölder exponent");
  app.add_option("--q", o.q, "left-hand exponent for poincare");
  app.add_option("--tau", o.tau, "dilation");
  app.add_option("--k", o.k, "audit parameter k");
  app.add_option("--epsilon", o.epsilon, "audit exponent gap");
  app.add_option("--epsilons", o.epsilons, "kz sweep grid")->delimiter(',');
  app.add_option("--kind", o.kind, "hajlasz or upper")->check(CLI::IsMember({"hajlasz", "upper"}));
  app.add_option("--cw", o.cw, "Whitney ratio");
  app.add_option("--seed", o.seed, "sample seed");
  app.add_option("--samples", o.samples, "sample count for kz and norms");
  app.add_option("--format", o.format, "json, csv or plotdata")->check(CLI::IsMember({"json", "csv", "plotdata"}));
  app.add_option("--out", o.out, "output file (prefix for plotdata)");
  app.add_option("--center", o.center, "center of B0 / B");
  app.add_option("--radius", o.radius, "radius of B0 / B");
  app.add_option("--point", o.point, "chain target");
  app.add_option("--cell", o.cell, "Whitney cell for stopping");
  app.add_option("--lambda", o.lambda, "stopping level");
  app.add_option("--a", o.a, "chain ratio");
  app.add_option("--Q", o.Q, "dimension exponent for improve");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    const CommandResult r = run_command(o);
    const auto files = emit(r, o);
    std::cout << r.summary;
    for (const auto& f : files) std::cout << (&f == &files.front() ? " -> " : ", ") << f;
    std::cout << '\n';
    return r.violations ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sharpmax
