#include "sharpmax/io.hpp"

#include "sharpmax/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace sharpmax {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, source + ": field '" + field + "': " + what);
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                           e.what());
  }
}

const json& require(const json& doc, const std::string& key, const std::string& source) {
  if (!doc.is_object() || !doc.contains(key)) field_error(source, key, "missing");
  return doc.at(key);
}

double number_at(const json& v, const std::string& field, const std::string& source) {
  if (!v.is_number()) field_error(source, field, "expected a number");
  return v.get<double>();
}

Eigen::VectorXd number_array(const json& v, Index n, const std::string& field, const std::string& source) {
  if (!v.is_array()) field_error(source, field, "expected an array");
  if (n >= 0 && static_cast<Index>(v.size()) != n) {
    field_error(source, field, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = number_at(v[i], field + "/" + std::to_string(i), source);
  return out;
}

void dump_into(const json& doc, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) out += '\n' + std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (doc.type()) {
    case json::value_t::object: {
      if (doc.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (doc.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(doc.begin(), doc.end(), [](const json& v) { return v.is_primitive(); });
      out += '[';
      for (std::size_t i = 0; i < doc.size(); ++i) {
        if (i > 0) out += flat ? ", " : ",";
        if (!flat) pad(depth + 1);
        dump_into(doc[i], indent, depth + 1, out);
      }
      if (!flat) pad(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = doc.get<double>();
      out += std::isfinite(x) ? format_number(x) : json(format_number(x)).dump();
      return;
    }
    default:
      out += doc.dump();
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const json& doc, int indent) {
  std::string out;
  dump_into(doc, indent, 0, out);
  out += '\n';
  return out;
}

MetricMeasureSpace parse_space(const std::string& text, const std::string& source) {
  const json doc = parse_text(text, source);
  if (!doc.is_object()) field_error(source, "/", "expected an object");
  const json& n_field = require(doc, "n", source);
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) field_error(source, "n", "expected a positive integer");
  const auto n = static_cast<Index>(n_field.get<long long>());
  const Eigen::VectorXd measure = number_array(require(doc, "measure", source), n, "measure", source);
  const json& metric = require(doc, "metric", source);
  const json& type = require(metric, "type", source + ": metric");
  if (!type.is_string()) field_error(source, "metric/type", "expected \"matrix\" or \"graph\"");

  auto rethrow = [&](const Error& e, const std::string& field) -> MetricMeasureSpace {
    const std::string where = e.code() == ErrorCode::NonPositiveWeight ? "measure" : field;
    field_error(source, where, e.what());
  };

  MetricMeasureSpace space = [&] {
    if (type == "matrix") {
      const json& rows = require(metric, "d", source + ": metric");
      if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        field_error(source, "metric/d", "expected " + std::to_string(n) + " rows");
      }
      Eigen::MatrixXd d(n, n);
      for (Index i = 0; i < n; ++i) {
        const std::string f = "metric/d/" + std::to_string(i);
        d.row(i) = number_array(rows[i], n, f, source).transpose();
      }
      try {
        return MetricMeasureSpace::from_matrix(std::move(d), measure);
      } catch (const Error& e) {
        return rethrow(e, "metric/d");
      }
    }
    if (type == "graph") {
      const json& list = require(metric, "edges", source + ": metric");
      if (!list.is_array()) field_error(source, "metric/edges", "expected an array");
      std::vector<Edge> edges;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string f = "metric/edges/" + std::to_string(k);
        const json& e = list[k];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          field_error(source, f, "expected [i, j, length]");
        }
        edges.push_back({e[0].get<Index>(), e[1].get<Index>(), number_at(e[2], f + "/2", source)});
      }
      try {
        return MetricMeasureSpace::from_graph(n, edges, measure);
      } catch (const Error& e) {
        return rethrow(e, "metric/edges");
      }
    }
    field_error(source, "metric/type", "expected \"matrix\" or \"graph\"");
  }();
  if (doc.contains("name") && doc["name"].is_string()) space.set_name(doc["name"].get<std::string>());
  return space;
}

MetricMeasureSpace load_space(const std::string& arg) {
  static const std::regex spec(R"((grid|path|cycle|tree):(\d+)(?:x(\d+))?(?:@([0-9.eE+-]+))?)");
  std::smatch m;
  if (std::regex_match(arg, m, spec)) {
    const std::string kind = m[1];
    const auto a = static_cast<Index>(std::stoll(m[2]));
    const double spacing = m[4].matched ? std::stod(m[4]) : 1.0;
    if (kind == "grid") {
      const Index b = m[3].matched ? static_cast<Index>(std::stoll(m[3])) : a;
      return generate_space(SpaceSpec::grid(a, b, spacing));
    }
    if (m[3].matched) throw Error(ErrorCode::InvalidArgument, "only grids take WxH sizes: " + arg);
    if (kind == "path") return generate_space(SpaceSpec::path(a, spacing));
    if (kind == "cycle") return generate_space(SpaceSpec::cycle(a, spacing));
    return generate_space(SpaceSpec::binary_tree(a, spacing));
  }
  return parse_space(read_file(arg), arg);
}

HolderFunction parse_function(const std::string& text, const MetricMeasureSpace& space, const std::string& source) {
  const json doc = parse_text(text, source);
  Eigen::VectorXd values = number_array(require(doc, "values", source), space.size(), "values", source);
  double beta = 1.0;
  if (doc.contains("beta")) beta = number_at(doc["beta"], "beta", source);
  if (!(beta > 0.0 && beta <= 1.0)) field_error(source, "beta", "must lie in (0, 1]");
  return make_holder(space, std::move(values), beta);
}

GradientCandidate parse_gradient(const std::string& text, const MetricMeasureSpace& space, const std::string& source) {
  const json doc = parse_text(text, source);
  GradientCandidate g;
  g.values = number_array(require(doc, "values", source), space.size(), "values", source);
  for (Index i = 0; i < g.values.size(); ++i) {
    if (!(g.values(i) >= 0.0)) field_error(source, "values/" + std::to_string(i), "gradients are nonnegative");
  }
  const json& kind = require(doc, "kind", source);
  if (kind == "hajlasz") {
    double beta = 1.0;
    if (doc.contains("beta")) beta = number_at(doc["beta"], "beta", source);
    if (!(beta > 0.0 && beta <= 1.0)) field_error(source, "beta", "must lie in (0, 1]");
    g.kind = DStructureKind::hajlasz(beta);
  } else if (kind == "upper") {
    if (!space.has_graph()) field_error(source, "kind", "upper gradients need a graph space");
    g.kind = DStructureKind::graph_upper();
  } else {
    field_error(source, "kind", "expected \"hajlasz\" or \"upper\"");
  }
  g.p = number_at(require(doc, "p", source), "p", source);
  if (!(g.p >= 1.0)) field_error(source, "p", "must be at least 1");
  return g;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::json space_to_json(const MetricMeasureSpace& space) {
  json doc;
  doc["n"] = space.size();
  if (!space.name().empty()) doc["name"] = space.name();
  doc["measure"] = vector_to_json(space.measure());
  if (space.has_graph()) {
    json edges = json::array();
    for (const Edge& e : space.graph()->edges) edges.push_back(json::array({e.a, e.b, e.length}));
    doc["metric"] = {{"type", "graph"}, {"edges", edges}};
  } else {
    json rows = json::array();
    for (Index i = 0; i < space.size(); ++i) rows.push_back(vector_to_json(space.dist().row(i).transpose()));
    doc["metric"] = {{"type", "matrix"}, {"d", rows}};
  }
  return doc;
}

nlohmann::json function_to_json(const HolderFunction& f) {
  return {{"values", vector_to_json(f.values)}, {"beta", f.beta}};
}

nlohmann::json gradient_to_json(const GradientCandidate& g) {
  json doc{{"values", vector_to_json(g.values)}, {"kind", to_string(g.kind.tag)}, {"p", g.p}};
  if (g.kind.tag == GradientKind::Hajlasz) doc["beta"] = g.kind.beta;
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace sharpmax
