#include "afrel/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "afrel/error.hpp"

namespace afrel::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) invalid_input(std::string("expected a JSON object with field \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) invalid_input(std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) invalid_input(what + " must be an integer");
  return j.get<int>();
}

double as_number(const Json& j, const std::string& what) {
  if (!j.is_number()) invalid_input(what + " must be a number");
  return j.get<double>();
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    invalid_input("bad " + what + " \"" + text + "\"");
  }
  if (used != text.size()) invalid_input("bad " + what + " \"" + text + "\"");
  return value;
}

// "<edge id>@<level>"
std::pair<int, int> parse_edge_key(const std::string& key) {
  const auto at = key.find('@');
  if (at == std::string::npos) invalid_input("edge key \"" + key + "\" must read <edge id>@<level>");
  return {parse_int(key.substr(at + 1), "level"), parse_int(key.substr(0, at), "edge id")};
}

std::string edge_key(int level, int id) { return std::to_string(id) + "@" + std::to_string(level); }

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid_input("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    invalid_input(path.string() + ": " + e.what());
  }
}

BratteliDiagram diagram_from_json(const Json& j) {
  const int levels = as_int(field(j, "levels"), "levels");
  const Json& jv = field(j, "vertices");
  const Json& je = field(j, "edges");
  if (!jv.is_array() || !je.is_array()) invalid_input("vertices and edges must be arrays");
  if (jv.size() != static_cast<std::size_t>(levels) + 1 || je.size() != static_cast<std::size_t>(levels))
    invalid_input("a diagram with " + std::to_string(levels) + " levels needs " + std::to_string(levels + 1) +
                  " vertex arrays and " + std::to_string(levels) + " edge arrays");
  std::vector<std::vector<int>> vertices;
  for (const auto& level : jv) {
    if (!level.is_array()) invalid_input("vertex level must be an array");
    std::vector<int> ids;
    for (const auto& v : level) ids.push_back(as_int(v, "vertex id"));
    vertices.push_back(std::move(ids));
  }
  std::vector<std::vector<Edge>> edges;
  for (const auto& level : je) {
    if (!level.is_array()) invalid_input("edge level must be an array");
    std::vector<Edge> es;
    for (const auto& e : level) {
      Edge edge{as_int(field(e, "id"), "edge id"), as_int(field(e, "source"), "edge source"),
                as_int(field(e, "range"), "edge range"), std::nullopt};
      if (e.contains("label")) edge.label = as_number(e["label"], "edge label");
      es.push_back(edge);
    }
    edges.push_back(std::move(es));
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

Json to_json(const BratteliDiagram& d) {
  Json j;
  j["levels"] = d.levels();
  j["vertices"] = Json::array();
  for (int n = 0; n <= d.levels(); ++n) {
    auto vs = d.vertices(n);
    j["vertices"].push_back(std::vector<int>(vs.begin(), vs.end()));
  }
  j["edges"] = Json::array();
  for (int n = 1; n <= d.levels(); ++n) {
    Json level = Json::array();
    for (const Edge& e : d.edges(n)) {
      Json je{{"id", e.id}, {"source", e.source}, {"range", e.range}};
      if (e.label) je["label"] = *e.label;
      level.push_back(std::move(je));
    }
    j["edges"].push_back(std::move(level));
  }
  return j;
}

Group group_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "R") return Group::reals();
    if (j.get<std::string>() == "Z") return Group::lattice(1);
    invalid_input("unknown group \"" + j.get<std::string>() + "\"");
  }
  return Group::lattice(as_int(field(j, "Zk"), "Zk"));
}

Json to_json(const Group& g) {
  if (!g.is_exact()) return "R";
  return Json{{"Zk", g.rank}};
}

GroupElement element_from_json(const Json& j, const Group& g) {
  if (!g.is_exact()) return GroupElement(as_number(j, "real group element"));
  std::vector<std::int64_t> v;
  if (j.is_number_integer() && g.rank == 1) {
    v.push_back(j.get<std::int64_t>());
  } else {
    if (!j.is_array()) invalid_input("element of " + g.name() + " must be an integer array");
    for (const auto& x : j) {
      if (!x.is_number_integer()) invalid_input("element of " + g.name() + " must have integer coordinates");
      v.push_back(x.get<std::int64_t>());
    }
  }
  GroupElement x(std::move(v));
  if (!x.belongs_to(g)) invalid_input("element " + x.to_string() + " is not in " + g.name());
  return x;
}

Json to_json(const GroupElement& x) {
  if (x.is_real()) return x.real();
  return x.lattice();
}

Labelling labelling_from_json(const Json& j) {
  Labelling f(j.contains("group") ? group_from_json(j["group"]) : Group::reals());
  const Json& values = field(j, "values");
  if (!values.is_object()) invalid_input("labelling values must be an object");
  for (const auto& [key, value] : values.items()) {
    auto [level, id] = parse_edge_key(key);
    f.set(level, id, element_from_json(value, f.group()));
  }
  return f;
}

Json to_json(const Labelling& f) {
  Json values = Json::object();
  for (const auto& [key, value] : f.values()) values[edge_key(key.first, key.second)] = to_json(value);
  return Json{{"group", to_json(f.group())}, {"values", values}};
}

std::map<int, double> vertex_map_from_json(const Json& j) {
  if (!j.is_object()) invalid_input("vertex map must be an object keyed by vertex id");
  std::map<int, double> out;
  for (const auto& [key, value] : j.items()) out[parse_int(key, "vertex id")] = as_number(value, "vertex value");
  return out;
}

MarkovMeasure markov_from_json(const BratteliDiagram& d, const Json& j) {
  const auto mu0 = vertex_map_from_json(field(j, "mu0"));
  const Json& jp = field(j, "p");
  if (!jp.is_object()) invalid_input("p must be an object keyed by <edge id>@<level>");
  std::vector<std::map<int, double>> p(static_cast<std::size_t>(d.levels()));
  for (const auto& [key, value] : jp.items()) {
    auto [level, id] = parse_edge_key(key);
    if (level < 1 || level > d.levels()) invalid_input("transition key " + key + " names a level outside the diagram");
    p[static_cast<std::size_t>(level - 1)][id] = as_number(value, "transition probability");
  }
  return MarkovMeasure::from_probabilities(d, mu0, p);
}

Json to_json(const MarkovMeasure& m) {
  Json mu0 = Json::object();
  for (const auto& [v, lp] : m.log_initial()) mu0[std::to_string(v)] = std::exp(lp);
  Json p = Json::object();
  const auto& lp = m.log_transitions();
  for (std::size_t n = 0; n < lp.size(); ++n)
    for (const auto& [id, x] : lp[n]) p[edge_key(static_cast<int>(n + 1), id)] = std::exp(x);
  return Json{{"mu0", mu0}, {"p", p}};
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.empty()) invalid_input("matrix must be a nonempty array of rows");
  std::vector<std::vector<double>> data;
  for (const auto& row : rows) {
    if (!row.is_array()) invalid_input("matrix rows must be arrays");
    std::vector<double> r;
    for (const auto& x : row) r.push_back(as_number(x, "matrix entry"));
    data.push_back(std::move(r));
  }
  for (const auto& r : data)
    if (r.size() != data.size()) invalid_input("matrix must be square");
  if (j.contains("d") && as_int(j["d"], "d") != static_cast<int>(data.size()))
    invalid_input("d disagrees with the matrix size");
  return Matrix::from_rows(data);
}

Sft sft_from_json(const Json& j) {
  const Matrix m = matrix_from_json(j);
  std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0.0 && m(r, c) != 1.0) invalid_input("SFT matrix entries must be 0 or 1");
      a[r][c] = static_cast<int>(m(r, c));
    }
  return Sft(std::move(a));
}

Json to_json(const Matrix& m) { return Json{{"d", m.rows()}, {"matrix", m.to_rows()}}; }

Potential potential_from_json(const Json& j, int alphabet) {
  if (j.contains("constant")) return Potential::constant(as_number(j["constant"], "constant"));
  const int range = as_int(field(j, "range"), "range");
  const Json& values = field(j, "values");
  if (!values.is_object()) invalid_input("potential values must be an object keyed by words");
  std::map<Word, double> out;
  for (const auto& [key, value] : values.items()) out[parse_word(key, alphabet)] = as_number(value, "potential value");
  return Potential(range, std::move(out));
}

Json to_json(const Potential& phi, int alphabet) {
  if (phi.is_constant()) return Json{{"constant", *phi.constant_value()}};
  Json values = Json::object();
  for (const auto& [w, v] : phi.values()) values[format_word(w, alphabet)] = v;
  return Json{{"range", phi.range()}, {"values", values}};
}

CoboundaryData coboundary_from_json(const Json& j) {
  CoboundaryData psi;
  psi.range = as_int(field(j, "range"), "range");
  const Group g = j.contains("group") ? group_from_json(j["group"]) : Group::reals();
  const Json& values = field(j, "values");
  if (!values.is_object()) invalid_input("coboundary values must be an object keyed by paths");
  for (const auto& [key, value] : values.items()) {
    auto path = parse_int_list(key);
    if (path.size() != static_cast<std::size_t>(psi.range))
      invalid_input("coboundary key \"" + key + "\" must list " + std::to_string(psi.range) + " edge ids");
    psi.psi[path] = element_from_json(value, g);
  }
  return psi;
}

QuotientChain chain_from_json(const Json& j) {
  QuotientChain chain;
  const Json& sets = field(j, "sets");
  const Json& maps = field(j, "maps");
  if (!sets.is_array() || !maps.is_array()) invalid_input("sets and maps must be arrays");
  for (const auto& s : sets) chain.sizes.push_back(as_int(s, "set size"));
  for (const auto& m : maps) {
    if (!m.is_array()) invalid_input("each map must be an array of images");
    std::vector<int> images;
    for (const auto& y : m) images.push_back(as_int(y, "map image"));
    chain.maps.push_back(std::move(images));
  }
  chain.validate();
  return chain;
}

bool has_cocycle_data(const Json& j) { return j.is_object() && j.contains("bprime"); }

FinitelyValuedCocycleData cocycle_data_from_json(const Json& j) {
  const Json& bp = field(j, "bprime");
  if (!bp.is_array()) invalid_input("bprime must be an array of per-set value arrays");
  FinitelyValuedCocycleData data;
  if (j.contains("group")) {
    data.group = group_from_json(j["group"]);
  } else {
    // Infer: integers -> Z, integer arrays -> Z^k, anything else -> R.
    bool all_int = true;
    int rank = 0;
    for (const auto& level : bp)
      for (const auto& x : level) {
        if (x.is_array()) {
          rank = static_cast<int>(x.size());
        } else if (!x.is_number_integer()) {
          all_int = false;
        }
      }
    data.group = rank > 0 ? Group::lattice(rank) : all_int ? Group::lattice(1) : Group::reals();
  }
  for (const auto& level : bp) {
    if (!level.is_array()) invalid_input("bprime entries must be arrays");
    std::vector<GroupElement> values;
    for (const auto& x : level) values.push_back(element_from_json(x, data.group));
    data.bprime.push_back(std::move(values));
  }
  return data;
}

Json to_json(const Tower& t) {
  Json j = Json::array();
  for (const Partition& p : t.partitions) j.push_back(p);
  return j;
}

Json to_json(const HarmonicVector& rho) {
  Json levels = Json::array();
  Json logs = Json::array();
  for (int n = 0; n <= rho.depth(); ++n) {
    Json level = Json::object();
    Json log_level = Json::object();
    for (const auto& [v, lr] : rho.log_level(n)) {
      level[std::to_string(v)] = std::exp(lr);
      log_level[std::to_string(v)] = lr;
    }
    levels.push_back(std::move(level));
    logs.push_back(std::move(log_level));
  }
  return Json{{"rho", levels}, {"log_rho", logs}};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "integer list entry"));
  if (out.empty()) invalid_input("empty integer list");
  return out;
}

FinitePath parse_path(const std::string& text) { return FinitePath{parse_int_list(text)}; }

Json to_json(const FinitePath& p) { return p.edges; }

}  // namespace afrel::io
