#include "distmatch/io.hpp"

#include <fstream>

namespace distmatch {

using nlohmann::json;

namespace {

std::vector<double> number_row(const json& row, const char* what) {
  if (!row.is_array()) throw InputError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(row.size());
  for (const json& v : row) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t count_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw InputError(std::string("missing or invalid field \"") + key + "\"");
  }
  return j[key].get<std::size_t>();
}

}  // namespace

FiniteMetric metric_from_json(const json& j, bool validate) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InputError("metric: expected an object with a \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "matrix") {
      const std::size_t n = count_field(j, "n");
      if (!j.contains("d") || !j["d"].is_array() || j["d"].size() != n) {
        throw InputError("metric: \"d\" must hold n rows");
      }
      std::vector<double> flat;
      flat.reserve(n * n);
      for (const json& row : j["d"]) {
        auto r = number_row(row, "metric row");
        if (r.size() != n) throw InputError("metric: every row of \"d\" needs n entries");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      return FiniteMetric::from_flat_matrix(n, std::move(flat), validate);
    }
    if (kind == "euclidean") {
      const std::size_t dim = count_field(j, "dim");
      if (!j.contains("points") || !j["points"].is_array()) throw InputError("metric: missing \"points\"");
      std::vector<double> flat;
      for (const json& p : j["points"]) {
        auto r = number_row(p, "point");
        if (r.size() != dim) throw InputError("metric: point of the wrong dimension");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      return FiniteMetric::from_flat_points(dim, std::move(flat));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("metric: ") + e.what());
  }
  throw InputError("metric: unknown kind \"" + kind + "\"");
}

json metric_to_json(const FiniteMetric& metric) {
  json j;
  if (metric.is_euclidean()) {
    j["kind"] = "euclidean";
    j["dim"] = metric.dim();
    json pts = json::array();
    for (Index i = 0; i < metric.size(); ++i) {
      auto p = metric.point(i);
      pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["points"] = std::move(pts);
  } else {
    j["kind"] = "matrix";
    j["n"] = metric.size();
    json rows = json::array();
    for (Index i = 0; i < metric.size(); ++i) {
      std::vector<double> row(metric.size());
      for (Index k = 0; k < metric.size(); ++k) row[k] = metric(i, k);
      rows.push_back(std::move(row));
    }
    j["d"] = std::move(rows);
  }
  return j;
}

Graph graph_from_json(const json& j) {
  if (!j.is_object()) throw InputError("graph: expected an object");
  const std::size_t m = count_field(j, "m");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw InputError("graph: \"edges\" must be an array");
    for (const json& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        throw InputError("graph: every edge must be a pair of vertex indices");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  try {
    return Graph(m, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

json graph_to_json(const Graph& G) {
  json edges = json::array();
  for (auto [u, v] : G.edges()) edges.push_back({u, v});
  return {{"m", G.m()}, {"edges", std::move(edges)}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

FiniteMetric load_metric(const std::filesystem::path& path, bool validate) {
  return metric_from_json(read_json(path), validate);
}

Graph load_graph(const std::filesystem::path& path) { return graph_from_json(read_json(path)); }

}  // namespace distmatch
