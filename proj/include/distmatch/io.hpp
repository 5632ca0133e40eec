#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "distmatch/gadgets.hpp"
#include "distmatch/metric.hpp"

namespace distmatch {

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"kind":"matrix","n":N,"d":[[...]]} or {"kind":"euclidean","dim":D,"points":[[...]]}
FiniteMetric metric_from_json(const nlohmann::json& j, bool validate = true);
nlohmann::json metric_to_json(const FiniteMetric& metric);

// {"m":M,"edges":[[u,v],...]}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& G);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

FiniteMetric load_metric(const std::filesystem::path& path, bool validate = true);
Graph load_graph(const std::filesystem::path& path);

}  // namespace distmatch
