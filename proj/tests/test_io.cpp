#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "distmatch/io.hpp"
#include "distmatch/random.hpp"

namespace distmatch {
namespace {

TEST(Io, MetricRoundTrip) {
  std::mt19937_64 rng(103);
  const FiniteMetric E = random_euclidean(5, 3, 10.0, rng);
  const FiniteMetric back = metric_from_json(metric_to_json(E));
  EXPECT_TRUE(back.is_euclidean());
  EXPECT_EQ(back.data(), E.data());

  const FiniteMetric T = random_tree_metric(6, 1.0, rng);
  const FiniteMetric tb = metric_from_json(metric_to_json(T));
  EXPECT_FALSE(tb.is_euclidean());
  EXPECT_EQ(tb.data(), T.data());
}

TEST(Io, RejectsMalformed) {
  EXPECT_THROW(metric_from_json(nlohmann::json::parse(R"({"kind":"matrix","n":2,"d":[[0,1]]})")), InputError);
  EXPECT_THROW(metric_from_json(nlohmann::json::parse(R"({"kind":"sphere"})")), InputError);
  EXPECT_THROW(metric_from_json(nlohmann::json::parse(R"({"kind":"matrix","n":3,"d":[[0,5,1],[5,0,1],[1,1,0]]})")),
               InputError);
  EXPECT_NO_THROW(metric_from_json(
      nlohmann::json::parse(R"({"kind":"matrix","n":3,"d":[[0,5,1],[5,0,1],[1,1,0]]})"), false));
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"m":3,"edges":[[0,3]]})")), InputError);
}

TEST(Io, GraphAndFiles) {
  const Graph G(4, {{0, 1}, {2, 3}});
  const Graph back = graph_from_json(graph_to_json(G));
  EXPECT_EQ(back.edges(), G.edges());
  const auto dir = std::filesystem::temp_directory_path() / "distmatch_io_test";
  std::filesystem::create_directories(dir);
  write_json(dir / "g.json", graph_to_json(G));
  EXPECT_EQ(load_graph(dir / "g.json").edges(), G.edges());
  EXPECT_THROW(load_metric(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace distmatch
