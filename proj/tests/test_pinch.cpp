#include <doctest.h>

#include "fixtures.hpp"
#include "tilo/error.hpp"
#include "tilo/pinch.hpp"

using namespace tilo;

TEST_CASE("pinch oracle examples") {
  const auto tri = fixtures::triangle();
  CHECK_FALSE(is_pinch_cluster_oracle(tri, VertexSet(3, std::vector<VertexId>{0})));

  const auto bar = fixtures::barbell(3);
  CHECK(is_pinch_cluster_oracle(bar, VertexSet(6, std::vector<VertexId>{0, 1, 2})));
  CHECK(is_pinch_cluster_oracle(bar, VertexSet(6, std::vector<VertexId>{3, 4, 5})));
  CHECK_FALSE(is_pinch_cluster_oracle(bar, VertexSet(6, std::vector<VertexId>{0, 1})));

  const auto split = fixtures::make(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(is_pinch_cluster_oracle(split, VertexSet(5, std::vector<VertexId>{0, 1, 2})));
}

TEST_CASE("singletons of connected graphs are never pinch clusters") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = fixtures::random_connected(2 + seed % 9, 0.3, 1, 5, seed);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      CHECK_FALSE(is_pinch_cluster_oracle(g, VertexSet(g.vertex_count(), std::vector<VertexId>{v})));
    }
  }
}

TEST_CASE("pinch oracle preconditions") {
  const auto tri = fixtures::triangle();
  CHECK_THROWS_AS(is_pinch_cluster_oracle(tri, VertexSet(3)), DomainError);
  CHECK_THROWS_AS(is_pinch_cluster_oracle(tri, VertexSet(3, std::vector<VertexId>{0, 1, 2})), DomainError);
  const auto big = fixtures::path(21);
  CHECK_THROWS_AS(is_pinch_cluster_oracle(big, VertexSet(21, std::vector<VertexId>{0})), CapacityError);
}
