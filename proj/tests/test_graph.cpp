#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "graphcd/graph.hpp"

using namespace graphcd;
using namespace graphcd::testing;

TEST_CASE("load_graph: minimal two-vertex graph") {
  const auto g = load_graph("vertex a 1\nvertex b 1\nedge a b 1");
  CHECK(g.vertex_count() == 2);
  CHECK(g.label(VertexId(0)) == "a");
  CHECK(g.label(VertexId(1)) == "b");
  CHECK(g.weight(VertexId(0), VertexId(1)) == 1.0);
  CHECK(g.weight(VertexId(1), VertexId(0)) == 1.0);
  CHECK(g.delta_min() == 1.0);
}

TEST_CASE("load_graph: single vertex with self-loop") {
  const auto g = load_graph("vertex a 1\nedge a a 3");
  CHECK(g.vertex_count() == 1);
  CHECK(g.self_loop(VertexId(0)) == 3.0);
  CHECK(g.neighbors(VertexId(0)).empty());
  CHECK(g.delta_min() == 1.0);
}

TEST_CASE("load_graph: rejects invalid input") {
  CHECK_THROWS_AS(load_graph("vertex a 1\nvertex b 2\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 0\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a -1\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 1\nvertex b 1\nedge a b 0\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 1\nvertex b 1\nedge a b -2\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 1\nvertex b 1\nedge a b 1\nedge b a 2\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 1\nvertex a 1\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a 1\nedge a z 1\n"), InputError);
  CHECK_THROWS_AS(load_graph("vertex a x\n"), InputError);
  CHECK_THROWS_AS(load_graph("node a 1\n"), InputError);
  CHECK_THROWS_AS(load_graph("# nothing\n"), InputError);
}

TEST_CASE("load_graph: matching duplicate edges and comments are accepted") {
  const auto g = load_graph("# header\nvertex a 1\n\nvertex b 2\nedge a b 1.5\nedge b a 1.5\n");
  CHECK(g.weight(VertexId(0), VertexId(1)) == 1.5);
  CHECK(g.delta_min() == 1.0);
}

TEST_CASE("load_graph: error messages carry the line number") {
  try {
    load_graph("vertex a 1\nvertex b 1\nedge a b nope\n");
    FAIL("expected an exception");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("ball2 examples") {
  SUBCASE("K2") {
    const auto b = ball2(k2(), VertexId(0));
    REQUIRE(b.sphere1.size() == 1);
    CHECK(b.sphere1[0] == VertexId(1));
    CHECK(b.sphere2.empty());
  }
  SUBCASE("path a-b-c at a") {
    const auto b = ball2(p3(), VertexId(0));
    REQUIRE(b.sphere1.size() == 1);
    CHECK(b.sphere1[0] == VertexId(1));
    REQUIRE(b.sphere2.size() == 1);
    CHECK(b.sphere2[0] == VertexId(2));
  }
  SUBCASE("triangle") {
    const auto b = ball2(k3(), VertexId(0));
    CHECK(b.sphere1 == std::vector<VertexId>{VertexId(1), VertexId(2)});
    CHECK(b.sphere2.empty());
  }
  SUBCASE("self-loop at the center stays out of the spheres") {
    const auto g = load_graph("vertex a 1\nvertex b 1\nvertex c 1\nedge a a 4\nedge a b 1\nedge b c 1\n");
    const auto b = ball2(g, VertexId(0));
    CHECK(b.sphere1 == std::vector<VertexId>{VertexId(1)});
    CHECK(b.sphere2 == std::vector<VertexId>{VertexId(2)});
  }
  CHECK_THROWS_AS(ball2(k2(), VertexId(5)), PreconditionError);
}

TEST_CASE("ball2 spheres are disjoint and exclude the center on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_graph(seed, 2, 12);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      const auto b = ball2(g, VertexId(i));
      for (auto y : b.sphere1) {
        CHECK(y != b.center);
        CHECK(g.weight(b.center, y) > 0.0);
        CHECK(std::find(b.sphere2.begin(), b.sphere2.end(), y) == b.sphere2.end());
      }
      for (auto z : b.sphere2) {
        CHECK(z != b.center);
        CHECK(g.weight(b.center, z) == 0.0);
      }
      CHECK(std::is_sorted(b.sphere1.begin(), b.sphere1.end()));
      CHECK(std::is_sorted(b.sphere2.begin(), b.sphere2.end()));
    }
  }
}

TEST_CASE("degree") {
  CHECK(degree(k2(), VertexId(0)) == 1.0);
  CHECK(degree(p3(), VertexId(1)) == 2.0);
  CHECK(degree(load_graph("vertex a 1\nedge a a 3"), VertexId(0)) == 0.0);
  CHECK_THROWS_AS(degree(k2(), VertexId(2)), PreconditionError);
}

TEST_CASE("save_graph round-trips") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_graph(seed, 1, 10);
    const auto h = load_graph(save_graph(g));
    REQUIRE(h.vertex_count() == g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      CHECK(h.label(VertexId(i)) == g.label(VertexId(i)));
      CHECK(h.measure(VertexId(i)) == g.measure(VertexId(i)));
      for (std::size_t j = 0; j < g.vertex_count(); ++j) {
        CHECK(h.weight(VertexId(i), VertexId(j)) == g.weight(VertexId(i), VertexId(j)));
      }
    }
  }
  const auto loop = load_graph("vertex a 2.5\nedge a a 0.125\n");
  CHECK(load_graph(save_graph(loop)).self_loop(VertexId(0)) == 0.125);
}

TEST_CASE("nondegenerate measure embedding bound max|f| <= delta^{-1/p} |f|_p") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_graph(seed, 1, 10);
    for (int k = 0; k < 10; ++k) {
      const auto f = random_function(rng, g.vertex_count());
      const double sup = lp_norm(g, f, std::numeric_limits<double>::infinity());
      for (double p : {1.0, 2.0}) {
        CHECK(sup <= std::pow(g.delta_min(), -1.0 / p) * lp_norm(g, f, p) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("function CSV") {
  const auto g = p3();
  const auto f = load_function(g, "vertex,value\nc,3\na,1\nb,-2.5\n");
  CHECK(f[0] == 1.0);
  CHECK(f[1] == -2.5);
  CHECK(f[2] == 3.0);
  CHECK(load_function(g, save_function(g, f)) == f);
  CHECK_THROWS_AS(load_function(g, "vertex,value\na,1\nb,2\n"), InputError);
  CHECK_THROWS_AS(load_function(g, "vertex,value\na,1\nb,2\nc,3\na,4\n"), InputError);
  CHECK_THROWS_AS(load_function(g, "v,x\na,1\n"), InputError);
  CHECK_THROWS_AS(load_function(g, "vertex,value\na,1\nb,2\nz,3\n"), InputError);
  CHECK_THROWS_AS(g.check_function(values({1, 2})), PreconditionError);
}
