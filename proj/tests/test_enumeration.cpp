#include <doctest.h>

#include <algorithm>
#include <random>

#include "esc/dsl.hpp"
#include "esc/enumeration.hpp"
#include "esc/fixtures.hpp"
#include "esc/interpreter.hpp"
#include "support/naive.hpp"

using namespace esc;

namespace {

std::vector<std::string> ids_of(const std::vector<SystemInstance>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(canonical_id(s));
  return out;
}

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("fixture has 68 valid systems in ascending id order") {
    auto inst = figures_instance();
    EnumResult r;
    auto all = collect_valid(inst.lib, "Base", {}, &r);
    CHECK(all.size() == 68);
    CHECK(r.yielded == 68);
    CHECK_FALSE(r.capExceeded);
    auto ids = ids_of(all);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    for (const auto& s : all) CHECK(validate_system(s, inst.lib, "Base").empty());
  }

  TEST_CASE("fixture agrees with the naive generator") {
    auto inst = figures_instance();
    auto naive = testing::naive_valid_systems(inst.lib, "Base");
    REQUIRE_FALSE(naive.skipped);
    CHECK(naive.ids == ids_of(collect_valid(inst.lib, "Base")));
  }

  TEST_CASE("leaf base yields one system") {
    auto all = collect_valid(figures_instance().lib, "ProcD");
    REQUIRE(all.size() == 1);
    CHECK(canonical_id(all[0]) == "ProcD()");
  }

  TEST_CASE("depth cap matches a brute-force depth filter") {
    auto inst = figures_instance();
    auto all = collect_valid(inst.lib, "Base");
    for (std::size_t d = 1; d <= 5; ++d) {
      auto expected = std::count_if(all.begin(), all.end(),
                                    [&](const SystemInstance& s) { return s.depth() <= d; });
      EnumCaps caps;
      caps.maxDepth = d;
      CHECK(collect_valid(inst.lib, "Base", caps).size() == static_cast<std::size_t>(expected));
    }
  }

  TEST_CASE("component cap matches a brute-force size filter") {
    auto inst = figures_instance();
    auto all = collect_valid(inst.lib, "Base");
    for (std::size_t c = 1; c <= 8; ++c) {
      auto expected = std::count_if(all.begin(), all.end(),
                                    [&](const SystemInstance& s) { return s.node_count() <= c; });
      EnumCaps caps;
      caps.maxComponents = c;
      CHECK(collect_valid(inst.lib, "Base", caps).size() == static_cast<std::size_t>(expected));
    }
  }

  TEST_CASE("count cap reports exceeded") {
    EnumCaps caps;
    caps.maxCount = 10;
    EnumResult r;
    auto some = collect_valid(figures_instance().lib, "Base", caps, &r);
    CHECK(some.size() == 10);
    CHECK(r.capExceeded);
    caps.maxCount = 68;
    collect_valid(figures_instance().lib, "Base", caps, &r);
    CHECK_FALSE(r.capExceeded);
  }

  TEST_CASE("unknown base is rejected") {
    CHECK_THROWS_AS(collect_valid(figures_instance().lib, "Nope"), PreconditionError);
  }

  TEST_CASE("working systems of the fixture") {
    auto inst = figures_instance();
    auto working = collect_working(inst.lib, "Base", inst.reqs, 10000);
    CHECK(working.size() == 8);
    auto valid = collect_valid(inst.lib, "Base");
    std::vector<std::string> filtered;
    for (const auto& s : valid) {
      if (verify(s, inst.lib, inst.reqs, 10000).working) filtered.push_back(canonical_id(s));
    }
    CHECK(ids_of(working) == filtered);
    for (const auto& s : working) {
      const SystemInstance* sys = s.child("intSystem");
      REQUIRE(sys != nullptr);
      const SystemInstance* p1 = sys->child("intProc1");
      REQUIRE(p1 != nullptr);
      CHECK(p1->child("intProc")->component() == "ProcA");
    }
  }

  TEST_CASE("empty requirements give the full stream") {
    auto inst = figures_instance();
    RequirementSet empty(inst.reqs.vars(), inst.reqs.outputs(), {});
    CHECK(ids_of(collect_working(inst.lib, "Base", empty, 10000)) ==
          ids_of(collect_valid(inst.lib, "Base")));
  }

  TEST_CASE("count upper bound") {
    CHECK(count_upper_bound(1, 1, 1) == 2);
    CHECK(count_upper_bound(4, 3, 2) == 1953125);
    CHECK(count_upper_bound(2, 2, 3) == 6561);
    CHECK(BigInt(68) <= count_upper_bound(4, 3, 4));
  }

  TEST_CASE("summary agrees with listing") {
    auto inst = figures_instance();
    auto sum = summarize_valid_space(inst.lib, "Base");
    CHECK(sum.count == 68);
    CHECK(sum.maxComponents == 8);
    CHECK(sum.maxDepth == 4);
  }

  TEST_CASE("random libraries agree with the naive generator") {
    std::mt19937_64 rng(2024);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Library lib = parse_library_or_throw(testing::random_library_text(rng));
      REQUIRE(validate_library(lib).empty());
      auto naive = testing::naive_valid_systems(lib, "Base");
      if (naive.skipped) continue;
      ++compared;
      CHECK(naive.ids == ids_of(collect_valid(lib, "Base")));
      CHECK(summarize_valid_space(lib, "Base").count == naive.ids.size());
    }
    CHECK(compared >= 50);
  }

  TEST_CASE("visitor can stop early") {
    int seen = 0;
    auto r = enumerate_valid(figures_instance().lib, "Base", {}, [&](const SystemInstance&) {
      return ++seen < 5;
    });
    CHECK(seen == 5);
    CHECK(r.stopped);
  }
}
