#include <doctest.h>

#include <random>

#include "esc/dsl.hpp"
#include "esc/fixtures.hpp"
#include "esc/interpreter.hpp"
#include "esc/oracles.hpp"

using namespace esc;

namespace {

const char* kLeft =
    "Base(intSystem->System1(intProc1->Proc1(intProc->ProcA()),"
    "intProc2->Proc2(intProc->ProcC()),intProc3->Proc3(intProc->ProcC())))";
const char* kRight = "Base(intSystem->System2(intProc1->Proc1(intProc->ProcB())))";

struct Program {
  Library lib;
  SystemInstance root{"Base", std::nullopt, {}};
};

Program program(const std::string& body) {
  std::string text = "component Base {\n    void main(Input I) {\n" + body + "    }}\n";
  return {parse_library_or_throw(text)};
}

RunOutcome run(const Program& p, TruthVector in = {true, false}, std::uint64_t budget = 10000) {
  return evaluate(p.root, p.lib, in, budget);
}

}  // namespace

TEST_SUITE("interpreter") {
  TEST_CASE("fixture systems on r1") {
    auto inst = figures_instance();
    const auto& r1 = inst.reqs.rows()[0].input;
    auto left = evaluate(parse_system_id(kLeft), inst.lib, r1, 10000);
    CHECK(left.kind == RunOutcome::Kind::Output);
    CHECK(left.value == 2);
    auto right = evaluate(parse_system_id(kRight), inst.lib, r1, 10000);
    CHECK(right.kind == RunOutcome::Kind::Output);
    CHECK(right.value == 3);
  }

  TEST_CASE("verify left and right systems") {
    auto inst = figures_instance();
    auto left = verify(parse_system_id(kLeft), inst.lib, inst.reqs, 10000);
    CHECK(left.working);
    CHECK_FALSE(left.firstFailure);
    auto right = verify(parse_system_id(kRight), inst.lib, inst.reqs, 10000);
    CHECK_FALSE(right.working);
    REQUIRE(right.firstFailure);
    CHECK(right.firstFailure->row == 0);
    CHECK(right.firstFailure->expected == 2);
    CHECK(right.firstFailure->outcome.value == 3);
  }

  TEST_CASE("empty requirements are vacuously met") {
    auto inst = figures_instance();
    RequirementSet empty(inst.reqs.vars(), inst.reqs.outputs(), {});
    CHECK(verify(parse_system_id(kRight), inst.lib, empty, 10000).working);
  }

  TEST_CASE("constant program outputs within three steps") {
    auto o = run(program("        output 1\n"));
    CHECK(o.kind == RunOutcome::Kind::Output);
    CHECK(o.value == 1);
    CHECK(o.steps <= 3);
  }

  TEST_CASE("budget exhaustion and monotonicity") {
    auto p = program("        n = 0\n        for i = 1 to 50 do n = n + i\n        output n\n");
    auto full = run(p);
    REQUIRE(full.kind == RunOutcome::Kind::Output);
    CHECK(full.value == 1275);
    CHECK(run(p, {true, false}, full.steps).value == 1275);
    CHECK(run(p, {true, false}, full.steps * 3) == full);
    CHECK(run(p, {true, false}, full.steps - 1).kind == RunOutcome::Kind::BudgetExceeded);
  }

  TEST_CASE("faults and missing output") {
    CHECK(run(program("        n = 1\n")).kind == RunOutcome::Kind::NoOutput);
    CHECK(run(program("        output m\n")).kind == RunOutcome::Kind::RuntimeFault);
    CHECK(run(program("        create int array a of length 2\n        a[3] = 1\n        output 1\n"))
              .kind == RunOutcome::Kind::RuntimeFault);
  }

  TEST_CASE("input tests and control flow") {
    auto p = program(
        "        if v_I(x1) and not v_I(x2) then output 1\n"
        "        elsif v_I(x2) then output 2\n"
        "        else output 3\n");
    CHECK(run(p, {true, false}).value == 1);
    CHECK(run(p, {true, true}).value == 2);
    CHECK(run(p, {false, false}).value == 3);
  }

  TEST_CASE("arrays are shared with callees within one run") {
    std::string text =
        "interface fill {\n    void fillIt(int[] a)\n}\n\n"
        "component Base\nrequires fill {\n    void main(Input I) {\n"
        "        create int array a of length 2\n        a[2] = 1\n        fillIt(a)\n"
        "        output a[2]\n    }}\n\n"
        "component Filler\nprovides fill {\n    void fillIt(int[] a) {\n        a[2] = 7\n    }}\n";
    Library lib = parse_library_or_throw(text);
    auto s = parse_system_id("Base(fill->Filler())");
    auto o = evaluate(s, lib, {}, 1000);
    CHECK(o.kind == RunOutcome::Kind::Output);
    CHECK(o.value == 7);
  }

  TEST_CASE("cnf intrinsic matches direct evaluation on small formulas") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = 1 + trial % 4;
      CnfClauses clauses;
      const int nc = 1 + static_cast<int>(rng() % 4);
      for (int c = 0; c < nc; ++c) {
        std::vector<int> clause;
        const int len = 1 + static_cast<int>(rng() % 3);
        for (int l = 0; l < len; ++l) {
          int v = 1 + static_cast<int>(rng() % m);
          clause.push_back(rng() % 2 ? v : -v);
        }
        clauses.push_back(clause);
      }
      std::string f = "[";
      for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (c) f += ", ";
        f += "[";
        for (std::size_t l = 0; l < clauses[c].size(); ++l) {
          if (l) f += ", ";
          f += std::to_string(clauses[c][l]);
        }
        f += "]";
      }
      f += "]";
      std::string body = "        create Boolean array vA of length " + std::to_string(m) + "\n";
      for (int v = 1; v <= m; ++v) {
        body += "        vA[" + std::to_string(v) + "] = v_I(x" + std::to_string(v) + ")\n";
      }
      body += "        if cnf_satisfied(" + f + ", vA) then output 1\n        else output 0\n";
      auto p = program(body);
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<bool> a(m);
        for (int v = 0; v < m; ++v) a[v] = (mask >> v) & 1;
        CHECK(run(p, a).value == (cnf_evaluate(clauses, a) ? 1 : 0));
      }
    }
  }

  TEST_CASE("budget scales with instance size") {
    auto inst = figures_instance();
    const auto size = instance_size_bytes(inst.lib, inst.reqs);
    CHECK(size > 0);
    CHECK(default_budget(inst.lib, inst.reqs, 10) == 10 * size);
  }
}
