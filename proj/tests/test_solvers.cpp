#include <doctest.h>

#include <algorithm>

#include "esc/enumeration.hpp"
#include "esc/fixtures.hpp"
#include "esc/interpreter.hpp"
#include "esc/oracles.hpp"
#include "esc/reductions.hpp"
#include "esc/solvers.hpp"

using namespace esc;

namespace {

// Reward-minimal working system by listing every working system.
std::pair<std::string, std::int64_t> listed_optimum(const CreateInstance& inst) {
  auto working = collect_working(inst.lib, inst.base, inst.reqs,
                                 default_budget(inst.lib, inst.reqs));
  std::pair<std::string, std::int64_t> best{"", -1};
  for (const auto& s : working) {
    auto r = reward(s, inst.rew, inst.lib);
    auto id = canonical_id(s);
    if (best.second < 0 || r < best.second || (r == best.second && id < best.first)) {
      best = {id, r};
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("fixture has a working system") {
    auto d = cs_create(figures_instance());
    CHECK(d.answer == Answer::Yes);
    REQUIRE(d.witness);
    auto inst = figures_instance();
    CHECK(verify(*d.witness, inst.lib, inst.reqs, 10000).working);
  }

  TEST_CASE("lemma1 instances on P4") {
    CHECK(cs_create(gen_ds_cscreate(Graph::path(4), 1).create_instance()).answer == Answer::No);
    CHECK(cs_create(gen_ds_cscreate(Graph::path(4), 2).create_instance()).answer == Answer::Yes);
  }

  TEST_CASE("fixture optimum under NumComp is eight components") {
    auto o = es_create(figures_instance());
    REQUIRE(o.tag == SearchOutcome::Tag::System);
    CHECK(o.reward == 8);
  }

  TEST_CASE("fixture optimum under CodeB equals the listed optimum") {
    auto inst = figures_instance();
    inst.rew = Reward::code_b();
    auto o = es_create(inst);
    REQUIRE(o.tag == SearchOutcome::Tag::System);
    auto [id, r] = listed_optimum(inst);
    CHECK(canonical_id(*o.system) == id);
    CHECK(o.reward == r);
    // Proc2 and Proc3 end in the same, shortest leaf.
    const SystemInstance* sys = o.system->child("intSystem");
    CHECK(sys->child("intProc2")->child("intProc")->component() ==
          sys->child("intProc3")->child("intProc")->component());
  }

  TEST_CASE("optimum is independent of the given system") {
    auto inst = figures_instance();
    inst.rew = Reward::code_b();
    auto best = es_create(inst);
    for (const auto& g : collect_working(inst.lib, "Base", inst.reqs, 10000)) {
      AdaptInstance a{inst.reqs, inst.lib, inst.base, inst.rew, {}, g, std::nullopt};
      auto o = es_adapt(a);
      REQUIRE(o.tag == SearchOutcome::Tag::System);
      CHECK(canonical_id(*o.system) == canonical_id(*best.system));
    }
  }

  TEST_CASE("lemma2 optimum on P4") {
    Graph g = Graph::path(4);
    const int gamma = *min_dominating_set(g).gamma;
    auto o = es_create(gen_ds_cscreate_opt(g, RewardKind::NumComp).create_instance());
    CHECK(o.reward == gamma + 2);
    auto c = es_create(gen_ds_cscreate_opt(g, RewardKind::CodeB).create_instance());
    CHECK(c.reward == 9 * gamma + 16);
    CHECK(es_create(gen_ds_cscreate_opt(Graph::path(1)).create_instance()).reward == 3);
  }

  TEST_CASE("no working system gives bot") {
    auto inst = figures_instance();
    auto rows = inst.reqs.rows();
    rows[0].output = 1;
    rows.push_back(rows[0]);
    rows.back().output = 2;
    inst.reqs = RequirementSet(inst.reqs.vars(), inst.reqs.outputs(), rows);
    CHECK(es_create(inst).tag == SearchOutcome::Tag::Bot);
    CHECK(cs_create(inst).answer == Answer::No);
  }

  TEST_CASE("lemma4 adaptation on P4") {
    Graph g = Graph::path(4);
    for (auto rew : {RewardKind::NumComp, RewardKind::CodeB}) {
      CHECK(cs_adapt(gen_ds_csadapt(g, 2, rew).adapt_instance()).answer == Answer::Yes);
      CHECK(cs_adapt(gen_ds_csadapt(g, 1, rew).adapt_instance()).answer == Answer::No);
    }
    auto o = es_adapt(gen_ds_csadapt(g, 2, RewardKind::NumComp).adapt_instance());
    CHECK(o.reward == *min_dominating_set(g).gamma + 2);
  }

  TEST_CASE("a bound at or above the given reward accepts the given system") {
    auto a = gen_ds_csadapt(Graph::path(4), 1, RewardKind::NumComp).adapt_instance();
    a.bound = reward(a.given, a.rew, a.lib);
    auto d = cs_adapt(a);
    CHECK(d.answer == Answer::Yes);
    REQUIRE(d.witness);
    CHECK(*d.witness == a.given);
  }

  TEST_CASE("cs_adapt agrees with es_adapt under the bound") {
    for (int n = 2; n <= 5; ++n) {
      Graph g = Graph::cycle(n < 3 ? 3 : n);
      for (int k = 1; k < g.n(); ++k) {
        auto a = gen_ds_csadapt(g, k, RewardKind::NumComp).adapt_instance();
        auto best = es_adapt(a);
        const bool within = best.tag == SearchOutcome::Tag::System && best.reward <= *a.bound;
        CHECK((cs_adapt(a).answer == Answer::Yes) == within);
      }
    }
  }

  TEST_CASE("only working system is the given one") {
    auto inst = figures_instance();
    std::vector<Component> comps;
    for (const auto& c : inst.lib.components()) {
      if (c.name != "ProcB" && c.name != "ProcC") comps.push_back(c);
    }
    Library lib(inst.lib.interfaces(), comps);
    // Reaches the Proc2 slot, which only ProcA answers with 1.
    auto rows = inst.reqs.rows();
    rows.push_back({{false, false, false, false, true}, 1});
    RequirementSet reqs(inst.reqs.vars(), inst.reqs.outputs(), rows);
    auto only = collect_working(lib, "Base", reqs, 10000);
    REQUIRE(only.size() == 1);
    AdaptInstance a{reqs, lib, "Base", Reward::code_b(), {}, only[0], std::nullopt};
    auto o = es_adapt(a);
    REQUIRE(o.system);
    CHECK(*o.system == only[0]);
  }

  TEST_CASE("non-working given system is a precondition error") {
    auto inst = figures_instance();
    AdaptInstance a{inst.reqs, inst.lib, "Base", Reward::num_comp(), {},
                    parse_system_id("Base(intSystem->System2(intProc1->Proc1(intProc->ProcB())))"),
                    10};
    CHECK_THROWS_AS(cs_adapt(a), GivenSystemNotWorking);
  }

  TEST_CASE("dominating set via the create solver") {
    Graph p4 = Graph::path(4);
    auto yes = ds_via_escreate(p4, 2);
    CHECK(yes.answer == Answer::Yes);
    CHECK(p4.is_dominating(yes.vertices));
    CHECK(ds_via_escreate(p4, 1).answer == Answer::No);
    CHECK(ds_via_escreate(Graph::path(1), 1).answer == Answer::Yes);
  }

  TEST_CASE("solvers are deterministic") {
    auto inst = gen_ds_cscreate_opt(Graph::cycle(5), RewardKind::CodeB).create_instance();
    auto a = es_create(inst);
    auto b = es_create(inst);
    REQUIRE(a.system);
    CHECK(*a.system == *b.system);
    CHECK(a.examined == b.examined);
  }

  TEST_CASE("systems exceeding the step budget do not work") {
    SolveOptions opts;
    opts.budget = 1;
    CHECK(cs_create(figures_instance(), opts).answer == Answer::No);
  }
}
