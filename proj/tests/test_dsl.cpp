#include <doctest.h>

#include "esc/dsl.hpp"
#include "esc/fixtures.hpp"
#include "esc/reductions.hpp"

using namespace esc;

TEST_SUITE("dsl") {
  TEST_CASE("a three-line interface has code size three") {
    auto r = parse_library(
        "interface base {\n    void main(Input I)\n}\n\ncomponent Base\nprovides base {\n"
        "    void main(Input I) {\n        output 1\n    }}\n");
    REQUIRE(r.ok());
    CHECK(r.value->find_interface("base")->codeSize == 3);
  }

  TEST_CASE("InSet components are five lines") {
    auto a = gen_ds_cscreate(Graph::path(4), 2);
    for (const auto& c : a.lib.components()) {
      if (c.name.rfind("InSet", 0) == 0) CHECK(c.codeSize == 5);
    }
  }

  TEST_CASE("empty input has no declarations") {
    auto r = parse_library("");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].message.find("no declarations") != std::string::npos);
  }

  TEST_CASE("syntax errors carry spans") {
    auto r = parse_library("interface a {\n    int f()\n}\ncomponent X provides a {\n  garbage !!\n",
                           "bad.esl");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].span.file == "bad.esl");
    CHECK(r.diagnostics[0].span.startLine >= 4);
    CHECK(format_diagnostic(r.diagnostics[0]).rfind("bad.esl:", 0) == 0);
  }

  TEST_CASE("fixture requirements") {
    auto r = parse_requirements(figures_requirements_text());
    REQUIRE(r.ok());
    CHECK(r.value->rows().size() == 5);
    CHECK(r.value->vars().size() == 5);
    CHECK(r.value->outputs() == std::vector<std::int64_t>{1, 2, 3});
    CHECK(r.value->rows()[0].output == 2);
  }

  TEST_CASE("requirement header without rows is legal") {
    auto r = parse_requirements("vars: x1 x2\noutputs: 1\n");
    REQUIRE(r.ok());
    CHECK(r.value->rows().empty());
  }

  TEST_CASE("requirement rows are checked") {
    const std::string head = "vars: x1 x2 x3 x4 x5\noutputs: 1 2 3\n";
    CHECK_FALSE(parse_requirements(head + "T T T T -> 1\n").ok());
    CHECK_FALSE(parse_requirements(head + "T T T T T -> 4\n").ok());
    CHECK_FALSE(parse_requirements(head + "T T X T T -> 1\n").ok());
  }

  TEST_CASE("fixture round trip preserves code sizes") {
    Library lib = figures_instance().lib;
    std::string text = pretty_print(lib);
    auto r = parse_library(text);
    REQUIRE(r.ok());
    CHECK(*r.value == lib);
    CHECK(pretty_print(*r.value) == text);
    for (const auto& c : lib.components()) CHECK(c.codeSize == count_lines(print_component(c)));
    for (const auto& i : lib.interfaces()) CHECK(i.codeSize == count_lines(print_interface(i)));
  }

  TEST_CASE("generated libraries reproduce the 5, k+5, 5, 3 line pattern") {
    Graph g = Graph::path(4);
    auto a = gen_ds_cscreate_opt(g);
    CHECK(a.lib.find_component("TopBase")->codeSize == 5);
    for (int k = 1; k <= g.n(); ++k) {
      CHECK(a.lib.find_component("Base" + std::to_string(k))->codeSize == k + 5);
      CHECK(a.lib.find_interface("cond" + std::to_string(k))->codeSize == 3);
    }
    CHECK(a.lib.find_interface("topBase")->codeSize == 3);
    CHECK(a.lib.find_interface("base")->codeSize == 3);
    auto again = parse_library(pretty_print(a.lib));
    REQUIRE(again.ok());
    CHECK(*again.value == a.lib);
  }

  TEST_CASE("reduced copy prints only the selected interface functions") {
    auto a = gen_ds_threecomp(Graph::path(4), 2);
    const Component& ds1 = *a.lib.find_component("DomSetStatus1");
    std::string printed = print_component(reduced_copy(ds1, *a.lib.find_interface("vertStat3"), a.lib));
    const std::string expected =
        "component DomSetStatus1\n"
        "provides vertStat3 {\n"
        "    int vertexStatus3() {\n"
        "        return 1\n"
        "    }}\n";
    CHECK(printed == expected);
  }

  TEST_CASE("parsing never crashes on truncated text") {
    std::string text(figures_library_text());
    for (std::size_t cut = 0; cut < text.size(); cut += 7) {
      auto r = parse_library(text.substr(0, cut));
      CHECK((r.ok() || !r.diagnostics.empty()));
    }
  }
}
