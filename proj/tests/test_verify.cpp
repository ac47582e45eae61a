#include <doctest.h>

#include "verify.hpp"

using namespace spl;

TEST_SUITE("verify") {

TEST_CASE("paper values parser") {
  auto pv = parse_paper_values(
      "format = 1\n"
      "# comment\n"
      "[a.one]\n"
      "criterion = 3\n"
      "anchor = \"quoted = text\"\n"
      "expected = 4\n"
      "\n"
      "[b.two]\n"
      "expected = >= 4\n");
  CHECK(pv.header.at("format") == "1");
  REQUIRE(pv.checks.size() == 2);
  CHECK(pv.checks[0].id == "a.one");
  CHECK(pv.checks[0].criterion() == 3);
  CHECK(pv.checks[0].get("anchor") == "quoted = text");
  CHECK(pv.checks[1].get("expected") == ">= 4");
  CHECK(pv.checks[1].get("cost", "7") == "7");
  CHECK(pv.checks[1].get_u64("cost", 9) == 9);
  CHECK_THROWS(pv.checks[1].get("missing"));
  CHECK_THROWS(parse_paper_values("[x]\n[x]\n"));
  CHECK_THROWS(parse_paper_values("[x\n"));
  CHECK_THROWS(parse_paper_values("[x]\nnovalue\n"));
  CHECK_THROWS(parse_paper_values("[x]\na = 1\na = 2\n"));
}

TEST_CASE("shipped data file") {
  auto pv = load_paper_values(default_paper_values_path());
  CHECK(pv.header.at("format") == "1");
  std::set<int> crit;
  for (const auto& c : pv.checks) {
    CHECK(c.has("anchor"));
    CHECK(c.has("quantity"));
    CHECK(c.has("expected"));
    crit.insert(c.criterion());
  }
  for (int k = 1; k <= 12; ++k) CHECK(crit.count(k) == 1);
}

TEST_CASE("multisets") {
  auto m = parse_multiset("1x1 7x5 14x3");
  REQUIRE(m.size() == 3);
  CHECK(m[1] == Multiplicity{7, 5});
  CHECK(multiset_str(m) == "1x1 7x5 14x3");
  CHECK(multiset_str({{14, 3}, {1, 1}}) == "1x1 14x3");
  CHECK_THROWS(parse_multiset("7-5"));
}

TEST_CASE("zero budget skips every check") {
  auto pv = load_paper_values(default_paper_values_path());
  VerifyOptions opt;
  opt.budget = 0;
  opt.timing = false;
  auto rep = run_verify(pv, opt);
  CHECK(rep.passed == 0);
  CHECK(rep.failed == 0);
  CHECK(rep.skipped == rep.checks.size());
  for (const auto& r : rep.checks) CHECK(status_name(r.status) == "skipped-budget");
  auto j = report_json(rep, opt);
  CHECK(j.is_object());
  CHECK(j.dump() == report_json(run_verify(pv, opt), opt).dump());
}

TEST_CASE("core checks for one criterion") {
  auto pv = load_paper_values(default_paper_values_path());
  VerifyOptions opt;
  opt.criteria = {5};
  auto rep = run_verify(pv, opt);
  CHECK(rep.ok());
  CHECK(rep.failed == 0);
  CHECK(rep.passed == rep.checks.size());
  for (const auto& r : rep.checks) CHECK(r.criterion == 5);
}

}
