#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace zerosum;

namespace {

VerificationReport sample(bool failing) {
  const auto g = FiniteAbelianGroup::parse("C3");
  auto r = detail::make_report("conjecture10", "conjecture", g);
  r.params = {{"i", 2}};
  r.instances_checked = 10;
  if (failing) {
    r.counterexamples.push_back({Sequence::parse(g, "[0 1^2]"), "no length, \"quoted\""});
    r.counterexamples_total = 3;
  }
  return r;
}

}  // namespace

TEST(Report, JsonHasSortedKeysAndVersion) {
  const auto j = to_json(sample(false));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["outcome"], "verified");
  EXPECT_EQ(j["instances_checked"], 10);
  EXPECT_EQ(to_json(sample(true))["outcome"], "counterexample");
  EXPECT_EQ(to_json(sample(true))["counterexamples"][0]["sequence"], "[0 1^2]");
}

TEST(Report, CsvQuotesFieldsAndListsEachCounterexample) {
  const auto ok = to_csv(sample(false));
  EXPECT_EQ(ok, "statement,group,outcome,instances_checked,sequence,clause\nconjecture10,C3,verified,10,,\n");
  const auto bad = to_csv(sample(true));
  EXPECT_NE(bad.find("\"no length, \"\"quoted\"\"\""), std::string::npos);
  EXPECT_NE(bad.find(",[0 1^2],"), std::string::npos);
}

TEST(Report, TextNamesTheOutcome) {
  EXPECT_NE(to_text(sample(true)).find("COUNTEREXAMPLE FOUND: 3 instance(s)"), std::string::npos);
  auto theorem = sample(true);
  theorem.kind = "theorem";
  EXPECT_NE(to_text(theorem).find("THEOREM CHECK FAILED"), std::string::npos);
}

TEST(Report, InvariantRendering) {
  const auto r = davenport(FiniteAbelianGroup::parse("C3xC3"));
  const auto j = to_json(r);
  EXPECT_EQ(j["value"], 5);
  EXPECT_EQ(j["invariant"], "davenport");
  EXPECT_NE(to_text(r).find("davenport(C3xC3) = 5"), std::string::npos);
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_THROW(parse_format("xml"), ParseError);
}

TEST(Manifest, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Manifest, RecordsHashes) {
  RunManifest m;
  m.command_line = {"zerosum", "davenport"};
  m.add("davenport", "computed", "out.json", "abc", 0);
  const auto j = m.to_json();
  EXPECT_EQ(j["tasks"][0]["sha256"], sha256_hex("abc"));
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_EQ(utc_timestamp(std::chrono::system_clock::time_point{}), "1970-01-01T00:00:00Z");
}
