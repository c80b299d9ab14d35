#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

#include "cli/cli.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "taxview/generate.hpp"
#include "taxview/ingest.hpp"

using taxview::test::slurp;
using taxview::test::spit;
using taxview::test::TempDir;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = taxview::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_edges(const std::string& dot) {
  static const std::regex edge(R"("[^"]+" -> "[^"]+" \[label="[^"]*"\];)");
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(dot.begin(), dot.end(), edge), std::sregex_iterator()));
}

}  // namespace

TEST(Cli, ValidateExitCodes) {
  TempDir dir;
  spit(dir / "ok.json", taxview::serialize_bundle(taxview::devnullsoft_fixture()));
  auto r = run({"validate", (dir / "ok.json").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status=ok"), std::string::npos);

  auto s = taxview::devnullsoft_fixture();
  s.ownership.push_back({s.components.front().id, taxview::OwnerId("gbr-team-a")});
  spit(dir / "bad.json", taxview::serialize_bundle(s));
  r = run({"validate", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("multiple-owners"), std::string::npos);

  EXPECT_EQ(run({"validate", (dir / "missing.json").string()}).code, 2);
  spit(dir / "junk.json", "{not json");
  EXPECT_EQ(run({"validate", (dir / "junk.json").string()}).code, 2);
}

TEST(Cli, ReportDevnullsoft) {
  TempDir dir;
  auto r = run({"report", "--fixture", "devnullsoft", "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total=17 domestic=8 cross_border=9 unresolved=0"), std::string::npos);
  for (const char* f : {"view.dot", "view.csv", "registers.csv", "owners.csv", "report.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(j["statistics"]["cross_border"], 9);
  EXPECT_EQ(j["snapshot"]["id"], "devnullsoft");
}

TEST(Cli, ReportCaseStudy) {
  TempDir dir;
  auto r = run({"report", "--fixture", "casestudy_matrix", "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("unresolved=8097"), std::string::npos);
  EXPECT_EQ(count_edges(slurp(dir / "view.dot")), 22u);
  EXPECT_NE(slurp(dir / "view.csv").find("GBR,15,261,164,2,43,141"), std::string::npos);
}

TEST(Cli, ReportBucketsDefault) {
  TempDir dir;
  ASSERT_EQ(run({"report", "--buckets", "default", "--fixture", "casestudy_matrix", "--out-dir", dir.path().string()}).code, 0);
  const auto dot = slurp(dir / "view.dot");
  static const std::regex label(R"re(\[label="([^"]*)"\])re");
  std::set<std::string> labels;
  for (std::sregex_iterator it(dot.begin(), dot.end(), label), end; it != end; ++it) labels.insert((*it)[1]);
  EXPECT_EQ(labels, (std::set<std::string>{"[1,10)", "[10,100)", "[100,∞)"}));
}

TEST(Cli, ReportIsByteStable) {
  TempDir a, b;
  ASSERT_EQ(run({"report", "--fixture", "devnullsoft", "--out-dir", a.path().string()}).code, 0);
  ASSERT_EQ(run({"report", "--fixture", "devnullsoft", "--out-dir", b.path().string()}).code, 0);
  for (const char* f : {"view.dot", "view.csv", "registers.csv", "owners.csv", "report.json"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Cli, ReportRejectsInvalidBundleAndLeavesInputAlone) {
  TempDir dir;
  auto s = taxview::devnullsoft_fixture();
  s.dependencies.push_back({s.components[0].id, s.components[0].id});
  const auto doc = taxview::serialize_bundle(s);
  spit(dir / "in.json", doc);
  auto r = run({"report", (dir / "in.json").string(), "--out-dir", (dir / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("self-dependency"), std::string::npos);
  EXPECT_EQ(slurp(dir / "in.json"), doc);
}

TEST(Cli, StatsCaseStudy) {
  auto r = run({"stats", "--fixture", "casestudy_matrix"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("unresolved=8097"), std::string::npos);
  auto j = run({"stats", "--fixture", "casestudy_matrix", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["domestic"], 5902);
}

TEST(Cli, DiffSelfIsEmpty) {
  TempDir dir;
  spit(dir / "a.json", taxview::serialize_bundle(taxview::devnullsoft_fixture()));
  auto r = run({"diff", (dir / "a.json").string(), (dir / "a.json").string(), "--out-dir", dir.path().string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("no changes"), std::string::npos);
  auto j = nlohmann::json::parse(slurp(dir / "delta.json"));
  EXPECT_TRUE(j["matrix_delta"].empty());
}

TEST(Cli, GenIsDeterministic) {
  TempDir dir;
  const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  ASSERT_EQ(run({"gen", "--seed", "7", "--components", "50", "--weights", "SWE=0.5,DEU=0.5", "-o", a}).code, 0);
  ASSERT_EQ(run({"gen", "--seed", "7", "--components", "50", "--weights", "SWE=0.5,DEU=0.5", "-o", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run({"validate", a}).code, 0);
  EXPECT_EQ(run({"gen", "--weights", "SWE=0.4"}).code, 2);
  EXPECT_EQ(run({"gen", "--weights", "Sweden=1"}).code, 2);
}

TEST(Cli, FixtureOutputs) {
  auto r = run({"fixture", "casestudy_matrix"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("user\\owner,DEU,FRA,GBR,NLD,USA,N/A", 0), 0u);
  auto d = run({"fixture", "devnullsoft"});
  EXPECT_EQ(taxview::parse_bundle(d.out).components.size(), 18u);
  EXPECT_EQ(count_edges(run({"fixture", "devnullsoft", "--format", "dot"}).out), 6u);
  EXPECT_EQ(run({"fixture", "nope"}).code, 2);
}

TEST(Cli, AssembleFromCsv) {
  TempDir dir;
  spit(dir / "e.csv", "user,owner_component\na,b\nb,c\n");
  spit(dir / "o.csv", "component,owner\na,t1\nb,t2\nc,t2\n");
  spit(dir / "j.csv", "owner,jurisdiction\nt1,SWE\nt2,N/A\n");
  auto r = run({"assemble", "--edges", (dir / "e.csv").string(), "--ownership", (dir / "o.csv").string(),
                "--jurisdictions", (dir / "j.csv").string(), "--taken-at", "2023-06-30", "-o",
                (dir / "b.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto s = run({"stats", (dir / "b.json").string()});
  EXPECT_NE(s.out.find("total=2 domestic=1 cross_border=0 unresolved=1"), std::string::npos) << s.out;
  spit(dir / "j.csv", "owner,jurisdiction\nt1,SWEDEN\nt2,N/A\n");
  EXPECT_EQ(run({"assemble", "--edges", (dir / "e.csv").string(), "--ownership", (dir / "o.csv").string(),
                 "--jurisdictions", (dir / "j.csv").string(), "--taken-at", "2023-06-30"})
                .code,
            2);
}

TEST(Cli, ConfigFileAndOverrides) {
  TempDir dir;
  spit(dir / "c.toml",
       "resolvers = [\"explicit_assignment\"]\nbuckets = \"default\"\nformat = \"markdown\"\n"
       "include-statuses = [\"production\", \"experimental\"]\n");
  auto r = run({"--config", (dir / "c.toml").string(), "report", "--fixture", "devnullsoft", "--out-dir",
                dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "view.md"));
  auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(j["configuration"]["resolvers"].size(), 1u);
  EXPECT_EQ(j["configuration"]["graph"]["buckets"], "10,100");
  EXPECT_EQ(j["configuration"]["scope"]["include_statuses"].size(), 2u);

  r = run({"--config", (dir / "c.toml").string(), "--buckets", "none", "--format", "csv", "report", "--fixture",
           "devnullsoft", "--out-dir", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_TRUE(j["configuration"]["graph"]["buckets"].is_null());

  spit(dir / "bad.toml", "colour = \"blue\"\n");
  EXPECT_EQ(run({"--config", (dir / "bad.toml").string(), "stats", "--fixture", "devnullsoft"}).code, 2);
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run({"stats", "--fixture", "devnullsoft", "--resolvers", "member_majority(0.4)"}).code, 2);
  EXPECT_EQ(run({"stats", "--fixture", "devnullsoft", "--buckets", "1"}).code, 2);
  EXPECT_EQ(run({"stats", "--fixture", "devnullsoft", "--include-statuses", "retired"}).code, 2);
  EXPECT_EQ(run({"report", "--fixture", "devnullsoft", "--format", "dot"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
