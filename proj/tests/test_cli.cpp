#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "slcrigid/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("slcrigid_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args, const std::string& env = "") {
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout", err = dir / "stderr";
  const std::string cmd = env + " " + SLCRIGID_CLI + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string sample(const std::string& name) { return std::string(SLCRIGID_SAMPLES) + "/" + name; }

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, VerdictExamples) {
  const CliRun lc5 = run("verdict " + sample("lc5.json"));
  EXPECT_EQ(lc5.status, 0);
  EXPECT_EQ(slc::json::parse(lc5.out)["verdict"], "isostatic-certified");

  const CliRun rigid = run("verdict " + sample("c3_rigid_dependent.json"));
  EXPECT_EQ(rigid.status, 1);
  const auto j = slc::json::parse(rigid.out);
  EXPECT_EQ(j["verdict"], "necessary-conditions-fail");
  EXPECT_EQ(j["rank"]["rank"], 8);
  EXPECT_EQ(j["rank"]["rows"], 9);
}

TEST(Cli, RankExact) {
  const CliRun r = run("rank " + sample("p1phi0.json") + " --exact");
  EXPECT_EQ(r.status, 0);
  const auto j = slc::json::parse(r.out);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["backend"], "exact");
  const CliRun bad = run("rank " + sample("lc5.json") + " --exact");
  EXPECT_EQ(bad.status, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_NE(bad.err.find("error[unsupported-backend]"), std::string::npos);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check " + sample("c3_generated.json")).status, 0);
  EXPECT_EQ(run("check " + sample("c2_fixed_edge.json")).status, 1);
  const CliRun missing = run("check /nonexistent/file.json");
  EXPECT_EQ(missing.status, 2);
  EXPECT_TRUE(missing.out.empty());
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, GenerateMatchesGoldenAndReduces) {
  const fs::path trace = scratch() / "trace.json";
  const CliRun gen = run("generate --group c3 --base lc --steps 4 --seed 7");
  EXPECT_EQ(gen.status, 0);
  EXPECT_EQ(gen.out, slurp(sample("c3_generated.json")));
  const slc::Document doc = slc::parse_document(gen.out);
  EXPECT_EQ(doc.graph.num_vertices(), 15);
  EXPECT_TRUE(slc::is_gamma_tight(doc.graph).gamma_tight);

  const CliRun red = run("reduce " + sample("c3_generated.json") + " --trace " + trace.string());
  EXPECT_EQ(red.status, 0);
  const slc::ConstructionTrace t = slc::trace_from_json(slc::json::parse(slurp(trace)));
  EXPECT_EQ(t.moves.size(), 4u);
  ASSERT_EQ(t.bases.size(), 1u);
  EXPECT_EQ(slc::base_name(t.bases[0]), "LC3psi3");
  EXPECT_TRUE(slc::isomorphic_under(slc::replay(t), doc.graph, t.vertex_labels));
  EXPECT_EQ(slc::parse_document(red.out).graph, slc::make_base(t.bases[0]));
}

TEST(Cli, Extend) {
  const CliRun ok = run("extend " + sample("p2phi2.json") + " --move zeroloop:0");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(slc::parse_document(ok.out).graph.num_vertices(), 4);
  const CliRun bad = run("extend " + sample("p2phi2.json") + " --move zero2:0");
  EXPECT_EQ(bad.status, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(run("extend " + sample("p2phi2.json") + " --move zero2:0,0").status, 2);
}

TEST(Cli, SeedEnvironmentAndDeterminism) {
  const CliRun a = run("verdict " + sample("c3_generated.json") + " --seed 5");
  const CliRun b = run("verdict " + sample("c3_generated.json") + " --seed 5");
  EXPECT_EQ(a.out, b.out);
  const CliRun env = run("generate --group c5 --base pn --steps 3", "SLCRIGID_SEED=11");
  const CliRun flag = run("generate --group c5 --base pn --steps 3 --seed 11");
  EXPECT_EQ(env.out, flag.out);
  const CliRun other = run("generate --group c5 --base pn --steps 3 --seed 12");
  EXPECT_NE(env.out, other.out);
}

TEST(Cli, Svg) {
  const CliRun lc5 = run("svg " + sample("lc5.json") + " --auto --seed 3");
  EXPECT_EQ(lc5.status, 0);
  EXPECT_EQ(count(lc5.out, "<circle class=\"vertex"), 5);
  EXPECT_EQ(count(lc5.out, "<line class=\"edge"), 5);
  EXPECT_EQ(count(lc5.out, "<line class=\"loop"), 5);
  EXPECT_NE(lc5.out.find("viewBox=\"0 0 400 400\""), std::string::npos);
  EXPECT_EQ(run("svg " + sample("lc5.json") + " --auto --seed 3").out, lc5.out);
  EXPECT_EQ(run("svg " + sample("lc5.json")).status, 2);

  const CliRun placed = run("svg " + sample("lc5_placed.json") + " --size 200");
  EXPECT_EQ(placed.status, 0);
  EXPECT_NE(placed.out.find("width=\"200\""), std::string::npos);

  const CliRun p1 = run("svg " + sample("p1phi0.json") + " --auto");
  EXPECT_EQ(count(p1.out, "<circle"), 1);
  EXPECT_NE(p1.out.find("cx=\"200.00\" cy=\"200.00\""), std::string::npos);
  EXPECT_EQ(count(p1.out, "<line class=\"loop"), 2);

  // Balanced tags: every element is self-closing apart from svg and style.
  const std::regex open("<(svg|style)[ >]"), close("</(svg|style)>");
  EXPECT_EQ(std::distance(std::sregex_iterator(lc5.out.begin(), lc5.out.end(), open), std::sregex_iterator()),
            std::distance(std::sregex_iterator(lc5.out.begin(), lc5.out.end(), close), std::sregex_iterator()));
}

TEST(Cli, Selftest) {
  const fs::path dump = scratch() / "failures";
  const CliRun c2 = run("selftest --groups c2 --samples 50 --max-steps 6 --jobs 4 --dump-dir " + dump.string());
  EXPECT_EQ(c2.status, 0) << c2.out;
  EXPECT_NE(c2.out.find("c2: 50/50 samples passed"), std::string::npos);
  EXPECT_FALSE(fs::exists(dump));
  // Output order does not depend on the number of workers.
  EXPECT_EQ(run("selftest --groups c2 --samples 50 --max-steps 6 --jobs 1 --dump-dir " + dump.string()).out,
            c2.out);

  const CliRun broken = run("selftest --groups c2 --samples 5 --inject-broken");
  EXPECT_EQ(broken.status, 0);
  EXPECT_NE(broken.out.find("expected-negative ok"), std::string::npos);

  const CliRun c4 = run("selftest --groups c4 --samples 5");
  EXPECT_EQ(c4.status, 0) << c4.out;
  EXPECT_NE(c4.err.find("warning: c4: sufficiency unproven"), std::string::npos);
}

TEST(Cli, ReadsDocumentFromStdin) {
  const CliRun piped = run("check - <" + sample("lc5.json"));
  EXPECT_EQ(piped.status, 0);
  EXPECT_EQ(piped.out, run("check " + sample("lc5.json")).out);
}
