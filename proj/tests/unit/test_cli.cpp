#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "sl2cert/cli.hpp"
#include "sl2cert/json_io.hpp"
#include "sl2cert/verifiers.hpp"

using namespace sl2cert;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sl2cert_cli_" + name)).string();
}

}  // namespace

TEST(Cli, Figure8Json) {
  CliRun r = run({"figure8", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json_io::Json doc = json_io::parse(r.out);
  EXPECT_EQ(doc["type"], "MarkedRep");
  EXPECT_EQ(doc["reports"][0]["status"], "certified");
  EXPECT_EQ(doc["words"]["meridian"], "A");
  MarkedRep rep = json_io::rep_from_json(doc);
  EXPECT_EQ(check_relations(rep).status, Status::Certified);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "gluing", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"verify", "gluing", "--n", "0"}).code, 0);
  EXPECT_EQ(run({"verify", "comm-eq", "--m", "5", "--n", "2", "--bound", "4"}).code, 0);
  EXPECT_EQ(run({"verify", "comm-eq", "--m", "2", "--n", "1", "--bound", "2"}).code, 0);
  EXPECT_EQ(run({"verify", "triple-hnn"}).code, 1);
  EXPECT_EQ(run({"verify", "trace-pm2", "--rep", "discrete", "--bound", "2"}).code, 1);
  EXPECT_EQ(run({"bs1m", "-1"}).code, 1);
  EXPECT_EQ(run({"bs1m", "2"}).code, 0);
  EXPECT_EQ(run({"torus-bundle", "0", "-1", "1", "0"}).code, 1);
  EXPECT_EQ(run({"torus-bundle", "2", "1", "1", "1", "--box", "2"}).code, 0);
  // A missing input file is a usage error.
  EXPECT_EQ(run({"hnn-extend", "--a", "B", "--base", "/nonexistent.json"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"figure8", "--bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "ct", "--bound", "x"}).code, 2);
  EXPECT_EQ(run({"trace-poly", "A*(B"}).code, 2);
  EXPECT_EQ(run({"trace-poly", "A*C"}).code, 2);
  EXPECT_EQ(run({"verify", "gluing", "--n-range", "3"}).code, 2);
  EXPECT_EQ(run({"hnn-extend", "--r-max", "1", "--g-len", "99"}).code, 2);
  CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("verify"), std::string::npos);
}

TEST(Cli, CapFromEnvironment) {
  setenv("SL2CERT_MAX_BOUND", "2", 1);
  CliRun r = run({"verify", "lyndon", "--bound", "3", "--json"});
  unsetenv("SL2CERT_MAX_BOUND");
  EXPECT_EQ(r.code, 2);
  json_io::Json doc = json_io::parse(r.out);
  EXPECT_EQ(doc["kind"], "CapExceeded");
}

TEST(Cli, BoundedCheckFailureIsExitThree) {
  // Base with a unipotent generator: the trace scan refutes the hypothesis.
  TowerPtr t = FieldTower::make({"l"});
  FieldElement l = FieldElement::indeterminate(t, "l"), one(t, Integer(1)), zero(t);
  Symbol a = intern("A"), b = intern("B");
  MarkedRep rep(t, {a, b}, {{a, Mat2(l, zero, zero, l.inv())}, {b, Mat2(one, one, zero, one)}});
  std::string base = temp_path("unipotent.json");
  std::ofstream(base) << json_io::dump(json_io::to_json(rep));
  CliRun r = run({"hnn-extend", "--base", base, "--a", "A", "--r-max", "1"});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("TraceScanFailed"), std::string::npos);
  std::filesystem::remove(base);
}

TEST(Cli, OutputFileAndReparse) {
  std::string path = temp_path("discrete.json");
  CliRun w = run({"--json", "figure8", "--discrete", "--branch", "minus", "-o", path});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_TRUE(w.out.empty());
  CliRun r = run({"verify", "relations", "--input", path, "--json"});
  EXPECT_EQ(r.code, 0);
  Report rep = json_io::report_from_json(json_io::parse(r.out));
  EXPECT_EQ(rep.status, Status::Certified);
  EXPECT_TRUE(reverify(rep));
  std::filesystem::remove(path);
}

TEST(Cli, TracePoly) {
  CliRun r = run({"trace-poly", "A*B*A^-1*B^-1"});
  EXPECT_EQ(r.code, 0);
  // Fricke identity for the commutator trace.
  EXPECT_EQ(r.out, "tr(A*B*A^-1*B^-1) = -p*q*r + p^2 + q^2 + r^2 - 2\n");
}

TEST(Cli, EveryClaimRuns) {
  std::vector<std::vector<std::string>> cmds{
      {"verify", "relations"},
      {"verify", "trace-pm2", "--bound", "3"},
      {"verify", "ct", "--bound", "2"},
      {"verify", "ct", "--m", "-1", "--bound", "3"},
      {"verify", "csa", "--bound", "2"},
      {"verify", "csa", "--m", "2", "--bound", "2"},
      {"verify", "gluing"},
      {"verify", "hnn-invariant", "--r-max", "2"},
      {"verify", "order4"},
      {"verify", "triple-hnn"},
      {"verify", "comm-eq", "--bound", "2"},
      {"verify", "lyndon", "--bound", "2"},
      {"verify", "faithful", "--bound", "3"},
      {"verify", "faithful", "--rep", "torus", "--bound", "2"},
      {"verify", "faithful", "--rep", "minsky", "--bound", "2"},
  };
  for (auto cmd : cmds) {
    cmd.push_back("--json");
    CliRun r = run(cmd);
    EXPECT_TRUE(r.code == 0 || r.code == 1) << cmd[1] << " " << r.err;
    Report rep = json_io::report_from_json(json_io::parse(r.out));
    EXPECT_TRUE(reverify(rep)) << cmd[1];
    EXPECT_EQ(r.code, rep.status == Status::Refuted ? 1 : 0);
  }
}

TEST(Cli, ConstructionsRun) {
  std::vector<std::vector<std::string>> cmds{
      {"join-free", "--syllables", "2", "--syllable-len", "2"},
      {"join-amalgam", "--bound", "3"},
      {"hnn-extend", "--bound", "3", "--r-max", "1"},
      {"minsky", "--bound", "3"},
  };
  for (auto cmd : cmds) {
    cmd.push_back("--json");
    CliRun r = run(cmd);
    ASSERT_EQ(r.code, 0) << cmd[0] << " " << r.err;
    MarkedRep rep = json_io::rep_from_json(json_io::parse(r.out));
    EXPECT_EQ(check_relations(rep).status, Status::Certified) << cmd[0];
  }
}

TEST(Cli, DeterministicBytes) {
  for (std::vector<std::string> cmd : {std::vector<std::string>{"minsky", "--bound", "3", "--json"},
                                       {"verify", "gluing", "--json"},
                                       {"verify", "comm-eq", "--bound", "2"}}) {
    EXPECT_EQ(run(cmd).out, run(cmd).out);
  }
}

#ifdef SL2CERT_CLI_PATH
TEST(Cli, BinaryExitStatus) {
  auto status = [](const std::string& args) {
    std::string cmd = std::string(SL2CERT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("figure8 --json"), 0);
  EXPECT_EQ(status("verify gluing --n 3"), 1);
  EXPECT_EQ(status("verify comm-eq --m 5 --n 2 --bound 4"), 0);
  EXPECT_EQ(status("frobnicate"), 2);
}
#endif
