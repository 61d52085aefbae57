#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace cogrip::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int status = 0;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::size_t line_count(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string line; std::getline(f, line);) n += line.empty() ? 0 : 1;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() / ("cogrip_cli_" + std::to_string(::getpid())));
    fs::remove_all(*dir_);
    const Result r = call({"gen", "--size", "12", "--seed", "49184", "--out", (*dir_ / "splits").string()});
    ASSERT_EQ(r.status, 0) << r.err;
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static fs::path split(const std::string& name) { return *dir_ / "splits" / (name + "_12.jsonl"); }
  static fs::path* dir_;
};
fs::path* Cli::dir_ = nullptr;

TEST(Sha256, KnownVectors) {
  const std::string abc = "abc";
  EXPECT_EQ(sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size())),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex({}), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(Cli, GenWritesSplitsAndManifest) {
  EXPECT_EQ(line_count(split("train")), 1750u);
  EXPECT_EQ(line_count(split("val")), 210u);
  EXPECT_EQ(line_count(split("test")), 245u);
  const json m = json::parse(slurp(*dir_ / "splits" / "manifest_gen.json"));
  EXPECT_EQ(m["subcommand"], "gen");
  ASSERT_EQ(m["outputs"].size(), 3u);
  for (const json& f : m["outputs"]) EXPECT_EQ(f["sha256"], file_sha256(f["path"].get<std::string>()));
}

TEST_F(Cli, RerunReproducesAndDetectsDrift) {
  const fs::path manifest = *dir_ / "splits" / "manifest_gen.json";
  Result r = call({"rerun", manifest.string()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.find("DIFFERENT"), std::string::npos);
  EXPECT_NE(r.out.find("identical"), std::string::npos);

  json m = json::parse(slurp(manifest));
  m["outputs"][0]["sha256"] = std::string(64, '0');
  const fs::path tampered = *dir_ / "tampered.json";
  std::ofstream(tampered) << m.dump();
  r = call({"rerun", tampered.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("DIFFERENT"), std::string::npos);
}

TEST_F(Cli, EvalPrintsCsvAndWritesReports) {
  const fs::path csv = *dir_ / "eval.csv", js = *dir_ / "eval.json";
  const Result r = call({"eval", "--split", split("val").string(), "--R", "1", "--R", "4", "--pooled", "--seeds", "1",
                         "--csv", csv.string(), "--json", js.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("pairing,M,mSR,mEPL,mTS,mJE,N\n"));
  EXPECT_EQ(slurp(csv), r.out);
  std::istringstream rows(r.out);
  std::size_t n = 0;
  for (std::string line; std::getline(rows, line);) ++n;
  EXPECT_EQ(n, 4u);  // header, R=1, R=4, pooled
  const json report = json::parse(slurp(js));
  EXPECT_EQ(report.size(), 3u);
  EXPECT_TRUE(fs::exists(csv.string() + ".manifest.json"));
  const Result again = call({"rerun", csv.string() + ".manifest.json"});
  EXPECT_EQ(again.status, 0) << again.err;
}

// Golden seeded run, recorded from the first execution of this implementation.
TEST_F(Cli, EvalGoldenRow) {
  const fs::path manifest = *dir_ / "golden.manifest.json";
  const Result r = call({"eval", "--guide", "hig", "--R", "1", "--follower", "hif", "--phi", "0.99", "--split",
                         split("test").string(), "--seeds", "3", "--manifest", manifest.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "pairing,M,mSR,mEPL,mTS,mJE,N\nHIF-HIG(R=1),12,1.000000,7.522449,1.704622,1.641085,735\n");
  // Stdout-only runs are reproducible through the stdout checksum.
  const Result again = call({"rerun", manifest.string()});
  EXPECT_EQ(again.status, 0) << again.err;
  EXPECT_EQ(again.out, "identical <stdout>\n");
}

TEST_F(Cli, PlayEndsWithOutcomeLine) {
  const fs::path log = *dir_ / "play.jsonl";
  const Result r = call({"play", "--split", split("test").string(), "--task", "3", "--log", log.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const Result again = call({"rerun", log.string() + ".manifest.json"});
  EXPECT_EQ(again.status, 0) << again.err;
  EXPECT_NE(again.out.find("identical " + log.string()), std::string::npos) << again.out;
  const auto last = r.out.substr(r.out.rfind("outcome:"));
  EXPECT_NE(last.find("S_Game="), std::string::npos);
  std::string content = slurp(log);
  content.pop_back();
  const json trailer = json::parse(content.substr(content.rfind('\n') + 1));
  EXPECT_TRUE(trailer.contains("outcome"));
}

TEST_F(Cli, RenderAsciiAndPng) {
  const Result a = call({"render", "--split", split("test").string(), "--task", "0", "--no-manifest"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_GE(std::count(a.out.begin(), a.out.end(), '\n'), 12);
  const fs::path png = *dir_ / "t0.png";
  const Result p = call({"render", "--split", split("test").string(), "--task", "0", "--format", "png", "--out",
                         png.string()});
  ASSERT_EQ(p.status, 0) << p.err;
  EXPECT_TRUE(slurp(png).starts_with("\x89PNG\r\n\x1a\n"));
  EXPECT_EQ(call({"rerun", png.string() + ".manifest.json"}).status, 0);
}

TEST_F(Cli, ServeManifestIsNotRerunnable) {
  const fs::path manifest = *dir_ / "serve.manifest.json";
  json m = {{"subcommand", "serve"}, {"argv", {"serve", "--split", split("val").string()}}, {"outputs", json::array()}};
  std::ofstream(manifest) << m.dump();
  const Result r = call({"rerun", manifest.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("interactive"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).status, 2);
  EXPECT_EQ(call({"dance"}).status, 2);
  EXPECT_EQ(call({"eval"}).status, 2);
  EXPECT_EQ(call({"eval", "--split", (*dir_ / "missing.jsonl").string()}).status, 2);
  EXPECT_EQ(call({"gen", "--size", "13"}).status, 2);
  EXPECT_EQ(call({"eval", "--split", split("val").string(), "--phi", "1.5"}).status, 2);
  const Result bad_task = call({"play", "--split", split("val").string(), "--task", "99999"});
  EXPECT_NE(bad_task.status, 0);
  EXPECT_FALSE(bad_task.err.empty());
}

TEST_F(Cli, MalformedSplitIsAModuleError) {
  const fs::path bad = *dir_ / "bad.jsonl";
  std::ofstream(bad) << "{\"id\":0}\n";
  const Result r = call({"eval", "--split", bad.string(), "--seeds", "1", "--no-manifest"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("malformed"), std::string::npos);
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
  const fs::path cfg = *dir_ / "eval.ini";
  std::ofstream(cfg) << "[eval]\nsplit=" << split("val").string() << "\nseeds=1\nR=4\nno-manifest=true\n";
  const Result r = call({"--config", cfg.string(), "eval"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("HIF-HIG"), std::string::npos);
}

}  // namespace
}  // namespace cogrip::cli
