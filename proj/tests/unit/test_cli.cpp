#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "riesz_lab.hpp"

using nlohmann::json;
using oracle::pi;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result lab(std::vector<std::string> args) {
  args.insert(args.begin(), "riesz-lab");
  std::ostringstream out, err;
  Result r;
  r.code = riesz::lab::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string shape_file(const char* name) {
  return std::string(RIESZ_DATA_DIR) + "/shapes/" + name + ".json";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("residues of the unit sphere") {
  const auto r = lab({"residues", "--shape", shape_file("sphere1"), "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("meta").at("seed") == 7);
  CHECK(j.at("meta").at("pairs") == 1000000);
  CHECK(j.at("meta").at("version").is_string());
  bool found = false;
  for (const auto& p : j.at("poles")) {
    if (p.at("z") == -2) {
      found = true;
      CHECK(p.at("res").get<double>() == doctest::Approx(8 * pi * pi).epsilon(0.01));
    }
  }
  CHECK(found);
}

TEST_CASE("energy at zero") {
  const auto r = lab({"energy", "--shape", shape_file("circle1"), "--z", "0"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("energy").at(0).at("re").get<double>() == doctest::Approx(4 * pi * pi));
  const auto m = lab({"energy", "--shape", shape_file("sphere1"), "--z", "1,0.5+0.5i", "--pairs", "100000"});
  REQUIRE(m.code == 0);
  CHECK(json::parse(m.out).at("energy").size() == 2);
}

TEST_CASE("torus is identified as inconclusive") {
  const auto r = lab({"identify", "--shape", shape_file("torus"), "--model", shape_file("sphere1")});
  REQUIRE(r.code == 0);
  const auto v = json::parse(r.out).at("verdict");
  CHECK(v.at("class") == "Inconclusive");
  CHECK(v.at("failing") == "Res(-4)");
}

TEST_CASE("exit codes") {
  CHECK(lab({"energy", "--shape", shape_file("circle1"), "--z", "-1"}).code == 3);
  CHECK(lab({"beta", "--shape", shape_file("sphere1"), "--z", "-2"}).code == 3);
  CHECK(lab({"energy", "--shape", "/nonexistent.json", "--z", "0"}).code == 2);
  CHECK(lab({"energy", "--shape", shape_file("circle1"), "--z", "abc"}).code == 2);
  CHECK(lab({"energy", "--shape", shape_file("circle1")}).code == 2);
  CHECK(lab({"frobnicate"}).code == 2);
  CHECK(lab({}).code == 2);
  CHECK(lab({"energy", "--shape", shape_file("circle1"), "--z", "0", "--pairs", "0"}).code == 2);
  CHECK(lab({"chord", "--shape", shape_file("sphere1")}).code == 2);
  CHECK(lab({"distro", "--shape", shape_file("circle1"), "--q", "0"}).code == 3);
  const auto h = lab({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("identify") != std::string::npos);

  const auto tmp = std::filesystem::temp_directory_path() / "riesz_lab_bad_kind.json";
  std::ofstream(tmp) << R"({"kind": "klein bottle", "params": {}})";
  const auto bad = lab({"energy", "--shape", tmp.string(), "--z", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("klein bottle") != std::string::npos);
}

TEST_CASE("same arguments give byte-identical files") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::vector<std::vector<std::string>> runs{
      {"distro", "--shape", shape_file("sphere1"), "--pairs", "50000", "--seed", "3"},
      {"chord", "--shape", shape_file("disk1"), "--pairs", "20000", "--seed", "3"},
      {"beta", "--shape", shape_file("sphere1"), "--z", "-3,-2.5", "--pairs", "100000", "--seed", "3"},
      {"moebius", "--shape", shape_file("ellipse21"), "--pairs", "100000", "--bins", "512"},
      {"tails", "--eps", "0.1,0.2", "--pairs", "50000"},
  };
  int k = 0;
  for (auto args : runs) {
    const auto a = dir / ("riesz_lab_a" + std::to_string(k) + ".out");
    const auto b = dir / ("riesz_lab_b" + std::to_string(k) + ".out");
    ++k;
    auto aa = args, bb = args;
    aa.insert(aa.end(), {"--out", a.string()});
    bb.insert(bb.end(), {"--out", b.string()});
    INFO(args[0]);
    REQUIRE(lab(aa).code == 0);
    REQUIRE(lab(bb).code == 0);
    const std::string sa = slurp(a), sb = slurp(b);
    CHECK_FALSE(sa.empty());
    // the embedded argv names the output file, so compare with it masked
    auto mask = [](std::string s, const std::string& f) {
      for (auto p = s.find(f); p != std::string::npos; p = s.find(f, p)) s.replace(p, f.size(), "OUT");
      return s;
    };
    CHECK(mask(sa, a.string()) == mask(sb, b.string()));
  }
  const auto x = lab(runs[0]), y = lab(runs[0]);
  CHECK(x.out == y.out);
}

TEST_CASE("csv outputs carry their metadata") {
  const auto r = lab({"distro", "--shape", shape_file("circle1"), "--pairs", "20000", "--seed", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# riesz-lab", 0) == 0);
  CHECK(r.out.find("# seed: 5\n") != std::string::npos);
  CHECK(r.out.find("# pairs: 20000\n") != std::string::npos);
  CHECK(r.out.find("\nr,F\n") != std::string::npos);
  const auto j = lab({"distro", "--shape", shape_file("circle1"), "--pairs", "20000", "--format", "json",
                      "--q", "1,2"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out).contains("meta"));
  const auto c = lab({"chord", "--shape", shape_file("disk1"), "--pairs", "20000"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("\nlength,weight\n") != std::string::npos);
}

TEST_CASE("caelli and tails summaries") {
  const auto c = lab({"caelli", "--config", std::string(RIESZ_DATA_DIR) + "/caelli_default.json",
                      "--pairs", "100000"});
  REQUIRE(c.code == 0);
  const auto j = json::parse(c.out);
  CHECK(j.at("symmetric_difference").get<double>() > 0.0);
  for (const auto& chk : j.at("preconditions")) CHECK(chk.at("pass") == true);
  for (const auto& k : j.at("ks")) CHECK(k.at("pass") == true);
  const auto t = lab({"tails", "--eps", "0.1", "--pairs", "100000"});
  REQUIRE(t.code == 0);
  CHECK(lab({"tails", "--eps", "0.7"}).code == 2);
}
