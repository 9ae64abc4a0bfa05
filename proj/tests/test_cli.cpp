#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome rsfree(const std::string& args) {
  std::string cmd = std::string(RSFREE_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string write_spec(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("enumerate", "[cli]") {
  auto a = rsfree("enumerate --class premaps --n 3");
  CHECK(a.code == 0);
  CHECK(a.out.find("count: 15") != std::string::npos);
  auto b = rsfree("enumerate --class disc-nc --gamma \"(1,2,3)\"");
  CHECK(b.code == 0);
  CHECK(b.out.find("count: 5") != std::string::npos);
}

TEST_CASE("exact subcommand", "[cli]") {
  auto a = rsfree("exact -e T=goe \"tr(T T)\"");
  CHECK(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j.dump().find("\"N^-1\":\"1\"") != std::string::npos);
}

TEST_CASE("verify second order", "[cli]") {
  auto a = rsfree("verify --suite second-order --colours goe,goe");
  CHECK(a.code == 0);
  CHECK(a.out.find("lhs") != std::string::npos);
}

TEST_CASE("job specs", "[cli]") {
  auto empty = write_spec("rsf_empty.json", R"j({"ensembles": {}, "expressions": []})j");
  CHECK(rsfree("run --spec " + empty).code == 0);

  auto bad = write_spec("rsf_bad.json", "{\n  \"ensembles\": {\"T\": {\"kind\": \"gue\"}},\n  \"expressions\": []\n}\n");
  auto b = rsfree("run --spec " + bad);
  CHECK(b.code == 2);
  CHECK(b.out.find("line 2") != std::string::npos);

  auto zero = write_spec("rsf_zero.json", R"j({
  "ensembles": {"T1": {"kind": "goe"}, "T2": {"kind": "goe"}},
  "expressions": [{"name": "pq", "expr": "k(Tr([T1][T2]),Tr([T1][T2][T1][T2]))"}],
  "modes": ["verify"]
})j");
  auto z = rsfree("run --spec " + zero);
  CHECK(z.code == 0);
  CHECK(z.out.find("zero-limit: pass") != std::string::npos);

  auto exact = write_spec("rsf_exact.json", R"j({
  "ensembles": {"T": {"kind": "goe"}},
  "expressions": [{"name": "t2", "expr": "tr(T T)"}],
  "modes": ["exact", "oracle"],
  "N": [2]
})j");
  auto e = rsfree("run --spec " + exact);
  CHECK(e.code == 0);
  CHECK(e.out.find("3/2") != std::string::npos);
}
