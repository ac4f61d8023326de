#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mrlrc/mrlrc.hpp"

using namespace mrlrc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("mrlrc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto log = scratch() / "stdout.txt";
  const std::string cmd = std::string(MRLRC_CLI_PATH) + " " + args + " > " + log.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

bool has_line_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("construct writes a verifiable code and a summary") {
  const auto out = path("direct.mr");
  const auto r = run("construct --p 2 --a 1 --r 3 --h 2 --delta 1 --n 5 --method direct --sdss mds --out " + out);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("N=15 r=3 h=2 delta=1 ell=2^6 method=direct certified=1\n", 0) == 0);
  CHECK(has_line_starting(r.out, "tower p=2 a=1 m=6"));
  CHECK(fs::exists(out + ".sdss"));

  const auto v = run("verify --in " + out);
  CHECK(v.code == 0);
  CHECK(v.out.rfind("ok\npatterns_checked=10935\n", 0) == 0);
  CHECK(has_line_starting(v.out, "elapsed="));

  const auto vs = run("verify --in " + out + ".sdss");
  CHECK(vs.code == 0);
  CHECK(vs.out.rfind("ok\npatterns_checked=10\n", 0) == 0);

  // Files reload bit-identically through the library.
  std::ifstream in(out);
  const auto p = read_mr(in);
  std::ostringstream again;
  write_mr(again, p);
  CHECK(again.str() == slurp(out));
}

TEST_CASE("verify finds a corrupted Moore entry") {
  const auto good = path("good.mr");
  REQUIRE(run("construct --p 2 --r 3 --h 2 --delta 1 --n 5 --method direct --sdss mds --out " + good).code == 0);
  std::ifstream in(good);
  const auto p = read_mr(in);
  auto d = p.global();
  for (std::size_t i = 0; i < d[0].rows(); ++i) d[0].set(i, 0, d[0](i, 1));
  const auto bad = path("bad.mr");
  {
    std::ofstream o(bad);
    write_mr(o, MrParityCheck(p.spec(), p.local(), d));
  }
  const auto v = run("verify --in " + bad);
  CHECK(v.code == 1);
  CHECK(v.out.rfind("FAIL\n", 0) == 0);
  CHECK(has_line_starting(v.out, "counterexample local="));
}

TEST_CASE("sampled verification is labeled") {
  const auto out = path("sampled.mr");
  REQUIRE(run("construct --p 2 --r 3 --h 2 --delta 1 --n 5 --method direct --sdss mds --out " + out).code == 0);
  const auto v = run("verify --in " + out + " --sample 10000");
  CHECK(v.code == 0);
  CHECK(has_line_starting(v.out, "sampled=10000"));
  CHECK(v.out.rfind("ok\n", 0) == 0);
  const auto again = run("verify --in " + out + " --sample 10000");
  CHECK(again.out.substr(0, again.out.find("elapsed")) == v.out.substr(0, v.out.find("elapsed")));
  CHECK(run("verify --in " + out + " --sample 500 --seedless").code == 0);
}

TEST_CASE("parameter errors exit 2 and budget errors exit 3") {
  CHECK(run("construct --p 2 --r 2 --h 2 --delta 1 --n 5 --sdss gv --m 4 --out " + path("x.mr")).code == 2);
  CHECK(run("construct --p 2 --r 3 --h 2 --delta 3 --n 5 --sdss mds --out " + path("x.mr")).code == 2);
  CHECK(run("construct --p 4 --r 3 --h 2 --delta 1 --n 5 --sdss mds --out " + path("x.mr")).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("verify --in " + path("missing.mr")).code == 2);
  {
    std::ofstream o(path("garbage.mr"));
    o << "%MRLRC-MR v1\nnonsense\n";
  }
  CHECK(run("verify --in " + path("garbage.mr")).code == 2);
  const auto out = path("budget.mr");
  REQUIRE(run("construct --p 2 --r 3 --h 2 --delta 1 --n 5 --sdss mds --out " + out).code == 0);
  CHECK(run("verify --in " + out + " --budget 100").code == 3);
  CHECK(run("verify --in " + out + " --budget 100 --sample 50").code == 0);
}

TEST_CASE("gv and concatenated constructions") {
  const auto gv = run("construct --p 2 --r 2 --h 2 --delta 1 --n 5 --sdss gv --out " + path("gv.mr"));
  CHECK(gv.code == 0);
  CHECK(gv.out.rfind("N=10 r=2 h=2 delta=1 ell=2^5 method=direct certified=1\n", 0) == 0);
  CHECK(run("verify --in " + path("gv.mr")).code == 0);

  const auto cc = run("construct --p 2 --r 15 --h 2 --delta 1 --n 2 --method concat --inner bch:15:2 --sdss mds --out " +
                      path("bch.mr"));
  CHECK(cc.code == 0);
  CHECK(cc.out.rfind("N=30 r=15 h=2 delta=1 ell=2^16 method=concat certified=1\n", 0) == 0);
  CHECK(has_line_starting(cc.out, "sdss=mds n=2 s=8 m=16"));
}

TEST_CASE("sdss subcommand and bounds") {
  const auto s = run("sdss --p 2 --r 2 --h 2 --n 5 --sdss mds --out " + path("s.sdss"));
  CHECK(s.code == 0);
  CHECK(has_line_starting(s.out, "sdss=mds n=5 r=2 h=2 m=4"));

  const auto b = run("bounds --p 2 --n 5 --r 2 --h 2");
  CHECK(b.code == 0);
  CHECK(b.out == "gv_m=5 hamming_lower=4 singleton_lower=4\n");
  const auto b1 = run("bounds --p 3 --n 7 --r 2 --h 1");
  CHECK(b1.out.rfind("gv_m=2 ", 0) == 0);
  CHECK(has_line_starting(b1.out, "gv_m=2 hamming_lower="));
  CHECK(b1.out.find("singleton_lower=2") != std::string::npos);
  const auto ach = run("bounds --p 2 --n 5 --r 2 --h 2 --achieved " + path("s.sdss"));
  CHECK(ach.out == "gv_m=5 hamming_lower=4 singleton_lower=4 achieved_m=4\n");
  CHECK(run("bounds --p 6 --n 5 --r 2 --h 2").code == 2);
}

TEST_CASE("encode and decode round trip") {
  const auto code = path("codec.mr");
  REQUIRE(run("construct --p 2 --r 3 --h 2 --delta 1 --n 5 --sdss mds --out " + code).code == 0);
  std::ifstream in(code);
  const auto p = read_mr(in);
  const auto g = generator_from_parity(p);

  {
    std::ofstream o(path("zero.msg"));
    write_vector(o, std::vector<std::uint32_t>(g.rows(), 0));
  }
  auto e = run("encode --code " + code + " --in " + path("zero.msg") + " --out " + path("zero.cw"));
  CHECK(e.code == 0);
  CHECK(e.out == "encoded k=8 N=15\n");
  std::string zeros;
  for (int i = 0; i < 15; ++i) zeros += "0\n";
  CHECK(slurp(path("zero.cw")) == zeros);

  const std::vector<std::uint32_t> msg{1, 2, 3, 4, 5, 6, 7, 63};
  {
    std::ofstream o(path("m.msg"));
    write_vector(o, msg);
  }
  REQUIRE(run("encode --code " + code + " --in " + path("m.msg") + " --out " + path("m.cw")).code == 0);
  const auto cw = slurp(path("m.cw"));
  {
    std::istringstream is(cw);
    CHECK(read_vector(is, 64) == encode(g, msg));
  }

  const auto same = run("decode --code " + code + " --in " + path("m.cw") + " --out " + path("same.cw"));
  CHECK(same.code == 0);
  CHECK(slurp(path("same.cw")) == cw);

  // Erase a maximal pattern after scribbling over those symbols.
  const auto pattern = PatternSpace(p.spec()).at(1234).positions();
  auto word = encode(g, msg);
  std::string list;
  for (auto i : pattern) {
    word[i] = 0;
    list += (list.empty() ? "" : ",") + std::to_string(i);
  }
  {
    std::ofstream o(path("hole.cw"));
    write_vector(o, word);
  }
  const auto d = run("decode --code " + code + " --in " + path("hole.cw") + " --erasures " + list + " --out " +
                     path("fixed.cw"));
  CHECK(d.code == 0);
  CHECK(d.out == "recovered erasures=7\n");
  CHECK(slurp(path("fixed.cw")) == cw);

  const auto u = run("decode --code " + code + " --in " + path("hole.cw") + " --erasures 0,1,2,3,4 --out " +
                     path("never.cw"));
  CHECK(u.code == 1);
  CHECK(u.out.rfind("UNDECODABLE\ncertificate=", 0) == 0);

  CHECK(run("decode --code " + code + " --in " + path("hole.cw") + " --erasures 0,99 --out " + path("never.cw")).code == 2);
}

TEST_CASE("construct is deterministic") {
  const std::string args = "construct --p 3 --r 3 --h 2 --delta 2 --n 4 --sdss gv --out ";
  REQUIRE(run(args + path("a.mr")).code == 0);
  REQUIRE(run(args + path("b.mr")).code == 0);
  CHECK(slurp(path("a.mr")) == slurp(path("b.mr")));
  CHECK(slurp(path("a.mr.sdss")) == slurp(path("b.mr.sdss")));
  fs::remove_all(scratch());
}
