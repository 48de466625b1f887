#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "obci/io.hpp"

namespace {

const std::string kFixtures = OBCI_FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;

  bool has(std::string_view s) const { return out.find(s) != std::string::npos; }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = obci::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& file) { return kFixtures + "/" + file; }

}  // namespace

TEST_CASE("validate") {
  const Run ok = cli({"validate", fx("eqe161-x.alg")});
  CHECK(ok.code == 0);
  CHECK(ok.has("6/6 axioms hold"));

  const Run bad = cli({"validate", fx("knof.alg")});
  CHECK(bad.code == 1);
  CHECK(bad.has("OBCI-5: FAILS"));
  CHECK(bad.has("FINDING"));

  const Run machine = cli({"--format=machine", "validate", "@eqe161-y"});
  CHECK(machine.code == 0);
  CHECK(machine.out.find("LAW OBCI-1 HOLDS\n") == 0);
}

TEST_CASE("format option is accepted after the subcommand") {
  const Run r = cli({"classify", "@eqvo2h", "--format=machine"});
  CHECK(r.code == 0);
  CHECK(r.out == "LAW homomorphism FAIL (d,e)\nLAW O-map HOLDS\n");
}

TEST_CASE("axioms lists partial-order laws") {
  const Run r = cli({"axioms", "@eqvo2h-y"});
  CHECK(r.code == 1);
  CHECK(r.has("transitive: FAILS"));
  CHECK(r.has("(1/3,2/3,1)"));
}

TEST_CASE("substructure queries") {
  CHECK(cli({"substructure", "@eqe161-x", "--set", "e,x", "--kind", "filter"}).code == 0);
  CHECK(cli({"substructure", "@eqe161-x", "--set", "x,y", "--kind", "filter"}).code == 1);
  CHECK(cli({"substructure", "@eqe161-x", "--set", "e,q", "--kind", "filter"}).code == 2);
  CHECK(cli({"substructure", "@eqe161-x", "--set", "e", "--kind", "ideal"}).code == 2);
  const Run list = cli({"--format=machine", "enumerate-substructures", "@eqe161-x", "--kind",
                         "ordered-filter"});
  CHECK(list.out == "SET {e}\nSET {e, x}\nSET {e, y}\nSET {e, x, y}\n");
}

TEST_CASE("classify and kernel") {
  const Run k = cli({"kernel", fx("eqvo2h.map"), fx("eqvo2h-x.alg"), fx("eqvo2h-y.alg")});
  CHECK(k.code == 0);
  CHECK(k.has("ker = {1, e}"));

  const Run alt = cli({"kernel", "@eqe161", "--alt"});
  CHECK(alt.code == 0);
  CHECK(alt.has("ker = {e, x}"));
  CHECK(alt.has("FINDING"));

  const Run c = cli({"classify", "@eqvo2h"});
  CHECK(c.has("O-map, not a homomorphism"));
  CHECK(c.has("f(d -> e) = 1/3 but f(d) -> f(e) = 2/3"));
}

TEST_CASE("product and pair-map") {
  const auto out = std::filesystem::temp_directory_path() / "obci_cli_product.alg";
  const Run p = cli({"product", "@eqe161-x", "@eqe161-y", "-o", out.string()});
  CHECK(p.code == 0);
  CHECK(p.has("6 elements, 6/6 axioms hold"));
  CHECK(obci::parse_algebra(obci::read_file(out.string())).size() == 6);
  std::filesystem::remove(out);

  CHECK(cli({"pair-map", "@eqe161-id", "@eqe161"}).code == 0);
  const Run bad = cli({"pair-map", "@eqvo2h", "@eqe161"});
  CHECK(bad.code == 1);
  CHECK(bad.has("homomorphism: FAILS"));
}

TEST_CASE("enumerate") {
  CHECK(cli({"--format=machine", "enumerate", "3", "--count-only"}).out == "COUNT 3 10\n");
  CHECK(cli({"--format=machine", "enumerate", "3", "--iso", "--count-only"}).out ==
        "COUNT 3 6\n");
  CHECK(cli({"enumerate", "0"}).code == 2);
}

TEST_CASE("verify and search") {
  const Run v = cli({"verify", "T-kernel-filter"});
  CHECK(v.code == 0);
  CHECK(v.has("CLAIM T-kernel-filter VERIFIED checked=299 skipped=2804 counterexamples=0"));
  const Run b = cli({"verify", "T-filter-bijection", "--fixtures"});
  CHECK(b.code == 0);
  CHECK(b.has("checked=6"));
  CHECK(cli({"verify", "T-nonsense"}).code == 2);

  CHECK(cli({"search", "omap-not-hom"}).code == 0);
  CHECK(cli({"search", "hom-not-omap", "--size", "3"}).code == 1);
  CHECK(cli({"search", "whatever"}).code == 2);
}

TEST_CASE("fixtures subcommand") {
  CHECK(cli({"fixtures", "list"}).has("map knof-self : knof -> knof"));
  CHECK(cli({"fixtures", "dump", "trivial"}).out ==
        "algebra trivial\nelements e\nunit e\nop\ne\norder\ne<=e\n");
  CHECK(cli({"fixtures", "dump", "nope"}).code == 2);
  CHECK(cli({"fixtures", "audit"}).has("13 findings"));
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"validate", "/nonexistent.alg"}).code == 2);
  CHECK(cli({"--format=xml", "validate", "@trivial"}).code == 2);
}

TEST_CASE("machine output is stable") {
  const std::vector<std::string> cmd = {"--format=machine", "verify", "all", "--size", "2",
                                        "--jobs", "4"};
  CHECK(cli(cmd).out == cli(cmd).out);
}
