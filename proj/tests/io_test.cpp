// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>

#include "doctest.h"
#include "support.hpp"
#include "treeamb/error.hpp"
#include "treeamb/io.hpp"

using namespace treeamb;
using namespace treeamb::test;

namespace {

const std::filesystem::path kData = TREEAMB_DATA_DIR;

std::string fixture(const std::string& name) { return read_file(kData / name); }

std::string chomp(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

// Expects a ParseError on the given line.
template <class Parse>
void check_parse_error(Parse parse, std::string_view text, int line) {
  try {
    parse(text);
    FAIL("expected ParseError for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

}  // namespace

TEST_CASE("fixtures round-trip byte for byte") {
  for (const char* name : {"tc.mtree", "ta1.mtree", "spine.mtree"}) {
    CAPTURE(name);
    const std::string text = fixture(name);
    CHECK(chomp(write_mtree(parse_mtree(text, name))) == chomp(text));
  }
  for (const char* name : {"negunion2.pta", "free2.pta", "not_tc.pta", "frak_tc.pta"}) {
    CAPTURE(name);
    const std::string text = fixture(name);
    CHECK(chomp(write_pta(parse_pta(text, name))) == chomp(text));
  }
  CHECK(chomp(write_chain(parse_chain(fixture("spine.chain")))) == chomp(fixture("spine.chain")));
  CHECK(chomp(write_moore(parse_moore(fixture("swap.moore")))) == chomp(fixture("swap.moore")));
  CHECK(chomp(write_ftree(parse_ftree(fixture("cherry.ftree")))) == chomp(fixture("cherry.ftree")));
  CHECK(chomp(write_game(parse_game(fixture("negunion2_tc.game")))) ==
        chomp(fixture("negunion2_tc.game")));
  for (const char* rep : {"single_tc", "root_or_cherry", "right_combs"}) {
    const std::string text = read_file(kData / "reps" / rep / "rep.fta");
    CHECK(chomp(write_fta(parse_fta(text))) == chomp(text));
  }
}

TEST_CASE("runs and strategies round-trip against their automaton") {
  const ParityTreeAutomaton not_tc = parse_pta(fixture("not_tc.pta"));
  const RegularTree spine = parse_mtree(fixture("spine.mtree"));
  const std::string run_text = fixture("not_tc_spine.run");
  const RunFile rf = parse_run(run_text);
  CHECK(rf.automaton_name == "not_t_c");
  CHECK(rf.tree_name == spine.name());
  const RegularRun run(rf.machine, not_tc, spine);
  CHECK(run_is_accepting(run));
  CHECK(chomp(write_run(run)) == chomp(run_text));

  const std::string straj_text = fixture("not_tc_tc.straj");
  CHECK(chomp(write_straj(parse_straj(straj_text, not_tc), not_tc)) == chomp(straj_text));
}

TEST_CASE("detect_format") {
  CHECK(detect_format(fixture("tc.mtree")) == "mtree");
  CHECK(detect_format(fixture("negunion2.pta")) == "pta");
  CHECK(detect_format(fixture("spine.chain")) == "chain");
  CHECK(detect_format(fixture("negunion2_tc.game")) == "game");
  CHECK(detect_format(fixture("swap.moore")) == "moore");
  CHECK(detect_format(fixture("cherry.ftree")) == "node");
  CHECK(detect_format(fixture("not_tc_tc.straj")) == "straj");
  CHECK(detect_format("# only a comment\nfta x\n") == "fta");
}

TEST_CASE("parse errors carry line numbers") {
  auto pta = [](std::string_view t) { return parse_pta(t, "x.pta"); };
  check_parse_error(pta, fixture("broken.pta"), 5);
  check_parse_error(pta, "pta a\nalphabet c\nstate q color=odd\n", 3);
  check_parse_error(pta, "pta a\nalphabet c\nstate q color=0\ninit q\ntrans q zz q q\n", 5);
  check_parse_error(pta, "pta a\nalphabet c\nstate q color=0\nstate q color=1\n", 4);
  check_parse_error(pta, "pta a\nalphabet c\nfoo bar\n", 3);

  auto mtree = [](std::string_view t) { return parse_mtree(t); };
  // A missing edge is reported at the state's declaration.
  check_parse_error(mtree, "mtree t\nalphabet c\nstate s out=c\ninit s\nedge s l s\n", 3);
  check_parse_error(mtree, "mtree t\nalphabet c\nstate s out=d\ninit s\nedge s l s\nedge s r s\n", 3);
  check_parse_error(mtree, "mtree t\nalphabet c\nstate s out=c\ninit s\nedge s x s\nedge s r s\n", 5);

  // Comments count as lines.
  check_parse_error(mtree, "# c\nmtree t\nalphabet c\nstate s out=d\ninit s\nedge s l s\nedge s r s\n",
                    4);

  try {
    parse_pta(fixture("broken.pta"), "broken.pta");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.pta:5") != std::string::npos);
    CHECK(std::string(e.what()).find("q9") != std::string::npos);
  }
}

TEST_CASE("written objects parse back to equal objects") {
  std::mt19937 rng(31);
  for (int i = 0; i < 10; ++i) {
    const RegularTree t = random_tree(sigma_c_a1(), rng, 4);
    CHECK(tree_equal(parse_mtree(write_mtree(t)), t));
    const ParityTreeAutomaton a = random_pta(sigma_c_a1(), rng, 3, 3);
    const ParityTreeAutomaton b = parse_pta(write_pta(a));
    CHECK(write_pta(b) == write_pta(a));
    CHECK(member(b, t) == member(a, t));
  }
}

TEST_CASE("representations load and save") {
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "treeamb_io_test_rep";
  std::filesystem::remove_all(tmp);
  const NiwinskiRepresentation rep = load_representation(kData / "reps" / "right_combs");
  CHECK(rep.trees.size() == 2);
  save_representation(rep, tmp);
  const NiwinskiRepresentation back = load_representation(tmp);
  CHECK(back.name == rep.name);
  CHECK(write_fta(back.fta) == write_fta(rep.fta));
  REQUIRE(back.trees.size() == rep.trees.size());
  for (std::size_t i = 0; i < rep.trees.size(); ++i) CHECK(tree_equal(back.trees[i], rep.trees[i]));
  std::filesystem::remove_all(tmp);

  CHECK_THROWS_AS(load_representation(kData / "no_such_rep"), Error);
  CHECK_THROWS_AS(read_file(kData / "no_such_file"), Error);
}
