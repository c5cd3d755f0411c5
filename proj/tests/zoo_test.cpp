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

#include "doctest.h"
#include "support.hpp"
#include "treeamb/ambiguity.hpp"
#include "treeamb/error.hpp"
#include "treeamb/zoo.hpp"

using namespace treeamb;
using namespace treeamb::test;

namespace {

const Alphabet& bits() {
  static const Alphabet s({"0", "1"});
  return s;
}
const Alphabet& pairs() {
  static const Alphabet s({"00", "01", "10", "11"});
  return s;
}

Alphabet neg_union_alphabet(int k) {
  std::vector<std::string> s{"c"};
  for (int i = 1; i <= k; ++i) s.push_back("a" + std::to_string(i));
  return Alphabet(s);
}

// The tree over {0,1} labeled 1 exactly on the listed nodes.
RegularTree set_tree(const std::vector<std::string>& nodes) {
  std::vector<std::pair<NodePath, std::string>> marks;
  for (const std::string& v : nodes) marks.emplace_back(NodePath(v), "1");
  return tree_with_labels(bits(), "0", marks);
}

// The tree over {0,1} labeled 1 exactly on the left spine l^*.
RegularTree left_spine_set() {
  return RegularTree("spine", bits(), {"on", "off"}, {1, 0}, {{{0, 1}}, {{1, 1}}}, 0);
}

// reach[p][q]: machine state q is reachable from p in zero or more steps.
std::vector<std::vector<bool>> reachability(const RegularTree& t) {
  const int n = t.num_states();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int p = 0; p < n; ++p) {
    std::vector<int> todo{p};
    reach[p][p] = true;
    while (!todo.empty()) {
      const int q = todo.back();
      todo.pop_back();
      for (Dir d : kDirs) {
        const int w = t.next(q, d);
        if (!reach[p][w]) {
          reach[p][w] = true;
          todo.push_back(w);
        }
      }
    }
  }
  return reach;
}

// Set properties decided on the machine states of t. in_x and in_y read a
// state's label.
template <class InX, class InY>
bool x_below_y(const RegularTree& t, InX in_x, InY in_y) {
  const auto reach = reachability(t);
  for (int p = 0; p < t.num_states(); ++p) {
    if (!reach[t.init()][p] || !in_x(p)) continue;
    bool found = false;
    for (int q = 0; q < t.num_states(); ++q) found = found || (reach[p][q] && in_y(q));
    if (!found) return false;
  }
  return true;
}

// A 1 at or below machine state p.
bool has_one(const RegularTree& t, const std::vector<std::vector<bool>>& reach, int p) {
  for (int q = 0; q < t.num_states(); ++q) {
    if (reach[p][q] && t.alphabet().name(t.out(q)) == "1") return true;
  }
  return false;
}

bool oracle_no_max(const RegularTree& t) {
  const auto reach = reachability(t);
  for (int p = 0; p < t.num_states(); ++p) {
    if (!reach[t.init()][p] || t.alphabet().name(t.out(p)) != "1") continue;
    if (!has_one(t, reach, t.next(p, Dir::L)) && !has_one(t, reach, t.next(p, Dir::R))) {
      return false;
    }
  }
  return true;
}

bool oracle_perf(const RegularTree& t) {
  const auto reach = reachability(t);
  auto one = [&](int q) { return t.alphabet().name(t.out(q)) == "1"; };
  // Two incomparable 1s below p exist iff some w at or below p has a 1 under
  // each child.
  auto forks = [&](int w) {
    return has_one(t, reach, t.next(w, Dir::L)) && has_one(t, reach, t.next(w, Dir::R));
  };
  return has_one(t, reach, t.init()) && x_below_y(t, one, forks);
}

bool oracle_x_subset_ydown(const RegularTree& t) {
  auto bit = [&](int q, std::size_t i) { return t.alphabet().name(t.out(q))[i] == '1'; };
  return x_below_y(t, [&](int q) { return bit(q, 0); }, [&](int q) { return bit(q, 1); });
}

}  // namespace

TEST_CASE("neg_union") {
  const RegularTree tc1 = constant(neg_union_alphabet(1), "c");
  CHECK(classify(zoo_neg_union(1), tc1, 3).str() == "exact 1");

  const Alphabet s2 = neg_union_alphabet(2);
  const ParityTreeAutomaton u2 = zoo_neg_union(2);
  CHECK_FALSE(member(u2, make_node("c", constant(s2, "a1"), constant(s2, "a2"))));
  CHECK(member(u2, make_node("c", constant(s2, "a1"), constant(s2, "c"))));

  CHECK(classify(zoo_neg_union(3), constant(neg_union_alphabet(3), "c"), 5).str() == "exact 3");
  CHECK_THROWS_AS(zoo_neg_union(0), Error);
  CHECK_THROWS_AS(zoo_neg_union(5), Error);
}

TEST_CASE("neg_union(k) is k- but not (k-1)-ambiguous") {
  for (int k = 2; k <= 3; ++k) {
    CHECK(is_k_ambiguous(zoo_neg_union(k), k));
    CHECK_FALSE(is_k_ambiguous(zoo_neg_union(k), k - 1));
  }
}

TEST_CASE("exists_a1") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularTree one = graft_node(tc, constant(s, "a1"), NodePath("rl"));
  CHECK_FALSE(member(zoo_exists_a1(), tc));
  CHECK(member(zoo_exists_a1(), one));
  CHECK(classify(zoo_exists_a1(), one, 5).str() == "exact 1");
}

TEST_CASE("complement_singleton") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree alt = alternating(s, "c", "a1");
  const ParityTreeAutomaton a = zoo_complement_singleton(alt, s);
  CHECK_FALSE(member(a, alt));
  const RegularTree tc = constant(s, "c");
  for (const RegularTree& t : {tc, constant(s, "a1"), alternating(s, "a1", "c")}) {
    CHECK(member(a, t));
  }
  // Runs correspond to minimal difference nodes.
  const RegularTree changed = graft_node(graft_node(alt, tc, NodePath("ll")), tc, NodePath("r"));
  CHECK(classify(a, changed, 8).n == static_cast<std::uint64_t>(minimal_differences(alt, changed, 4)));
}

TEST_CASE("lfa") {
  const ParityTreeAutomaton a = zoo_lfa();
  const Alphabet s({"a1", "a2", "c"});
  const RegularTree tc = constant(s, "c");
  const RegularTree w = lfa_tree(1, 2, tc);
  CHECK(member(a, w));
  CHECK_FALSE(member(a, tc));
  CHECK(classify(a, w, 8).str() == "exact 4");
  // Not k-ambiguous for k = 1..5.
  for (int k = 1; k <= 5; ++k) CHECK(at_least_k(a, lfa_tree(k + 1), k + 1));
}

TEST_CASE("frak scheme") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const ParityTreeAutomaton a =
      zoo_frak_scheme(det_pta_for_tree(tc), zoo_complement_singleton(tc, s));
  const RegularTree spine = graft_antichain(tc, constant(s, "a1"), left_spine_right_children());
  CHECK(member(a, spine));
  CHECK_FALSE(member(a, tc));
  const AmbiguityVerdict v = classify(a, spine, 4);
  CHECK(v.kind == AmbiguityVerdict::Kind::Uncountable);
  REQUIRE(v.witness.has_value());
  CHECK(check_witness(a, spine, *v.witness).empty());

  CHECK_THROWS_AS(zoo_frak_scheme(det_pta_for_tree(tc), zoo_neg_union(2)), Error);
}

TEST_CASE("no_max, perf and x_subset_ydown on hand samples") {
  const ParityTreeAutomaton no_max = zoo_no_max();
  CHECK(member(no_max, set_tree({})));
  CHECK_FALSE(member(no_max, set_tree({""})));
  CHECK_FALSE(member(no_max, set_tree({"l", "lr", "r"})));
  CHECK(member(no_max, alternating(bits(), "1", "0")));
  CHECK(member(no_max, left_spine_set()));

  const ParityTreeAutomaton perf = zoo_perf();
  CHECK(member(perf, RegularTree::constant(bits(), "1")));
  CHECK(member(perf, alternating(bits(), "0", "1")));
  CHECK_FALSE(member(perf, set_tree({"", "l"})));
  CHECK_FALSE(member(perf, left_spine_set()));

  const ParityTreeAutomaton xy = zoo_x_subset_ydown();
  auto xy_tree = [](std::vector<std::pair<NodePath, std::string>> marks) {
    return tree_with_labels(pairs(), "00", marks);
  };
  CHECK(member(xy, xy_tree({{NodePath(), "10"}, {NodePath("r"), "01"}})));
  CHECK_FALSE(member(xy, xy_tree({{NodePath(), "10"}})));
  CHECK(member(xy, xy_tree({{NodePath("l"), "11"}})));
  CHECK_FALSE(member(xy, xy_tree({{NodePath("l"), "01"}, {NodePath("r"), "10"}})));
}

TEST_CASE("free2") {
  const RegularTree tc = RegularTree::constant(Alphabet({"c"}), "c");
  CHECK(member(zoo_free2(), tc));
  CHECK(at_least_k(zoo_free2(), tc, 4));
  CHECK(classify(zoo_free2(), tc, 3).kind == AmbiguityVerdict::Kind::Uncountable);
}

TEST_CASE("zoo automata survive trimming") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const std::vector<std::pair<ParityTreeAutomaton, std::vector<RegularTree>>> cases{
      {zoo_exists_a1(), {tc, graft_node(tc, constant(s, "a1"), NodePath("l"))}},
      {zoo_complement_singleton(tc, s), {tc, alternating(s, "c", "a1")}},
      {zoo_no_max(), {set_tree({}), set_tree({"l"}), alternating(bits(), "1", "0")}},
      {zoo_perf(), {RegularTree::constant(bits(), "1"), set_tree({"r"})}},
      {zoo_free2(), {RegularTree::constant(Alphabet({"c"}), "c")}},
      {zoo_lfa(), {lfa_tree(2), constant(Alphabet({"a1", "a2", "c"}), "c")}},
  };
  for (const auto& [a, trees] : cases) {
    const ParityTreeAutomaton trimmed = trim_useful(a);
    for (const RegularTree& t : trees) CHECK(member(trimmed, t) == member(a, t));
  }
}

TEST_CASE("representations yield unambiguous automata") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularTree ta1 = constant(s, "a1");
  for (const NiwinskiRepresentation& rep : shipped_representations()) {
    const ParityTreeAutomaton a = niwinski_unambiguous(rep);
    CHECK(is_k_ambiguous(a, 1));
  }

  const auto reps = shipped_representations();
  const ParityTreeAutomaton single = niwinski_unambiguous(reps[0]);
  CHECK(classify(single, RegularTree::constant(single.alphabet(), "c"), 2).str() == "exact 1");

  const ParityTreeAutomaton cherry = niwinski_unambiguous(reps[1]).with_alphabet(s);
  CHECK(member(cherry, ta1));
  CHECK(member(cherry, make_node("c", ta1, ta1)));
  CHECK_FALSE(member(cherry, tc));
  CHECK(substitution_member(reps[1], make_node("c", ta1, ta1)));
  CHECK_FALSE(substitution_member(reps[1], make_node("c", ta1, tc)));

  // Two initial states both reading x1.
  const NiwinskiRepresentation ambiguous{
      "twice",
      FiniteTreeAutomaton("twice", Alphabet({"x1"}), Alphabet({"c"}), {"p", "q"}, {0, 1},
                          {{0, 0}, {1, 0}}, {}),
      {tc}};
  try {
    niwinski_unambiguous(ambiguous);
    FAIL("expected AmbiguousRepresentation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousRepresentation);
  }
}

TEST_CASE("set languages agree with a machine-state oracle") {
  std::mt19937 rng(21);
  int no_max_members = 0;
  int perf_members = 0;
  int xy_members = 0;
  for (int i = 0; i < 60; ++i) {
    const RegularTree t = random_tree(bits(), rng, 3);
    const bool no_max = oracle_no_max(t);
    const bool perf = oracle_perf(t);
    CHECK(member(zoo_no_max(), t) == no_max);
    CHECK(member(zoo_perf(), t) == perf);
    no_max_members += no_max;
    perf_members += perf;
    const RegularTree u = random_tree(pairs(), rng, 4);
    const bool xy = oracle_x_subset_ydown(u);
    CHECK(member(zoo_x_subset_ydown(), u) == xy);
    xy_members += xy;
  }
  // Finite sets: a maximal element exists unless X is empty, and none is perfect.
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> x;
    for (const NodePath& v : nodes_up_to(2)) {
      if (coin(rng) == 0) x.push_back(v.str());
    }
    const RegularTree t = set_tree(x);
    CHECK(oracle_no_max(t) == x.empty());
    CHECK(member(zoo_no_max(), t) == x.empty());
    CHECK_FALSE(member(zoo_perf(), t));
  }
  MESSAGE("members: no_max " << no_max_members << ", perf " << perf_members << ", x_subset_ydown "
                             << xy_members);
  CHECK(no_max_members > 0);
  CHECK(no_max_members < 60);
  CHECK(perf_members > 0);
  CHECK(perf_members < 60);
  CHECK(xy_members > 0);
  CHECK(xy_members < 60);
}
