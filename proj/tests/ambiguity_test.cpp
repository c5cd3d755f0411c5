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

using Kind = AmbiguityVerdict::Kind;

std::vector<RegularTree> samples() {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularTree ta1 = constant(s, "a1");
  return {tc, ta1, make_node("c", ta1, tc), graft_node(tc, ta1, NodePath("rl")),
          alternating(s, "c", "a1")};
}

// t_c with a1 at a random set of nodes of depth <= 2.
RegularTree random_marks(std::mt19937& rng) {
  std::vector<std::pair<NodePath, std::string>> marks;
  std::uniform_int_distribution<int> coin(0, 3);
  for (const NodePath& v : nodes_up_to(2)) {
    if (coin(rng) == 0) marks.emplace_back(v, "a1");
  }
  return tree_with_labels(sigma_c_a1(), "c", marks, "marks");
}

}  // namespace

TEST_CASE("emptiness") {
  const Alphabet& s = sigma_c_a1();
  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  const auto w = emptiness(det);
  REQUIRE(w.has_value());
  CHECK(member(det, *w));

  CHECK_FALSE(emptiness(universal(s, 1)).has_value());

  const ParityTreeAutomaton lfa = zoo_lfa();
  const auto wl = emptiness(lfa);
  REQUIRE(wl.has_value());
  CHECK(member(lfa, *wl));

  CHECK_FALSE(emptiness(ParityTreeAutomaton::empty_marker("e", s)).has_value());
}

TEST_CASE("nonempty_states") {
  const Alphabet c({"c"});
  const ParityTreeAutomaton a("a", c, {"good", "bad"}, {0, 1}, {0},
                              {{0, 0, 0, 0}, {1, 0, 1, 1}});
  const std::vector<bool> ne = nonempty_states(a);
  CHECK(ne[0]);
  CHECK_FALSE(ne[1]);
}

TEST_CASE("k_distinct_runs_automaton") {
  const ParityTreeAutomaton ex = zoo_exists_a1();
  const ParityTreeAutomaton one = k_distinct_runs_automaton(ex, 1);
  for (const RegularTree& t : samples()) CHECK(member(one, t) == member(ex, t));

  const ParityTreeAutomaton u = zoo_neg_union(2);
  const RegularTree tc = constant(sigma_c_a1_a2(), "c");
  CHECK(member(k_distinct_runs_automaton(u, 2), tc));
  CHECK_FALSE(member(k_distinct_runs_automaton(u, 3), tc));
  CHECK_THROWS_AS(k_distinct_runs_automaton(u, 0), Error);
}

TEST_CASE("at_least_k") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  CHECK(at_least_k(det, tc, 1));
  CHECK_FALSE(at_least_k(det, tc, 2));
  CHECK(at_least_k(zoo_neg_union(2), constant(sigma_c_a1_a2(), "c"), 2));
  CHECK(at_least_k(zoo_free2(), RegularTree::constant(Alphabet({"c"}), "c"), 4));
  CHECK(at_least_k_product(zoo_free2(), RegularTree::constant(Alphabet({"c"}), "c"), 4));
}

TEST_CASE("is_k_ambiguous") {
  CHECK(is_k_ambiguous(det_avoiding(sigma_c_a1(), "a1"), 1));
  const ParityTreeAutomaton u = zoo_neg_union(2);
  CHECK_FALSE(is_k_ambiguous(u, 1));
  CHECK(is_k_ambiguous(u, 2));
  CHECK_FALSE(is_k_ambiguous(zoo_free2(), 3));
}

TEST_CASE("count_runs") {
  const RegularTree tc = constant(sigma_c_a1_a2(), "c");
  for (int k = 1; k <= 4; ++k) {
    const RunCount n = count_runs(zoo_neg_union(k), constant(Alphabet([&] {
                                    std::vector<std::string> s{"c"};
                                    for (int i = 1; i <= k; ++i) s.push_back("a" + std::to_string(i));
                                    return s;
                                  }()), "c"), 100);
    CHECK_FALSE(n.infinite);
    CHECK(n.count == static_cast<std::uint64_t>(k));
  }
  const RunCount free = count_runs(zoo_free2(), RegularTree::constant(Alphabet({"c"}), "c"), 100);
  CHECK(free.infinite);
}

TEST_CASE("regeneration witnesses") {
  const Alphabet c({"c"});
  const RegularTree tc1 = RegularTree::constant(c, "c");
  const ParityTreeAutomaton free2 = zoo_free2();
  const auto w = find_regeneration_witness(free2, tc1, WitnessMode::Uncountable);
  REQUIRE(w.has_value());
  CHECK(free2.state_name(w->state) == "q1");
  CHECK(w->tree_state == tc1.init());
  REQUIRE(w->residuals.size() == 2);
  CHECK(runs_differ(w->residuals[0], w->residuals[1]));
  CHECK(check_witness(free2, tc1, *w).empty());

  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularTree spine = graft_antichain(tc, constant(s, "a1"), left_spine_right_children());
  const ParityTreeAutomaton not_tc = zoo_complement_singleton(tc, s);
  const auto wi = find_regeneration_witness(not_tc, spine, WitnessMode::Infinite);
  REQUIRE(wi.has_value());
  CHECK(check_witness(not_tc, spine, *wi).empty());
  CHECK(not_tc.state_name(wi->state).rfind("q'", 0) == 0);
  CHECK_FALSE(find_regeneration_witness(not_tc, spine, WitnessMode::Uncountable).has_value());

  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  CHECK_FALSE(find_regeneration_witness(det, tc, WitnessMode::Infinite).has_value());
  CHECK_FALSE(find_regeneration_witness(det, tc, WitnessMode::Uncountable).has_value());

  try {
    find_regeneration_witness(det, constant(s, "a1"), WitnessMode::Infinite);
    FAIL("expected NotMember");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMember);
  }
}

TEST_CASE("tampered witnesses are rejected") {
  const Alphabet c({"c"});
  const RegularTree tc1 = RegularTree::constant(c, "c");
  const ParityTreeAutomaton free2 = zoo_free2();
  RegenerationWitness w = *find_regeneration_witness(free2, tc1, WitnessMode::Uncountable);
  RegenerationWitness same = w;
  same.residuals[1] = same.residuals[0];
  CHECK_FALSE(check_witness(free2, tc1, same).empty());
  RegenerationWitness odd = w;
  odd.spine_max_color = 1;
  CHECK_FALSE(check_witness(free2, tc1, odd).empty());
  RegenerationWitness empty_spine = w;
  empty_spine.spine.clear();
  CHECK_FALSE(check_witness(free2, tc1, empty_spine).empty());
}

TEST_CASE("classify examples") {
  CHECK(classify(zoo_neg_union(3), constant(Alphabet({"c", "a1", "a2", "a3"}), "c"), 5).str() ==
        "exact 3");
  const AmbiguityVerdict free = classify(zoo_free2(), RegularTree::constant(Alphabet({"c"}), "c"), 3);
  CHECK(free.kind == Kind::Uncountable);
  CHECK(free.witness.has_value());

  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const std::vector<std::pair<NodePath, std::string>> marks{{NodePath("l"), "a1"},
                                                            {NodePath("r"), "a1"}};
  CHECK(classify(zoo_complement_singleton(tc, s), tree_with_labels(s, "c", marks), 5).str() ==
        "exact 2");
  CHECK(classify(det_avoiding(s, "a1"), constant(s, "a1"), 5).str() == "exact 0");
}

TEST_CASE("classify reports at_least beyond the bound") {
  // Five minimal differences, counted only up to 3.
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  std::vector<std::pair<NodePath, std::string>> marks;
  for (const char* v : {"ll", "lr", "rl", "rrl", "rrr"}) marks.emplace_back(NodePath(v), "a1");
  const RegularTree five = tree_with_labels(s, "c", marks);
  const AmbiguityVerdict v = classify(zoo_complement_singleton(tc, s), five, 3);
  CHECK(v.kind == Kind::AtLeast);
  CHECK(v.n == 4);
  CHECK(classify(zoo_complement_singleton(tc, s), five, 8).str() == "exact 5");
}

TEST_CASE("complement run counts match minimal difference nodes") {
  std::mt19937 rng(5);
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const ParityTreeAutomaton not_tc = zoo_complement_singleton(tc, s);
  const ParityTreeAutomaton ex = zoo_exists_a1();
  for (int i = 0; i < 12; ++i) {
    const RegularTree t = random_marks(rng);
    const int expected = minimal_differences(tc, t, 3);
    const AmbiguityVerdict v = classify(not_tc, t, 8);
    CHECK(v.kind == Kind::Exact);
    CHECK(v.n == static_cast<std::uint64_t>(expected));
    // exists_a1 stops its search at the first a1 on the guessed path.
    CHECK(classify(ex, t, 8).n == static_cast<std::uint64_t>(expected));
  }
}

TEST_CASE("classify coherence and monotonicity") {
  std::mt19937 rng(3);
  const Alphabet& s = sigma_c_a1();
  for (int i = 0; i < 8; ++i) {
    const ParityTreeAutomaton a = random_pta(s, rng, 3, 2);
    const RegularTree t = random_tree(s, rng, 2);
    const AmbiguityVerdict v = classify(a, t, 4);
    bool previous = true;
    for (int k = 1; k <= 4; ++k) {
      const bool now = at_least_k(a, t, k);
      if (!previous) CHECK_FALSE(now);
      previous = now;
    }
    if (v.kind == Kind::Exact) {
      if (v.n > 0) CHECK(at_least_k(a, t, static_cast<int>(v.n)));
      CHECK_FALSE(at_least_k(a, t, static_cast<int>(v.n) + 1));
    } else if (v.kind == Kind::AtLeast) {
      CHECK(at_least_k(a, t, 5));
    } else {
      REQUIRE(v.witness.has_value());
      CHECK(check_witness(a, t, *v.witness).empty());
      CHECK(at_least_k(a, t, 5));
    }
  }
}

TEST_CASE("deterministic automata have at most one run") {
  std::mt19937 rng(4);
  const Alphabet& s = sigma_c_a1();
  for (int i = 0; i < 10; ++i) {
    const RegularTree shape = random_tree(s, rng, 3);
    const ParityTreeAutomaton d = det_pta_for_tree(shape);
    const RegularTree t = i % 2 ? shape : random_tree(s, rng, 3);
    const AmbiguityVerdict v = classify(d, t, 3);
    CHECK(v.kind == Kind::Exact);
    CHECK(v.n == (tree_equal(shape, t) ? 1u : 0u));
  }
}
