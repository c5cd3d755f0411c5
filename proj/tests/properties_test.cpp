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

// Randomized checks of algebraic laws across modules. Every generator is
// seeded, so failures reproduce.

#include "doctest.h"
#include "support.hpp"
#include "treeamb/ambiguity.hpp"

using namespace treeamb;
using namespace treeamb::test;

namespace {

using Kind = AmbiguityVerdict::Kind;

MooreMachine random_moore(const Alphabet& in, const Alphabet& out, std::mt19937& rng,
                          int max_states) {
  const int n = std::uniform_int_distribution<int>(1, max_states)(rng);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> letter(0, out.size() - 1);
  std::vector<std::string> names;
  std::vector<int> outs;
  std::vector<std::vector<int>> delta;
  for (int i = 0; i < n; ++i) {
    names.push_back("m" + std::to_string(i));
    outs.push_back(letter(rng));
    std::vector<int> row;
    for (int a = 0; a < in.size(); ++a) row.push_back(state(rng));
    delta.push_back(row);
  }
  return MooreMachine("rmoore", in, out, names, outs, delta, 0);
}

// Label of relabel(m, t) at v, read off the input labels on the path to v.
std::string moore_label(const MooreMachine& m, const RegularTree& t, const NodePath& v) {
  int q = m.init();
  int tree_state = t.init();
  q = m.delta(q, m.input().index(t.alphabet().name(t.out(tree_state))));
  for (Dir d : v.dirs()) {
    tree_state = t.next(tree_state, d);
    q = m.delta(q, m.input().index(t.alphabet().name(t.out(tree_state))));
  }
  return m.output().name(m.out(q));
}

// An automaton with a finite, exactly counted number of runs on t, or none.
std::optional<std::uint64_t> exact_count(const ParityTreeAutomaton& a, const RegularTree& t) {
  const AmbiguityVerdict v = classify(a, t, 8);
  if (v.kind != Kind::Exact) return std::nullopt;
  return v.n;
}

}  // namespace

TEST_CASE("tree_equal is an equivalence") {
  std::mt19937 rng(41);
  std::vector<RegularTree> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(random_tree(sigma_c_a1(), rng, 3));
  // Equal trees under other machines.
  pool.push_back(make_node("c", pool[0], pool[0]));
  pool.push_back(graft_node(pool[1], subtree_at(pool[1], NodePath("l")), NodePath("l")));
  for (const RegularTree& x : pool) {
    CHECK(tree_equal(x, x));
    for (const RegularTree& y : pool) {
      const bool xy = tree_equal(x, y);
      CHECK(xy == tree_equal(y, x));
      CHECK(xy == (unfold(x, 5) == unfold(y, 5)));
      for (const RegularTree& z : pool) {
        if (xy && tree_equal(y, z)) CHECK(tree_equal(x, z));
      }
    }
  }
  CHECK(tree_equal(pool[1], pool.back()));
}

TEST_CASE("grafting laws") {
  std::mt19937 rng(42);
  for (int i = 0; i < 20; ++i) {
    const RegularTree t1 = random_tree(sigma_c_a1(), rng, 3);
    const RegularTree t2 = random_tree(sigma_c_a1(), rng, 3);
    const NodePath v = random_path(rng, 4);
    CAPTURE(v.str());
    const RegularTree g = graft_node(t1, t2, v);
    CHECK(tree_equal(subtree_at(g, v), t2));
    // Off the grafted subtree the host is unchanged.
    const auto before = unfold(t1, 4);
    const auto after = unfold(g, 4);
    for (const auto& [u, label] : before) {
      if (!v.is_prefix_of(u)) CHECK(after.at(u) == label);
    }
    CHECK(tree_equal(graft_antichain(t1, t2, RegularAntichain::empty_set()), t1));
    CHECK(tree_equal(graft_antichain(t1, t2, RegularAntichain::singleton(v)), g));
  }
}

TEST_CASE("relabeling laws") {
  std::mt19937 rng(43);
  for (int i = 0; i < 15; ++i) {
    const RegularTree t = random_tree(sigma_c_a1(), rng, 4);
    CHECK(tree_equal(relabel(MooreMachine::last_letter(sigma_c_a1()), t), t));
    const MooreMachine m = random_moore(sigma_c_a1(), sigma_c_a1_a2(), rng, 3);
    const RegularTree r = relabel(m, t);
    for (const auto& [v, label] : unfold(r, 4)) CHECK(label == moore_label(m, t, v));
  }
}

TEST_CASE("unfolding agrees with subtree roots") {
  std::mt19937 rng(44);
  for (int i = 0; i < 10; ++i) {
    const RegularTree t = random_tree(sigma_c_a1_a2(), rng, 5);
    for (const auto& [v, label] : unfold(t, 5)) {
      const RegularTree sub = subtree_at(t, v);
      CHECK(sub.alphabet().name(sub.out(sub.init())) == label);
    }
  }
}

TEST_CASE("union adds and intersection multiplies run counts") {
  std::mt19937 rng(45);
  const Alphabet& s = sigma_c_a1();
  int triples = 0;
  for (int attempt = 0; attempt < 400 && triples < 5; ++attempt) {
    const ParityTreeAutomaton a1 = random_pta(s, rng, 2, 2, "a1");
    const ParityTreeAutomaton a2 = random_pta(s, rng, 2, 2, "a2");
    const RegularTree t = random_tree(s, rng, 2);
    const auto n1 = exact_count(a1, t);
    const auto n2 = exact_count(a2, t);
    if (!n1 || !n2 || *n1 + *n2 == 0 || *n1 + *n2 > 8) continue;
    ++triples;
    CAPTURE(*n1);
    CAPTURE(*n2);
    CHECK(exact_count(union_of(a1, a2), t) == *n1 + *n2);
    const auto n = exact_count(intersect(a1, a2), t);
    REQUIRE(n.has_value());
    CHECK(*n <= *n1 * *n2);
    CHECK((*n > 0) == (*n1 > 0 && *n2 > 0));
  }
  CHECK(triples == 5);
}

TEST_CASE("moore_reduction and trimming preserve membership") {
  std::mt19937 rng(46);
  const Alphabet& in = sigma_c_a1();
  const Alphabet& out = sigma_c_a1_a2();
  int members = 0;
  for (int i = 0; i < 10; ++i) {
    const ParityTreeAutomaton a2 = random_pta(out, rng, 3, 2);
    const MooreMachine m = random_moore(in, out, rng, 3);
    const ParityTreeAutomaton a1 = moore_reduction(a2, m);
    const ParityTreeAutomaton trimmed = trim_useful(a2);
    for (int j = 0; j < 10; ++j) {
      const RegularTree t = random_tree(in, rng, 3);
      const bool expected = member(a2, relabel(m, t));
      members += expected;
      CHECK(member(a1, t) == expected);
      const RegularTree u = random_tree(out, rng, 3);
      CHECK(member(trimmed, u) == member(a2, u));
    }
  }
  MESSAGE("reduction members: " << members << "/100");
}

TEST_CASE("solvers agree on random arenas") {
  std::mt19937 rng(47);
  for (int i = 0; i < 200; ++i) {
    const ParityGameArena g = random_arena(rng, 8, 4);
    const WinningAnalysis main = solve(g);
    const WinningAnalysis oracle = solve_oracle(g);
    REQUIRE(main.winner == oracle.winner);
    const auto a = main.region(Player::Automaton);
    const auto p = main.region(Player::Pathfinder);
    for (int v = 0; v < g.num_vertices(); ++v) CHECK(a[v] != p[v]);
    for (Player pl : {Player::Automaton, Player::Pathfinder}) {
      CHECK(verify_strategy(g, pl, main.strategy(pl), main.region(pl)));
    }
  }
}
