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

int count_positions(const MembershipGame& g) {
  int n = 0;
  for (int v = 0; v < g.arena().num_vertices(); ++v) n += g.is_position(v);
  return n;
}

// A run machine over the automaton's state names.
RegularTree run_machine(const ParityTreeAutomaton& a, std::vector<std::string> states,
                        std::vector<std::array<int, 2>> next) {
  std::vector<int> out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.push_back(a.state_index(states[i]));
    names.push_back("r" + std::to_string(i));
  }
  return RegularTree("run", Alphabet(a.state_names()), names, out, next, 0);
}

// Translates a strategy tree into a positional strategy on the arena.
Strategy arena_strategy(const MembershipGame& g, const PathfinderStrategyTree& s) {
  Strategy out(g.arena().num_vertices(), -1);
  const RegularTree& t = g.tree();
  for (int v = 0; v < g.arena().num_vertices(); ++v) {
    if (g.is_position(v)) continue;
    const MembershipGame::Choice c = g.choice(v);
    const Dir d = s.direction(c.tree_state, c.left, c.right);
    const int q = d == Dir::L ? c.left : c.right;
    out[v] = g.vertex_of(t.next(c.tree_state, d), q);
  }
  return out;
}

// True iff the strategy wins every play from the initial vertex.
bool wins_from_initial(const MembershipGame& g, const Strategy& str) {
  const ParityGameArena& arena = g.arena();
  std::vector<bool> region(arena.num_vertices(), false);
  std::vector<int> todo{arena.initial()};
  region[arena.initial()] = true;
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    std::vector<int> next = arena.successors(v);
    if (arena.owner(v) == Player::Pathfinder && str[v] >= 0) next = {str[v]};
    for (int w : next) {
      if (!region[w]) {
        region[w] = true;
        todo.push_back(w);
      }
    }
  }
  Strategy restricted(str.size(), -1);
  for (int v = 0; v < arena.num_vertices(); ++v) {
    if (region[v]) restricted[v] = str[v];
  }
  return verify_strategy(arena, Player::Pathfinder, restricted, region);
}

}  // namespace

TEST_CASE("build_game shapes") {
  const Alphabet& s = sigma_c_a1();
  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  const MembershipGame g1 = build_game(det, constant(s, "c"));
  CHECK(count_positions(g1) == 1);
  CHECK(g1.arena().num_vertices() == 2);
  CHECK_FALSE(g1.normalized());

  const MembershipGame g2 = build_game(det, constant(s, "a1"));
  CHECK(g2.arena().is_sink(g2.arena().initial()));
  CHECK(g2.arena().owner(g2.arena().initial()) == Player::Automaton);

  const MembershipGame g3 = build_game(zoo_neg_union(2), constant(sigma_c_a1_a2(), "c"));
  CHECK(g3.normalized());
  CHECK(count_positions(g3) == 3);

  // Pathfinder vertices carry color 0; positions carry the state's color.
  for (int v = 0; v < g3.arena().num_vertices(); ++v) {
    if (g3.is_position(v)) {
      CHECK(g3.arena().color(v) == g3.game_automaton().color(g3.position(v).state));
    } else {
      CHECK(g3.arena().color(v) == 0);
      CHECK(g3.arena().owner(v) == Player::Pathfinder);
    }
  }
  CHECK_THROWS_AS(build_game(det, constant(Alphabet({"zz"}), "zz")), Error);
}

TEST_CASE("member examples") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  CHECK(member(det, tc));
  CHECK_FALSE(member(det, graft_node(tc, constant(s, "a1"), NodePath("r"))));
  const Alphabet& s2 = sigma_c_a1_a2();
  CHECK(member(zoo_neg_union(2), make_node("c", constant(s2, "a1"), constant(s2, "c"))));
}

TEST_CASE("automaton_strategy_to_run") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularRun run = accepting_run(det_avoiding(s, "a1"), tc);
  CHECK(run.machine().num_states() == 1);
  CHECK(run_is_accepting(run));

  // The union's run stays inside one summand everywhere.
  const ParityTreeAutomaton u = zoo_neg_union(2);
  const RegularRun ur = accepting_run(u, constant(sigma_c_a1_a2(), "c"));
  const int root = ur.root_state();
  for (const NodePath& v : nodes_up_to(4)) CHECK(ur.state_at(v) == root);

  CHECK_THROWS_AS(accepting_run(det_avoiding(s, "a1"), constant(s, "a1")), Error);
}

TEST_CASE("pathfinder_strategy") {
  const Alphabet& s = sigma_c_a1();
  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  CHECK_NOTHROW(pathfinder_strategy(det, constant(s, "a1")));

  const ParityTreeAutomaton ex = zoo_exists_a1();
  const RegularTree tc = constant(s, "c");
  const PathfinderStrategyTree str = pathfinder_strategy(ex, tc);
  const MembershipGame g = build_game(ex, tc);
  CHECK(wins_from_initial(g, arena_strategy(g, str)));

  try {
    pathfinder_strategy(det, tc);
    FAIL("expected IsMember");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IsMember);
  }
}

TEST_CASE("run_is_accepting") {
  const Alphabet c({"c"});
  const RegularTree tc = RegularTree::constant(c, "c");
  const ParityTreeAutomaton zero("z", c, {"q"}, {0}, {0}, {{0, 0, 0, 0}});
  CHECK(run_is_accepting(RegularRun(run_machine(zero, {"q"}, {{{0, 0}}}), zero, tc)));

  const ParityTreeAutomaton one("o", c, {"q"}, {1}, {0}, {{0, 0, 0, 0}});
  CHECK_FALSE(run_is_accepting(RegularRun(run_machine(one, {"q"}, {{{0, 0}}}), one, tc)));

  const ParityTreeAutomaton alt("alt", c, {"p", "q"}, {1, 2}, {0}, {{0, 0, 1, 1}, {1, 0, 0, 0}});
  CHECK(run_is_accepting(RegularRun(run_machine(alt, {"p", "q"}, {{{1, 1}}, {{0, 0}}}), alt, tc)));

  // (p, c, p, p) is not a transition.
  const RegularRun bad(run_machine(alt, {"p"}, {{{0, 0}}}), alt, tc);
  try {
    run_is_accepting(bad);
    FAIL("expected InconsistentRun");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentRun);
  }
}

TEST_CASE("run_graft") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularRun run = accepting_run(det_avoiding(s, "a1"), tc);
  CHECK(tree_equal(run_graft(run, run, NodePath()).machine(), run.machine()));
  CHECK(tree_equal(run_graft(run, run, NodePath("lr")).machine(), run.machine()));

  // Complement of {t_c}: graft a run of the searching state onto a node
  // where the host run is searching.
  const ParityTreeAutomaton a = zoo_complement_singleton(tc, s);
  const RegularTree host = graft_node(tc, constant(s, "a1"), NodePath("l"));
  const RegularRun h = accepting_run(a, host);
  CHECK(a.state_name(h.root_state()).rfind("q'", 0) == 0);
  const ParityTreeAutomaton from_root = restrict_initials(a, std::vector<int>{h.root_state()});
  const RegularTree scion = make_node("a1", tc, tc);
  const RegularRun sub = accepting_run(from_root, scion);
  const RegularRun grafted = run_graft(h, RegularRun(sub.machine(), a, scion), NodePath());
  CHECK(run_is_accepting(grafted));
  CHECK(tree_equal(grafted.tree(), scion));

  // A state mismatch: the node r of h carries the non-searching state.
  CHECK_THROWS_AS(run_graft(h, RegularRun(sub.machine(), a, scion), NodePath("r")), Error);
}

TEST_CASE("leads examples") {
  const Alphabet& s = sigma_c_a1();
  const RegularTree tc = constant(s, "c");
  const RegularTree ta1 = constant(s, "a1");

  const ParityTreeAutomaton ex = zoo_exists_a1();
  const RegularTree tprime = graft_node(tc, ta1, NodePath("rl"));
  const NodePath v = leads(ex, tc, pathfinder_strategy(ex, tc), tprime, accepting_run(ex, tprime));
  CHECK(v == NodePath("rl"));

  const ParityTreeAutomaton det = det_avoiding(s, "a1");
  CHECK(leads(det, ta1, pathfinder_strategy(det, ta1), tc, accepting_run(det, tc)).empty());

  // Searching forever down the left spine: consistent, not accepting.
  const RegularRun stuck(run_machine(ex, {"seek", "done"}, {{{0, 1}}, {{1, 1}}}), ex, tc);
  try {
    leads(ex, tc, pathfinder_strategy(ex, tc), tc, stuck);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("membership cross-checks on random pairs") {
  std::mt19937 rng(11);
  const Alphabet& s = sigma_c_a1();
  int members = 0;
  for (int i = 0; i < 10; ++i) {
    const ParityTreeAutomaton a = random_pta(s, rng, 3, 2);
    const RegularTree t = random_tree(s, rng, 3);
    const bool yes = member(a, t);
    members += yes;
    CHECK(yes == emptiness(intersect(a, det_pta_for_tree(t))).has_value());
    if (yes) {
      CHECK(run_is_accepting(accepting_run(a, t)));
    } else {
      const PathfinderStrategyTree str = pathfinder_strategy(a, t);
      const MembershipGame g = build_game(a, t);
      CHECK(wins_from_initial(g, arena_strategy(g, str)));
    }
  }
  MESSAGE("members among random pairs: " << members);
}

TEST_CASE("deterministic automata agree with direct run evaluation") {
  std::mt19937 rng(12);
  const Alphabet& s = sigma_c_a1();
  for (int i = 0; i < 10; ++i) {
    const RegularTree shape = random_tree(s, rng, 3);
    // det_pta_for_tree of one tree, recolored, is deterministic.
    const ParityTreeAutomaton base = det_pta_for_tree(shape);
    std::vector<int> colors(base.num_states());
    std::uniform_int_distribution<int> color(0, 2);
    for (int& c : colors) c = color(rng);
    std::vector<Transition> trans(base.transitions().begin(), base.transitions().end());
    const ParityTreeAutomaton a("det", s, base.state_names(), colors, base.initials(), trans);
    for (int j = 0; j < 3; ++j) {
      const RegularTree t = j == 0 ? shape : random_tree(s, rng, 3);
      CHECK(member(a, t) == deterministic_member(a, t));
    }
  }
}
