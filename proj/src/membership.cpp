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

#include "treeamb/membership.hpp"

#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "treeamb/graph.hpp"

namespace treeamb {

struct MembershipGameFactory {
  static MembershipGame make(const ParityTreeAutomaton& original,
                             const ParityTreeAutomaton& ga,
                             const RegularTree& t,
                             const std::vector<int>& roots, bool normalized);
};

int MembershipGame::vertex_of(int tree_state, int state) const {
  return position_vertex_[static_cast<std::size_t>(tree_state) *
                              game_automaton_.num_states() +
                          state];
}

MembershipGame build_product(const ParityTreeAutomaton& a, const RegularTree& t,
                             const std::vector<int>& root_states) {
  return MembershipGameFactory::make(a, a, t, root_states, false);
}

MembershipGame build_game(const ParityTreeAutomaton& a, const RegularTree& t) {
  if (a.initials().size() == 1) {
    return MembershipGameFactory::make(a, a, t, {a.initials().front()}, false);
  }
  ParityTreeAutomaton normal = single_initial(a);
  const int root = normal.initials().front();
  return MembershipGameFactory::make(a, normal, t, {root}, true);
}

MembershipGame MembershipGameFactory::make(const ParityTreeAutomaton& original,
                                           const ParityTreeAutomaton& ga,
                                           const RegularTree& t,
                                           const std::vector<int>& roots,
                                           bool normalized) {
  if (roots.empty()) {
    throw Error(ErrorCode::InvalidArgument, "product game without roots");
  }
  MembershipGame g(original, ga, t);
  g.normalized_ = normalized;
  g.arena_ = ParityGameArena("game(" + original.name() + "," + t.name() + ")");
  const int nq = ga.num_states();
  g.letter_.resize(t.num_states());
  for (int m = 0; m < t.num_states(); ++m) {
    const std::string& sym = t.alphabet().name(t.out(m));
    auto letter = ga.alphabet().find(sym);
    if (!letter) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "tree '" + t.name() + "' uses '" + sym +
                      "', which is not a letter of '" + original.name() + "'");
    }
    g.letter_[m] = *letter;
  }
  g.position_vertex_.assign(static_cast<std::size_t>(t.num_states()) * nq, -1);
  std::unordered_map<long long, int> choice_vertex;
  std::deque<int> queue;
  auto position = [&](int m, int q) {
    int& slot = g.position_vertex_[static_cast<std::size_t>(m) * nq + q];
    if (slot < 0) {
      slot = g.arena_.add_vertex("A:" + t.state_name(m) + ":" + ga.state_name(q),
                                 Player::Automaton, ga.color(q));
      g.kind_.push_back(0);
      g.index_.push_back(static_cast<int>(g.positions_.size()));
      g.positions_.push_back({m, q});
      queue.push_back(slot);
    }
    return slot;
  };
  auto choice = [&](int m, int l, int r) {
    const long long key = (static_cast<long long>(m) * nq + l) * nq + r;
    auto [it, fresh] = choice_vertex.try_emplace(key, -1);
    if (fresh) {
      it->second = g.arena_.add_vertex("P:" + t.state_name(m) + ":" +
                                           ga.state_name(l) + ":" +
                                           ga.state_name(r),
                                       Player::Pathfinder, 0);
      g.kind_.push_back(1);
      g.index_.push_back(static_cast<int>(g.choices_.size()));
      g.choices_.push_back({m, l, r});
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (int q : roots) g.roots_.push_back(position(t.init(), q));
  g.arena_.set_initial(g.roots_.front());
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (g.kind_[v] == 0) {
      const auto [m, q] = g.positions_[g.index_[v]];
      auto trs = ga.transitions_from(q, g.letter_[m]);
      if (trs.empty()) g.arena_.set_sink(v, true);
      for (const Transition& tr : trs) {
        g.arena_.add_edge(v, choice(m, tr.left, tr.right));
      }
    } else {
      const auto [m, l, r] = g.choices_[g.index_[v]];
      g.arena_.add_edge(v, position(t.next(m, Dir::L), l));
      g.arena_.add_edge(v, position(t.next(m, Dir::R), r));
    }
  }
  return g;
}

bool member(const ParityTreeAutomaton& a, const RegularTree& t) {
  const MembershipGame g = build_game(a, t);
  return solve(g.arena()).wins(Player::Automaton, g.arena().initial());
}

// ------------------------------------------------------------------ runs

RegularRun::RegularRun(RegularTree machine, ParityTreeAutomaton automaton,
                       RegularTree tree)
    : machine_(std::move(machine)),
      automaton_(std::move(automaton)),
      tree_(std::move(tree)) {
  const Alphabet states(automaton_.state_names());
  if (!(machine_.alphabet() == states)) {
    try {
      machine_ = machine_.with_alphabet(states);
    } catch (const Error&) {
      throw Error(ErrorCode::InconsistentRun,
                  "run '" + machine_.name() + "' outputs a non-state of '" +
                      automaton_.name() + "'");
    }
  }
}

void RegularRun::check_consistent() const {
  if (!automaton_.is_initial(root_state())) {
    throw Error(ErrorCode::InconsistentRun,
                "root state '" + automaton_.state_name(root_state()) +
                    "' is not initial");
  }
  std::set<std::pair<int, int>> seen{{machine_.init(), tree_.init()}};
  std::vector<std::pair<int, int>> stack(seen.begin(), seen.end());
  while (!stack.empty()) {
    const auto [r, m] = stack.back();
    stack.pop_back();
    const std::string& sym = tree_.alphabet().name(tree_.out(m));
    auto letter = automaton_.alphabet().find(sym);
    const Transition tr{machine_.out(r), letter.value_or(-1),
                        machine_.out(machine_.next(r, Dir::L)),
                        machine_.out(machine_.next(r, Dir::R))};
    if (!letter || !automaton_.has_transition(tr)) {
      throw Error(ErrorCode::InconsistentRun,
                  "run state '" + machine_.state_name(r) + "' with label '" +
                      sym + "' uses no transition of '" + automaton_.name() +
                      "'");
    }
    for (Dir d : kDirs) {
      std::pair<int, int> nxt{machine_.next(r, d), tree_.next(m, d)};
      if (seen.insert(nxt).second) stack.push_back(nxt);
    }
  }
}

bool runs_differ(const RegularRun& a, const RegularRun& b) {
  return !tree_equal(a.machine(), b.machine());
}

PathfinderStrategyTree::PathfinderStrategyTree(
    std::string name, std::string automaton_name, int num_automaton_states,
    std::vector<std::string> state_names, std::vector<std::array<int, 2>> next,
    int init, std::vector<std::vector<Dir>> table)
    : name_(std::move(name)),
      automaton_name_(std::move(automaton_name)),
      num_q_(num_automaton_states),
      names_(std::move(state_names)),
      next_(std::move(next)),
      init_(init),
      table_(std::move(table)) {
  const int n = num_states();
  if (n == 0 || static_cast<int>(next_.size()) != n ||
      static_cast<int>(table_.size()) != n || init_ < 0 || init_ >= n) {
    throw Error(ErrorCode::InvalidArgument, "malformed strategy tree");
  }
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(table_[s].size()) != num_q_ * num_q_) {
      throw Error(ErrorCode::InvalidArgument,
                  "strategy map of '" + names_[s] + "' is not total");
    }
    for (int t : next_[s]) {
      if (t < 0 || t >= n) {
        throw Error(ErrorCode::UnknownState, "strategy edge out of range");
      }
    }
  }
}

RegularRun automaton_strategy_to_run(const MembershipGame& g,
                                     const WinningAnalysis& analysis) {
  const auto& arena = g.arena();
  if (!analysis.wins(Player::Automaton, arena.initial())) {
    throw Error(ErrorCode::NotMember, "'" + g.tree().name() +
                                          "' is not accepted by '" +
                                          g.automaton().name() + "'");
  }
  const RegularTree& t = g.tree();
  const ParityTreeAutomaton& a = g.automaton();
  std::map<int, int> run_state;  // position vertex -> run state
  std::vector<int> order;
  auto intern = [&](int v) {
    auto [it, fresh] = run_state.try_emplace(v, static_cast<int>(order.size()));
    if (fresh) order.push_back(v);
    return it->second;
  };
  intern(arena.initial());
  std::vector<std::array<int, 2>> next;
  std::vector<int> out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    const int c = analysis.automaton_strategy[v];
    if (c < 0) {
      throw Error(ErrorCode::IncompleteStrategy,
                  "no move at '" + arena.vertex(v).name + "'");
    }
    const auto pos = g.position(v);
    const auto ch = g.choice(c);
    int state = pos.state;
    if (g.normalized() && pos.state >= a.num_states()) {
      // The fresh root stands for an original initial state with the same
      // transition.
      state = -1;
      for (int q : a.initials()) {
        if (a.has_transition({q, g.letter_at(pos.tree_state), ch.left, ch.right})) {
          state = q;
          break;
        }
      }
    }
    const int l = intern(g.vertex_of(t.next(pos.tree_state, Dir::L), ch.left));
    const int r = intern(g.vertex_of(t.next(pos.tree_state, Dir::R), ch.right));
    names.push_back("r" + std::to_string(i));
    out.push_back(state);
    next.push_back({l, r});
  }
  RegularTree machine("run_" + a.name() + "_" + t.name(),
                      Alphabet(a.state_names()), std::move(names),
                      std::move(out), std::move(next), 0);
  return RegularRun(std::move(machine), a, t);
}

RegularRun accepting_run(const ParityTreeAutomaton& a, const RegularTree& t) {
  const MembershipGame g = build_game(a, t);
  return automaton_strategy_to_run(g, solve(g.arena()));
}

PathfinderStrategyTree pathfinder_strategy(const ParityTreeAutomaton& a,
                                           const RegularTree& t) {
  const MembershipGame g = build_game(a, t);
  const WinningAnalysis an = solve(g.arena());
  if (an.wins(Player::Automaton, g.arena().initial())) {
    throw Error(ErrorCode::IsMember, "'" + t.name() + "' is accepted by '" +
                                         a.name() + "'");
  }
  const int nq = a.num_states();
  std::vector<std::vector<Dir>> table(
      t.num_states(), std::vector<Dir>(static_cast<std::size_t>(nq) * nq, Dir::L));
  for (int v = 0; v < g.arena().num_vertices(); ++v) {
    if (g.is_position(v)) continue;
    const auto ch = g.choice(v);
    const int w = an.pathfinder_strategy[v];
    if (w < 0 || ch.left >= nq || ch.right >= nq) continue;
    const int left = g.vertex_of(t.next(ch.tree_state, Dir::L), ch.left);
    table[ch.tree_state][ch.left * nq + ch.right] = (w == left) ? Dir::L : Dir::R;
  }
  std::vector<std::array<int, 2>> next;
  for (int m = 0; m < t.num_states(); ++m) {
    next.push_back({t.next(m, Dir::L), t.next(m, Dir::R)});
  }
  return PathfinderStrategyTree("str_" + a.name() + "_" + t.name(), a.name(), nq,
                                t.state_names(), std::move(next), t.init(),
                                std::move(table));
}

bool run_is_accepting(const RegularRun& run) {
  run.check_consistent();
  const RegularTree& m = run.machine();
  Digraph succ(m.num_states());
  std::vector<int> colors(m.num_states());
  for (int r = 0; r < m.num_states(); ++r) {
    succ[r] = {m.next(r, Dir::L), m.next(r, Dir::R)};
    colors[r] = run.automaton().color(m.out(r));
  }
  return !cycle_with_max_parity(succ, colors,
                                std::vector<char>(m.num_states(), 1), 1);
}

RegularRun run_graft(const RegularRun& run, const RegularRun& sub,
                     const NodePath& v) {
  if (run.automaton().state_names() != sub.automaton().state_names()) {
    throw Error(ErrorCode::StateMismatch,
                "runs of automata with different states");
  }
  const int q = run.state_at(v);
  if (q != sub.root_state()) {
    throw Error(ErrorCode::StateMismatch,
                "run has '" + run.automaton().state_name(q) + "' at " + v.str() +
                    " but the grafted run starts in '" +
                    sub.automaton().state_name(sub.root_state()) + "'");
  }
  return RegularRun(graft_node(run.machine(), sub.machine(), v), run.automaton(),
                    graft_node(run.tree(), sub.tree(), v));
}

NodePath leads(const ParityTreeAutomaton& a, const RegularTree& t0,
               const PathfinderStrategyTree& str, const RegularTree& tprime,
               const RegularRun& run) {
  if (str.num_automaton_states() != a.num_states() ||
      run.automaton().state_names() != a.state_names()) {
    throw Error(ErrorCode::PreconditionViolated,
                "strategy or run belongs to a different automaton");
  }
  if (str.num_states() != t0.num_states()) {
    throw Error(ErrorCode::PreconditionViolated,
                "strategy tree does not follow the machine of t0");
  }
  try {
    const RegularRun on_tprime(run.machine(), a, tprime);
    if (!run_is_accepting(on_tprime)) {
      throw Error(ErrorCode::PreconditionViolated, "run is not accepting");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PreconditionViolated) throw;
    throw Error(ErrorCode::PreconditionViolated, e.what());
  }
  const RegularTree& phi = run.machine();
  using Key = std::tuple<int, int, int, int>;
  std::set<Key> seen;
  int m0 = t0.init();
  int s = str.init();
  int m1 = tprime.init();
  int r = phi.init();
  std::vector<Dir> path;
  while (seen.insert({m0, s, m1, r}).second) {
    const int q = phi.out(r);
    const int ql = phi.out(phi.next(r, Dir::L));
    const int qr = phi.out(phi.next(r, Dir::R));
    auto letter = a.alphabet().find(t0.alphabet().name(t0.out(m0)));
    if (!letter || !a.has_transition({q, *letter, ql, qr})) {
      return NodePath(std::move(path));
    }
    const Dir d = str.direction(s, ql, qr);
    path.push_back(d);
    m0 = t0.next(m0, d);
    s = str.next(s, d);
    m1 = tprime.next(m1, d);
    r = phi.next(r, d);
  }
  throw Error(ErrorCode::PreconditionViolated,
              "play repeats without an invalid move; the strategy does not "
              "win for Pathfinder on t0");
}

}  // namespace treeamb
