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
//
// Shared fixtures, generators and independent oracles for the tests.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "treeamb/automata.hpp"
#include "treeamb/games.hpp"
#include "treeamb/membership.hpp"
#include "treeamb/trees.hpp"

namespace treeamb::test {

inline const Alphabet& sigma_c_a1() {
  static const Alphabet s({"c", "a1"});
  return s;
}
inline const Alphabet& sigma_c_a1_a2() {
  static const Alphabet s({"c", "a1", "a2"});
  return s;
}

inline RegularTree constant(const Alphabet& s, const std::string& symbol) {
  return RegularTree::constant(s, symbol, "t_" + symbol);
}

// The one-state deterministic automaton of trees avoiding `missing`.
inline ParityTreeAutomaton det_avoiding(const Alphabet& s, const std::string& missing) {
  std::vector<Transition> trans;
  for (int a = 0; a < s.size(); ++a) {
    if (s.name(a) != missing) trans.push_back({0, a, 0, 0});
  }
  return ParityTreeAutomaton("not_" + missing, s, {"d"}, {0}, {0}, trans);
}

// Accepts every tree over s with one state of the given color.
inline ParityTreeAutomaton universal(const Alphabet& s, int color = 0) {
  std::vector<Transition> trans;
  for (int a = 0; a < s.size(); ++a) trans.push_back({0, a, 0, 0});
  return ParityTreeAutomaton("all" + std::to_string(color), s, {"u"}, {color}, {0}, trans);
}

// The two-state tree whose labels alternate by depth parity.
inline RegularTree alternating(const Alphabet& s, const std::string& even,
                               const std::string& odd) {
  return RegularTree("t_alt", s, {"e", "o"}, {s.index(even), s.index(odd)},
                     {{{1, 1}}, {{0, 0}}}, 0);
}

inline std::vector<NodePath> nodes_up_to(int depth) {
  std::vector<NodePath> out{NodePath()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == depth) continue;
    out.push_back(out[i].child(Dir::L));
    out.push_back(out[i].child(Dir::R));
  }
  return out;
}

// Labels of all nodes up to depth, read by walking the machine directly.
inline std::map<NodePath, std::string> unfold(const RegularTree& t, int depth) {
  std::map<NodePath, std::string> labels;
  for (const NodePath& v : nodes_up_to(depth)) {
    int m = t.init();
    for (Dir d : v.dirs()) m = t.next(m, d);
    labels[v] = t.alphabet().name(t.out(m));
  }
  return labels;
}

inline RegularTree random_tree(const Alphabet& s, std::mt19937& rng, int max_states,
                               const std::string& name = "rand") {
  std::uniform_int_distribution<int> count(1, max_states);
  const int n = count(rng);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> letter(0, s.size() - 1);
  std::vector<std::string> names;
  std::vector<int> out;
  std::vector<std::array<int, 2>> next;
  for (int i = 0; i < n; ++i) {
    names.push_back("s" + std::to_string(i));
    out.push_back(letter(rng));
    next.push_back({state(rng), state(rng)});
  }
  return RegularTree(name, s, names, out, next, 0);
}

inline NodePath random_path(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<Dir> dirs(len(rng));
  for (Dir& d : dirs) d = bit(rng) ? Dir::R : Dir::L;
  return NodePath(dirs);
}

// A random automaton with every state initial-reachable by construction.
inline ParityTreeAutomaton random_pta(const Alphabet& s, std::mt19937& rng,
                                      int max_states, int max_color,
                                      const std::string& name = "rpta") {
  std::uniform_int_distribution<int> count(1, max_states);
  const int n = count(rng);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> color(0, max_color);
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<std::string> names;
  std::vector<int> colors;
  for (int i = 0; i < n; ++i) {
    names.push_back("q" + std::to_string(i));
    colors.push_back(color(rng));
  }
  std::vector<Transition> trans;
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < s.size(); ++a) {
      const int k = coin(rng);
      for (int i = 0; i < k; ++i) {
        const Transition tr{q, a, state(rng), state(rng)};
        if (std::find(trans.begin(), trans.end(), tr) == trans.end()) trans.push_back(tr);
      }
    }
  }
  return ParityTreeAutomaton(name, s, names, colors, {0}, trans);
}

inline ParityGameArena random_arena(std::mt19937& rng, int max_vertices, int max_color) {
  std::uniform_int_distribution<int> count(1, max_vertices);
  const int n = count(rng);
  std::uniform_int_distribution<int> color(0, max_color);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int> degree(0, 3);
  ParityGameArena g("random");
  for (int v = 0; v < n; ++v) {
    g.add_vertex("v" + std::to_string(v), coin(rng) ? Player::Pathfinder : Player::Automaton,
                 color(rng));
  }
  for (int v = 0; v < n; ++v) {
    const int d = degree(rng);
    for (int i = 0; i < d; ++i) g.add_edge(v, vertex(rng));
    if (g.successors(v).empty()) g.set_sink(v, true);
  }
  return g;
}

// Parity of stem . cycle^omega read coordinate by coordinate.
inline bool lasso_accepts_by_coordinates(const std::vector<std::vector<int>>& cycle) {
  const std::size_t dims = cycle.front().size();
  for (std::size_t i = 0; i < dims; ++i) {
    int top = 0;
    for (const auto& letter : cycle) top = std::max(top, letter[i]);
    if (top % 2 != 0) return false;
  }
  return true;
}

// For a deterministic, complete-or-blocking automaton: follows the unique
// candidate run and checks parity on the product's reachable cycles.
inline bool deterministic_member(const ParityTreeAutomaton& a, const RegularTree& t) {
  // Product vertices (m, q); blocked when no transition exists.
  const int nq = a.num_states();
  const int n = t.num_states() * nq;
  std::vector<std::array<int, 2>> succ(n, {-1, -1});
  std::vector<bool> seen(n, false);
  std::vector<int> stack{t.init() * nq + a.initials().front()};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    const int m = v / nq;
    const int q = v % nq;
    const auto trans = a.transitions_from(q, a.alphabet().index(t.alphabet().name(t.out(m))));
    if (trans.empty()) return false;
    const Transition& tr = trans.front();
    for (Dir d : {Dir::L, Dir::R}) {
      const int w = t.next(m, d) * nq + tr.child(d);
      succ[v][idx(d)] = w;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  // Odd cycle check: for each odd c, a cycle among colors <= c through c.
  for (int c = 1; c <= a.max_color(); c += 2) {
    for (int start = 0; start < n; ++start) {
      if (!seen[start] || a.color(start % nq) != c) continue;
      std::vector<bool> reach(n, false);
      std::vector<int> todo{start};
      while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        for (int w : succ[v]) {
          if (w < 0 || a.color(w % nq) > c) continue;
          if (w == start) return false;
          if (!reach[w]) {
            reach[w] = true;
            todo.push_back(w);
          }
        }
      }
    }
  }
  return true;
}

// Number of nodes v (depth <= bound) where t and u differ while agreeing on
// every proper ancestor; the count of minimal difference nodes when all
// differences occur within the bound.
inline int minimal_differences(const RegularTree& t, const RegularTree& u, int bound) {
  int count = 0;
  for (const NodePath& v : nodes_up_to(bound)) {
    if (t.symbol_at(v) == u.symbol_at(v)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (t.symbol_at(v.prefix(i)) != u.symbol_at(v.prefix(i))) minimal = false;
    }
    count += minimal;
  }
  return count;
}

}  // namespace treeamb::test
