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

#include "treeamb/games.hpp"

#include <algorithm>
#include <deque>

#include "treeamb/graph.hpp"

namespace treeamb {

int ParityGameArena::add_vertex(std::string name, Player owner, int color,
                                bool sink) {
  if (color < 0) throw Error(ErrorCode::MalformedArena, "negative color");
  vertices_.push_back({std::move(name), owner, color, sink});
  succ_.emplace_back();
  return num_vertices() - 1;
}

bool ParityGameArena::add_edge(int from, int to) {
  if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices()) {
    throw Error(ErrorCode::MalformedArena, "edge endpoint out of range");
  }
  auto& out = succ_[from];
  if (std::find(out.begin(), out.end(), to) != out.end()) return false;
  out.push_back(to);
  return true;
}

int ParityGameArena::max_color() const {
  int best = 0;
  for (const auto& v : vertices_) best = std::max(best, v.color);
  return best;
}

int ParityGameArena::find_vertex(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (vertices_[v].name == name) return v;
  }
  return -1;
}

void ParityGameArena::validate() const {
  if (num_vertices() == 0) throw Error(ErrorCode::MalformedArena, "empty arena");
  if (initial_ < 0 || initial_ >= num_vertices()) {
    throw Error(ErrorCode::MalformedArena, "initial vertex out of range");
  }
  for (int v = 0; v < num_vertices(); ++v) {
    if (succ_[v].empty() && !vertices_[v].sink) {
      throw Error(ErrorCode::MalformedArena,
                  "vertex '" + vertices_[v].name +
                      "' has no successor and is not a sink");
    }
    if (!succ_[v].empty() && vertices_[v].sink) {
      throw Error(ErrorCode::MalformedArena,
                  "sink '" + vertices_[v].name + "' has successors");
    }
  }
}

std::vector<bool> WinningAnalysis::region(Player p) const {
  std::vector<bool> r(winner.size());
  for (std::size_t v = 0; v < winner.size(); ++v) r[v] = winner[v] == p;
  return r;
}

namespace {

// The arena with every sink replaced by a self-loop whose color makes the
// owner lose.
struct Game {
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::vector<int> color;
  std::vector<Player> owner;

  explicit Game(const ParityGameArena& g) {
    g.validate();
    const int n = g.num_vertices();
    succ.resize(n);
    pred.resize(n);
    color.resize(n);
    owner.resize(n);
    for (int v = 0; v < n; ++v) {
      owner[v] = g.owner(v);
      color[v] = g.color(v);
      succ[v] = g.successors(v);
      if (g.is_sink(v)) {
        succ[v] = {v};
        color[v] = owner[v] == Player::Automaton ? 1 : 0;
      }
    }
    for (int v = 0; v < n; ++v) {
      for (int w : succ[v]) pred[w].push_back(v);
    }
  }
  int size() const { return static_cast<int>(succ.size()); }
};

Player player_of_color(int c) {
  return c % 2 == 0 ? Player::Automaton : Player::Pathfinder;
}

class Zielonka {
 public:
  explicit Zielonka(const Game& g)
      : g_(g), winner_(g.size(), Player::Automaton), choice_(g.size(), -1) {}

  WinningAnalysis run() {
    std::vector<char> all(g_.size(), 1);
    solve(all);
    WinningAnalysis out;
    out.winner = winner_;
    out.automaton_strategy.assign(g_.size(), -1);
    out.pathfinder_strategy.assign(g_.size(), -1);
    for (int v = 0; v < g_.size(); ++v) {
      if (winner_[v] != g_.owner[v]) continue;
      (g_.owner[v] == Player::Automaton ? out.automaton_strategy
                                        : out.pathfinder_strategy)[v] = choice_[v];
    }
    return out;
  }

 private:
  // Attractor for p of target inside mask; sets choices of p-vertices that
  // are attracted (lowest edge index that decreases the attractor rank).
  std::vector<char> attract(const std::vector<char>& mask,
                            const std::vector<char>& target, Player p) {
    const int n = g_.size();
    std::vector<int> rank(n, -1);
    std::vector<int> count(n, 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
      if (!mask[v]) continue;
      if (target[v]) {
        rank[v] = 0;
        queue.push_back(v);
      } else {
        for (int w : g_.succ[v]) count[v] += mask[w] ? 1 : 0;
      }
    }
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop_front();
      for (int u : g_.pred[w]) {
        if (!mask[u] || rank[u] >= 0) continue;
        if (g_.owner[u] == p || --count[u] == 0) {
          rank[u] = rank[w] + 1;
          queue.push_back(u);
        }
      }
    }
    std::vector<char> attr(n, 0);
    for (int v = 0; v < n; ++v) {
      if (rank[v] < 0) continue;
      attr[v] = 1;
      if (rank[v] > 0 && g_.owner[v] == p) {
        for (int w : g_.succ[v]) {
          if (mask[w] && rank[w] >= 0 && rank[w] < rank[v]) {
            choice_[v] = w;
            break;
          }
        }
      }
    }
    return attr;
  }

  void solve(const std::vector<char>& mask) {
    const int n = g_.size();
    int top = -1;
    for (int v = 0; v < n; ++v) {
      if (mask[v]) top = std::max(top, g_.color[v]);
    }
    if (top < 0) return;
    const Player p = player_of_color(top);
    const Player q = opponent(p);
    std::vector<char> target(n, 0);
    for (int v = 0; v < n; ++v) target[v] = mask[v] && g_.color[v] == top;
    const std::vector<char> a = attract(mask, target, p);
    std::vector<char> sub(n, 0);
    for (int v = 0; v < n; ++v) sub[v] = mask[v] && !a[v];
    solve(sub);
    std::vector<char> lost(n, 0);
    bool any_lost = false;
    for (int v = 0; v < n; ++v) {
      if (sub[v] && winner_[v] == q) {
        lost[v] = 1;
        any_lost = true;
      }
    }
    if (!any_lost) {
      for (int v = 0; v < n; ++v) {
        if (!mask[v]) continue;
        winner_[v] = p;
        if (target[v] && g_.owner[v] == p) {
          for (int w : g_.succ[v]) {
            if (mask[w]) {
              choice_[v] = w;
              break;
            }
          }
        }
      }
      return;
    }
    const std::vector<char> b = attract(mask, lost, q);
    std::vector<char> rest(n, 0);
    for (int v = 0; v < n; ++v) {
      rest[v] = mask[v] && !b[v];
      if (b[v]) winner_[v] = q;
    }
    solve(rest);
  }

  const Game& g_;
  std::vector<Player> winner_;
  std::vector<int> choice_;
};

// Progress measures for the player owning even colors of the given game.
class ProgressMeasures {
 public:
  ProgressMeasures(const Game& g, std::vector<int> color,
                   std::vector<Player> owner)
      : g_(g), color_(std::move(color)), owner_(std::move(owner)) {
    int top = 0;
    for (int c : color_) top = std::max(top, c);
    slots_ = (top + 1) / 2;  // odd colors 1, 3, ..., indexed (c-1)/2
    bound_.assign(slots_, 0);
    for (int c : color_) {
      if (c % 2 == 1) ++bound_[(c - 1) / 2];
    }
  }

  // Returns (wins, choice) for the even player.
  std::pair<std::vector<bool>, std::vector<int>> run() {
    const int n = g_.size();
    measure_.assign(n, Measure{false, std::vector<int>(slots_, 0)});
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        Measure m = lifted(v);
        if (less(measure_[v], m)) {
          measure_[v] = std::move(m);
          changed = true;
        }
      }
    }
    std::vector<bool> wins(n);
    std::vector<int> choice(n, -1);
    for (int v = 0; v < n; ++v) {
      wins[v] = !measure_[v].top;
      if (wins[v] && owner_[v] == Player::Automaton) {
        Measure best;
        for (int w : g_.succ[v]) {
          Measure cand = prog(v, w);
          if (choice[v] < 0 || less(cand, best)) {
            best = std::move(cand);
            choice[v] = w;
          }
        }
      }
    }
    return {wins, choice};
  }

 private:
  struct Measure {
    bool top = false;
    std::vector<int> value;
  };

  // Lexicographic from the highest odd color down.
  static bool less(const Measure& a, const Measure& b) {
    if (a.top != b.top) return b.top;
    if (a.top) return false;
    for (int i = static_cast<int>(a.value.size()) - 1; i >= 0; --i) {
      if (a.value[i] != b.value[i]) return a.value[i] < b.value[i];
    }
    return false;
  }

  Measure prog(int v, int w) const {
    const Measure& m = measure_[w];
    if (m.top) return m;
    const int c = color_[v];
    Measure out{false, m.value};
    const int low = c / 2;  // slots below this index are irrelevant at c
    for (int i = 0; i < low && i < slots_; ++i) out.value[i] = 0;
    if (c % 2 == 0) return out;
    int i = (c - 1) / 2;
    for (; i < slots_; ++i) {
      if (out.value[i] < bound_[i]) {
        ++out.value[i];
        return out;
      }
      out.value[i] = 0;
    }
    return Measure{true, {}};
  }

  Measure lifted(int v) const {
    Measure best;
    bool first = true;
    for (int w : g_.succ[v]) {
      Measure m = prog(v, w);
      if (first || (owner_[v] == Player::Automaton ? less(m, best)
                                                   : less(best, m))) {
        best = std::move(m);
        first = false;
      }
    }
    return best;
  }

  const Game& g_;
  std::vector<int> color_;
  std::vector<Player> owner_;
  int slots_ = 0;
  std::vector<int> bound_;
  std::vector<Measure> measure_;
};

}  // namespace

WinningAnalysis solve(const ParityGameArena& g) {
  const Game game(g);
  return Zielonka(game).run();
}

WinningAnalysis solve_oracle(const ParityGameArena& g) {
  const Game game(g);
  const int n = game.size();
  auto [even_wins, even_choice] =
      ProgressMeasures(game, game.color, game.owner).run();
  // Dual game: shift colors by one and swap roles.
  std::vector<int> shifted(n);
  std::vector<Player> swapped(n);
  for (int v = 0; v < n; ++v) {
    shifted[v] = game.color[v] + 1;
    swapped[v] = opponent(game.owner[v]);
  }
  auto [odd_wins, odd_choice] = ProgressMeasures(game, shifted, swapped).run();
  WinningAnalysis out;
  out.winner.resize(n);
  out.automaton_strategy.assign(n, -1);
  out.pathfinder_strategy.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (even_wins[v] == odd_wins[v]) {
      throw Error(ErrorCode::MalformedArena,
                  "progress measures are not complementary");
    }
    out.winner[v] = even_wins[v] ? Player::Automaton : Player::Pathfinder;
    if (g.is_sink(v)) continue;
    if (even_wins[v] && game.owner[v] == Player::Automaton) {
      out.automaton_strategy[v] = even_choice[v];
    }
    if (odd_wins[v] && game.owner[v] == Player::Pathfinder) {
      out.pathfinder_strategy[v] = odd_choice[v];
    }
  }
  return out;
}

bool verify_strategy(const ParityGameArena& g, Player player,
                     const Strategy& strategy, const std::vector<bool>& region) {
  g.validate();
  const int n = g.num_vertices();
  if (static_cast<int>(strategy.size()) != n ||
      static_cast<int>(region.size()) != n) {
    throw Error(ErrorCode::IncompleteStrategy, "strategy size mismatch");
  }
  // Restricted successor lists over the reachable part.
  std::vector<std::vector<int>> succ(n);
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (region[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (g.owner(v) == player) {
      if (g.is_sink(v)) return false;
      const int w = strategy[v];
      const auto& out = g.successors(v);
      if (w < 0 || std::find(out.begin(), out.end(), w) == out.end()) {
        throw Error(ErrorCode::IncompleteStrategy,
                    "no valid move at '" + g.vertex(v).name + "'");
      }
      succ[v] = {w};
    } else {
      succ[v] = g.successors(v);
    }
    for (int w : succ[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  // A reachable cycle whose maximal color has the opponent's parity.
  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v) colors[v] = g.color(v);
  return !cycle_with_max_parity(succ, colors, seen, 1 - parity_of(player));
}

bool verify_strategy(const ParityGameArena& g, Player player,
                     const Strategy& strategy) {
  std::vector<bool> region(g.num_vertices(), false);
  for (int v = 0; v < g.num_vertices(); ++v) {
    region[v] = g.owner(v) == player && v < static_cast<int>(strategy.size()) &&
                strategy[v] >= 0;
  }
  return verify_strategy(g, player, strategy, region);
}

}  // namespace treeamb
