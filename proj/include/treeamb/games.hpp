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
// Finite max-parity games between Automaton (wins on even colors) and
// Pathfinder (wins on odd colors).

#pragma once

#include <string>
#include <vector>

#include "treeamb/error.hpp"

namespace treeamb {

enum class Player : int { Automaton = 0, Pathfinder = 1 };

inline constexpr Player opponent(Player p) {
  return p == Player::Automaton ? Player::Pathfinder : Player::Automaton;
}
inline constexpr int parity_of(Player p) { return static_cast<int>(p); }

// A vertex without successors must be declared a sink; a play that gets
// stuck there is lost by the sink's owner.
class ParityGameArena {
 public:
  struct Vertex {
    std::string name;
    Player owner = Player::Automaton;
    int color = 0;
    bool sink = false;
  };

  ParityGameArena() = default;
  explicit ParityGameArena(std::string name) : name_(std::move(name)) {}

  int add_vertex(std::string name, Player owner, int color, bool sink = false);
  // Returns false when the edge already exists.
  bool add_edge(int from, int to);
  void set_initial(int v) { initial_ = v; }
  void set_sink(int v, bool sink) { vertices_[v].sink = sink; }

  const std::string& name() const { return name_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  Player owner(int v) const { return vertices_[v].owner; }
  int color(int v) const { return vertices_[v].color; }
  bool is_sink(int v) const { return vertices_[v].sink; }
  // Successors in edge insertion order; the position is the edge index.
  const std::vector<int>& successors(int v) const { return succ_[v]; }
  int initial() const { return initial_; }
  int max_color() const;
  int find_vertex(const std::string& name) const;

  // Throws MalformedArena when a vertex without successors is not a sink,
  // a sink has successors, or the initial vertex is out of range.
  void validate() const;

 private:
  std::string name_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> succ_;
  int initial_ = 0;
};

// Maps each vertex to its chosen successor, or -1 where undefined.
using Strategy = std::vector<int>;

struct WinningAnalysis {
  std::vector<Player> winner;  // per vertex
  Strategy automaton_strategy;
  Strategy pathfinder_strategy;

  bool wins(Player p, int v) const { return winner[v] == p; }
  std::vector<bool> region(Player p) const;
  const Strategy& strategy(Player p) const {
    return p == Player::Automaton ? automaton_strategy : pathfinder_strategy;
  }
};

// Recursive attractor decomposition.
WinningAnalysis solve(const ParityGameArena& g);
// Small progress measures, run once per player.
WinningAnalysis solve_oracle(const ParityGameArena& g);

// True iff every play that starts in region, follows strategy at the
// player's vertices and is otherwise arbitrary is won by player. Throws
// IncompleteStrategy when the strategy is undefined at a reachable vertex
// of the player or names a non-successor.
bool verify_strategy(const ParityGameArena& g, Player player,
                     const Strategy& strategy, const std::vector<bool>& region);
// Uses the vertices where strategy is defined, plus the opponent vertices
// reachable from them, as the region.
bool verify_strategy(const ParityGameArena& g, Player player,
                     const Strategy& strategy);

}  // namespace treeamb
