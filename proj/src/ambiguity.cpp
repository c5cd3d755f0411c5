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

#include "treeamb/ambiguity.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "treeamb/error.hpp"
#include "treeamb/graph.hpp"

namespace treeamb {

namespace {

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y, std::uint64_t cap) {
  return (x >= cap || y >= cap - x) ? cap : x + y;
}

std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y, std::uint64_t cap) {
  if (x == 0 || y == 0) return 0;
  return x > cap / y ? cap : std::min(cap, x * y);
}

// ------------------------------------------------------------- emptiness

// Automaton vertices are the states (vertex q is state q); Pathfinder
// vertices are the distinct child pairs of transitions.
struct EmptinessGame {
  ParityGameArena arena;
  std::vector<std::pair<int, int>> pairs;  // by vertex - num_states
};

EmptinessGame build_emptiness_game(const ParityTreeAutomaton& a) {
  EmptinessGame g;
  g.arena = ParityGameArena("empty(" + a.name() + ")");
  const int nq = a.num_states();
  for (int q = 0; q < nq; ++q) {
    g.arena.add_vertex("A:" + a.state_name(q), Player::Automaton, a.color(q),
                       a.transitions_from(q).empty());
  }
  std::map<std::pair<int, int>, int> pair_vertex;
  for (const Transition& tr : a.transitions()) {
    auto [it, fresh] = pair_vertex.try_emplace({tr.left, tr.right}, -1);
    if (fresh) {
      it->second = g.arena.add_vertex(
          "P:" + a.state_name(tr.left) + ":" + a.state_name(tr.right),
          Player::Pathfinder, 0);
      g.pairs.push_back({tr.left, tr.right});
      g.arena.add_edge(it->second, tr.left);
      g.arena.add_edge(it->second, tr.right);
    }
    g.arena.add_edge(tr.state, it->second);
  }
  if (nq > 0) g.arena.set_initial(a.initials().empty() ? 0 : a.initials()[0]);
  return g;
}

// ------------------------------------------------------ product analysis

struct Edge {
  int to;
  int transition;  // index into useful[from]
  Dir dir;
};

// The useful part of the product of a with t, rooted at every initial state.
class ProductAnalysis {
 public:
  ProductAnalysis(const ParityTreeAutomaton& a, const RegularTree& t)
      : game_(build_product(a, t, a.initials())), win_(solve(game_.arena())) {
    const int n = game_.arena().num_vertices();
    useful_.resize(n);
    edges_.resize(n);
    reach_.assign(n, 0);
    branching_.assign(n, 0);
    to_branch_.assign(n, 0);
    cyclic_.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      if (!game_.is_position(v) || !winning(v)) continue;
      const auto [m, q] = game_.position(v);
      for (const Transition& tr : a.transitions_from(q, game_.letter_at(m))) {
        if (winning(child(v, tr, Dir::L)) && winning(child(v, tr, Dir::R))) {
          useful_[v].push_back(tr);
        }
      }
    }
    std::deque<int> queue;
    for (int r : game_.roots()) {
      if (winning(r) && !reach_[r]) {
        reach_[r] = 1;
        queue.push_back(r);
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int k = 0; k < static_cast<int>(useful_[v].size()); ++k) {
        for (Dir d : kDirs) {
          const int w = child(v, useful_[v][k], d);
          edges_[v].push_back({w, k, d});
          if (!reach_[w]) {
            reach_[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    Digraph pred(n);
    for (int v = 0; v < n; ++v) {
      for (const Edge& e : edges_[v]) pred[e.to].push_back(v);
      if (reach_[v] && useful_[v].size() >= 2) {
        branching_[v] = 1;
        to_branch_[v] = 1;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : pred[v]) {
        if (!to_branch_[u]) {
          to_branch_[u] = 1;
          queue.push_back(u);
        }
      }
    }
    succ_.resize(n);
    for (int v = 0; v < n; ++v) {
      for (const Edge& e : edges_[v]) succ_[v].push_back(e.to);
    }
    std::vector<char> allowed(n);
    for (int v = 0; v < n; ++v) allowed[v] = reach_[v] && to_branch_[v];
    cyclic_ = cyclic_members(allowed);
    for (int v = 0; v < n; ++v) infinite_ = infinite_ || cyclic_[v];
  }

  const MembershipGame& game() const { return game_; }
  const ParityTreeAutomaton& automaton() const { return game_.automaton(); }
  const RegularTree& tree() const { return game_.tree(); }
  int size() const { return game_.arena().num_vertices(); }
  bool winning(int v) const { return win_.wins(Player::Automaton, v); }
  bool member() const {
    return std::ranges::any_of(game_.roots(),
                               [&](int r) { return winning(r); });
  }
  bool infinite() const { return infinite_; }
  bool reach(int v) const { return reach_[v]; }
  bool branching(int v) const { return branching_[v]; }
  bool to_branch(int v) const { return to_branch_[v]; }
  bool cyclic(int v) const { return cyclic_[v]; }
  const std::vector<Transition>& useful(int v) const { return useful_[v]; }
  const std::vector<Edge>& edges(int v) const { return edges_[v]; }
  const Digraph& succ() const { return succ_; }
  int color(int v) const { return game_.arena().color(v); }

  int child(int v, const Transition& tr, Dir d) const {
    const int m = game_.position(v).tree_state;
    return game_.vertex_of(tree().next(m, d), tr.child(d));
  }

  // Positional choice of a winning strategy at a winning position.
  Transition strategy_choice(int v) const {
    const int c = win_.automaton_strategy[v];
    const auto [m, l, r] = game_.choice(c);
    const auto [m0, q] = game_.position(v);
    return {q, game_.letter_at(m0), l, r};
  }

  // Members of allowed that lie on a cycle inside allowed.
  std::vector<char> cyclic_members(const std::vector<char>& allowed) const {
    const int n = size();
    const std::vector<int> comp = strongly_connected(succ_, allowed);
    std::vector<int> count(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      if (comp[v] >= 0) ++count[comp[v]];
    }
    std::vector<char> out(n, 0);
    for (int v = 0; v < n; ++v) {
      if (comp[v] < 0) continue;
      out[v] = count[comp[v]] > 1 ||
               std::ranges::find(succ_[v], v) != succ_[v].end();
    }
    return out;
  }

  // Number of accepting runs from every root, saturated at cap. Only
  // meaningful when !infinite().
  std::uint64_t count(std::uint64_t cap) const {
    std::vector<std::uint64_t> memo(size(), 0);
    std::vector<char> done(size(), 0);
    std::uint64_t total = 0;
    for (int r : game_.roots()) {
      if (winning(r)) total = sat_add(total, count_from(r, cap, memo, done), cap);
    }
    return total;
  }

  std::uint64_t count_from(int v, std::uint64_t cap,
                           std::vector<std::uint64_t>& memo,
                           std::vector<char>& done) const {
    if (!to_branch_[v]) return 1;
    if (done[v]) return memo[v];
    std::uint64_t sum = 0;
    for (const Transition& tr : useful_[v]) {
      const std::uint64_t l = count_from(child(v, tr, Dir::L), cap, memo, done);
      const std::uint64_t r = count_from(child(v, tr, Dir::R), cap, memo, done);
      sum = sat_add(sum, sat_mul(l, r, cap), cap);
    }
    done[v] = 1;
    memo[v] = sum;
    return sum;
  }

  WalkStep step(int v, const Transition& tr, Dir d) const {
    const auto [m, q] = game_.position(v);
    return {m, q, tr, d};
  }

  // Shortest walk from `from` inside allowed that ends with an edge into a
  // vertex satisfying target, or (when empty_ok) the empty walk if `from`
  // itself satisfies it.
  template <typename Target>
  std::optional<std::vector<WalkStep>> walk(int from,
                                            const std::vector<char>& allowed,
                                            Target target,
                                            bool empty_ok = true) const {
    if (empty_ok && target(from)) return std::vector<WalkStep>{};
    struct Parent {
      int from;
      Edge edge;
    };
    std::vector<std::optional<Parent>> parent(size());
    std::vector<char> seen(size(), 0);
    std::deque<int> queue{from};
    seen[from] = 1;
    auto unwind = [&](int v, const Edge& last) {
      std::vector<WalkStep> out{step(v, useful_[v][last.transition], last.dir)};
      while (v != from) {
        const Parent& p = *parent[v];
        out.push_back(step(p.from, useful_[p.from][p.edge.transition], p.edge.dir));
        v = p.from;
      }
      std::reverse(out.begin(), out.end());
      return out;
    };
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const Edge& e : edges_[v]) {
        if (!allowed[e.to]) continue;
        if (target(e.to)) return unwind(v, e);
        if (!seen[e.to]) {
          seen[e.to] = 1;
          parent[e.to] = Parent{v, e};
          queue.push_back(e.to);
        }
      }
    }
    return std::nullopt;
  }

  std::vector<WalkStep> walk_to(int from, int to,
                                const std::vector<char>& allowed) const {
    auto w = walk(from, allowed, [to](int v) { return v == to; });
    if (!w) throw Error(ErrorCode::PreconditionViolated, "no walk in component");
    return *std::move(w);
  }

  // A node at which p occurs in some accepting run.
  NodePath position_of(int p) const {
    std::vector<std::optional<std::pair<int, Dir>>> parent(size());
    std::vector<char> seen(size(), 0);
    std::deque<int> queue;
    for (int r : game_.roots()) {
      if (winning(r) && !seen[r]) {
        seen[r] = 1;
        queue.push_back(r);
      }
    }
    while (!queue.empty() && !seen[p]) {
      const int v = queue.front();
      queue.pop_front();
      for (const Edge& e : edges_[v]) {
        if (!seen[e.to]) {
          seen[e.to] = 1;
          parent[e.to] = std::pair{v, e.dir};
          queue.push_back(e.to);
        }
      }
    }
    std::vector<Dir> dirs;
    for (int v = p; parent[v]; v = parent[v]->first) dirs.push_back(parent[v]->second);
    NodePath path;
    for (auto it = dirs.rbegin(); it != dirs.rend(); ++it) path = path.child(*it);
    return path;
  }

  std::vector<RegularRun> residual_runs(int p) const;

 private:
  MembershipGame game_;
  WinningAnalysis win_;
  std::vector<std::vector<Transition>> useful_;
  std::vector<std::vector<Edge>> edges_;
  Digraph succ_;
  std::vector<char> reach_, branching_, to_branch_, cyclic_;
  bool infinite_ = false;
};

// Two runs from p: follow a shortest walk to a branching position, take
// its first or second useful transition there, and follow the winning
// strategy everywhere else.
std::vector<RegularRun> ProductAnalysis::residual_runs(int p) const {
  const std::vector<char> all(reach_.begin(), reach_.end());
  auto path = walk(p, all, [&](int v) { return branching_[v] != 0; });
  if (!path) {
    throw Error(ErrorCode::PreconditionViolated,
                "no branching position below the witness position");
  }
  const ParityTreeAutomaton& a = automaton();
  const auto [m0, q0] = game_.position(p);
  const RegularTree& t = tree();
  const int branch =
      path->empty() ? p
                    : child(game_.vertex_of(path->back().tree_state,
                                            path->back().state),
                            path->back().transition, path->back().dir);
  std::vector<RegularRun> runs;
  for (int pick = 0; pick < 2; ++pick) {
    std::vector<std::string> names;
    std::vector<int> out;
    std::vector<std::array<int, 2>> next;
    std::unordered_map<int, int> sigma_state;
    std::deque<int> pending;  // vertices of strategy states to expand
    auto add = [&](std::string name, int q) {
      names.push_back(std::move(name));
      out.push_back(q);
      next.push_back({-1, -1});
      return static_cast<int>(names.size()) - 1;
    };
    auto sigma = [&](int v) {
      auto [it, fresh] = sigma_state.try_emplace(v, -1);
      if (fresh) {
        const auto [m, q] = game_.position(v);
        it->second = add("s:" + t.state_name(m) + ":" + a.state_name(q), q);
        pending.push_back(v);
      }
      return it->second;
    };
    const int len = static_cast<int>(path->size());
    std::vector<int> walk_state;
    int v = p;
    for (int i = 0; i <= len; ++i) {
      walk_state.push_back(add("w" + std::to_string(i), game_.position(v).state));
      if (i < len) v = child(v, (*path)[i].transition, (*path)[i].dir);
    }
    v = p;
    for (int i = 0; i <= len; ++i) {
      const Transition tr = i < len ? (*path)[i].transition : useful_[branch][pick];
      for (Dir d : kDirs) {
        const int w = child(v, tr, d);
        next[walk_state[i]][idx(d)] =
            (i < len && d == (*path)[i].dir) ? walk_state[i + 1] : sigma(w);
      }
      if (i < len) v = child(v, tr, (*path)[i].dir);
    }
    while (!pending.empty()) {
      const int w = pending.front();
      pending.pop_front();
      const Transition tr = strategy_choice(w);
      const int s = sigma_state.at(w);
      for (Dir d : kDirs) {
        const int target = sigma(child(w, tr, d));
        next[s][idx(d)] = target;
      }
    }
    RegularTree machine("residual" + std::to_string(pick + 1),
                        Alphabet(a.state_names()), std::move(names),
                        std::move(out), std::move(next), walk_state[0]);
    const std::vector<int> root{q0};
    runs.emplace_back(std::move(machine), restrict_initials(a, root),
                      t.rooted_at(m0));
  }
  return runs;
}

int walk_max_color(const ParityTreeAutomaton& a,
                   const std::vector<WalkStep>& walk) {
  int c = 0;
  for (const WalkStep& s : walk) c = std::max(c, a.color(s.state));
  return c;
}

std::vector<WalkStep> concat(std::initializer_list<std::vector<WalkStep>> parts) {
  std::vector<WalkStep> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::optional<RegenerationWitness> infinite_witness(const ProductAnalysis& pa) {
  const ParityTreeAutomaton& a = pa.automaton();
  const RegularTree& t = pa.tree();
  std::vector<char> allowed(pa.size());
  for (int v = 0; v < pa.size(); ++v) allowed[v] = pa.reach(v) && pa.to_branch(v);
  for (int m = 0; m < t.num_states(); ++m) {
    for (int q = 0; q < a.num_states(); ++q) {
      const int p = pa.game().vertex_of(m, q);
      if (p < 0 || !allowed[p] || !pa.cyclic(p)) continue;
      RegenerationWitness w;
      w.mode = WitnessMode::Infinite;
      w.shape = RegenerationWitness::Shape::Cycle;
      w.tree_state = m;
      w.state = q;
      w.position = pa.position_of(p);
      w.spine = *pa.walk(p, allowed, [p](int v) { return v == p; }, false);
      w.spine_max_color = walk_max_color(a, w.spine);
      w.residuals = pa.residual_runs(p);
      return w;
    }
  }
  return std::nullopt;
}

std::optional<RegenerationWitness> uncountable_witness(const ProductAnalysis& pa) {
  const ParityTreeAutomaton& a = pa.automaton();
  const RegularTree& t = pa.tree();
  const int n = pa.size();
  int top = 0;
  for (int v = 0; v < n; ++v) {
    if (pa.reach(v)) top = std::max(top, pa.color(v));
  }
  // Components of the reachable useful graph restricted to colors <= c.
  std::map<int, std::vector<int>> comps;
  for (int c = top - top % 2; c >= 0; c -= 2) {
    std::vector<char> sub(n);
    for (int v = 0; v < n; ++v) sub[v] = pa.reach(v) && pa.color(v) <= c;
    comps[c] = strongly_connected(pa.succ(), sub);
  }
  for (int m = 0; m < t.num_states(); ++m) {
    for (int q = 0; q < a.num_states(); ++q) {
      const int p = pa.game().vertex_of(m, q);
      if (p < 0 || !pa.reach(p)) continue;
      for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
        const int c = it->first;
        const std::vector<int>& comp = it->second;
        if (comp[p] < 0) continue;
        std::vector<char> in(n, 0);
        int high = -1;
        for (int v = 0; v < n; ++v) {
          in[v] = comp[v] == comp[p];
          if (in[v] && pa.color(v) == c && high < 0) high = v;
        }
        if (high < 0) continue;
        RegenerationWitness w;
        w.mode = WitnessMode::Uncountable;
        w.tree_state = m;
        w.state = q;
        const std::vector<WalkStep> to_high = pa.walk_to(p, high, in);
        bool found = false;
        for (int x = 0; x < n && !found; ++x) {
          if (!in[x]) continue;
          for (const Edge& e : pa.edges(x)) {
            const Transition& tr = pa.useful(x)[e.transition];
            const int sibling = pa.child(x, tr, e.dir == Dir::L ? Dir::R : Dir::L);
            if (!in[e.to] || !pa.to_branch(sibling)) continue;
            std::vector<WalkStep> head = concat({to_high, pa.walk_to(high, x, in)});
            w.shape = RegenerationWitness::Shape::Branching;
            w.branch_step = static_cast<int>(head.size());
            w.spine = concat({head, {pa.step(x, tr, e.dir)}, pa.walk_to(e.to, p, in)});
            found = true;
            break;
          }
        }
        for (int x = 0; x < n && !found; ++x) {
          if (!in[x]) continue;
          std::vector<Edge> picks;
          for (const Edge& e : pa.edges(x)) {
            if (!in[e.to]) continue;
            if (std::ranges::none_of(picks, [&](const Edge& f) {
                  return f.transition == e.transition;
                })) {
              picks.push_back(e);
            }
          }
          if (picks.size() < 2) continue;
          const std::vector<WalkStep> head = concat({to_high, pa.walk_to(high, x, in)});
          auto closed = [&](const Edge& e) {
            return concat({head, {pa.step(x, pa.useful(x)[e.transition], e.dir)},
                           pa.walk_to(e.to, p, in)});
          };
          w.shape = RegenerationWitness::Shape::Sequential;
          w.spine = closed(picks[0]);
          w.alternative = closed(picks[1]);
          found = true;
        }
        if (!found) continue;
        w.position = pa.position_of(p);
        w.spine_max_color = std::max(walk_max_color(a, w.spine),
                                     walk_max_color(a, w.alternative));
        w.residuals = pa.residual_runs(p);
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<RegenerationWitness> find_witness(const ProductAnalysis& pa,
                                                WitnessMode mode) {
  return mode == WitnessMode::Infinite ? infinite_witness(pa)
                                       : uncountable_witness(pa);
}

// Key of a state of the k-distinct automaton.
struct DistinctState {
  std::vector<int> trackers;
  std::vector<char> searching;  // per pair i < j
  int dpw = 0;
  auto operator<=>(const DistinctState&) const = default;
};

}  // namespace

std::vector<bool> nonempty_states(const ParityTreeAutomaton& a) {
  if (a.num_states() == 0) return {};
  const EmptinessGame g = build_emptiness_game(a);
  const WinningAnalysis w = solve(g.arena);
  std::vector<bool> out(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) out[q] = w.wins(Player::Automaton, q);
  return out;
}

std::optional<RegularTree> emptiness(const ParityTreeAutomaton& a) {
  if (a.num_states() == 0 || a.initials().empty()) return std::nullopt;
  const EmptinessGame g = build_emptiness_game(a);
  const WinningAnalysis w = solve(g.arena);
  const int nq = a.num_states();
  int root = -1;
  for (int q : a.initials()) {
    if (w.wins(Player::Automaton, q)) {
      root = q;
      break;
    }
  }
  if (root < 0) return std::nullopt;
  std::vector<int> id(nq, -1);
  std::vector<int> order{root};
  id[root] = 0;
  std::vector<std::string> names;
  std::vector<int> out;
  std::vector<std::array<int, 2>> next;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int q = order[i];
    const auto [l, r] = g.pairs[w.automaton_strategy[q] - nq];
    int letter = -1;
    for (const Transition& tr : a.transitions_from(q)) {
      if (tr.left == l && tr.right == r) {
        letter = tr.letter;
        break;
      }
    }
    names.push_back(a.state_name(q));
    out.push_back(letter);
    std::array<int, 2> succ{};
    for (Dir d : kDirs) {
      const int c = d == Dir::L ? l : r;
      if (id[c] < 0) {
        id[c] = static_cast<int>(order.size());
        order.push_back(c);
      }
      succ[idx(d)] = id[c];
    }
    next.push_back(succ);
  }
  return RegularTree("witness_" + a.name(), a.alphabet(), std::move(names),
                     std::move(out), std::move(next), 0);
}

ParityTreeAutomaton k_distinct_runs_automaton(const ParityTreeAutomaton& a,
                                              int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const std::string name = "distinct" + std::to_string(k) + "(" + a.name() + ")";
  if (a.num_states() == 0 || a.initials().empty()) {
    return ParityTreeAutomaton::empty_marker(name, a.alphabet());
  }
  const int d = a.max_color();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  }
  const int np = static_cast<int>(pairs.size());
  // Tracker colors and checker bits folded into coordinates; a co-Buchi
  // coordinate absorbs everything with colors in {0, 1}.
  const bool fold = d <= 1;
  std::vector<int> maxes;
  if (fold) {
    maxes.push_back(1);
  } else {
    maxes.assign(k, d);
    if (np > 0) maxes.push_back(1);
  }
  std::optional<DetParityWordAutomaton> dpw;
  if (maxes.size() > 1) dpw = conjunction_dpw(maxes);
  auto coords = [&](const DistinctState& s) {
    std::vector<int> out;
    int low = 0;
    for (char b : s.searching) low = std::max(low, static_cast<int>(b));
    if (fold) {
      for (int q : s.trackers) low = std::max(low, a.color(q));
      out.push_back(low);
    } else {
      for (int q : s.trackers) out.push_back(a.color(q));
      if (np > 0) out.push_back(low);
    }
    return out;
  };

  std::map<DistinctState, int> index;
  std::vector<DistinctState> states;
  std::vector<std::string> names;
  std::set<std::string> used_names;
  std::vector<int> colors;
  auto intern = [&](DistinctState s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(states.size()));
    if (fresh) {
      std::string label;
      for (int i = 0; i < k; ++i) {
        label += (i ? "," : "") + a.state_name(s.trackers[i]);
      }
      label += "|";
      for (char b : s.searching) label += b ? '1' : '0';
      if (dpw) label += "|d" + std::to_string(s.dpw);
      if (!used_names.insert(label).second) {
        label += "#" + std::to_string(states.size());
        used_names.insert(label);
      }
      const std::vector<int> cs = coords(s);
      colors.push_back(dpw ? dpw->color(s.dpw) : cs[0]);
      names.push_back(std::move(label));
      states.push_back(std::move(s));
    }
    return it->second;
  };

  std::vector<int> initials;
  {
    const std::vector<int>& init = a.initials();
    std::vector<int> pick(k, 0);
    while (true) {
      DistinctState s;
      for (int i = 0; i < k; ++i) s.trackers.push_back(init[pick[i]]);
      s.searching.assign(np, 1);
      s.dpw = dpw ? dpw->init() : 0;
      initials.push_back(intern(std::move(s)));
      int i = 0;
      while (i < k && ++pick[i] == static_cast<int>(init.size())) pick[i++] = 0;
      if (i == k) break;
    }
  }

  std::vector<Transition> transitions;
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    const DistinctState s = states[cur];
    const int child_dpw = dpw ? dpw->step(s.dpw, dpw->encode(coords(s))) : 0;
    for (int letter = 0; letter < a.alphabet().size(); ++letter) {
      std::vector<std::span<const Transition>> options(k);
      bool blocked = false;
      for (int i = 0; i < k; ++i) {
        options[i] = a.transitions_from(s.trackers[i], letter);
        blocked = blocked || options[i].empty();
      }
      if (blocked) continue;
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        // Per pair: list of (left bit, right bit) alternatives.
        std::vector<std::vector<std::pair<char, char>>> alts(np);
        for (int p = 0; p < np; ++p) {
          const auto [i, j] = pairs[p];
          const Transition& ti = options[i][pick[i]];
          const Transition& tj = options[j][pick[j]];
          if (!s.searching[p] || s.trackers[i] != s.trackers[j] ||
              ti.left != tj.left || ti.right != tj.right) {
            alts[p] = {{0, 0}};
          } else {
            alts[p] = {{1, 0}, {0, 1}};
          }
        }
        std::vector<std::size_t> alt(np, 0);
        while (true) {
          DistinctState left{{}, std::vector<char>(np), child_dpw};
          DistinctState right{{}, std::vector<char>(np), child_dpw};
          for (int i = 0; i < k; ++i) {
            left.trackers.push_back(options[i][pick[i]].left);
            right.trackers.push_back(options[i][pick[i]].right);
          }
          for (int p = 0; p < np; ++p) {
            left.searching[p] = alts[p][alt[p]].first;
            right.searching[p] = alts[p][alt[p]].second;
          }
          const int l = intern(std::move(left));
          const int r = intern(std::move(right));
          transitions.push_back({static_cast<int>(cur), letter, l, r});
          int p = 0;
          while (p < np && ++alt[p] == alts[p].size()) alt[p++] = 0;
          if (p == np) break;
        }
        int i = 0;
        while (i < k && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == k) break;
      }
    }
  }
  return ParityTreeAutomaton(name, a.alphabet(), std::move(names),
                             std::move(colors), std::move(initials),
                             std::move(transitions));
}

RunCount count_runs(const ParityTreeAutomaton& a, const RegularTree& t,
                    std::uint64_t cap) {
  if (a.num_states() == 0 || a.initials().empty()) return {false, 0};
  const ProductAnalysis pa(a, t);
  if (pa.infinite()) return {true, cap};
  return {false, pa.count(cap)};
}

bool at_least_k(const ParityTreeAutomaton& a, const RegularTree& t, int k) {
  if (k <= 0) return true;
  const RunCount rc = count_runs(a, t, static_cast<std::uint64_t>(k));
  return rc.infinite || rc.count >= static_cast<std::uint64_t>(k);
}

bool at_least_k_product(const ParityTreeAutomaton& a, const RegularTree& t,
                        int k) {
  if (k <= 0) return true;
  const ParityTreeAutomaton product = k_distinct_runs_automaton(a, k);
  if (product.initials().empty()) return false;
  return member(product, t);
}

bool is_k_ambiguous(const ParityTreeAutomaton& a, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const ParityTreeAutomaton trimmed = trim_useful(a);
  if (trimmed.initials().empty()) return true;
  // Cheap refutations first: the emptiness witness and the constant trees.
  std::vector<RegularTree> probes;
  if (auto w = emptiness(trimmed)) probes.push_back(*std::move(w));
  for (const std::string& sym : trimmed.alphabet().symbols()) {
    probes.push_back(RegularTree::constant(trimmed.alphabet(), sym));
  }
  for (const RegularTree& t : probes) {
    if (at_least_k(trimmed, t, k + 1)) return false;
  }
  return !emptiness(k_distinct_runs_automaton(trimmed, k + 1)).has_value();
}

std::string_view shape_name(RegenerationWitness::Shape shape) {
  switch (shape) {
    case RegenerationWitness::Shape::Cycle:
      return "cycle";
    case RegenerationWitness::Shape::Branching:
      return "branching";
    case RegenerationWitness::Shape::Sequential:
      return "sequential";
  }
  return "?";
}

std::optional<RegenerationWitness> find_regeneration_witness(
    const ParityTreeAutomaton& a, const RegularTree& t, WitnessMode mode) {
  if (a.num_states() == 0 || a.initials().empty() || !member(a, t)) {
    throw Error(ErrorCode::NotMember,
                "'" + t.name() + "' is not accepted by '" + a.name() + "'");
  }
  const ProductAnalysis pa(a, t);
  return find_witness(pa, mode);
}

namespace {

// At least two accepting runs of a from state q on the subtree at tree
// state m.
bool two_runs_from(const ParityTreeAutomaton& a, const RegularTree& t, int m,
                   int q) {
  const std::vector<int> root{q};
  const RunCount rc = count_runs(restrict_initials(a, root), t.rooted_at(m), 2);
  return rc.infinite || rc.count >= 2;
}

bool accepted_from(const ParityTreeAutomaton& a, const RegularTree& t, int m,
                   int q) {
  const std::vector<int> root{q};
  return member(restrict_initials(a, root), t.rooted_at(m));
}

// Some accepting run carries q at node v: follow v keeping every state
// reachable through transitions whose children both accept.
bool occurs_at(const ParityTreeAutomaton& a, const RegularTree& t,
               const NodePath& v, int q) {
  std::set<int> states;
  for (int q0 : a.initials()) {
    if (accepted_from(a, t, t.init(), q0)) states.insert(q0);
  }
  int m = t.init();
  for (Dir d : v.dirs()) {
    const auto letter = a.alphabet().find(t.alphabet().name(t.out(m)));
    std::set<int> next;
    for (int s : states) {
      for (const Transition& tr : a.transitions_from(s, letter.value_or(0))) {
        if (accepted_from(a, t, t.next(m, Dir::L), tr.left) &&
            accepted_from(a, t, t.next(m, Dir::R), tr.right)) {
          next.insert(tr.child(d));
        }
      }
    }
    states = std::move(next);
    m = t.next(m, d);
  }
  return states.contains(q);
}

// Empty when walk is a closed walk from (m, q) of transitions whose
// children all carry accepting runs.
std::string check_walk(const ParityTreeAutomaton& a, const RegularTree& t,
                       const std::vector<WalkStep>& walk, int m, int q) {
  if (walk.empty()) return "empty walk";
  int cm = m, cq = q;
  for (const WalkStep& s : walk) {
    if (s.tree_state != cm || s.state != cq) return "walk is not connected";
    const Transition& tr = s.transition;
    const auto letter = a.alphabet().find(t.alphabet().name(t.out(cm)));
    if (tr.state != cq || !letter || tr.letter != *letter || !a.has_transition(tr)) {
      return "walk uses a transition that does not apply";
    }
    for (Dir d : kDirs) {
      if (!accepted_from(a, t, t.next(cm, d), tr.child(d))) {
        return "walk transition has a child without accepting runs";
      }
    }
    cm = t.next(cm, s.dir);
    cq = tr.child(s.dir);
  }
  if (cm != m || cq != q) return "walk does not return to its start";
  return {};
}

}  // namespace

std::string check_witness(const ParityTreeAutomaton& a, const RegularTree& t,
                          const RegenerationWitness& w) {
  if (w.tree_state < 0 || w.tree_state >= t.num_states() || w.state < 0 ||
      w.state >= a.num_states()) {
    return "position out of range";
  }
  if (t.state_at(w.position) != w.tree_state) {
    return "node does not carry the witness tree state";
  }
  // p must occur at the node in some accepting run: graft the residual
  // run under an accepting run and test it.
  if (w.residuals.size() != 2) return "expected two residual runs";
  const RegularTree sub = t.rooted_at(w.tree_state);
  for (const RegularRun& r : w.residuals) {
    if (r.root_state() != w.state) return "residual run starts elsewhere";
    if (!tree_equal(r.tree(), sub)) return "residual run is on another tree";
    if (!run_is_accepting(r)) return "residual run is not accepting";
  }
  if (!runs_differ(w.residuals[0], w.residuals[1])) return "residual runs coincide";
  if (!occurs_at(a, t, w.position, w.state)) {
    return "state does not occur at the node in any accepting run";
  }
  if (std::string e = check_walk(a, t, w.spine, w.tree_state, w.state); !e.empty()) {
    return "spine: " + e;
  }
  if (w.mode == WitnessMode::Infinite) {
    if (!two_runs_from(a, t, w.tree_state, w.state)) {
      return "witness position has a single run";
    }
    return {};
  }
  const int spine_max =
      std::max(walk_max_color(a, w.spine), walk_max_color(a, w.alternative));
  if (spine_max != w.spine_max_color) return "recorded spine maximum is wrong";
  if (spine_max % 2 != 0) return "spine maximum is odd";
  if (w.shape == RegenerationWitness::Shape::Branching) {
    if (w.branch_step < 0 || w.branch_step >= static_cast<int>(w.spine.size())) {
      return "branch step out of range";
    }
    const WalkStep& s = w.spine[w.branch_step];
    const Dir other = s.dir == Dir::L ? Dir::R : Dir::L;
    if (!two_runs_from(a, t, t.next(s.tree_state, other),
                       s.transition.child(other))) {
      return "sibling at the branch step has a single run";
    }
    return {};
  }
  if (w.shape == RegenerationWitness::Shape::Sequential) {
    if (std::string e = check_walk(a, t, w.alternative, w.tree_state, w.state);
        !e.empty()) {
      return "alternative: " + e;
    }
    if (walk_max_color(a, w.alternative) % 2 != 0) return "alternative maximum is odd";
    const std::size_t n = std::min(w.spine.size(), w.alternative.size());
    for (std::size_t i = 0; i < n; ++i) {
      const WalkStep& x = w.spine[i];
      const WalkStep& y = w.alternative[i];
      if (x.transition == y.transition && x.dir == y.dir) continue;
      if (x.transition == y.transition) return "walks diverge without a choice";
      return {};
    }
    return "walks do not diverge";
  }
  return "cycle shape for an uncountable witness";
}

std::string AmbiguityVerdict::str() const {
  switch (kind) {
    case Kind::Exact:
      return "exact " + std::to_string(n);
    case Kind::AtLeast:
      return "at_least " + std::to_string(n);
    case Kind::Infinite:
      return "infinite";
    case Kind::Uncountable:
      return "uncountable";
  }
  return "?";
}

AmbiguityVerdict classify(const ParityTreeAutomaton& a, const RegularTree& t,
                          int max_k) {
  if (max_k < 0) throw Error(ErrorCode::InvalidArgument, "max-k must be >= 0");
  if (a.num_states() == 0 || a.initials().empty()) return AmbiguityVerdict::exact(0);
  const ProductAnalysis pa(a, t);
  if (!pa.member()) return AmbiguityVerdict::exact(0);
  if (auto w = find_witness(pa, WitnessMode::Uncountable)) {
    return {AmbiguityVerdict::Kind::Uncountable, 0, std::move(w)};
  }
  if (pa.infinite()) {
    return {AmbiguityVerdict::Kind::Infinite, 0,
            find_witness(pa, WitnessMode::Infinite)};
  }
  const std::uint64_t cap = static_cast<std::uint64_t>(max_k) + 1;
  const std::uint64_t n = pa.count(cap);
  if (n <= static_cast<std::uint64_t>(max_k)) return AmbiguityVerdict::exact(n);
  return {AmbiguityVerdict::Kind::AtLeast, cap, {}};
}

}  // namespace treeamb
