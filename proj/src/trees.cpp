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

#include "treeamb/trees.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace treeamb {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  for (int i = 0; i < size(); ++i) {
    if (symbols_[i].empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty symbol name");
    }
    if (!index_.emplace(symbols_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

std::optional<int> Alphabet::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::index(std::string_view symbol) const {
  if (auto i = find(symbol)) return *i;
  throw Error(ErrorCode::AlphabetMismatch,
              "symbol '" + std::string(symbol) + "' not in alphabet");
}

Alphabet Alphabet::merged(const Alphabet& other) const {
  std::vector<std::string> syms = symbols_;
  for (const auto& s : other.symbols_) {
    if (!contains(s)) syms.push_back(s);
  }
  return Alphabet(std::move(syms));
}

Alphabet Alphabet::intersected(const Alphabet& other) const {
  std::vector<std::string> syms;
  for (const auto& s : symbols_) {
    if (other.contains(s)) syms.push_back(s);
  }
  return Alphabet(std::move(syms));
}

bool Alphabet::includes(const Alphabet& other) const {
  return std::all_of(other.symbols_.begin(), other.symbols_.end(),
                     [&](const std::string& s) { return contains(s); });
}

// ---------------------------------------------------------------- NodePath

NodePath::NodePath(std::string_view text) {
  if (text == "-" || text == "\xCE\xB5" || text == "eps") return;
  for (char ch : text) {
    if (ch == 'l') {
      dirs_.push_back(Dir::L);
    } else if (ch == 'r') {
      dirs_.push_back(Dir::R);
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "node path '" + std::string(text) +
                      "' contains a character other than l and r");
    }
  }
}

NodePath NodePath::repeat(Dir d, int count) {
  return NodePath(std::vector<Dir>(static_cast<std::size_t>(count), d));
}

NodePath NodePath::child(Dir d) const {
  std::vector<Dir> dirs = dirs_;
  dirs.push_back(d);
  return NodePath(std::move(dirs));
}

NodePath NodePath::prefix(std::size_t n) const {
  return NodePath(std::vector<Dir>(dirs_.begin(), dirs_.begin() + n));
}

bool NodePath::is_prefix_of(const NodePath& other) const {
  return size() <= other.size() &&
         std::equal(dirs_.begin(), dirs_.end(), other.dirs_.begin());
}

std::string NodePath::str() const {
  if (dirs_.empty()) return "-";
  std::string s;
  for (Dir d : dirs_) s.push_back(dir_char(d));
  return s;
}

// ------------------------------------------------------------- RegularTree

namespace {

// Reachable states from init in BFS-independent original order.
std::vector<bool> reachable_from(const std::vector<std::array<int, 2>>& next,
                                 int init) {
  std::vector<bool> seen(next.size(), false);
  if (init < 0) return seen;
  std::vector<int> stack{init};
  seen[init] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : next[s]) {
      if (t >= 0 && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

RegularTree::RegularTree(std::string name, Alphabet alphabet,
                         std::vector<std::string> state_names,
                         std::vector<int> out,
                         std::vector<std::array<int, 2>> next, int init)
    : name_(std::move(name)), alphabet_(std::move(alphabet)) {
  const int n = static_cast<int>(state_names.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "tree without states");
  if (static_cast<int>(out.size()) != n || static_cast<int>(next.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "tree tables have unequal sizes");
  }
  if (init < 0 || init >= n) {
    throw Error(ErrorCode::UnknownState, "tree init out of range");
  }
  for (int s = 0; s < n; ++s) {
    if (out[s] < 0 || out[s] >= alphabet_.size()) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "state '" + state_names[s] + "' outputs an unknown symbol");
    }
    for (int t : next[s]) {
      if (t < 0 || t >= n) {
        throw Error(ErrorCode::UnknownState,
                    "state '" + state_names[s] + "' has a missing successor");
      }
    }
  }
  std::vector<bool> keep = reachable_from(next, init);
  std::vector<int> remap(n, -1);
  for (int s = 0; s < n; ++s) {
    if (keep[s]) {
      remap[s] = static_cast<int>(names_.size());
      names_.push_back(std::move(state_names[s]));
      out_.push_back(out[s]);
    }
  }
  for (int s = 0; s < n; ++s) {
    if (keep[s]) next_.push_back({remap[next[s][0]], remap[next[s][1]]});
  }
  init_ = remap[init];
  std::set<std::string> distinct(names_.begin(), names_.end());
  if (distinct.size() != names_.size()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate tree state names");
  }
}

RegularTree RegularTree::constant(const Alphabet& alphabet,
                                  std::string_view symbol, std::string name) {
  if (name.empty()) name = "t_" + std::string(symbol);
  return RegularTree(std::move(name), alphabet, {"s0"},
                     {alphabet.index(symbol)}, {{0, 0}}, 0);
}

int RegularTree::state_at(const NodePath& v) const {
  int s = init_;
  for (Dir d : v.dirs()) s = next(s, d);
  return s;
}

std::vector<int> RegularTree::used_symbols() const {
  std::set<int> used(out_.begin(), out_.end());
  return {used.begin(), used.end()};
}

RegularTree RegularTree::renamed(std::string name) const {
  RegularTree copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

RegularTree RegularTree::rooted_at(int state) const {
  return RegularTree(name_, alphabet_, names_, out_, next_, state);
}

RegularTree RegularTree::with_alphabet(const Alphabet& alphabet) const {
  std::vector<int> out(out_.size());
  for (std::size_t s = 0; s < out_.size(); ++s) {
    out[s] = alphabet.index(alphabet_.name(out_[s]));
  }
  return RegularTree(name_, alphabet, names_, std::move(out), next_, init_);
}

// -------------------------------------------------------- RegularAntichain

RegularAntichain::RegularAntichain(std::string name,
                                   std::vector<std::string> state_names,
                                   std::vector<bool> accepting,
                                   std::vector<std::array<int, 2>> next,
                                   int init)
    : name_(std::move(name)),
      names_(std::move(state_names)),
      accepting_(std::move(accepting)),
      next_(std::move(next)),
      init_(init) {
  const int n = static_cast<int>(names_.size());
  if (static_cast<int>(accepting_.size()) != n ||
      static_cast<int>(next_.size()) != n) {
    throw Error(ErrorCode::InvalidArgument,
                "antichain tables have unequal sizes");
  }
  if (init_ < -1 || init_ >= n || (n > 0 && init_ < 0)) {
    throw Error(ErrorCode::UnknownState, "antichain init out of range");
  }
  for (const auto& row : next_) {
    for (int t : row) {
      if (t < -1 || t >= n) {
        throw Error(ErrorCode::UnknownState, "antichain edge out of range");
      }
    }
  }
}

RegularAntichain RegularAntichain::empty_set(std::string name) {
  return RegularAntichain(std::move(name), {}, {}, {}, -1);
}

RegularAntichain RegularAntichain::singleton(const NodePath& v,
                                             std::string name) {
  if (name.empty()) name = "at_" + v.str();
  const int n = static_cast<int>(v.size()) + 1;
  std::vector<std::string> names;
  std::vector<bool> acc(n, false);
  std::vector<std::array<int, 2>> next(n, {-1, -1});
  for (int i = 0; i < n; ++i) {
    names.push_back("p" + std::to_string(i));
    if (i + 1 < n) next[i][idx(v[i])] = i + 1;
  }
  acc[n - 1] = true;
  return RegularAntichain(std::move(name), std::move(names), std::move(acc),
                          std::move(next), 0);
}

bool RegularAntichain::accepts(const NodePath& v) const {
  int s = init_;
  for (Dir d : v.dirs()) {
    if (s < 0) return false;
    s = next(s, d);
  }
  return s >= 0 && accepting(s);
}

bool RegularAntichain::is_antichain() const {
  std::vector<bool> reach = reachable_from(next_, init_);
  for (int a = 0; a < num_states(); ++a) {
    if (!reach[a] || !accepting(a)) continue;
    std::vector<bool> seen(num_states(), false);
    std::vector<int> stack;
    for (int t : next_[a]) {
      if (t >= 0 && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      if (accepting(s)) return false;
      for (int t : next_[s]) {
        if (t >= 0 && !seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  return true;
}

RegularAntichain left_spine_right_children() {
  return RegularAntichain("lstar_r", {"spine", "hit"}, {false, true},
                          {{{0, 1}}, {{-1, -1}}}, 0);
}

// ------------------------------------------------------------ MooreMachine

MooreMachine::MooreMachine(std::string name, Alphabet input, Alphabet output,
                           std::vector<std::string> state_names,
                           std::vector<int> out,
                           std::vector<std::vector<int>> delta, int init)
    : name_(std::move(name)),
      input_(std::move(input)),
      output_(std::move(output)),
      names_(std::move(state_names)),
      out_(std::move(out)),
      delta_(std::move(delta)),
      init_(init) {
  const int n = static_cast<int>(names_.size());
  if (n == 0 || static_cast<int>(out_.size()) != n ||
      static_cast<int>(delta_.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "malformed Moore machine tables");
  }
  if (init_ < 0 || init_ >= n) {
    throw Error(ErrorCode::UnknownState, "Moore machine init out of range");
  }
  for (int s = 0; s < n; ++s) {
    if (out_[s] < 0 || out_[s] >= output_.size()) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "Moore state '" + names_[s] + "' outputs an unknown symbol");
    }
    if (static_cast<int>(delta_[s].size()) != input_.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "Moore state '" + names_[s] + "' is not total");
    }
    for (int t : delta_[s]) {
      if (t < 0 || t >= n) {
        throw Error(ErrorCode::UnknownState, "Moore transition out of range");
      }
    }
  }
}

MooreMachine MooreMachine::constant(const Alphabet& input,
                                    const Alphabet& output,
                                    std::string_view symbol) {
  return MooreMachine("const_" + std::string(symbol), input, output, {"k"},
                      {output.index(symbol)},
                      {std::vector<int>(input.size(), 0)}, 0);
}

MooreMachine MooreMachine::last_letter(const Alphabet& alphabet) {
  // State 0 is the start; state i+1 remembers letter i.
  const int n = alphabet.size();
  std::vector<std::string> names{"start"};
  std::vector<int> out{0};
  std::vector<std::vector<int>> delta;
  std::vector<int> row(n);
  for (int a = 0; a < n; ++a) row[a] = a + 1;
  delta.push_back(row);
  for (int a = 0; a < n; ++a) {
    names.push_back("last_" + alphabet.name(a));
    out.push_back(a);
    delta.push_back(row);
  }
  return MooreMachine("identity", alphabet, alphabet, std::move(names),
                      std::move(out), std::move(delta), 0);
}

// --------------------------------------------------------- tree operations

namespace {

// Collects states for a machine under construction.
struct TreeBuilder {
  std::vector<std::string> names;
  std::vector<int> out;
  std::vector<std::array<int, 2>> next;

  int add(std::string name, int symbol) {
    names.push_back(std::move(name));
    out.push_back(symbol);
    next.push_back({-1, -1});
    return static_cast<int>(names.size()) - 1;
  }

  // Appends a copy of t with prefixed names, mapping its symbols into
  // alphabet. Returns the offset of the copy.
  int copy(const RegularTree& t, const std::string& prefix,
           const Alphabet& alphabet) {
    const int base = static_cast<int>(names.size());
    for (int s = 0; s < t.num_states(); ++s) {
      add(prefix + t.state_name(s),
          alphabet.index(t.alphabet().name(t.out(s))));
    }
    for (int s = 0; s < t.num_states(); ++s) {
      next[base + s] = {base + t.next(s, Dir::L), base + t.next(s, Dir::R)};
    }
    return base;
  }

  RegularTree build(std::string name, Alphabet alphabet, int init) {
    return RegularTree(std::move(name), std::move(alphabet), std::move(names),
                       std::move(out), std::move(next), init);
  }
};

}  // namespace

RegularTree subtree_at(const RegularTree& t, const NodePath& v) {
  return t.rooted_at(t.state_at(v));
}

RegularTree graft_node(const RegularTree& t1, const RegularTree& t2,
                       const NodePath& v) {
  const Alphabet sigma = t1.alphabet().merged(t2.alphabet());
  TreeBuilder b;
  const int n = static_cast<int>(v.size());
  // Prefix states v0..v(n-1) come first so that the root is state 0.
  int s = t1.init();
  std::vector<int> along;
  for (int i = 0; i < n; ++i) {
    b.add("v" + std::to_string(i), sigma.index(t1.alphabet().name(t1.out(s))));
    along.push_back(s);
    s = t1.next(s, v[i]);
  }
  const int base1 = b.copy(t1, "1.", sigma);
  const int base2 = b.copy(t2, "2.", sigma);
  for (int i = 0; i < n; ++i) {
    for (Dir d : kDirs) {
      if (d == v[i]) {
        b.next[i][idx(d)] = (i + 1 == n) ? base2 + t2.init() : i + 1;
      } else {
        b.next[i][idx(d)] = base1 + t1.next(along[i], d);
      }
    }
  }
  const int init = n == 0 ? base2 + t2.init() : 0;
  return b.build(t1.name() + "_graft_" + v.str(), sigma, init);
}

RegularTree graft_antichain(const RegularTree& t1, const RegularTree& t2,
                            const RegularAntichain& y) {
  if (!y.is_antichain()) {
    throw Error(ErrorCode::AntichainViolation,
                "'" + y.name() + "' accepts two comparable nodes");
  }
  const Alphabet sigma = t1.alphabet().merged(t2.alphabet());
  const std::string name = t1.name() + "_graft_" + y.name();
  if (y.init() < 0) {
    return t1.with_alphabet(sigma).renamed(name);
  }
  if (y.accepting(y.init())) {
    return t2.with_alphabet(sigma).renamed(name);
  }
  TreeBuilder b;
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int a, int s) {
    auto [it, fresh] = ids.try_emplace({a, s}, -1);
    if (fresh) {
      it->second = b.add(y.state_name(a) + "|" + t1.state_name(s),
                         sigma.index(t1.alphabet().name(t1.out(s))));
      queue.emplace_back(a, s);
    }
    return it->second;
  };
  intern(y.init(), t1.init());
  // Product states are created first; the copies follow and are patched in.
  std::vector<std::tuple<int, Dir, int, int>> pending;  // (src, dir, kind, s)
  while (!queue.empty()) {
    auto [a, s] = queue.front();
    queue.pop_front();
    const int src = ids.at({a, s});
    for (Dir d : kDirs) {
      const int a2 = y.next(a, d);
      const int s2 = t1.next(s, d);
      if (a2 < 0) {
        pending.emplace_back(src, d, 1, s2);
      } else if (y.accepting(a2)) {
        pending.emplace_back(src, d, 2, t2.init());
      } else {
        b.next[src][idx(d)] = intern(a2, s2);
      }
    }
  }
  const int base1 = b.copy(t1, "1.", sigma);
  const int base2 = b.copy(t2, "2.", sigma);
  for (auto [src, d, kind, s] : pending) {
    b.next[src][idx(d)] = (kind == 1 ? base1 : base2) + s;
  }
  return b.build(name, sigma, 0);
}

RegularTree make_node(std::string_view symbol, const RegularTree& t1,
                      const RegularTree& t2) {
  const Alphabet sigma = t1.alphabet().merged(t2.alphabet());
  if (!sigma.contains(symbol)) {
    throw Error(ErrorCode::AlphabetMismatch,
                "root symbol '" + std::string(symbol) +
                    "' is in neither subtree alphabet");
  }
  TreeBuilder b;
  b.add("root", sigma.index(symbol));
  const int base1 = b.copy(t1, "1.", sigma);
  const int base2 = b.copy(t2, "2.", sigma);
  b.next[0] = {base1 + t1.init(), base2 + t2.init()};
  return b.build("node_" + std::string(symbol), sigma, 0);
}

RegularTree relabel(const MooreMachine& f, const RegularTree& t) {
  std::vector<int> letter(t.alphabet().size(), -1);
  for (int a : t.used_symbols()) {
    auto i = f.input().find(t.alphabet().name(a));
    if (!i) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "tree symbol '" + t.alphabet().name(a) +
                      "' is not an input of '" + f.name() + "'");
    }
    letter[a] = *i;
  }
  // A product state (p, m) holds the machine state before reading the
  // label of the current node.
  TreeBuilder b;
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int p, int m) {
    auto [it, fresh] = ids.try_emplace({p, m}, -1);
    if (fresh) {
      const int after = f.delta(p, letter[t.out(m)]);
      it->second = b.add(f.state_name(p) + "|" + t.state_name(m), f.out(after));
      queue.emplace_back(p, m);
    }
    return it->second;
  };
  intern(f.init(), t.init());
  while (!queue.empty()) {
    auto [p, m] = queue.front();
    queue.pop_front();
    const int src = ids.at({p, m});
    const int after = f.delta(p, letter[t.out(m)]);
    for (Dir d : kDirs) b.next[src][idx(d)] = intern(after, t.next(m, d));
  }
  return b.build(f.name() + "(" + t.name() + ")", f.output(), 0);
}

bool tree_equal(const RegularTree& t1, const RegularTree& t2) {
  std::set<std::pair<int, int>> seen{{t1.init(), t2.init()}};
  std::vector<std::pair<int, int>> stack{{t1.init(), t2.init()}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (t1.alphabet().name(t1.out(a)) != t2.alphabet().name(t2.out(b))) {
      return false;
    }
    for (Dir d : kDirs) {
      std::pair<int, int> nxt{t1.next(a, d), t2.next(b, d)};
      if (seen.insert(nxt).second) stack.push_back(nxt);
    }
  }
  return true;
}

RegularTree tree_with_labels(
    const Alphabet& alphabet, std::string_view background,
    std::span<const std::pair<NodePath, std::string>> labels,
    std::string name) {
  std::map<NodePath, int> label_of;
  std::set<NodePath> trie{NodePath()};
  for (const auto& [v, sym] : labels) {
    label_of[v] = alphabet.index(sym);
    for (std::size_t i = 0; i <= v.size(); ++i) trie.insert(v.prefix(i));
  }
  TreeBuilder b;
  std::map<NodePath, int> id;
  for (const NodePath& v : trie) {
    auto it = label_of.find(v);
    id[v] = b.add("n" + v.str(), it == label_of.end()
                                     ? alphabet.index(background)
                                     : it->second);
  }
  const int sink = b.add("rest", alphabet.index(background));
  b.next[sink] = {sink, sink};
  for (const NodePath& v : trie) {
    for (Dir d : kDirs) {
      auto it = id.find(v.child(d));
      b.next[id[v]][idx(d)] = it == id.end() ? sink : it->second;
    }
  }
  if (name.empty()) name = "t_labels";
  return b.build(std::move(name), alphabet, id[NodePath()]);
}

}  // namespace treeamb
