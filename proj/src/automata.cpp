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

#include "treeamb/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "treeamb/ambiguity.hpp"

namespace treeamb {

// ------------------------------------------------------ ParityTreeAutomaton

ParityTreeAutomaton::ParityTreeAutomaton(std::string name, Alphabet alphabet,
                                         std::vector<std::string> state_names,
                                         std::vector<int> colors,
                                         std::vector<int> initials,
                                         std::vector<Transition> transitions)
    : name_(std::move(name)),
      alphabet_(std::move(alphabet)),
      names_(std::move(state_names)),
      colors_(std::move(colors)),
      initials_(std::move(initials)),
      transitions_(std::move(transitions)) {
  const int n = num_states();
  const int k = alphabet_.size();
  if (static_cast<int>(colors_.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "color table size mismatch");
  }
  for (int q = 0; q < n; ++q) {
    if (colors_[q] < 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "negative color on '" + names_[q] + "'");
    }
    if (!index_.emplace(names_[q], q).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate state '" + names_[q] + "'");
    }
  }
  auto check_state = [n](int q) {
    if (q < 0 || q >= n) {
      throw Error(ErrorCode::UnknownState, "state id out of range");
    }
  };
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()),
                  initials_.end());
  for (int q : initials_) check_state(q);
  for (const Transition& tr : transitions_) {
    check_state(tr.state);
    check_state(tr.left);
    check_state(tr.right);
    if (tr.letter < 0 || tr.letter >= k) {
      throw Error(ErrorCode::AlphabetMismatch, "transition letter out of range");
    }
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                     transitions_.end());
  offset_.assign(static_cast<std::size_t>(n) * k + 1, 0);
  for (const Transition& tr : transitions_) {
    ++offset_[tr.state * k + tr.letter + 1];
  }
  for (std::size_t i = 1; i < offset_.size(); ++i) offset_[i] += offset_[i - 1];
}

ParityTreeAutomaton ParityTreeAutomaton::empty_marker(std::string name,
                                                      Alphabet alphabet) {
  return ParityTreeAutomaton(std::move(name), std::move(alphabet), {}, {}, {},
                             {});
}

int ParityTreeAutomaton::max_color() const {
  return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

bool ParityTreeAutomaton::is_initial(int q) const {
  return std::binary_search(initials_.begin(), initials_.end(), q);
}

std::span<const Transition> ParityTreeAutomaton::transitions_from(
    int q, int letter) const {
  const int k = alphabet_.size();
  const int lo = offset_[q * k + letter];
  const int hi = offset_[q * k + letter + 1];
  return std::span<const Transition>(transitions_).subspan(lo, hi - lo);
}

std::span<const Transition> ParityTreeAutomaton::transitions_from(int q) const {
  const int k = alphabet_.size();
  const int lo = offset_[q * k];
  const int hi = offset_[(q + 1) * k];
  return std::span<const Transition>(transitions_).subspan(lo, hi - lo);
}

bool ParityTreeAutomaton::has_transition(const Transition& tr) const {
  if (tr.state < 0 || tr.state >= num_states() || tr.letter < 0 ||
      tr.letter >= alphabet_.size()) {
    return false;
  }
  auto span = transitions_from(tr.state, tr.letter);
  return std::binary_search(span.begin(), span.end(), tr);
}

std::optional<int> ParityTreeAutomaton::find_state(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ParityTreeAutomaton::state_index(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw Error(ErrorCode::UnknownState, "no state '" + std::string(name) +
                                           "' in '" + name_ + "'");
}

ParityTreeAutomaton ParityTreeAutomaton::renamed(std::string name) const {
  return ParityTreeAutomaton(std::move(name), alphabet_, names_, colors_,
                             initials_, transitions_);
}

ParityTreeAutomaton ParityTreeAutomaton::with_alphabet(
    const Alphabet& alphabet) const {
  std::vector<Transition> trs;
  trs.reserve(transitions_.size());
  for (Transition tr : transitions_) {
    tr.letter = alphabet.index(alphabet_.name(tr.letter));
    trs.push_back(tr);
  }
  return ParityTreeAutomaton(name_, alphabet, names_, colors_, initials_,
                             std::move(trs));
}

ParityTreeAutomaton ParityTreeAutomaton::prefixed(
    const std::string& prefix) const {
  std::vector<std::string> names;
  names.reserve(names_.size());
  for (const auto& s : names_) names.push_back(prefix + s);
  return ParityTreeAutomaton(name_, alphabet_, std::move(names), colors_,
                             initials_, transitions_);
}

// --------------------------------------------------------------- PtaBuilder

int PtaBuilder::add_state(std::string name, int color) {
  const int id = num_states();
  if (!index_.emplace(name, id).second) {
    throw Error(ErrorCode::InvalidArgument, "duplicate state '" + name + "'");
  }
  names_.push_back(std::move(name));
  colors_.push_back(color);
  return id;
}

int PtaBuilder::state(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownState,
                "undeclared state '" + std::string(name) + "'");
  }
  return it->second;
}

int PtaBuilder::embed(const ParityTreeAutomaton& a, const std::string& prefix) {
  const int base = num_states();
  for (int q = 0; q < a.num_states(); ++q) {
    add_state(prefix + a.state_name(q), a.color(q));
  }
  for (const Transition& tr : a.transitions()) {
    add_transition(base + tr.state,
                   alphabet_.index(a.alphabet().name(tr.letter)),
                   base + tr.left, base + tr.right);
  }
  return base;
}

ParityTreeAutomaton PtaBuilder::build() const {
  return ParityTreeAutomaton(name_, alphabet_, names_, colors_, initials_,
                             transitions_);
}

// --------------------------------------------------- DetParityWordAutomaton

DetParityWordAutomaton::DetParityWordAutomaton(std::vector<int> radices,
                                               std::vector<int> colors,
                                               std::vector<int> delta, int init)
    : radices_(std::move(radices)),
      colors_(std::move(colors)),
      delta_(std::move(delta)),
      init_(init) {
  for (int r : radices_) num_letters_ *= r;
  if (delta_.size() != colors_.size() * num_letters_) {
    throw Error(ErrorCode::InvalidArgument, "word automaton is not total");
  }
}

int DetParityWordAutomaton::encode(std::span<const int> coords) const {
  int letter = 0;
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    letter = letter * radices_[i] + coords[i];
  }
  return letter;
}

bool DetParityWordAutomaton::accepts_lasso(std::span<const int> stem,
                                           std::span<const int> cycle) const {
  int s = init_;
  for (int a : stem) s = step(s, a);
  std::map<int, int> first_seen;  // cycle-start state -> iteration
  std::vector<int> iteration_max;
  while (!first_seen.count(s)) {
    first_seen[s] = static_cast<int>(iteration_max.size());
    int best = 0;
    for (int a : cycle) {
      s = step(s, a);
      best = std::max(best, color(s));
    }
    iteration_max.push_back(best);
  }
  int inf_max = 0;
  for (std::size_t i = first_seen[s]; i < iteration_max.size(); ++i) {
    inf_max = std::max(inf_max, iteration_max[i]);
  }
  return inf_max % 2 == 0;
}

// Index appearance record over Streett pairs. Coordinate j with odd color c
// yields the pair (seen c, seen above c); the coordinate's parity condition
// is the conjunction of its pairs. A record is a permutation of the pairs;
// pairs whose upper event fires move to the back.
DetParityWordAutomaton conjunction_dpw(std::span<const int> max_colors) {
  struct Pair {
    int coord;
    int color;
  };
  std::vector<Pair> pairs;
  std::vector<int> radices;
  for (int j = 0; j < static_cast<int>(max_colors.size()); ++j) {
    if (max_colors[j] < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative maximal color");
    }
    radices.push_back(max_colors[j] + 1);
    for (int c = 1; c <= max_colors[j]; c += 2) pairs.push_back({j, c});
  }
  const int n = static_cast<int>(pairs.size());
  int num_letters = 1;
  for (int r : radices) num_letters *= r;

  using Record = std::pair<std::vector<int>, int>;  // permutation, color
  std::map<Record, int> ids;
  std::vector<Record> records;
  std::vector<int> delta;
  auto intern = [&](Record rec) {
    auto [it, fresh] = ids.try_emplace(rec, static_cast<int>(records.size()));
    if (fresh) records.push_back(std::move(rec));
    return it->second;
  };
  std::vector<int> identity(n);
  for (int i = 0; i < n; ++i) identity[i] = i;
  intern({identity, 0});

  std::vector<int> coords(radices.size());
  for (std::size_t s = 0; s < records.size(); ++s) {
    for (int letter = 0; letter < num_letters; ++letter) {
      int rest = letter;
      for (std::size_t j = 0; j < radices.size(); ++j) {
        coords[j] = rest % radices[j];
        rest /= radices[j];
      }
      const std::vector<int> perm = records[s].first;
      int first_green = -1;
      int first_red = -1;
      std::vector<int> stay;
      std::vector<int> moved;
      for (int pos = 0; pos < n; ++pos) {
        const Pair& p = pairs[perm[pos]];
        const int seen = coords[p.coord];
        if (seen > p.color) {
          if (first_green < 0) first_green = pos;
          moved.push_back(perm[pos]);
        } else {
          if (seen == p.color && first_red < 0) first_red = pos;
          stay.push_back(perm[pos]);
        }
      }
      int color = 0;
      if (first_green >= 0) color = std::max(color, 2 * (n - first_green));
      if (first_red >= 0) color = std::max(color, 2 * (n - first_red) - 1);
      stay.insert(stay.end(), moved.begin(), moved.end());
      delta.push_back(intern({std::move(stay), color}));
    }
  }
  std::vector<int> colors;
  colors.reserve(records.size());
  for (const auto& rec : records) colors.push_back(rec.second);
  return DetParityWordAutomaton(std::move(radices), std::move(colors),
                                std::move(delta), 0);
}

DetParityWordAutomaton conjunction_dpw(int d1, int d2) {
  const int maxes[2] = {d1, d2};
  return conjunction_dpw(maxes);
}

// ------------------------------------------------------------ constructions

ParityTreeAutomaton trim_useful(const ParityTreeAutomaton& a) {
  const std::vector<bool> nonempty = nonempty_states(a);
  std::vector<bool> useful(a.num_states(), false);
  std::vector<int> stack;
  for (int q : a.initials()) {
    if (nonempty[q] && !useful[q]) {
      useful[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (const Transition& tr : a.transitions_from(q)) {
      if (!nonempty[tr.left] || !nonempty[tr.right]) continue;
      for (int c : {tr.left, tr.right}) {
        if (!useful[c]) {
          useful[c] = true;
          stack.push_back(c);
        }
      }
    }
  }
  std::vector<int> remap(a.num_states(), -1);
  std::vector<std::string> names;
  std::vector<int> colors;
  for (int q = 0; q < a.num_states(); ++q) {
    if (useful[q]) {
      remap[q] = static_cast<int>(names.size());
      names.push_back(a.state_name(q));
      colors.push_back(a.color(q));
    }
  }
  if (names.empty()) return ParityTreeAutomaton::empty_marker(a.name(), a.alphabet());
  std::vector<int> initials;
  for (int q : a.initials()) {
    if (useful[q]) initials.push_back(remap[q]);
  }
  std::vector<Transition> trs;
  for (const Transition& tr : a.transitions()) {
    if (useful[tr.state] && nonempty[tr.left] && nonempty[tr.right]) {
      trs.push_back({remap[tr.state], tr.letter, remap[tr.left], remap[tr.right]});
    }
  }
  return ParityTreeAutomaton(a.name(), a.alphabet(), std::move(names),
                             std::move(colors), std::move(initials),
                             std::move(trs));
}

ParityTreeAutomaton union_of(const ParityTreeAutomaton& a1,
                             const ParityTreeAutomaton& a2) {
  if (!(a1.alphabet() == a2.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch,
                "union of '" + a1.name() + "' and '" + a2.name() +
                    "' over different alphabets");
  }
  std::string p1 = a1.name() + ".";
  std::string p2 = a2.name() + ".";
  if (p1 == p2) {
    p1 = a1.name() + "#1.";
    p2 = a2.name() + "#2.";
  }
  PtaBuilder b("union(" + a1.name() + "," + a2.name() + ")", a1.alphabet());
  const int base1 = b.embed(a1, p1);
  const int base2 = b.embed(a2, p2);
  for (int q : a1.initials()) b.add_initial(base1 + q);
  for (int q : a2.initials()) b.add_initial(base2 + q);
  return b.build();
}

ParityTreeAutomaton intersect(const ParityTreeAutomaton& a1,
                              const ParityTreeAutomaton& a2) {
  const Alphabet sigma = a1.alphabet().intersected(a2.alphabet());
  if (sigma.empty()) {
    throw Error(ErrorCode::AlphabetMismatch,
                "'" + a1.name() + "' and '" + a2.name() +
                    "' share no letters");
  }
  const std::string name = "intersect(" + a1.name() + "," + a2.name() + ")";
  if (a1.is_empty_marker() || a2.is_empty_marker()) {
    return ParityTreeAutomaton::empty_marker(name, sigma);
  }
  const DetParityWordAutomaton d = conjunction_dpw(a1.max_color(), a2.max_color());
  std::vector<int> letter1(sigma.size());
  std::vector<int> letter2(sigma.size());
  for (int a = 0; a < sigma.size(); ++a) {
    letter1[a] = a1.alphabet().index(sigma.name(a));
    letter2[a] = a2.alphabet().index(sigma.name(a));
  }
  using Key = std::tuple<int, int, int>;
  std::map<Key, int> ids;
  std::vector<Key> keys;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.try_emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
  };
  std::vector<int> initials;
  for (int q : a1.initials()) {
    for (int p : a2.initials()) initials.push_back(intern({q, p, d.init()}));
  }
  std::vector<Transition> trs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto [q, p, s] = keys[i];
    const int coords[2] = {a1.color(q), a2.color(p)};
    const int s2 = d.step(s, d.encode(coords));
    for (int a = 0; a < sigma.size(); ++a) {
      for (const Transition& t1 : a1.transitions_from(q, letter1[a])) {
        for (const Transition& t2 : a2.transitions_from(p, letter2[a])) {
          const int l = intern({t1.left, t2.left, s2});
          const int r = intern({t1.right, t2.right, s2});
          trs.push_back({static_cast<int>(i), a, l, r});
        }
      }
    }
  }
  std::vector<std::string> names;
  std::vector<int> colors;
  for (const auto& [q, p, s] : keys) {
    names.push_back(a1.state_name(q) + "&" + a2.state_name(p) + "&d" +
                    std::to_string(s));
    colors.push_back(d.color(s));
  }
  return ParityTreeAutomaton(name, sigma, std::move(names), std::move(colors),
                             std::move(initials), std::move(trs));
}

ParityTreeAutomaton restrict_initials(const ParityTreeAutomaton& a,
                                      std::span<const int> initials) {
  for (int q : initials) {
    if (q < 0 || q >= a.num_states()) {
      throw Error(ErrorCode::UnknownState, "restricted initial out of range");
    }
  }
  return ParityTreeAutomaton(
      a.name(), a.alphabet(), a.state_names(), a.colors(),
      std::vector<int>(initials.begin(), initials.end()),
      std::vector<Transition>(a.transitions().begin(), a.transitions().end()));
}

ParityTreeAutomaton restrict_initials(const ParityTreeAutomaton& a,
                                      std::span<const std::string> initials) {
  std::vector<int> ids;
  for (const auto& name : initials) ids.push_back(a.state_index(name));
  return restrict_initials(a, ids);
}

ParityTreeAutomaton single_initial(const ParityTreeAutomaton& a) {
  std::string fresh = "init";
  while (a.find_state(fresh)) fresh += "'";
  std::vector<std::string> names = a.state_names();
  std::vector<int> colors = a.colors();
  const int q0 = a.num_states();
  names.push_back(fresh);
  colors.push_back(1);
  std::vector<Transition> trs(a.transitions().begin(), a.transitions().end());
  for (int q : a.initials()) {
    for (const Transition& tr : a.transitions_from(q)) {
      trs.push_back({q0, tr.letter, tr.left, tr.right});
    }
  }
  return ParityTreeAutomaton(a.name(), a.alphabet(), std::move(names),
                             std::move(colors), {q0}, std::move(trs));
}

ParityTreeAutomaton moore_reduction(const ParityTreeAutomaton& a2,
                                    const MooreMachine& m) {
  // Output letter of every Moore state, as a letter of a2 (or -1).
  std::vector<int> out_letter(m.num_states());
  for (int p = 0; p < m.num_states(); ++p) {
    const std::string& sym = m.output().name(m.out(p));
    auto letter = a2.alphabet().find(sym);
    if (!letter && p != m.init()) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "Moore output '" + sym + "' is not a letter of '" +
                      a2.name() + "'");
    }
    out_letter[p] = letter.value_or(-1);
  }
  const std::string name = "reduce(" + a2.name() + "," + m.name() + ")";
  // A state (q, p) holds the Moore state before the current label is read.
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> keys;
  auto intern = [&](int q, int p) {
    auto [it, fresh] = ids.try_emplace({q, p}, static_cast<int>(keys.size()));
    if (fresh) keys.emplace_back(q, p);
    return it->second;
  };
  std::vector<int> initials;
  for (int q : a2.initials()) initials.push_back(intern(q, m.init()));
  std::vector<Transition> trs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto [q, p] = keys[i];
    for (int a = 0; a < m.input().size(); ++a) {
      const int after = m.delta(p, a);
      if (out_letter[after] < 0) {
        throw Error(ErrorCode::AlphabetMismatch,
                    "Moore output of '" + m.state_name(after) +
                        "' is not a letter of '" + a2.name() + "'");
      }
      for (const Transition& tr : a2.transitions_from(q, out_letter[after])) {
        trs.push_back({static_cast<int>(i), a, intern(tr.left, after),
                       intern(tr.right, after)});
      }
    }
  }
  std::vector<std::string> names;
  std::vector<int> colors;
  for (const auto& [q, p] : keys) {
    names.push_back(a2.state_name(q) + "|" + m.state_name(p));
    colors.push_back(a2.color(q));
  }
  return ParityTreeAutomaton(name, m.input(), std::move(names),
                             std::move(colors), std::move(initials),
                             std::move(trs));
}

ParityTreeAutomaton det_pta_for_tree(const RegularTree& t) {
  std::vector<Transition> trs;
  for (int s = 0; s < t.num_states(); ++s) {
    trs.push_back({s, t.out(s), t.next(s, Dir::L), t.next(s, Dir::R)});
  }
  return ParityTreeAutomaton("det_" + t.name(), t.alphabet(), t.state_names(),
                             std::vector<int>(t.num_states(), 0), {t.init()},
                             std::move(trs));
}

// ------------------------------------------------------ finite tree automata

FiniteLabeledTree::FiniteLabeledTree(
    std::span<const std::pair<NodePath, std::string>> nodes) {
  std::map<NodePath, std::string> labels;
  for (const auto& [v, label] : nodes) {
    if (!labels.emplace(v, label).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "node '" + v.str() + "' listed twice");
    }
  }
  if (!labels.count(NodePath())) {
    throw Error(ErrorCode::InvalidArgument, "finite tree without a root");
  }
  for (const auto& [v, label] : labels) {
    if (!v.empty() && !labels.count(v.prefix(v.size() - 1))) {
      throw Error(ErrorCode::InvalidArgument,
                  "node '" + v.str() + "' has no parent");
    }
    if (labels.count(v.child(Dir::L)) != labels.count(v.child(Dir::R))) {
      throw Error(ErrorCode::InvalidArgument,
                  "node '" + v.str() + "' has exactly one child");
    }
  }
  // Preorder layout with the root first.
  std::vector<std::pair<NodePath, int>> stack{{NodePath(), -1}};
  std::vector<std::pair<int, Dir>> parent_slot;
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    const int id = size();
    nodes_.push_back({labels.at(v), -1, -1});
    if (parent >= 0) {
      if (nodes_[parent].left < 0) {
        nodes_[parent].left = id;
      } else {
        nodes_[parent].right = id;
      }
    }
    if (labels.count(v.child(Dir::L))) {
      stack.push_back({v.child(Dir::R), id});
      stack.push_back({v.child(Dir::L), id});
    }
  }
}

std::vector<std::pair<NodePath, std::string>> FiniteLabeledTree::labeled_paths()
    const {
  std::vector<std::pair<NodePath, std::string>> out;
  std::vector<std::pair<int, NodePath>> stack{{0, NodePath()}};
  while (!stack.empty()) {
    auto [i, v] = stack.back();
    stack.pop_back();
    out.emplace_back(v, nodes_[i].label);
    if (!nodes_[i].is_leaf()) {
      stack.push_back({nodes_[i].right, v.child(Dir::R)});
      stack.push_back({nodes_[i].left, v.child(Dir::L)});
    }
  }
  return out;
}

FiniteTreeAutomaton::FiniteTreeAutomaton(
    std::string name, Alphabet leaf_alphabet, Alphabet inner_alphabet,
    std::vector<std::string> state_names, std::vector<int> initials,
    std::vector<LeafTransition> leaves, std::vector<Transition> inner)
    : name_(std::move(name)),
      leaf_alphabet_(std::move(leaf_alphabet)),
      inner_alphabet_(std::move(inner_alphabet)),
      names_(std::move(state_names)),
      initials_(std::move(initials)),
      leaves_(std::move(leaves)),
      inner_(std::move(inner)) {
  const int n = num_states();
  auto check_state = [n](int q) {
    if (q < 0 || q >= n) throw Error(ErrorCode::UnknownState, "FTA state out of range");
  };
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()), initials_.end());
  for (int q : initials_) check_state(q);
  for (const auto& lt : leaves_) {
    check_state(lt.state);
    if (lt.symbol < 0 || lt.symbol >= leaf_alphabet_.size()) {
      throw Error(ErrorCode::AlphabetMismatch, "FTA leaf symbol out of range");
    }
  }
  for (const auto& tr : inner_) {
    check_state(tr.state);
    check_state(tr.left);
    check_state(tr.right);
    if (tr.letter < 0 || tr.letter >= inner_alphabet_.size()) {
      throw Error(ErrorCode::AlphabetMismatch, "FTA inner symbol out of range");
    }
  }
  std::sort(leaves_.begin(), leaves_.end());
  leaves_.erase(std::unique(leaves_.begin(), leaves_.end()), leaves_.end());
  std::sort(inner_.begin(), inner_.end());
  inner_.erase(std::unique(inner_.begin(), inner_.end()), inner_.end());
}

bool FiniteTreeAutomaton::is_initial(int q) const {
  return std::binary_search(initials_.begin(), initials_.end(), q);
}

namespace {

std::vector<bool> states_at(const FiniteTreeAutomaton& b,
                            const FiniteLabeledTree& tau, int i) {
  const auto& node = tau.node(i);
  std::vector<bool> here(b.num_states(), false);
  if (node.is_leaf()) {
    auto sym = b.leaf_alphabet().find(node.label);
    if (!sym) {
      throw Error(ErrorCode::SortMismatch,
                  "leaf label '" + node.label + "' is not a leaf symbol");
    }
    for (const auto& lt : b.leaves()) {
      if (lt.symbol == *sym) here[lt.state] = true;
    }
    return here;
  }
  auto sym = b.inner_alphabet().find(node.label);
  if (!sym) {
    throw Error(ErrorCode::SortMismatch,
                "inner label '" + node.label + "' is not an inner symbol");
  }
  const auto left = states_at(b, tau, node.left);
  const auto right = states_at(b, tau, node.right);
  for (const auto& tr : b.inner()) {
    if (tr.letter == *sym && left[tr.left] && right[tr.right]) here[tr.state] = true;
  }
  return here;
}

}  // namespace

bool fta_accepts(const FiniteTreeAutomaton& b, const FiniteLabeledTree& tau) {
  const auto root = states_at(b, tau, tau.root());
  return std::any_of(b.initials().begin(), b.initials().end(),
                     [&](int q) { return root[q]; });
}

// Least set of (q1, q2, differ) such that some finite tree has two
// computations rooted at q1 and q2 which differ somewhere iff differ.
bool fta_is_unambiguous(const FiniteTreeAutomaton& b) {
  const int n = b.num_states();
  std::vector<char> have(static_cast<std::size_t>(n) * n * 2, 0);
  auto at = [n](int q1, int q2, int f) { return (q1 * n + q2) * 2 + f; };
  for (const auto& x : b.leaves()) {
    for (const auto& y : b.leaves()) {
      if (x.symbol == y.symbol) have[at(x.state, y.state, x.state != y.state)] = 1;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t1 : b.inner()) {
      for (const auto& t2 : b.inner()) {
        if (t1.letter != t2.letter) continue;
        for (int fl = 0; fl < 2; ++fl) {
          if (!have[at(t1.left, t2.left, fl)]) continue;
          for (int fr = 0; fr < 2; ++fr) {
            if (!have[at(t1.right, t2.right, fr)]) continue;
            const int f = (t1.state != t2.state) || fl || fr;
            char& slot = have[at(t1.state, t2.state, f)];
            if (!slot) {
              slot = 1;
              changed = true;
            }
          }
        }
      }
    }
  }
  for (int q1 : b.initials()) {
    for (int q2 : b.initials()) {
      if (have[at(q1, q2, 1)]) return false;
    }
  }
  return true;
}

FiniteTreeAutomaton fta_unambiguous_equivalent(const FiniteTreeAutomaton& b) {
  using Subset = std::vector<int>;
  std::map<Subset, int> ids;
  std::vector<Subset> subsets;
  auto intern = [&](Subset s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<int>(subsets.size()));
    if (fresh) subsets.push_back(std::move(s));
    return it->second;
  };
  std::vector<LeafTransition> leaves;
  for (int x = 0; x < b.leaf_alphabet().size(); ++x) {
    Subset s;
    for (const auto& lt : b.leaves()) {
      if (lt.symbol == x) s.push_back(lt.state);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty()) leaves.push_back({intern(std::move(s)), x});
  }
  std::set<Transition> inner;
  bool changed = true;
  while (changed) {
    changed = false;
    const int count = static_cast<int>(subsets.size());
    for (int a = 0; a < b.inner_alphabet().size(); ++a) {
      for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
          std::vector<bool> in_l(b.num_states(), false);
          std::vector<bool> in_r(b.num_states(), false);
          for (int q : subsets[i]) in_l[q] = true;
          for (int q : subsets[j]) in_r[q] = true;
          Subset s;
          for (const auto& tr : b.inner()) {
            if (tr.letter == a && in_l[tr.left] && in_r[tr.right]) {
              s.push_back(tr.state);
            }
          }
          std::sort(s.begin(), s.end());
          s.erase(std::unique(s.begin(), s.end()), s.end());
          if (s.empty()) continue;
          const int before = static_cast<int>(subsets.size());
          const int id = intern(std::move(s));
          if (inner.insert({id, a, i, j}).second || id >= before) changed = true;
        }
      }
    }
  }
  std::vector<std::string> names;
  std::vector<int> initials;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::string name = "{";
    bool initial = false;
    for (std::size_t k = 0; k < subsets[i].size(); ++k) {
      if (k) name += ",";
      name += b.state_name(subsets[i][k]);
      initial = initial || b.is_initial(subsets[i][k]);
    }
    names.push_back(name + "}");
    if (initial) initials.push_back(static_cast<int>(i));
  }
  return FiniteTreeAutomaton(b.name() + "_det", b.leaf_alphabet(),
                             b.inner_alphabet(), std::move(names),
                             std::move(initials), std::move(leaves),
                             std::vector<Transition>(inner.begin(), inner.end()));
}

}  // namespace treeamb
