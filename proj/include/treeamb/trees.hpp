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
// Regular infinite binary trees given by Moore machines over {l,r}, and
// the tree operations built on them: subtrees, grafting, node
// construction, letter-by-prefix relabeling and equality.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeamb/error.hpp"

namespace treeamb {

enum class Dir : int { L = 0, R = 1 };

inline constexpr std::array<Dir, 2> kDirs = {Dir::L, Dir::R};

inline constexpr int idx(Dir d) { return static_cast<int>(d); }
inline constexpr char dir_char(Dir d) { return d == Dir::L ? 'l' : 'r'; }

// An ordered, duplicate-free list of symbol names. Symbol identity is by
// name and case-sensitive.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }
  const std::string& name(int i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<int> find(std::string_view symbol) const;
  bool contains(std::string_view symbol) const { return find(symbol).has_value(); }
  // Throws AlphabetMismatch when absent.
  int index(std::string_view symbol) const;

  // Symbols of *this followed by the new symbols of other.
  Alphabet merged(const Alphabet& other) const;
  // Symbols of *this that also occur in other, in the order of *this.
  Alphabet intersected(const Alphabet& other) const;
  bool includes(const Alphabet& other) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

// A finite word over {l,r}; the empty word is the root.
class NodePath {
 public:
  NodePath() = default;
  // Accepts "", "-" and "ε" for the root; otherwise only 'l' and 'r'.
  explicit NodePath(std::string_view text);
  explicit NodePath(std::vector<Dir> dirs) : dirs_(std::move(dirs)) {}

  static NodePath repeat(Dir d, int count);

  std::size_t size() const { return dirs_.size(); }
  bool empty() const { return dirs_.empty(); }
  Dir operator[](std::size_t i) const { return dirs_[i]; }
  std::span<const Dir> dirs() const { return dirs_; }

  NodePath child(Dir d) const;
  NodePath prefix(std::size_t n) const;
  bool is_prefix_of(const NodePath& other) const;
  // "l", "rl", ...; the root prints as "-".
  std::string str() const;

  auto operator<=>(const NodePath&) const = default;

 private:
  std::vector<Dir> dirs_;
};

// A Moore machine over the directions {l,r}. It denotes the tree whose
// label at v is out(next*(init, v)). Construction validates totality and
// drops unreachable states, keeping the relative order of the others.
class RegularTree {
 public:
  RegularTree(std::string name, Alphabet alphabet,
              std::vector<std::string> state_names, std::vector<int> out,
              std::vector<std::array<int, 2>> next, int init);

  // The tree with every node labeled symbol.
  static RegularTree constant(const Alphabet& alphabet, std::string_view symbol,
                              std::string name = {});

  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(out_.size()); }
  int init() const { return init_; }
  int out(int state) const { return out_[state]; }
  int next(int state, Dir d) const { return next_[state][idx(d)]; }
  const std::string& state_name(int state) const { return names_[state]; }
  const std::vector<std::string>& state_names() const { return names_; }

  int state_at(const NodePath& v) const;
  int label_at(const NodePath& v) const { return out(state_at(v)); }
  const std::string& symbol_at(const NodePath& v) const {
    return alphabet_.name(label_at(v));
  }
  // Indices of symbols produced by some reachable state, ascending.
  std::vector<int> used_symbols() const;

  RegularTree renamed(std::string name) const;
  // Same machine, re-rooted at state; unreachable states are dropped.
  RegularTree rooted_at(int state) const;
  // Same machine over a larger alphabet.
  RegularTree with_alphabet(const Alphabet& alphabet) const;

 private:
  std::string name_;
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<int> out_;
  std::vector<std::array<int, 2>> next_;
  int init_ = 0;
};

// A deterministic acceptor over {l,r} whose accepted words form an
// antichain. A missing transition (-1) rejects every extension.
class RegularAntichain {
 public:
  RegularAntichain(std::string name, std::vector<std::string> state_names,
                   std::vector<bool> accepting,
                   std::vector<std::array<int, 2>> next, int init);

  static RegularAntichain empty_set(std::string name = "empty");
  static RegularAntichain singleton(const NodePath& v, std::string name = {});

  const std::string& name() const { return name_; }
  int num_states() const { return static_cast<int>(accepting_.size()); }
  int init() const { return init_; }
  bool accepting(int state) const { return accepting_[state]; }
  int next(int state, Dir d) const { return next_[state][idx(d)]; }
  const std::string& state_name(int state) const { return names_[state]; }

  bool accepts(const NodePath& v) const;
  // True when no accepting state reachable from init reaches an accepting
  // state by a nonempty path.
  bool is_antichain() const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<std::array<int, 2>> next_;
  int init_ = -1;
};

// A deterministic Moore machine from one alphabet to another. Its output
// on a word is out(delta*(init, word)); the empty word is never queried
// by relabeling.
class MooreMachine {
 public:
  MooreMachine(std::string name, Alphabet input, Alphabet output,
               std::vector<std::string> state_names, std::vector<int> out,
               std::vector<std::vector<int>> delta, int init);

  // Outputs symbol on every nonempty word.
  static MooreMachine constant(const Alphabet& input, const Alphabet& output,
                               std::string_view symbol);
  // Outputs the last letter read.
  static MooreMachine last_letter(const Alphabet& alphabet);

  const std::string& name() const { return name_; }
  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  int num_states() const { return static_cast<int>(out_.size()); }
  int init() const { return init_; }
  int out(int state) const { return out_[state]; }
  int delta(int state, int letter) const { return delta_[state][letter]; }
  const std::string& state_name(int state) const { return names_[state]; }

 private:
  std::string name_;
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> names_;
  std::vector<int> out_;
  std::vector<std::vector<int>> delta_;
  int init_ = 0;
};

RegularTree subtree_at(const RegularTree& t, const NodePath& v);
RegularTree graft_node(const RegularTree& t1, const RegularTree& t2,
                       const NodePath& v);
RegularTree graft_antichain(const RegularTree& t1, const RegularTree& t2,
                            const RegularAntichain& y);
RegularTree make_node(std::string_view symbol, const RegularTree& t1,
                      const RegularTree& t2);
RegularTree relabel(const MooreMachine& f, const RegularTree& t);
bool tree_equal(const RegularTree& t1, const RegularTree& t2);

// The tree labeled background everywhere except at the listed nodes.
RegularTree tree_with_labels(
    const Alphabet& alphabet, std::string_view background,
    std::span<const std::pair<NodePath, std::string>> labels,
    std::string name = {});

// The acceptor of l^k r for all k >= 0.
RegularAntichain left_spine_right_children();

}  // namespace treeamb
