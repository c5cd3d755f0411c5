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

#include "treeamb/zoo.hpp"

#include <map>
#include <set>

#include "treeamb/error.hpp"

namespace treeamb {

namespace {

Alphabet letters(std::initializer_list<const char*> names) {
  std::vector<std::string> out;
  for (const char* n : names) out.emplace_back(n);
  return Alphabet(std::move(out));
}

// Sends `carry` down one child and `rest` down the other, both ways.
void pass_down(PtaBuilder& b, int q, int letter, int carry, int rest) {
  b.add_transition(q, letter, carry, rest);
  b.add_transition(q, letter, rest, carry);
}

RegularTree constant_tree(const char* sym) {
  return RegularTree::constant(letters({sym}), sym);
}

}  // namespace

ParityTreeAutomaton zoo_neg_union(int k) {
  if (k < 1 || k > 4) {
    throw Error(ErrorCode::InvalidArgument, "neg_union needs 1 <= k <= 4");
  }
  std::vector<std::string> syms{"c"};
  for (int i = 1; i <= k; ++i) syms.push_back("a" + std::to_string(i));
  PtaBuilder b("neg_union" + std::to_string(k), Alphabet(syms));
  for (int i = 1; i <= k; ++i) {
    const int q = b.add_state("n" + std::to_string(i), 0);
    b.add_initial(q);
    for (int a = 0; a < b.alphabet().size(); ++a) {
      if (a != i) b.add_transition(q, a, q, q);
    }
  }
  return b.build();
}

ParityTreeAutomaton zoo_exists_a1() {
  PtaBuilder b("exists_a1", letters({"c", "a1"}));
  const int seek = b.add_state("seek", 1);
  const int done = b.add_state("done", 0);
  const int c = b.letter("c");
  const int a1 = b.letter("a1");
  b.add_initial(seek);
  pass_down(b, seek, c, seek, done);
  b.add_transition(seek, a1, done, done);
  for (int a : {c, a1}) b.add_transition(done, a, done, done);
  return b.build();
}

ParityTreeAutomaton zoo_complement_singleton(const RegularTree& t,
                                             const Alphabet& sigma) {
  if (!sigma.includes(t.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch,
                "alphabet does not contain the labels of '" + t.name() + "'");
  }
  PtaBuilder b("not_" + t.name(), sigma);
  const int n = t.num_states();
  // found(p) = p, searching(p) = n + p
  for (int p = 0; p < n; ++p) b.add_state("q." + t.state_name(p), 0);
  for (int p = 0; p < n; ++p) b.add_state("q'." + t.state_name(p), 1);
  b.add_initial(n + t.init());
  for (int p = 0; p < n; ++p) {
    const int l = t.next(p, Dir::L);
    const int r = t.next(p, Dir::R);
    const int out = sigma.index(t.alphabet().name(t.out(p)));
    for (int a = 0; a < sigma.size(); ++a) {
      b.add_transition(p, a, l, r);
      if (a != out) {
        b.add_transition(n + p, a, l, r);
      } else {
        b.add_transition(n + p, a, n + l, r);
        b.add_transition(n + p, a, l, n + r);
      }
    }
  }
  return b.build();
}

ParityTreeAutomaton zoo_complement_singleton(const RegularTree& t) {
  return zoo_complement_singleton(t, t.alphabet());
}

ParityTreeAutomaton zoo_lfa() {
  const Alphabet sigma = letters({"a1", "a2", "c"});
  PtaBuilder b("lfa", sigma);
  const int q1 = b.add_state("q1", 1);
  const int q2 = b.add_state("q2", 1);
  b.add_initial(q1);
  const ParityTreeAutomaton ac =
      det_pta_for_tree(constant_tree("c")).with_alphabet(sigma);
  const ParityTreeAutomaton aa1 =
      det_pta_for_tree(constant_tree("a1")).with_alphabet(sigma);
  const ParityTreeAutomaton nab = zoo_neg_union(2).with_alphabet(sigma);
  const int base_c = b.embed(ac, "c.");
  const int base_a1 = b.embed(aa1, "a1.");
  const int base_nab = b.embed(nab, "nab.");
  const int c = b.letter("c");
  const int a1 = b.letter("a1");
  for (int p : ac.initials()) {
    b.add_transition(q1, c, q1, base_c + p);
    b.add_transition(q2, c, q2, base_c + p);
  }
  for (int p : nab.initials()) b.add_transition(q1, c, q2, base_nab + p);
  for (int p : aa1.initials()) {
    b.add_transition(q2, a1, base_a1 + p, base_a1 + p);
  }
  return b.build();
}

RegularTree lfa_tree(int k, int m, const RegularTree& tprime) {
  if (k < 0 || m <= k) throw Error(ErrorCode::InvalidArgument, "lfa_tree needs 0 <= k < m");
  const Alphabet sigma = letters({"a1", "a2", "c"});
  const RegularTree tc = RegularTree::constant(sigma, "c");
  const RegularTree ta1 = RegularTree::constant(sigma, "a1");
  const NodePath at_k = NodePath::repeat(Dir::L, k).child(Dir::R);
  const RegularTree with_prime =
      graft_node(tc, tprime.with_alphabet(sigma), at_k);
  return graft_node(with_prime, ta1, NodePath::repeat(Dir::L, m))
      .renamed("lfa_tree_" + std::to_string(k) + "_" + std::to_string(m));
}

RegularTree lfa_tree(int m) {
  const Alphabet sigma = letters({"a1", "a2", "c"});
  const RegularTree tc = RegularTree::constant(sigma, "c");
  const RegularTree ta1 = RegularTree::constant(sigma, "a1");
  return graft_node(tc, ta1, NodePath::repeat(Dir::L, m))
      .renamed("lfa_tree_" + std::to_string(m));
}

ParityTreeAutomaton zoo_frak_scheme(const ParityTreeAutomaton& a0,
                                    const ParityTreeAutomaton& anb) {
  if (!(a0.alphabet() == anb.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch,
                "scheme components need equal alphabets");
  }
  if (!a0.alphabet().contains("c")) {
    throw Error(ErrorCode::AlphabetMismatch, "scheme alphabet lacks 'c'");
  }
  PtaBuilder b("frak(" + a0.name() + "," + anb.name() + ")", a0.alphabet());
  const int g = b.add_state("g", 2);
  const int w = b.add_state("w", 1);
  b.add_initial(w);
  const int base0 = b.embed(a0, "0.");
  const int base_nb = b.embed(anb, "nb.");
  const int c = b.letter("c");
  for (int spine : {g, w}) {
    for (int p : anb.initials()) {
      b.add_transition(g, c, spine, base_nb + p);
      b.add_transition(w, c, spine, base_nb + p);
    }
    for (int p : a0.initials()) b.add_transition(w, c, spine, base0 + p);
  }
  return b.build();
}

ParityTreeAutomaton zoo_no_max() {
  PtaBuilder b("no_max", letters({"0", "1"}));
  const int f = b.add_state("F", 0);
  const int n = b.add_state("N", 1);
  const int h = b.add_state("H", 2);
  const int zero = b.letter("0");
  const int one = b.letter("1");
  // Every 1 node is in H. N and H owe a 1 strictly below.
  b.add_initial(f);
  b.add_initial(h);
  for (int x : {f, h}) {
    for (int y : {f, h}) b.add_transition(f, zero, x, y);
  }
  for (int owed : {n, h}) {
    for (int free : {f, h}) {
      pass_down(b, n, zero, owed, free);
      pass_down(b, h, one, owed, free);
    }
  }
  return b.build();
}

ParityTreeAutomaton zoo_perf() {
  PtaBuilder b("perf", letters({"0", "1"}));
  const int f = b.add_state("F", 0);
  const int n = b.add_state("N", 1);
  const int s = b.add_state("S", 1);
  const int kept = b.add_state("K", 1);
  const int h = b.add_state("H", 2);
  const int zero = b.letter("0");
  const int one = b.letter("1");
  // 1 nodes are in K or H. N owes one 1 strictly below. S, K and H owe two
  // incomparable ones; K inherited its parent's pair unsplit.
  b.add_initial(n);
  b.add_initial(h);
  for (int x : {f, h}) {
    for (int y : {f, h}) b.add_transition(f, zero, x, y);
  }
  for (int free : {f, h}) {
    for (int owed : {n, h}) pass_down(b, n, zero, owed, free);
  }
  for (auto [q, letter] : {std::pair{s, zero}, std::pair{kept, one}, std::pair{h, one}}) {
    for (int x : {n, h}) {
      for (int y : {n, h}) b.add_transition(q, letter, x, y);
    }
    for (int owed : {s, kept}) {
      for (int free : {f, h}) pass_down(b, q, letter, owed, free);
    }
  }
  return b.build();
}

ParityTreeAutomaton zoo_x_subset_ydown() {
  PtaBuilder b("x_subset_ydown", letters({"00", "01", "10", "11"}));
  // A path that stays in N forever carries an undischarged X node.
  const int f = b.add_state("F", 2);
  const int n = b.add_state("N", 1);
  b.add_initial(f);
  for (const char* y_set : {"01", "11"}) {
    for (int q : {f, n}) b.add_transition(q, b.letter(y_set), f, f);
  }
  b.add_transition(f, b.letter("00"), f, f);
  pass_down(b, f, b.letter("10"), n, f);
  for (const char* y_clear : {"00", "10"}) pass_down(b, n, b.letter(y_clear), n, f);
  return b.build();
}

ParityTreeAutomaton zoo_free2() {
  PtaBuilder b("free2", letters({"c"}));
  const int q1 = b.add_state("q1", 0);
  const int q2 = b.add_state("q2", 0);
  b.add_initial(q1);
  b.add_initial(q2);
  for (int q : {q1, q2}) {
    for (int l : {q1, q2}) {
      for (int r : {q1, q2}) b.add_transition(q, 0, l, r);
    }
  }
  return b.build();
}

ParityTreeAutomaton niwinski_unambiguous(const NiwinskiRepresentation& rep) {
  const FiniteTreeAutomaton& fta = rep.fta;
  if (static_cast<int>(rep.trees.size()) != fta.leaf_alphabet().size()) {
    throw Error(ErrorCode::InvalidArgument,
                "representation needs one tree per leaf symbol");
  }
  if (!fta_is_unambiguous(fta)) {
    throw Error(ErrorCode::AmbiguousRepresentation,
                "finite tree automaton '" + fta.name() + "' is ambiguous");
  }
  Alphabet sigma = fta.inner_alphabet();
  for (const RegularTree& t : rep.trees) sigma = sigma.merged(t.alphabet());
  PtaBuilder b("unamb_" + rep.name, sigma);
  for (int q = 0; q < fta.num_states(); ++q) b.add_state(fta.state_name(q), 1);
  std::vector<int> tree_init;
  for (std::size_t i = 0; i < rep.trees.size(); ++i) {
    const ParityTreeAutomaton det =
        det_pta_for_tree(rep.trees[i]).with_alphabet(sigma);
    const int base = b.embed(det, "t" + std::to_string(i + 1) + ".");
    tree_init.push_back(base + det.initials().front());
  }
  std::vector<std::vector<int>> leaf_of(fta.num_states());
  for (const LeafTransition& lt : fta.leaves()) {
    leaf_of[lt.state].push_back(tree_init[lt.symbol]);
  }
  std::set<int> initials(fta.initials().begin(), fta.initials().end());
  for (int q : fta.initials()) initials.insert(leaf_of[q].begin(), leaf_of[q].end());
  for (int q : initials) b.add_initial(q);
  for (const Transition& tr : fta.inner()) {
    const int a = sigma.index(fta.inner_alphabet().name(tr.letter));
    b.add_transition(tr.state, a, tr.left, tr.right);
    for (int i : leaf_of[tr.left]) {
      for (int j : leaf_of[tr.right]) b.add_transition(tr.state, a, i, j);
    }
    for (int j : leaf_of[tr.right]) b.add_transition(tr.state, a, tr.left, j);
    for (int i : leaf_of[tr.left]) b.add_transition(tr.state, a, i, tr.right);
  }
  return b.build();
}

bool substitution_member(const NiwinskiRepresentation& rep,
                         const RegularTree& t) {
  const FiniteTreeAutomaton& fta = rep.fta;
  const int nm = t.num_states();
  const int nq = fta.num_states();
  std::vector<std::vector<char>> is_tree(nm, std::vector<char>(rep.trees.size()));
  for (int m = 0; m < nm; ++m) {
    for (std::size_t i = 0; i < rep.trees.size(); ++i) {
      is_tree[m][i] = tree_equal(t.rooted_at(m), rep.trees[i]);
    }
  }
  // good[m][q]: the subtree at m is tau[t_i/x_i] for some finite tau
  // accepted from q. Least fixed point.
  std::vector<std::vector<char>> good(nm, std::vector<char>(nq, 0));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < nm; ++m) {
      const auto letter = fta.inner_alphabet().find(t.alphabet().name(t.out(m)));
      for (int q = 0; q < nq; ++q) {
        if (good[m][q]) continue;
        bool ok = false;
        for (const LeafTransition& lt : fta.leaves()) {
          ok = ok || (lt.state == q && is_tree[m][lt.symbol]);
        }
        for (const Transition& tr : fta.inner()) {
          ok = ok || (tr.state == q && letter && tr.letter == *letter &&
                      good[t.next(m, Dir::L)][tr.left] &&
                      good[t.next(m, Dir::R)][tr.right]);
        }
        if (ok) {
          good[m][q] = 1;
          changed = true;
        }
      }
    }
  }
  for (int q : fta.initials()) {
    if (good[t.init()][q]) return true;
  }
  return false;
}

std::vector<NiwinskiRepresentation> shipped_representations() {
  const RegularTree tc = constant_tree("c");
  const RegularTree ta1 = constant_tree("a1");
  std::vector<NiwinskiRepresentation> reps;
  reps.push_back({"single_tc",
                  FiniteTreeAutomaton("single_tc", letters({"x1"}), letters({"c"}),
                                      {"q0"}, {0}, {{0, 0}}, {}),
                  {tc}});
  reps.push_back({"root_or_cherry",
                  FiniteTreeAutomaton("root_or_cherry", letters({"x1"}),
                                      letters({"c"}), {"q0", "q1"}, {0},
                                      {{0, 0}, {1, 0}}, {{0, 0, 1, 1}}),
                  {ta1}});
  reps.push_back({"right_combs",
                  FiniteTreeAutomaton("right_combs", letters({"x1", "x2"}),
                                      letters({"c"}), {"qs", "qx2"}, {0},
                                      {{0, 0}, {1, 1}}, {{0, 0, 1, 0}}),
                  {ta1, tc}});
  return reps;
}

}  // namespace treeamb
