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

#include "treeamb/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "treeamb/ambiguity.hpp"
#include "treeamb/error.hpp"
#include "treeamb/games.hpp"
#include "treeamb/membership.hpp"
#include "treeamb/zoo.hpp"

namespace treeamb {

namespace {

const Alphabet& c_a1() {
  static const Alphabet sigma({"c", "a1"});
  return sigma;
}

RegularTree t_c() { return RegularTree::constant(c_a1(), "c"); }
RegularTree t_a1() { return RegularTree::constant(c_a1(), "a1"); }

RegularTree spine_tree() {
  return graft_antichain(t_c(), t_a1(), left_spine_right_children());
}

std::string criterion_hierarchy(bool& pass) {
  std::string detail;
  pass = true;
  for (int k = 1; k <= 3; ++k) {
    const AmbiguityVerdict v = classify(zoo_neg_union(k), t_c(), 5);
    const bool ok = v.kind == AmbiguityVerdict::Kind::Exact &&
                    v.n == static_cast<std::uint64_t>(k);
    pass = pass && ok;
    detail += "k=" + std::to_string(k) + ": " + v.str() + "; ";
  }
  return detail;
}

std::string criterion_two_ambiguous(bool& pass) {
  const ParityTreeAutomaton a = zoo_neg_union(2);
  const bool one = is_k_ambiguous(a, 1);
  const bool two = is_k_ambiguous(a, 2);
  pass = !one && two;
  return std::string("1-ambiguous=") + (one ? "true" : "false") +
         ", 2-ambiguous=" + (two ? "true" : "false");
}

std::string criterion_lfa_counts(bool& pass) {
  std::string detail;
  pass = true;
  for (int m = 2; m <= 3; ++m) {
    const AmbiguityVerdict v = classify(zoo_lfa(), lfa_tree(m), 8);
    const bool ok = v.kind == AmbiguityVerdict::Kind::Exact &&
                    v.n == static_cast<std::uint64_t>(2 * m);
    pass = pass && ok;
    detail += "m=" + std::to_string(m) + ": " + v.str() + "; ";
  }
  return detail;
}

std::string criterion_lfa_unbounded(bool& pass) {
  std::string detail;
  pass = true;
  const ParityTreeAutomaton a = zoo_lfa();
  for (int m = 2; m <= 5; ++m) {
    const bool ok = at_least_k(a, lfa_tree(m), m);
    pass = pass && ok;
    detail += "m=" + std::to_string(m) + ":" + (ok ? "yes" : "no") + " ";
  }
  return detail;
}

std::string criterion_uncountable(bool& pass) {
  const ParityTreeAutomaton anb = zoo_complement_singleton(t_c(), c_a1());
  const ParityTreeAutomaton a0 = det_pta_for_tree(t_c());
  const ParityTreeAutomaton a = zoo_frak_scheme(a0, anb);
  const RegularTree t = spine_tree();
  const AmbiguityVerdict v = classify(a, t, 4);
  std::string detail = v.str();
  pass = v.kind == AmbiguityVerdict::Kind::Uncountable && v.witness.has_value();
  if (v.witness) {
    const std::string problem = check_witness(a, t, *v.witness);
    detail += ", witness " + std::string(shape_name(v.witness->shape)) + " at (" +
              t.state_name(v.witness->tree_state) + ", " +
              a.state_name(v.witness->state) + ") node " + v.witness->position.str() +
              (problem.empty() ? ", valid" : ", invalid: " + problem);
    pass = pass && problem.empty();
  }
  return detail;
}

std::string criterion_countable(bool& pass) {
  const ParityTreeAutomaton a = zoo_complement_singleton(t_c(), c_a1());
  const AmbiguityVerdict spine = classify(a, spine_tree(), 8);
  const std::vector<std::pair<NodePath, std::string>> labels{
      {NodePath("l"), "a1"}, {NodePath("r"), "a1"}};
  const RegularTree two = tree_with_labels(c_a1(), "c", labels, "two_a1");
  const AmbiguityVerdict pair = classify(a, two, 8);
  pass = spine.kind == AmbiguityVerdict::Kind::Infinite &&
         pair.kind == AmbiguityVerdict::Kind::Exact && pair.n == 2;
  return "spine tree: " + spine.str() + "; two differences: " + pair.str();
}

std::string criterion_niwinski(bool& pass) {
  const RegularTree c = t_c();
  const RegularTree a1 = t_a1();
  const std::vector<RegularTree> samples{
      c, a1, make_node("c", a1, a1), make_node("c", c, a1),
      make_node("c", c, make_node("c", c, a1))};
  std::string detail;
  pass = true;
  for (const NiwinskiRepresentation& rep : shipped_representations()) {
    // Widened so that every sample is a tree over the automaton's letters.
    const ParityTreeAutomaton narrow = niwinski_unambiguous(rep);
    const ParityTreeAutomaton a =
        narrow.with_alphabet(narrow.alphabet().merged(c_a1()));
    const bool unambiguous = is_k_ambiguous(a, 1);
    int agree = 0;
    int members = 0;
    for (const RegularTree& t : samples) {
      const bool direct = substitution_member(rep, t);
      members += direct;
      agree += member(a, t) == direct;
    }
    const bool ok = unambiguous && agree == static_cast<int>(samples.size());
    pass = pass && ok;
    detail += rep.name + ": " + (unambiguous ? "unambiguous" : "AMBIGUOUS") + ", " +
              std::to_string(agree) + "/" + std::to_string(samples.size()) +
              " agree (" + std::to_string(members) + " members); ";
  }
  return detail;
}

// Compares the two solvers on g and verifies both players' strategies.
bool solvers_agree(const ParityGameArena& g) {
  const WinningAnalysis main = solve(g);
  const WinningAnalysis oracle = solve_oracle(g);
  if (main.winner != oracle.winner) return false;
  for (Player p : {Player::Automaton, Player::Pathfinder}) {
    if (!verify_strategy(g, p, main.strategy(p), main.region(p))) return false;
    if (!verify_strategy(g, p, oracle.strategy(p), oracle.region(p))) return false;
  }
  return true;
}

// Vertex types (owner, color) are listed in nondecreasing order, which
// removes arenas that differ only by a permutation of same-typed vertices
// before edges are chosen; every edge set is tried. Colors range over
// 0..3 up to three vertices and over 0..1 at four.
std::string criterion_solvers(bool& pass) {
  long exhaustive = 0;
  long failures = 0;
  std::string first_failure;
  auto check = [&](const ParityGameArena& g) {
    if (!solvers_agree(g)) {
      if (failures++ == 0) {
        std::ostringstream os;
        for (int v = 0; v < g.num_vertices(); ++v) {
          os << v << (g.owner(v) == Player::Automaton ? "A" : "P") << g.color(v) << "->";
          for (int w : g.successors(v)) os << w;
          os << " ";
        }
        first_failure = os.str();
      }
    }
  };
  for (int n = 1; n <= 4; ++n) {
    const int colors = n <= 3 ? 4 : 2;
    const int types = 2 * colors;
    std::vector<int> type(n, 0);
    while (true) {
      const int edges = n * n;
      for (long mask = 0; mask < (1L << edges); ++mask) {
        ParityGameArena g("exhaustive");
        for (int v = 0; v < n; ++v) {
          g.add_vertex("v" + std::to_string(v),
                       type[v] % 2 ? Player::Pathfinder : Player::Automaton,
                       type[v] / 2);
        }
        for (int e = 0; e < edges; ++e) {
          if (mask >> e & 1) g.add_edge(e / n, e % n);
        }
        for (int v = 0; v < n; ++v) {
          if (g.successors(v).empty()) g.set_sink(v, true);
        }
        check(g);
        ++exhaustive;
      }
      int i = n - 1;
      while (i >= 0 && type[i] == types - 1) --i;
      if (i < 0) break;
      ++type[i];
      for (int j = i + 1; j < n; ++j) type[j] = type[i];
    }
  }
  std::mt19937 rng(20240611);
  for (int round = 0; round < 200; ++round) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    ParityGameArena g("random");
    for (int v = 0; v < n; ++v) {
      g.add_vertex("v" + std::to_string(v),
                   rng() % 2 ? Player::Pathfinder : Player::Automaton,
                   std::uniform_int_distribution<int>(0, n)(rng));
    }
    for (int v = 0; v < n; ++v) {
      const int degree = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int k = 0; k < degree; ++k) {
        g.add_edge(v, std::uniform_int_distribution<int>(0, n - 1)(rng));
      }
      if (g.successors(v).empty()) g.set_sink(v, true);
    }
    check(g);
  }
  pass = failures == 0;
  std::string detail = std::to_string(exhaustive) + " exhaustive + 200 random arenas, " +
                       std::to_string(failures) + " disagreements";
  if (failures) detail += "; first: " + first_failure;
  return detail;
}

std::string criterion_gadget(bool& pass) {
  const int d = 2;
  const DetParityWordAutomaton dpw = conjunction_dpw(d, d);
  const int per = d + 1;
  std::vector<int> letter(per * per);
  for (int x = 0; x < per; ++x) {
    for (int y = 0; y < per; ++y) {
      const int coords[2] = {x, y};
      letter[x * per + y] = dpw.encode(coords);
    }
  }
  long lassos = 0;
  long failures = 0;
  std::vector<int> word;
  for (int total = 1; total <= 6; ++total) {
    std::vector<int> digits(total, 0);
    while (true) {
      for (int stem = 0; stem < total; ++stem) {
        int max_x = 0, max_y = 0;
        word.clear();
        for (int i = 0; i < total; ++i) {
          word.push_back(letter[digits[i]]);
          if (i >= stem) {
            max_x = std::max(max_x, digits[i] / per);
            max_y = std::max(max_y, digits[i] % per);
          }
        }
        const bool expected = max_x % 2 == 0 && max_y % 2 == 0;
        const std::span<const int> all(word);
        const bool got = dpw.accepts_lasso(all.first(stem), all.subspan(stem));
        failures += got != expected;
        ++lassos;
      }
      int i = 0;
      while (i < total && ++digits[i] == per * per) digits[i++] = 0;
      if (i == total) break;
    }
  }
  pass = failures == 0;
  return std::to_string(lassos) + " lassos over " + std::to_string(dpw.num_states()) +
         " gadget states, " + std::to_string(failures) + " disagreements";
}

RegularTree random_tree(const Alphabet& sigma, std::mt19937& rng, int id) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<std::string> names;
  std::vector<int> out;
  std::vector<std::array<int, 2>> next;
  for (int s = 0; s < n; ++s) {
    names.push_back("s" + std::to_string(s));
    out.push_back(std::uniform_int_distribution<int>(0, sigma.size() - 1)(rng));
    next.push_back({std::uniform_int_distribution<int>(0, n - 1)(rng),
                    std::uniform_int_distribution<int>(0, n - 1)(rng)});
  }
  return RegularTree("rand" + std::to_string(id), sigma, names, out, next, 0);
}

std::string criterion_leads(bool& pass) {
  const std::vector<ParityTreeAutomaton> automata{
      zoo_exists_a1(), zoo_complement_singleton(t_c(), c_a1()), zoo_neg_union(2),
      zoo_no_max(), zoo_x_subset_ydown()};
  std::mt19937 rng(99);
  int instances = 0;
  int correct = 0;
  int id = 0;
  std::string detail;
  for (int attempt = 0; attempt < 20000 && instances < 10; ++attempt) {
    const ParityTreeAutomaton& a = automata[instances % automata.size()];
    const RegularTree t0 = random_tree(a.alphabet(), rng, id++);
    const RegularTree tprime = random_tree(a.alphabet(), rng, id++);
    if (member(a, t0) || !member(a, tprime)) continue;
    const RegularRun run = accepting_run(a, tprime);
    const PathfinderStrategyTree str = pathfinder_strategy(a, t0);
    const NodePath v = leads(a, t0, str, tprime, run);
    const bool ok = t0.symbol_at(v) != tprime.symbol_at(v);
    correct += ok;
    ++instances;
    detail += a.name() + "@" + v.str() + (ok ? "" : "(!)") + " ";
  }
  pass = instances == 10 && correct == 10;
  return std::to_string(correct) + "/" + std::to_string(instances) + " differ: " + detail;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria{
      {1, "k-hierarchy: neg_union(k) on t_c is Exact(k)", 10, criterion_hierarchy},
      {2, "neg_union(2) is 2- but not 1-ambiguous", 30, criterion_two_ambiguous},
      {3, "lfa on L_m trees is Exact(2m)", 60, criterion_lfa_counts},
      {4, "lfa has at least m runs on L_m, m=2..5", 120, criterion_lfa_unbounded},
      {5, "frak scheme is uncountable with a valid witness", 60, criterion_uncountable},
      {6, "complement of {t_c}: infinite and Exact(2)", 30, criterion_countable},
      {7, "unambiguous automata from representations", 60, criterion_niwinski},
      {8, "solver cross-validation", 60, criterion_solvers},
      {9, "conjunction gadget vs lasso brute force", 60, criterion_gadget},
      {10, "leads finds a differing label", 30, criterion_leads},
  };
  return criteria;
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r{c.id, c.title, false, 0, c.budget_seconds, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    bool pass = false;
    r.detail = c.check(pass);
    r.pass = pass;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += " [over time budget]";
  }
  return r;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s  #%-2d %7.2fs / %4.0fs  ",
                r.pass ? "PASS" : "FAIL", r.id, r.seconds, r.budget_seconds);
  return head + r.title + " | " + r.detail;
}

bool run_acceptance(std::ostream& out, int only) {
  bool all = true;
  for (const Criterion& c : acceptance_criteria()) {
    if (only != 0 && c.id != only) continue;
    const CriterionResult r = run_criterion(c);
    out << format_result(r) << std::endl;
    all = all && r.pass;
  }
  return all;
}

}  // namespace treeamb
