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
// Example automata with known degrees of ambiguity.

#pragma once

#include <string>
#include <vector>

#include "treeamb/automata.hpp"
#include "treeamb/trees.hpp"

namespace treeamb {

// Trees without an a_i node, for some i <= k. Alphabet {c, a1, ..., ak}.
ParityTreeAutomaton zoo_neg_union(int k);

// Trees over {c, a1} with an a1 node; one run per minimal a1 node that a
// single searching path can reach.
ParityTreeAutomaton zoo_exists_a1();

// Every tree over sigma except t. A searching path (odd color) must end at
// a node where the label differs from t.
ParityTreeAutomaton zoo_complement_singleton(const RegularTree& t,
                                             const Alphabet& sigma);
ParityTreeAutomaton zoo_complement_singleton(const RegularTree& t);

// Finitely but not boundedly ambiguous, over {a1, a2, c}.
ParityTreeAutomaton zoo_lfa();
// t_c with tprime grafted at l^k r and t_a1 grafted at l^m; needs k < m.
RegularTree lfa_tree(int k, int m, const RegularTree& tprime);
// The same with tprime = t_c, which leaves only the graft at l^m.
RegularTree lfa_tree(int m);

// Trees with c on the left spine whose right subtrees all lie in L(a0) or
// L(anb), with infinitely many in L(anb). Spine states: "g" (color 2) is
// used at nodes dispatching to anb, "w" (color 1) anywhere.
ParityTreeAutomaton zoo_frak_scheme(const ParityTreeAutomaton& a0,
                                    const ParityTreeAutomaton& anb);

// Over {0, 1}, the 1-labeled nodes form a set X.
ParityTreeAutomaton zoo_no_max();  // X has no maximal element
ParityTreeAutomaton zoo_perf();    // X is nonempty and perfect
// Over {00, 01, 10, 11} (x bit, then y bit): every X node has a Y node at
// or below it.
ParityTreeAutomaton zoo_x_subset_ydown();

// Two interchangeable states over {c}; every labeling of t_c is a run.
ParityTreeAutomaton zoo_free2();

// Finite trees of an FTA with leaf variables replaced by regular trees;
// trees[i] replaces the i-th leaf symbol.
struct NiwinskiRepresentation {
  std::string name;
  FiniteTreeAutomaton fta;
  std::vector<RegularTree> trees;
};

// Throws AmbiguousRepresentation when the FTA is ambiguous.
ParityTreeAutomaton niwinski_unambiguous(const NiwinskiRepresentation& rep);

// Membership in the substituted language computed directly on the tree.
bool substitution_member(const NiwinskiRepresentation& rep,
                         const RegularTree& t);

// The bundled representations: {x1} with t_c; {x1, c(x1,x1)} with t_a1;
// right combs c(x2, c(x2, ... x1)) with t_a1 and t_c.
std::vector<NiwinskiRepresentation> shipped_representations();

}  // namespace treeamb
