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

#pragma once

#include <vector>

namespace treeamb {

using Digraph = std::vector<std::vector<int>>;

// Strongly connected components of the subgraph induced by allowed
// vertices; comp[v] = -1 outside it. Components are numbered in reverse
// topological order.
std::vector<int> strongly_connected(const Digraph& succ,
                                    const std::vector<char>& allowed);

// True when v lies on a cycle inside its component.
bool on_cycle(const Digraph& succ, const std::vector<int>& comp, int v);

// True iff some cycle among allowed vertices has a maximal color of the
// given parity.
bool cycle_with_max_parity(const Digraph& succ, const std::vector<int>& color,
                           const std::vector<char>& allowed, int parity);

}  // namespace treeamb
