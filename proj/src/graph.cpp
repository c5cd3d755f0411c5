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

#include "treeamb/graph.hpp"

#include <algorithm>
#include <set>

namespace treeamb {

std::vector<int> strongly_connected(const Digraph& succ,
                                    const std::vector<char>& allowed) {
  const int n = static_cast<int>(succ.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> frames;  // vertex, next edge
  int counter = 0;
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (!allowed[root] || index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, e] = frames.back();
      if (e < succ[v].size()) {
        const int w = succ[v][e++];
        if (!allowed[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  return comp;
}

bool on_cycle(const Digraph& succ, const std::vector<int>& comp, int v) {
  if (comp[v] < 0) return false;
  for (int w : succ[v]) {
    if (w == v) return true;
  }
  for (int u = 0; u < static_cast<int>(comp.size()); ++u) {
    if (u != v && comp[u] == comp[v]) return true;
  }
  return false;
}

bool cycle_with_max_parity(const Digraph& succ, const std::vector<int>& color,
                           const std::vector<char>& allowed, int parity) {
  const int n = static_cast<int>(succ.size());
  std::set<int> candidates;
  for (int v = 0; v < n; ++v) {
    if (allowed[v] && color[v] % 2 == parity) candidates.insert(color[v]);
  }
  for (int c : candidates) {
    std::vector<char> sub(n, 0);
    for (int v = 0; v < n; ++v) sub[v] = allowed[v] && color[v] <= c;
    const std::vector<int> comp = strongly_connected(succ, sub);
    // A component is cyclic if it has two members or a self-loop.
    std::vector<int> size;
    for (int v = 0; v < n; ++v) {
      if (comp[v] >= 0) {
        if (comp[v] >= static_cast<int>(size.size())) size.resize(comp[v] + 1, 0);
        ++size[comp[v]];
      }
    }
    for (int v = 0; v < n; ++v) {
      if (comp[v] < 0 || color[v] != c) continue;
      if (size[comp[v]] > 1) return true;
      for (int w : succ[v]) {
        if (w == v) return true;
      }
    }
  }
  return false;
}

}  // namespace treeamb
