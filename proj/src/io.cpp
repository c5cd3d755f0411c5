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

#include "treeamb/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "treeamb/error.hpp"

namespace treeamb {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
  const std::string& keyword() const { return tokens.front(); }
  std::size_t size() const { return tokens.size(); }
};

class Reader {
 public:
  Reader(std::string_view text, std::string file) : file_(std::move(file)) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view raw = text.substr(pos, end - pos);
      std::istringstream in{std::string(raw)};
      Line line{number, {}};
      for (std::string tok; in >> tok;) line.tokens.push_back(tok);
      if (!line.tokens.empty() && line.tokens.front()[0] != '#') {
        lines_.push_back(std::move(line));
      }
      pos = end + 1;
    }
  }

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw ParseError(file_, line, message);
  }
  [[noreturn]] void fail(const Line& line, const std::string& message) const {
    fail(line.number, message);
  }

  // Checks "<keyword> <name> [extra...]" on the first line; returns it.
  const Line& header(std::string_view keyword, std::size_t extra = 0) const {
    const std::string expected =
        "expected '" + std::string(keyword) + " <name>' header";
    if (lines_.empty()) fail(1, expected);
    const Line& h = lines_.front();
    if (h.keyword() != keyword || h.size() != 2 + extra) fail(h, expected);
    return h;
  }

  void arity(const Line& line, std::size_t n, std::string_view shape) const {
    if (line.size() != n) {
      fail(line, "expected '" + std::string(shape) + "'");
    }
  }

  // Value of "key=value" in token.
  std::string value(const Line& line, const std::string& token,
                    std::string_view key) const {
    const std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0 || token.size() == prefix.size()) {
      fail(line, "expected '" + prefix + "<value>'");
    }
    return token.substr(prefix.size());
  }

  int natural(const Line& line, const std::string& text) const {
    int n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size() || n < 0) {
      fail(line, "expected a natural number, got '" + text + "'");
    }
    return n;
  }

  Dir direction(const Line& line, const std::string& token) const {
    if (token == "l") return Dir::L;
    if (token == "r") return Dir::R;
    fail(line, "expected 'l' or 'r', got '" + token + "'");
  }

  std::span<const Line> body() const {
    return std::span<const Line>(lines_).subspan(lines_.empty() ? 0 : 1);
  }
  const std::string& file() const { return file_; }
  int first_line() const { return lines_.empty() ? 1 : lines_.front().number; }
  std::span<const Line> all() const { return lines_; }

 private:
  std::string file_;
  std::vector<Line> lines_;
};

// Declared names with their declaration lines.
class Names {
 public:
  Names(const Reader& reader, std::string kind)
      : reader_(reader), kind_(std::move(kind)) {}

  int declare(const Line& line, const std::string& name) {
    auto [it, fresh] = index_.try_emplace(name, static_cast<int>(names_.size()));
    if (!fresh) reader_.fail(line, kind_ + " '" + name + "' declared twice");
    names_.push_back(name);
    lines_.push_back(line.number);
    return it->second;
  }
  int get(const Line& line, const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      reader_.fail(line, "unknown " + kind_ + " '" + name + "'");
    }
    return it->second;
  }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int line_of(int i) const { return lines_[i]; }

 private:
  const Reader& reader_;
  std::string kind_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<int> lines_;
};

int symbol(const Reader& reader, const Line& line, const Alphabet& alphabet,
           const std::string& sym) {
  auto i = alphabet.find(sym);
  if (!i) reader.fail(line, "unknown symbol '" + sym + "'");
  return *i;
}

Alphabet alphabet_from(const Reader& reader, const Line& line) {
  std::vector<std::string> syms(line.tokens.begin() + 1, line.tokens.end());
  try {
    return Alphabet(std::move(syms));
  } catch (const Error& e) {
    reader.fail(line, e.what());
  }
}

// Runs a constructor, reporting its validation errors at the header line.
template <typename F>
auto construct(const Reader& reader, F&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    reader.fail(reader.first_line(), e.what());
  }
}

struct TreeParts {
  std::string name;
  std::optional<std::pair<std::string, std::string>> run;  // of, on
  RegularTree tree;
};

TreeParts parse_tree_like(std::string_view text, std::string file,
                          bool run_header) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("mtree");
  std::span<const Line> body = reader.body();
  std::optional<std::pair<std::string, std::string>> run;
  if (run_header) {
    if (body.empty() || body.front().keyword() != "run" || body.front().size() != 3) {
      reader.fail(body.empty() ? head.number : body.front().number,
                  "expected 'run of=<pta> on=<tree>'");
    }
    const Line& r = body.front();
    run = std::pair{reader.value(r, r.tokens[1], "of"), reader.value(r, r.tokens[2], "on")};
    body = body.subspan(1);
  }
  std::optional<Alphabet> alphabet;
  Names states(reader, "state");
  std::vector<std::pair<const Line*, std::string>> outs;
  const Line* init = nullptr;
  std::vector<const Line*> edges;
  for (const Line& line : body) {
    const std::string& kw = line.keyword();
    if (kw == "alphabet") {
      if (alphabet) reader.fail(line, "alphabet declared twice");
      alphabet = alphabet_from(reader, line);
    } else if (kw == "state") {
      reader.arity(line, 3, "state <id> out=<sym>");
      states.declare(line, line.tokens[1]);
      outs.push_back({&line, reader.value(line, line.tokens[2], "out")});
    } else if (kw == "init") {
      reader.arity(line, 2, "init <id>");
      if (init) reader.fail(line, "init declared twice");
      init = &line;
    } else if (kw == "edge") {
      reader.arity(line, 4, "edge <src> l|r <dst>");
      edges.push_back(&line);
    } else {
      reader.fail(line, "expected 'alphabet', 'state', 'init' or 'edge', got '" + kw + "'");
    }
  }
  if (!alphabet) reader.fail(head, "missing 'alphabet' line");
  if (!init) reader.fail(head, "missing 'init <id>' line");
  std::vector<int> out;
  for (const auto& [line, sym] : outs) out.push_back(symbol(reader, *line, *alphabet, sym));
  std::vector<std::array<int, 2>> next(states.size(), {-1, -1});
  for (const Line* line : edges) {
    const int src = states.get(*line, line->tokens[1]);
    const Dir d = reader.direction(*line, line->tokens[2]);
    const int dst = states.get(*line, line->tokens[3]);
    int& slot = next[src][idx(d)];
    if (slot >= 0) reader.fail(*line, "second " + line->tokens[2] + "-edge of '" + line->tokens[1] + "'");
    slot = dst;
  }
  for (int s = 0; s < states.size(); ++s) {
    for (Dir d : kDirs) {
      if (next[s][idx(d)] < 0) {
        reader.fail(states.line_of(s), "state '" + states.names()[s] + "' lacks its " +
                                           std::string(1, dir_char(d)) + "-edge");
      }
    }
  }
  const int root = states.get(*init, init->tokens[1]);
  RegularTree tree = construct(reader, [&] {
    return RegularTree(head.tokens[1], *alphabet, states.names(), out, next, root);
  });
  return {head.tokens[1], std::move(run), std::move(tree)};
}

std::string join(std::span<const std::string> items) {
  std::string out;
  for (const auto& s : items) out += " " + s;
  return out;
}

std::string tree_body(const RegularTree& t) {
  std::string out = "alphabet" + join(t.alphabet().symbols()) + "\n";
  for (int s = 0; s < t.num_states(); ++s) {
    out += "state " + t.state_name(s) + " out=" + t.alphabet().name(t.out(s)) + "\n";
  }
  out += "init " + t.state_name(t.init()) + "\n";
  for (int s = 0; s < t.num_states(); ++s) {
    for (Dir d : kDirs) {
      out += "edge " + t.state_name(s) + " " + dir_char(d) + " " +
             t.state_name(t.next(s, d)) + "\n";
    }
  }
  return out;
}

}  // namespace

RegularTree parse_mtree(std::string_view text, std::string file) {
  return parse_tree_like(text, std::move(file), false).tree;
}

RunFile parse_run(std::string_view text, std::string file) {
  TreeParts parts = parse_tree_like(text, std::move(file), true);
  return {parts.run->first, parts.run->second, std::move(parts.tree)};
}

std::string write_mtree(const RegularTree& t) {
  return "mtree " + t.name() + "\n" + tree_body(t);
}

std::string write_run(const RegularRun& run) {
  return "mtree " + run.machine().name() + "\nrun of=" + run.automaton().name() +
         " on=" + run.tree().name() + "\n" + tree_body(run.machine());
}

RegularAntichain parse_chain(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("chain");
  Names states(reader, "state");
  std::vector<bool> accepting;
  const Line* init = nullptr;
  std::vector<const Line*> edges;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "state") {
      if (line.size() == 3 && line.tokens[2] == "accept") {
        accepting.push_back(true);
      } else {
        reader.arity(line, 2, "state <id> [accept]");
        accepting.push_back(false);
      }
      states.declare(line, line.tokens[1]);
    } else if (kw == "init") {
      reader.arity(line, 2, "init <id>");
      if (init) reader.fail(line, "init declared twice");
      init = &line;
    } else if (kw == "edge") {
      reader.arity(line, 4, "edge <src> l|r <dst>");
      edges.push_back(&line);
    } else {
      reader.fail(line, "expected 'state', 'init' or 'edge', got '" + kw + "'");
    }
  }
  std::vector<std::array<int, 2>> next(states.size(), {-1, -1});
  for (const Line* line : edges) {
    const int src = states.get(*line, line->tokens[1]);
    const Dir d = reader.direction(*line, line->tokens[2]);
    int& slot = next[src][idx(d)];
    if (slot >= 0) reader.fail(*line, "second " + line->tokens[2] + "-edge of '" + line->tokens[1] + "'");
    slot = states.get(*line, line->tokens[3]);
  }
  const int root = init ? states.get(*init, init->tokens[1]) : -1;
  return construct(reader, [&] {
    return RegularAntichain(head.tokens[1], states.names(), accepting, next, root);
  });
}

std::string write_chain(const RegularAntichain& c) {
  std::string out = "chain " + c.name() + "\n";
  for (int s = 0; s < c.num_states(); ++s) {
    out += "state " + c.state_name(s) + (c.accepting(s) ? " accept" : "") + "\n";
  }
  if (c.init() >= 0) out += "init " + c.state_name(c.init()) + "\n";
  for (int s = 0; s < c.num_states(); ++s) {
    for (Dir d : kDirs) {
      if (c.next(s, d) >= 0) {
        out += "edge " + c.state_name(s) + " " + dir_char(d) + " " +
               c.state_name(c.next(s, d)) + "\n";
      }
    }
  }
  return out;
}

ParityTreeAutomaton parse_pta(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("pta");
  std::optional<Alphabet> alphabet;
  Names states(reader, "state");
  std::vector<int> colors;
  std::vector<const Line*> inits, transitions;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "alphabet") {
      if (alphabet) reader.fail(line, "alphabet declared twice");
      alphabet = alphabet_from(reader, line);
    } else if (kw == "state") {
      reader.arity(line, 3, "state <id> color=<nat>");
      states.declare(line, line.tokens[1]);
      colors.push_back(reader.natural(line, reader.value(line, line.tokens[2], "color")));
    } else if (kw == "init") {
      if (line.size() < 2) reader.fail(line, "expected 'init <id> [<id>...]'");
      inits.push_back(&line);
    } else if (kw == "trans") {
      reader.arity(line, 5, "trans <q> <sym> <ql> <qr>");
      transitions.push_back(&line);
    } else {
      reader.fail(line, "expected 'alphabet', 'state', 'init' or 'trans', got '" + kw + "'");
    }
  }
  if (!alphabet) reader.fail(head, "missing 'alphabet' line");
  std::vector<int> initials;
  for (const Line* line : inits) {
    for (std::size_t i = 1; i < line->size(); ++i) {
      initials.push_back(states.get(*line, line->tokens[i]));
    }
  }
  std::vector<Transition> trs;
  for (const Line* line : transitions) {
    trs.push_back({states.get(*line, line->tokens[1]),
                   symbol(reader, *line, *alphabet, line->tokens[2]),
                   states.get(*line, line->tokens[3]),
                   states.get(*line, line->tokens[4])});
  }
  if (states.size() == 0) {
    return ParityTreeAutomaton::empty_marker(head.tokens[1], *alphabet);
  }
  return construct(reader, [&] {
    return ParityTreeAutomaton(head.tokens[1], *alphabet, states.names(), colors,
                               initials, trs);
  });
}

std::string write_pta(const ParityTreeAutomaton& a) {
  std::string out = "pta " + a.name() + "\nalphabet" + join(a.alphabet().symbols()) + "\n";
  for (int q = 0; q < a.num_states(); ++q) {
    out += "state " + a.state_name(q) + " color=" + std::to_string(a.color(q)) + "\n";
  }
  if (!a.initials().empty()) {
    out += "init";
    for (int q : a.initials()) out += " " + a.state_name(q);
    out += "\n";
  }
  for (const Transition& tr : a.transitions()) {
    out += "trans " + a.state_name(tr.state) + " " + a.alphabet().name(tr.letter) + " " +
           a.state_name(tr.left) + " " + a.state_name(tr.right) + "\n";
  }
  return out;
}

FiniteTreeAutomaton parse_fta(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("fta");
  std::optional<Alphabet> leaf_alpha, inner_alpha;
  Names states(reader, "state");
  std::vector<const Line*> inits, leaves, inner;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "leafalpha") {
      if (leaf_alpha) reader.fail(line, "leafalpha declared twice");
      leaf_alpha = alphabet_from(reader, line);
    } else if (kw == "innalpha") {
      if (inner_alpha) reader.fail(line, "innalpha declared twice");
      inner_alpha = alphabet_from(reader, line);
    } else if (kw == "state") {
      reader.arity(line, 2, "state <id>");
      states.declare(line, line.tokens[1]);
    } else if (kw == "init") {
      if (line.size() < 2) reader.fail(line, "expected 'init <id> [<id>...]'");
      inits.push_back(&line);
    } else if (kw == "leaf") {
      reader.arity(line, 3, "leaf <q> <sym>");
      leaves.push_back(&line);
    } else if (kw == "trans") {
      reader.arity(line, 5, "trans <q> <sym> <ql> <qr>");
      inner.push_back(&line);
    } else {
      reader.fail(line, "expected 'leafalpha', 'innalpha', 'state', 'init', 'leaf' or 'trans', got '" + kw + "'");
    }
  }
  if (!leaf_alpha) reader.fail(head, "missing 'leafalpha' line");
  if (!inner_alpha) reader.fail(head, "missing 'innalpha' line");
  std::vector<int> initials;
  for (const Line* line : inits) {
    for (std::size_t i = 1; i < line->size(); ++i) {
      initials.push_back(states.get(*line, line->tokens[i]));
    }
  }
  std::vector<LeafTransition> lts;
  for (const Line* line : leaves) {
    lts.push_back({states.get(*line, line->tokens[1]),
                   symbol(reader, *line, *leaf_alpha, line->tokens[2])});
  }
  std::vector<Transition> trs;
  for (const Line* line : inner) {
    trs.push_back({states.get(*line, line->tokens[1]),
                   symbol(reader, *line, *inner_alpha, line->tokens[2]),
                   states.get(*line, line->tokens[3]),
                   states.get(*line, line->tokens[4])});
  }
  return construct(reader, [&] {
    return FiniteTreeAutomaton(head.tokens[1], *leaf_alpha, *inner_alpha,
                               states.names(), initials, lts, trs);
  });
}

std::string write_fta(const FiniteTreeAutomaton& b) {
  std::string out = "fta " + b.name() + "\nleafalpha" + join(b.leaf_alphabet().symbols()) +
                    "\ninnalpha" + join(b.inner_alphabet().symbols()) + "\n";
  for (int q = 0; q < b.num_states(); ++q) out += "state " + b.state_name(q) + "\n";
  if (!b.initials().empty()) {
    out += "init";
    for (int q : b.initials()) out += " " + b.state_name(q);
    out += "\n";
  }
  for (const LeafTransition& lt : b.leaves()) {
    out += "leaf " + b.state_name(lt.state) + " " + b.leaf_alphabet().name(lt.symbol) + "\n";
  }
  for (const Transition& tr : b.inner()) {
    out += "trans " + b.state_name(tr.state) + " " + b.inner_alphabet().name(tr.letter) +
           " " + b.state_name(tr.left) + " " + b.state_name(tr.right) + "\n";
  }
  return out;
}

FiniteLabeledTree parse_ftree(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  if (reader.all().empty()) reader.fail(1, "expected 'node <path|-> <label>'");
  std::vector<std::pair<NodePath, std::string>> nodes;
  for (const Line& line : reader.all()) {
    if (line.keyword() != "node") {
      reader.fail(line, "expected 'node <path|-> <label>', got '" + line.keyword() + "'");
    }
    reader.arity(line, 3, "node <path|-> <label>");
    try {
      nodes.push_back({NodePath(line.tokens[1]), line.tokens[2]});
    } catch (const Error& e) {
      reader.fail(line, e.what());
    }
  }
  return construct(reader, [&] { return FiniteLabeledTree(nodes); });
}

std::string write_ftree(const FiniteLabeledTree& tau) {
  std::string out;
  for (const auto& [path, label] : tau.labeled_paths()) {
    out += "node " + path.str() + " " + label + "\n";
  }
  return out;
}

ParityGameArena parse_game(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("game");
  ParityGameArena g(head.tokens[1]);
  Names vertices(reader, "vertex");
  const Line* init = nullptr;
  std::vector<const Line*> edges;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "vertex") {
      const bool sink = line.size() == 5 && line.tokens[4] == "sink";
      if (!sink) reader.arity(line, 4, "vertex <id> owner=A|P color=<nat> [sink]");
      const std::string owner = reader.value(line, line.tokens[2], "owner");
      if (owner != "A" && owner != "P") reader.fail(line, "expected 'owner=A' or 'owner=P'");
      const int color = reader.natural(line, reader.value(line, line.tokens[3], "color"));
      vertices.declare(line, line.tokens[1]);
      g.add_vertex(line.tokens[1], owner == "A" ? Player::Automaton : Player::Pathfinder,
                   color, sink);
    } else if (kw == "init") {
      reader.arity(line, 2, "init <id>");
      if (init) reader.fail(line, "init declared twice");
      init = &line;
    } else if (kw == "edge") {
      reader.arity(line, 3, "edge <u> <v>");
      edges.push_back(&line);
    } else {
      reader.fail(line, "expected 'vertex', 'init' or 'edge', got '" + kw + "'");
    }
  }
  for (const Line* line : edges) {
    g.add_edge(vertices.get(*line, line->tokens[1]), vertices.get(*line, line->tokens[2]));
  }
  if (!init) reader.fail(head, "missing 'init <id>' line");
  g.set_initial(vertices.get(*init, init->tokens[1]));
  return g;
}

std::string write_game(const ParityGameArena& g) {
  std::string out = "game " + g.name() + "\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out += "vertex " + g.vertex(v).name + " owner=" +
           (g.owner(v) == Player::Automaton ? "A" : "P") + " color=" +
           std::to_string(g.color(v)) + (g.is_sink(v) ? " sink" : "") + "\n";
  }
  if (g.num_vertices() > 0) out += "init " + g.vertex(g.initial()).name + "\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int w : g.successors(v)) {
      out += "edge " + g.vertex(v).name + " " + g.vertex(w).name + "\n";
    }
  }
  return out;
}

MooreMachine parse_moore(std::string_view text, std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("moore");
  std::optional<Alphabet> input, output;
  Names states(reader, "state");
  std::vector<std::pair<const Line*, std::string>> outs;
  const Line* init = nullptr;
  std::vector<const Line*> edges;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "input") {
      if (input) reader.fail(line, "input declared twice");
      input = alphabet_from(reader, line);
    } else if (kw == "output") {
      if (output) reader.fail(line, "output declared twice");
      output = alphabet_from(reader, line);
    } else if (kw == "state") {
      reader.arity(line, 3, "state <id> out=<sym>");
      states.declare(line, line.tokens[1]);
      outs.push_back({&line, reader.value(line, line.tokens[2], "out")});
    } else if (kw == "init") {
      reader.arity(line, 2, "init <id>");
      if (init) reader.fail(line, "init declared twice");
      init = &line;
    } else if (kw == "edge") {
      reader.arity(line, 4, "edge <src> <sym> <dst>");
      edges.push_back(&line);
    } else {
      reader.fail(line, "expected 'input', 'output', 'state', 'init' or 'edge', got '" + kw + "'");
    }
  }
  if (!input) reader.fail(head, "missing 'input' line");
  if (!output) reader.fail(head, "missing 'output' line");
  if (!init) reader.fail(head, "missing 'init <id>' line");
  std::vector<int> out;
  for (const auto& [line, sym] : outs) out.push_back(symbol(reader, *line, *output, sym));
  std::vector<std::vector<int>> delta(states.size(), std::vector<int>(input->size(), -1));
  for (const Line* line : edges) {
    const int src = states.get(*line, line->tokens[1]);
    const int a = symbol(reader, *line, *input, line->tokens[2]);
    if (delta[src][a] >= 0) reader.fail(*line, "second edge of '" + line->tokens[1] + "' on '" + line->tokens[2] + "'");
    delta[src][a] = states.get(*line, line->tokens[3]);
  }
  for (int s = 0; s < states.size(); ++s) {
    for (int a = 0; a < input->size(); ++a) {
      if (delta[s][a] < 0) {
        reader.fail(states.line_of(s), "state '" + states.names()[s] + "' lacks an edge on '" +
                                           input->name(a) + "'");
      }
    }
  }
  const int root = states.get(*init, init->tokens[1]);
  return construct(reader, [&] {
    return MooreMachine(head.tokens[1], *input, *output, states.names(), out, delta, root);
  });
}

std::string write_moore(const MooreMachine& m) {
  std::string out = "moore " + m.name() + "\ninput" + join(m.input().symbols()) +
                    "\noutput" + join(m.output().symbols()) + "\n";
  for (int s = 0; s < m.num_states(); ++s) {
    out += "state " + m.state_name(s) + " out=" + m.output().name(m.out(s)) + "\n";
  }
  out += "init " + m.state_name(m.init()) + "\n";
  for (int s = 0; s < m.num_states(); ++s) {
    for (int a = 0; a < m.input().size(); ++a) {
      out += "edge " + m.state_name(s) + " " + m.input().name(a) + " " +
             m.state_name(m.delta(s, a)) + "\n";
    }
  }
  return out;
}

PathfinderStrategyTree parse_straj(std::string_view text,
                                   const ParityTreeAutomaton& a,
                                   std::string file) {
  const Reader reader(text, std::move(file));
  const Line& head = reader.header("straj", 1);
  const std::string of = reader.value(head, head.tokens[2], "of");
  if (of != a.name()) {
    reader.fail(head, "strategy is for '" + of + "', not for '" + a.name() + "'");
  }
  const int nq = a.num_states();
  Names states(reader, "state");
  const Line* init = nullptr;
  std::vector<const Line*> edges, outs;
  for (const Line& line : reader.body()) {
    const std::string& kw = line.keyword();
    if (kw == "state") {
      reader.arity(line, 2, "state <id>");
      states.declare(line, line.tokens[1]);
    } else if (kw == "init") {
      reader.arity(line, 2, "init <id>");
      if (init) reader.fail(line, "init declared twice");
      init = &line;
    } else if (kw == "edge") {
      reader.arity(line, 4, "edge <src> l|r <dst>");
      edges.push_back(&line);
    } else if (kw == "out") {
      reader.arity(line, 5, "out <state> <ql> <qr> l|r");
      outs.push_back(&line);
    } else {
      reader.fail(line, "expected 'state', 'init', 'edge' or 'out', got '" + kw + "'");
    }
  }
  if (!init) reader.fail(head, "missing 'init <id>' line");
  std::vector<std::array<int, 2>> next(states.size(), {-1, -1});
  for (const Line* line : edges) {
    const int src = states.get(*line, line->tokens[1]);
    const Dir d = reader.direction(*line, line->tokens[2]);
    int& slot = next[src][idx(d)];
    if (slot >= 0) reader.fail(*line, "second " + line->tokens[2] + "-edge of '" + line->tokens[1] + "'");
    slot = states.get(*line, line->tokens[3]);
  }
  std::vector<std::vector<int>> table(states.size(), std::vector<int>(nq * nq, -1));
  for (const Line* line : outs) {
    const int s = states.get(*line, line->tokens[1]);
    auto q = [&](const std::string& name) {
      auto id = a.find_state(name);
      if (!id) reader.fail(*line, "unknown automaton state '" + name + "'");
      return *id;
    };
    int& slot = table[s][q(line->tokens[2]) * nq + q(line->tokens[3])];
    if (slot >= 0) reader.fail(*line, "duplicate 'out' entry");
    slot = idx(reader.direction(*line, line->tokens[4]));
  }
  std::vector<std::vector<Dir>> dirs(states.size());
  for (int s = 0; s < states.size(); ++s) {
    for (Dir d : kDirs) {
      if (next[s][idx(d)] < 0) {
        reader.fail(states.line_of(s), "state '" + states.names()[s] + "' lacks its " +
                                           std::string(1, dir_char(d)) + "-edge");
      }
    }
    for (int k = 0; k < nq * nq; ++k) {
      if (table[s][k] < 0) {
        reader.fail(states.line_of(s), "state '" + states.names()[s] + "' has no 'out' entry for (" +
                                           a.state_name(k / nq) + ", " + a.state_name(k % nq) + ")");
      }
      dirs[s].push_back(table[s][k] == 0 ? Dir::L : Dir::R);
    }
  }
  const int root = states.get(*init, init->tokens[1]);
  return construct(reader, [&] {
    return PathfinderStrategyTree(head.tokens[1], of, nq, states.names(), next, root, dirs);
  });
}

std::string write_straj(const PathfinderStrategyTree& s,
                        const ParityTreeAutomaton& a) {
  std::string out = "straj " + s.name() + " of=" + s.automaton_name() + "\n";
  for (int i = 0; i < s.num_states(); ++i) out += "state " + s.state_name(i) + "\n";
  out += "init " + s.state_name(s.init()) + "\n";
  for (int i = 0; i < s.num_states(); ++i) {
    for (Dir d : kDirs) {
      out += "edge " + s.state_name(i) + " " + dir_char(d) + " " +
             s.state_name(s.next(i, d)) + "\n";
    }
  }
  for (int i = 0; i < s.num_states(); ++i) {
    for (int l = 0; l < a.num_states(); ++l) {
      for (int r = 0; r < a.num_states(); ++r) {
        out += "out " + s.state_name(i) + " " + a.state_name(l) + " " + a.state_name(r) +
               " " + dir_char(s.direction(i, l, r)) + "\n";
      }
    }
  }
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string arena_to_dot(const ParityGameArena& g, const WinningAnalysis* analysis) {
  std::string out = "digraph " + quoted(g.name()) + " {\n  node [style=filled];\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::string fill = "white";
    if (analysis) fill = analysis->wins(Player::Automaton, v) ? "lightblue" : "lightpink";
    out += "  " + quoted(g.vertex(v).name) + " [shape=" +
           (g.owner(v) == Player::Automaton ? "box" : "diamond") + ", label=" +
           quoted(g.vertex(v).name + ":" + std::to_string(g.color(v))) +
           ", fillcolor=" + fill + (v == g.initial() ? ", penwidth=2" : "") + "];\n";
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    int chosen = -1;
    if (analysis) {
      const Strategy& s = analysis->strategy(g.owner(v));
      chosen = s.empty() ? -1 : s[v];
    }
    for (int w : g.successors(v)) {
      out += "  " + quoted(g.vertex(v).name) + " -> " + quoted(g.vertex(w).name) +
             (w == chosen ? " [style=bold]" : "") + ";\n";
    }
  }
  return out + "}\n";
}

std::string detect_format(std::string_view text) {
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::istringstream words(line);
    std::string tok;
    if (words >> tok && tok[0] != '#') return tok;
  }
  return {};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << content;
}

NiwinskiRepresentation load_representation(const std::filesystem::path& dir) {
  const std::filesystem::path manifest = dir / "rep";
  const std::string text = read_file(manifest);
  const Reader reader(text, manifest.string());
  std::optional<FiniteTreeAutomaton> fta;
  std::vector<std::pair<const Line*, RegularTree>> trees;
  for (const Line& line : reader.all()) {
    if (line.keyword() == "fta") {
      reader.arity(line, 2, "fta <file>");
      if (fta) reader.fail(line, "fta declared twice");
      const std::filesystem::path f = dir / line.tokens[1];
      fta = parse_fta(read_file(f), f.string());
    } else if (line.keyword() == "tree") {
      reader.arity(line, 3, "tree <leaf symbol> <file>");
      const std::filesystem::path f = dir / line.tokens[2];
      trees.push_back({&line, parse_mtree(read_file(f), f.string())});
    } else {
      reader.fail(line, "expected 'fta' or 'tree', got '" + line.keyword() + "'");
    }
  }
  if (!fta) reader.fail(reader.first_line(), "missing 'fta <file>' line");
  std::vector<std::optional<RegularTree>> by_symbol(fta->leaf_alphabet().size());
  for (auto& [line, tree] : trees) {
    const int i = symbol(reader, *line, fta->leaf_alphabet(), line->tokens[1]);
    if (by_symbol[i]) reader.fail(*line, "second tree for '" + line->tokens[1] + "'");
    by_symbol[i] = std::move(tree);
  }
  NiwinskiRepresentation rep{fta->name(), *fta, {}};
  for (int i = 0; i < fta->leaf_alphabet().size(); ++i) {
    if (!by_symbol[i]) {
      reader.fail(reader.first_line(),
                  "no tree for leaf symbol '" + fta->leaf_alphabet().name(i) + "'");
    }
    rep.trees.push_back(*by_symbol[i]);
  }
  return rep;
}

void save_representation(const NiwinskiRepresentation& rep,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "rep.fta", write_fta(rep.fta));
  std::string manifest = "fta rep.fta\n";
  for (std::size_t i = 0; i < rep.trees.size(); ++i) {
    const std::string& sym = rep.fta.leaf_alphabet().name(static_cast<int>(i));
    write_file(dir / (sym + ".mtree"), write_mtree(rep.trees[i]));
    manifest += "tree " + sym + " " + sym + ".mtree\n";
  }
  write_file(dir / "rep", manifest);
}

}  // namespace treeamb
