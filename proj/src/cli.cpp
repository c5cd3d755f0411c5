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

#include "treeamb/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeamb/acceptance.hpp"
#include "treeamb/ambiguity.hpp"
#include "treeamb/error.hpp"
#include "treeamb/io.hpp"
#include "treeamb/membership.hpp"
#include "treeamb/zoo.hpp"

namespace treeamb {

namespace {

using Json = nlohmann::json;

ParityTreeAutomaton load_pta(const std::string& path) {
  return parse_pta(read_file(path), path);
}

RegularTree load_tree(const std::string& path) {
  return parse_mtree(read_file(path), path);
}

bool is_run_file(std::string_view text) {
  return text.find("\nrun ") != std::string_view::npos;
}

// Writes text to path, or to out when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string player_name(Player p) {
  return p == Player::Automaton ? "automaton" : "pathfinder";
}

Json walk_json(const ParityTreeAutomaton& a, const RegularTree& t,
               const std::vector<WalkStep>& walk) {
  Json steps = Json::array();
  for (const WalkStep& s : walk) {
    steps.push_back({{"tree_state", t.state_name(s.tree_state)},
                     {"state", a.state_name(s.state)},
                     {"left", a.state_name(s.transition.left)},
                     {"right", a.state_name(s.transition.right)},
                     {"dir", std::string(1, dir_char(s.dir))}});
  }
  return steps;
}

Json verdict_json(const ParityTreeAutomaton& a, const RegularTree& t,
                  const AmbiguityVerdict& v) {
  Json j;
  const std::string text = v.str();
  j["verdict"] = text.substr(0, text.find(' '));
  j["automaton"] = a.name();
  j["tree"] = t.name();
  if (v.kind == AmbiguityVerdict::Kind::Exact ||
      v.kind == AmbiguityVerdict::Kind::AtLeast) {
    j["n"] = v.n;
  }
  if (v.witness) {
    const RegenerationWitness& w = *v.witness;
    Json wj;
    wj["shape"] = std::string(shape_name(w.shape));
    wj["tree_state"] = t.state_name(w.tree_state);
    wj["state"] = a.state_name(w.state);
    wj["position"] = w.position.str();
    wj["spine"] = walk_json(a, t, w.spine);
    if (!w.alternative.empty()) wj["alternative"] = walk_json(a, t, w.alternative);
    if (w.branch_step >= 0) wj["branch_step"] = w.branch_step;
    wj["spine_max_color"] = w.spine_max_color;
    const std::string problem = check_witness(a, t, w);
    wj["valid"] = problem.empty();
    if (!problem.empty()) wj["problem"] = problem;
    j["witness"] = wj;
  }
  return j;
}

// Each handler returns the exit code; CLI11 only parses.
using Handler = std::function<int()>;

struct Cli {
  std::ostream& out;
  std::ostream& err;
  CLI::App app{"Degrees of ambiguity of parity tree automata on regular trees",
               "treeamb"};
  Handler handler;

  Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");
    add_validate();
    add_member();
    add_classify();
    add_ambiguous();
    add_empty();
    add_construct();
    add_zoo();
    add_game();
    add_run();
    add_strategy();
    add_leads();
    add_suite();
  }

  // Owned option storage; CLI11 binds to these addresses.
  std::string file, automaton, tree, other, output, dot, witness, moore,
      at, chain, rep, name, t0, tprime, run_path, straj;
  int max_k = 8;
  int k = 1;
  int m = 2;
  int only = 0;
  bool json = false;
  bool oracle = false;
  std::vector<std::string> states, letters;

  void add_validate() {
    CLI::App* sub = app.add_subcommand("validate", "Parse a file of any format");
    sub->add_option("file", file, "Input file")->required();
    sub->add_option("-a,--automaton", automaton, "Automaton a .straj file refers to");
    sub->callback([this] { handler = [this] { return validate(); }; });
  }

  int validate() {
    const std::string text = read_file(file);
    const std::string format = detect_format(text);
    std::string what;
    if (format == "mtree" && is_run_file(text)) {
      const RunFile r = parse_run(text, file);
      what = "run " + r.machine.name() + " of " + r.automaton_name + " on " + r.tree_name;
    } else if (format == "mtree") {
      what = "mtree " + parse_mtree(text, file).name();
    } else if (format == "chain") {
      what = "chain " + parse_chain(text, file).name();
    } else if (format == "pta") {
      what = "pta " + parse_pta(text, file).name();
    } else if (format == "fta") {
      what = "fta " + parse_fta(text, file).name();
    } else if (format == "node") {
      what = "ftree with " + std::to_string(parse_ftree(text, file).size()) + " nodes";
    } else if (format == "game") {
      const ParityGameArena g = parse_game(text, file);
      g.validate();
      what = "game " + g.name();
    } else if (format == "moore") {
      what = "moore " + parse_moore(text, file).name();
    } else if (format == "straj") {
      if (automaton.empty()) {
        throw Error(ErrorCode::InvalidArgument, "a .straj file needs -a <pta>");
      }
      what = "straj " + parse_straj(text, load_pta(automaton), file).name();
    } else {
      throw ParseError(file, 1, "expected a format keyword (mtree, chain, pta, fta, "
                                "ftree, game, moore, straj), found '" + format + "'");
    }
    out << "ok " << what << "\n";
    return kExitOk;
  }

  void add_automaton_tree(CLI::App* sub) {
    sub->add_option("-a,--automaton", automaton, "Automaton (.pta)")->required();
    sub->add_option("-t,--tree", tree, "Regular tree (.mtree)")->required();
  }

  void add_member() {
    CLI::App* sub = app.add_subcommand("member", "Decide t in L(A); exit 1 if not");
    add_automaton_tree(sub);
    sub->add_flag("--json", json, "JSON output");
    sub->callback([this] { handler = [this] { return member_cmd(); }; });
  }

  int member_cmd() {
    const bool yes = member(load_pta(automaton), load_tree(tree));
    if (json) {
      out << Json{{"member", yes}}.dump() << "\n";
    } else {
      out << (yes ? "true" : "false") << "\n";
    }
    return yes ? kExitOk : kExitNegative;
  }

  void add_classify() {
    CLI::App* sub = app.add_subcommand("classify", "Number of accepting runs of A on t");
    add_automaton_tree(sub);
    sub->add_option("--max-k", max_k, "Count exactly up to this bound")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "JSON output");
    sub->callback([this] { handler = [this] { return classify_cmd(); }; });
  }

  int classify_cmd() {
    const ParityTreeAutomaton a = load_pta(automaton);
    const RegularTree t = load_tree(tree);
    const AmbiguityVerdict v = classify(a, t, max_k);
    if (json) {
      out << verdict_json(a, t, v).dump() << "\n";
    } else {
      out << v.str() << "\n";
      if (v.witness) {
        out << "witness " << shape_name(v.witness->shape) << " at ("
            << t.state_name(v.witness->tree_state) << ", "
            << a.state_name(v.witness->state) << ") node "
            << v.witness->position.str() << "\n";
      }
    }
    return kExitOk;
  }

  void add_ambiguous() {
    CLI::App* sub = app.add_subcommand(
        "ambiguous", "Decide whether A has at most k runs on every tree; exit 1 if not");
    sub->add_option("-a,--automaton", automaton, "Automaton (.pta)")->required();
    sub->add_option("-k", k, "Bound")->required()->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "JSON output");
    sub->callback([this] { handler = [this] { return ambiguous_cmd(); }; });
  }

  int ambiguous_cmd() {
    const bool yes = is_k_ambiguous(load_pta(automaton), k);
    if (json) {
      out << Json{{"k", k}, {"k_ambiguous", yes}}.dump() << "\n";
    } else {
      out << (yes ? "true" : "false") << "\n";
    }
    return yes ? kExitOk : kExitNegative;
  }

  void add_empty() {
    CLI::App* sub =
        app.add_subcommand("empty", "Decide L(A) = {}; exit 1 if nonempty");
    sub->add_option("-a,--automaton", automaton, "Automaton (.pta)")->required();
    sub->add_option("--witness", witness, "Write an accepted regular tree here");
    sub->add_flag("--json", json, "JSON output");
    sub->callback([this] { handler = [this] { return empty_cmd(); }; });
  }

  int empty_cmd() {
    const std::optional<RegularTree> t = emptiness(load_pta(automaton));
    if (t && !witness.empty()) write_file(witness, write_mtree(*t));
    if (json) {
      out << Json{{"empty", !t.has_value()}}.dump() << "\n";
    } else {
      out << (t ? "nonempty" : "empty") << "\n";
    }
    return t ? kExitNegative : kExitOk;
  }

  void add_construct() {
    CLI::App* sub = app.add_subcommand("construct", "Automaton and tree constructions");
    sub->require_subcommand(1);
    auto output_option = [this](CLI::App* c) {
      c->add_option("-o,--output", output, "Output file (default stdout)");
    };

    CLI::App* u = sub->add_subcommand("union", "L(A) u L(B)");
    u->add_option("-a", automaton, "First automaton")->required();
    u->add_option("-b", other, "Second automaton")->required();
    output_option(u);
    u->callback([this] {
      handler = [this] {
        emit(output, write_pta(union_of(load_pta(automaton), load_pta(other))), out);
        return kExitOk;
      };
    });

    CLI::App* i = sub->add_subcommand("intersect", "L(A) n L(B)");
    i->add_option("-a", automaton, "First automaton")->required();
    i->add_option("-b", other, "Second automaton")->required();
    output_option(i);
    i->callback([this] {
      handler = [this] {
        emit(output, write_pta(intersect(load_pta(automaton), load_pta(other))), out);
        return kExitOk;
      };
    });

    CLI::App* s = sub->add_subcommand("single-init", "Equivalent automaton with one initial state");
    s->add_option("-a", automaton, "Automaton")->required();
    output_option(s);
    s->callback([this] {
      handler = [this] {
        emit(output, write_pta(single_initial(load_pta(automaton))), out);
        return kExitOk;
      };
    });

    CLI::App* r = sub->add_subcommand("restrict", "Keep only the named initial states");
    r->add_option("-a", automaton, "Automaton")->required();
    r->add_option("--init", states, "Initial states to keep")->required()->delimiter(',');
    output_option(r);
    r->callback([this] {
      handler = [this] {
        emit(output, write_pta(restrict_initials(load_pta(automaton), states)), out);
        return kExitOk;
      };
    });

    CLI::App* d = sub->add_subcommand("reduce", "Automaton for the preimage under a Moore relabeling");
    d->add_option("-a", automaton, "Automaton")->required();
    d->add_option("-m,--moore", moore, "Moore machine (.moore)")->required();
    output_option(d);
    d->callback([this] {
      handler = [this] {
        const MooreMachine mm = parse_moore(read_file(moore), moore);
        emit(output, write_pta(moore_reduction(load_pta(automaton), mm)), out);
        return kExitOk;
      };
    });

    CLI::App* g = sub->add_subcommand("graft", "Graft a tree at a node or an antichain");
    g->add_option("-t", tree, "Host tree")->required();
    g->add_option("-s", other, "Grafted tree")->required();
    CLI::Option* at_opt = g->add_option("--at", at, "Node, e.g. lr or - for the root");
    CLI::Option* chain_opt = g->add_option("--chain", chain, "Antichain (.chain)");
    at_opt->excludes(chain_opt);
    output_option(g);
    g->callback([this] {
      handler = [this] {
        if (at.empty() == chain.empty()) {
          throw Error(ErrorCode::InvalidArgument, "give exactly one of --at and --chain");
        }
        const RegularTree host = load_tree(tree);
        const RegularTree scion = load_tree(other);
        const RegularTree result =
            at.empty() ? graft_antichain(host, scion, parse_chain(read_file(chain), chain))
                       : graft_node(host, scion, NodePath(at));
        emit(output, write_mtree(result), out);
        return kExitOk;
      };
    });
  }

  void add_zoo() {
    CLI::App* sub = app.add_subcommand("zoo", "Write a catalogued automaton, tree or representation");
    sub->add_option("name", name,
                    "neg_union, exists_a1, complement_singleton, lfa, lfa_tree, frak, "
                    "no_max, perf, x_subset_ydown, free2, niwinski, representation")
        ->required();
    sub->add_option("-k", k, "neg_union: number of components; lfa_tree: graft depth");
    sub->add_option("-m", m, "lfa_tree: depth of the a1 subtree");
    sub->add_option("--tree", tree, "Tree for complement_singleton and frak; t' for lfa_tree");
    sub->add_option("--alphabet", letters, "Extra letters")->delimiter(',');
    sub->add_option("--rep", rep, "Representation directory, or shipped name");
    sub->add_option("-o,--output", output, "Output file or directory");
    sub->callback([this] { handler = [this] { return zoo_cmd(); }; });
  }

  Alphabet tree_alphabet(const RegularTree& t) const {
    return t.alphabet().merged(Alphabet(letters));
  }

  int zoo_cmd() {
    if (name == "lfa_tree") {
      const RegularTree t = tree.empty() ? lfa_tree(m) : lfa_tree(k, m, load_tree(tree));
      emit(output, write_mtree(t), out);
      return kExitOk;
    }
    if (name == "representation") {
      const std::vector<NiwinskiRepresentation> shipped = shipped_representations();
      const auto it = std::find_if(shipped.begin(), shipped.end(),
                                   [&](const auto& r) { return r.name == rep; });
      if (it == shipped.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "unknown representation '" + rep +
                        "' (single_tc, root_or_cherry, right_combs)");
      }
      if (output.empty()) throw Error(ErrorCode::InvalidArgument, "-o <directory> is required");
      save_representation(*it, output);
      return kExitOk;
    }
    emit(output, write_pta(zoo_automaton()), out);
    return kExitOk;
  }

  ParityTreeAutomaton zoo_automaton() const {
    if (name == "neg_union") return zoo_neg_union(k);
    if (name == "exists_a1") return zoo_exists_a1();
    if (name == "lfa") return zoo_lfa();
    if (name == "no_max") return zoo_no_max();
    if (name == "perf") return zoo_perf();
    if (name == "x_subset_ydown") return zoo_x_subset_ydown();
    if (name == "free2") return zoo_free2();
    if (name == "complement_singleton" || name == "frak") {
      if (tree.empty()) throw Error(ErrorCode::InvalidArgument, name + " needs --tree");
      const RegularTree t = load_tree(tree);
      const Alphabet sigma = tree_alphabet(t);
      const ParityTreeAutomaton anb = zoo_complement_singleton(t, sigma);
      if (name == "complement_singleton") return anb;
      return zoo_frak_scheme(det_pta_for_tree(t.with_alphabet(sigma)), anb);
    }
    if (name == "niwinski") {
      if (rep.empty()) throw Error(ErrorCode::InvalidArgument, "niwinski needs --rep <dir>");
      return niwinski_unambiguous(load_representation(rep));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown zoo entry '" + name + "'");
  }

  void add_game() {
    CLI::App* sub = app.add_subcommand("game", "Membership games");
    sub->require_subcommand(1);

    CLI::App* b = sub->add_subcommand("build", "Write the membership game of A on t");
    add_automaton_tree(b);
    b->add_option("-o,--output", output, "Output .game file (default stdout)");
    b->add_option("--dot", dot, "Also write Graphviz");
    b->callback([this] {
      handler = [this] {
        const MembershipGame g = build_game(load_pta(automaton), load_tree(tree));
        emit(output, write_game(g.arena()), out);
        if (!dot.empty()) write_file(dot, arena_to_dot(g.arena()));
        return kExitOk;
      };
    });

    CLI::App* s = sub->add_subcommand("solve", "Winning regions and strategies");
    s->add_option("-g,--game", file, "Game (.game)")->required();
    s->add_option("--dot", dot, "Write Graphviz colored by winner");
    s->add_flag("--oracle", oracle, "Use small progress measures");
    s->add_flag("--json", json, "JSON output");
    s->callback([this] { handler = [this] { return solve_cmd(); }; });
  }

  int solve_cmd() {
    const ParityGameArena g = parse_game(read_file(file), file);
    g.validate();
    const WinningAnalysis w = oracle ? solve_oracle(g) : solve(g);
    auto chosen = [&](int v) -> std::string {
      const int s = w.strategy(w.winner[v])[v];
      return s < 0 ? std::string() : g.vertex(s).name;
    };
    if (json) {
      Json vertices = Json::array();
      for (int v = 0; v < g.num_vertices(); ++v) {
        Json vj{{"name", g.vertex(v).name}, {"winner", player_name(w.winner[v])}};
        if (!chosen(v).empty()) vj["move"] = chosen(v);
        vertices.push_back(vj);
      }
      out << Json{{"initial", g.vertex(g.initial()).name},
                  {"initial_winner", player_name(w.winner[g.initial()])},
                  {"vertices", vertices}}
                 .dump()
          << "\n";
    } else {
      out << "initial " << g.vertex(g.initial()).name << " "
          << player_name(w.winner[g.initial()]) << "\n";
      for (int v = 0; v < g.num_vertices(); ++v) {
        out << "vertex " << g.vertex(v).name << " " << player_name(w.winner[v]);
        if (!chosen(v).empty()) out << " -> " << chosen(v);
        out << "\n";
      }
    }
    if (!dot.empty()) write_file(dot, arena_to_dot(g, &w));
    return kExitOk;
  }

  void add_run() {
    CLI::App* sub = app.add_subcommand("run", "An accepting regular run; exit 1 if t is not in L(A)");
    add_automaton_tree(sub);
    sub->add_option("-o,--output", output, "Output file (default stdout)");
    sub->callback([this] {
      handler = [this] {
        emit(output, write_run(accepting_run(load_pta(automaton), load_tree(tree))), out);
        return kExitOk;
      };
    });
  }

  void add_strategy() {
    CLI::App* sub = app.add_subcommand(
        "strategy", "A winning Pathfinder strategy; exit 1 if t is in L(A)");
    add_automaton_tree(sub);
    sub->add_option("-o,--output", output, "Output file (default stdout)");
    sub->callback([this] {
      handler = [this] {
        const ParityTreeAutomaton a = load_pta(automaton);
        emit(output, write_straj(pathfinder_strategy(a, load_tree(tree)), a), out);
        return kExitOk;
      };
    });
  }

  void add_leads() {
    CLI::App* sub = app.add_subcommand(
        "leads", "Follow a refuting strategy on t0 and a run on t' to a differing node");
    sub->add_option("-a,--automaton", automaton, "Automaton (.pta)")->required();
    sub->add_option("--t0", t0, "Rejected tree")->required();
    sub->add_option("--tprime", tprime, "Accepted tree")->required();
    sub->add_option("--run", run_path, "Accepting run on t' (run file)")->required();
    sub->add_option("--straj", straj, "Pathfinder strategy on t0 (.straj)")->required();
    sub->add_flag("--json", json, "JSON output");
    sub->callback([this] { handler = [this] { return leads_cmd(); }; });
  }

  int leads_cmd() {
    const ParityTreeAutomaton a = load_pta(automaton);
    const RegularTree tree0 = load_tree(t0);
    const RegularTree tree1 = load_tree(tprime);
    const RunFile rf = parse_run(read_file(run_path), run_path);
    const RegularRun run(rf.machine, a, tree1);
    const PathfinderStrategyTree s = parse_straj(read_file(straj), a, straj);
    const NodePath v = leads(a, tree0, s, tree1, run);
    if (json) {
      out << Json{{"node", v.str()},
                  {"t0", tree0.symbol_at(v)},
                  {"tprime", tree1.symbol_at(v)}}
                 .dump()
          << "\n";
    } else {
      out << v.str() << " " << tree0.symbol_at(v) << " " << tree1.symbol_at(v) << "\n";
    }
    return kExitOk;
  }

  void add_suite() {
    CLI::App* sub = app.add_subcommand("suite", "Run the acceptance criteria");
    sub->add_option("--only", only, "Run a single criterion");
    sub->callback([this] {
      handler = [this] { return run_acceptance(out, only) ? kExitOk : kExitNegative; };
    });
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Cli cli(out, err);
  try {
    // CLI11 consumes a reversed argument vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = cli.app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return cli.handler();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::NotMember || e.code() == ErrorCode::IsMember) {
      return kExitNegative;
    }
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace treeamb
