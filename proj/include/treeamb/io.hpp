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
// Line-oriented text formats. Lines starting with '#' and blank lines are
// ignored; tokens are separated by whitespace. Writers emit a canonical
// form, so reading and writing a canonical file reproduces it exactly.
// Readers throw ParseError with the file, the line, and what was expected.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "treeamb/automata.hpp"
#include "treeamb/games.hpp"
#include "treeamb/membership.hpp"
#include "treeamb/trees.hpp"
#include "treeamb/zoo.hpp"

namespace treeamb {

inline constexpr std::string_view kStdin = "<input>";

RegularTree parse_mtree(std::string_view text, std::string file = std::string(kStdin));
RegularAntichain parse_chain(std::string_view text, std::string file = std::string(kStdin));
ParityTreeAutomaton parse_pta(std::string_view text, std::string file = std::string(kStdin));
FiniteTreeAutomaton parse_fta(std::string_view text, std::string file = std::string(kStdin));
FiniteLabeledTree parse_ftree(std::string_view text, std::string file = std::string(kStdin));
ParityGameArena parse_game(std::string_view text, std::string file = std::string(kStdin));
MooreMachine parse_moore(std::string_view text, std::string file = std::string(kStdin));

// A run file is an .mtree whose alphabet is the automaton's state names,
// with the header line "run of=<pta> on=<tree>" after the first line.
struct RunFile {
  std::string automaton_name;
  std::string tree_name;
  RegularTree machine;
};
RunFile parse_run(std::string_view text, std::string file = std::string(kStdin));
PathfinderStrategyTree parse_straj(std::string_view text,
                                   const ParityTreeAutomaton& a,
                                   std::string file = std::string(kStdin));

std::string write_mtree(const RegularTree& t);
std::string write_chain(const RegularAntichain& c);
std::string write_pta(const ParityTreeAutomaton& a);
std::string write_fta(const FiniteTreeAutomaton& b);
std::string write_ftree(const FiniteLabeledTree& tau);
std::string write_game(const ParityGameArena& g);
std::string write_moore(const MooreMachine& m);
std::string write_run(const RegularRun& run);
std::string write_straj(const PathfinderStrategyTree& s,
                        const ParityTreeAutomaton& a);

// Vertices drawn as boxes (Automaton) or diamonds (Pathfinder), labeled
// "id:color"; with an analysis, filled by winner and strategy edges bold.
std::string arena_to_dot(const ParityGameArena& g,
                         const WinningAnalysis* analysis = nullptr);

// First significant token of a file: "mtree", "pta", "game", ...
std::string detect_format(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// A representation directory holds a manifest "rep" with lines
// "fta <file>" and "tree <leaf symbol> <file>".
NiwinskiRepresentation load_representation(const std::filesystem::path& dir);
void save_representation(const NiwinskiRepresentation& rep,
                         const std::filesystem::path& dir);

}  // namespace treeamb
