#pragma once

#include <wg/problems.hpp>

#include <json.hpp>

#include <string>

namespace wg {

// Graph specs:
//   k3 r4 c5 t2 f1     complete, finite ray, cycle, tree T_n, forest F_n
//   kw ray L fbt empty K_omega, R, two-way ray, full binary tree, no vertices
//   {"v":[..],"e":[..]} a finite graph
//   union(g,..) copies(g) join(g,..) l1(t,g) l2(t,g) tree(t)
// Tree specs:
//   path(ec:[0];0) binary cut(3) finite([[],[0],[0,1]]) tunion(t,t) dunion(t,..)
// ParseError on anything else.
auto parse_graph(const std::string& text) -> GraphGen;
auto parse_tree(const std::string& text) -> TreeGen;

// "egr:<graph>", "gr:<graph>" or a bare graph (Gr). After the space tag a
// stream spec ("ec:..", "per:..") is taken as the raw name. A JSON name (see
// name_to_json), inline or in a file, is read back as well, as is a CLI
// report holding one under result.name.
auto parse_host(const std::string& text) -> SpaceName;

// {"space":"EGr","stream":"ec:[..];t","prefix":[..]}. Generator streams have
// no spec and are read back from the prefix alone: an EGr prefix as the graph
// it enumerates, a Gr prefix padded with 0.
auto name_to_json(const SpaceName& name, nat prefix) -> nlohmann::json;
auto name_from_json(const nlohmann::json& j) -> SpaceName;

// A finite graph: JSON text, a path to a JSON file, or a finite graph spec.
auto parse_pattern(const std::string& text) -> FinGraph;

// {"leaf":"ec:[..];t"} or {"prefix":[towers..],"period":[towers..]}
auto parse_tower(const std::string& text) -> Tower;

} // namespace wg
