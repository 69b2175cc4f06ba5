#pragma once

#include <wg/streams.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wg {

// Degree in nat or omega.
struct Degree {
    bool omega = false;
    nat n = 0;

    static auto inf() -> Degree { return {true, 0}; }
    static auto of(nat k) -> Degree { return {false, k}; }
    auto operator==(const Degree&) const -> bool = default;
    auto str() const -> std::string { return omega ? "omega" : std::to_string(n); }
};

enum class Finiteness { Finite, Infinite, Unknown };

using Edge = std::pair<nat, nat>;
auto edge_key(nat a, nat b) -> Edge;

struct FinGraph {
    std::set<nat> v;
    std::set<Edge> e;

    void add_vertex(nat x) { v.insert(x); }
    void add_edge(nat a, nat b);
    auto has_vertex(nat x) const -> bool { return v.count(x) != 0; }
    auto has_edge(nat a, nat b) const -> bool { return a != b && e.count(edge_key(a, b)) != 0; }
    auto degree(nat x) const -> nat;
    auto neighbors(nat x) const -> std::vector<nat>;
    auto size() const -> std::size_t { return v.size(); }
    auto induced(const std::set<nat>& keep) const -> FinGraph;
    auto vertex_list() const -> std::vector<nat> { return {v.begin(), v.end()}; }
    auto operator==(const FinGraph&) const -> bool = default;
};

auto fin_from_edges(nat n, const std::vector<Edge>& edges) -> FinGraph;
auto to_json(const FinGraph& g) -> std::string;
auto fin_from_json(const std::string& text) -> FinGraph;
auto to_dot(const FinGraph& g, const std::string& name = "G") -> std::string;

// nullopt means infinite distance.
auto distance(const FinGraph& g, nat v, nat w) -> std::optional<nat>;
auto shortest_path(const FinGraph& g, nat v, nat w) -> std::vector<nat>;
auto is_connected(const FinGraph& g) -> bool;
auto components(const FinGraph& g) -> std::vector<std::set<nat>>;
auto is_acyclic(const FinGraph& g) -> bool;
auto is_promptly_connected(const FinGraph& g) -> bool;
// Brute force with degree pruning; intended for small graphs.
auto isomorphic(const FinGraph& a, const FinGraph& b) -> bool;
auto is_complete(const FinGraph& g) -> bool;

// Strings over nat and their code: 0 for the empty string, otherwise
// 1 + pair(len-1, rank) where rank orders tuples of that length by sum and
// then lexicographically.
using Str = std::vector<nat>;
auto str_code(const Str& s) -> nat;
auto str_decode(nat code) -> Str;
auto is_prefix(const Str& a, const Str& b) -> bool;
auto comparable(const Str& a, const Str& b) -> bool;
auto str_format(const Str& s) -> std::string;
auto str_parse(const std::string& text) -> Str;

class TreeGen {
  public:
    enum class Kind { Finite, FullBinary, SinglePath, LevelRule, DisjointUnion, Union, Cone };

    // nullopt children: the node has infinitely many children (every n, for a
    // level rule; a Cone may skip some).
    using ChildFn = std::function<std::optional<std::vector<nat>>(const Str&)>;
    struct Rule {
        ChildFn children;
        bool finitely_branching = true;
        bool binary = false;
        std::optional<nat> depth_bound;
        std::optional<CertifiedStream> path;
        std::string name = "rule";
    };

    static auto finite(std::set<Str> nodes) -> TreeGen;
    static auto full_binary() -> TreeGen;
    static auto single_path(CertifiedStream f) -> TreeGen;
    static auto level_rule(Rule rule) -> TreeGen;
    // {<>} together with <i>t for t in parts[i]
    static auto disjoint_union(std::vector<TreeGen> parts) -> TreeGen;
    static auto set_union(TreeGen a, TreeGen b) -> TreeGen;
    static auto cut(nat depth) -> TreeGen; // full binary tree of height depth
    // A fresh root whose child i carries subtree prefix[i], then period entries
    // cyclically; an empty entry means <i> is not in the tree.
    static auto cone(std::vector<std::optional<TreeGen>> prefix, std::vector<std::optional<TreeGen>> period)
        -> TreeGen;

    auto kind() const -> Kind;
    auto contains(const Str& s) const -> bool;
    auto children(const Str& s) const -> std::optional<std::vector<nat>>;
    auto finitely_branching() const -> bool;
    auto binary() const -> bool;
    auto finiteness() const -> Finiteness;
    auto node_at(nat k) const -> std::optional<Str>;
    auto nodes(nat n) const -> std::vector<Str>;
    auto nodes_to_depth(nat depth, nat cap = 100000) const -> std::vector<Str>;
    // number of extensions of s at depth m; nullopt when infinite or unknown
    auto extensions_at(const Str& s, nat m) const -> std::optional<nat>;
    auto well_founded() const -> std::optional<bool>;
    auto height() const -> std::optional<nat>;
    auto path_certificate() const -> std::optional<CertifiedStream>;
    auto describe() const -> std::string;

    auto finite_nodes() const -> const std::set<Str>&;
    auto path_stream() const -> const CertifiedStream&;
    auto parts() const -> const std::vector<TreeGen>&;
    auto rule() const -> const Rule&;
    auto cone_child(nat i) const -> std::optional<TreeGen>;
    auto cone_prefix() const -> const std::vector<std::optional<TreeGen>>&;
    auto cone_period() const -> const std::vector<std::optional<TreeGen>>&;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

enum class Construction { L1, L2 };

struct CustomGraph {
    std::string name = "custom";
    std::function<bool(nat)> has_vertex;
    std::function<bool(nat, nat)> has_edge;
    std::function<Degree(nat)> degree;                     // empty: DegreeUnknown
    std::function<std::optional<nat>(nat)> vertex_at;      // k-th vertex in canonical order
    std::function<std::vector<nat>(nat, nat)> neighbors;   // optional
    Finiteness finiteness = Finiteness::Unknown;
};

class GraphGen {
  public:
    enum class Kind {
        Finite, Ray, TwoWayRay, CompleteOmega, FullBinaryTree, TreeT, ForestF, RayN, CycleN, CompleteN,
        DisjointUnion, OmegaCopies, ConnectedUnion, L1, L2, TreeGraph, FromGrName, Custom, Family
    };

    static auto finite(FinGraph g) -> GraphGen;
    static auto standard(Kind kind, nat n = 0) -> GraphGen;
    static auto ray() -> GraphGen { return standard(Kind::Ray); }
    static auto two_way_ray() -> GraphGen { return standard(Kind::TwoWayRay); }
    static auto complete_omega() -> GraphGen { return standard(Kind::CompleteOmega); }
    static auto ray_n(nat n) -> GraphGen { return standard(Kind::RayN, n); }
    static auto cycle_n(nat n) -> GraphGen { return standard(Kind::CycleN, n); }
    static auto complete_n(nat n) -> GraphGen { return standard(Kind::CompleteN, n); }
    static auto disjoint_union(std::vector<GraphGen> parts) -> GraphGen;
    static auto omega_copies(GraphGen g) -> GraphGen;
    // disjoint union over n of prefix[n], then period entries cyclically
    static auto family(std::vector<GraphGen> prefix, std::vector<GraphGen> period) -> GraphGen;
    auto family_part(nat n) const -> const GraphGen&;
    auto family_prefix() const -> const std::vector<GraphGen>&;
    auto family_period() const -> const std::vector<GraphGen>&;
    static auto connected_union(std::vector<GraphGen> parts) -> GraphGen;
    static auto construction(Construction mode, TreeGen t, GraphGen g) -> GraphGen;
    static auto tree_graph(TreeGen t) -> GraphGen;
    static auto from_gr_name(CertifiedStream p) -> GraphGen;
    static auto custom(CustomGraph c) -> GraphGen;

    auto kind() const -> Kind;
    auto param() const -> nat;
    auto parts() const -> const std::vector<GraphGen>&;
    auto tree() const -> const TreeGen&;
    auto gr_stream() const -> const CertifiedStream&;

    auto has_vertex(nat v) const -> bool;
    auto has_edge(nat a, nat b) const -> bool;
    auto degree(nat v) const -> Degree;
    auto finiteness() const -> Finiteness;
    auto size() const -> std::optional<nat>;
    auto vertex_at(nat k) const -> std::optional<nat>;
    auto enumerate(nat n) const -> std::vector<nat>;
    // up to n neighbors in canonical order; may stop early after a bounded scan
    auto neighbors(nat v, nat n) const -> std::vector<nat>;
    auto index_of(nat v, nat limit = 1 << 20) const -> std::optional<nat>;
    auto truncate(nat n) const -> FinGraph;
    auto induced(const std::vector<nat>& vs) const -> FinGraph;
    auto materialize() const -> FinGraph; // finite graphs only
    auto describe() const -> std::string;

    // connected-union vertex codes
    static auto glue_code(nat junction) -> nat { return pair(1, junction); }
    static auto part_code(nat part, nat v) -> nat { return pair(0, pair(part, v)); }

    struct Impl;

  private:
    std::shared_ptr<Impl> impl_;
    friend struct GraphAccess;
};

auto tree_to_graph(const TreeGen& t) -> GraphGen;
// Paths from the root become strings of vertices, coded by string position.
auto graph_to_tree(const FinGraph& g, nat root) -> std::set<Str>;

// Prompt-connectivity relabeling of a Gr name; fuel bounds the input reads spent per output index.
struct PcState;
struct PcResult {
    CertifiedStream name;
    std::shared_ptr<PcState> state;
    auto iota() const -> std::map<nat, nat>;
};
auto pc(const CertifiedStream& gr_name, nat fuel) -> PcResult;

// Leftmost increasing ray in a locally finite promptly connected graph. Each
// committed entry is chosen with a lookahead of `horizon` levels.
auto increasing_ray_tree(const GraphGen& g, nat horizon = 24) -> CertifiedStream;

} // namespace wg
