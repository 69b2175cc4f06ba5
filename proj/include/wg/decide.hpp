#pragma once

#include <wg/spaces.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wg {

// Pattern vertex -> host vertex, sorted by pattern vertex.
using Embedding = std::vector<std::pair<nat, nat>>;

// Lexicographically least embedding, by exhaustive backtracking.
auto fin_subgraph(const FinGraph& g, const FinGraph& h, bool induced) -> std::optional<Embedding>;
auto embedding_valid(const FinGraph& g, const FinGraph& h, const Embedding& f, bool induced) -> bool;

struct Verdict {
    enum class Kind { Found, Refuted, Unknown } kind = Kind::Unknown;
    Embedding witness;
    std::string reason;
    nat fuel_spent = 0;
};
auto verdict_name(Verdict::Kind k) -> const char*;

auto semidecide_s(const FinGraph& g, const SpaceName& h, bool induced, nat fuel) -> Verdict;

// G ⊆_is H for non-complete G, answered from H's certificate.
auto decide_is_egr_noncomplete(const FinGraph& g, const SpaceName& h) -> bool;

// Finite graph with the same finite (induced) subgraphs on at most n vertices,
// when the algebra node allows it.
auto finite_core(const GraphGen& h, nat n) -> std::optional<FinGraph>;
auto structural_contains(const FinGraph& g, const GraphGen& h, bool induced) -> bool;

enum class TfKind { T, F };
// T: T_{2k+1} ⊆_s H, F: F_{2k+2} ⊆_s H, by recursion on the algebra.
auto predicate_tf(TfKind kind, nat k, const GraphGen& h) -> bool;
// number of vertices v0 starting a chain v0, v1.., vk with each step taken
// from infinitely many neighbours (index j = chains of length k - j)
auto chain_counts(const GraphGen& h, nat k) -> std::vector<Degree>;

auto wf2(const TreeGen& t) -> bool;

} // namespace wg
