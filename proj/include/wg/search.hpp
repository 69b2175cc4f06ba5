#pragma once

#include <wg/decide.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wg {

// A copy of the pattern inside the host. Position k of `inclusion` is
// pair(pattern vertex, host vertex) + 1 when output position k introduced that
// host vertex, else 0. stage_of(k) is the number of host positions read
// before output position k was produced.
struct SolutionStream {
    SpaceName copy;
    CertifiedStream inclusion = CertifiedStream::constant(0);
    std::function<nat(nat)> stage_of;
    std::map<std::string, nat> cert;
};

// Everything the first n positions of a solution commit to.
struct SolutionPrefix {
    FinGraph copy;
    Embedding map; // sorted by pattern vertex
};
auto read_solution(const SolutionStream& s, nat n) -> SolutionPrefix;

// Checks the first n output positions: injective map, every emitted code
// present in the host at its emission stage, mapped pattern edges present in
// the copy and no copy edge outside the pattern. Returns the first problem.
auto revalidate(const SolutionStream& s, const SpaceName& host, const GraphGen& pattern, nat n)
    -> std::optional<std::string>;
// same, with membership read off a structural host
auto revalidate(const SolutionStream& s, const GraphGen& host, const GraphGen& pattern, nat n)
    -> std::optional<std::string>;

// Least embedding in the first truncation containing one, frozen as a Gr name.
auto find_s_finite(const FinGraph& g, const SpaceName& h, nat fuel) -> std::optional<SolutionStream>;

// Choice over ℕ given by a negative-information stream: position t holds n+1
// once n has been removed. `member` is an optional certificate.
struct CnInstance {
    CertifiedStream complement = CertifiedStream::constant(0);
    std::function<std::optional<bool>(nat)> member;
};
using CnOracle = std::function<nat(const CnInstance&)>;

// Bijection between ℕ^k and ℕ ordering tuples by largest entry, then
// lexicographically. Keeps codes of short tuples with small entries small.
auto tuple_code(const Str& s) -> nat;
auto tuple_decode(nat k, nat r) -> Str;

// Codes n = pair(tuple_code(sigma), t) with |sigma| = |G|: sigma(i) is the
// position, in order of first appearance in h, of the image of the i-th
// pattern vertex; t is the stage by which the copy must be present and induced.
auto stable_code_set(const FinGraph& g, const SpaceName& h) -> CnInstance;
auto decode_stable_code(const FinGraph& g, const SpaceName& h, nat n) -> SolutionStream;
auto find_is_via_cn(const FinGraph& g, const SpaceName& h, const CnOracle& cn) -> SolutionStream;

// ⊕F_i with components listed as prefix, then period repeated.
struct ComponentCert {
    std::vector<FinGraph> prefix, period;
    auto graph() const -> GraphGen;
    auto component(nat i) const -> const FinGraph&;
    // indices i whose F_i is a subgraph of only finitely many F_j
    auto exceptional() const -> std::vector<nat>;
};
auto find_s_components(const ComponentCert& g, const SpaceName& h, nat fuel = 1 << 16) -> SolutionStream;

struct RayKind {
    enum class Kind { TwoWayRay, CycleTailRay, CompleteTailRay, FullBinaryTree } kind = Kind::TwoWayRay;
    nat n = 0; // cycle length or clique size
};
// A stream p with (p(i), p(i+1)) an edge of the host for every i.
// FullBinaryTree hosts label vertices by string codes.
auto ray_follow(RayKind kind, const SpaceName& h, nat fuel = 1 << 16) -> CertifiedStream;

using Lim2Oracle = std::function<nat(const CertifiedStream&)>;
// 1 at stage s iff, in the host read so far, the side of v away from w
// holds more vertices than the side through w
auto ray_probe_stream(const SpaceName& h, nat fuel = 1 << 16) -> CertifiedStream;
auto emb_ray_r(const SpaceName& h, const Lim2Oracle& lim2, nat fuel = 1 << 16) -> CertifiedStream;

struct PathMode {
    enum class Kind { L1, L2, L2Oracle } kind = Kind::L1;
    nat n = 0;
    std::function<nat(nat)> lambda;
};
// Least k such that at least n of the first `scan` vertices have degree <= k.
auto degree_lambda(const GraphGen& g, nat n, nat scan = 4096) -> nat;

// Stream of str codes sigma_0 ⊑ sigma_1 ⊑ ... along a path of the tree of a
// construction host, read from a solution copy.
auto path_from_solution(PathMode mode, const SolutionStream& sol, const GraphGen& host, nat fuel = 1 << 16)
    -> CertifiedStream;

// The copy of the base graph along the certified path of a construction host:
// base vertex v_k sits at f restricted to k.
auto canonical_construction_copy(const GraphGen& host) -> SolutionStream;
// A ray through a certified tree-like host, as a Gr copy of R.
auto canonical_ray_copy(const GraphGen& host) -> SolutionStream;

// Path through the host tree read from a ray copy, deciding with lim2 where
// the ray stops descending. Uses the "ascending_from" certificate when present.
auto ray_path_via_lim2(const SolutionStream& ray, const Lim2Oracle& lim2, nat fuel = 1 << 16) -> CertifiedStream;

auto restrict_to_connected(const SpaceName& h, nat v, nat fuel = 1 << 16) -> SpaceName;

auto find_t3(const GraphGen& h, nat scan = 1 << 12) -> SolutionStream;

// Greatest j with v starting a j-chain taken among infinitely many neighbours
// (nullopt for no bound); PredicateUnsupported outside the supported algebra.
auto infinite_level(const GraphGen& h, nat v) -> std::optional<nat>;
auto find_f2k2(const GraphGen& h, nat k, nat scan = 1 << 12) -> SolutionStream;

// Host: Gr name of a binary tree graph on string codes. Solution: Gr copy of a
// ray. Emits the unique solution vertex at each level that has exactly one.
auto cantor_unique_path(const SpaceName& host, const SpaceName& solution, nat max_level = 20) -> CertifiedStream;

} // namespace wg
