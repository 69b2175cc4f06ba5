#pragma once

#include <wg/decide.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wg {

// A gadget's result: a name or a graph, plus whatever finite facts the paired
// decoder needs. Hints are computed from the input stream only.
struct GadgetOutput {
    std::optional<SpaceName> name;
    std::optional<GraphGen> graph;
    std::map<std::string, nat> hint;
};

// Empty graph while p stays 0; one copy of G on labels s+1.. after the first 1 at s.
auto sigma1_gadget(const CertifiedStream& p, const FinGraph& g) -> GadgetOutput;

// p(s)=0 adds a fresh copy of G, p(s)=1 completes everything seen so far.
// G must not be complete.
auto sigma2_gadget(const CertifiedStream& p, const FinGraph& g) -> GadgetOutput;

// Forest of trees, the components listed as prefix then period repeated.
// Components have height at most k; `bit` is the intended value of
// F_{2k+2} ⊆_s graph() and `bit_t` that of T_{2k+1} ⊆_s graph().
struct Forest {
    std::vector<TreeGen> prefix, period;
    nat k = 0;
    bool bit = false;
    bool bit_t = true;

    auto graph() const -> GraphGen;
};

// One isolated vertex per n with p(n) = 0, up to isomorphism; p must be certified.
auto forests_base(const CertifiedStream& p) -> Forest;
// {<>} ∪ {<n> : p(n) = 0}, the single tree lifted from forests_base
auto forests_base_tree(const CertifiedStream& p) -> TreeGen;
// each part G_n becomes one tree: a fresh root above the roots of G_n
auto forests_lift(const std::vector<Forest>& prefix, const std::vector<Forest>& period) -> Forest;

// Instances inside or outside P_level. Levels 3 and 4 index p by pair(n0, n1).
auto p_complete_generator(nat level, bool membership, nat seed) -> CertifiedStream;

// ACC_N instances: value m+1 at stage s means m left the set at s, 0 means nothing.
struct AccTrace {
    std::optional<nat> removed;
    std::optional<nat> removal_stage;
};
auto acc_trace(const CertifiedStream& complement_enum) -> AccTrace;
auto acc_gadget(const CertifiedStream& complement_enum) -> GadgetOutput;
// an answer in ℕ minus the removed point, read from a ray inside the gadget graph
auto acc_decode(const SpaceName& solution, const AccTrace& trace, nat fuel = 4096) -> nat;

// Even vertices grow the left arm, odd vertices the right one.
auto lim2_to_embR(const CertifiedStream& q) -> GadgetOutput;
auto embR_decode(const CertifiedStream& ray) -> nat;

// The box construction over the cycles C_i, i >= 3. P_n = C_{3n+3},
// F_n = C_{3n+4}, G_n = C_{3n+5}. The input tree is always wrapped as
// {<>} ∪ {1t : t ∈ T} so that its complement is infinite.
class CyclesBox {
  public:
    enum class Tag { P = 0, G = 1, F = 2 };
    struct Vertex {
        Tag tag;
        nat a = 0, b = 0, pos = 0; // P: (n, i), G: (x, copy), F: (s, n)
    };
    struct Dock {
        nat n = 0, i = 0, k = 0;
    };

    explicit CyclesBox(TreeGen t);

    auto graph() const -> GraphGen;
    auto in_wrapped(const Str& s) const -> bool;
    // s-th string outside the wrapped tree, in code order
    auto sigma(nat s) const -> Str;
    // docks taken by F_s, one per n < |sigma_s|
    auto stage_log(nat s) const -> std::vector<Dock>;

    static auto code(const Vertex& v) -> nat;
    static auto decode(nat c) -> std::optional<Vertex>;
    static auto triple(nat n, nat i, nat k) -> nat { return pair(n, pair(i, k)); }

    auto has_vertex(nat c) const -> bool;
    auto has_edge(nat a, nat b) const -> bool;
    // vertices of the copy of G picked by the path q of the wrapped tree,
    // restricted to P_n for n < depth, G_x for x < gx and F_s for s < fs
    auto canonical_solution(const Str& q, nat depth, nat gx, nat fs) const -> std::set<nat>;

  private:
    struct State;
    TreeGen base_;
    std::shared_ptr<State> st_;
    auto cycle(const Vertex& v) const -> std::vector<nat>;
    auto dock_of(nat s, nat n) const -> std::optional<Dock>;
};

// Path prefix through the original tree read from the P copies in a solution.
auto cycles_box_decode(const std::set<nat>& solution) -> Str;

// Π^0_n subsets of ℕ for n in {1, 2}, with complement ∪_i C_i.
// level 1: row(m)(i) = 1 iff m ∈ C_i.
// level 2: cells(m) lists streams for i = 0, 1, ... as prefix then period
// repeated; m ∈ C_i iff the stream for i has no 1.
struct PiSet {
    nat level = 1;
    std::function<CertifiedStream(nat)> row;
    std::function<std::pair<std::vector<CertifiedStream>, std::vector<CertifiedStream>>(nat)> cells;
};
using Big = boost::multiprecision::cpp_int;

// 0 if m ∈ A, else 1 + least i with m ∈ C_i
auto lambda_of(const PiSet& a, nat m) -> nat;
// k-th element: prod_{i<=k} p_i^{lambda(i)+1}
auto enuminf_encode(const PiSet& a) -> std::function<Big(nat)>;
// exponents minus one of a B element; NotInB when the shape is wrong
auto enuminf_factor(const Big& b) -> std::vector<nat>;
// chi_A from any enumeration of an infinite subset of B
auto enuminf_decode(std::function<Big(nat)> enumeration) -> CertifiedStream;

auto sigma11_choice_gadget(const std::vector<TreeGen>& trees) -> GadgetOutput;
auto choice_decode(nat vertex) -> nat;

} // namespace wg
