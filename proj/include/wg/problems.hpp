#pragma once

#include <wg/gadgets.hpp>
#include <wg/search.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wg {

// An n-fold limit tower. Depth 0 is a stream; depth d lists towers of depth
// d-1 as prefix then period repeated, and stands for their pointwise limit.
struct Tower {
    CertifiedStream leaf = CertifiedStream::constant(0);
    std::vector<Tower> prefix, period;

    auto depth() const -> nat;
    auto entry(nat s) const -> const Tower&;
};
// the stream the tower converges to; NotConvergent if the period disagrees
auto tower_value(const Tower& t) -> CertifiedStream;

// Whatever a problem reads; each problem consults only its own fields.
struct Instance {
    std::optional<CertifiedStream> stream;
    std::optional<Tower> tower;
    std::optional<TreeGen> tree;
    std::optional<CnInstance> cn;
    std::optional<SpaceName> name;
    std::optional<GraphGen> graph;
};

struct Answer {
    std::optional<nat> value;
    std::optional<CertifiedStream> stream;
    std::optional<SolutionStream> solution;
};

struct Problem {
    std::string name;
    // nullopt when the instance has the right shape
    std::function<std::optional<std::string>(const Instance&)> validate;
    std::function<Answer(const Instance&, nat fuel)> solve;
    std::function<std::optional<std::string>(const Instance&, const Answer&)> check;
    nat fuel = 1000;
};

// lpo, lpo1, lpo2, lim, lim2, lim2-fueled, cn, wf, ccantor, cbaire
auto problem(const std::string& name) -> Problem;
auto problem_names() -> std::vector<std::string>;

// G ⊆ H (induced or not) for H given as instance.name
auto contains_problem(FinGraph g, bool induced) -> Problem;
// Emb_R on instance.name, the side of the first edge picked by `lim2`
auto emb_ray_problem(Problem lim2) -> Problem;
// a Gr copy of R through the certified path of an L1/L2/tree host in instance.graph
auto find_ray_problem() -> Problem;

// Validates, solves, then runs the problem's own checker.
auto oracle_call(const Problem& p, const Instance& in, std::optional<nat> fuel = std::nullopt) -> Answer;

// Component labels of a certified Gr name: f(v) is the least vertex joined to v.
auto d_components(const SpaceName& h) -> CertifiedStream;

// Ψ's view of the original input. In strong mode every access throws.
class InputView {
  public:
    InputView(const Instance& in, bool strong) : in_(&in), strong_(strong) {}
    auto get() const -> const Instance&;

  private:
    const Instance* in_;
    bool strong_;
};

struct ReductionHarness {
    enum class Strength { Weak, Strong };
    std::string name;
    std::function<Instance(const Instance&)> forward;
    std::function<Answer(const InputView&, const Answer&)> backward;
    Strength strength = Strength::Strong;
};

auto compose(const ReductionHarness& h, const Problem& oracle, const Instance& input,
    std::optional<nat> fuel = std::nullopt) -> Answer;

// p ↦ sigma1_gadget(p, G), decoded by reading the oracle's bit
auto sigma1_harness(FinGraph g) -> ReductionHarness;
// q ↦ a ray whose first edge tells lim q
auto lim2_embR_harness() -> ReductionHarness;
// T ↦ L1(T, R); the ray copy is turned back into a path with lim2
auto baire_harness(Problem lim2) -> ReductionHarness;

} // namespace wg
