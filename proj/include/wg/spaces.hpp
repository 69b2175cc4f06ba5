#pragma once

#include <wg/graphs.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wg {

enum class Space { Gr, EGr, Tr, Tr2 };
auto space_name(Space s) -> const char*;

// A stream tagged with its space. `denotes`, when present, is a structural
// description of the named graph up to isomorphism; deciders use it as the
// certificate for questions the raw stream cannot settle. `literal` means
// the stream uses the same vertex labels as `denotes`.
struct SpaceName {
    Space space = Space::Gr;
    CertifiedStream stream;
    std::optional<GraphGen> denotes;
    bool literal = false;
};

struct Violation {
    nat index = 0;
    std::string rule;
};

auto validate_prefix(Space space, const std::vector<nat>& prefix) -> std::optional<Violation>;
auto validate_name(const SpaceName& name, nat n = 2000) -> std::optional<Violation>;

// EGr enumeration orders. Diagonal walks pair codes upward and emits each
// vertex just before its first edge. Shuffled picks a random vertex order,
// places each edge at a random later slot and sprinkles re-emissions.
struct Schedule {
    enum class Kind { Diagonal, Shuffled } kind = Kind::Diagonal;
    nat seed = 0;
    nat stutter_percent = 0;
};

auto name_of(Space space, const GraphGen& g, Schedule schedule = {}) -> SpaceName;
// EGr name listing `codes` in order, then re-emitting the first one forever.
auto egr_from_codes(const std::vector<nat>& codes) -> SpaceName;
auto truncate(const SpaceName& name, nat fuel) -> FinGraph;
auto gr_to_egr(const SpaceName& name) -> SpaceName;

// Reads an EGr stream one stage at a time. A leading run of code 0 is held
// back until a nonzero code shows up, so the all-zero stream names the empty
// graph and any other stream reads literally.
class EgrCursor {
  public:
    explicit EgrCursor(CertifiedStream q) : q_(std::move(q)) {}
    // codes delivered at the next stage (reads one stream position)
    auto next() -> std::vector<nat>;
    auto position() const -> nat { return pos_; }

  private:
    CertifiedStream q_;
    nat pos_ = 0;
    bool seen_nonzero_ = false;
    bool held_zero_ = false;
};

// Whether every code of a certified EGr stream is already visible in a finite
// prefix; returns that prefix length.
auto egr_exhaustion_point(const CertifiedStream& q) -> std::optional<nat>;

struct Injury {
    nat stage = 0;
    nat vertex = 0;
    nat old_label = 0;
    nat new_label = 0;
};

struct CellSet {
    nat stage = 0;
    nat i = 0, j = 0;
};

struct IotaTrace {
    std::vector<std::map<nat, nat>> iota; // iota[s] = the map after stage s
    std::vector<Injury> injuries;
    std::vector<CellSet> sets;
    std::map<nat, nat> first_seen; // vertex -> least k with q(k) = <v,v>
    std::map<nat, std::set<nat>> input_edges;
    std::map<nat, nat> abandoned; // label -> stage it was abandoned
};

struct FState;
class FConvert {
  public:
    SpaceName p;
    std::shared_ptr<FState> state;

    // run stages until at least `stage` have completed
    void run_to(nat stage) const;
    auto trace() const -> IotaTrace;
    auto stages() const -> nat;
};

auto f_convert(const SpaceName& q) -> FConvert;

} // namespace wg
