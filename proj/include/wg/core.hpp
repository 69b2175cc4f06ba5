#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wg {

using nat = std::uint64_t;

enum class Errc {
    BadParam,
    UndecidableWithoutCertificate,
    NotConvergent,
    DegreeUnknown,
    NotATree,
    NotIndexDecidable,
    PredicateUnsupported,
    PreconditionUnverifiable,
    HeightExceeded,
    MalformedInstance,
    PartitionExhausted,
    NotInB,
    NoIllFoundedCertificate,
    OracleRefused,
    CertificateMissing,
    PatternNeverSeen,
    PromiseViolation,
    NoInfiniteDegreeVertex,
    CensusUnstable,
    FuelExhausted,
    HarnessContractViolation,
    ParseError,
    UnknownSuite,
    Overflow,
};

auto errc_name(Errc c) -> const char*;

class Error : public std::runtime_error {
  public:
    Error(Errc c, const std::string& what);
    auto code() const -> Errc { return code_; }

  private:
    Errc code_;
};

// Checked arithmetic; codes grow fast under nested pairing.
auto add_checked(nat a, nat b) -> nat;
auto mul_checked(nat a, nat b) -> nat;

} // namespace wg
