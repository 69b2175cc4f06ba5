#include <wg/core.hpp>

namespace wg {

auto errc_name(Errc c) -> const char*
{
    switch (c) {
    case Errc::BadParam: return "BadParam";
    case Errc::UndecidableWithoutCertificate: return "UndecidableWithoutCertificate";
    case Errc::NotConvergent: return "NotConvergent";
    case Errc::DegreeUnknown: return "DegreeUnknown";
    case Errc::NotATree: return "NotATree";
    case Errc::NotIndexDecidable: return "NotIndexDecidable";
    case Errc::PredicateUnsupported: return "PredicateUnsupported";
    case Errc::PreconditionUnverifiable: return "PreconditionUnverifiable";
    case Errc::HeightExceeded: return "HeightExceeded";
    case Errc::MalformedInstance: return "MalformedInstance";
    case Errc::PartitionExhausted: return "PartitionExhausted";
    case Errc::NotInB: return "NotInB";
    case Errc::NoIllFoundedCertificate: return "NoIllFoundedCertificate";
    case Errc::OracleRefused: return "OracleRefused";
    case Errc::CertificateMissing: return "CertificateMissing";
    case Errc::PatternNeverSeen: return "PatternNeverSeen";
    case Errc::PromiseViolation: return "PromiseViolation";
    case Errc::NoInfiniteDegreeVertex: return "NoInfiniteDegreeVertex";
    case Errc::CensusUnstable: return "CensusUnstable";
    case Errc::FuelExhausted: return "FuelExhausted";
    case Errc::HarnessContractViolation: return "HarnessContractViolation";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::Overflow: return "Overflow";
    }
    return "?";
}

Error::Error(Errc c, const std::string& what) :
    std::runtime_error(std::string(errc_name(c)) + ": " + what),
    code_(c)
{
}

auto add_checked(nat a, nat b) -> nat
{
    nat r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(Errc::Overflow, "code arithmetic overflow");
    return r;
}

auto mul_checked(nat a, nat b) -> nat
{
    nat r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(Errc::Overflow, "code arithmetic overflow");
    return r;
}

} // namespace wg
