#pragma once

#include <wg/core.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wg {

// Cantor pairing: (i+j)(i+j+1)/2 + j.
auto pair(nat i, nat j) -> nat;
auto unpair(nat n) -> std::pair<nat, nat>;

// An infinite sequence over nat with a finiteness certificate. Copies share
// one memo buffer; generator steps are invoked once per index, in order.
class CertifiedStream {
  public:
    enum class Kind { EventuallyConstant, Periodic, Generator };
    using Step = std::function<nat(nat)>;

    static auto eventually_constant(std::vector<nat> prefix, nat tail) -> CertifiedStream;
    static auto periodic(std::vector<nat> prefix, std::vector<nat> period) -> CertifiedStream;
    static auto generator(Step step) -> CertifiedStream;
    // generator whose step depends only on its index; evaluated on demand
    static auto pointwise(Step step) -> CertifiedStream;
    static auto constant(nat v) -> CertifiedStream { return eventually_constant({}, v); }

    auto eval(nat n) const -> nat;
    auto operator()(nat n) const -> nat { return eval(n); }
    auto take(nat n) const -> std::vector<nat>;

    auto kind() const -> Kind;
    auto certified() const -> bool { return kind() != Kind::Generator; }
    auto prefix() const -> const std::vector<nat>&;
    auto tail() const -> nat;
    auto period() const -> const std::vector<nat>&;
    // number of generator positions evaluated so far (0 for certified kinds)
    auto forced() const -> nat;

    // "ec:[..];t", "per:[..];[..]", or "gen" for generator-backed streams.
    auto spec() const -> std::string;
    static auto parse(std::string_view text) -> CertifiedStream;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

auto exists_one(const CertifiedStream& s, nat v) -> bool;
auto infinitely_often(const CertifiedStream& s, nat v) -> bool;
auto eventually_always(const CertifiedStream& s, nat v) -> bool;
auto first_index(const CertifiedStream& s, nat v) -> std::optional<nat>;
auto limit(const CertifiedStream& s) -> nat;

auto format_list(const std::vector<nat>& xs) -> std::string;

} // namespace wg
