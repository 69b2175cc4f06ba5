#include <wg/streams.hpp>

#include <unordered_map>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>

namespace wg {

auto pair(nat i, nat j) -> nat
{
    nat s = add_checked(i, j);
    nat t = s % 2 == 0 ? mul_checked(s / 2, add_checked(s, 1)) : mul_checked(s, (s + 1) / 2);
    return add_checked(t, j);
}

auto unpair(nat n) -> std::pair<nat, nat>
{
    auto w = static_cast<nat>((std::sqrt(8.0L * static_cast<long double>(n) + 1.0L) - 1.0L) / 2.0L);
    auto tri = [](nat x) -> unsigned __int128 { return static_cast<unsigned __int128>(x) * (x + 1) / 2; };
    while (tri(w) > n)
        --w;
    while (tri(w + 1) <= n)
        ++w;
    nat j = n - static_cast<nat>(tri(w));
    return {w - j, j};
}

struct CertifiedStream::Impl {
    Kind kind;
    std::vector<nat> prefix;
    nat tail = 0;
    std::vector<nat> period;
    Step step;
    bool pointwise = false;
    mutable std::mutex mu;
    mutable std::vector<nat> cache;
    mutable std::unordered_map<nat, nat> sparse;
};

auto CertifiedStream::eventually_constant(std::vector<nat> prefix, nat tail) -> CertifiedStream
{
    CertifiedStream s;
    s.impl_ = std::make_shared<Impl>();
    s.impl_->kind = Kind::EventuallyConstant;
    s.impl_->prefix = std::move(prefix);
    s.impl_->tail = tail;
    return s;
}

auto CertifiedStream::periodic(std::vector<nat> prefix, std::vector<nat> period) -> CertifiedStream
{
    if (period.empty())
        throw Error(Errc::BadParam, "periodic stream needs a nonempty period");
    CertifiedStream s;
    s.impl_ = std::make_shared<Impl>();
    s.impl_->kind = Kind::Periodic;
    s.impl_->prefix = std::move(prefix);
    s.impl_->period = std::move(period);
    return s;
}

auto CertifiedStream::generator(Step step) -> CertifiedStream
{
    CertifiedStream s;
    s.impl_ = std::make_shared<Impl>();
    s.impl_->kind = Kind::Generator;
    s.impl_->step = std::move(step);
    return s;
}

auto CertifiedStream::pointwise(Step step) -> CertifiedStream
{
    CertifiedStream s = generator(std::move(step));
    s.impl_->pointwise = true;
    return s;
}

auto CertifiedStream::eval(nat n) const -> nat
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::EventuallyConstant:
        return n < m.prefix.size() ? m.prefix[n] : m.tail;
    case Kind::Periodic:
        if (n < m.prefix.size())
            return m.prefix[n];
        return m.period[(n - m.prefix.size()) % m.period.size()];
    case Kind::Generator:
    default: {
        std::lock_guard<std::mutex> lock(m.mu);
        if (m.pointwise) {
            auto it = m.sparse.find(n);
            if (it == m.sparse.end())
                it = m.sparse.emplace(n, m.step(n)).first;
            return it->second;
        }
        while (m.cache.size() <= n)
            m.cache.push_back(m.step(m.cache.size()));
        return m.cache[n];
    }
    }
}

auto CertifiedStream::take(nat n) const -> std::vector<nat>
{
    std::vector<nat> out;
    out.reserve(n);
    for (nat i = 0; i < n; ++i)
        out.push_back(eval(i));
    return out;
}

auto CertifiedStream::kind() const -> Kind { return impl_->kind; }
auto CertifiedStream::prefix() const -> const std::vector<nat>& { return impl_->prefix; }
auto CertifiedStream::tail() const -> nat { return impl_->tail; }
auto CertifiedStream::period() const -> const std::vector<nat>& { return impl_->period; }

auto CertifiedStream::forced() const -> nat
{
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->pointwise ? impl_->sparse.size() : impl_->cache.size();
}

auto format_list(const std::vector<nat>& xs) -> std::string
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

auto CertifiedStream::spec() const -> std::string
{
    switch (kind()) {
    case Kind::EventuallyConstant: return "ec:" + format_list(prefix()) + ";" + std::to_string(tail());
    case Kind::Periodic: return "per:" + format_list(prefix()) + ";" + format_list(period());
    default: return "gen";
    }
}

namespace {
    struct Cursor {
        std::string_view s;
        std::size_t pos = 0;

        auto fail(const std::string& why) const -> Error
        {
            return Error(Errc::ParseError, "stream spec '" + std::string(s) + "': " + why);
        }
        void skip_ws()
        {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
        }
        void expect(char c)
        {
            skip_ws();
            if (pos >= s.size() || s[pos] != c)
                throw fail(std::string("expected '") + c + "'");
            ++pos;
        }
        auto number() -> nat
        {
            skip_ws();
            if (pos >= s.size() || ! std::isdigit(static_cast<unsigned char>(s[pos])))
                throw fail("expected a number");
            nat v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = add_checked(mul_checked(v, 10), static_cast<nat>(s[pos++] - '0'));
            return v;
        }
        auto list() -> std::vector<nat>
        {
            std::vector<nat> out;
            expect('[');
            skip_ws();
            if (pos < s.size() && s[pos] == ']') {
                ++pos;
                return out;
            }
            while (true) {
                out.push_back(number());
                skip_ws();
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    continue;
                }
                expect(']');
                return out;
            }
        }
    };
}

auto CertifiedStream::parse(std::string_view text) -> CertifiedStream
{
    Cursor c{text};
    c.skip_ws();
    if (text.substr(c.pos, 3) == "ec:") {
        c.pos += 3;
        auto p = c.list();
        c.expect(';');
        auto t = c.number();
        c.skip_ws();
        if (c.pos != text.size())
            throw c.fail("trailing input");
        return eventually_constant(std::move(p), t);
    }
    if (text.substr(c.pos, 4) == "per:") {
        c.pos += 4;
        auto p = c.list();
        c.expect(';');
        auto q = c.list();
        c.skip_ws();
        if (c.pos != text.size())
            throw c.fail("trailing input");
        if (q.empty())
            throw c.fail("empty period");
        return periodic(std::move(p), std::move(q));
    }
    throw c.fail("expected 'ec:' or 'per:'");
}

namespace {
    void require_certificate(const CertifiedStream& s, const char* op)
    {
        if (! s.certified())
            throw Error(Errc::UndecidableWithoutCertificate, std::string(op) + " on a generator-backed stream");
    }
}

auto exists_one(const CertifiedStream& s, nat v) -> bool
{
    return first_index(s, v).has_value();
}

auto first_index(const CertifiedStream& s, nat v) -> std::optional<nat>
{
    require_certificate(s, "first_index");
    const auto& p = s.prefix();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == v)
            return i;
    if (s.kind() == CertifiedStream::Kind::EventuallyConstant)
        return s.tail() == v ? std::optional<nat>(p.size()) : std::nullopt;
    const auto& q = s.period();
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] == v)
            return p.size() + i;
    return std::nullopt;
}

auto infinitely_often(const CertifiedStream& s, nat v) -> bool
{
    require_certificate(s, "infinitely_often");
    if (s.kind() == CertifiedStream::Kind::EventuallyConstant)
        return s.tail() == v;
    const auto& q = s.period();
    return std::find(q.begin(), q.end(), v) != q.end();
}

auto eventually_always(const CertifiedStream& s, nat v) -> bool
{
    require_certificate(s, "eventually_always");
    if (s.kind() == CertifiedStream::Kind::EventuallyConstant)
        return s.tail() == v;
    const auto& q = s.period();
    return std::all_of(q.begin(), q.end(), [v](nat x) { return x == v; });
}

auto limit(const CertifiedStream& s) -> nat
{
    if (s.kind() == CertifiedStream::Kind::EventuallyConstant)
        return s.tail();
    if (s.kind() == CertifiedStream::Kind::Periodic) {
        const auto& q = s.period();
        if (std::all_of(q.begin(), q.end(), [&](nat x) { return x == q[0]; }))
            return q[0];
    }
    throw Error(Errc::NotConvergent, "stream " + s.spec() + " has no certified limit");
}

} // namespace wg
