#include <wg/graphs.hpp>

#include <algorithm>
#include <mutex>

namespace wg {

namespace {
    using u128 = unsigned __int128;
    constexpr u128 kSat = static_cast<u128>(~nat{0}) + 1; // saturation marker

    // C(n, r), saturating at 2^64.
    auto binom(nat n, nat r) -> u128
    {
        if (r > n)
            return 0;
        r = std::min(r, n - r);
        u128 c = 1;
        for (nat i = 0; i < r; ++i) {
            c = c * (n - i) / (i + 1);
            if (c >= kSat)
                return kSat;
        }
        return c;
    }

    // number of k-tuples with sum exactly s
    auto tuples_eq(nat s, nat k) -> u128
    {
        if (k == 0)
            return s == 0 ? 1 : 0;
        return binom(s + k - 1, k - 1);
    }

    // number of k-tuples (k >= 1) with sum < s
    auto tuples_below(nat s, nat k) -> u128
    {
        if (s == 0)
            return 0;
        return binom(s + k - 1, k);
    }

    auto narrow(u128 x) -> nat
    {
        if (x >= kSat)
            throw Error(Errc::Overflow, "string code out of range");
        return static_cast<nat>(x);
    }
}

auto str_code(const Str& s) -> nat
{
    if (s.empty())
        return 0;
    nat k = s.size();
    nat sum = 0;
    for (nat x : s)
        sum = add_checked(sum, x);
    u128 r = tuples_below(sum, k);
    nat rem = sum;
    for (nat i = 0; i + 1 < k; ++i) {
        nat m = k - i - 1;
        // tuples whose i-th entry is below s[i]: remaining sums in (rem - s[i], rem]
        r += tuples_below(rem + 1, m) - tuples_below(rem - s[i] + 1, m);
        if (r >= kSat)
            throw Error(Errc::Overflow, "string code out of range");
        rem -= s[i];
    }
    return add_checked(1, pair(k - 1, narrow(r)));
}

auto str_decode(nat code) -> Str
{
    if (code == 0)
        return {};
    auto [km1, r0] = unpair(code - 1);
    nat k = km1 + 1;
    u128 r = r0;
    // least sum s with tuples_below(s+1, k) > r
    nat lo = 0, hi = 1;
    while (tuples_below(hi + 1, k) <= r)
        hi *= 2;
    while (lo < hi) {
        nat mid = lo + (hi - lo) / 2;
        if (tuples_below(mid + 1, k) > r)
            hi = mid;
        else
            lo = mid + 1;
    }
    nat sum = lo;
    r -= tuples_below(sum, k);
    Str out;
    nat rem = sum;
    for (nat i = 0; i + 1 < k; ++i) {
        nat m = k - i - 1;
        nat x = 0;
        if (m == 1) {
            x = static_cast<nat>(r);
            r = 0;
        }
        else {
            while (true) {
                u128 c = tuples_eq(rem - x, m);
                if (r < c)
                    break;
                r -= c;
                ++x;
            }
        }
        out.push_back(x);
        rem -= x;
    }
    out.push_back(rem);
    return out;
}

auto is_prefix(const Str& a, const Str& b) -> bool
{
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

auto comparable(const Str& a, const Str& b) -> bool
{
    return is_prefix(a, b) || is_prefix(b, a);
}

auto str_format(const Str& s) -> std::string
{
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i]);
    }
    return out + ">";
}

auto str_parse(const std::string& text) -> Str
{
    if (text.size() < 2 || text.front() != '<' || text.back() != '>')
        throw Error(Errc::ParseError, "string must look like <0,1>: " + text);
    Str out;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = body.find(',', pos);
        if (end == std::string::npos)
            end = body.size();
        std::string tok = body.substr(pos, end - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789 ") != std::string::npos)
            throw Error(Errc::ParseError, "bad string entry in " + text);
        out.push_back(std::stoull(tok));
        pos = end + 1;
    }
    return out;
}

struct TreeGen::Impl {
    Kind kind = Kind::Finite;
    std::set<Str> fin;
    std::optional<CertifiedStream> path;
    Rule rule;
    std::vector<TreeGen> parts;
    std::vector<std::optional<TreeGen>> pre, per; // Cone

    mutable std::mutex mu;
    mutable std::vector<Str> cache;
    mutable std::vector<Str> level;
    mutable std::size_t level_pos = 0;
    mutable bool started = false;
    mutable bool done = false;
    mutable nat scan = 0;
};

auto TreeGen::finite(std::set<Str> nodes) -> TreeGen
{
    for (const auto& s : nodes)
        if (! s.empty() && ! nodes.count(Str(s.begin(), s.end() - 1)))
            throw Error(Errc::BadParam, "tree not closed under prefixes at " + str_format(s));
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::Finite;
    t.impl_->fin = std::move(nodes);
    return t;
}

auto TreeGen::full_binary() -> TreeGen
{
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::FullBinary;
    return t;
}

auto TreeGen::single_path(CertifiedStream f) -> TreeGen
{
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::SinglePath;
    t.impl_->path = std::move(f);
    return t;
}

auto TreeGen::level_rule(Rule rule) -> TreeGen
{
    if (! rule.children)
        throw Error(Errc::BadParam, "level rule needs a children function");
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::LevelRule;
    t.impl_->rule = std::move(rule);
    return t;
}

auto TreeGen::disjoint_union(std::vector<TreeGen> parts) -> TreeGen
{
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::DisjointUnion;
    t.impl_->parts = std::move(parts);
    return t;
}

auto TreeGen::set_union(TreeGen a, TreeGen b) -> TreeGen
{
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::Union;
    t.impl_->parts = {std::move(a), std::move(b)};
    return t;
}

auto TreeGen::cut(nat depth) -> TreeGen
{
    std::set<Str> nodes{Str{}};
    std::vector<Str> level{Str{}};
    for (nat d = 0; d < depth; ++d) {
        std::vector<Str> next;
        for (const auto& s : level)
            for (nat b = 0; b < 2; ++b) {
                Str c = s;
                c.push_back(b);
                nodes.insert(c);
                next.push_back(c);
            }
        level = std::move(next);
    }
    return finite(std::move(nodes));
}

auto TreeGen::cone(std::vector<std::optional<TreeGen>> prefix, std::vector<std::optional<TreeGen>> period) -> TreeGen
{
    TreeGen t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->kind = Kind::Cone;
    t.impl_->pre = std::move(prefix);
    t.impl_->per = std::move(period);
    return t;
}

auto TreeGen::kind() const -> Kind { return impl_->kind; }
auto TreeGen::cone_prefix() const -> const std::vector<std::optional<TreeGen>>& { return impl_->pre; }
auto TreeGen::cone_period() const -> const std::vector<std::optional<TreeGen>>& { return impl_->per; }

auto TreeGen::cone_child(nat i) const -> std::optional<TreeGen>
{
    const Impl& m = *impl_;
    if (i < m.pre.size())
        return m.pre[i];
    if (m.per.empty())
        return std::nullopt;
    return m.per[(i - m.pre.size()) % m.per.size()];
}

namespace {
    auto any_present(const std::vector<std::optional<TreeGen>>& xs) -> bool
    {
        return std::any_of(xs.begin(), xs.end(), [](const auto& x) { return x.has_value(); });
    }

    // present entries of a cone, each once
    auto cone_parts(const std::vector<std::optional<TreeGen>>& a, const std::vector<std::optional<TreeGen>>& b)
        -> std::vector<TreeGen>
    {
        std::vector<TreeGen> out;
        for (const auto* xs : {&a, &b})
            for (const auto& x : *xs)
                if (x)
                    out.push_back(*x);
        return out;
    }
}
auto TreeGen::finite_nodes() const -> const std::set<Str>& { return impl_->fin; }
auto TreeGen::path_stream() const -> const CertifiedStream& { return *impl_->path; }
auto TreeGen::parts() const -> const std::vector<TreeGen>& { return impl_->parts; }
auto TreeGen::rule() const -> const Rule& { return impl_->rule; }

auto TreeGen::contains(const Str& s) const -> bool
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return m.fin.count(s) != 0;
    case Kind::FullBinary: return std::all_of(s.begin(), s.end(), [](nat x) { return x <= 1; });
    case Kind::SinglePath:
        for (std::size_t i = 0; i < s.size(); ++i)
            if (m.path->eval(i) != s[i])
                return false;
        return true;
    case Kind::LevelRule: {
        Str cur;
        for (nat x : s) {
            auto ch = m.rule.children(cur);
            if (ch && std::find(ch->begin(), ch->end(), x) == ch->end())
                return false;
            cur.push_back(x);
        }
        return true;
    }
    case Kind::DisjointUnion:
        if (s.empty())
            return true;
        if (s[0] >= m.parts.size())
            return false;
        return m.parts[s[0]].contains(Str(s.begin() + 1, s.end()));
    case Kind::Union: return m.parts[0].contains(s) || m.parts[1].contains(s);
    case Kind::Cone: {
        if (s.empty())
            return true;
        auto c = cone_child(s[0]);
        return c && c->contains(Str(s.begin() + 1, s.end()));
    }
    }
    return false;
}

auto TreeGen::children(const Str& s) const -> std::optional<std::vector<nat>>
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: {
        std::vector<nat> out;
        for (auto it = m.fin.upper_bound(s); it != m.fin.end() && is_prefix(s, *it); ++it)
            if (it->size() == s.size() + 1)
                out.push_back(it->back());
        return out;
    }
    case Kind::FullBinary: return std::vector<nat>{0, 1};
    case Kind::SinglePath:
        if (! contains(s))
            return std::vector<nat>{};
        return std::vector<nat>{m.path->eval(s.size())};
    case Kind::LevelRule: return m.rule.children(s);
    case Kind::DisjointUnion: {
        if (s.empty()) {
            std::vector<nat> out;
            for (nat i = 0; i < m.parts.size(); ++i)
                out.push_back(i);
            return out;
        }
        if (s[0] >= m.parts.size())
            return std::vector<nat>{};
        return m.parts[s[0]].children(Str(s.begin() + 1, s.end()));
    }
    case Kind::Union: {
        std::set<nat> acc;
        for (const auto& p : m.parts) {
            if (! p.contains(s))
                continue;
            auto c = p.children(s);
            if (! c)
                return std::nullopt;
            acc.insert(c->begin(), c->end());
        }
        return std::vector<nat>(acc.begin(), acc.end());
    }
    case Kind::Cone: {
        if (s.empty()) {
            if (any_present(m.per))
                return std::nullopt;
            std::vector<nat> out;
            for (nat i = 0; i < m.pre.size(); ++i)
                if (m.pre[i])
                    out.push_back(i);
            return out;
        }
        auto c = cone_child(s[0]);
        if (! c)
            return std::vector<nat>{};
        return c->children(Str(s.begin() + 1, s.end()));
    }
    }
    return std::vector<nat>{};
}

auto TreeGen::finitely_branching() const -> bool
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::LevelRule: return m.rule.finitely_branching;
    case Kind::DisjointUnion:
    case Kind::Union:
        return std::all_of(m.parts.begin(), m.parts.end(), [](const TreeGen& p) { return p.finitely_branching(); });
    case Kind::Cone: {
        if (any_present(m.per))
            return false;
        auto ps = cone_parts(m.pre, m.per);
        return std::all_of(ps.begin(), ps.end(), [](const TreeGen& p) { return p.finitely_branching(); });
    }
    default: return true;
    }
}

auto TreeGen::binary() const -> bool
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite:
        return std::all_of(m.fin.begin(), m.fin.end(),
            [](const Str& s) { return std::all_of(s.begin(), s.end(), [](nat x) { return x <= 1; }); });
    case Kind::FullBinary: return true;
    case Kind::SinglePath:
        if (! m.path->certified())
            return false;
        for (nat x : m.path->prefix())
            if (x > 1)
                return false;
        if (m.path->kind() == CertifiedStream::Kind::EventuallyConstant)
            return m.path->tail() <= 1;
        return std::all_of(m.path->period().begin(), m.path->period().end(), [](nat x) { return x <= 1; });
    case Kind::LevelRule: return m.rule.binary;
    case Kind::DisjointUnion:
        return m.parts.size() <= 2
            && std::all_of(m.parts.begin(), m.parts.end(), [](const TreeGen& p) { return p.binary(); });
    case Kind::Union:
        return m.parts[0].binary() && m.parts[1].binary();
    case Kind::Cone: {
        if (any_present(m.per))
            return false;
        for (nat i = 0; i < m.pre.size(); ++i)
            if (m.pre[i] && (i > 1 || ! m.pre[i]->binary()))
                return false;
        return true;
    }
    }
    return false;
}

auto TreeGen::finiteness() const -> Finiteness
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return Finiteness::Finite;
    case Kind::FullBinary:
    case Kind::SinglePath: return Finiteness::Infinite;
    case Kind::LevelRule:
        if (m.rule.path)
            return Finiteness::Infinite;
        if (m.rule.depth_bound && m.rule.finitely_branching)
            return Finiteness::Finite;
        return Finiteness::Unknown;
    case Kind::DisjointUnion:
    case Kind::Union: {
        bool all_finite = true;
        for (const auto& p : m.parts) {
            auto f = p.finiteness();
            if (f == Finiteness::Infinite)
                return Finiteness::Infinite;
            all_finite = all_finite && f == Finiteness::Finite;
        }
        return all_finite ? Finiteness::Finite : Finiteness::Unknown;
    }
    case Kind::Cone: {
        if (any_present(m.per))
            return Finiteness::Infinite;
        bool all_finite = true;
        for (const auto& p : cone_parts(m.pre, m.per)) {
            auto f = p.finiteness();
            if (f == Finiteness::Infinite)
                return f;
            all_finite = all_finite && f == Finiteness::Finite;
        }
        return all_finite ? Finiteness::Finite : Finiteness::Unknown;
    }
    }
    return Finiteness::Unknown;
}

auto TreeGen::node_at(nat k) const -> std::optional<Str>
{
    const Impl& m = *impl_;
    if (m.kind == Kind::SinglePath) {
        Str s;
        for (nat i = 0; i < k; ++i)
            s.push_back(m.path->eval(i));
        return s;
    }
    std::lock_guard<std::mutex> lock(m.mu);
    if (finitely_branching()) {
        // level order, lexicographic inside a level
        if (! m.started) {
            m.started = true;
            if (contains(Str{}))
                m.level = {Str{}};
            else
                m.done = true;
        }
        while (m.cache.size() <= k && ! m.done) {
            if (m.level_pos == m.level.size()) {
                std::vector<Str> next;
                for (const auto& s : m.level) {
                    auto ch = children(s);
                    std::vector<nat> c = ch ? *ch : std::vector<nat>{};
                    std::sort(c.begin(), c.end());
                    for (nat x : c) {
                        Str t = s;
                        t.push_back(x);
                        next.push_back(std::move(t));
                    }
                }
                m.level = std::move(next);
                m.level_pos = 0;
                if (m.level.empty()) {
                    m.done = true;
                    break;
                }
            }
            m.cache.push_back(m.level[m.level_pos++]);
        }
    }
    else {
        constexpr nat kScanCap = 50'000'000;
        nat spent = 0;
        while (m.cache.size() <= k) {
            if (++spent > kScanCap)
                throw Error(Errc::FuelExhausted, "tree node scan exceeded its budget");
            Str s = str_decode(m.scan++);
            if (contains(s))
                m.cache.push_back(std::move(s));
        }
    }
    if (k < m.cache.size())
        return m.cache[k];
    return std::nullopt;
}

auto TreeGen::nodes(nat n) const -> std::vector<Str>
{
    std::vector<Str> out;
    for (nat k = 0; k < n; ++k) {
        auto s = node_at(k);
        if (! s)
            break;
        out.push_back(std::move(*s));
    }
    return out;
}

auto TreeGen::nodes_to_depth(nat depth, nat cap) const -> std::vector<Str>
{
    std::vector<Str> out;
    if (! contains(Str{}))
        return out;
    std::vector<Str> level{Str{}};
    for (nat d = 0;; ++d) {
        for (const auto& s : level) {
            if (out.size() >= cap)
                return out;
            out.push_back(s);
        }
        if (d == depth)
            break;
        std::vector<Str> next;
        for (const auto& s : level) {
            auto ch = children(s);
            std::vector<nat> c;
            if (ch)
                c = *ch;
            else
                for (nat x = 0; x < cap; ++x)
                    c.push_back(x);
            std::sort(c.begin(), c.end());
            for (nat x : c) {
                Str t = s;
                t.push_back(x);
                if (! ch && ! contains(t))
                    continue;
                next.push_back(std::move(t));
                if (next.size() + out.size() >= cap)
                    break;
            }
        }
        level = std::move(next);
        if (level.empty())
            break;
    }
    return out;
}

auto TreeGen::extensions_at(const Str& s, nat m) const -> std::optional<nat>
{
    const Impl& im = *impl_;
    if (! contains(s) || m < s.size())
        return 0;
    if (m == s.size())
        return 1;
    switch (im.kind) {
    case Kind::Finite: {
        nat c = 0;
        for (auto it = im.fin.upper_bound(s); it != im.fin.end() && is_prefix(s, *it); ++it)
            c += it->size() == m;
        return c;
    }
    case Kind::FullBinary:
        if (m - s.size() >= 63)
            return std::nullopt;
        return nat{1} << (m - s.size());
    case Kind::SinglePath: return 1;
    case Kind::DisjointUnion: {
        if (! s.empty())
            return im.parts[s[0]].extensions_at(Str(s.begin() + 1, s.end()), m - 1);
        nat total = 0;
        for (const auto& p : im.parts) {
            auto c = p.extensions_at(Str{}, m - 1);
            if (! c)
                return std::nullopt;
            total = add_checked(total, *c);
        }
        return total;
    }
    case Kind::Cone: {
        if (! s.empty())
            return cone_child(s[0])->extensions_at(Str(s.begin() + 1, s.end()), m - 1);
        nat total = 0;
        for (const auto& p : cone_parts(im.pre, {})) {
            auto c = p.extensions_at(Str{}, m - 1);
            if (! c)
                return std::nullopt;
            total = add_checked(total, *c);
        }
        for (const auto& p : im.per)
            if (p && p->extensions_at(Str{}, m - 1) != nat{0})
                return std::nullopt;
        return total;
    }
    default: {
        std::vector<Str> level{s};
        constexpr std::size_t kCap = 1'000'000;
        for (nat d = s.size(); d < m; ++d) {
            std::vector<Str> next;
            for (const auto& x : level) {
                auto ch = children(x);
                if (! ch)
                    return std::nullopt;
                for (nat c : *ch) {
                    Str t = x;
                    t.push_back(c);
                    next.push_back(std::move(t));
                }
                if (next.size() > kCap)
                    return std::nullopt;
            }
            level = std::move(next);
        }
        return level.size();
    }
    }
}

auto TreeGen::well_founded() const -> std::optional<bool>
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return true;
    case Kind::FullBinary:
    case Kind::SinglePath: return false;
    case Kind::LevelRule:
        if (m.rule.path)
            return false;
        if (m.rule.depth_bound)
            return true;
        return std::nullopt;
    case Kind::DisjointUnion:
    case Kind::Union: {
        bool all = true;
        for (const auto& p : m.parts) {
            auto w = p.well_founded();
            if (w && ! *w)
                return false;
            all = all && w.has_value();
        }
        return all ? std::optional<bool>(true) : std::nullopt;
    }
    case Kind::Cone: {
        bool all = true;
        for (const auto& p : cone_parts(m.pre, m.per)) {
            auto w = p.well_founded();
            if (w && ! *w)
                return false;
            all = all && w.has_value();
        }
        return all ? std::optional<bool>(true) : std::nullopt;
    }
    }
    return std::nullopt;
}

auto TreeGen::height() const -> std::optional<nat>
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: {
        nat h = 0;
        for (const auto& s : m.fin)
            h = std::max<nat>(h, s.size());
        return h;
    }
    case Kind::FullBinary:
    case Kind::SinglePath: return std::nullopt;
    case Kind::LevelRule:
        if (m.rule.path)
            return std::nullopt;
        return m.rule.depth_bound;
    case Kind::Union: {
        auto a = m.parts[0].height(), b = m.parts[1].height();
        if (! a || ! b)
            return std::nullopt;
        return std::max(*a, *b);
    }
    case Kind::DisjointUnion:
    case Kind::Cone: {
        auto ps = m.kind == Kind::Cone ? cone_parts(m.pre, m.per) : m.parts;
        nat h = 0;
        for (const auto& p : ps) {
            auto x = p.height();
            if (! x)
                return std::nullopt;
            h = std::max(h, *x + 1);
        }
        return h;
    }
    }
    return std::nullopt;
}

auto TreeGen::path_certificate() const -> std::optional<CertifiedStream>
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return std::nullopt;
    case Kind::FullBinary: return CertifiedStream::constant(0);
    case Kind::SinglePath: return *m.path;
    case Kind::LevelRule: return m.rule.path;
    case Kind::Cone:
    case Kind::DisjointUnion: {
        nat n = m.kind == Kind::Cone ? m.pre.size() + m.per.size() : m.parts.size();
        for (nat i = 0; i < n; ++i) {
            auto child = m.kind == Kind::Cone ? cone_child(i) : std::optional<TreeGen>(m.parts[i]);
            if (! child)
                continue;
            auto p = child->path_certificate();
            if (! p)
                continue;
            auto inner = *p;
            if (inner.kind() == CertifiedStream::Kind::EventuallyConstant) {
                auto pre = inner.prefix();
                pre.insert(pre.begin(), i);
                return CertifiedStream::eventually_constant(pre, inner.tail());
            }
            if (inner.kind() == CertifiedStream::Kind::Periodic) {
                auto pre = inner.prefix();
                pre.insert(pre.begin(), i);
                return CertifiedStream::periodic(pre, inner.period());
            }
            return CertifiedStream::generator([i, inner](nat n) { return n == 0 ? i : inner.eval(n - 1); });
        }
        return std::nullopt;
    }
    case Kind::Union: {
        auto a = m.parts[0].path_certificate();
        return a ? a : m.parts[1].path_certificate();
    }
    }
    return std::nullopt;
}

auto TreeGen::describe() const -> std::string
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: {
        std::vector<Str> order(m.fin.begin(), m.fin.end());
        std::stable_sort(order.begin(), order.end(), [](const Str& a, const Str& b) { return a.size() < b.size(); });
        std::string out = "fin(";
        for (std::size_t i = 0; i < order.size(); ++i)
            out += (i ? "," : "") + str_format(order[i]);
        return out + ")";
    }
    case Kind::FullBinary: return "bin";
    case Kind::SinglePath: return "path(" + m.path->spec() + ")";
    case Kind::LevelRule: return "rule:" + m.rule.name;
    case Kind::DisjointUnion: {
        std::string out = "tu(";
        for (std::size_t i = 0; i < m.parts.size(); ++i)
            out += (i ? "," : "") + m.parts[i].describe();
        return out + ")";
    }
    case Kind::Union: return "union(" + m.parts[0].describe() + "," + m.parts[1].describe() + ")";
    case Kind::Cone: {
        auto list = [](const std::vector<std::optional<TreeGen>>& xs) {
            std::string out = "[";
            for (std::size_t i = 0; i < xs.size(); ++i)
                out += (i ? "," : "") + (xs[i] ? xs[i]->describe() : std::string("-"));
            return out + "]";
        };
        return "cone(" + list(m.pre) + ";" + list(m.per) + ")";
    }
    }
    return "?";
}

} // namespace wg
