#include <wg/graphs.hpp>

#include <algorithm>
#include <mutex>

namespace wg {

namespace {
    constexpr nat kScanCap = 1 << 16;
}

struct GraphGen::Impl {
    Kind kind = Kind::Finite;
    nat n = 0;
    FinGraph fin;
    std::vector<nat> fin_sorted;
    std::vector<GraphGen> parts; // operands, or the delegate for the named tree families
    std::optional<TreeGen> tree;
    std::optional<CertifiedStream> gr;
    CustomGraph custom;
    std::vector<nat> cu_v, cu_w; // connected-union junction vertices per part
    std::vector<GraphGen> period;  // Family: parts is the prefix

    auto part(nat n) const -> const GraphGen&
    {
        return n < parts.size() ? parts[n] : period[(n - parts.size()) % period.size()];
    }

    mutable std::mutex mu;
    mutable std::vector<nat> cache;
    mutable bool done = false;
    mutable nat s0 = 0, s1 = 0; // enumeration cursors
    mutable std::vector<nat> base_cache; // L1/L2: v_0, v_1, ... of the base graph
};

namespace {
    auto make(GraphGen::Kind k) -> std::shared_ptr<GraphGen::Impl>
    {
        auto p = std::make_shared<GraphGen::Impl>();
        p->kind = k;
        return p;
    }

    auto tree_t_rule(nat k) -> TreeGen
    {
        TreeGen::Rule r;
        r.children = [k](const Str& s) -> std::optional<std::vector<nat>> {
            if (s.size() < k)
                return std::nullopt;
            return std::vector<nat>{};
        };
        r.finitely_branching = k == 0;
        r.depth_bound = k;
        r.name = "t" + std::to_string(k);
        return TreeGen::level_rule(std::move(r));
    }
}

struct GraphAccess {
    static auto impl(const GraphGen& g) -> GraphGen::Impl& { return *g.impl_; }
    static auto wrap(std::shared_ptr<GraphGen::Impl> p) -> GraphGen
    {
        GraphGen g;
        g.impl_ = std::move(p);
        return g;
    }
};

auto GraphGen::finite(FinGraph g) -> GraphGen
{
    auto p = make(Kind::Finite);
    p->fin_sorted = g.vertex_list();
    p->fin = std::move(g);
    return GraphAccess::wrap(p);
}

auto GraphGen::standard(Kind kind, nat n) -> GraphGen
{
    auto p = make(kind);
    p->n = n;
    switch (kind) {
    case Kind::Ray:
    case Kind::TwoWayRay:
    case Kind::CompleteOmega: break;
    case Kind::RayN:
    case Kind::CompleteN:
        if (n == 0)
            throw Error(Errc::BadParam, "R_n and K_n need n > 0");
        break;
    case Kind::CycleN:
        if (n < 3)
            throw Error(Errc::BadParam, "C_n needs n >= 3");
        break;
    case Kind::FullBinaryTree: p->parts = {tree_graph(TreeGen::full_binary())}; break;
    case Kind::TreeT: p->parts = {tree_graph(tree_t_rule(n))}; break;
    case Kind::ForestF: p->parts = {omega_copies(standard(Kind::TreeT, n))}; break;
    default: throw Error(Errc::BadParam, "not a standard family");
    }
    return GraphAccess::wrap(p);
}

auto GraphGen::disjoint_union(std::vector<GraphGen> parts) -> GraphGen
{
    auto p = make(Kind::DisjointUnion);
    p->parts = std::move(parts);
    return GraphAccess::wrap(p);
}

auto GraphGen::omega_copies(GraphGen g) -> GraphGen
{
    auto p = make(Kind::OmegaCopies);
    p->parts = {std::move(g)};
    return GraphAccess::wrap(p);
}

auto GraphGen::family(std::vector<GraphGen> prefix, std::vector<GraphGen> period) -> GraphGen
{
    if (period.empty())
        throw Error(Errc::BadParam, "family needs a nonempty period; use disjoint_union for finite lists");
    auto p = make(Kind::Family);
    p->parts = std::move(prefix);
    p->period = std::move(period);
    return GraphAccess::wrap(p);
}

auto GraphGen::family_part(nat n) const -> const GraphGen& { return impl_->part(n); }
auto GraphGen::family_prefix() const -> const std::vector<GraphGen>& { return impl_->parts; }
auto GraphGen::family_period() const -> const std::vector<GraphGen>& { return impl_->period; }

auto GraphGen::connected_union(std::vector<GraphGen> parts) -> GraphGen
{
    if (parts.empty())
        throw Error(Errc::BadParam, "connected union of no graphs");
    auto p = make(Kind::ConnectedUnion);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& g = parts[i];
        auto f = g.finiteness();
        if (f == Finiteness::Unknown)
            throw Error(Errc::BadParam, "connected union part " + std::to_string(i) + " has unknown size");
        if (f == Finiteness::Finite && *g.size() < 3)
            throw Error(Errc::BadParam, "connected union part " + std::to_string(i) + " has fewer than 3 vertices");
        nat v = *g.vertex_at(0);
        nat w;
        if (f == Finiteness::Finite)
            w = *g.vertex_at(*g.size() - 1);
        else
            w = i == 0 ? v : *g.vertex_at(1); // the first part has no left junction
        p->cu_v.push_back(v);
        p->cu_w.push_back(w);
    }
    p->parts = std::move(parts);
    return GraphAccess::wrap(p);
}

auto GraphGen::construction(Construction mode, TreeGen t, GraphGen g) -> GraphGen
{
    auto p = make(mode == Construction::L1 ? Kind::L1 : Kind::L2);
    p->tree = std::move(t);
    p->parts = {std::move(g)};
    return GraphAccess::wrap(p);
}

auto GraphGen::tree_graph(TreeGen t) -> GraphGen
{
    auto p = make(Kind::TreeGraph);
    p->tree = std::move(t);
    return GraphAccess::wrap(p);
}

auto GraphGen::from_gr_name(CertifiedStream s) -> GraphGen
{
    auto p = make(Kind::FromGrName);
    p->gr = std::move(s);
    return GraphAccess::wrap(p);
}

auto GraphGen::custom(CustomGraph c) -> GraphGen
{
    if (! c.has_vertex || ! c.has_edge || ! c.vertex_at)
        throw Error(Errc::BadParam, "custom graph needs membership and enumeration callbacks");
    auto p = make(Kind::Custom);
    p->custom = std::move(c);
    return GraphAccess::wrap(p);
}

auto tree_to_graph(const TreeGen& t) -> GraphGen
{
    return GraphGen::tree_graph(t);
}

auto GraphGen::kind() const -> Kind { return impl_->kind; }
auto GraphGen::param() const -> nat { return impl_->n; }
auto GraphGen::parts() const -> const std::vector<GraphGen>& { return impl_->parts; }
auto GraphGen::tree() const -> const TreeGen& { return *impl_->tree; }
auto GraphGen::gr_stream() const -> const CertifiedStream& { return *impl_->gr; }

namespace {
    // connected union: representatives (part, local vertex) of a union vertex
    auto cu_reps(const GraphGen::Impl& m, nat c) -> std::vector<std::pair<nat, nat>>
    {
        auto [tag, rest] = unpair(c);
        nat P = m.parts.size();
        if (tag == 1) {
            if (rest + 1 >= P + 0 && rest + 1 > P - 1)
                return {};
            return {{rest, m.cu_w[rest]}, {rest + 1, m.cu_v[rest + 1]}};
        }
        if (tag != 0)
            return {};
        auto [i, v] = unpair(rest);
        if (i >= P || ! m.parts[i].has_vertex(v))
            return {};
        if (i > 0 && v == m.cu_v[i])
            return {};
        if (i + 1 < P && v == m.cu_w[i])
            return {};
        return {{i, v}};
    }

    auto cu_code(const GraphGen::Impl& m, nat i, nat v) -> nat
    {
        nat P = m.parts.size();
        if (i > 0 && v == m.cu_v[i])
            return GraphGen::glue_code(i - 1);
        if (i + 1 < P && v == m.cu_w[i])
            return GraphGen::glue_code(i);
        return GraphGen::part_code(i, v);
    }

    auto gr_bit(const CertifiedStream& s, nat i, nat j) -> bool
    {
        return s.eval(pair(i, j)) == 1;
    }

    auto ec_tail(const CertifiedStream& s) -> std::optional<nat>
    {
        if (s.kind() == CertifiedStream::Kind::EventuallyConstant)
            return s.tail();
        return std::nullopt;
    }
}

// v_k of an L1/L2 base graph
static auto base_vertex(const GraphGen::Impl& m, nat k) -> std::optional<nat>
{
    {
        std::lock_guard<std::mutex> lock(m.mu);
        if (k < m.base_cache.size())
            return m.base_cache[k];
    }
    auto v = m.parts[0].vertex_at(k);
    if (v) {
        std::lock_guard<std::mutex> lock(m.mu);
        while (m.base_cache.size() <= k) {
            auto next = m.parts[0].vertex_at(m.base_cache.size());
            m.base_cache.push_back(*next);
        }
    }
    return v;
}

auto GraphGen::has_vertex(nat c) const -> bool
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return m.fin.has_vertex(c);
    case Kind::Ray:
    case Kind::TwoWayRay:
    case Kind::CompleteOmega: return true;
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN: return c < m.n;
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.parts[0].has_vertex(c);
    case Kind::DisjointUnion: {
        auto [i, v] = unpair(c);
        return i < m.parts.size() && m.parts[i].has_vertex(v);
    }
    case Kind::OmegaCopies: return m.parts[0].has_vertex(unpair(c).second);
    case Kind::Family: {
        auto [i, v] = unpair(c);
        return m.part(i).has_vertex(v);
    }
    case Kind::ConnectedUnion: return ! cu_reps(m, c).empty();
    case Kind::L1:
    case Kind::L2:
    case Kind::TreeGraph: return m.tree->contains(str_decode(c));
    case Kind::FromGrName: return gr_bit(*m.gr, c, c);
    case Kind::Custom: return m.custom.has_vertex(c);
    }
    return false;
}

auto GraphGen::has_edge(nat a, nat b) const -> bool
{
    const Impl& m = *impl_;
    if (a == b)
        return false;
    switch (m.kind) {
    case Kind::Finite: return m.fin.has_edge(a, b);
    case Kind::Ray: return a + 1 == b || b + 1 == a;
    case Kind::TwoWayRay: {
        auto [x, y] = edge_key(a, b);
        return (x == 0 && y == 1) || y == x + 2;
    }
    case Kind::CompleteOmega: return true;
    case Kind::RayN: return a < m.n && b < m.n && (a + 1 == b || b + 1 == a);
    case Kind::CycleN: {
        if (a >= m.n || b >= m.n)
            return false;
        auto [x, y] = edge_key(a, b);
        return y == x + 1 || (x == 0 && y == m.n - 1);
    }
    case Kind::CompleteN: return a < m.n && b < m.n;
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.parts[0].has_edge(a, b);
    case Kind::DisjointUnion: {
        auto [i, v] = unpair(a);
        auto [j, w] = unpair(b);
        return i == j && i < m.parts.size() && m.parts[i].has_vertex(v) && m.parts[i].has_vertex(w)
            && m.parts[i].has_edge(v, w);
    }
    case Kind::OmegaCopies: {
        auto [i, v] = unpair(a);
        auto [j, w] = unpair(b);
        const auto& g = m.parts[0];
        return i == j && g.has_vertex(v) && g.has_vertex(w) && g.has_edge(v, w);
    }
    case Kind::Family: {
        auto [i, v] = unpair(a);
        auto [j, w] = unpair(b);
        if (i != j)
            return false;
        const auto& g = m.part(i);
        return g.has_vertex(v) && g.has_vertex(w) && g.has_edge(v, w);
    }
    case Kind::ConnectedUnion: {
        auto ra = cu_reps(m, a), rb = cu_reps(m, b);
        for (auto [i, x] : ra)
            for (auto [j, y] : rb)
                if (i == j && m.parts[i].has_edge(x, y))
                    return true;
        return false;
    }
    case Kind::L1:
    case Kind::L2: {
        Str s = str_decode(a), t = str_decode(b);
        if (! m.tree->contains(s) || ! m.tree->contains(t))
            return false;
        bool comp = comparable(s, t);
        if (! comp)
            return m.kind == Kind::L2;
        auto x = base_vertex(m, s.size()), y = base_vertex(m, t.size());
        return x && y && m.parts[0].has_edge(*x, *y);
    }
    case Kind::TreeGraph: {
        Str s = str_decode(a), t = str_decode(b);
        if (s.size() > t.size())
            std::swap(s, t);
        return t.size() == s.size() + 1 && is_prefix(s, t) && m.tree->contains(t);
    }
    case Kind::FromGrName: return gr_bit(*m.gr, a, b) && gr_bit(*m.gr, a, a) && gr_bit(*m.gr, b, b);
    case Kind::Custom: return m.custom.has_edge(a, b);
    }
    return false;
}

auto GraphGen::finiteness() const -> Finiteness
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite:
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN: return Finiteness::Finite;
    case Kind::Ray:
    case Kind::TwoWayRay:
    case Kind::CompleteOmega:
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.kind == Kind::TreeT && m.n == 0 ? Finiteness::Finite : Finiteness::Infinite;
    case Kind::DisjointUnion:
    case Kind::ConnectedUnion: {
        bool all = true;
        for (const auto& p : m.parts) {
            auto f = p.finiteness();
            if (f == Finiteness::Infinite)
                return f;
            all = all && f == Finiteness::Finite;
        }
        return all ? Finiteness::Finite : Finiteness::Unknown;
    }
    case Kind::OmegaCopies: {
        if (m.parts[0].finiteness() == Finiteness::Finite && m.parts[0].size() == 0)
            return Finiteness::Finite;
        return m.parts[0].vertex_at(0) ? Finiteness::Infinite : Finiteness::Finite;
    }
    case Kind::Family: {
        for (const auto& p : m.period)
            if (p.vertex_at(0))
                return Finiteness::Infinite;
        bool all = true;
        for (const auto& p : m.parts) {
            auto f = p.finiteness();
            if (f == Finiteness::Infinite)
                return f;
            all = all && f == Finiteness::Finite;
        }
        return all ? Finiteness::Finite : Finiteness::Unknown;
    }
    case Kind::L1:
    case Kind::L2:
    case Kind::TreeGraph: return m.tree->finiteness();
    case Kind::FromGrName: {
        auto t = ec_tail(*m.gr);
        if (! t)
            return Finiteness::Unknown;
        return *t == 0 ? Finiteness::Finite : Finiteness::Infinite;
    }
    case Kind::Custom: return m.custom.finiteness;
    }
    return Finiteness::Unknown;
}

auto GraphGen::size() const -> std::optional<nat>
{
    if (finiteness() != Finiteness::Finite)
        return std::nullopt;
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return m.fin.v.size();
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN: return m.n;
    default: {
        nat k = 0;
        while (vertex_at(k))
            ++k;
        return k;
    }
    }
}

auto GraphGen::vertex_at(nat k) const -> std::optional<nat>
{
    const Impl& m = *impl_;
    switch (m.kind) {
    case Kind::Finite: return k < m.fin_sorted.size() ? std::optional<nat>(m.fin_sorted[k]) : std::nullopt;
    case Kind::Ray:
    case Kind::TwoWayRay:
    case Kind::CompleteOmega: return k;
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN: return k < m.n ? std::optional<nat>(k) : std::nullopt;
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.parts[0].vertex_at(k);
    case Kind::L1:
    case Kind::L2:
    case Kind::TreeGraph: {
        auto s = m.tree->node_at(k);
        if (! s)
            return std::nullopt;
        return str_code(*s);
    }
    case Kind::Custom: return m.custom.vertex_at(k);
    default: break;
    }

    std::lock_guard<std::mutex> lock(m.mu);
    nat spent = 0;
    while (m.cache.size() <= k && ! m.done) {
        switch (m.kind) {
        case Kind::DisjointUnion:
        case Kind::ConnectedUnion: {
            // s0: round, s1: part inside the round; rounds with no output end the enumeration
            nat P = m.parts.size();
            if (m.kind == Kind::ConnectedUnion && m.s0 == 0 && m.s1 == 0 && m.cache.empty())
                for (nat j = 0; j + 1 < P; ++j)
                    m.cache.push_back(glue_code(j));
            bool any = false;
            for (; m.s1 < P; ++m.s1) {
                auto v = m.parts[m.s1].vertex_at(m.s0);
                if (! v)
                    continue;
                any = true;
                if (m.kind == Kind::DisjointUnion)
                    m.cache.push_back(pair(m.s1, *v));
                else {
                    nat code = cu_code(m, m.s1, *v);
                    if (unpair(code).first == 0)
                        m.cache.push_back(code);
                }
            }
            m.s1 = 0;
            ++m.s0;
            if (! any)
                m.done = true;
            break;
        }
        case Kind::OmegaCopies: {
            // diagonal d = s0, local index s1; Cantor order of pair(copy, index)
            const auto& g = m.parts[0];
            if (! g.vertex_at(0)) {
                m.done = true;
                break;
            }
            if (m.s1 > m.s0) {
                ++m.s0;
                m.s1 = 0;
            }
            auto v = g.vertex_at(m.s1);
            if (v)
                m.cache.push_back(pair(m.s0 - m.s1, *v));
            else
                m.s1 = m.s0; // rest of the diagonal is past the end of g
            ++m.s1;
            break;
        }
        case Kind::Family: {
            // Cantor order of pair(part, local index), skipping exhausted parts
            bool live = std::any_of(m.period.begin(), m.period.end(),
                [](const GraphGen& g) { return g.vertex_at(0).has_value(); });
            if (! live) {
                // only the prefix contributes: stop past the last diagonal that can hold a vertex
                std::optional<nat> reach = m.parts.size();
                for (const auto& p : m.parts) {
                    auto z = p.size();
                    if (! z) {
                        reach.reset();
                        break;
                    }
                    *reach += *z;
                }
                if (reach && m.s0 > *reach) {
                    m.done = true;
                    break;
                }
            }
            if (m.s1 > m.s0) {
                ++m.s0;
                m.s1 = 0;
            }
            if (++spent > kScanCap * 64)
                throw Error(Errc::FuelExhausted, "family enumeration found no vertices");
            if (auto v = m.part(m.s0 - m.s1).vertex_at(m.s1))
                m.cache.push_back(pair(m.s0 - m.s1, *v));
            ++m.s1;
            break;
        }
        case Kind::FromGrName: {
            const auto& s = *m.gr;
            nat x = m.s0;
            auto t = ec_tail(s);
            if (t && *t == 0 && pair(x, x) >= s.prefix().size()) {
                m.done = true;
                break;
            }
            if (++spent > kScanCap)
                throw Error(Errc::FuelExhausted, "vertex scan of a Gr name exceeded its budget");
            if (gr_bit(s, x, x))
                m.cache.push_back(x);
            ++m.s0;
            break;
        }
        default: m.done = true;
        }
    }
    if (k < m.cache.size())
        return m.cache[k];
    return std::nullopt;
}

auto GraphGen::enumerate(nat n) const -> std::vector<nat>
{
    std::vector<nat> out;
    for (nat k = 0; k < n; ++k) {
        auto v = vertex_at(k);
        if (! v)
            break;
        out.push_back(*v);
    }
    return out;
}

auto GraphGen::index_of(nat v, nat limit) const -> std::optional<nat>
{
    switch (impl_->kind) {
    case Kind::Ray:
    case Kind::TwoWayRay:
    case Kind::CompleteOmega: return v;
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN: return v < impl_->n ? std::optional<nat>(v) : std::nullopt;
    default: break;
    }
    if (! has_vertex(v))
        return std::nullopt;
    for (nat k = 0; k < limit; ++k) {
        auto x = vertex_at(k);
        if (! x)
            return std::nullopt;
        if (*x == v)
            return k;
    }
    return std::nullopt;
}

namespace {
    // size of the subtree at s; nullopt when infinite
    auto subtree_size(const TreeGen& t, const Str& s) -> std::optional<nat>
    {
        if (! t.contains(s))
            return 0;
        switch (t.kind()) {
        case TreeGen::Kind::FullBinary: return std::nullopt;
        case TreeGen::Kind::SinglePath: return std::nullopt;
        case TreeGen::Kind::Finite: {
            nat c = 0;
            const auto& f = t.finite_nodes();
            for (auto it = f.lower_bound(s); it != f.end() && is_prefix(s, *it); ++it)
                ++c;
            return c;
        }
        case TreeGen::Kind::DisjointUnion: {
            if (! s.empty())
                return subtree_size(t.parts()[s[0]], Str(s.begin() + 1, s.end()));
            nat total = 1;
            for (const auto& p : t.parts()) {
                auto c = subtree_size(p, Str{});
                if (! c)
                    return std::nullopt;
                total = add_checked(total, *c);
            }
            return total;
        }
        case TreeGen::Kind::Cone: {
            if (! s.empty()) {
                auto c = t.cone_child(s[0]);
                return c ? subtree_size(*c, Str(s.begin() + 1, s.end())) : std::optional<nat>(0);
            }
            for (const auto& p : t.cone_period())
                if (p)
                    return std::nullopt;
            nat total = 1;
            for (const auto& p : t.cone_prefix()) {
                if (! p)
                    continue;
                auto c = subtree_size(*p, Str{});
                if (! c)
                    return std::nullopt;
                total = add_checked(total, *c);
            }
            return total;
        }
        default: {
            auto cert = t.path_certificate();
            if (cert) {
                bool on = true;
                for (nat i = 0; i < s.size() && on; ++i)
                    on = cert->eval(i) == s[i];
                if (on)
                    return std::nullopt;
            }
            if (t.finiteness() != Finiteness::Finite && t.kind() != TreeGen::Kind::Union)
                throw Error(Errc::DegreeUnknown, "subtree size of a generator-backed tree");
            std::vector<Str> stack{s};
            nat c = 0;
            while (! stack.empty()) {
                Str x = stack.back();
                stack.pop_back();
                ++c;
                if (c > 1'000'000)
                    throw Error(Errc::DegreeUnknown, "subtree too large to count");
                auto ch = t.children(x);
                if (! ch)
                    return std::nullopt;
                for (nat y : *ch) {
                    Str z = x;
                    z.push_back(y);
                    stack.push_back(std::move(z));
                }
            }
            return c;
        }
        }
    }

    auto construction_degree(const GraphGen& self, const GraphGen::Impl& m, nat code) -> Degree
    {
        const TreeGen& t = *m.tree;
        const GraphGen& g = m.parts[0];
        Str s = str_decode(code);
        if (t.kind() == TreeGen::Kind::LevelRule)
            throw Error(Errc::DegreeUnknown, "construction over a generator-backed tree");
        if (t.finiteness() == Finiteness::Finite) {
            nat d = 0;
            for (nat k = 0;; ++k) {
                auto x = t.node_at(k);
                if (! x)
                    break;
                d += self.has_edge(code, str_code(*x));
            }
            return Degree::of(d);
        }
        auto x = base_vertex(m, s.size());
        if (! x)
            return Degree::of(0);
        nat d = 0;
        for (nat i = 0; i < s.size(); ++i) {
            auto y = base_vertex(m, i);
            d += y && g.has_edge(*x, *y);
        }
        Degree gd = g.degree(*x);
        if (gd.omega) {
            auto cert = t.path_certificate();
            bool on = t.kind() == TreeGen::Kind::FullBinary;
            if (cert && ! on) {
                on = true;
                for (nat i = 0; i < s.size() && on; ++i)
                    on = cert->eval(i) == s[i];
            }
            if (! on)
                throw Error(Errc::DegreeUnknown, "extension profile of a node off the certified path");
            return Degree::inf();
        }
        for (nat w : g.neighbors(*x, gd.n)) {
            auto idx = g.index_of(w);
            if (! idx)
                throw Error(Errc::DegreeUnknown, "base neighbor outside the enumeration budget");
            if (*idx <= s.size())
                continue;
            auto c = t.extensions_at(s, *idx);
            if (! c)
                return Degree::inf();
            d = add_checked(d, *c);
        }
        if (m.kind == GraphGen::Kind::L2) {
            Str pre;
            for (nat i = 0; i < s.size(); ++i) {
                auto ch = t.children(pre);
                if (! ch)
                    return Degree::inf();
                for (nat c : *ch) {
                    if (c == s[i])
                        continue;
                    Str z = pre;
                    z.push_back(c);
                    auto sz = subtree_size(t, z);
                    if (! sz)
                        return Degree::inf();
                    d = add_checked(d, *sz);
                }
                pre.push_back(s[i]);
            }
        }
        return Degree::of(d);
    }
}

auto GraphGen::degree(nat c) const -> Degree
{
    const Impl& m = *impl_;
    if (! has_vertex(c))
        throw Error(Errc::BadParam, "degree of a non-vertex " + std::to_string(c));
    switch (m.kind) {
    case Kind::Finite: return Degree::of(m.fin.degree(c));
    case Kind::Ray: return Degree::of(c == 0 ? 1 : 2);
    case Kind::TwoWayRay: return Degree::of(2);
    case Kind::CompleteOmega: return Degree::inf();
    case Kind::RayN: return Degree::of(m.n == 1 ? 0 : (c == 0 || c + 1 == m.n ? 1 : 2));
    case Kind::CycleN: return Degree::of(2);
    case Kind::CompleteN: return Degree::of(m.n - 1);
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.parts[0].degree(c);
    case Kind::DisjointUnion: {
        auto [i, v] = unpair(c);
        return m.parts[i].degree(v);
    }
    case Kind::OmegaCopies: return m.parts[0].degree(unpair(c).second);
    case Kind::Family: {
        auto [i, v] = unpair(c);
        return m.part(i).degree(v);
    }
    case Kind::ConnectedUnion: {
        Degree d = Degree::of(0);
        for (auto [i, x] : cu_reps(m, c)) {
            auto e = m.parts[i].degree(x);
            if (e.omega)
                return Degree::inf();
            d.n += e.n;
        }
        return d;
    }
    case Kind::TreeGraph: {
        Str s = str_decode(c);
        auto ch = m.tree->children(s);
        if (! ch)
            return Degree::inf();
        return Degree::of((s.empty() ? 0 : 1) + ch->size());
    }
    case Kind::L1:
    case Kind::L2: return construction_degree(*this, m, c);
    case Kind::FromGrName: {
        auto t = ec_tail(*m.gr);
        if (t && *t == 1)
            return Degree::inf();
        if (t && *t == 0) {
            nat d = 0;
            for (nat w : enumerate(~nat{0}))
                d += has_edge(c, w);
            return Degree::of(d);
        }
        throw Error(Errc::DegreeUnknown, "degree in a graph given only by a Gr name");
    }
    case Kind::Custom:
        if (! m.custom.degree)
            throw Error(Errc::DegreeUnknown, "custom graph " + m.custom.name + " has no degree oracle");
        return m.custom.degree(c);
    }
    throw Error(Errc::DegreeUnknown, "unsupported node");
}

auto GraphGen::neighbors(nat c, nat n) const -> std::vector<nat>
{
    const Impl& m = *impl_;
    std::vector<nat> out;
    auto push = [&](nat x) {
        if (out.size() < n)
            out.push_back(x);
    };
    switch (m.kind) {
    case Kind::Finite:
        for (nat x : m.fin.neighbors(c))
            push(x);
        return out;
    case Kind::Ray:
        if (c > 0)
            push(c - 1);
        push(c + 1);
        return out;
    case Kind::TwoWayRay:
        if (c == 0) {
            push(1);
            push(2);
        }
        else if (c == 1) {
            push(0);
            push(3);
        }
        else {
            push(c - 2);
            push(c + 2);
        }
        return out;
    case Kind::CompleteOmega:
        for (nat x = 0; out.size() < n; ++x)
            if (x != c)
                push(x);
        return out;
    case Kind::RayN:
    case Kind::CycleN:
    case Kind::CompleteN:
        for (nat x = 0; x < m.n; ++x)
            if (has_edge(c, x))
                push(x);
        return out;
    case Kind::FullBinaryTree:
    case Kind::TreeT:
    case Kind::ForestF: return m.parts[0].neighbors(c, n);
    case Kind::DisjointUnion: {
        auto [i, v] = unpair(c);
        for (nat w : m.parts[i].neighbors(v, n))
            push(pair(i, w));
        return out;
    }
    case Kind::OmegaCopies: {
        auto [i, v] = unpair(c);
        for (nat w : m.parts[0].neighbors(v, n))
            push(pair(i, w));
        return out;
    }
    case Kind::Family: {
        auto [i, v] = unpair(c);
        for (nat w : m.part(i).neighbors(v, n))
            push(pair(i, w));
        return out;
    }
    case Kind::ConnectedUnion: {
        std::set<nat> seen;
        for (auto [i, x] : cu_reps(m, c))
            for (nat w : m.parts[i].neighbors(x, n)) {
                nat code = cu_code(m, i, w);
                if (code != c && seen.insert(code).second)
                    push(code);
            }
        return out;
    }
    case Kind::TreeGraph: {
        Str s = str_decode(c);
        if (! s.empty())
            push(str_code(Str(s.begin(), s.end() - 1)));
        auto ch = m.tree->children(s);
        std::vector<nat> cs;
        if (ch)
            cs = *ch;
        else
            for (nat x = 0; x < n; ++x)
                cs.push_back(x);
        std::sort(cs.begin(), cs.end());
        for (nat x : cs) {
            Str t = s;
            t.push_back(x);
            if (! ch && ! m.tree->contains(t))
                continue;
            push(str_code(t));
        }
        return out;
    }
    case Kind::Custom:
        if (m.custom.neighbors)
            return m.custom.neighbors(c, n);
        break;
    default: break;
    }
    // bounded scan in canonical order
    std::optional<nat> bound;
    try {
        auto d = degree(c);
        if (! d.omega)
            bound = d.n;
    }
    catch (const Error&) {
    }
    nat want = bound ? std::min(n, *bound) : n;
    for (nat k = 0; k < kScanCap && out.size() < want; ++k) {
        auto x = vertex_at(k);
        if (! x)
            break;
        if (*x != c && has_edge(c, *x))
            out.push_back(*x);
    }
    return out;
}

auto GraphGen::induced(const std::vector<nat>& vs) const -> FinGraph
{
    FinGraph g;
    for (nat x : vs)
        g.add_vertex(x);
    std::vector<nat> list(g.v.begin(), g.v.end());
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j)
            if (has_edge(list[i], list[j]))
                g.add_edge(list[i], list[j]);
    return g;
}

auto GraphGen::truncate(nat n) const -> FinGraph
{
    return induced(enumerate(n));
}

auto GraphGen::materialize() const -> FinGraph
{
    auto s = size();
    if (! s)
        throw Error(Errc::BadParam, "materialize needs a certified finite graph");
    if (impl_->kind == Kind::Finite)
        return impl_->fin;
    return truncate(*s);
}

auto GraphGen::describe() const -> std::string
{
    const Impl& m = *impl_;
    auto list = [&](const char* head) {
        std::string out = head;
        out += "(";
        for (std::size_t i = 0; i < m.parts.size(); ++i)
            out += (i ? "," : "") + m.parts[i].describe();
        return out + ")";
    };
    switch (m.kind) {
    case Kind::Finite: return "json:" + to_json(m.fin);
    case Kind::Ray: return "ray";
    case Kind::TwoWayRay: return "L";
    case Kind::CompleteOmega: return "komega";
    case Kind::FullBinaryTree: return "bintree";
    case Kind::TreeT: return "t(" + std::to_string(m.n) + ")";
    case Kind::ForestF: return "f(" + std::to_string(m.n) + ")";
    case Kind::RayN: return "r(" + std::to_string(m.n) + ")";
    case Kind::CycleN: return "c(" + std::to_string(m.n) + ")";
    case Kind::CompleteN: return "k(" + std::to_string(m.n) + ")";
    case Kind::DisjointUnion: return list("du");
    case Kind::OmegaCopies: return list("omega");
    case Kind::ConnectedUnion: return list("cu");
    case Kind::L1: return "l1(" + m.tree->describe() + "," + m.parts[0].describe() + ")";
    case Kind::L2: return "l2(" + m.tree->describe() + "," + m.parts[0].describe() + ")";
    case Kind::TreeGraph: return "tree(" + m.tree->describe() + ")";
    case Kind::FromGrName: return "gr(" + m.gr->spec() + ")";
    case Kind::Custom: return "custom:" + m.custom.name;
    case Kind::Family: {
        std::string out = "fam([";
        for (std::size_t i = 0; i < m.parts.size(); ++i)
            out += (i ? "," : "") + m.parts[i].describe();
        out += "];[";
        for (std::size_t i = 0; i < m.period.size(); ++i)
            out += (i ? "," : "") + m.period[i].describe();
        return out + "])";
    }
    }
    return "?";
}

auto graph_to_tree(const FinGraph& g, nat root) -> std::set<Str>
{
    if (! g.has_vertex(root))
        throw Error(Errc::BadParam, "root is not a vertex");
    if (! is_connected(g))
        throw Error(Errc::NotATree, "graph is disconnected");
    if (! is_acyclic(g))
        throw Error(Errc::NotATree, "graph has a cycle");
    // the root is the empty string; other vertices are the path after the root
    std::set<Str> out;
    std::vector<Str> stack{Str{}};
    while (! stack.empty()) {
        Str p = stack.back();
        stack.pop_back();
        out.insert(p);
        nat at = p.empty() ? root : p.back();
        nat parent = p.size() >= 2 ? p[p.size() - 2] : root;
        for (nat w : g.neighbors(at))
            if (p.empty() || w != parent) {
                Str q = p;
                q.push_back(w);
                stack.push_back(std::move(q));
            }
    }
    return out;
}

} // namespace wg
