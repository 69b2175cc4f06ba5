#include <wg/search.hpp>

#include <algorithm>
#include <deque>
#include <mutex>
#include <queue>

namespace wg {

namespace {

auto vcode(nat x) -> nat { return pair(x, x); }
auto ecode(nat a, nat b) -> nat
{
    auto [x, y] = edge_key(a, b);
    return pair(x, y);
}

// Host read one EGr position at a time, remembering when each item showed up.
struct HostReader {
    explicit HostReader(const SpaceName& h) : cur(h.stream)
    {
        if (h.space != Space::EGr)
            throw Error(Errc::BadParam, "host must be an EGr name");
    }
    EgrCursor cur;
    FinGraph g;
    nat read = 0;
    std::vector<nat> order; // vertices in order of appearance
    std::map<nat, nat> vstage;
    std::map<Edge, nat> estage;

    // codes delivered by this read
    auto step() -> std::vector<nat>
    {
        auto codes = cur.next();
        ++read;
        for (nat c : codes) {
            auto [i, j] = unpair(c);
            for (nat x : {i, j})
                if (! g.has_vertex(x)) {
                    g.add_vertex(x);
                    order.push_back(x);
                    vstage[x] = read;
                }
            if (i != j && ! g.has_edge(i, j)) {
                g.add_edge(i, j);
                estage[edge_key(i, j)] = read;
            }
        }
        return codes;
    }
    void read_to(nat s)
    {
        while (read < s)
            step();
    }
    auto vertex_by(nat x, nat s) const -> bool
    {
        auto it = vstage.find(x);
        return it != vstage.end() && it->second <= s;
    }
    auto edge_by(nat a, nat b, nat s) const -> bool
    {
        auto it = estage.find(edge_key(a, b));
        return it != estage.end() && it->second <= s;
    }
};

auto gr_name(const FinGraph& g) -> SpaceName { return name_of(Space::Gr, GraphGen::finite(g)); }

auto bfs_component(const FinGraph& g, nat v, std::optional<nat> skip = std::nullopt) -> std::vector<nat>
{
    std::vector<nat> out;
    if (! g.has_vertex(v) || (skip && *skip == v))
        return out;
    std::set<nat> seen{v};
    if (skip)
        seen.insert(*skip);
    std::deque<nat> q{v};
    while (! q.empty()) {
        nat x = q.front();
        q.pop_front();
        out.push_back(x);
        for (nat y : g.neighbors(x))
            if (seen.insert(y).second)
                q.push_back(y);
    }
    return out;
}

// Staged EGr output: each position after the first reads at most one host
// position; the first blocks until something is ready, later idle positions
// re-emit the first code.
struct Staged {
    explicit Staged(const SpaceName& h, nat fuel, Errc on_starve) : host(h), fuel(fuel), errc(on_starve) {}
    HostReader host;
    nat fuel;
    Errc errc;
    std::deque<std::pair<nat, nat>> pending; // code, inclusion entry
    std::optional<nat> first;
    std::vector<nat> out, incl, stage;
    std::function<void(Staged&, const std::vector<nat>&)> on_read;
    std::mutex mu;

    void emit(nat code, nat entry = 0) { pending.push_back({code, entry}); }
    void read_one()
    {
        if (host.read >= fuel)
            throw Error(errc, "nothing to emit after " + std::to_string(fuel) + " host positions");
        auto codes = host.step();
        on_read(*this, codes);
    }
    void produce(nat k)
    {
        while (out.size() <= k) {
            if (pending.empty()) {
                if (! first)
                    while (pending.empty())
                        read_one();
                else if (host.read < fuel)
                    read_one();
            }
            if (! pending.empty()) {
                auto [c, e] = pending.front();
                pending.pop_front();
                if (! first)
                    first = c;
                out.push_back(c);
                incl.push_back(e);
            }
            else {
                out.push_back(*first);
                incl.push_back(0);
            }
            stage.push_back(host.read);
        }
    }
};

auto staged_solution(const std::shared_ptr<Staged>& st) -> SolutionStream
{
    SolutionStream s;
    auto copy = CertifiedStream::generator([st](nat k) {
        std::lock_guard<std::mutex> lock(st->mu);
        st->produce(k);
        return st->out[k];
    });
    s.copy = {Space::EGr, copy, std::nullopt};
    s.inclusion = CertifiedStream::generator([st, copy](nat k) {
        copy.eval(k);
        std::lock_guard<std::mutex> lock(st->mu);
        return st->incl[k];
    });
    s.stage_of = [st, copy](nat k) {
        copy.eval(k);
        std::lock_guard<std::mutex> lock(st->mu);
        return st->stage[k];
    };
    return s;
}

auto distinct(const Str& s) -> bool
{
    std::set<nat> u(s.begin(), s.end());
    return u.size() == s.size();
}

auto path_prefix_code(const CertifiedStream& f, nat k) -> nat
{
    Str s;
    for (nat i = 0; i < k; ++i)
        s.push_back(f(i));
    return str_code(s);
}

// Is c the code of f restricted to |decode(c)|?
auto on_path(const CertifiedStream& f, nat c) -> std::optional<nat>
{
    Str s = str_decode(c);
    for (nat i = 0; i < s.size(); ++i)
        if (f(i) != s[i])
            return std::nullopt;
    return s.size();
}

auto tree_path(const GraphGen& host) -> CertifiedStream
{
    using K = GraphGen::Kind;
    if (host.kind() != K::L1 && host.kind() != K::L2 && host.kind() != K::TreeGraph)
        throw Error(Errc::BadParam, "host is not built over a tree");
    auto f = host.tree().path_certificate();
    if (! f)
        throw Error(Errc::CertificateMissing, "host tree has no path certificate");
    return *f;
}

} // namespace

// ---------------------------------------------------------------- audits

auto read_solution(const SolutionStream& s, nat n) -> SolutionPrefix
{
    SolutionPrefix p;
    p.copy = truncate(s.copy, n);
    std::map<nat, nat> m;
    for (nat k = 0; k < n; ++k) {
        nat e = s.inclusion(k);
        if (e == 0)
            continue;
        auto [a, x] = unpair(e - 1);
        if (auto it = m.find(a); it != m.end() && it->second != x)
            throw Error(Errc::MalformedInstance, "pattern vertex mapped twice");
        m[a] = x;
    }
    p.map.assign(m.begin(), m.end());
    return p;
}

namespace {

auto audit(const SolutionStream& s, const GraphGen& pattern, nat n,
    const std::function<std::optional<std::string>(nat k, nat code)>& host_has) -> std::optional<std::string>
{
    auto p = read_solution(s, n);
    auto wide = read_solution(s, s.copy.space == Space::EGr ? 3 * n + 8 : n);
    std::set<nat> img;
    for (auto [a, x] : p.map) {
        if (! img.insert(x).second)
            return "inclusion map not injective at host vertex " + std::to_string(x);
        if (! pattern.has_vertex(a))
            return "pattern has no vertex " + std::to_string(a);
    }
    if (s.copy.space == Space::EGr) {
        for (nat k = 0; k < n; ++k)
            if (auto bad = host_has(k, s.copy.stream(k)))
                return bad;
        for (nat x : p.copy.v)
            if (! img.count(x))
                return "copy vertex " + std::to_string(x) + " has no pattern preimage";
    }
    else {
        for (nat x : p.copy.v)
            if (auto bad = host_has(0, vcode(x)))
                return bad;
        for (auto [x, y] : p.copy.e)
            if (auto bad = host_has(0, ecode(x, y)))
                return bad;
    }
    std::map<nat, nat> inv;
    for (auto [a, x] : wide.map)
        inv[x] = a;
    for (auto [x, y] : p.copy.e) {
        auto ia = inv.find(x), ib = inv.find(y);
        if (ia == inv.end() || ib == inv.end())
            continue;
        if (! pattern.has_edge(ia->second, ib->second))
            return "copy edge " + std::to_string(x) + "-" + std::to_string(y) + " is not a pattern edge";
    }
    for (std::size_t i = 0; i < p.map.size(); ++i)
        for (std::size_t j = i + 1; j < p.map.size(); ++j) {
            auto [a, x] = p.map[i];
            auto [b, y] = p.map[j];
            bool present = s.copy.space == Space::Gr ? s.copy.stream(ecode(x, y)) == 1 : wide.copy.has_edge(x, y);
            if (pattern.has_edge(a, b) && ! present)
                return "pattern edge " + std::to_string(a) + "-" + std::to_string(b) + " missing from copy";
        }
    return std::nullopt;
}

} // namespace

auto revalidate(const SolutionStream& s, const SpaceName& host, const GraphGen& pattern, nat n)
    -> std::optional<std::string>
{
    HostReader r(host);
    return audit(s, pattern, n, [&](nat k, nat code) -> std::optional<std::string> {
        nat st = s.stage_of ? s.stage_of(k) : 0;
        r.read_to(st);
        auto [i, j] = unpair(code);
        bool ok = i == j ? r.vertex_by(i, st) : r.edge_by(i, j, st);
        if (! ok)
            return "code " + std::to_string(code) + " not in host by stage " + std::to_string(st);
        return std::nullopt;
    });
}

auto revalidate(const SolutionStream& s, const GraphGen& host, const GraphGen& pattern, nat n)
    -> std::optional<std::string>
{
    return audit(s, pattern, n, [&](nat, nat code) -> std::optional<std::string> {
        auto [i, j] = unpair(code);
        bool ok = i == j ? host.has_vertex(i) : host.has_vertex(i) && host.has_vertex(j) && host.has_edge(i, j);
        if (! ok)
            return "code " + std::to_string(code) + " not in host";
        return std::nullopt;
    });
}

// ---------------------------------------------------------------- finite patterns

auto find_s_finite(const FinGraph& g, const SpaceName& h, nat fuel) -> std::optional<SolutionStream>
{
    HostReader r(h);
    std::size_t last_v = 0, last_e = 0;
    for (nat s = 1; s <= fuel; ++s) {
        r.step();
        if (s > 1 && r.g.v.size() == last_v && r.g.e.size() == last_e)
            continue;
        last_v = r.g.v.size();
        last_e = r.g.e.size();
        auto f = fin_subgraph(g, r.g, false);
        if (! f)
            continue;
        FinGraph copy;
        std::map<nat, nat> img(f->begin(), f->end());
        std::vector<nat> entries;
        for (auto [a, x] : *f) {
            copy.add_vertex(x);
            entries.push_back(pair(a, x) + 1);
        }
        for (auto [a, b] : g.e)
            copy.add_edge(img[a], img[b]);
        SolutionStream out;
        out.copy = gr_name(copy);
        out.inclusion = CertifiedStream::eventually_constant(entries, 0);
        out.stage_of = [s](nat) { return s; };
        out.cert["found_at"] = s;
        return out;
    }
    return std::nullopt;
}

namespace {

auto pow_checked(nat b, nat e) -> nat
{
    nat r = 1;
    for (nat i = 0; i < e; ++i)
        r = mul_checked(r, b);
    return r;
}

// tuples of length rem over 0..M, counted with or without needing an M
auto completions(nat M, nat rem, bool have) -> nat
{
    nat all = pow_checked(M + 1, rem);
    return have ? all : all - pow_checked(M, rem);
}

} // namespace

auto tuple_code(const Str& s) -> nat
{
    if (s.empty())
        return 0;
    nat k = s.size();
    nat M = *std::max_element(s.begin(), s.end());
    nat r = pow_checked(M, k);
    bool have = false;
    for (nat pos = 0; pos < k; ++pos) {
        for (nat d = 0; d < s[pos]; ++d)
            r = add_checked(r, completions(M, k - pos - 1, have || d == M));
        have = have || s[pos] == M;
    }
    return r;
}

auto tuple_decode(nat k, nat r) -> Str
{
    if (k == 0)
        return {};
    nat M = 0;
    while (true) {
        nat next;
        try {
            next = pow_checked(M + 1, k);
        }
        catch (const Error&) {
            break; // r is below any unrepresentable bound
        }
        if (r < next)
            break;
        ++M;
    }
    r -= pow_checked(M, k);
    Str out;
    bool have = false;
    for (nat pos = 0; pos < k; ++pos) {
        for (nat d = 0; d <= M; ++d) {
            nat c = completions(M, k - pos - 1, have || d == M);
            if (r < c) {
                out.push_back(d);
                have = have || d == M;
                break;
            }
            r -= c;
        }
    }
    return out;
}

namespace {

// sigma's entries index the host vertices in order of appearance
auto resolve(HostReader& r, const Str& sigma, nat t) -> std::optional<std::vector<nat>>
{
    r.read_to(t);
    std::vector<nat> out;
    for (nat i : sigma) {
        if (i >= r.order.size() || r.vstage[r.order[i]] > t)
            return std::nullopt;
        out.push_back(r.order[i]);
    }
    return out;
}

} // namespace

auto stable_code_set(const FinGraph& g, const SpaceName& h) -> CnInstance
{
    auto r = std::make_shared<HostReader>(h);
    auto mu = std::make_shared<std::mutex>();
    auto gv = g.vertex_list();
    std::optional<nat> exhaust = egr_exhaustion_point(h.stream);

    nat k = gv.size();
    auto shape_ok = [k](nat n) { return distinct(tuple_decode(k, unpair(n).first)); };
    // induced at stage s, with every vertex and pattern edge there by stage t
    auto status = [r, mu, g, gv, k, shape_ok](nat n, nat s) -> bool {
        if (! shape_ok(n))
            return false;
        auto [c, t] = unpair(n);
        std::lock_guard<std::mutex> lock(*mu);
        auto img = resolve(*r, tuple_decode(k, c), t);
        if (! img)
            return false;
        r->read_to(s);
        for (std::size_t i = 0; i < gv.size(); ++i)
            for (std::size_t j = i + 1; j < gv.size(); ++j) {
                bool want = g.has_edge(gv[i], gv[j]);
                if (want && ! r->edge_by((*img)[i], (*img)[j], t))
                    return false;
                if (! want && r->edge_by((*img)[i], (*img)[j], s))
                    return false;
            }
        return true;
    };
    CnInstance inst;
    inst.complement = CertifiedStream::generator([status, shape_ok](nat p) -> nat {
        auto [n, s] = unpair(p);
        bool out = s < unpair(n).second ? ! shape_ok(n) : ! status(n, s);
        return out ? n + 1 : 0;
    });
    if (exhaust) {
        nat e = *exhaust;
        inst.member = [status, e](nat n) -> std::optional<bool> { return status(n, std::max(e, unpair(n).second)); };
    }
    return inst;
}

auto decode_stable_code(const FinGraph& g, const SpaceName& h, nat n) -> SolutionStream
{
    auto gv = g.vertex_list();
    auto [c, t] = unpair(n);
    Str sigma = tuple_decode(gv.size(), c);
    HostReader r(h);
    auto img = distinct(sigma) ? resolve(r, sigma, t) : std::nullopt;
    if (! img)
        throw Error(Errc::MalformedInstance, "code does not name an injection of the pattern");
    FinGraph copy;
    std::vector<nat> entries;
    for (std::size_t i = 0; i < gv.size(); ++i) {
        copy.add_vertex((*img)[i]);
        entries.push_back(pair(gv[i], (*img)[i]) + 1);
    }
    for (std::size_t i = 0; i < gv.size(); ++i)
        for (std::size_t j = i + 1; j < gv.size(); ++j)
            if (g.has_edge(gv[i], gv[j]))
                copy.add_edge((*img)[i], (*img)[j]);
    SolutionStream out;
    out.copy = gr_name(copy);
    out.inclusion = CertifiedStream::eventually_constant(entries, 0);
    out.stage_of = [t = t](nat) { return t; };
    out.cert["code"] = n;
    out.cert["stage"] = t;
    return out;
}

auto find_is_via_cn(const FinGraph& g, const SpaceName& h, const CnOracle& cn) -> SolutionStream
{
    if (is_complete(g))
        throw Error(Errc::BadParam, "pattern must not be complete");
    return decode_stable_code(g, h, cn(stable_code_set(g, h)));
}

// ---------------------------------------------------------------- components

auto ComponentCert::graph() const -> GraphGen
{
    std::vector<GraphGen> a, b;
    for (const auto& f : prefix)
        a.push_back(GraphGen::finite(f));
    for (const auto& f : period)
        b.push_back(GraphGen::finite(f));
    if (b.empty())
        return GraphGen::disjoint_union(a);
    return GraphGen::family(a, b);
}

auto ComponentCert::component(nat i) const -> const FinGraph&
{
    if (i < prefix.size())
        return prefix[i];
    if (period.empty())
        throw Error(Errc::BadParam, "component index past a finite family");
    return period[(i - prefix.size()) % period.size()];
}

auto ComponentCert::exceptional() const -> std::vector<nat>
{
    std::vector<nat> out;
    for (nat i = 0; i < prefix.size(); ++i) {
        bool recurs = false;
        for (const auto& f : period)
            recurs = recurs || fin_subgraph(prefix[i], f, false).has_value();
        if (! recurs)
            out.push_back(i);
    }
    return out;
}

auto find_s_components(const ComponentCert& cert, const SpaceName& h, nat fuel) -> SolutionStream
{
    if (cert.prefix.empty() && cert.period.empty())
        throw Error(Errc::CertificateMissing, "no components listed");
    for (const auto& f : cert.prefix)
        if (f.v.empty())
            throw Error(Errc::CertificateMissing, "empty component");
    for (const auto& f : cert.period)
        if (f.v.empty())
            throw Error(Errc::CertificateMissing, "empty component");

    auto st = std::make_shared<Staged>(h, fuel, Errc::FuelExhausted);
    auto exc = cert.exceptional();
    std::set<nat> exc_set(exc.begin(), exc.end());

    // union of the exceptional components, vertices tagged pair(i, v)
    FinGraph joint;
    for (nat i : exc) {
        for (nat v : cert.prefix[i].v)
            joint.add_vertex(pair(i, v));
        for (auto [a, b] : cert.prefix[i].e)
            joint.add_edge(pair(i, a), pair(i, b));
    }
    struct Plan {
        bool exc_done = false;
        nat next = 0;
        std::set<nat> used;
        std::size_t tried_v = ~std::size_t{0}, tried_e = 0;
    };
    auto plan = std::make_shared<Plan>();
    plan->exc_done = exc.empty();
    bool finite_family = cert.period.empty();
    nat total = cert.prefix.size();

    auto claim = [plan](Staged& s, const FinGraph& pat, const Embedding& f, auto tag) {
        std::map<nat, nat> img(f.begin(), f.end());
        for (auto [a, x] : f) {
            plan->used.insert(x);
            s.emit(vcode(x), pair(tag(a), x) + 1);
        }
        for (auto [a, b] : pat.e)
            s.emit(ecode(img[a], img[b]));
    };

    st->on_read = [=](Staged& s, const std::vector<nat>&) {
        bool even = s.host.read % 2 == 0;
        if (! plan->exc_done) {
            if (! even)
                return;
            auto f = fin_subgraph(joint, s.host.g, false);
            if (! f)
                return;
            claim(s, joint, *f, [](nat a) { return a; });
            plan->exc_done = true;
            return;
        }
        if (even && ! exc.empty())
            return;
        while (exc_set.count(plan->next))
            ++plan->next;
        if (finite_family && plan->next >= total)
            return;
        if (s.host.g.v.size() == plan->tried_v && s.host.g.e.size() == plan->tried_e)
            return;
        std::set<nat> free;
        for (nat x : s.host.g.v)
            if (! plan->used.count(x))
                free.insert(x);
        const FinGraph& pat = cert.component(plan->next);
        auto f = fin_subgraph(pat, s.host.g.induced(free), false);
        if (! f) {
            plan->tried_v = s.host.g.v.size();
            plan->tried_e = s.host.g.e.size();
            return;
        }
        nat i = plan->next++;
        plan->tried_v = ~std::size_t{0};
        claim(s, pat, *f, [i](nat a) { return pair(i, a); });
    };
    auto out = staged_solution(st);
    out.cert["exceptional"] = exc.size();
    return out;
}

// ---------------------------------------------------------------- rays

namespace {

struct Follower {
    explicit Follower(const SpaceName& h, nat fuel) : host(h), fuel(fuel) {}
    HostReader host;
    nat fuel;
    std::vector<nat> out;
    std::set<nat> used;
    std::optional<nat> prev;
    std::mutex mu;

    void more()
    {
        if (host.read >= fuel)
            throw Error(Errc::PatternNeverSeen, "host exhausted the fuel before the pattern showed up");
        host.step();
    }
    // next vertex of a ray: a neighbour of the last output other than the previous one
    void extend()
    {
        nat cur = out.back();
        for (;;) {
            for (nat y : host.g.neighbors(cur))
                if (! used.count(y)) {
                    out.push_back(y);
                    used.insert(y);
                    return;
                }
            more();
        }
    }
    void push(nat x)
    {
        out.push_back(x);
        used.insert(x);
    }
};

auto pendant_pattern(const FinGraph& core) -> FinGraph
{
    FinGraph p = core;
    nat t = core.size();
    p.add_edge(0, t);
    return p;
}

} // namespace

auto ray_follow(RayKind kind, const SpaceName& h, nat fuel) -> CertifiedStream
{
    using K = RayKind::Kind;
    auto st = std::make_shared<Follower>(h, fuel);
    std::optional<FinGraph> core;
    if (kind.kind == K::CycleTailRay || kind.kind == K::CompleteTailRay) {
        if (kind.n < 3)
            throw Error(Errc::BadParam, "the head needs at least 3 vertices");
        std::vector<Edge> es;
        for (nat i = 0; i < kind.n; ++i)
            for (nat j = i + 1; j < kind.n; ++j)
                if (kind.kind == K::CompleteTailRay || j == i + 1 || (i == 0 && j == kind.n - 1))
                    es.push_back({i, j});
        core = pendant_pattern(fin_from_edges(kind.n, es));
    }
    return CertifiedStream::generator([st, kind, core](nat k) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        Follower& f = *st;
        if (f.out.empty()) {
            switch (kind.kind) {
            case K::TwoWayRay:
                while (f.host.order.empty())
                    f.more();
                f.push(f.host.order.front());
                break;
            case K::FullBinaryTree:
                while (! f.host.g.has_vertex(0))
                    f.more();
                f.push(0);
                break;
            default: {
                std::optional<Embedding> e;
                while (! (e = fin_subgraph(*core, f.host.g, false)))
                    f.more();
                std::map<nat, nat> img(e->begin(), e->end());
                for (nat i = 0; i < kind.n; ++i)
                    f.used.insert(img[i]);
                f.push(img[kind.n]);
            }
            }
        }
        while (f.out.size() <= k) {
            if (kind.kind != K::FullBinaryTree) {
                f.extend();
                continue;
            }
            // any child of the last node, least code first
            Str cur = str_decode(f.out.back());
            std::optional<nat> best;
            while (! best) {
                for (nat y : f.host.g.neighbors(f.out.back())) {
                    Str t = str_decode(y);
                    if (t.size() == cur.size() + 1 && is_prefix(cur, t) && (! best || y < *best))
                        best = y;
                }
                if (! best)
                    f.more();
            }
            f.push(*best);
        }
        return f.out[k];
    });
}

namespace {

struct Probe {
    explicit Probe(const SpaceName& h, nat fuel) : host(h), fuel(fuel) {}
    HostReader host;
    nat fuel;
    std::optional<nat> v, w;
    std::mutex mu;

    void more()
    {
        if (host.read >= fuel)
            throw Error(Errc::FuelExhausted, "probe ran out of fuel");
        host.step();
    }
    void find_vw()
    {
        while (! w) {
            if (! v && ! host.order.empty())
                v = host.order.front();
            if (v) {
                auto ns = host.g.neighbors(*v);
                if (! ns.empty()) {
                    w = ns.front();
                    break;
                }
            }
            more();
        }
    }
    // (vertices on the w side, vertices on the other side) in the graph read so far
    auto sides() const -> std::pair<nat, nat>
    {
        nat a = bfs_component(host.g, *w, *v).size();
        std::set<nat> other;
        for (nat y : host.g.neighbors(*v))
            if (y != *w)
                for (nat z : bfs_component(host.g, y, *v))
                    other.insert(z);
        return {a, other.size()};
    }
    // q at the stage with s+1 host positions read
    auto q(nat s) -> nat
    {
        host.read_to(s + 1);
        if (! v || ! w) {
            if (! v && ! host.order.empty())
                v = host.order.front();
            if (v && ! host.g.neighbors(*v).empty())
                w = host.g.neighbors(*v).front();
        }
        if (! w)
            return 0;
        auto [a, b] = sides();
        return b > a ? 1 : 0;
    }
};

// Stage from which q is constant, read off the denoted graph: the finite
// side is found by a dovetailed search and q settles once it is in view and
// outgrown. nullopt when no side ends within the budget.
auto probe_settles(Probe& p, const GraphGen& d, nat budget) -> std::optional<nat>
{
    p.find_vw();
    nat v = *p.v, w = *p.w;
    struct Side {
        std::set<nat> seen;
        std::deque<nat> q;
        bool done = false;
    };
    Side a, b;
    a.seen = {v, w};
    a.q = {w};
    b.seen = {v};
    for (nat y : d.neighbors(v, 8))
        if (y != w) {
            b.seen.insert(y);
            b.q.push_back(y);
        }
    auto step = [&](Side& s) {
        if (s.q.empty()) {
            s.done = true;
            return;
        }
        nat x = s.q.front();
        s.q.pop_front();
        for (nat y : d.neighbors(x, 8))
            if (s.seen.insert(y).second)
                s.q.push_back(y);
    };
    for (nat i = 0; i < budget && ! a.done && ! b.done; ++i) {
        step(a);
        step(b);
    }
    if (! a.done && ! b.done)
        return std::nullopt;
    bool finite_w = a.done;
    nat len = (finite_w ? a.seen.size() : b.seen.size()) - 1; // without v
    for (nat s = 0;; ++s) {
        if (s >= p.fuel)
            return std::nullopt;
        p.q(s);
        auto [x, y] = p.sides();
        nat fin = finite_w ? x : y, inf = finite_w ? y : x;
        if (fin == len && inf > len)
            return s;
    }
}

} // namespace

auto ray_probe_stream(const SpaceName& h, nat fuel) -> CertifiedStream
{
    auto st = std::make_shared<Probe>(h, fuel);
    if (h.denotes && h.literal) {
        std::lock_guard<std::mutex> lock(st->mu);
        if (auto s1 = probe_settles(*st, *h.denotes, fuel)) {
            std::vector<nat> pre;
            for (nat s = 0; s <= *s1; ++s)
                pre.push_back(st->q(s));
            nat tail = pre.back();
            return CertifiedStream::eventually_constant(pre, tail);
        }
    }
    auto fresh = std::make_shared<Probe>(h, fuel);
    return CertifiedStream::generator([fresh](nat s) {
        std::lock_guard<std::mutex> lock(fresh->mu);
        return fresh->q(s);
    });
}

auto emb_ray_r(const SpaceName& h, const Lim2Oracle& lim2, nat fuel) -> CertifiedStream
{
    nat side = lim2(ray_probe_stream(h, fuel));
    auto st = std::make_shared<Follower>(h, fuel);
    return CertifiedStream::generator([st, side](nat k) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        Follower& f = *st;
        if (f.out.empty()) {
            while (f.host.order.empty() || f.host.g.neighbors(f.host.order.front()).empty())
                f.more();
            nat v = f.host.order.front();
            nat w = f.host.g.neighbors(v).front();
            f.push(v);
            if (side == 0)
                f.push(w);
            else
                f.used.insert(w);
        }
        while (f.out.size() <= k)
            f.extend();
        return f.out[k];
    });
}

// ---------------------------------------------------------------- paths from solutions

namespace {

// Solution copy read one name position at a time, in either space.
struct CopyReader {
    explicit CopyReader(const SpaceName& c) : name(c), cur(c.stream) {}
    SpaceName name;
    EgrCursor cur;
    nat pos = 0;
    FinGraph g;
    std::vector<nat> order;
    std::vector<Edge> waiting;

    void add_vertex(nat x)
    {
        if (! g.has_vertex(x)) {
            g.add_vertex(x);
            order.push_back(x);
        }
    }
    void step()
    {
        if (name.space == Space::EGr) {
            for (nat c : cur.next()) {
                auto [i, j] = unpair(c);
                add_vertex(i);
                add_vertex(j);
                if (i != j)
                    g.add_edge(i, j);
            }
        }
        else {
            nat c = pos;
            if (name.stream(c) == 1) {
                auto [i, j] = unpair(c);
                if (i == j)
                    add_vertex(i);
                else
                    waiting.push_back({i, j});
            }
            std::vector<Edge> keep;
            for (auto [a, b] : waiting)
                if (g.has_vertex(a) && g.has_vertex(b))
                    g.add_edge(a, b);
                else
                    keep.push_back({a, b});
            waiting.swap(keep);
        }
        ++pos;
    }
    auto member(nat x) const -> bool { return name.space == Space::Gr ? name.stream(pair(x, x)) == 1 : g.has_vertex(x); }
};

struct PathState {
    explicit PathState(const SpaceName& c) : rd(c) {}
    CopyReader rd;
    std::vector<nat> out;
    std::optional<Str> longest;
    std::mutex mu;
};

} // namespace

auto path_from_solution(PathMode mode, const SolutionStream& sol, const GraphGen& host, nat fuel) -> CertifiedStream
{
    using K = PathMode::Kind;
    if (mode.kind == K::L2Oracle && ! mode.lambda)
        throw Error(Errc::BadParam, "oracle mode needs lambda");
    auto st = std::make_shared<PathState>(sol.copy);
    std::optional<TreeGen> tree;
    if (host.kind() == GraphGen::Kind::L1 || host.kind() == GraphGen::Kind::L2)
        tree = host.tree();
    return CertifiedStream::generator([st, mode, fuel, tree](nat s) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        CopyReader& rd = st->rd;
        auto more = [&] {
            if (rd.pos >= fuel)
                throw Error(Errc::FuelExhausted, "solution did not supply the next node");
            rd.step();
        };
        std::optional<nat> pick;
        while (! pick) {
            if (mode.kind == K::L1) {
                std::optional<Str> last;
                if (! st->out.empty())
                    last = str_decode(st->out.back());
                for (nat x : rd.order) {
                    Str t = str_decode(x);
                    if (last && (t.size() <= last->size() || ! is_prefix(*last, t)))
                        continue;
                    if (rd.g.degree(x) > mode.n) {
                        pick = x;
                        break;
                    }
                }
            }
            else {
                nat need = mode.kind == K::L2 ? mode.n + 1 : mode.lambda(s + 1) + 1;
                for (nat x : rd.order) {
                    Str t = str_decode(x);
                    if (t.size() < s)
                        continue;
                    nat ext = 0;
                    for (nat y : rd.order) {
                        Str u = str_decode(y);
                        if (u.size() > t.size() && is_prefix(t, u))
                            ++ext;
                    }
                    if (ext < need)
                        continue;
                    nat pre = 0;
                    Str z;
                    for (nat i = 0; i < t.size(); ++i) {
                        if (rd.member(str_code(z)))
                            ++pre;
                        z.push_back(t[i]);
                    }
                    if (rd.name.space == Space::Gr ? pre != s : pre < s)
                        continue;
                    pick = x;
                    break;
                }
            }
            if (! pick)
                more();
        }
        Str t = str_decode(*pick);
        if (tree && ! tree->contains(t))
            throw Error(Errc::PromiseViolation, "picked a node outside the tree");
        if (mode.kind == K::L1) {
            st->out.push_back(*pick);
            return *pick;
        }
        if (st->longest && ! comparable(*st->longest, t))
            throw Error(Errc::PromiseViolation, "incomparable picks " + str_format(*st->longest) + " and " + str_format(t));
        if (! st->longest || t.size() > st->longest->size())
            st->longest = t;
        st->out.push_back(str_code(*st->longest));
        return st->out.back();
    });
}

auto degree_lambda(const GraphGen& g, nat n, nat scan) -> nat
{
    std::vector<nat> ds;
    for (nat i = 0; i < scan && ds.size() < scan; ++i) {
        auto v = g.vertex_at(i);
        if (! v)
            break;
        auto d = g.degree(*v);
        if (! d.omega)
            ds.push_back(d.n);
    }
    if (n == 0)
        return 0;
    if (ds.size() < n)
        throw Error(Errc::FuelExhausted, "fewer than n finite-degree vertices in the scan");
    std::sort(ds.begin(), ds.end());
    return ds[n - 1];
}

auto canonical_construction_copy(const GraphGen& host) -> SolutionStream
{
    if (host.kind() != GraphGen::Kind::L1 && host.kind() != GraphGen::Kind::L2)
        throw Error(Errc::BadParam, "needs an L1 or L2 host");
    auto f = tree_path(host);
    GraphGen base = host.parts()[0];
    SolutionStream s;
    auto bit = [f, base](nat c) -> nat {
        auto [i, j] = unpair(c);
        auto a = on_path(f, i), b = on_path(f, j);
        if (! a || ! b)
            return 0;
        auto x = base.vertex_at(*a), y = base.vertex_at(*b);
        if (! x || ! y)
            return 0;
        return i == j || base.has_edge(*x, *y) ? 1 : 0;
    };
    s.copy = {Space::Gr, CertifiedStream::pointwise(bit), std::nullopt};
    s.inclusion = CertifiedStream::pointwise([f, base](nat k) -> nat {
        auto x = base.vertex_at(k);
        return x ? pair(*x, path_prefix_code(f, k)) + 1 : 0;
    });
    s.stage_of = [](nat) { return nat{0}; };
    return s;
}

auto canonical_ray_copy(const GraphGen& host) -> SolutionStream
{
    auto f = tree_path(host);
    for (nat k = 0; k < 4; ++k)
        if (! host.has_edge(path_prefix_code(f, k), path_prefix_code(f, k + 1)))
            throw Error(Errc::BadParam, "consecutive path nodes are not adjacent in the host");
    SolutionStream s;
    s.copy = {Space::Gr, CertifiedStream::pointwise([f](nat c) -> nat {
                  auto [i, j] = unpair(c);
                  auto a = on_path(f, i), b = on_path(f, j);
                  if (! a || ! b)
                      return 0;
                  return i == j || *a + 1 == *b || *b + 1 == *a ? 1 : 0;
              }),
        std::nullopt};
    s.inclusion = CertifiedStream::pointwise([f](nat k) { return pair(k, path_prefix_code(f, k)) + 1; });
    s.stage_of = [](nat) { return nat{0}; };
    s.cert["ascending_from"] = 0;
    return s;
}

auto ray_path_via_lim2(const SolutionStream& ray, const Lim2Oracle& lim2, nat fuel) -> CertifiedStream
{
    struct State {
        std::map<nat, nat> image;
        nat scanned = 0;
        std::optional<nat> turn;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    SolutionStream r = ray;
    std::optional<nat> asc;
    if (auto it = ray.cert.find("ascending_from"); it != ray.cert.end())
        asc = it->second;
    // host vertex for ray vertex k
    auto at = [st, r, fuel](nat k) -> nat {
        while (! st->image.count(k)) {
            if (st->scanned >= fuel)
                throw Error(Errc::FuelExhausted, "ray vertex never mapped");
            nat e = r.inclusion(st->scanned++);
            if (e)
                st->image[unpair(e - 1).first] = unpair(e - 1).second;
        }
        return st->image[k];
    };
    auto level = [at](nat k) -> nat { return str_decode(at(k)).size(); };
    return CertifiedStream::generator([st, at, level, lim2, asc, fuel](nat n) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        if (! st->turn) {
            for (nat k = 0; ! st->turn; ++k) {
                if (k >= fuel)
                    throw Error(Errc::FuelExhausted, "no turning point within fuel");
                nat lk = level(k);
                // 1 once the ray is back at level <= lk after position k
                auto qk = [level, k, lk](nat s) -> nat {
                    for (nat j = k + 1; j <= s; ++j)
                        if (level(j) <= lk)
                            return 1;
                    return 0;
                };
                CertifiedStream q;
                if (asc) {
                    nat stable = std::max(k, *asc + lk) + 1;
                    std::vector<nat> pre;
                    for (nat s = 0; s <= stable; ++s)
                        pre.push_back(qk(s));
                    q = CertifiedStream::eventually_constant(pre, pre.back());
                }
                else
                    q = CertifiedStream::generator(qk);
                if (lim2(q) == 0)
                    st->turn = k;
            }
        }
        nat k = *st->turn;
        Str top = str_decode(at(k));
        if (n <= top.size())
            return str_code(Str(top.begin(), top.begin() + n));
        return at(k + (n - top.size()));
    });
}

// ---------------------------------------------------------------- restriction, stars, forests

auto restrict_to_connected(const SpaceName& h, nat v, nat fuel) -> SpaceName
{
    auto st = std::make_shared<Staged>(h, fuel, Errc::FuelExhausted);
    auto done_v = std::make_shared<std::set<nat>>();
    auto done_e = std::make_shared<std::set<Edge>>();
    st->on_read = [v, done_v, done_e](Staged& s, const std::vector<nat>&) {
        const FinGraph& g = s.host.g;
        if (! g.has_vertex(v))
            return;
        // BFS tree edges first, so every vertex arrives with a path back to v
        std::map<nat, nat> parent;
        std::deque<nat> q{v};
        std::set<nat> seen{v};
        std::vector<nat> comp;
        while (! q.empty()) {
            nat x = q.front();
            q.pop_front();
            comp.push_back(x);
            for (nat y : g.neighbors(x))
                if (seen.insert(y).second) {
                    parent[y] = x;
                    q.push_back(y);
                }
        }
        for (nat x : comp) {
            if (! done_v->insert(x).second)
                continue;
            s.emit(vcode(x));
            if (parent.count(x)) {
                done_e->insert(edge_key(x, parent[x]));
                s.emit(ecode(x, parent[x]));
            }
        }
        for (nat x : comp)
            for (nat y : g.neighbors(x))
                if (done_e->insert(edge_key(x, y)).second)
                    s.emit(ecode(x, y));
    };
    return staged_solution(st).copy;
}

auto find_t3(const GraphGen& h, nat scan) -> SolutionStream
{
    std::optional<nat> v0;
    for (nat i = 0; i < scan && ! v0; ++i) {
        auto v = h.vertex_at(i);
        if (! v)
            break;
        if (h.degree(*v).omega)
            v0 = *v;
    }
    if (! v0)
        throw Error(Errc::NoInfiniteDegreeVertex, "no vertex of infinite degree among the first " + std::to_string(scan));
    struct State {
        std::vector<nat> nbrs;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    nat root = *v0;
    auto leaf = [st, h, root](nat i) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->nbrs.size() <= i) {
            nat want = std::max<nat>(16, 2 * st->nbrs.size());
            st->nbrs = h.neighbors(root, want);
            if (st->nbrs.size() < want && st->nbrs.size() <= i)
                throw Error(Errc::FuelExhausted, "neighbour scan stopped early");
        }
        return st->nbrs[i];
    };
    SolutionStream s;
    s.copy = {Space::EGr, CertifiedStream::generator([leaf, root](nat k) -> nat {
                  if (k == 0)
                      return vcode(root);
                  nat i = (k - 1) / 2;
                  return k % 2 ? vcode(leaf(i)) : ecode(root, leaf(i));
              }),
        std::nullopt};
    s.inclusion = CertifiedStream::generator([leaf, root](nat k) -> nat {
        if (k == 0)
            return pair(str_code({}), root) + 1;
        if (k % 2 == 0)
            return 0;
        nat i = (k - 1) / 2;
        return pair(str_code({i}), leaf(i)) + 1;
    });
    s.stage_of = [](nat) { return nat{0}; };
    s.cert["root"] = root;
    return s;
}

auto infinite_level(const GraphGen& h, nat v) -> std::optional<nat>
{
    using K = GraphGen::Kind;
    switch (h.kind()) {
    case K::Finite:
    case K::Ray:
    case K::TwoWayRay:
    case K::FullBinaryTree:
    case K::RayN:
    case K::CycleN:
    case K::CompleteN: return 0;
    case K::CompleteOmega: return std::nullopt;
    case K::TreeT: {
        nat d = str_decode(v).size();
        return d <= h.param() ? h.param() - d : 0;
    }
    case K::ForestF: {
        nat d = str_decode(unpair(v).second).size();
        return d <= h.param() ? h.param() - d : 0;
    }
    case K::OmegaCopies: return infinite_level(h.parts()[0], unpair(v).second);
    case K::DisjointUnion: {
        auto [i, w] = unpair(v);
        if (i >= h.parts().size())
            throw Error(Errc::BadParam, "no such vertex");
        return infinite_level(h.parts()[i], w);
    }
    case K::Family: {
        auto [i, w] = unpair(v);
        return infinite_level(h.family_part(i), w);
    }
    case K::TreeGraph:
        if (h.finiteness() == Finiteness::Finite)
            return 0;
        break;
    default: break;
    }
    throw Error(Errc::PredicateUnsupported, "level predicate not available on " + h.describe());
}

auto find_f2k2(const GraphGen& h, nat k, nat scan) -> SolutionStream
{
    GraphGen pattern = GraphGen::standard(GraphGen::Kind::ForestF, k);
    struct State {
        std::map<nat, nat> img; // pattern vertex -> host vertex
        std::set<nat> used;
        std::vector<nat> out, incl;
        nat next = 0; // pattern enumeration index
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    auto level_ok = [h](nat x, nat need) {
        auto l = infinite_level(h, x);
        return ! l || *l >= need;
    };
    // probe the predicate once so unsupported hosts fail up front
    if (auto v = h.vertex_at(0))
        infinite_level(h, *v);

    auto map_vertex = std::make_shared<std::function<nat(nat)>>();
    std::weak_ptr<std::function<nat(nat)>> self = map_vertex;
    *map_vertex = [st, h, k, scan, level_ok, self](nat p) -> nat {
        if (auto it = st->img.find(p); it != st->img.end())
            return it->second;
        auto [c, sc] = unpair(p);
        Str sigma = str_decode(sc);
        nat need = k - std::min<nat>(k, sigma.size());
        std::optional<nat> pick, parent;
        if (sigma.empty()) {
            for (nat i = 0; i < scan && ! pick; ++i) {
                auto x = h.vertex_at(i);
                if (! x)
                    break;
                if (! st->used.count(*x) && level_ok(*x, need))
                    pick = *x;
            }
        }
        else {
            Str up(sigma.begin(), sigma.end() - 1);
            parent = (*self.lock())(pair(c, str_code(up)));
            for (nat want = 16; ! pick && want <= scan; want *= 2) {
                auto ns = h.neighbors(*parent, want);
                for (nat y : ns)
                    if (! st->used.count(y) && level_ok(y, need)) {
                        pick = y;
                        break;
                    }
                if (ns.size() < want)
                    break;
            }
        }
        if (! pick)
            throw Error(Errc::FuelExhausted, "no fresh vertex for the next pattern node");
        st->img[p] = *pick;
        st->used.insert(*pick);
        st->out.push_back(vcode(*pick));
        st->incl.push_back(pair(p, *pick) + 1);
        if (parent) {
            st->out.push_back(ecode(*parent, *pick));
            st->incl.push_back(0);
        }
        return *pick;
    };
    auto produce = [st, pattern, map_vertex](nat k) {
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->out.size() <= k) {
            auto p = pattern.vertex_at(st->next++);
            if (! p)
                throw Error(Errc::BadParam, "pattern enumeration ended");
            (*map_vertex)(*p);
        }
    };
    SolutionStream s;
    s.copy = {Space::EGr, CertifiedStream::generator([st, produce](nat i) {
                  produce(i);
                  std::lock_guard<std::mutex> lock(st->mu);
                  return st->out[i];
              }),
        std::nullopt};
    s.inclusion = CertifiedStream::generator([st, produce](nat i) {
        produce(i);
        std::lock_guard<std::mutex> lock(st->mu);
        return st->incl[i];
    });
    s.stage_of = [](nat) { return nat{0}; };
    return s;
}

// ---------------------------------------------------------------- Cantor

auto cantor_unique_path(const SpaceName& host, const SpaceName& solution, nat max_level) -> CertifiedStream
{
    if (host.space != Space::Gr || solution.space != Space::Gr)
        throw Error(Errc::BadParam, "the level census needs characteristic (Gr) names");
    struct State {
        nat level = 0;
        std::optional<Str> last;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    return CertifiedStream::generator([st, host, solution, max_level](nat) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        for (;; ++st->level) {
            nat n = st->level;
            if (n > max_level)
                throw Error(Errc::FuelExhausted, "no further single-vertex level below the cap");
            std::vector<Str> hit;
            for (nat bits = 0; bits < (nat{1} << n); ++bits) {
                Str s(n);
                for (nat i = 0; i < n; ++i)
                    s[i] = (bits >> (n - 1 - i)) & 1;
                nat c = str_code(s);
                if (solution.stream(pair(c, c)) != 1)
                    continue;
                if (host.stream(pair(c, c)) != 1)
                    throw Error(Errc::CensusUnstable, "solution vertex " + str_format(s) + " is not in the host");
                hit.push_back(s);
            }
            if (hit.size() > 2)
                throw Error(Errc::CensusUnstable, "a ray meets level " + std::to_string(n) + " more than twice");
            if (hit.size() != 1)
                continue;
            if (st->last && ! is_prefix(*st->last, hit[0]))
                throw Error(Errc::CensusUnstable, "single-vertex levels do not line up");
            st->last = hit[0];
            ++st->level;
            return str_code(hit[0]);
        }
    });
}

} // namespace wg
