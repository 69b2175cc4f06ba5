#include <wg/spaces.hpp>

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>
#include <unordered_map>

namespace wg {

auto space_name(Space s) -> const char* {
    switch (s) {
    case Space::Gr: return "Gr";
    case Space::EGr: return "EGr";
    case Space::Tr: return "Tr";
    case Space::Tr2: return "Tr2";
    }
    return "?";
}

namespace {

constexpr nat kScanCap = nat{1} << 24;
constexpr nat kEcLimit = nat{1} << 20;

auto validate_gr(const std::vector<nat>& p) -> std::optional<Violation> {
    std::set<nat> needed; // vertices some earlier edge requires
    for (nat k = 0; k < p.size(); ++k) {
        if (p[k] > 1)
            return Violation{k, "binary"};
        auto [i, j] = unpair(k);
        if (p[k] == 1) {
            if (i == j)
                continue;
            for (nat x : {i, j}) {
                nat c = pair(x, x);
                if (c < k && p[c] == 0)
                    return Violation{k, "edge-needs-vertex"};
                if (c > k)
                    needed.insert(x);
            }
            nat mirror = pair(j, i);
            if (mirror < k && p[mirror] == 0)
                return Violation{k, "symmetry"};
        } else {
            if (i == j) {
                if (needed.count(i))
                    return Violation{k, "edge-needs-vertex"};
            } else {
                nat mirror = pair(j, i);
                if (mirror < k && p[mirror] == 1)
                    return Violation{k, "symmetry"};
            }
        }
    }
    return std::nullopt;
}

auto validate_egr(const std::vector<nat>& q) -> std::optional<Violation> {
    std::set<nat> seen;
    for (nat k = 0; k < q.size(); ++k) {
        auto [i, j] = unpair(q[k]);
        if (i == j) {
            seen.insert(i);
        } else if (!seen.count(i) || !seen.count(j)) {
            return Violation{k, "edge-before-vertices"};
        }
    }
    return std::nullopt;
}

auto parent_code(nat c) -> std::optional<nat> {
    if (c == 0)
        return std::nullopt;
    Str s = str_decode(c);
    s.pop_back();
    return str_code(s);
}

auto validate_tree(const std::vector<nat>& p, bool binary) -> std::optional<Violation> {
    std::set<nat> needed;
    for (nat k = 0; k < p.size(); ++k) {
        if (p[k] > 1)
            return Violation{k, "binary"};
        if (p[k] == 1) {
            if (binary) {
                Str s = str_decode(k);
                if (std::any_of(s.begin(), s.end(), [](nat x) { return x > 1; }))
                    return Violation{k, "binary-tree"};
            }
            if (auto par = parent_code(k)) {
                if (*par < k && p[*par] == 0)
                    return Violation{k, "prefix-closed"};
                if (*par > k)
                    needed.insert(*par);
            }
        } else if (needed.count(k)) {
            return Violation{k, "prefix-closed"};
        }
    }
    return std::nullopt;
}

auto max_code(const FinGraph& g) -> nat {
    nat m = 0;
    for (nat v : g.v)
        m = std::max(m, pair(v, v));
    for (auto [a, b] : g.e)
        m = std::max({m, pair(a, b), pair(b, a)});
    return m;
}

auto gr_ec(const FinGraph& g) -> CertifiedStream {
    if (g.v.empty())
        return CertifiedStream::constant(0);
    std::vector<nat> pre(max_code(g) + 1, 0);
    for (nat v : g.v)
        pre[pair(v, v)] = 1;
    for (auto [a, b] : g.e)
        pre[pair(a, b)] = pre[pair(b, a)] = 1;
    return CertifiedStream::eventually_constant(std::move(pre), 0);
}

// codes of a finite graph in diagonal order, vertices just in time
auto diagonal_codes(const FinGraph& g) -> std::vector<nat> {
    std::vector<nat> items;
    for (nat v : g.v)
        items.push_back(pair(v, v));
    for (auto [a, b] : g.e)
        items.push_back(pair(a, b));
    std::sort(items.begin(), items.end());
    std::vector<nat> out;
    std::set<nat> done;
    for (nat c : items) {
        auto [i, j] = unpair(c);
        for (nat x : {i, j}) {
            if (done.insert(x).second)
                out.push_back(pair(x, x));
        }
        if (i != j)
            out.push_back(c);
    }
    return out;
}

// random vertex order; each edge lands at a random slot after both endpoints
auto shuffled_codes(const FinGraph& g, nat seed, nat stutter) -> std::vector<nat> {
    std::mt19937_64 rng(seed);
    std::vector<nat> vs(g.v.begin(), g.v.end());
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<Edge> es(g.e.begin(), g.e.end());
    std::shuffle(es.begin(), es.end(), rng);
    std::map<nat, std::size_t> pos;
    for (std::size_t i = 0; i < vs.size(); ++i)
        pos[vs[i]] = i;
    // slot t holds edges released right after vertex t
    std::vector<std::vector<nat>> slot(vs.size());
    for (auto [a, b] : es) {
        std::size_t lo = std::max(pos[a], pos[b]);
        std::uniform_int_distribution<std::size_t> d(lo, vs.size() - 1);
        bool flip = rng() & 1;
        slot[d(rng)].push_back(flip ? pair(b, a) : pair(a, b));
    }
    std::vector<nat> out;
    auto maybe_stutter = [&] {
        if (stutter == 0 || out.empty())
            return;
        while (rng() % 100 < stutter) {
            std::uniform_int_distribution<std::size_t> d(0, out.size() - 1);
            out.push_back(out[d(rng)]);
        }
    };
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out.push_back(pair(vs[i], vs[i]));
        maybe_stutter();
        for (nat c : slot[i]) {
            out.push_back(c);
            maybe_stutter();
        }
    }
    return out;
}

auto small_finite(const GraphGen& g) -> std::optional<FinGraph> {
    if (g.finiteness() != Finiteness::Finite)
        return std::nullopt;
    auto n = g.size();
    if (!n || *n > 4096)
        return std::nullopt;
    FinGraph f = g.materialize();
    if (!f.v.empty() && max_code(f) > kEcLimit)
        return std::nullopt;
    return f;
}

// Lazy EGr enumeration: `refill` pushes zero or more codes; after `pad_scan`
// empty refills in a row the position becomes a padding tick, once something
// has been emitted.
struct Enumerator {
    std::function<void(std::deque<nat>&)> refill;
    nat pad_scan = 0;
    std::deque<nat> queue;
    bool any = false;
    nat first = 0;
    nat idle = 0;

    auto next() -> nat {
        nat scanned = 0;
        while (queue.empty()) {
            refill(queue);
            if (queue.empty()) {
                if (any && scanned++ >= pad_scan) {
                    queue.push_back(first);
                } else if (!any && ++idle > kScanCap) {
                    throw Error(Errc::FuelExhausted, "no code found before the scan cap");
                }
            }
        }
        nat c = queue.front();
        queue.pop_front();
        if (!any) {
            any = true;
            first = c;
        }
        return c;
    }
};

auto enumerator_stream(std::shared_ptr<Enumerator> e) -> CertifiedStream {
    return CertifiedStream::generator([e](nat) { return e->next(); });
}

struct DiagonalSource {
    std::function<bool(nat)> vertex;
    std::function<bool(nat, nat)> edge;
    nat next = 0;
    std::set<nat> vs;
    std::set<Edge> es;

    void step(std::vector<nat>& out) {
        nat c = next++;
        auto [i, j] = unpair(c);
        if (i == j) {
            if (!vs.count(i) && vertex(i)) {
                vs.insert(i);
                out.push_back(c);
            }
            return;
        }
        if (es.count(edge_key(i, j)) || !edge(i, j))
            return;
        for (nat x : {i, j}) {
            if (vs.insert(x).second)
                out.push_back(pair(x, x));
        }
        es.insert(edge_key(i, j));
        out.push_back(c);
    }
};

auto egr_generator(std::function<bool(nat)> vertex, std::function<bool(nat, nat)> edge, Schedule sch)
    -> CertifiedStream {
    auto src = std::make_shared<DiagonalSource>();
    src->vertex = std::move(vertex);
    src->edge = std::move(edge);
    auto e = std::make_shared<Enumerator>();
    if (sch.kind == Schedule::Kind::Diagonal) {
        // absent codes are skipped rather than padded, up to a bounded scan
        e->pad_scan = 1024;
        e->refill = [src](std::deque<nat>& q) {
            std::vector<nat> out;
            src->step(out);
            q.insert(q.end(), out.begin(), out.end());
        };
    } else {
        // blocks of diagonal codes, each shuffled with vertices kept ahead of edges
        auto rng = std::make_shared<std::mt19937_64>(sch.seed);
        nat stutter = sch.stutter_percent;
        e->refill = [src, rng, stutter, e_raw = e.get()](std::deque<nat>& q) {
            std::vector<nat> out;
            for (int k = 0; k < 16; ++k)
                src->step(out);
            std::vector<nat> verts, edges;
            for (nat c : out) {
                auto [i, j] = unpair(c);
                (i == j ? verts : edges).push_back(c);
            }
            std::shuffle(verts.begin(), verts.end(), *rng);
            std::shuffle(edges.begin(), edges.end(), *rng);
            std::vector<nat> seq = verts;
            seq.insert(seq.end(), edges.begin(), edges.end());
            for (nat c : seq) {
                q.push_back(c);
                if (stutter && (e_raw->any || !q.empty()) && (*rng)() % 100 < stutter)
                    q.push_back(q.front());
            }
        };
    }
    return enumerator_stream(e);
}

} // namespace

auto validate_prefix(Space space, const std::vector<nat>& prefix) -> std::optional<Violation> {
    switch (space) {
    case Space::Gr: return validate_gr(prefix);
    case Space::EGr: return validate_egr(prefix);
    case Space::Tr: return validate_tree(prefix, false);
    case Space::Tr2: return validate_tree(prefix, true);
    }
    return std::nullopt;
}

auto validate_name(const SpaceName& name, nat n) -> std::optional<Violation> {
    return validate_prefix(name.space, name.stream.take(n));
}

auto egr_from_codes(const std::vector<nat>& codes) -> SpaceName {
    if (codes.empty())
        return {Space::EGr, CertifiedStream::constant(0), std::nullopt};
    return {Space::EGr, CertifiedStream::eventually_constant(codes, codes.front()), std::nullopt};
}

namespace {

auto name_of_unmarked(Space space, const GraphGen& g, Schedule schedule) -> SpaceName {
    if (space != Space::Gr && space != Space::EGr)
        throw Error(Errc::BadParam, "name_of builds Gr or EGr names");
    auto fin = small_finite(g);
    if (space == Space::Gr) {
        if (g.kind() == GraphGen::Kind::FromGrName)
            return {Space::Gr, g.gr_stream(), g};
        if (g.kind() == GraphGen::Kind::CompleteOmega)
            return {Space::Gr, CertifiedStream::constant(1), g};
        if (fin)
            return {Space::Gr, gr_ec(*fin), g};
        return {Space::Gr, CertifiedStream::pointwise([g](nat c) -> nat {
                    auto [i, j] = unpair(c);
                    if (i == j)
                        return g.has_vertex(i) ? 1 : 0;
                    return g.has_vertex(i) && g.has_vertex(j) && g.has_edge(i, j) ? 1 : 0;
                }),
                g};
    }
    if (fin) {
        if (fin->v.size() == 1 && fin->has_vertex(0))
            throw Error(Errc::BadParam, "the one-vertex graph on {0} shares its EGr name with the empty graph");
        auto codes = schedule.kind == Schedule::Kind::Diagonal
                         ? diagonal_codes(*fin)
                         : shuffled_codes(*fin, schedule.seed, schedule.stutter_percent);
        auto out = egr_from_codes(codes);
        out.denotes = g;
        return out;
    }
    auto s = egr_generator([g](nat v) { return g.has_vertex(v); },
                           [g](nat a, nat b) { return g.has_vertex(a) && g.has_vertex(b) && g.has_edge(a, b); },
                           schedule);
    return {Space::EGr, s, g};
}

} // namespace

auto name_of(Space space, const GraphGen& g, Schedule schedule) -> SpaceName {
    auto out = name_of_unmarked(space, g, schedule);
    out.literal = true;
    return out;
}

auto EgrCursor::next() -> std::vector<nat> {
    nat c = q_(pos_++);
    if (seen_nonzero_)
        return {c};
    if (c == 0) {
        held_zero_ = true;
        return {};
    }
    seen_nonzero_ = true;
    if (held_zero_)
        return {0, c};
    return {c};
}

auto egr_exhaustion_point(const CertifiedStream& q) -> std::optional<nat> {
    switch (q.kind()) {
    case CertifiedStream::Kind::EventuallyConstant: return q.prefix().size() + 1;
    case CertifiedStream::Kind::Periodic: return q.prefix().size() + q.period().size();
    case CertifiedStream::Kind::Generator: return std::nullopt;
    }
    return std::nullopt;
}

auto truncate(const SpaceName& name, nat fuel) -> FinGraph {
    FinGraph g;
    switch (name.space) {
    case Space::Gr: {
        std::vector<Edge> es;
        for (nat c = 0; c < fuel; ++c) {
            if (name.stream(c) != 1)
                continue;
            auto [i, j] = unpair(c);
            if (i == j)
                g.add_vertex(i);
            else
                es.push_back({i, j});
        }
        for (auto [a, b] : es) {
            if (g.has_vertex(a) && g.has_vertex(b))
                g.add_edge(a, b);
        }
        return g;
    }
    case Space::EGr: {
        EgrCursor cur(name.stream);
        for (nat k = 0; k < fuel; ++k) {
            for (nat c : cur.next()) {
                auto [i, j] = unpair(c);
                g.add_vertex(i);
                g.add_vertex(j);
                if (i != j)
                    g.add_edge(i, j);
            }
        }
        return g;
    }
    case Space::Tr:
    case Space::Tr2: {
        // tree nodes by code, joined to their parents
        for (nat c = 0; c < fuel; ++c) {
            if (name.stream(c) != 1)
                continue;
            g.add_vertex(c);
            if (auto par = parent_code(c); par && g.has_vertex(*par))
                g.add_edge(*par, c);
        }
        return g;
    }
    }
    return g;
}

auto gr_to_egr(const SpaceName& name) -> SpaceName {
    if (name.space != Space::Gr)
        throw Error(Errc::BadParam, "gr_to_egr expects a Gr name");
    const auto& p = name.stream;
    if (p.kind() == CertifiedStream::Kind::EventuallyConstant && p.tail() == 0 && p.prefix().size() <= kEcLimit) {
        auto out = egr_from_codes(diagonal_codes(truncate(name, p.prefix().size())));
        out.denotes = name.denotes;
        out.literal = name.literal;
        return out;
    }
    struct Scan {
        CertifiedStream p = CertifiedStream::constant(0);
        nat next = 0;
        std::set<nat> vs;
        std::set<Edge> es;
    };
    auto st = std::make_shared<Scan>();
    st->p = p;
    auto e = std::make_shared<Enumerator>();
    e->refill = [st](std::deque<nat>& q) {
        nat c = st->next++;
        if (st->p(c) != 1)
            return;
        auto [i, j] = unpair(c);
        if (i != j && !st->es.insert(edge_key(i, j)).second)
            return;
        for (nat x : {i, j}) {
            if (st->vs.insert(x).second)
                q.push_back(pair(x, x));
        }
        if (i != j)
            q.push_back(c);
    };
    return {Space::EGr, enumerator_stream(e), name.denotes, name.literal};
}

// ---------------------------------------------------------------------------
// F: EGr -> Gr

struct FState {
    std::mutex mu;
    EgrCursor cur;
    nat stages = 1; // stage 0 does nothing
    std::map<nat, nat> iota;
    std::set<nat> range;
    std::unordered_map<nat, bool> ones;
    std::optional<nat> erased;
    IotaTrace trace;

    explicit FState(CertifiedStream q) : cur(std::move(q)) { trace.iota.emplace_back(); }

    auto cell(nat i, nat j) const -> int { // 1, 0, or -1 for undecided
        if (ones.count(pair(i, j)))
            return 1;
        if (erased && std::max(i, j) <= *erased)
            return 0;
        return -1;
    }

    void set(nat s, nat i, nat j) {
        ones[pair(i, j)] = true;
        ones[pair(j, i)] = true;
        trace.sets.push_back({s, i, j});
    }

    auto fresh(nat s) const -> nat {
        nat m = s + 1;
        while (range.count(m))
            ++m;
        return m;
    }

    void place(nat s, nat v, nat m) {
        iota[v] = m;
        range.insert(m);
        ones[pair(m, m)] = true;
        trace.sets.push_back({s + 1, m, m});
    }

    void process(nat s, nat code, nat pos) {
        auto [u, v] = unpair(code);
        if (u == v) {
            if (!iota.count(u)) { // Case 1
                trace.first_seen[u] = pos;
                place(s, u, fresh(s));
            }
            return; // Case 2 otherwise
        }
        if (!iota.count(u) || !iota.count(v))
            throw Error(Errc::MalformedInstance, "edge enumerated before its vertices");
        trace.input_edges[u].insert(v);
        trace.input_edges[v].insert(u);
        nat a = iota[u], b = iota[v];
        int x = cell(a, b), y = cell(b, a);
        if (x == 1 && y == 1)
            return;                              // (a)
        if (x != 0 && y != 0) {                  // (b), (c)
            set(s + 1, a, b);
            return;
        }
        // (d): injure the vertex enumerated later
        nat hurt = trace.first_seen[u] < trace.first_seen[v] ? v : u;
        nat old = iota[hurt];
        range.erase(old);
        nat m = fresh(s);
        place(s, hurt, m);
        trace.abandoned[old] = s + 1;
        trace.injuries.push_back({s + 1, hurt, old, m});
        for (nat w : trace.input_edges[hurt])
            set(s + 1, m, iota.at(w));
    }

    void stage() {
        nat s = stages - 1;             // this is stage s+1, reading q(s)
        nat pos = cur.position();
        auto codes = cur.next();
        for (std::size_t k = 0; k < codes.size(); ++k)
            process(s, codes[k], codes.size() == 2 && k == 0 ? 0 : pos);
        erased = s;
        ++stages;
        trace.iota.push_back(iota);
    }

    auto value(nat c) -> nat {
        auto [i, j] = unpair(c);
        for (;;) {
            int x = cell(i, j);
            if (x >= 0)
                return static_cast<nat>(x);
            stage();
        }
    }
};

void FConvert::run_to(nat stage) const {
    std::lock_guard lock(state->mu);
    while (state->stages <= stage)
        state->stage();
}

auto FConvert::trace() const -> IotaTrace {
    std::lock_guard lock(state->mu);
    return state->trace;
}

auto FConvert::stages() const -> nat {
    std::lock_guard lock(state->mu);
    return state->stages;
}

auto f_convert(const SpaceName& q) -> FConvert {
    if (q.space != Space::EGr)
        throw Error(Errc::BadParam, "f_convert expects an EGr name");
    auto st = std::make_shared<FState>(q.stream);
    auto p = CertifiedStream::generator([st](nat c) {
        std::lock_guard lock(st->mu);
        return st->value(c);
    });
    return FConvert{{Space::Gr, p, std::nullopt}, st};
}

} // namespace wg
