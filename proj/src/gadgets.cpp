#include <wg/gadgets.hpp>

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>

namespace wg {

namespace {

auto vcode(nat v) -> nat { return pair(v, v); }
auto ecode(nat a, nat b) -> nat { return pair(std::min(a, b), std::max(a, b)); }

// One stage per stream position at most: a position with an empty buffer runs
// the next stage, then emits a buffered code or pads with the first code seen.
auto staged_egr(std::function<std::vector<nat>(nat)> stage) -> CertifiedStream {
    struct St {
        std::deque<nat> buf;
        nat next_stage = 0;
        std::optional<nat> first;
    };
    auto st = std::make_shared<St>();
    return CertifiedStream::generator([st, stage](nat) -> nat {
        if (st->buf.empty()) {
            for (nat c : stage(st->next_stage++))
                st->buf.push_back(c);
        }
        if (st->buf.empty())
            return st->first.value_or(0);
        nat c = st->buf.front();
        st->buf.pop_front();
        if (!st->first)
            st->first = c;
        return c;
    });
}

auto relabel_from(const FinGraph& g, nat base) -> FinGraph {
    FinGraph out;
    std::map<nat, nat> at;
    nat idx = 0;
    for (nat v : g.v) {
        at[v] = base + idx++;
        out.add_vertex(at[v]);
    }
    for (auto [a, b] : g.e)
        out.add_edge(at[a], at[b]);
    return out;
}

auto require_certified(const CertifiedStream& p, const char* who) {
    if (!p.certified())
        throw Error(Errc::CertificateMissing, std::string(who) + " needs a certified input");
}

} // namespace

// ---- sigma1

auto sigma1_gadget(const CertifiedStream& p, const FinGraph& g) -> GadgetOutput {
    GadgetOutput out;
    if (p.certified()) {
        auto s = first_index(p, 1);
        FinGraph h = s ? relabel_from(g, *s + 1) : FinGraph{};
        auto gen = GraphGen::finite(h);
        out.name = name_of(Space::Gr, gen);
        if (s)
            out.hint["first_one"] = *s;
        return out;
    }
    std::vector<nat> vs = g.vertex_list();
    auto step = [p, g, vs](nat c) -> nat {
        auto [i, j] = unpair(c);
        nat m = std::max(i, j);
        std::optional<nat> s;
        for (nat t = 0; t < m; ++t) {
            if (p(t) == 1) {
                s = t;
                break;
            }
        }
        if (!s || i <= *s || j <= *s)
            return 0;
        nat a = i - *s - 1, b = j - *s - 1;
        if (a >= vs.size() || b >= vs.size())
            return 0;
        return a == b || g.has_edge(vs[a], vs[b]) ? 1 : 0;
    };
    out.name = SpaceName{Space::Gr, CertifiedStream::generator(step), std::nullopt};
    return out;
}

// ---- sigma2

namespace {

struct Sigma2Sim {
    FinGraph g;
    FinGraph h;
    nat next = 0;

    auto stage(nat bit) -> std::vector<nat> {
        std::vector<nat> codes;
        if (bit == 0) {
            FinGraph copy = relabel_from(g, next);
            next += g.size();
            for (nat v : copy.v) {
                h.add_vertex(v);
                codes.push_back(vcode(v));
            }
            for (auto [a, b] : copy.e) {
                h.add_edge(a, b);
                codes.push_back(ecode(a, b));
            }
        } else {
            for (nat a : h.v)
                for (nat b : h.v)
                    if (a < b && !h.has_edge(a, b)) {
                        h.add_edge(a, b);
                        codes.push_back(ecode(a, b));
                    }
        }
        return codes;
    }
};

} // namespace

auto sigma2_gadget(const CertifiedStream& p, const FinGraph& g) -> GadgetOutput {
    if (is_complete(g))
        throw Error(Errc::BadParam, "sigma2 needs a graph that is not complete");
    GadgetOutput out;
    if (!p.certified()) {
        auto sim = std::make_shared<Sigma2Sim>();
        sim->g = g;
        out.name = SpaceName{Space::EGr, staged_egr([sim, p](nat s) { return sim->stage(p(s)); }), std::nullopt};
        return out;
    }
    bool zeros = infinitely_often(p, 0), ones = infinitely_often(p, 1);
    nat horizon = p.prefix().size() + (p.kind() == CertifiedStream::Kind::Periodic ? p.period().size() : 1);
    Sigma2Sim sim{g, {}, 0};
    std::vector<nat> codes;
    for (nat s = 0; s < horizon; ++s)
        for (nat c : sim.stage(p(s)))
            codes.push_back(c);
    out.hint["horizon"] = horizon;
    if (!zeros) {
        // the tail is all 1s, so the last stage above has completed the graph
        out.name = egr_from_codes(codes);
        out.name->denotes = GraphGen::finite(sim.h);
        out.hint["complete_size"] = sim.h.size();
        return out;
    }
    auto live = std::make_shared<Sigma2Sim>();
    live->g = g;
    out.name = SpaceName{Space::EGr, staged_egr([live, p](nat s) { return live->stage(p(s)); }), std::nullopt};
    if (ones)
        out.name->denotes = GraphGen::complete_omega();
    else
        out.name->denotes = GraphGen::disjoint_union({GraphGen::finite(sim.h), GraphGen::omega_copies(GraphGen::finite(g))});
    return out;
}

// ---- forests

auto Forest::graph() const -> GraphGen {
    std::vector<GraphGen> pre, per;
    for (const auto& t : prefix)
        pre.push_back(GraphGen::tree_graph(t));
    for (const auto& t : period)
        per.push_back(GraphGen::tree_graph(t));
    if (per.empty())
        return GraphGen::disjoint_union(std::move(pre));
    return GraphGen::family(std::move(pre), std::move(per));
}

auto forests_base(const CertifiedStream& p) -> Forest {
    require_certified(p, "forests_base");
    Forest f;
    auto point = TreeGen::finite({Str{}});
    nat seen = p.prefix().size() + (p.kind() == CertifiedStream::Kind::Periodic ? p.period().size() : 0);
    for (nat n = 0; n < seen; ++n)
        if (p(n) == 0)
            f.prefix.push_back(point);
    f.bit = infinitely_often(p, 0);
    if (f.bit)
        f.period.push_back(point);
    f.k = 0;
    f.bit_t = f.bit || !f.prefix.empty();
    return f;
}

auto forests_base_tree(const CertifiedStream& p) -> TreeGen {
    auto f = forests_base(p);
    std::vector<std::optional<TreeGen>> pre(f.prefix.begin(), f.prefix.end());
    std::vector<std::optional<TreeGen>> per(f.period.begin(), f.period.end());
    return TreeGen::cone(std::move(pre), std::move(per));
}

auto forests_lift(const std::vector<Forest>& prefix, const std::vector<Forest>& period) -> Forest {
    std::optional<nat> k;
    auto lift = [&](const Forest& part) -> TreeGen {
        if (k && *k != part.k)
            throw Error(Errc::BadParam, "forests_lift parts sit at different levels");
        k = part.k;
        for (const auto* ts : {&part.prefix, &part.period})
            for (const auto& t : *ts) {
                auto h = t.height();
                if (!h || *h > part.k)
                    throw Error(Errc::HeightExceeded, "component " + t.describe() + " is too tall for level "
                                                          + std::to_string(part.k));
            }
        std::vector<std::optional<TreeGen>> pre(part.prefix.begin(), part.prefix.end());
        std::vector<std::optional<TreeGen>> per(part.period.begin(), part.period.end());
        return TreeGen::cone(std::move(pre), std::move(per));
    };
    Forest f;
    for (const auto& part : prefix)
        f.prefix.push_back(lift(part));
    for (const auto& part : period)
        f.period.push_back(lift(part));
    f.k = k.value_or(0) + 1;
    auto bit = [](const Forest& x) { return x.bit; };
    f.bit = std::any_of(period.begin(), period.end(), bit);
    f.bit_t = f.bit || std::any_of(prefix.begin(), prefix.end(), bit);
    return f;
}

// ---- complete sets

namespace {

auto random_bits(std::mt19937_64& rng, nat n) -> std::vector<nat> {
    std::vector<nat> out(n);
    for (auto& b : out)
        b = rng() & 1;
    return out;
}

// a binary stream with infinitely many 1s (member) or not
auto level2_row(std::mt19937_64& rng, bool member) -> CertifiedStream {
    auto pre = random_bits(rng, rng() % 5);
    if (!member)
        return CertifiedStream::eventually_constant(std::move(pre), 0);
    auto per = random_bits(rng, 1 + rng() % 3);
    per[rng() % per.size()] = 1;
    return CertifiedStream::periodic(std::move(pre), std::move(per));
}

} // namespace

auto p_complete_generator(nat level, bool membership, nat seed) -> CertifiedStream {
    if (level < 1 || level > 4)
        throw Error(Errc::BadParam, "complete sets are generated for levels 1 to 4");
    std::mt19937_64 rng(seed);
    if (level == 1) {
        if (seed == 0)
            return membership ? CertifiedStream::eventually_constant({0, 1}, 0) : CertifiedStream::constant(0);
        std::vector<nat> pre(rng() % 6, 0);
        if (membership)
            pre.push_back(1);
        for (nat b : random_bits(rng, rng() % 4))
            pre.push_back(membership ? b : 0);
        return CertifiedStream::eventually_constant(std::move(pre), 0);
    }
    if (level == 2) {
        if (seed == 0)
            return membership ? CertifiedStream::periodic({}, {1, 0}) : CertifiedStream::eventually_constant({1, 1}, 0);
        return level2_row(rng, membership);
    }
    // rows n0 -> stream over n1, listed as prefix rows then period rows
    nat npre = rng() % 3, nper = 1 + rng() % 3;
    std::vector<bool> pre_bits(npre), per_bits(nper);
    for (nat i = 0; i < npre; ++i)
        pre_bits[i] = level == 4 ? (rng() & 1) != 0 : false;
    for (nat i = 0; i < nper; ++i)
        per_bits[i] = false;
    if (membership) {
        if (level == 3) {
            nat pick = rng() % (npre + nper);
            (pick < npre ? pre_bits[pick] : per_bits[pick - npre]) = true;
        } else {
            per_bits[rng() % nper] = true;
        }
    }
    auto rows = std::make_shared<std::vector<CertifiedStream>>();
    for (nat i = 0; i < npre; ++i)
        rows->push_back(level2_row(rng, pre_bits[i]));
    for (nat i = 0; i < nper; ++i)
        rows->push_back(level2_row(rng, per_bits[i]));
    return CertifiedStream::generator([rows, npre, nper](nat c) -> nat {
        auto [n0, n1] = unpair(c);
        nat r = n0 < npre ? n0 : npre + (n0 - npre) % nper;
        return (*rows)[r](n1);
    });
}

// ---- ACC_N

auto acc_trace(const CertifiedStream& e) -> AccTrace {
    require_certified(e, "acc_trace");
    AccTrace t;
    auto note = [&](nat stage, nat v) {
        if (v == 0)
            return;
        if (t.removed && *t.removed != v - 1)
            throw Error(Errc::MalformedInstance, "two different numbers removed");
        if (!t.removed) {
            t.removed = v - 1;
            t.removal_stage = stage;
        }
    };
    nat n = e.prefix().size();
    for (nat s = 0; s < n; ++s)
        note(s, e(s));
    if (e.kind() == CertifiedStream::Kind::EventuallyConstant)
        note(n, e.tail());
    else
        for (nat s = 0; s < e.period().size(); ++s)
            note(n + s, e(n + s));
    return t;
}

namespace {

struct AccSim {
    CertifiedStream e;
    nat read = 0;
    std::optional<nat> removed;
    bool rerouted = false;
    nat ray_last = 0;

    auto stage(nat t) -> std::vector<nat> {
        if (t == 0)
            return {vcode(1)};
        for (; read <= t; ++read) {
            nat v = e(read);
            if (v == 0)
                continue;
            if (removed && *removed != v - 1)
                throw Error(Errc::MalformedInstance, "two different numbers removed");
            removed = v - 1;
        }
        std::vector<nat> out;
        auto grow = [&](nat from, nat to) {
            out.push_back(vcode(to));
            out.push_back(ecode(from, to));
        };
        if (rerouted) {
            grow(ray_last, ray_last + 1);
            ++ray_last;
            return out;
        }
        // the path is 1..t so far; a removed 0 leaves it alone
        if (!removed || *removed == 0) {
            grow(t, t + 1);
            return out;
        }
        nat n = *removed;
        for (nat v = t; v < n; ++v)
            grow(v, v + 1);
        out.push_back(vcode(0));
        out.push_back(ecode(n, 0));
        ray_last = std::max(n, t) + 1;
        grow(0, ray_last);
        rerouted = true;
        return out;
    }
};

} // namespace

auto acc_gadget(const CertifiedStream& complement_enum) -> GadgetOutput {
    GadgetOutput out;
    if (complement_enum.certified()) {
        auto t = acc_trace(complement_enum);
        if (t.removed) {
            out.hint["removed"] = *t.removed;
            out.hint["removal_stage"] = *t.removal_stage;
        }
    }
    auto sim = std::make_shared<AccSim>();
    sim->e = complement_enum;
    out.name = SpaceName{Space::EGr, staged_egr([sim](nat s) { return sim->stage(s); }), std::nullopt};
    return out;
}

auto acc_decode(const SpaceName& solution, const AccTrace& trace, nat fuel) -> nat {
    FinGraph r = truncate(solution, fuel);
    if (trace.removed && *trace.removed > 0 && r.has_edge(*trace.removed, 0))
        return *trace.removed + 1;
    for (nat m : r.v) {
        if (m == 0 || (trace.removed && m == *trace.removed))
            continue;
        if (r.has_edge(m, m + 1) && r.has_edge(m + 1, m + 2))
            return m;
    }
    throw Error(Errc::FuelExhausted, "no decodable pattern in the solution within fuel");
}

// ---- lim2 and rays

namespace {

auto lim2_vertex(const CertifiedStream& q, nat v) -> bool {
    if (v == 0)
        return true;
    if (v % 2 == 0)
        return q((v - 2) / 2) == 0;
    return q((v - 1) / 2) == 1;
}

// vertex added at stage s and the one it was joined to
auto lim2_pred(const CertifiedStream& q, nat s) -> nat {
    nat bit = q(s);
    for (nat t = s; t-- > 0;)
        if (q(t) == bit)
            return bit == 0 ? 2 * t + 2 : 2 * t + 1;
    return 0;
}

} // namespace

auto lim2_to_embR(const CertifiedStream& q) -> GadgetOutput {
    GadgetOutput out;
    if (q.certified()) {
        if (q.kind() == CertifiedStream::Kind::Periodic) {
            const auto& per = q.period();
            if (std::adjacent_find(per.begin(), per.end(), std::not_equal_to<>()) != per.end())
                throw Error(Errc::NotConvergent, "q does not converge: " + q.spec());
        }
        out.hint["limit"] = limit(q);
    }
    auto step = [q](nat c) -> nat {
        auto [i, j] = unpair(c);
        if (!lim2_vertex(q, i) || !lim2_vertex(q, j))
            return 0;
        if (i == j)
            return 1;
        auto stage_of = [](nat v) { return v % 2 == 0 ? (v - 2) / 2 : (v - 1) / 2; };
        nat hi = std::max(i, j), lo = std::min(i, j);
        return lim2_pred(q, stage_of(hi)) == lo ? 1 : 0;
    };
    out.name = SpaceName{Space::Gr, CertifiedStream::generator(step), std::nullopt};
    if (q.certified())
        out.name->denotes = GraphGen::ray();
    return out;
}

auto embR_decode(const CertifiedStream& ray) -> nat {
    nat a = ray(0), b = ray(1);
    // through the centre: the far side decides
    if (b == 0)
        return a % 2 == 1 ? 0 : 1;
    if (a < b)
        return b % 2 == 0 ? 0 : 1;
    return b % 2 == 1 ? 0 : 1;
}

// ---- cycles box

namespace {

auto len_p(nat n) -> nat { return 3 * n + 3; }
auto len_f(nat s) -> nat { return 3 * s + 4; }
auto len_g(nat x) -> nat { return 3 * x + 5; }

} // namespace

struct CyclesBox::State {
    std::mutex mu;
    std::vector<Str> sigmas;
    nat scan = 0;
    std::vector<nat> verts;
    nat vscan = 0;
};

CyclesBox::CyclesBox(TreeGen t) : base_(std::move(t)), st_(std::make_shared<State>()) {}

auto CyclesBox::in_wrapped(const Str& s) const -> bool {
    if (s.empty())
        return true;
    return s[0] == 1 && base_.contains(Str(s.begin() + 1, s.end()));
}

auto CyclesBox::sigma(nat s) const -> Str {
    std::lock_guard<std::mutex> lock(st_->mu);
    while (st_->sigmas.size() <= s) {
        Str c = str_decode(st_->scan++);
        if (!in_wrapped(c))
            st_->sigmas.push_back(c);
    }
    return st_->sigmas[s];
}

auto CyclesBox::dock_of(nat s, nat n) const -> std::optional<Dock> {
    Str sg = sigma(s);
    if (n >= sg.size())
        return std::nullopt;
    nat i = sg[n], k = 1;
    for (nat t = 0; t < s; ++t) {
        Str o = sigma(t);
        if (n < o.size() && o[n] == i)
            ++k;
    }
    return Dock{n, i, k};
}

auto CyclesBox::stage_log(nat s) const -> std::vector<Dock> {
    std::vector<Dock> out;
    for (nat n = 0; n < sigma(s).size(); ++n)
        out.push_back(*dock_of(s, n));
    return out;
}

// tag in the residue mod 3; G packs the copy bit under the position
auto CyclesBox::code(const Vertex& v) -> nat {
    nat inner = v.tag == Tag::G ? pair(v.a, add_checked(mul_checked(v.pos, 2), v.b)) : pair(pair(v.a, v.b), v.pos);
    return add_checked(mul_checked(inner, 3), static_cast<nat>(v.tag));
}

auto CyclesBox::decode(nat c) -> std::optional<Vertex> {
    auto tag = static_cast<Tag>(c % 3);
    auto [x, y] = unpair(c / 3);
    if (tag == Tag::G)
        return Vertex{tag, x, y % 2, y / 2};
    auto [a, b] = unpair(x);
    return Vertex{tag, a, b, y};
}

// codes around the cycle a vertex is listed under, shared vertices resolved
auto CyclesBox::cycle(const Vertex& v) const -> std::vector<nat> {
    std::vector<nat> out;
    switch (v.tag) {
    case Tag::P:
        for (nat p = 0; p < len_p(v.a); ++p)
            out.push_back(code({Tag::P, v.a, v.b, p}));
        break;
    case Tag::G: {
        nat len = len_g(v.a);
        for (nat p = 0; p < len; ++p)
            out.push_back(code({Tag::G, v.a, v.b, p}));
        if (v.b == 1) {
            auto [n, ik] = unpair(v.a);
            auto [i, k] = unpair(ik);
            out[0] = k == 0 ? code({Tag::P, n, i, 0}) : code({Tag::G, triple(n, i, k - 1), 0, 0});
        }
        break;
    }
    case Tag::F: {
        for (nat p = 0; p < len_f(v.a); ++p)
            out.push_back(code({Tag::F, v.a, v.b, p}));
        auto d = dock_of(v.a, v.b);
        nat x = triple(d->n, d->i, d->k);
        out[0] = code({Tag::G, x, 0, len_g(x) / 2});
        break;
    }
    }
    return out;
}

auto CyclesBox::has_vertex(nat c) const -> bool {
    auto v = decode(c);
    if (!v)
        return false;
    switch (v->tag) {
    case Tag::P: return v->pos < len_p(v->a);
    case Tag::G: return v->b <= 1 && v->pos < len_g(v->a) && (v->b == 0 || v->pos > 0);
    case Tag::F: return v->pos > 0 && v->pos < len_f(v->a) && v->b < sigma(v->a).size();
    }
    return false;
}

auto CyclesBox::has_edge(nat a, nat b) const -> bool {
    if (a == b || !has_vertex(a) || !has_vertex(b))
        return false;
    auto near = [this](nat u, nat w) {
        auto cyc = cycle(*decode(u));
        auto it = std::find(cyc.begin(), cyc.end(), u);
        if (it == cyc.end())
            return false;
        std::size_t i = it - cyc.begin(), n = cyc.size();
        return cyc[(i + 1) % n] == w || cyc[(i + n - 1) % n] == w;
    };
    return near(a, b) || near(b, a);
}

auto CyclesBox::graph() const -> GraphGen {
    CustomGraph c;
    c.name = "cycles-box";
    auto self = std::make_shared<CyclesBox>(*this);
    c.has_vertex = [self](nat v) { return self->has_vertex(v); };
    c.has_edge = [self](nat a, nat b) { return self->has_edge(a, b); };
    c.vertex_at = [self](nat k) -> std::optional<nat> {
        auto& st = *self->st_;
        for (;;) {
            {
                std::lock_guard<std::mutex> lock(st.mu);
                if (st.verts.size() > k)
                    return st.verts[k];
            }
            nat v;
            {
                std::lock_guard<std::mutex> lock(st.mu);
                v = st.vscan++;
            }
            if (self->has_vertex(v)) {
                std::lock_guard<std::mutex> lock(st.mu);
                st.verts.push_back(v);
            }
        }
    };
    c.finiteness = Finiteness::Infinite;
    return GraphGen::custom(std::move(c));
}

auto CyclesBox::canonical_solution(const Str& q, nat depth, nat gx, nat fs) const -> std::set<nat> {
    auto need = [&](nat n) {
        if (n >= q.size())
            throw Error(Errc::BadParam, "path prefix too short for the requested solution");
        return q[n];
    };
    std::set<nat> out;
    auto add = [&](const Vertex& v) {
        for (nat c : cycle(v))
            out.insert(c);
    };
    for (nat n = 0; n < depth; ++n)
        add({Tag::P, n, need(n), 0});
    for (nat x = 0; x < gx; ++x) {
        auto [n, ik] = unpair(x);
        nat i = unpair(ik).first;
        add({Tag::G, x, need(n) == i ? nat{0} : nat{1}, 0});
    }
    for (nat s = 0; s < fs; ++s) {
        Str sg = sigma(s);
        nat m = 0;
        while (m < sg.size() && need(m) == sg[m])
            ++m;
        if (m == sg.size())
            throw Error(Errc::BadParam, "q runs through a string outside the tree");
        add({Tag::F, s, m, 1});
    }
    return out;
}

auto cycles_box_decode(const std::set<nat>& solution) -> Str {
    std::map<nat, nat> pick;
    for (nat c : solution) {
        auto v = CyclesBox::decode(c);
        if (v && v->tag == CyclesBox::Tag::P)
            pick[v->a] = v->b;
    }
    Str q;
    for (nat n = 0; pick.count(n); ++n)
        q.push_back(pick[n]);
    if (!q.empty())
        q.erase(q.begin()); // the wrapper's leading 1
    return q;
}

// ---- EnumInf

namespace {

auto prime_at(nat i) -> nat {
    static std::mutex mu;
    static std::vector<nat> ps{2};
    std::lock_guard<std::mutex> lock(mu);
    for (nat c = ps.back() + 1; ps.size() <= i; ++c) {
        bool ok = true;
        for (nat p : ps) {
            if (p * p > c)
                break;
            if (c % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok)
            ps.push_back(c);
    }
    return ps[i];
}

} // namespace

auto lambda_of(const PiSet& a, nat m) -> nat {
    if (a.level == 1) {
        auto r = a.row(m);
        auto i = first_index(r, 1);
        return i ? *i + 1 : 0;
    }
    if (a.level != 2)
        throw Error(Errc::BadParam, "EnumInf sets are given at levels 1 and 2");
    auto [pre, per] = a.cells(m);
    nat i = 0;
    for (const auto* xs : {&pre, &per})
        for (const auto& c : *xs) {
            if (!exists_one(c, 1))
                return i + 1;
            ++i;
        }
    return 0;
}

auto enuminf_encode(const PiSet& a) -> std::function<Big(nat)> {
    struct St {
        std::mutex mu;
        std::vector<Big> prods;
    };
    auto st = std::make_shared<St>();
    return [st, a](nat k) -> Big {
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->prods.size() <= k) {
            nat i = st->prods.size();
            Big b = st->prods.empty() ? Big(1) : st->prods.back();
            nat e = lambda_of(a, i) + 1;
            for (nat t = 0; t < e; ++t)
                b *= prime_at(i);
            st->prods.push_back(b);
        }
        return st->prods[k];
    };
}

auto enuminf_factor(const Big& b) -> std::vector<nat> {
    if (b < 2)
        throw Error(Errc::NotInB, "B has no element below 2");
    std::vector<nat> out;
    Big r = b;
    for (nat i = 0; r > 1; ++i) {
        nat p = prime_at(i), e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (e == 0)
            throw Error(Errc::NotInB, "gap at prime " + std::to_string(p) + " in " + b.str());
        out.push_back(e - 1);
    }
    return out;
}

auto enuminf_decode(std::function<Big(nat)> enumeration) -> CertifiedStream {
    struct St {
        std::vector<nat> lambda;
        nat next = 0;
    };
    auto st = std::make_shared<St>();
    constexpr nat kCap = nat{1} << 16;
    return CertifiedStream::generator([st, enumeration](nat i) -> nat {
        while (st->lambda.size() <= i) {
            if (st->next >= kCap)
                throw Error(Errc::FuelExhausted, "enumeration never reached index " + std::to_string(i));
            auto ls = enuminf_factor(enumeration(st->next++));
            if (ls.size() > st->lambda.size()) {
                for (nat j = 0; j < st->lambda.size(); ++j)
                    if (ls[j] != st->lambda[j])
                        throw Error(Errc::NotInB, "elements disagree on exponent " + std::to_string(j));
                st->lambda = ls;
            }
        }
        return st->lambda[i] == 0 ? 1 : 0;
    });
}

// ---- Sigma^1_1 choice

auto sigma11_choice_gadget(const std::vector<TreeGen>& trees) -> GadgetOutput {
    std::optional<nat> first;
    std::vector<GraphGen> parts;
    for (nat i = 0; i < trees.size(); ++i) {
        if (!first && trees[i].path_certificate())
            first = i;
        parts.push_back(GraphGen::tree_graph(trees[i]));
    }
    if (!first)
        throw Error(Errc::NoIllFoundedCertificate, "no tree carries a path certificate");
    GadgetOutput out;
    out.graph = GraphGen::disjoint_union(std::move(parts));
    out.hint["ill_founded"] = *first;
    return out;
}

auto choice_decode(nat vertex) -> nat { return unpair(vertex).first; }

} // namespace wg
