#include <wg/decide.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace wg {

auto verdict_name(Verdict::Kind k) -> const char* {
    switch (k) {
    case Verdict::Kind::Found: return "Found";
    case Verdict::Kind::Refuted: return "Refuted";
    case Verdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

auto embedding_valid(const FinGraph& g, const FinGraph& h, const Embedding& f, bool induced) -> bool {
    if (f.size() != g.size())
        return false;
    std::map<nat, nat> m;
    std::set<nat> used;
    for (auto [a, b] : f) {
        if (!g.has_vertex(a) || !h.has_vertex(b) || !used.insert(b).second || !m.emplace(a, b).second)
            return false;
    }
    for (auto [a, b] : m)
        for (auto [c, d] : m) {
            if (a >= c)
                continue;
            bool ge = g.has_edge(a, c), he = h.has_edge(b, d);
            if (ge && !he)
                return false;
            if (induced && he && !ge)
                return false;
        }
    return true;
}

auto fin_subgraph(const FinGraph& g, const FinGraph& h, bool induced) -> std::optional<Embedding> {
    std::vector<nat> gv = g.vertex_list(), hv = h.vertex_list();
    if (gv.size() > hv.size())
        return std::nullopt;
    std::map<nat, std::vector<nat>> adj;
    for (auto [a, b] : h.e) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& [x, ns] : adj)
        std::sort(ns.begin(), ns.end());
    auto hdeg = [&](nat x) -> nat {
        auto it = adj.find(x);
        return it == adj.end() ? 0 : it->second.size();
    };
    std::vector<nat> gdeg(gv.size());
    // an earlier pattern neighbour, whose image's neighbours are the only candidates
    std::vector<std::optional<std::size_t>> anchor(gv.size());
    for (std::size_t i = 0; i < gv.size(); ++i) {
        gdeg[i] = g.degree(gv[i]);
        for (std::size_t j = 0; j < i && !anchor[i]; ++j)
            if (g.has_edge(gv[i], gv[j]))
                anchor[i] = j;
    }
    static const std::vector<nat> none;
    std::vector<nat> img(gv.size());
    std::set<nat> used;
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == gv.size())
            return true;
        const std::vector<nat>* cands = &hv;
        if (anchor[i]) {
            auto it = adj.find(img[*anchor[i]]);
            cands = it == adj.end() ? &none : &it->second;
        }
        for (nat x : *cands) {
            if (used.count(x) || hdeg(x) < gdeg[i])
                continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                bool ge = g.has_edge(gv[i], gv[j]), he = h.has_edge(x, img[j]);
                ok = induced ? ge == he : (!ge || he);
            }
            if (!ok)
                continue;
            img[i] = x;
            used.insert(x);
            if (go(i + 1))
                return true;
            used.erase(x);
        }
        return false;
    };
    if (!go(0))
        return std::nullopt;
    Embedding out;
    for (std::size_t i = 0; i < gv.size(); ++i)
        out.emplace_back(gv[i], img[i]);
    return out;
}

namespace {

// whole graph when the stream certificate shows nothing more can arrive
auto exhausted_host(const SpaceName& h, nat fuel) -> std::optional<FinGraph> {
    const auto& s = h.stream;
    if (h.space == Space::EGr) {
        auto end = egr_exhaustion_point(s);
        if (end && *end <= fuel)
            return truncate(h, *end);
        return std::nullopt;
    }
    if (h.space == Space::Gr && s.kind() == CertifiedStream::Kind::EventuallyConstant && s.tail() == 0
        && s.prefix().size() <= fuel)
        return truncate(h, s.prefix().size());
    return std::nullopt;
}

auto card_add(Degree a, Degree b) -> Degree {
    if (a.omega || b.omega)
        return Degree::inf();
    return Degree::of(add_checked(a.n, b.n));
}

auto card_omega_times(Degree a) -> Degree { return a.omega || a.n > 0 ? Degree::inf() : Degree::of(0); }

auto positive(Degree a) -> bool { return a.omega || a.n > 0; }

struct TreeProfile {
    std::vector<bool> root;     // root[j]: chain of length k - j starts at the root
    std::vector<Degree> count;  // vertices starting such a chain
};

auto unsupported(const std::string& what) -> Error { return Error(Errc::PredicateUnsupported, what); }

// every vertex of a locally finite graph starts only the trivial chain
auto locally_finite_counts(Degree size, nat k) -> std::vector<Degree> {
    std::vector<Degree> c(k + 1, Degree::of(0));
    c[k] = size;
    return c;
}

auto tree_profile(const TreeGen& t, nat k) -> TreeProfile {
    TreeProfile p{std::vector<bool>(k + 1, false), std::vector<Degree>(k + 1, Degree::of(0))};
    p.root[k] = true;
    switch (t.kind()) {
    case TreeGen::Kind::Finite:
        p.count[k] = Degree::of(t.finite_nodes().size());
        return p;
    case TreeGen::Kind::FullBinary:
    case TreeGen::Kind::SinglePath:
        p.count[k] = Degree::inf();
        return p;
    case TreeGen::Kind::DisjointUnion:
    case TreeGen::Kind::Cone: {
        std::vector<TreeProfile> pre, per;
        if (t.kind() == TreeGen::Kind::DisjointUnion) {
            for (const auto& c : t.parts())
                pre.push_back(tree_profile(c, k));
        } else {
            for (const auto& c : t.cone_prefix())
                if (c)
                    pre.push_back(tree_profile(*c, k));
            for (const auto& c : t.cone_period())
                if (c)
                    per.push_back(tree_profile(*c, k));
        }
        for (nat j = 0; j < k; ++j)
            p.root[j] = std::any_of(per.begin(), per.end(), [&](const TreeProfile& x) { return x.root[j + 1]; });
        for (nat j = 0; j <= k; ++j) {
            Degree c = Degree::of(p.root[j] ? 1 : 0);
            for (const auto& x : pre)
                c = card_add(c, x.count[j]);
            for (const auto& x : per)
                c = card_add(c, card_omega_times(x.count[j]));
            p.count[j] = c;
        }
        return p;
    }
    case TreeGen::Kind::LevelRule:
        if (t.rule().finitely_branching) {
            auto f = t.finiteness();
            if (f == Finiteness::Finite) {
                p.count[k] = Degree::of(t.nodes_to_depth(*t.rule().depth_bound, ~nat{0}).size());
                return p;
            }
            if (f == Finiteness::Infinite) {
                p.count[k] = Degree::inf();
                return p;
            }
        }
        throw unsupported("level rule " + t.rule().name + " has no structural chain profile");
    case TreeGen::Kind::Union: throw unsupported("tree union has no structural chain profile");
    }
    throw unsupported("tree kind");
}

// T_{2h+1}: every node below depth h has infinitely many children
auto tree_t_counts(nat h, nat k) -> std::vector<Degree> {
    std::vector<Degree> c(k + 1);
    for (nat j = 0; j <= k; ++j) {
        nat need = k - j;
        if (h >= 1 && h - 1 >= need)
            c[j] = Degree::inf();
        else if (need <= h)
            c[j] = Degree::of(1);
        else
            c[j] = Degree::of(0);
    }
    return c;
}

} // namespace

auto chain_counts(const GraphGen& h, nat k) -> std::vector<Degree> {
    using K = GraphGen::Kind;
    switch (h.kind()) {
    case K::Finite:
    case K::RayN:
    case K::CycleN:
    case K::CompleteN: return locally_finite_counts(Degree::of(*h.size()), k);
    case K::Ray:
    case K::TwoWayRay:
    case K::FullBinaryTree: return locally_finite_counts(Degree::inf(), k);
    case K::CompleteOmega: return std::vector<Degree>(k + 1, Degree::inf());
    case K::TreeT: return tree_t_counts(h.param(), k);
    case K::ForestF: {
        auto c = tree_t_counts(h.param(), k);
        for (auto& x : c)
            x = card_omega_times(x);
        return c;
    }
    case K::DisjointUnion: {
        std::vector<Degree> c(k + 1, Degree::of(0));
        for (const auto& p : h.parts()) {
            auto x = chain_counts(p, k);
            for (nat j = 0; j <= k; ++j)
                c[j] = card_add(c[j], x[j]);
        }
        return c;
    }
    case K::OmegaCopies: {
        auto c = chain_counts(h.parts()[0], k);
        for (auto& x : c)
            x = card_omega_times(x);
        return c;
    }
    case K::Family: {
        std::vector<Degree> c(k + 1, Degree::of(0));
        for (const auto& p : h.family_prefix()) {
            auto x = chain_counts(p, k);
            for (nat j = 0; j <= k; ++j)
                c[j] = card_add(c[j], x[j]);
        }
        for (const auto& p : h.family_period()) {
            auto x = chain_counts(p, k);
            for (nat j = 0; j <= k; ++j)
                c[j] = card_add(c[j], card_omega_times(x[j]));
        }
        return c;
    }
    case K::TreeGraph: return tree_profile(h.tree(), k).count;
    case K::ConnectedUnion: {
        // gluing merges finitely many vertices; fine for locally finite parts
        Degree size = Degree::of(0);
        for (const auto& p : h.parts()) {
            auto x = chain_counts(p, 1);
            if (positive(x[0]))
                throw unsupported("connected union with a vertex of infinite degree");
            size = card_add(size, x[1]);
        }
        if (!size.omega)
            size.n -= h.parts().size() - 1;
        return locally_finite_counts(size, k);
    }
    case K::L1:
    case K::L2:
    case K::FromGrName:
    case K::Custom: break;
    }
    throw unsupported("no structural chain profile for " + h.describe());
}

auto predicate_tf(TfKind kind, nat k, const GraphGen& h) -> bool {
    auto c = chain_counts(h, k)[0];
    return kind == TfKind::T ? positive(c) : c.omega;
}

auto finite_core(const GraphGen& h, nat n) -> std::optional<FinGraph> {
    using K = GraphGen::Kind;
    auto copies = [](const std::vector<std::pair<FinGraph, nat>>& parts) {
        FinGraph out;
        nat tag = 0;
        for (const auto& [g, times] : parts)
            for (nat t = 0; t < times; ++t, ++tag) {
                for (nat v : g.v)
                    out.add_vertex(pair(tag, v));
                for (auto [a, b] : g.e)
                    out.add_edge(pair(tag, a), pair(tag, b));
            }
        return out;
    };
    switch (h.kind()) {
    case K::Finite:
    case K::RayN:
    case K::CycleN:
    case K::CompleteN: return h.materialize();
    case K::Ray:
    case K::TwoWayRay: return GraphGen::ray_n(2 * n + 1).materialize();
    case K::CompleteOmega: return GraphGen::complete_n(std::max<nat>(n, 1)).materialize();
    case K::TreeT: {
        // n children per node are enough for n pattern vertices
        std::set<Str> nodes{Str{}};
        std::vector<Str> level{Str{}};
        for (nat d = 0; d < h.param(); ++d) {
            std::vector<Str> next;
            for (const auto& s : level)
                for (nat c = 0; c < std::max<nat>(n, 1); ++c) {
                    Str t = s;
                    t.push_back(c);
                    nodes.insert(t);
                    next.push_back(t);
                }
            level = std::move(next);
        }
        return tree_to_graph(TreeGen::finite(nodes)).materialize();
    }
    case K::ForestF: {
        auto t = finite_core(GraphGen::standard(K::TreeT, h.param()), n);
        return copies({{*t, std::max<nat>(n, 1)}});
    }
    case K::DisjointUnion: {
        std::vector<std::pair<FinGraph, nat>> parts;
        for (const auto& p : h.parts()) {
            auto c = finite_core(p, n);
            if (!c)
                return std::nullopt;
            parts.push_back({*c, 1});
        }
        return copies(parts);
    }
    case K::OmegaCopies: {
        auto c = finite_core(h.parts()[0], n);
        if (!c)
            return std::nullopt;
        return copies({{*c, std::max<nat>(n, 1)}});
    }
    case K::Family: {
        std::vector<std::pair<FinGraph, nat>> parts;
        for (const auto& p : h.family_prefix()) {
            auto c = finite_core(p, n);
            if (!c)
                return std::nullopt;
            parts.push_back({*c, 1});
        }
        for (const auto& p : h.family_period()) {
            auto c = finite_core(p, n);
            if (!c)
                return std::nullopt;
            parts.push_back({*c, std::max<nat>(n, 1)});
        }
        return copies(parts);
    }
    default:
        if (h.finiteness() == Finiteness::Finite) {
            auto s = h.size();
            if (s && *s <= 4096)
                return h.materialize();
        }
        return std::nullopt;
    }
}

auto structural_contains(const FinGraph& g, const GraphGen& h, bool induced) -> bool {
    auto core = finite_core(h, g.size());
    if (!core)
        throw Error(Errc::UndecidableWithoutCertificate, "no finite core for " + h.describe());
    return fin_subgraph(g, *core, induced).has_value();
}

auto semidecide_s(const FinGraph& g, const SpaceName& h, bool induced, nat fuel) -> Verdict {
    Verdict v;
    v.fuel_spent = fuel;
    if (auto whole = exhausted_host(h, fuel)) {
        if (auto f = fin_subgraph(g, *whole, induced)) {
            v.kind = Verdict::Kind::Found;
            v.witness = *f;
        } else {
            v.kind = Verdict::Kind::Refuted;
            v.reason = "host is certified finite and has no copy";
        }
        return v;
    }
    // an EGr truncation may still miss edges, so induced copies are only final for complete patterns
    bool sound = !induced || h.space == Space::Gr || is_complete(g);
    if (!sound) {
        v.reason = "induced copies in an EGr truncation are not final";
        return v;
    }
    auto t = truncate(h, fuel);
    if (auto f = fin_subgraph(g, t, induced)) {
        v.kind = Verdict::Kind::Found;
        v.witness = *f;
        return v;
    }
    v.reason = "no copy in the truncation";
    return v;
}

auto decide_is_egr_noncomplete(const FinGraph& g, const SpaceName& h) -> bool {
    if (is_complete(g))
        throw Error(Errc::BadParam, "pattern is complete; use the semidecider");
    if (auto end = egr_exhaustion_point(h.stream))
        return fin_subgraph(g, truncate(h, *end), true).has_value();
    if (h.denotes)
        return structural_contains(g, *h.denotes, true);
    throw Error(Errc::UndecidableWithoutCertificate, "EGr host carries no certificate");
}

auto wf2(const TreeGen& t) -> bool {
    if (!t.binary())
        throw Error(Errc::BadParam, "wf2 expects a binary tree");
    if (t.path_certificate())
        return false;
    auto h = t.height();
    if (!h)
        throw Error(Errc::PredicateUnsupported, "tree carries neither a height bound nor a path");
    // König: a binary tree is well founded iff some level is empty
    auto c = t.extensions_at(Str{}, *h + 1);
    return c && *c == 0;
}

} // namespace wg
