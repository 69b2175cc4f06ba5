#include <doctest.h>
#include <wg/search.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace wg;

namespace {

auto k_n(nat n) { return GraphGen::complete_n(n).materialize(); }
auto r_n(nat n) { return GraphGen::ray_n(n).materialize(); }
auto egr(const GraphGen& g) { return name_of(Space::EGr, g); }
auto fin(const FinGraph& g) { return GraphGen::finite(g); }

auto lim2_cert(const CertifiedStream& q) -> nat { return limit(q); }

// yes only if the last half of a long window agrees
auto lim2_fueled(const CertifiedStream& q) -> nat {
    nat v = q(400);
    for (nat s = 200; s < 400; ++s)
        if (q(s) != v)
            throw Error(Errc::FuelExhausted, "no settled value");
    return v;
}

auto cn_by_member(const CnInstance& a) -> nat {
    for (nat n = 0; n < (1u << 22); ++n) {
        auto m = a.member(n);
        if (m && *m)
            return n;
    }
    throw Error(Errc::FuelExhausted, "no member found");
}

auto is_ray_walk(const CertifiedStream& p, const GraphGen& g, nat n) -> bool {
    std::set<nat> seen;
    for (nat i = 0; i < n; ++i) {
        if (!seen.insert(p(i)).second)
            return false;
        if (i > 0 && !g.has_edge(p(i - 1), p(i)))
            return false;
    }
    return true;
}

auto zeros(nat n) { return Str(n, 0); }

// R relabelled blockwise: positions [bB, (b+1)B) permuted by a seeded shuffle
auto relabelled_ray(nat block, nat seed) -> GraphGen {
    auto perm = [block, seed](nat b) {
        std::vector<nat> p(block);
        std::iota(p.begin(), p.end(), 0);
        std::mt19937_64 rng(seed * 7919 + b);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    auto fwd = [block, perm](nat k) { return (k / block) * block + perm(k / block)[k % block]; };
    auto back = [block, perm](nat v) {
        auto p = perm(v / block);
        nat r = std::find(p.begin(), p.end(), v % block) - p.begin();
        return (v / block) * block + r;
    };
    CustomGraph c;
    c.name = "relabelled-ray";
    c.has_vertex = [](nat) { return true; };
    c.has_edge = [back](nat a, nat b) {
        nat x = back(a), y = back(b);
        return x + 1 == y || y + 1 == x;
    };
    c.degree = [back](nat v) { return Degree::of(back(v) == 0 ? 1 : 2); };
    c.vertex_at = [](nat k) { return std::optional<nat>(k); };
    c.neighbors = [fwd, back](nat v, nat n) {
        std::vector<nat> out;
        nat x = back(v);
        if (x > 0)
            out.push_back(fwd(x - 1));
        out.push_back(fwd(x + 1));
        if (out.size() > n)
            out.resize(n);
        return out;
    };
    c.finiteness = Finiteness::Infinite;
    return GraphGen::custom(c);
}

// core on 0..n-1 with the ray n-1, n, n+1, ... attached
auto head_tail(const FinGraph& core) -> GraphGen {
    nat n = core.size();
    CustomGraph c;
    c.name = "head-tail";
    c.has_vertex = [](nat) { return true; };
    c.has_edge = [core, n](nat a, nat b) {
        if (a < n && b < n)
            return core.has_edge(a, b);
        return a + 1 == b || b + 1 == a ? std::max(a, b) >= n : false;
    };
    c.vertex_at = [](nat k) { return std::optional<nat>(k); };
    c.finiteness = Finiteness::Infinite;
    return GraphGen::custom(c);
}

} // namespace

TEST_CASE("find_s_finite freezes the first embedding") {
    auto c3 = egr(GraphGen::cycle_n(3));
    auto sol = find_s_finite(k_n(2), c3, 100);
    REQUIRE(sol);
    CHECK(sol->cert.at("found_at") <= 6);
    auto p = read_solution(*sol, 200);
    CHECK(isomorphic(p.copy, k_n(2)));
    CHECK(!revalidate(*sol, c3, GraphGen::complete_n(2), 200));

    auto r3 = egr(GraphGen::ray_n(3));
    auto id = find_s_finite(r_n(3), r3, 100);
    REQUIRE(id);
    auto q = read_solution(*id, 200);
    CHECK(q.map == Embedding{{0, 0}, {1, 1}, {2, 2}});

    CHECK(!find_s_finite(k_n(3), egr(GraphGen::ray()), 500));
}

TEST_CASE("find_s_finite is deterministic") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        FinGraph h;
        nat n = 4 + rng() % 4;
        for (nat i = 1; i <= n; ++i)
            h.add_vertex(i);
        for (nat i = 1; i <= n; ++i)
            for (nat j = i + 1; j <= n; ++j)
                if (rng() % 2)
                    h.add_edge(i, j);
        auto name = name_of(Space::EGr, fin(h), Schedule{Schedule::Kind::Shuffled, nat(t), 20});
        auto a = find_s_finite(r_n(3), name, 300), b = find_s_finite(r_n(3), name, 300);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(read_solution(*a, 100).map == read_solution(*b, 100).map);
            CHECK(!revalidate(*a, name, GraphGen::ray_n(3), 100));
        }
    }
}

TEST_CASE("tuple codes are a bijection") {
    for (nat k = 1; k <= 4; ++k)
        for (nat r = 0; r < 2000; ++r) {
            Str s = tuple_decode(k, r);
            REQUIRE(s.size() == k);
            CHECK(tuple_code(s) == r);
        }
    // order: largest entry first, then lexicographic
    CHECK(tuple_decode(2, 0) == Str{0, 0});
    CHECK(tuple_decode(2, 1) == Str{0, 1});
    CHECK(tuple_decode(2, 2) == Str{1, 0});
    CHECK(tuple_decode(2, 3) == Str{1, 1});
    CHECK(tuple_decode(2, 4) == Str{0, 2});
    CHECK(tuple_code({2, 2, 2}) == 26);
}

TEST_CASE("induced copies through a choice oracle") {
    auto host_g = GraphGen::disjoint_union({GraphGen::complete_n(2), GraphGen::ray_n(3)});
    auto host = egr(host_g);
    auto sol = find_is_via_cn(r_n(3), host, cn_by_member);
    auto p = read_solution(sol, 200);
    CHECK(isomorphic(p.copy, r_n(3)));
    for (nat x : p.copy.v)
        CHECK(unpair(x).first == 1);
    auto full = truncate(host, 100);
    auto induced = full.induced(p.copy.v);
    CHECK(induced == p.copy);

    auto self = find_is_via_cn(r_n(3), egr(GraphGen::ray_n(3)), cn_by_member);
    CHECK(read_solution(self, 200).map == Embedding{{0, 0}, {1, 1}, {2, 2}});

    // the chosen code unpacks to (sigma, t) and names exactly the image pairs
    nat n = sol.cert.at("code");
    auto [c, t] = unpair(n);
    Str sigma = tuple_decode(3, c);
    CHECK(t == sol.cert.at("stage"));
    std::vector<nat> order;
    EgrCursor cur(host.stream);
    for (nat k = 0; k < 60; ++k)
        for (nat code : cur.next())
            for (nat x : {unpair(code).first, unpair(code).second})
                if (std::find(order.begin(), order.end(), x) == order.end())
                    order.push_back(x);
    std::set<nat> want;
    auto g = r_n(3);
    for (nat i = 0; i < 3; ++i)
        for (nat j = 0; j < 3; ++j)
            if (i == j || g.has_edge(i, j))
                want.insert(pair(order[sigma[i]], order[sigma[j]]));
    std::set<nat> got;
    for (nat k = 0; k < 400; ++k)
        if (sol.copy.stream(k) == 1)
            got.insert(k);
    CHECK(got == want);

    // the complement enumeration agrees with the certificate on small codes
    auto inst = stable_code_set(r_n(3), host);
    for (nat m = 0; m < 300; ++m) {
        bool out = false;
        for (nat s = 0; s < 40 && !out; ++s)
            out = inst.complement(pair(m, s)) == m + 1;
        CHECK(out == !*inst.member(m));
    }
    CHECK_THROWS_AS(find_is_via_cn(k_n(2), host, cn_by_member), Error);
}

TEST_CASE("finite components: disjoint fresh copies") {
    auto k1 = k_n(1), k2 = k_n(2), k3 = k_n(3);
    ComponentCert edges{{}, {k2}};
    for (auto host_g : {GraphGen::omega_copies(GraphGen::complete_n(2)), GraphGen::omega_copies(GraphGen::complete_n(3))}) {
        auto host = egr(host_g);
        auto sol = find_s_components(edges, host);
        CHECK(!revalidate(sol, host, edges.graph(), 500));
        auto p = read_solution(sol, 500);
        CHECK(p.copy.e.size() >= 4);
        // at most one claimed edge per host component
        std::set<nat> parts;
        for (auto [x, y] : p.copy.e) {
            CHECK(unpair(x).first == unpair(y).first);
            CHECK(parts.insert(unpair(x).first).second);
        }
    }

    ComponentCert mixed{{k3}, {k1}};
    CHECK(mixed.exceptional() == std::vector<nat>{0});
    auto host = egr(GraphGen::disjoint_union({GraphGen::complete_n(3), GraphGen::omega_copies(GraphGen::complete_n(1))}));
    auto sol = find_s_components(mixed, host);
    CHECK(!revalidate(sol, host, mixed.graph(), 300));
    auto p = read_solution(sol, 300);
    nat tri = 0;
    for (auto [a, x] : p.map)
        tri += unpair(a).first == 0;
    CHECK(tri == 3);
    CHECK(p.copy.e.size() == 3);
    // the triangle comes first
    for (nat k = 0; k < 3; ++k)
        CHECK(unpair(unpair(sol.inclusion(k) - 1).first).first == 0);
    CHECK(p.copy.v.size() > 4);

    CHECK_THROWS_AS(find_s_components(ComponentCert{}, host), Error);
}

TEST_CASE("ray followers") {
    auto L = GraphGen::two_way_ray();
    auto p = ray_follow({RayKind::Kind::TwoWayRay, 0}, egr(L));
    CHECK(is_ray_walk(p, L, 10));

    auto c3r = head_tail(GraphGen::cycle_n(3).materialize());
    auto q = ray_follow({RayKind::Kind::CycleTailRay, 3}, egr(c3r));
    CHECK(is_ray_walk(q, c3r, 12));
    // the walk starts at the vertex hanging off the junction 2
    CHECK(q(0) == 3);
    for (nat i = 0; i < 12; ++i)
        CHECK(q(i) == 3 + i);

    auto k4r = head_tail(k_n(4));
    auto r = ray_follow({RayKind::Kind::CompleteTailRay, 4}, egr(k4r));
    CHECK(is_ray_walk(r, k4r, 12));
    CHECK(r(0) == 4);

    auto bt = GraphGen::tree_graph(TreeGen::full_binary());
    auto b = ray_follow({RayKind::Kind::FullBinaryTree, 0}, egr(bt));
    for (nat s = 0; s < 8; ++s) {
        Str a = str_decode(b(s)), c = str_decode(b(s + 1));
        CHECK(a.size() == s);
        CHECK(is_prefix(a, c));
    }

    CHECK_THROWS_AS(ray_follow({RayKind::Kind::CycleTailRay, 3}, egr(GraphGen::ray()), 300)(0), Error);
}

TEST_CASE("rays through a lim2 decision") {
    auto R = GraphGen::ray();
    auto h = egr(R);
    auto q = ray_probe_stream(h);
    CHECK(q.certified());
    for (nat s = 0; s < 30; ++s)
        CHECK(q(s) == 0);
    auto p = emb_ray_r(h, lim2_cert);
    for (nat i = 0; i < 10; ++i)
        CHECK(p(i) == i);

    for (nat seed = 0; seed < 10; ++seed) {
        auto g = relabelled_ray(2 + seed % 5, seed);
        auto name = egr(g);
        auto w = emb_ray_r(name, lim2_cert);
        CHECK(is_ray_walk(w, g, 10));
    }
    // block reversal
    CustomGraph rev;
    auto back = [](nat v) { return (v / 4) * 4 + (3 - v % 4); };
    rev.has_vertex = [](nat) { return true; };
    rev.has_edge = [back](nat a, nat b) { return back(a) + 1 == back(b) || back(b) + 1 == back(a); };
    rev.vertex_at = [](nat k) { return std::optional<nat>(k); };
    rev.neighbors = [back](nat v, nat n) {
        std::vector<nat> out;
        if (back(v) > 0)
            out.push_back(back(back(v) - 1));
        out.push_back(back(back(v) + 1));
        out.resize(std::min<std::size_t>(out.size(), n));
        return out;
    };
    rev.finiteness = Finiteness::Infinite;
    auto rg = GraphGen::custom(rev);
    CHECK(is_ray_walk(emb_ray_r(egr(rg), lim2_cert), rg, 10));

    // two-way ray: the probe never settles
    auto lq = ray_probe_stream(egr(GraphGen::two_way_ray()), 2000);
    CHECK(!lq.certified());
    CHECK_THROWS_AS(emb_ray_r(egr(GraphGen::two_way_ray()), lim2_cert, 2000), Error);
}

TEST_CASE("paths read from construction copies") {
    auto T = TreeGen::single_path(CertifiedStream::constant(0));
    auto l1 = GraphGen::construction(Construction::L1, T, GraphGen::complete_omega());
    auto sol = canonical_construction_copy(l1);
    CHECK(!revalidate(sol, l1, GraphGen::complete_omega(), 100));
    auto p = path_from_solution({PathMode::Kind::L1, 0, {}}, sol, l1);
    nat last = 0;
    for (nat s = 0; s < 6; ++s) {
        Str t = str_decode(p(s));
        CHECK(t == zeros(t.size()));
        if (s > 0)
            CHECK(t.size() > last);
        last = t.size();
    }

    auto star = GraphGen::standard(GraphGen::Kind::TreeT, 1);
    auto l2 = GraphGen::construction(Construction::L2, T, star);
    auto sol2 = canonical_construction_copy(l2);
    CHECK(!revalidate(sol2, l2, star, 100));
    auto p2 = path_from_solution({PathMode::Kind::L2, 1, {}}, sol2, l2);
    auto copy = truncate(sol2.copy, 20000);
    for (nat s = 0; s <= 8; ++s) {
        Str t = str_decode(p2(s));
        CHECK(t.size() >= s);
        CHECK(t == zeros(t.size()));
        nat ext = 0;
        for (nat x : copy.v) {
            Str u = str_decode(x);
            ext += u.size() > t.size() && is_prefix(t, u);
        }
        CHECK(ext >= 2);
    }

    auto forest = GraphGen::standard(GraphGen::Kind::ForestF, 1);
    CHECK(degree_lambda(forest, 3) == 1);
    auto l3 = GraphGen::construction(Construction::L2, T, forest);
    auto sol3 = canonical_construction_copy(l3);
    PathMode lam{PathMode::Kind::L2Oracle, 0, [forest](nat n) { return degree_lambda(forest, n); }};
    auto p3 = path_from_solution(lam, sol3, l3);
    for (nat s = 0; s <= 6; ++s) {
        Str t = str_decode(p3(s));
        CHECK(t.size() >= s);
        CHECK(T.contains(t));
        if (s > 0)
            CHECK(is_prefix(str_decode(p3(s - 1)), t));
    }
}

TEST_CASE("lim2 finds where a ray stops descending") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 12; ++t) {
        std::vector<nat> pre(rng() % 4);
        for (auto& x : pre)
            x = rng() % 3;
        auto f = CertifiedStream::eventually_constant(pre, rng() % 2);
        auto T = TreeGen::single_path(f);
        auto host = GraphGen::construction(Construction::L1, T, GraphGen::ray());
        auto ray = canonical_ray_copy(host);
        auto bad = revalidate(ray, host, GraphGen::ray(), 10);
        CHECK_MESSAGE(!bad, *bad);
        auto path = ray_path_via_lim2(ray, lim2_cert);
        for (nat n = 0; n < 10; ++n) {
            Str s = str_decode(path(n));
            CHECK(s.size() == n);
            CHECK(T.contains(s));
        }
    }

    // 111, 11, 1, <>, 0, 00, ... inside the path 0^ω plus a finite branch
    auto T = TreeGen::set_union(TreeGen::single_path(CertifiedStream::constant(0)),
                                TreeGen::finite({{}, {1}, {1, 1}, {1, 1, 1}}));
    auto node = [](nat k) { return k <= 3 ? Str(3 - k, 1) : zeros(k - 3); };
    SolutionStream ray;
    ray.copy = {Space::Gr, CertifiedStream::constant(0), std::nullopt};
    ray.inclusion = CertifiedStream::generator([node](nat k) { return pair(k, str_code(node(k))) + 1; });
    ray.cert["ascending_from"] = 3;
    auto path = ray_path_via_lim2(ray, lim2_cert);
    for (nat n = 0; n < 8; ++n)
        CHECK(str_decode(path(n)) == zeros(n));
}

TEST_CASE("restriction to a component") {
    auto two = egr(GraphGen::disjoint_union({GraphGen::complete_n(2), GraphGen::complete_n(2)}));
    auto out = restrict_to_connected(two, 0);
    CHECK(isomorphic(truncate(out, 60), k_n(2)));
    CHECK(!validate_name(out, 200));

    auto c5 = GraphGen::cycle_n(5);
    CHECK(truncate(restrict_to_connected(egr(c5), 3), 200) == c5.materialize());

    auto lone = egr(GraphGen::disjoint_union({GraphGen::complete_n(2), GraphGen::complete_n(1)}));
    auto single = truncate(restrict_to_connected(lone, pair(1, 0)), 60);
    CHECK(single.v == std::set<nat>{pair(1, 0)});
    CHECK(single.e.empty());

    // a vertex arrives just ahead of the edge back to the component, so every
    // prefix ending on an edge is connected
    auto R = restrict_to_connected(egr(GraphGen::disjoint_union({GraphGen::ray(), GraphGen::ray()})), pair(1, 0));
    for (nat n = 1; n < 40; ++n) {
        auto [a, b] = unpair(R.stream(n - 1));
        if (a == b && n > 1)
            continue;
        auto g = truncate(R, n);
        CHECK(is_connected(g));
        for (nat x : g.v)
            CHECK(unpair(x).first == 1);
    }
}

TEST_CASE("T_3 through an infinite-degree vertex") {
    auto t1 = GraphGen::standard(GraphGen::Kind::TreeT, 1);
    auto sol = find_t3(t1);
    CHECK(sol.cert.at("root") == str_code({}));
    CHECK(!revalidate(sol, t1, t1, 80));
    auto ko = GraphGen::complete_omega();
    auto s2 = find_t3(ko);
    CHECK(s2.cert.at("root") == 0);
    CHECK(!revalidate(s2, ko, t1, 80));
    CHECK(read_solution(s2, 80).copy.size() > 30);
    try {
        find_t3(GraphGen::ray_n(5));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoInfiniteDegreeVertex);
    }
}

TEST_CASE("F_{2k+2} by the greedy level embedding") {
    auto f0 = GraphGen::standard(GraphGen::Kind::ForestF, 0);
    auto f1 = GraphGen::standard(GraphGen::Kind::ForestF, 1);
    auto k1s = GraphGen::omega_copies(GraphGen::complete_n(1));
    auto a = find_f2k2(k1s, 0);
    CHECK(!revalidate(a, k1s, f0, 60));
    CHECK(read_solution(a, 60).copy.e.empty());

    auto b = find_f2k2(f1, 1);
    CHECK(!revalidate(b, f1, f1, 200));

    auto t2 = GraphGen::standard(GraphGen::Kind::TreeT, 2);
    auto c = find_f2k2(t2, 1);
    CHECK(!revalidate(c, t2, f1, 200));
    // copy roots have infinite degree, leaves finite
    auto pre = read_solution(c, 200);
    for (auto [pv, hv] : pre.map) {
        bool root = str_decode(unpair(pv).second).empty();
        if (root)
            CHECK(t2.degree(hv).omega);
    }
    CHECK_THROWS_AS(find_f2k2(GraphGen::construction(Construction::L1, TreeGen::full_binary(), GraphGen::ray()), 1),
                    Error);
}

TEST_CASE("unique path through a binary tree from a Gr ray") {
    auto T = TreeGen::set_union(TreeGen::single_path(CertifiedStream::constant(0)),
                                TreeGen::finite({{}, {1}, {1, 1}}));
    auto tg = GraphGen::tree_graph(T);
    auto host = name_of(Space::Gr, tg);
    auto sol = canonical_ray_copy(tg);
    auto p = cantor_unique_path(host, sol.copy);
    for (nat n = 0; n < 6; ++n)
        CHECK(str_decode(p(n)) == zeros(n));

    // 11, 1, <>, 0, 00, ...: levels 1 and 2 are met twice and skipped
    auto node_ok = [](const Str& s) {
        return s == zeros(s.size()) || s == Str{1} || s == Str{1, 1};
    };
    auto adj = [](const Str& a, const Str& b) {
        return b.size() == a.size() + 1 && is_prefix(a, b);
    };
    SpaceName bent{Space::Gr, CertifiedStream::pointwise([node_ok, adj](nat c) -> nat {
                       auto [i, j] = unpair(c);
                       Str a = str_decode(i), b = str_decode(j);
                       if (!node_ok(a) || !node_ok(b))
                           return 0;
                       return i == j || adj(a, b) || adj(b, a) ? 1 : 0;
                   }),
                   std::nullopt};
    auto q = cantor_unique_path(host, bent);
    CHECK(str_decode(q(0)).empty());
    for (nat n = 1; n < 5; ++n)
        CHECK(str_decode(q(n)) == zeros(n + 2));

    CHECK_THROWS_AS(cantor_unique_path(egr(tg), sol.copy), Error);
}
