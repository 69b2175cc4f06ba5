#include <doctest.h>
#include <wg/problems.hpp>

#include <map>
#include <random>

using namespace wg;

namespace {

auto with_stream(CertifiedStream s) -> Instance {
    Instance in;
    in.stream = std::move(s);
    return in;
}

auto with_tree(TreeGen t) -> Instance {
    Instance in;
    in.tree = std::move(t);
    return in;
}

auto bits(std::mt19937_64& rng, nat n) -> std::vector<nat> {
    std::vector<nat> out(n);
    for (auto& b : out)
        b = rng() % 4 == 0 ? 1 : 0;
    return out;
}

auto rand_leaf(std::mt19937_64& rng) -> CertifiedStream {
    auto pre = bits(rng, rng() % 4);
    if (rng() % 2)
        return CertifiedStream::eventually_constant(pre, rng() % 5 == 0 ? 1 : 0);
    return CertifiedStream::periodic(pre, bits(rng, 1 + rng() % 3));
}

// mostly convergent: the period repeats one subtower, sometimes two unequal ones
auto rand_tower(std::mt19937_64& rng, nat depth) -> Tower {
    Tower t;
    if (depth == 0) {
        t.leaf = rand_leaf(rng);
        return t;
    }
    for (nat i = rng() % 3; i > 0; --i)
        t.prefix.push_back(rand_tower(rng, depth - 1));
    Tower tail = rand_tower(rng, depth - 1);
    t.period = {tail};
    if (rng() % 6 == 0)
        t.period.push_back(rand_tower(rng, depth - 1));
    else if (rng() % 2)
        t.period.push_back(tail);
    return t;
}

// value at i of the iterated limit, read off far entries; nullopt if they disagree
auto direct_value(const Tower& t, nat i) -> std::optional<nat> {
    if (t.prefix.empty() && t.period.empty())
        return t.leaf(i);
    nat p = t.prefix.size(), l = t.period.size();
    std::optional<nat> v;
    for (nat s = p; s < p + 2 * l; ++s) {
        auto x = direct_value(t.entry(s), i);
        if (!x || (v && *v != *x))
            return std::nullopt;
        v = x;
    }
    return v;
}

// ∀i (iterated limit at i) = 0, scanning i < 200
auto direct_lpo(const Tower& t) -> std::optional<nat> {
    bool zero = true;
    for (nat i = 0; i < 200; ++i) {
        auto v = direct_value(t, i);
        if (!v)
            return std::nullopt;
        zero = zero && *v == 0;
    }
    return zero ? 1 : 0;
}

auto bfs_labels(const FinGraph& g) -> std::map<nat, nat> {
    // union-find, independent of the BFS in d_components
    std::map<nat, nat> up;
    for (nat v : g.v)
        up[v] = v;
    auto find = [&](nat v) {
        while (up[v] != v)
            v = up[v] = up[up[v]];
        return v;
    };
    for (auto [a, b] : g.e) {
        nat x = find(a), y = find(b);
        if (x != y)
            up[std::max(x, y)] = std::min(x, y);
    }
    std::map<nat, nat> out;
    for (nat v : g.v)
        out[v] = find(v);
    return out;
}

} // namespace

TEST_CASE("lpo, lim, lim2 and wf on certified instances") {
    auto lpo = problem("lpo");
    CHECK(*oracle_call(lpo, with_stream(CertifiedStream::constant(0))).value == 1);
    CHECK(*oracle_call(lpo, with_stream(CertifiedStream::eventually_constant({0, 0, 1}, 0))).value == 0);
    CHECK(*oracle_call(lpo, with_stream(CertifiedStream::periodic({0}, {0, 0, 1}))).value == 0);
    CHECK_THROWS_AS(oracle_call(lpo, with_stream(CertifiedStream::generator([](nat) { return nat{0}; }))), Error);
    CHECK_THROWS_AS(oracle_call(lpo, Instance{}), Error);

    CHECK(*oracle_call(problem("lim2"), with_stream(CertifiedStream::eventually_constant({0, 1}, 1))).value == 1);
    CHECK(*oracle_call(problem("lim"), with_stream(CertifiedStream::periodic({4, 1}, {7}))).value == 7);
    CHECK_THROWS_AS(oracle_call(problem("lim"), with_stream(CertifiedStream::periodic({}, {0, 1}))), Error);
    auto late = CertifiedStream::generator([](nat s) -> nat { return s < 30 ? 1 : 0; });
    CHECK_THROWS_AS(oracle_call(problem("lim2"), with_stream(late)), Error);
    CHECK(*oracle_call(problem("lim2-fueled"), with_stream(late), 100).value == 0);

    auto wf = problem("wf");
    CHECK(*oracle_call(wf, with_tree(TreeGen::single_path(CertifiedStream::constant(0)))).value == 0);
    CHECK(*oracle_call(wf, with_tree(TreeGen::finite({{}, {0}, {1}, {1, 4}}))).value == 1);
}

TEST_CASE("LPO^(n) towers agree with the quantifier reading") {
    std::mt19937_64 rng(21);
    for (nat depth : {1, 2}) {
        auto p = problem("lpo" + std::to_string(depth));
        int ones = 0, zeros = 0, diverged = 0;
        for (int t = 0; t < 100; ++t) {
            Instance in;
            in.tower = rand_tower(rng, depth);
            auto want = direct_lpo(*in.tower);
            if (!want) {
                CHECK_THROWS_AS(oracle_call(p, in), Error);
                ++diverged;
                continue;
            }
            nat got = *oracle_call(p, in).value;
            CHECK(got == *want);
            (got ? ones : zeros)++;
        }
        CHECK(ones > 5);
        CHECK(zeros > 5);
        CHECK(diverged > 0);
    }
    Instance wrong;
    wrong.tower = Tower{};
    CHECK_THROWS_AS(oracle_call(problem("lpo1"), wrong), Error);
}

TEST_CASE("choice on N") {
    auto cn = problem("cn");
    Instance in;
    in.cn = CnInstance{CertifiedStream::eventually_constant({1, 0, 3, 2}, 0), {}};
    CHECK(*oracle_call(cn, in).value == 3);
    in.cn = CnInstance{CertifiedStream::periodic({2}, {1, 3}), {}};
    CHECK(*oracle_call(cn, in).value == 3);

    // the induced-copy code set, through its member certificate
    auto host = name_of(Space::EGr, GraphGen::disjoint_union({GraphGen::complete_n(2), GraphGen::ray_n(3)}));
    in.cn = stable_code_set(GraphGen::ray_n(3).materialize(), host);
    nat n = *oracle_call(cn, in).value;
    CHECK(*in.cn->member(n));
    for (nat m = 0; m < n; ++m)
        CHECK(!*in.cn->member(m));

    in.cn = CnInstance{CertifiedStream::generator([](nat) { return nat{0}; }), {}};
    CHECK_THROWS_AS(oracle_call(cn, in), Error);
}

TEST_CASE("choice on Cantor and Baire space") {
    auto cc = problem("ccantor");
    auto T = TreeGen::set_union(TreeGen::single_path(CertifiedStream::periodic({}, {1, 0})),
                                TreeGen::finite({{}, {0}, {0, 0}}));
    auto a = oracle_call(cc, with_tree(T));
    for (nat i = 0; i < 6; ++i)
        CHECK((*a.stream)(i) == (i + 1) % 2);
    CHECK_THROWS_AS(oracle_call(cc, with_tree(TreeGen::finite({{}, {0}}))), Error);

    // leaves wherever the last entry is 0; everything else branches into 0 and 1
    TreeGen::Rule rule;
    rule.children = [](const Str& s) -> std::optional<std::vector<nat>> {
        if (!s.empty() && s.back() == 0)
            return std::vector<nat>{};
        return std::vector<nat>{0, 1};
    };
    rule.name = "dead-zeros";
    auto dz = TreeGen::level_rule(rule);
    auto b = oracle_call(problem("cbaire"), with_tree(dz));
    for (nat i = 0; i < 20; ++i)
        CHECK((*b.stream)(i) == 1);

    // infinitely branching: child n of the root survives only for n = 5
    TreeGen::Rule wide;
    wide.children = [](const Str& s) -> std::optional<std::vector<nat>> {
        if (s.empty())
            return std::nullopt;
        if (s[0] != 5)
            return std::vector<nat>{};
        return std::vector<nat>{2};
    };
    wide.finitely_branching = false;
    auto w = oracle_call(problem("cbaire"), with_tree(TreeGen::level_rule(wide)));
    CHECK((*w.stream)(0) == 5);
    CHECK((*w.stream)(3) == 2);

    // a budget too small to see past the first dead children
    CHECK_THROWS_AS(oracle_call(problem("cbaire"), with_tree(TreeGen::level_rule(wide)), 3), Error);
}

TEST_CASE("component labels") {
    auto two = FinGraph{};
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    auto f = d_components(name_of(Space::Gr, GraphGen::finite(two)));
    CHECK(f.take(4) == std::vector<nat>{0, 0, 2, 2});

    auto ray = d_components(name_of(Space::Gr, GraphGen::ray()));
    for (nat v = 0; v < 30; ++v)
        CHECK(ray(v) == 0);

    auto dust = d_components(name_of(Space::Gr, GraphGen::omega_copies(GraphGen::complete_n(1))));
    std::set<nat> labels;
    for (nat i = 0; i < 40; ++i)
        labels.insert(dust(pair(i, 0)));
    CHECK(labels.size() == 40);

    auto k2s = d_components(name_of(Space::Gr, GraphGen::omega_copies(GraphGen::complete_n(2))));
    CHECK(k2s(pair(7, 1)) == pair(7, 0));

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        FinGraph g;
        nat n = 2 + rng() % 8;
        for (nat v = 1; v <= n; ++v)
            g.add_vertex(v);
        for (nat i = 1; i <= n; ++i)
            for (nat j = i + 1; j <= n; ++j)
                if (rng() % 5 == 0)
                    g.add_edge(i, j);
        auto got = d_components(name_of(Space::Gr, GraphGen::finite(g)));
        for (auto [v, l] : bfs_labels(g))
            CHECK(got(v) == l);
    }
    CHECK_THROWS_AS(d_components(name_of(Space::EGr, GraphGen::ray())), Error);
}

TEST_CASE("harness composition") {
    auto k2 = GraphGen::complete_n(2).materialize();
    auto is_k2 = contains_problem(k2, true);
    auto sigma1 = sigma1_harness(k2);
    CHECK(*compose(sigma1, is_k2, with_stream(CertifiedStream::constant(0))).value == 0);
    CHECK(*compose(sigma1, is_k2, with_stream(CertifiedStream::eventually_constant({0, 0, 1}, 0))).value == 1);

    auto emb = emb_ray_problem(problem("lim2-fueled"));
    auto lim2r = lim2_embR_harness();
    CHECK(*compose(lim2r, emb, with_stream(CertifiedStream::eventually_constant({1}, 0))).value == 0);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 10; ++t) {
        auto q = CertifiedStream::eventually_constant(bits(rng, rng() % 5), rng() % 2);
        CHECK(*compose(lim2r, emb, with_stream(q)).value == limit(q));
    }

    // Ψ echoing the input is fine weakly and caught strongly
    ReductionHarness echo = sigma1;
    echo.backward = [](const InputView& in, const Answer&) {
        Answer a;
        a.value = in.get().stream->eval(0);
        return a;
    };
    echo.strength = ReductionHarness::Strength::Weak;
    CHECK(*compose(echo, is_k2, with_stream(CertifiedStream::constant(0))).value == 0);
    echo.strength = ReductionHarness::Strength::Strong;
    try {
        compose(echo, is_k2, with_stream(CertifiedStream::constant(0)));
        FAIL("strong mode let the input through");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::HarnessContractViolation);
    }
}

TEST_CASE("Baire round trip through a ray copy and lim2") {
    std::mt19937_64 rng(30);
    auto h = baire_harness(problem("lim2"));
    auto find = find_ray_problem();
    for (int t = 0; t < 20; ++t) {
        // inclusion entries pair a ray position with a node code, so nodes
        // deep on a path with a large digit sum overflow: keep the tails sparse
        std::vector<nat> pre(rng() % 5);
        for (auto& x : pre)
            x = rng() % 3;
        auto f = rng() % 2 ? CertifiedStream::eventually_constant(pre, 0)
                           : CertifiedStream::periodic(pre, {0, rng() % 2, 1 + rng() % 2});
        auto T = TreeGen::single_path(f);
        auto out = compose(h, find, with_tree(T));
        for (nat n = 0; n < 10; ++n) {
            Str s = str_decode((*out.stream)(n));
            CHECK(s.size() == n);
            CHECK(T.contains(s));
        }
    }
}
