#include <wg/graphs.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>

namespace wg {

auto edge_key(nat a, nat b) -> Edge
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

void FinGraph::add_edge(nat a, nat b)
{
    if (a == b)
        throw Error(Errc::BadParam, "self-loop on " + std::to_string(a));
    v.insert(a);
    v.insert(b);
    e.insert(edge_key(a, b));
}

auto FinGraph::degree(nat x) const -> nat
{
    nat d = 0;
    for (auto [a, b] : e)
        if (a == x || b == x)
            ++d;
    return d;
}

auto FinGraph::neighbors(nat x) const -> std::vector<nat>
{
    std::vector<nat> out;
    for (auto [a, b] : e) {
        if (a == x)
            out.push_back(b);
        else if (b == x)
            out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

auto FinGraph::induced(const std::set<nat>& keep) const -> FinGraph
{
    FinGraph g;
    for (nat x : keep)
        if (has_vertex(x))
            g.v.insert(x);
    for (auto [a, b] : e)
        if (g.has_vertex(a) && g.has_vertex(b))
            g.e.insert({a, b});
    return g;
}

auto fin_from_edges(nat n, const std::vector<Edge>& edges) -> FinGraph
{
    FinGraph g;
    for (nat i = 0; i < n; ++i)
        g.add_vertex(i);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

auto to_json(const FinGraph& g) -> std::string
{
    nlohmann::ordered_json j;
    j["v"] = nlohmann::ordered_json::array();
    for (nat x : g.v)
        j["v"].push_back(x);
    j["e"] = nlohmann::ordered_json::array();
    for (auto [a, b] : g.e)
        j["e"].push_back({a, b});
    return j.dump();
}

auto fin_from_json(const std::string& text) -> FinGraph
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::ParseError, std::string("graph json: ") + ex.what());
    }
    if (! j.is_object() || ! j.contains("v") || ! j["v"].is_array())
        throw Error(Errc::ParseError, "graph json needs a \"v\" array");
    FinGraph g;
    for (const auto& x : j["v"]) {
        if (! x.is_number_unsigned())
            throw Error(Errc::ParseError, "vertex must be a natural number");
        g.add_vertex(x.get<nat>());
    }
    if (j.contains("e")) {
        if (! j["e"].is_array())
            throw Error(Errc::ParseError, "\"e\" must be an array");
        for (const auto& ed : j["e"]) {
            if (! ed.is_array() || ed.size() != 2 || ! ed[0].is_number_unsigned() || ! ed[1].is_number_unsigned())
                throw Error(Errc::ParseError, "edge must be a pair of naturals");
            nat a = ed[0].get<nat>(), b = ed[1].get<nat>();
            if (! g.has_vertex(a) || ! g.has_vertex(b))
                throw Error(Errc::ParseError, "edge endpoint missing from \"v\"");
            if (a == b)
                throw Error(Errc::ParseError, "self-loop");
            g.add_edge(a, b);
        }
    }
    return g;
}

auto to_dot(const FinGraph& g, const std::string& name) -> std::string
{
    std::string out = "graph " + name + " {\n";
    for (nat x : g.v)
        out += "  " + std::to_string(x) + ";\n";
    for (auto [a, b] : g.e)
        out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
    return out + "}\n";
}

auto shortest_path(const FinGraph& g, nat v, nat w) -> std::vector<nat>
{
    if (! g.has_vertex(v) || ! g.has_vertex(w))
        return {};
    std::map<nat, nat> parent;
    std::deque<nat> queue{v};
    parent[v] = v;
    while (! queue.empty()) {
        nat x = queue.front();
        queue.pop_front();
        if (x == w)
            break;
        for (nat y : g.neighbors(x))
            if (! parent.count(y)) {
                parent[y] = x;
                queue.push_back(y);
            }
    }
    if (! parent.count(w))
        return {};
    std::vector<nat> path{w};
    while (path.back() != v)
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

auto distance(const FinGraph& g, nat v, nat w) -> std::optional<nat>
{
    auto p = shortest_path(g, v, w);
    if (p.empty())
        return std::nullopt;
    return p.size() - 1;
}

auto components(const FinGraph& g) -> std::vector<std::set<nat>>
{
    std::map<nat, std::vector<nat>> adj;
    for (auto [a, b] : g.e) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<nat> seen;
    std::vector<std::set<nat>> out;
    for (nat s : g.v) {
        if (seen.count(s))
            continue;
        std::set<nat> comp{s};
        std::vector<nat> stack{s};
        seen.insert(s);
        while (! stack.empty()) {
            nat x = stack.back();
            stack.pop_back();
            for (nat y : adj[x])
                if (seen.insert(y).second) {
                    comp.insert(y);
                    stack.push_back(y);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

auto is_connected(const FinGraph& g) -> bool
{
    return components(g).size() <= 1;
}

auto is_acyclic(const FinGraph& g) -> bool
{
    return g.e.size() + components(g).size() == g.v.size();
}

auto is_promptly_connected(const FinGraph& g) -> bool
{
    std::set<nat> prefix;
    for (nat x : g.v) {
        prefix.insert(x);
        if (! is_connected(g.induced(prefix)))
            return false;
    }
    return true;
}

auto is_complete(const FinGraph& g) -> bool
{
    auto n = g.v.size();
    return g.e.size() == n * (n - (n ? 1 : 0)) / 2;
}

auto isomorphic(const FinGraph& a, const FinGraph& b) -> bool
{
    if (a.v.size() != b.v.size() || a.e.size() != b.e.size())
        return false;
    std::vector<nat> av = a.vertex_list(), bv = b.vertex_list();
    std::size_t n = av.size();
    std::vector<std::vector<char>> am(n, std::vector<char>(n)), bm(n, std::vector<char>(n));
    std::vector<nat> ad(n), bd(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            am[i][j] = a.has_edge(av[i], av[j]);
            bm[i][j] = b.has_edge(bv[i], bv[j]);
            ad[i] += am[i][j];
            bd[i] += bm[i][j];
        }
    {
        auto x = ad, y = bd;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y)
            return false;
    }
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == n)
            return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || ad[i] != bd[j])
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k)
                ok = am[i][k] == bm[j][map[k]];
            if (! ok)
                continue;
            used[j] = 1;
            map[i] = static_cast<int>(j);
            if (go(i + 1))
                return true;
            used[j] = 0;
        }
        return false;
    };
    return go(0);
}

} // namespace wg
