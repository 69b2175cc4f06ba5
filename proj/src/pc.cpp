#include <wg/graphs.hpp>

#include <algorithm>
#include <deque>
#include <mutex>

namespace wg {

struct PcState {
    CertifiedStream in;
    nat fuel = 0;
    nat budget = 0;
    nat reads = 0;
    std::vector<nat> verts;
    std::map<nat, std::set<nat>> adj;
    std::map<nat, nat> iota, inv;
    nat stage = 0;
    std::optional<nat> max_label;
    bool complete = false;
    std::mutex mu;

    auto exhausted() const -> bool
    {
        return in.kind() == CertifiedStream::Kind::EventuallyConstant && in.tail() == 0 && reads >= in.prefix().size();
    }

    // false once the input certificate says nothing more can arrive
    auto read_one() -> bool
    {
        if (exhausted())
            return false;
        if (budget == 0)
            throw Error(Errc::FuelExhausted, "prompt-connectivity relabeling ran out of fuel");
        --budget;
        nat c = reads++;
        auto [i, j] = unpair(c);
        if (in.eval(c) != 1)
            return true;
        if (i == j)
            verts.push_back(i);
        else {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        return true;
    }

    void read_past(nat code)
    {
        while (reads <= code && read_one()) {
        }
    }

    auto adjacent(nat x, nat y) -> bool
    {
        read_past(std::max(pair(x, y), pair(y, x)));
        auto it = adj.find(x);
        return it != adj.end() && it->second.count(y);
    }

    auto path_from_root(nat target) -> std::vector<nat>
    {
        nat root = verts[0];
        std::map<nat, nat> parent{{root, root}};
        std::deque<nat> queue{root};
        while (! queue.empty()) {
            nat x = queue.front();
            queue.pop_front();
            if (x == target)
                break;
            for (nat y : adj[x])
                if (! parent.count(y)) {
                    parent[y] = x;
                    queue.push_back(y);
                }
        }
        if (! parent.count(target))
            return {};
        std::vector<nat> p{target};
        while (p.back() != root)
            p.push_back(parent[p.back()]);
        std::reverse(p.begin(), p.end());
        return p;
    }

    void assign(nat v, nat label)
    {
        iota[v] = label;
        inv[label] = v;
        max_label = max_label ? std::max(*max_label, label) : label;
    }

    void step()
    {
        while (verts.size() <= stage)
            if (! read_one()) {
                complete = true;
                return;
            }
        nat v = verts[stage];
        if (stage == 0) {
            assign(v, 0);
            ++stage;
            return;
        }
        if (iota.count(v)) {
            ++stage;
            return;
        }
        nat n = *max_label;
        bool near = false;
        for (nat i = 0; i < stage && ! near; ++i)
            near = adjacent(verts[i], v);
        if (near) {
            assign(v, n + 1);
            ++stage;
            return;
        }
        std::vector<nat> sigma;
        while ((sigma = path_from_root(v)).empty())
            if (! read_one())
                throw Error(Errc::PromiseViolation, "input graph is not connected");
        for (nat i = 1; i < sigma.size(); ++i)
            if (! iota.count(sigma[i]))
                assign(sigma[i], n + i);
        ++stage;
    }

    auto output(nat c) -> nat
    {
        budget = fuel;
        auto [a, b] = unpair(c);
        nat need = std::max(a, b);
        while (! complete && (! max_label || *max_label < need))
            step();
        if (! inv.count(a) || ! inv.count(b))
            return 0;
        if (a == b)
            return 1;
        return adjacent(inv[a], inv[b]) ? 1 : 0;
    }
};

auto PcResult::iota() const -> std::map<nat, nat>
{
    std::lock_guard<std::mutex> lock(state->mu);
    return state->iota;
}

auto pc(const CertifiedStream& gr_name, nat fuel) -> PcResult
{
    auto st = std::make_shared<PcState>();
    st->in = gr_name;
    st->fuel = fuel;
    PcResult r;
    r.state = st;
    r.name = CertifiedStream::generator([st](nat c) {
        std::lock_guard<std::mutex> lock(st->mu);
        return st->output(c);
    });
    return r;
}

namespace {
    struct RayState {
        GraphGen g;
        nat horizon;
        std::vector<nat> path;
        std::map<nat, nat> dead; // vertex -> depth known to be unreachable from it
        std::map<nat, std::vector<nat>> up;

        auto successors(nat x) -> const std::vector<nat>&
        {
            auto it = up.find(x);
            if (it != up.end())
                return it->second;
            Degree d;
            try {
                d = g.degree(x);
            }
            catch (const Error& e) {
                throw Error(Errc::PreconditionUnverifiable, std::string("degree not computable: ") + e.what());
            }
            if (d.omega)
                throw Error(Errc::PreconditionUnverifiable, "vertex of infinite degree " + std::to_string(x));
            std::vector<nat> out;
            for (nat y : g.neighbors(x, d.n))
                if (y > x)
                    out.push_back(y);
            std::sort(out.begin(), out.end());
            return up[x] = out;
        }

        // is there an increasing path of `depth` more edges from x
        auto extends(nat x, nat depth) -> bool
        {
            if (depth == 0)
                return true;
            auto it = dead.find(x);
            if (it != dead.end() && it->second <= depth)
                return false;
            for (nat y : successors(x))
                if (extends(y, depth - 1))
                    return true;
            auto& d = dead[x];
            d = d ? std::min(d, depth) : depth;
            return false;
        }

        auto next(nat i) -> nat
        {
            if (i == 0) {
                auto v = g.vertex_at(0);
                if (! v)
                    throw Error(Errc::PromiseViolation, "empty graph");
                path.push_back(*v);
                return *v;
            }
            nat x = path.back();
            for (nat y : successors(x))
                if (extends(y, horizon)) {
                    path.push_back(y);
                    return y;
                }
            throw Error(Errc::PromiseViolation, "increasing path from " + std::to_string(x) + " dies within the horizon");
        }
    };
}

auto increasing_ray_tree(const GraphGen& g, nat horizon) -> CertifiedStream
{
    auto st = std::make_shared<RayState>(RayState{g, horizon, {}, {}, {}});
    return CertifiedStream::generator([st](nat i) { return st->next(i); });
}

} // namespace wg
