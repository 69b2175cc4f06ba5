#include <wg/problems.hpp>

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace wg {

auto Tower::depth() const -> nat
{
    if (prefix.empty() && period.empty())
        return 0;
    const Tower& first = period.empty() ? prefix.front() : period.front();
    return first.depth() + 1;
}

auto Tower::entry(nat s) const -> const Tower&
{
    if (s < prefix.size())
        return prefix[s];
    if (period.empty())
        throw Error(Errc::MalformedInstance, "tower level without a period");
    return period[(s - prefix.size()) % period.size()];
}

namespace {

auto require_certified(const CertifiedStream& s, const char* what)
{
    if (! s.certified())
        throw Error(Errc::UndecidableWithoutCertificate, std::string(what) + " needs a certified stream");
}

// positions past which two certified streams repeat together
auto joint_window(const CertifiedStream& a, const CertifiedStream& b) -> nat
{
    nat la = a.kind() == CertifiedStream::Kind::Periodic ? a.period().size() : 1;
    nat lb = b.kind() == CertifiedStream::Kind::Periodic ? b.period().size() : 1;
    return std::max(a.prefix().size(), b.prefix().size()) + std::lcm(la, lb);
}

auto same_stream(const CertifiedStream& a, const CertifiedStream& b) -> bool
{
    nat w = joint_window(a, b);
    for (nat i = 0; i < w; ++i)
        if (a(i) != b(i))
            return false;
    return true;
}

auto all_zero(const CertifiedStream& q) -> bool
{
    require_certified(q, "LPO");
    for (nat x : q.prefix())
        if (x != 0)
            return false;
    if (q.kind() == CertifiedStream::Kind::EventuallyConstant)
        return q.tail() == 0;
    const auto& p = q.period();
    return std::all_of(p.begin(), p.end(), [](nat x) { return x == 0; });
}

auto need(bool present, const char* field) -> std::optional<std::string>
{
    if (present)
        return std::nullopt;
    return std::string("instance needs a ") + field;
}

auto bit_answer(bool b) -> Answer
{
    Answer a;
    a.value = b ? 1 : 0;
    return a;
}

auto check_bit(const Instance&, const Answer& a) -> std::optional<std::string>
{
    if (! a.value || *a.value > 1)
        return "answer is not a bit";
    return std::nullopt;
}

// is there a node of depth `target` above s? Spends one unit of budget per node.
auto survives(const TreeGen& t, Str& s, nat target, nat& budget) -> bool
{
    if (s.size() >= target)
        return true;
    auto kids = t.children(s);
    auto visit = [&](nat c) {
        if (budget == 0)
            throw Error(Errc::FuelExhausted, "path search ran out of fuel at depth " + std::to_string(s.size()));
        --budget;
        s.push_back(c);
        bool ok = t.contains(s) && survives(t, s, target, budget);
        s.pop_back();
        return ok;
    };
    if (kids) {
        for (nat c : *kids)
            if (visit(c))
                return true;
        return false;
    }
    for (nat c = 0;; ++c)
        if (visit(c))
            return true;
}

// Leftmost path that looks alive `horizon` levels ahead. fuel bounds each step.
auto lookahead_path(const TreeGen& t, nat horizon, nat fuel) -> CertifiedStream
{
    struct State {
        Str cur;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    return CertifiedStream::generator([st, t, horizon, fuel](nat) -> nat {
        std::lock_guard<std::mutex> lock(st->mu);
        Str& cur = st->cur;
        nat budget = fuel;
        auto kids = t.children(cur);
        auto try_child = [&](nat c) {
            cur.push_back(c);
            if (t.contains(cur) && survives(t, cur, cur.size() + horizon, budget))
                return true;
            cur.pop_back();
            if (budget == 0)
                throw Error(Errc::FuelExhausted, "path search ran out of fuel");
            --budget;
            return false;
        };
        bool moved = false;
        if (kids) {
            for (nat c : *kids)
                if ((moved = try_child(c)))
                    break;
        }
        else {
            for (nat c = 0; ! moved; ++c)
                moved = try_child(c);
        }
        if (! moved)
            throw Error(Errc::PromiseViolation, "committed path dies at " + str_format(cur));
        return cur.back();
    });
}

auto check_path(nat depth)
{
    return [depth](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (! a.stream)
            return "no path";
        Str s;
        for (nat i = 0; i < depth; ++i) {
            s.push_back((*a.stream)(i));
            if (! in.tree->contains(s))
                return "prefix " + str_format(s) + " is not in the tree";
        }
        return std::nullopt;
    };
}

auto lpo_problem(nat n) -> Problem
{
    Problem p;
    p.name = n == 0 ? "lpo" : "lpo" + std::to_string(n);
    if (n == 0) {
        p.validate = [](const Instance& in) { return need(in.stream.has_value(), "stream"); };
        p.solve = [](const Instance& in, nat) { return bit_answer(all_zero(*in.stream)); };
        p.check = [](const Instance& in, const Answer& a) -> std::optional<std::string> {
            if (auto bad = check_bit(in, a))
                return bad;
            // a 1 must survive a plain scan
            for (nat i = 0; *a.value == 1 && i < 512; ++i)
                if ((*in.stream)(i) != 0)
                    return "LPO said 1 but position " + std::to_string(i) + " is nonzero";
            return std::nullopt;
        };
        return p;
    }
    p.validate = [n](const Instance& in) -> std::optional<std::string> {
        if (! in.tower)
            return "instance needs a tower";
        if (in.tower->depth() != n)
            return "tower depth " + std::to_string(in.tower->depth()) + ", expected " + std::to_string(n);
        return std::nullopt;
    };
    p.solve = [](const Instance& in, nat) { return bit_answer(all_zero(tower_value(*in.tower))); };
    p.check = check_bit;
    return p;
}

auto lim_problem(bool binary, bool fueled) -> Problem
{
    Problem p;
    p.name = binary ? (fueled ? "lim2-fueled" : "lim2") : "lim";
    p.validate = [](const Instance& in) { return need(in.stream.has_value(), "stream"); };
    p.solve = [fueled](const Instance& in, nat fuel) {
        const auto& q = *in.stream;
        Answer a;
        if (q.certified())
            a.value = limit(q);
        else if (fueled)
            a.value = q(fuel); // the value at the fuel horizon stands in for the limit
        else
            throw Error(Errc::UndecidableWithoutCertificate, "limit of a generator-backed stream");
        return a;
    };
    p.check = [binary](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (! a.value)
            return "no value";
        if (binary && *a.value > 1)
            return "lim2 answer is not a bit";
        const auto& q = *in.stream;
        if (q.certified() && q(q.prefix().size() + 3 * q.period().size() + 1) != *a.value)
            return "answer differs from the tail";
        return std::nullopt;
    };
    return p;
}

auto cn_problem() -> Problem
{
    Problem p;
    p.name = "cn";
    p.fuel = 1 << 20;
    p.validate = [](const Instance& in) { return need(in.cn.has_value(), "co-enumeration"); };
    p.solve = [](const Instance& in, nat fuel) {
        const auto& c = *in.cn;
        Answer a;
        if (c.complement.certified()) {
            // a certified stream takes finitely many values, all in its prefix and tail
            std::set<nat> gone;
            auto note = [&](nat x) {
                if (x > 0)
                    gone.insert(x - 1);
            };
            for (nat x : c.complement.prefix())
                note(x);
            if (c.complement.kind() == CertifiedStream::Kind::Periodic)
                for (nat x : c.complement.period())
                    note(x);
            else
                note(c.complement.tail());
            nat n = 0;
            while (gone.count(n))
                ++n;
            a.value = n;
            return a;
        }
        if (! c.member)
            throw Error(Errc::UndecidableWithoutCertificate, "C_N instance without a stability certificate");
        for (nat n = 0; n < fuel; ++n)
            if (auto m = c.member(n); m && *m) {
                a.value = n;
                return a;
            }
        throw Error(Errc::FuelExhausted, "no member below " + std::to_string(fuel));
    };
    p.check = [](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (! a.value)
            return "no value";
        for (nat t = 0; t < 256; ++t)
            if (in.cn->complement(t) == *a.value + 1)
                return "answer " + std::to_string(*a.value) + " was removed at stage " + std::to_string(t);
        return std::nullopt;
    };
    return p;
}

auto wf_problem() -> Problem
{
    Problem p;
    p.name = "wf";
    p.validate = [](const Instance& in) { return need(in.tree.has_value(), "tree"); };
    p.solve = [](const Instance& in, nat) {
        auto w = in.tree->well_founded();
        if (! w)
            throw Error(Errc::UndecidableWithoutCertificate, "well-foundedness of " + in.tree->describe());
        return bit_answer(*w);
    };
    p.check = [](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (auto bad = check_bit(in, a))
            return bad;
        if (*a.value == 1 && in.tree->path_certificate())
            return "tree with a path certificate reported well-founded";
        return std::nullopt;
    };
    return p;
}

auto cantor_problem() -> Problem
{
    Problem p;
    p.name = "ccantor";
    p.validate = [](const Instance& in) -> std::optional<std::string> {
        if (! in.tree)
            return "instance needs a tree";
        if (! in.tree->finitely_branching())
            return "C_Cantor needs a finitely branching tree";
        return std::nullopt;
    };
    p.solve = [](const Instance& in, nat fuel) {
        const auto& t = *in.tree;
        Answer a;
        if (auto f = t.path_certificate()) {
            a.stream = *f;
            return a;
        }
        auto w = t.well_founded();
        if (! w)
            throw Error(Errc::UndecidableWithoutCertificate, "no certificate that the tree is ill-founded");
        if (*w)
            throw Error(Errc::NoIllFoundedCertificate, "the tree is well-founded");
        a.stream = lookahead_path(t, 24, fuel);
        return a;
    };
    p.check = check_path(50);
    return p;
}

auto baire_problem() -> Problem
{
    Problem p;
    p.name = "cbaire";
    p.fuel = 1 << 16;
    p.validate = [](const Instance& in) { return need(in.tree.has_value(), "tree"); };
    p.solve = [](const Instance& in, nat fuel) {
        Answer a;
        if (auto f = in.tree->path_certificate())
            a.stream = *f;
        else
            a.stream = lookahead_path(*in.tree, 8, fuel);
        return a;
    };
    p.check = check_path(20);
    return p;
}

} // namespace

auto tower_value(const Tower& t) -> CertifiedStream
{
    if (t.depth() == 0)
        return t.leaf;
    if (t.period.empty())
        throw Error(Errc::MalformedInstance, "tower level without a period");
    auto v = tower_value(t.period.front());
    require_certified(v, "tower");
    for (std::size_t i = 1; i < t.period.size(); ++i) {
        auto w = tower_value(t.period[i]);
        require_certified(w, "tower");
        if (! same_stream(v, w))
            throw Error(Errc::NotConvergent, "tower period entries disagree");
    }
    return v;
}

auto problem(const std::string& name) -> Problem
{
    if (name == "lpo")
        return lpo_problem(0);
    if (name == "lpo1")
        return lpo_problem(1);
    if (name == "lpo2")
        return lpo_problem(2);
    if (name == "lim")
        return lim_problem(false, false);
    if (name == "lim2")
        return lim_problem(true, false);
    if (name == "lim2-fueled")
        return lim_problem(true, true);
    if (name == "cn")
        return cn_problem();
    if (name == "wf")
        return wf_problem();
    if (name == "ccantor")
        return cantor_problem();
    if (name == "cbaire")
        return baire_problem();
    throw Error(Errc::BadParam, "unknown problem " + name);
}

auto problem_names() -> std::vector<std::string>
{
    return {"lpo", "lpo1", "lpo2", "lim", "lim2", "lim2-fueled", "cn", "wf", "ccantor", "cbaire"};
}

auto contains_problem(FinGraph g, bool induced) -> Problem
{
    Problem p;
    p.name = induced ? "is" : "s";
    p.validate = [](const Instance& in) { return need(in.name.has_value(), "graph name"); };
    p.solve = [g, induced](const Instance& in, nat fuel) {
        const auto& h = *in.name;
        if (h.denotes)
            return bit_answer(structural_contains(g, *h.denotes, induced));
        auto v = semidecide_s(g, h, induced, fuel);
        if (v.kind == Verdict::Kind::Unknown)
            throw Error(Errc::FuelExhausted, "containment unsettled: " + v.reason);
        return bit_answer(v.kind == Verdict::Kind::Found);
    };
    p.check = check_bit;
    return p;
}

auto emb_ray_problem(Problem lim2) -> Problem
{
    Problem p;
    p.name = "embR";
    p.fuel = 1 << 12;
    p.validate = [](const Instance& in) { return need(in.name.has_value(), "graph name"); };
    p.solve = [lim2](const Instance& in, nat fuel) {
        SpaceName h = in.name->space == Space::Gr ? gr_to_egr(*in.name) : *in.name;
        Answer a;
        a.stream = emb_ray_r(h, [lim2, fuel](const CertifiedStream& q) {
            Instance qi;
            qi.stream = q;
            return *oracle_call(lim2, qi, fuel).value;
        }, fuel);
        return a;
    };
    p.check = [](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (! a.stream)
            return "no ray";
        const auto& h = *in.name;
        std::optional<FinGraph> seen;
        if (h.space == Space::EGr)
            seen = truncate(h, 4096);
        std::set<nat> used;
        for (nat i = 0; i < 8; ++i) {
            nat x = (*a.stream)(i), y = (*a.stream)(i + 1);
            if (! used.insert(x).second)
                return "ray repeats vertex " + std::to_string(x);
            bool edge = seen ? seen->has_edge(x, y) : h.stream(pair(x, y)) == 1;
            if (! edge)
                return "no host edge " + std::to_string(x) + "-" + std::to_string(y);
        }
        return std::nullopt;
    };
    return p;
}

auto find_ray_problem() -> Problem
{
    Problem p;
    p.name = "findR";
    p.validate = [](const Instance& in) { return need(in.graph.has_value(), "structural host"); };
    p.solve = [](const Instance& in, nat) {
        Answer a;
        a.solution = canonical_ray_copy(*in.graph);
        return a;
    };
    p.check = [](const Instance& in, const Answer& a) -> std::optional<std::string> {
        if (! a.solution)
            return "no solution";
        return revalidate(*a.solution, *in.graph, GraphGen::ray(), 10);
    };
    return p;
}

auto oracle_call(const Problem& p, const Instance& in, std::optional<nat> fuel) -> Answer
{
    if (auto bad = p.validate(in))
        throw Error(Errc::MalformedInstance, p.name + ": " + *bad);
    Answer a = p.solve(in, fuel.value_or(p.fuel));
    if (p.check)
        if (auto bad = p.check(in, a))
            throw Error(Errc::PromiseViolation, p.name + " answer fails its check: " + *bad);
    return a;
}

namespace {

auto least_label(const GraphGen& g, nat v) -> nat
{
    using K = GraphGen::Kind;
    switch (g.kind()) {
    case K::Finite:
    case K::RayN:
    case K::CycleN:
    case K::CompleteN: {
        FinGraph f = g.materialize();
        std::set<nat> seen{v};
        std::deque<nat> q{v};
        while (! q.empty()) {
            nat x = q.front();
            q.pop_front();
            for (nat y : f.neighbors(x))
                if (seen.insert(y).second)
                    q.push_back(y);
        }
        return *seen.begin();
    }
    case K::Ray:
    case K::TwoWayRay:
    case K::CompleteOmega:
    case K::FullBinaryTree:
    case K::TreeT:
    case K::TreeGraph:
        if (g.has_vertex(0))
            return 0;
        break;
    case K::OmegaCopies: {
        auto [i, x] = unpair(v);
        return pair(i, least_label(g.parts()[0], x));
    }
    case K::DisjointUnion: {
        auto [i, x] = unpair(v);
        return pair(i, least_label(g.parts().at(i), x));
    }
    case K::Family: {
        auto [i, x] = unpair(v);
        return pair(i, least_label(g.family_part(i), x));
    }
    default: break;
    }
    throw Error(Errc::UndecidableWithoutCertificate, "connectivity of " + g.describe());
}

} // namespace

auto d_components(const SpaceName& h) -> CertifiedStream
{
    if (h.space != Space::Gr)
        throw Error(Errc::BadParam, "d_components reads a Gr name");
    const auto& s = h.stream;
    if (s.kind() == CertifiedStream::Kind::EventuallyConstant && s.tail() == 0) {
        FinGraph f = truncate(h, s.prefix().size());
        std::vector<nat> label;
        nat top = f.v.empty() ? 0 : *f.v.rbegin();
        for (nat v = 0; v <= top; ++v)
            label.push_back(v);
        std::set<nat> done;
        for (nat v : f.v) {
            if (done.count(v))
                continue;
            std::deque<nat> q{v};
            done.insert(v);
            while (! q.empty()) {
                nat x = q.front();
                q.pop_front();
                label[x] = v; // f.v is ascending, so v is the least of its component
                for (nat y : f.neighbors(x))
                    if (done.insert(y).second)
                        q.push_back(y);
            }
        }
        return CertifiedStream::pointwise([label](nat v) { return v < label.size() ? label[v] : v; });
    }
    if (! h.denotes || ! h.literal)
        throw Error(Errc::UndecidableWithoutCertificate, "components of an infinite name need a literal denotation");
    GraphGen g = *h.denotes;
    return CertifiedStream::pointwise([g](nat v) { return g.has_vertex(v) ? least_label(g, v) : v; });
}

auto InputView::get() const -> const Instance&
{
    if (strong_)
        throw Error(Errc::HarnessContractViolation, "backward map read the original input in strong mode");
    return *in_;
}

auto compose(const ReductionHarness& h, const Problem& oracle, const Instance& input, std::optional<nat> fuel)
    -> Answer
{
    Instance in = h.forward(input);
    Answer got = oracle_call(oracle, in, fuel);
    InputView view(input, h.strength == ReductionHarness::Strength::Strong);
    return h.backward(view, got);
}

auto sigma1_harness(FinGraph g) -> ReductionHarness
{
    ReductionHarness r;
    r.name = "sigma1";
    r.forward = [g](const Instance& in) {
        if (! in.stream)
            throw Error(Errc::MalformedInstance, "sigma1 reads a stream");
        Instance out;
        out.name = *sigma1_gadget(*in.stream, g).name;
        return out;
    };
    r.backward = [](const InputView&, const Answer& a) { return a; };
    return r;
}

auto lim2_embR_harness() -> ReductionHarness
{
    ReductionHarness r;
    r.name = "lim2-embR";
    r.forward = [](const Instance& in) {
        if (! in.stream)
            throw Error(Errc::MalformedInstance, "lim2 reads a stream");
        Instance out;
        out.name = *lim2_to_embR(*in.stream).name;
        return out;
    };
    r.backward = [](const InputView&, const Answer& a) {
        Answer out;
        out.value = embR_decode(*a.stream);
        return out;
    };
    return r;
}

auto baire_harness(Problem lim2) -> ReductionHarness
{
    ReductionHarness r;
    r.name = "baire";
    r.forward = [](const Instance& in) {
        if (! in.tree)
            throw Error(Errc::MalformedInstance, "C_Baire reads a tree");
        Instance out;
        out.graph = GraphGen::construction(Construction::L1, *in.tree, GraphGen::ray());
        return out;
    };
    r.backward = [lim2](const InputView&, const Answer& a) {
        Answer out;
        out.stream = ray_path_via_lim2(*a.solution, [lim2](const CertifiedStream& q) {
            Instance qi;
            qi.stream = q;
            return *oracle_call(lim2, qi).value;
        });
        return out;
    };
    return r;
}

} // namespace wg
