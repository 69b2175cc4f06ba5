#include <wg/parse.hpp>

#include "suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using json = nlohmann::json;
using namespace wg;

namespace {

struct Opts {
    std::string host, pattern, period, in, tree_spec, tower, graph, cn;
    std::vector<std::string> trees;
    std::string mode = "s", solver, gadget, problem, harness, suite, kind, out;
    std::string format = "json";
    nat fuel = 0, n = 10, stages = 60, seed = 0;
    bool f = false, dot = false, weak = false, certified = false;
};

// exit 2 is reserved for "not settled yet": more fuel or a certificate might help
auto unsettled(Errc c) -> bool
{
    return c == Errc::FuelExhausted || c == Errc::UndecidableWithoutCertificate || c == Errc::PatternNeverSeen;
}

auto graph_json(const FinGraph& g) -> json { return json::parse(to_json(g)); }

auto embedding_json(const Embedding& e) -> json
{
    json out = json::array();
    for (auto [p, h] : e)
        out.push_back({p, h});
    return out;
}

auto solution_json(const SolutionStream& s, nat n) -> json
{
    auto pre = read_solution(s, n);
    json j;
    j["copy"] = graph_json(pre.copy);
    j["map"] = embedding_json(pre.map);
    j["vertices"] = pre.copy.vertex_list();
    j["cert"] = s.cert;
    return j;
}

auto answer_json(const Answer& a, nat n) -> json
{
    json j = json::object();
    if (a.value)
        j["value"] = *a.value;
    if (a.stream)
        j["stream"] = a.stream->take(n);
    if (a.solution)
        j["solution"] = solution_json(*a.solution, n);
    return j;
}

auto need(const std::string& v, const char* flag) -> const std::string&
{
    if (v.empty())
        throw Error(Errc::BadParam, std::string("missing ") + flag);
    return v;
}

auto stream_arg(const std::string& text) -> CertifiedStream
{
    try {
        return CertifiedStream::parse(text);
    }
    catch (const Error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

// the structural graph behind a host, for solvers that read the algebra
auto host_graph(const SpaceName& h) -> const GraphGen&
{
    if (! h.denotes)
        throw Error(Errc::CertificateMissing, "this solver needs a host given as a graph spec");
    return *h.denotes;
}

auto instance_from(const Opts& o) -> Instance
{
    Instance in;
    if (! o.in.empty())
        in.stream = stream_arg(o.in);
    if (! o.tower.empty())
        in.tower = parse_tower(o.tower);
    if (! o.tree_spec.empty())
        in.tree = parse_tree(o.tree_spec);
    if (! o.host.empty())
        in.name = parse_host(o.host);
    if (! o.graph.empty())
        in.graph = parse_graph(o.graph);
    if (! o.cn.empty())
        in.cn = CnInstance{stream_arg(o.cn), {}};
    return in;
}

auto problem_from(const Opts& o) -> Problem
{
    const std::string& p = need(o.problem, "--problem");
    if (p == "contains" || p == "contains-is")
        return contains_problem(parse_pattern(need(o.pattern, "--pattern")), p == "contains-is");
    if (p == "embR")
        return emb_ray_problem(problem("lim2-fueled"));
    if (p == "find-ray")
        return find_ray_problem();
    return problem(p);
}

auto cmd_validate(const Opts& o, json& r) -> int
{
    auto h = parse_host(need(o.host, "--host"));
    r["space"] = space_name(h.space);
    auto v = validate_name(h, o.fuel);
    r["valid"] = ! v;
    if (v)
        r["violation"] = {{"index", v->index}, {"rule", v->rule}};
    return v ? 1 : 0;
}

auto cmd_convert(const Opts& o, json& r) -> int
{
    auto h = parse_host(need(o.host, "--host"));
    if (o.f) {
        if (h.space != Space::EGr)
            throw Error(Errc::BadParam, "--f converts an EGr name");
        auto f = f_convert(h);
        f.run_to(o.stages);
        auto tr = f.trace();
        r["name"] = name_to_json(f.p, o.n);
        r["graph"] = graph_json(truncate(f.p, o.fuel));
        r["stages"] = f.stages();
        r["injuries"] = tr.injuries.size();
        json iota = json::array();
        for (auto [v, a] : tr.iota.back())
            iota.push_back({v, a});
        r["iota"] = iota;
        return 0;
    }
    if (h.space != Space::Gr)
        throw Error(Errc::BadParam, "a Gr name converts to EGr directly; EGr to Gr needs --f");
    r["name"] = name_to_json(gr_to_egr(h), o.n);
    return 0;
}

auto cmd_truncate(const Opts& o, json& r) -> int
{
    auto g = truncate(parse_host(need(o.host, "--host")), o.fuel);
    if (o.dot) {
        std::cout << to_dot(g);
        return -1; // raw output, no report
    }
    r["graph"] = graph_json(g);
    return 0;
}

auto cmd_decide(const Opts& o, json& r) -> int
{
    auto g = parse_pattern(need(o.pattern, "--pattern"));
    auto h = parse_host(need(o.host, "--host"));
    if (o.mode != "s" && o.mode != "is")
        throw Error(Errc::BadParam, "--mode is s or is");
    bool induced = o.mode == "is";
    if (o.certified) {
        bool holds;
        if (h.denotes)
            holds = structural_contains(g, *h.denotes, induced);
        else if (induced)
            holds = decide_is_egr_noncomplete(g, h);
        else
            throw Error(Errc::CertificateMissing, "--certified needs a structural host or --mode is");
        r["verdict"] = holds ? "Found" : "Refuted";
        return 0;
    }
    auto v = semidecide_s(g, h, induced, o.fuel);
    r["verdict"] = verdict_name(v.kind);
    r["witness"] = embedding_json(v.witness);
    r["reason"] = v.reason;
    r["fuel_spent"] = v.fuel_spent;
    return v.kind == Verdict::Kind::Unknown ? 2 : 0;
}

auto components_of(const std::string& spec) -> std::vector<FinGraph>
{
    std::vector<FinGraph> out;
    if (spec.empty())
        return out;
    auto g = parse_pattern(spec);
    for (const auto& c : components(g))
        out.push_back(g.induced(c));
    return out;
}

auto suffix_nat(const std::string& s, std::size_t from) -> nat
{
    try {
        std::size_t used = 0;
        nat v = std::stoull(s.substr(from), &used);
        if (used + from == s.size())
            return v;
    }
    catch (const std::logic_error&) {
    }
    throw Error(Errc::ParseError, "bad solver '" + s + "'");
}

auto cmd_search(const Opts& o, json& r) -> int
{
    const std::string& s = need(o.solver, "--solver");
    auto h = parse_host(need(o.host, "--host"));
    r["solver"] = s;
    auto emit = [&](const SolutionStream& sol) {
        r["solution"] = solution_json(sol, o.n);
        return 0;
    };
    if (s == "finite") {
        auto sol = find_s_finite(parse_pattern(need(o.pattern, "--pattern")), h, o.fuel);
        if (! sol)
            throw Error(Errc::PatternNeverSeen, "no copy within fuel " + std::to_string(o.fuel));
        return emit(*sol);
    }
    if (s == "is-cn") {
        // the member search runs on the cn problem's own budget
        auto cn = [](const CnInstance& a) {
            Instance in;
            in.cn = a;
            return *oracle_call(problem("cn"), in).value;
        };
        return emit(find_is_via_cn(parse_pattern(need(o.pattern, "--pattern")), h, cn));
    }
    if (s == "components") {
        ComponentCert c{components_of(need(o.pattern, "--pattern")), components_of(o.period)};
        return emit(find_s_components(c, h, o.fuel));
    }
    if (s == "t3")
        return emit(find_t3(host_graph(h), o.fuel));
    if (s.rfind("f2k2:", 0) == 0)
        return emit(find_f2k2(host_graph(h), suffix_nat(s, 5), o.fuel));
    if (s.rfind("restrict:", 0) == 0) {
        auto out = restrict_to_connected(h, suffix_nat(s, 9), o.fuel);
        r["name"] = name_to_json(out, o.n);
        r["graph"] = graph_json(truncate(out, o.fuel));
        return 0;
    }
    CertifiedStream ray = CertifiedStream::constant(0);
    if (s == "embR") {
        nat fuel = o.fuel;
        auto lim2 = [fuel](const CertifiedStream& q) {
            Instance in;
            in.stream = q;
            return *oracle_call(problem("lim2-fueled"), in, fuel).value;
        };
        ray = emb_ray_r(h, lim2, o.fuel);
    }
    else if (s.rfind("rayfollow:", 0) == 0) {
        std::string k = s.substr(10);
        RayKind kind;
        if (k == "L")
            kind = {RayKind::Kind::TwoWayRay, 0};
        else if (k == "fbt")
            kind = {RayKind::Kind::FullBinaryTree, 0};
        else if (k.rfind("cycle", 0) == 0)
            kind = {RayKind::Kind::CycleTailRay, suffix_nat(k, 5)};
        else if (k.rfind("complete", 0) == 0)
            kind = {RayKind::Kind::CompleteTailRay, suffix_nat(k, 8)};
        else
            throw Error(Errc::ParseError, "bad solver '" + s + "'");
        ray = ray_follow(kind, h, o.fuel);
    }
    else {
        throw Error(Errc::ParseError, "unknown solver '" + s + "'");
    }
    r["vertices"] = ray.take(o.n);
    return 0;
}

auto cmd_gadget(const Opts& o, json& r) -> int
{
    const std::string& g = need(o.gadget, "--name");
    r["gadget"] = g;
    GadgetOutput out;
    if (g == "sigma1" || g == "sigma2") {
        auto p = stream_arg(need(o.in, "--in"));
        auto pat = parse_pattern(need(o.pattern, "--pattern"));
        out = g == "sigma1" ? sigma1_gadget(p, pat) : sigma2_gadget(p, pat);
    }
    else if (g == "acc") {
        out = acc_gadget(stream_arg(need(o.in, "--in")));
    }
    else if (g == "lim2embR") {
        out = lim2_to_embR(stream_arg(need(o.in, "--in")));
    }
    else if (g == "forests") {
        auto f = forests_base(stream_arg(need(o.in, "--in")));
        out.graph = f.graph();
        r["bit"] = f.bit;
        r["bit_t"] = f.bit_t;
    }
    else if (g == "sigma11") {
        if (o.trees.empty())
            throw Error(Errc::BadParam, "missing --tree");
        std::vector<TreeGen> ts;
        for (const auto& t : o.trees)
            ts.push_back(parse_tree(t));
        out = sigma11_choice_gadget(ts);
    }
    else {
        throw Error(Errc::BadParam, "unknown gadget '" + g + "'");
    }
    r["hint"] = out.hint;
    if (out.name) {
        r["name"] = name_to_json(*out.name, o.n);
        r["graph"] = graph_json(truncate(*out.name, o.fuel));
    }
    if (out.graph) {
        r["describe"] = out.graph->describe();
        r["graph"] = graph_json(out.graph->truncate(o.n));
    }
    return 0;
}

auto cmd_oracle(const Opts& o, json& r) -> int
{
    auto p = problem_from(o);
    r["problem"] = p.name;
    r["answer"] = answer_json(oracle_call(p, instance_from(o), o.fuel), o.n);
    return 0;
}

auto cmd_compose(const Opts& o, json& r) -> int
{
    const std::string& name = need(o.harness, "--harness");
    ReductionHarness h;
    Problem oracle;
    if (name == "sigma1") {
        auto g = parse_pattern(need(o.pattern, "--pattern"));
        h = sigma1_harness(g);
        oracle = contains_problem(g, false);
    }
    else if (name == "lim2-embR") {
        h = lim2_embR_harness();
        oracle = emb_ray_problem(problem("lim2-fueled"));
    }
    else if (name == "baire") {
        h = baire_harness(problem("lim2"));
        oracle = find_ray_problem();
    }
    else {
        throw Error(Errc::BadParam, "unknown harness '" + name + "'");
    }
    if (o.weak)
        h.strength = ReductionHarness::Strength::Weak;
    r["harness"] = h.name;
    r["oracle"] = oracle.name;
    r["answer"] = answer_json(compose(h, oracle, instance_from(o), o.fuel), o.n);
    return 0;
}

auto cmd_suite(const Opts& o, json& r) -> int
{
    std::vector<std::string> ids;
    if (need(o.suite, "suite id") == "all")
        ids = acceptance::suite_ids();
    else
        ids = {o.suite};
    json rows = json::array();
    bool ok = true;
    for (const auto& id : ids) {
        auto res = acceptance::run_suite(id, o.seed);
        rows.push_back({{"id", res.id}, {"pass", res.pass}, {"checks", res.checks}, {"detail", res.detail},
            {"digest", res.digest}});
        ok = ok && res.pass;
    }
    r["seed"] = o.seed;
    r["suites"] = rows;
    return ok ? 0 : 1;
}

auto cmd_export(const Opts& o, json& r) -> int
{
    if (o.kind != "dot" && o.kind != "json")
        throw Error(Errc::BadParam, "export kind is dot or json");
    const std::string& spec = need(o.graph, "--graph");
    FinGraph g;
    bool named = spec.rfind("egr:", 0) == 0 || spec.rfind("gr:", 0) == 0;
    if (named) {
        g = truncate(parse_host(spec), o.fuel);
    }
    else {
        auto gg = parse_graph(spec);
        auto size = gg.size();
        g = size && *size <= o.fuel ? gg.materialize() : gg.truncate(o.fuel);
    }
    std::string body = o.kind == "dot" ? to_dot(g) : to_json(g) + "\n";
    if (o.out.empty()) {
        std::cout << body;
        return -1;
    }
    std::ofstream f(o.out);
    if (! f)
        throw Error(Errc::BadParam, "cannot write " + o.out);
    f << body;
    r["artifacts"] = json::array({o.out});
    r["vertices"] = g.size();
    r["edges"] = g.e.size();
    return 0;
}

void print_text(const json& j, const std::string& path)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_text(v, path.empty() ? k : path + "." + k);
        return;
    }
    std::cout << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

auto default_fuel() -> nat
{
    if (const char* env = std::getenv("WG_FUEL_DEFAULT")) {
        try {
            return std::stoull(env);
        }
        catch (const std::logic_error&) {
            std::cerr << "ignoring WG_FUEL_DEFAULT=" << env << "\n";
        }
    }
    return 1000;
}

} // namespace

int main(int argc, char** argv)
{
    Opts o;
    o.fuel = default_fuel();
    CLI::App app{"wg: computable graph problems on certified streams"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto add_host = [&](CLI::App* c, bool required = true) {
        auto* opt = c->add_option("--host", o.host, "egr:<graph>, gr:<graph>, stream spec or JSON name");
        if (required)
            opt->required();
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--fuel", o.fuel, "step budget (WG_FUEL_DEFAULT, else 1000)");
        c->add_option("--n", o.n, "stream positions to print");
    };

    auto* validate = app.add_subcommand("validate", "check a name against its space");
    add_host(validate);
    add_common(validate);

    auto* convert = app.add_subcommand("convert", "Gr to EGr, or EGr to Gr with --f");
    add_host(convert);
    add_common(convert);
    convert->add_flag("--f", o.f, "run the f-conversion on an EGr name");
    convert->add_option("--stages", o.stages, "f-conversion stages to run");

    auto* trunc = app.add_subcommand("truncate", "the finite graph read from a name");
    add_host(trunc);
    add_common(trunc);
    trunc->add_flag("--dot", o.dot, "print DOT instead of a report");

    auto* decide = app.add_subcommand("decide", "is the pattern a subgraph of the host");
    add_host(decide);
    add_common(decide);
    decide->add_option("--pattern", o.pattern, "finite graph spec, JSON or JSON file")->required();
    decide->add_option("--mode", o.mode, "s or is")->check(CLI::IsMember({"s", "is"}));
    decide->add_flag("--certified", o.certified, "answer from the host's certificate");

    auto* search = app.add_subcommand("search", "find a copy of a pattern");
    add_host(search);
    add_common(search);
    search->add_option("--solver", o.solver,
              "finite, is-cn, components, rayfollow:L|cycle<n>|complete<n>|fbt, embR, t3, f2k2:<k>, restrict:<v>")
        ->required();
    search->add_option("--pattern", o.pattern, "finite pattern; for components, the prefix parts");
    search->add_option("--period", o.period, "components: the parts repeated forever");

    auto* gadget = app.add_subcommand("gadget", "build a reduction gadget");
    add_common(gadget);
    gadget->add_option("--name", o.gadget, "sigma1, sigma2, forests, acc, lim2embR, sigma11")->required();
    gadget->add_option("--in", o.in, "input stream spec");
    gadget->add_option("--pattern", o.pattern, "the finite graph G");
    gadget->add_option("--tree", o.trees, "sigma11: one tree spec per use");

    auto add_instance = [&](CLI::App* c) {
        c->add_option("--in", o.in, "stream spec");
        c->add_option("--tower", o.tower, "limit tower JSON");
        c->add_option("--tree", o.tree_spec, "tree spec");
        add_host(c, false);
        c->add_option("--graph", o.graph, "graph spec");
        c->add_option("--cn", o.cn, "removal stream for choice on N");
        c->add_option("--pattern", o.pattern, "finite graph for contains problems");
    };
    auto* oracle = app.add_subcommand("oracle", "solve one problem instance");
    add_common(oracle);
    add_instance(oracle);
    oracle->add_option("--problem", o.problem, "lpo, lpo1, lpo2, lim, lim2, lim2-fueled, cn, wf, ccantor, cbaire, "
                                              "contains, contains-is, embR, find-ray")
        ->required();

    auto* comp = app.add_subcommand("compose", "run a reduction against its oracle");
    add_common(comp);
    add_instance(comp);
    comp->add_option("--harness", o.harness, "sigma1, lim2-embR, baire")->required();
    comp->add_flag("--weak", o.weak, "let the backward map see the input");

    auto* suite = app.add_subcommand("suite", "run an acceptance suite");
    suite->add_option("id", o.suite, "suite id or all")->required();
    suite->add_option("--seed", o.seed, "random seed");

    auto* exp = app.add_subcommand("export", "write a truncation as DOT or JSON");
    exp->add_option("kind", o.kind, "dot or json")->required()->check(CLI::IsMember({"dot", "json"}));
    exp->add_option("--graph", o.graph, "graph spec, or egr:/gr: host")->required();
    exp->add_option("--fuel", o.fuel, "vertices (graph) or positions (host) to read");
    exp->add_option("--out", o.out, "output file");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string echo;
    for (int i = 1; i < argc; ++i)
        echo += (i > 1 ? " " : "") + std::string(argv[i]);
    json report;
    report["command"] = echo;
    json result = json::object();
    int code = 1;
    auto* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    try {
        if (name == "validate")
            code = cmd_validate(o, result);
        else if (name == "convert")
            code = cmd_convert(o, result);
        else if (name == "truncate")
            code = cmd_truncate(o, result);
        else if (name == "decide")
            code = cmd_decide(o, result);
        else if (name == "search")
            code = cmd_search(o, result);
        else if (name == "gadget")
            code = cmd_gadget(o, result);
        else if (name == "oracle")
            code = cmd_oracle(o, result);
        else if (name == "compose")
            code = cmd_compose(o, result);
        else if (name == "suite")
            code = cmd_suite(o, result);
        else if (name == "export")
            code = cmd_export(o, result);
    }
    catch (const Error& e) {
        code = unsettled(e.code()) ? 2 : 1;
        report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        std::cerr << "wg " << name << ": " << e.what() << "\n";
    }
    catch (const std::exception& e) {
        code = 1;
        report["error"] = {{"code", "Internal"}, {"message", e.what()}};
        std::cerr << "wg " << name << ": " << e.what() << "\n";
    }
    if (code == -1)
        return 0;
    report["result"] = result;
    report["fuel"] = o.fuel;
    report["exit"] = code;
    if (o.format == "text")
        print_text(report, "");
    else
        std::cout << report.dump(2) << "\n";
    return code;
}
