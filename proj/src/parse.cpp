#include <wg/parse.hpp>

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace wg {

namespace {

struct Call {
    std::string head;
    std::vector<std::string> args;
    bool has_args = false;
};

auto trim(std::string s) -> std::string
{
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (! s.empty() && sp(s.back()))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && sp(s[i]))
        ++i;
    return s.substr(i);
}

auto bad(const std::string& text, const std::string& why) -> Error
{
    return Error(Errc::ParseError, why + " in '" + text + "'");
}

// head(arg, arg, ...) with commas split at bracket depth 0
auto split_call(const std::string& raw) -> Call
{
    std::string text = trim(raw);
    Call c;
    std::size_t i = 0;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
    c.head = text.substr(0, i);
    if (i == text.size())
        return c;
    if (text[i] != '(' || text.back() != ')')
        throw bad(text, "expected name(args)");
    c.has_args = true;
    int depth = 0;
    std::string cur;
    for (std::size_t k = i + 1; k + 1 < text.size(); ++k) {
        char ch = text[k];
        if (ch == '(' || ch == '[' || ch == '{')
            ++depth;
        if (ch == ')' || ch == ']' || ch == '}')
            --depth;
        if (depth < 0)
            throw bad(text, "unbalanced brackets");
        if (ch == ',' && depth == 0) {
            c.args.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (depth != 0)
        throw bad(text, "unbalanced brackets");
    if (! trim(cur).empty() || ! c.args.empty())
        c.args.push_back(trim(cur));
    return c;
}

// "k12" -> ("k", 12)
auto sized(const std::string& head, const std::string& letter) -> std::optional<nat>
{
    if (head.size() <= letter.size() || head.compare(0, letter.size(), letter) != 0)
        return std::nullopt;
    std::string digits = head.substr(letter.size());
    for (char ch : digits)
        if (! std::isdigit(static_cast<unsigned char>(ch)))
            return std::nullopt;
    return std::stoull(digits);
}

auto arity(const Call& c, const std::string& text, std::size_t n) -> void
{
    if (c.args.size() != n)
        throw bad(text, c.head + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
}

auto parse_stream(const std::string& text) -> CertifiedStream
{
    try {
        return CertifiedStream::parse(trim(text));
    }
    catch (const Error& e) {
        if (e.code() == Errc::ParseError)
            throw;
        throw Error(Errc::ParseError, e.what());
    }
}

auto read_file(const std::string& path) -> std::optional<std::string>
{
    std::ifstream in(path);
    if (! in)
        return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto tower_from(const nlohmann::json& j) -> Tower
{
    Tower t;
    if (! j.is_object())
        throw Error(Errc::ParseError, "a tower is a JSON object");
    if (j.contains("leaf")) {
        if (! j["leaf"].is_string())
            throw Error(Errc::ParseError, "tower leaf must be a stream spec string");
        t.leaf = parse_stream(j["leaf"].get<std::string>());
        return t;
    }
    for (const char* key : {"prefix", "period"}) {
        if (! j.contains(key))
            continue;
        if (! j[key].is_array())
            throw Error(Errc::ParseError, std::string("tower ") + key + " must be an array");
        auto& dst = std::string(key) == "prefix" ? t.prefix : t.period;
        for (const auto& x : j[key])
            dst.push_back(tower_from(x));
    }
    if (t.period.empty())
        throw Error(Errc::ParseError, "tower level needs a nonempty period");
    return t;
}

} // namespace

auto parse_tree(const std::string& raw) -> TreeGen
{
    std::string text = trim(raw);
    Call c = split_call(text);
    if (c.head == "binary" && ! c.has_args)
        return TreeGen::full_binary();
    if (c.head == "path") {
        arity(c, text, 1);
        return TreeGen::single_path(parse_stream(c.args[0]));
    }
    if (c.head == "cut") {
        arity(c, text, 1);
        try {
            return TreeGen::cut(std::stoull(c.args[0]));
        }
        catch (const std::logic_error&) {
            throw bad(text, "cut needs a depth");
        }
    }
    if (c.head == "finite") {
        arity(c, text, 1);
        std::set<Str> nodes;
        try {
            auto j = nlohmann::json::parse(c.args[0]);
            for (const auto& s : j)
                nodes.insert(s.get<Str>());
        }
        catch (const nlohmann::json::exception& e) {
            throw bad(text, std::string("node list: ") + e.what());
        }
        return TreeGen::finite(std::move(nodes));
    }
    if (c.head == "tunion") {
        arity(c, text, 2);
        return TreeGen::set_union(parse_tree(c.args[0]), parse_tree(c.args[1]));
    }
    if (c.head == "dunion") {
        std::vector<TreeGen> parts;
        for (const auto& a : c.args)
            parts.push_back(parse_tree(a));
        return TreeGen::disjoint_union(std::move(parts));
    }
    throw bad(text, "unknown tree");
}

auto parse_graph(const std::string& raw) -> GraphGen
{
    std::string text = trim(raw);
    if (text.empty())
        throw bad(text, "empty graph spec");
    if (text.front() == '{')
        return GraphGen::finite(fin_from_json(text));
    Call c = split_call(text);
    using K = GraphGen::Kind;
    if (! c.has_args) {
        const std::string& h = c.head;
        if (h == "kw" || h == "komega")
            return GraphGen::complete_omega();
        if (h == "ray" || h == "R")
            return GraphGen::ray();
        if (h == "L")
            return GraphGen::two_way_ray();
        if (h == "fbt")
            return GraphGen::standard(K::FullBinaryTree);
        if (h == "empty")
            return GraphGen::finite(FinGraph{});
        if (auto n = sized(h, "k"))
            return GraphGen::complete_n(*n);
        if (auto n = sized(h, "r"))
            return GraphGen::ray_n(*n);
        if (auto n = sized(h, "c")) {
            if (*n < 3)
                throw bad(text, "cycles need at least 3 vertices");
            return GraphGen::cycle_n(*n);
        }
        if (auto n = sized(h, "t"))
            return GraphGen::standard(K::TreeT, *n);
        if (auto n = sized(h, "f"))
            return GraphGen::standard(K::ForestF, *n);
        throw bad(text, "unknown graph");
    }
    if (c.head == "union" || c.head == "join") {
        if (c.args.empty())
            throw bad(text, c.head + " needs parts");
        std::vector<GraphGen> parts;
        for (const auto& a : c.args)
            parts.push_back(parse_graph(a));
        return c.head == "union" ? GraphGen::disjoint_union(std::move(parts))
                                 : GraphGen::connected_union(std::move(parts));
    }
    if (c.head == "copies") {
        arity(c, text, 1);
        return GraphGen::omega_copies(parse_graph(c.args[0]));
    }
    if (c.head == "l1" || c.head == "l2") {
        arity(c, text, 2);
        return GraphGen::construction(c.head == "l1" ? Construction::L1 : Construction::L2, parse_tree(c.args[0]),
            parse_graph(c.args[1]));
    }
    if (c.head == "tree") {
        arity(c, text, 1);
        return GraphGen::tree_graph(parse_tree(c.args[0]));
    }
    throw bad(text, "unknown graph");
}

auto space_from(const std::string& s) -> Space
{
    for (Space x : {Space::Gr, Space::EGr, Space::Tr, Space::Tr2})
        if (s == space_name(x))
            return x;
    throw Error(Errc::ParseError, "unknown space '" + s + "'");
}

auto name_to_json(const SpaceName& name, nat prefix) -> nlohmann::json
{
    nlohmann::json j;
    j["space"] = space_name(name.space);
    j["stream"] = name.stream.spec();
    j["prefix"] = name.stream.take(prefix);
    return j;
}

auto name_from_json(const nlohmann::json& j) -> SpaceName
{
    try {
        Space space = space_from(j.at("space").get<std::string>());
        std::string spec = j.value("stream", std::string("gen"));
        if (spec != "gen")
            return SpaceName{space, parse_stream(spec), std::nullopt};
        auto pre = j.at("prefix").get<std::vector<nat>>();
        if (space == Space::EGr)
            return pre.empty() ? SpaceName{space, CertifiedStream::constant(0), std::nullopt} : egr_from_codes(pre);
        return SpaceName{space, CertifiedStream::eventually_constant(pre, 0), std::nullopt};
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("name json: ") + e.what());
    }
}

auto parse_host(const std::string& raw) -> SpaceName
{
    std::string text = trim(raw);
    if (text.empty())
        throw Error(Errc::ParseError, "empty host spec");
    if (text.front() != '{') {
        if (auto body = read_file(text))
            text = trim(*body);
    }
    if (text.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception& e) {
            throw Error(Errc::ParseError, std::string("host json: ") + e.what());
        }
        // a whole CLI report carries the name under result.name
        if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains("name"))
            j = j["result"]["name"];
        if (j.is_object() && j.contains("space"))
            return name_from_json(j);
    }
    Space space = Space::Gr;
    if (text.rfind("egr:", 0) == 0) {
        space = Space::EGr;
        text = text.substr(4);
    }
    else if (text.rfind("gr:", 0) == 0) {
        text = text.substr(3);
    }
    if (text.rfind("ec:", 0) == 0 || text.rfind("per:", 0) == 0)
        return SpaceName{space, parse_stream(text), std::nullopt};
    return name_of(space, parse_graph(text));
}

auto parse_pattern(const std::string& raw) -> FinGraph
{
    std::string text = trim(raw);
    if (! text.empty() && text.front() != '{') {
        if (auto body = read_file(text))
            return fin_from_json(*body);
    }
    auto g = parse_graph(text);
    if (g.finiteness() != Finiteness::Finite)
        throw Error(Errc::ParseError, "pattern '" + text + "' is not a finite graph");
    return g.materialize();
}

auto parse_tower(const std::string& text) -> Tower
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("tower json: ") + e.what());
    }
    return tower_from(j);
}

} // namespace wg
