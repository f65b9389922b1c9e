#include <dcsp/io.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dcsp
{

MarkedDigraph read_digraph_text(std::istream & in)
{
    std::string line;
    int n = -1, lineno = 0;
    std::vector<Arc> arcs;
    std::vector<int> marks;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tag;
        if (! (ls >> tag))
            continue;
        auto fail = [&](const std::string & what) {
            throw parse_error("line " + std::to_string(lineno) + ": " + what);
        };
        if (tag == "n") {
            if (n != -1)
                fail("duplicate n line");
            if (! (ls >> n) || n < 0)
                fail("expected nonnegative vertex count");
        }
        else if (tag == "e") {
            int u, v;
            if (n == -1)
                fail("arc before n line");
            if (! (ls >> u >> v))
                fail("expected 'e <u> <v>'");
            if (u < 0 || u >= n || v < 0 || v >= n)
                fail("arc endpoint out of range");
            arcs.emplace_back(u, v);
        }
        else if (tag == "u") {
            int v;
            if (n == -1)
                fail("mark before n line");
            if (! (ls >> v))
                fail("expected 'u <v>'");
            if (v < 0 || v >= n)
                fail("mark out of range");
            marks.push_back(v);
        }
        else
            fail("unknown line tag '" + tag + "'");
    }
    if (n == -1)
        throw parse_error("missing 'n <N>' line");
    return MarkedDigraph(Digraph(n, std::move(arcs)), std::move(marks));
}

MarkedDigraph read_digraph_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    return read_digraph_text(in);
}

void write_digraph_text(std::ostream & out, const MarkedDigraph & d)
{
    out << "n " << d.base.size() << "\n";
    for (auto [u, v] : d.base.arcs())
        out << "e " << u << " " << v << "\n";
    for (int v : d.marks)
        out << "u " << v << "\n";
}

std::string digraph_to_text(const MarkedDigraph & d)
{
    std::ostringstream s;
    write_digraph_text(s, d);
    return s.str();
}

std::string digraph_to_json(const MarkedDigraph & d)
{
    nlohmann::ordered_json j;
    j["n"] = d.base.size();
    auto arr = nlohmann::ordered_json::array();
    for (auto [u, v] : d.base.arcs())
        arr.push_back({u, v});
    j["arcs"] = arr;
    j["marks"] = d.marks;
    return j.dump();
}

MarkedDigraph digraph_from_json(const std::string & text)
{
    auto j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<Arc> arcs;
    for (const auto & a : j.at("arcs"))
        arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
    std::vector<int> marks;
    if (j.contains("marks"))
        marks = j["marks"].get<std::vector<int>>();
    return MarkedDigraph(Digraph(n, std::move(arcs)), std::move(marks));
}

std::string digraph_to_dot(const MarkedDigraph & d)
{
    std::ostringstream s;
    s << "digraph G {\n";
    for (int v = 0; v < d.base.size(); ++v) {
        s << "  " << v;
        if (d.marked(v))
            s << " [style=filled, fillcolor=black, fontcolor=white]";
        s << ";\n";
    }
    for (auto [u, v] : d.base.arcs())
        s << "  " << u << " -> " << v << ";\n";
    s << "}\n";
    return s.str();
}

}
