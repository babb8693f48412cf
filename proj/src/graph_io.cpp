#include "gkm/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gkm/errors.hpp"

namespace gkm {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        const auto end = std::min<std::size_t>(ex.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
        throw ParseError("line " + std::to_string(line) + ": malformed JSON (" + ex.what() + ")");
    }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> parse_map(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object of vertex names");
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_string()) throw ParseError(where + "." + k + ": expected a vertex name");
        out[k] = v.get<std::string>();
    }
    return out;
}

// Outgoing dart of edge `edge` at vertex v.
DartId dart_at(const GkmGraph& g, std::size_t edge, VertexId v, const std::string& where) {
    if (2 * edge + 1 >= g.dart_count()) throw ParseError(where + ": edge index " + std::to_string(edge) + " out of range");
    if (g.dart(2 * edge).from == v) return 2 * edge;
    if (g.dart(2 * edge + 1).from == v) return 2 * edge + 1;
    throw ParseError(where + ": edge " + std::to_string(edge) + " is not incident to '" + g.name(v) + "'");
}

Connection parse_connection(const GkmGraph& g, const json& j) {
    if (!j.is_array()) throw ParseError("connection: expected an array");
    std::vector<std::vector<DartId>> table(g.dart_count());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "connection[" + std::to_string(i) + "]";
        const auto edge = static_cast<std::size_t>(as_int(field(j[i], "edge", where), where + ".edge"));
        for (const char* dir : {"forward", "backward"}) {
            const std::string w = where + "." + dir;
            const DartId e = 2 * edge + (std::string(dir) == "backward" ? 1 : 0);
            if (e >= g.dart_count()) throw ParseError(w + ": edge index out of range");
            const json& pairs = field(j[i], dir, where);
            if (!pairs.is_array()) throw ParseError(w + ": expected an array of [from, to] pairs");
            std::vector<DartId> row(g.out(g.dart(e).from).size(), g.dart_count());
            for (const auto& p : pairs) {
                if (!p.is_array() || p.size() != 2) throw ParseError(w + ": expected [from, to] pairs");
                const DartId f = dart_at(g, static_cast<std::size_t>(as_int(p[0], w)), g.dart(e).from, w);
                const DartId t = dart_at(g, static_cast<std::size_t>(as_int(p[1], w)), g.dart(e).to, w);
                row[g.slot(f)] = t;
            }
            if (std::count(row.begin(), row.end(), g.dart_count()) != 0) throw ParseError(w + ": incomplete map");
            table[e] = std::move(row);
        }
    }
    for (DartId e = 0; e < g.dart_count(); ++e) {
        if (table[e].empty()) throw ParseError("connection: no entry for edge " + std::to_string(e / 2));
    }
    return Connection(std::move(table));
}

}  // namespace

GraphFile parse_graph(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw ParseError("top level: expected an object");
    if (auto it = j.find("schema"); it != j.end() && (!it->is_number_integer() || it->get<int>() != 1)) {
        throw ParseError("schema: unsupported version");
    }
    const auto k = as_int(field(j, "k", "top level"), "k");
    if (k < 1) throw ParseError("k: must be positive");

    const json& verts = field(j, "vertices", "top level");
    if (!verts.is_array()) throw ParseError("vertices: expected an array");
    std::vector<std::string> names;
    std::map<std::string, VertexId> index;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (!verts[i].is_string()) throw ParseError("vertices[" + std::to_string(i) + "]: expected a string");
        names.push_back(verts[i].get<std::string>());
        if (!index.emplace(names.back(), i).second) throw ParseError("vertices: duplicate id '" + names.back() + "'");
    }

    const json& edges = field(j, "edges", "top level");
    if (!edges.is_array()) throw ParseError("edges: expected an array");
    std::vector<EdgeSpec> specs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        auto vertex = [&](const char* key) {
            const json& v = field(edges[i], key, where);
            if (!v.is_string()) throw ParseError(where + "." + key + ": expected a vertex id");
            auto it = index.find(v.get<std::string>());
            if (it == index.end()) throw ParseError(where + "." + key + ": unknown vertex '" + v.get<std::string>() + "'");
            return it->second;
        };
        const json& label = field(edges[i], "label", where);
        if (!label.is_array()) throw ParseError(where + ".label: expected an integer array");
        std::vector<std::int64_t> entries;
        for (const auto& x : label) entries.push_back(as_int(x, where + ".label"));
        if (entries.size() != static_cast<std::size_t>(k)) {
            throw ParseError(where + ".label: length " + std::to_string(entries.size()) + ", expected k = " + std::to_string(k));
        }
        specs.push_back({vertex("u"), vertex("v"), IntVec(std::move(entries))});
    }

    GraphFile out;
    try {
        out.graph = GkmGraph::from_edges(static_cast<std::size_t>(k), names, specs);
    } catch (const ZeroWeight&) {
        throw ParseError("edges: zero label");
    }
    if (auto it = j.find("connection"); it != j.end()) out.connection = parse_connection(out.graph, *it);
    if (auto it = j.find("map"); it != j.end()) out.map = parse_map(*it, "map");
    return out;
}

GraphFile load_graph(const std::filesystem::path& path) {
    try {
        return parse_graph(read_file(path));
    } catch (const ParseError& ex) {
        throw ParseError(path.string() + ": " + ex.what());
    }
}

std::map<std::string, std::string> load_vertex_map(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        const json j = parse_text(text);
        if (j.is_object() && j.contains("map")) return parse_map(j["map"], "map");
        return parse_map(j, "map");
    } catch (const ParseError& ex) {
        throw ParseError(path.string() + ": " + ex.what());
    }
}

std::string dump_graph(const GraphFile& file) {
    const GkmGraph& g = file.graph;
    json j;
    j["schema"] = 1;
    j["k"] = g.lattice_rank();
    j["vertices"] = g.names();
    json edges = json::array();
    for (DartId e = 0; e < g.dart_count(); e += 2) {
        const auto& r = g.label(e).rep().entries();
        edges.push_back({{"u", g.name(g.dart(e).from)},
                         {"v", g.name(g.dart(e).to)},
                         {"label", std::vector<std::int64_t>(r.begin(), r.end())}});
    }
    j["edges"] = edges;
    if (file.connection) {
        json conn = json::array();
        for (DartId e = 0; e < g.dart_count(); e += 2) {
            json entry{{"edge", e / 2}};
            for (DartId d : {e, e + 1}) {
                json pairs = json::array();
                for (DartId f : g.out(g.dart(d).from)) pairs.push_back({f / 2, file.connection->transport(g, d, f) / 2});
                entry[d == e ? "forward" : "backward"] = pairs;
            }
            conn.push_back(entry);
        }
        j["connection"] = conn;
    }
    if (file.map) j["map"] = *file.map;
    return j.dump(2) + "\n";
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace gkm
