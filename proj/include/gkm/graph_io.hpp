#ifndef GKM_GRAPH_IO_HPP
#define GKM_GRAPH_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gkm/graph.hpp"

namespace gkm {

/// Contents of a graph file. "connection" and "map" are optional blocks.
struct GraphFile {
    GkmGraph graph;
    std::optional<Connection> connection;
    std::optional<std::map<std::string, std::string>> map;
};

/// Throws ParseError naming the line or field at fault.
GraphFile parse_graph(const std::string& text);
GraphFile load_graph(const std::filesystem::path& path);
/// Parses a bare {"total-vertex": "base-vertex"} object, or the "map" block
/// of a graph file.
std::map<std::string, std::string> load_vertex_map(const std::filesystem::path& path);

/// Edges are written in dart-pair order, so reloading gives an equal graph.
std::string dump_graph(const GraphFile& file);

/// Writes to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace gkm

#endif  // GKM_GRAPH_IO_HPP
