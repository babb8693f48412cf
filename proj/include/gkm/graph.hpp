#ifndef GKM_GRAPH_HPP
#define GKM_GRAPH_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkm/lattice.hpp"

namespace gkm {

using VertexId = std::size_t;
using DartId = std::size_t;

/// One orientation of an edge.
struct Dart {
    VertexId from = 0;
    VertexId to = 0;
    DartId opposite = 0;
    Weight label;
};

/// An undirected labeled edge as it appears in input files.
struct EdgeSpec {
    VertexId u = 0;
    VertexId v = 0;
    IntVec label;
};

/// Labeled graph with paired darts. Construction only checks that ids are in
/// range and labels are nonzero vectors of length k; the GKM axioms are
/// checked by validate().
class GkmGraph {
public:
    GkmGraph() = default;

    /// Edge i becomes darts 2i (u -> v) and 2i+1 (v -> u).
    static GkmGraph from_edges(std::size_t k, std::vector<std::string> vertex_names,
                               const std::vector<EdgeSpec>& edges);

    /// Raw dart list, used to represent malformed inputs.
    static GkmGraph from_darts(std::size_t k, std::vector<std::string> vertex_names,
                               std::vector<Dart> darts);

    std::size_t lattice_rank() const noexcept { return k_; }
    std::size_t vertex_count() const noexcept { return names_.size(); }
    std::size_t dart_count() const noexcept { return darts_.size(); }
    /// Out-degree of vertex 0.
    std::size_t valence() const noexcept;

    const std::string& name(VertexId v) const { return names_.at(v); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<VertexId> find_vertex(const std::string& name) const;

    const Dart& dart(DartId e) const { return darts_.at(e); }
    const std::vector<Dart>& darts() const noexcept { return darts_; }
    const Weight& label(DartId e) const { return darts_.at(e).label; }

    /// Outgoing darts of v in increasing id order.
    const std::vector<DartId>& out(VertexId v) const { return out_.at(v); }
    /// Position of e inside out(dart(e).from).
    std::size_t slot(DartId e) const { return slot_.at(e); }

    /// One dart per edge pair (the one with the smaller id), increasing.
    std::vector<DartId> edge_representatives() const;

    friend bool operator==(const GkmGraph& a, const GkmGraph& b);

private:
    void index();

    std::size_t k_ = 0;
    std::vector<std::string> names_;
    std::vector<Dart> darts_;
    std::vector<std::vector<DartId>> out_;
    std::vector<std::size_t> slot_;
};

enum class ViolationKind { Valence, Pairing, Loop, LabelSymmetry, Independence };

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::optional<VertexId> vertex;
    std::optional<DartId> dart;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks valence, dart pairing, loops, label symmetry and pairwise
/// independence at every vertex.
ValidationReport validate(const GkmGraph& graph);

/// Signed representative of each label, equal on opposite darts.
class Lift {
public:
    /// The canonical representatives.
    static Lift canonical(const GkmGraph& graph);
    /// signs[i] multiplies the canonical label of edge_representatives()[i].
    static Lift from_signs(const GkmGraph& graph, const std::vector<int>& signs);

    const IntVec& operator()(DartId e) const { return lifts_.at(e); }

private:
    std::vector<IntVec> lifts_;
};

/// nabla_e as a table: image[e][slot(f)] = nabla_e(f).
class Connection {
public:
    Connection() = default;
    explicit Connection(std::vector<std::vector<DartId>> image) : image_(std::move(image)) {}

    DartId transport(const GkmGraph& graph, DartId e, DartId f) const {
        return image_.at(e).at(graph.slot(f));
    }
    const std::vector<std::vector<DartId>>& table() const noexcept { return image_; }

    friend bool operator==(const Connection&, const Connection&) = default;
    friend auto operator<=>(const Connection&, const Connection&) = default;

private:
    std::vector<std::vector<DartId>> image_;
};

/// Builds a connection from transports along edge_representatives(); the
/// opposite darts get the inverse maps.
Connection assemble_connection(const GkmGraph& graph, const std::vector<std::vector<DartId>>& rows);

/// Empty when nabla_e e = ebar and nabla_ebar = nabla_e^{-1} hold everywhere.
std::vector<std::string> connection_axiom_violations(const GkmGraph& graph, const Connection& conn);

/// Witness for lift(nabla_e f) = eps*lift(f) + c*lift(e), if any.
std::optional<CongruenceWitness> transport_witness(const GkmGraph& graph, const Lift& lift,
                                                   DartId e, DartId f, DartId image);

bool is_compatible(const GkmGraph& graph, const Connection& conn, const Lift& lift);

/// Extra per-dart admissibility test used by the fibration search:
/// returns false to forbid nabla_e(f) = image.
using TransportFilter = std::function<bool(DartId e, DartId f, DartId image)>;

struct ConnectionSearch {
    std::vector<Connection> connections;
    bool truncated = false;
};

/// Enumerates compatible connections in lexicographic order (edge pairs by
/// dart id, bijections lexicographically), stopping after `limit`.
/// Throws NoConnection if there is none.
ConnectionSearch compatible_connections(const GkmGraph& graph, std::size_t limit,
                                        const TransportFilter& filter = {});

/// Per edge pair, every admissible bijection nabla_e for the representative
/// dart e. Connections are exactly the products of these choices.
std::vector<std::vector<std::vector<DartId>>> transport_options(const GkmGraph& graph,
                                                                const TransportFilter& filter = {});

/// -prod eps_i over the darts at i(e) other than e.
int eta(const GkmGraph& graph, const Connection& conn, const Lift& lift, DartId e);

/// eta extends to a vertex potential s with eta(e) = s(i(e)) s(t(e)).
/// Throws InconsistentEta if eta(e) != eta(ebar) for some pair.
bool orientable(const GkmGraph& graph, const Connection& conn, const Lift& lift);

struct SearchCaps {
    std::size_t connections = 10'000;
    std::size_t lifts = std::size_t{1} << 16;
};

/// Existence of a (lift, compatible connection) pair for which the graph is
/// orientable. Decided edge-locally: for a fixed connection eta only changes
/// by a coboundary under a change of lift, and eta on an edge pair depends
/// only on the transport along that pair.
bool orientable_any(const GkmGraph& graph);

/// Literal search over all lifts and all compatible connections. Throws
/// SearchTruncated when a cap is hit before a positive answer is found.
bool orientable_exhaustive(const GkmGraph& graph, const SearchCaps& caps = {});

}  // namespace gkm

#endif  // GKM_GRAPH_HPP
