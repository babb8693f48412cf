#ifndef GKM_FIBRATION_HPP
#define GKM_FIBRATION_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gkm/cases.hpp"
#include "gkm/graph.hpp"

namespace gkm {

/// A GKM fibration over the biangle with labels (1,0), (0,1) whose fibers
/// are biangles.
struct FibrationStructure {
    GkmGraph total;
    GkmGraph base;
    std::vector<VertexId> vertex_map;
    /// Base dart covered by each horizontal dart; empty for vertical darts.
    std::vector<std::optional<DartId>> projection;
    Connection base_connection;

    /// Fibers over base vertex 0 ("left") and base vertex 1 ("right"),
    /// each ordered by vertex id.
    std::array<VertexId, 2> left_fiber{};
    std::array<VertexId, 2> right_fiber{};

    /// The label-preserving automorphism exchanging the two vertices of
    /// every fiber.
    std::vector<VertexId> swap_vertex;
    std::vector<DartId> swap_dart;

    bool horizontal(DartId e) const { return projection.at(e).has_value(); }

    /// Restriction used for fibration-compatible connections: horizontal and
    /// vertical darts are preserved and horizontal transport covers the
    /// base connection.
    TransportFilter filter() const;
};

/// Throws NotAFibration listing every violated clause.
FibrationStructure detect_fibration(const GkmGraph& total, const GkmGraph& base,
                                    const std::vector<VertexId>& vertex_map);
FibrationStructure detect_fibration(const GkmGraph& total, const GkmGraph& base,
                                    const std::map<std::string, std::string>& vertex_map);

/// The biangle with labels (1,0) and (0,1) on vertices "p", "q".
GkmGraph standard_base();

bool is_swap_invariant(const FibrationStructure& fib, const Connection& conn);

/// Fibration-compatible connection made swap invariant by conjugating the
/// horizontal transports at the first left-fiber vertex over to its partner.
Connection swap_invariant_connection(const FibrationStructure& fib);

/// All swap-invariant fibration-compatible connections in lexicographic order.
ConnectionSearch swap_invariant_connections(const FibrationStructure& fib, std::size_t limit = 10'000);

struct Classification {
    CaseLabel label;
    FiberLabels labels;

    friend bool operator==(const Classification&, const Classification&) = default;
    friend auto operator<=>(const Classification&, const Classification&) = default;
};

/// Case and fiber parameters for one swap-invariant connection, after the
/// sign normalizations: (1,0)-congruences positive, D-- rewritten as D++ by
/// negating the second fiber edge, and for +- the first congruence positive
/// (otherwise the two fiber edges are exchanged).
Classification classify(const FibrationStructure& fib, const Connection& conn);

/// Classification over every swap-invariant connection. Throws
/// SearchTruncated if the connection count exceeds `limit`.
std::set<Classification> classify_all(const FibrationStructure& fib, std::size_t limit = 10'000);
std::set<Classification> classify_all(const GkmGraph& total, const GkmGraph& base,
                                      const std::vector<VertexId>& vertex_map);

std::set<CaseLabel> case_set(const std::set<Classification>& classes);

}  // namespace gkm

#endif  // GKM_FIBRATION_HPP
