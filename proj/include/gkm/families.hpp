#ifndef GKM_FAMILIES_HPP
#define GKM_FAMILIES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gkm/cases.hpp"
#include "gkm/graph.hpp"

namespace gkm {

struct ParamReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Nonzero entries, ad-bc != 0, and the extra independence condition of the
/// case at the right fiber (A+-: ad+bc, D++: cd-ab, D+-: cd+ab).
ParamReport valid_params(const CaseLabel& family, const FiberLabels& labels);
ParamReport valid_params(const CaseLabel& family, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

/// One of the five realizable families with admissible labels.
struct BundleSpec {
    CaseLabel family;
    FiberLabels labels;

    /// Throws InvalidParams if the family is not realizable or the labels
    /// fail valid_params.
    static BundleSpec make(const CaseLabel& family, const FiberLabels& labels);

    std::string str() const;

    friend bool operator==(const BundleSpec&, const BundleSpec&) = default;
    friend auto operator<=>(const BundleSpec&, const BundleSpec&) = default;
};

/// Labels of the right fiber edges: first[0] is the transport of the (a,b)
/// edge along the (1,0) edge, second[0] that of the (c,d) edge.
struct RightFiber {
    std::array<std::int64_t, 2> first;
    std::array<std::int64_t, 2> second;
};

RightFiber right_fiber_labels(const CaseLabel& family, const FiberLabels& labels);

/// Optional Z^4 extension: (k,l) is appended to (a,b), (m,n) to (c,d), and
/// the right fiber edges carry the same tails.
struct Extension {
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t m = 0;
    std::int64_t n = 0;
};

/// Vertices L0, L1 (over base "p") and R0, R1 (over base "q"). Edges:
/// 0: L0-L1 (a,b); 1: L0-L1 (c,d); 2: R0-R1 first; 3: R0-R1 second;
/// 4, 5: the (1,0) edges; 6, 7: the (0,1) edges.
GkmGraph build_case_graph(const CaseLabel& family, const FiberLabels& labels,
                          const std::optional<Extension>& extension = std::nullopt);

/// Graph of a realizable family. Throws InvalidParams.
GkmGraph build_graph(const BundleSpec& spec);

/// Graph of one of the five non-orientable patterns. Throws InvalidParams.
GkmGraph build_nonorientable(const CaseLabel& pattern, const FiberLabels& labels);

/// Base index of each vertex of a generated graph: {0, 0, 1, 1}.
std::vector<VertexId> family_vertex_map();

}  // namespace gkm

#endif  // GKM_FAMILIES_HPP
