#ifndef GKM_INVARIANTS_HPP
#define GKM_INVARIANTS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkm/cases.hpp"
#include "gkm/families.hpp"
#include "gkm/fibration.hpp"
#include "gkm/graph.hpp"
#include "gkm/lattice.hpp"

namespace gkm {

/// Nonnegative representative of a clutching number, which is only defined
/// up to sign.
using ClutchingNumber = std::int64_t;

/// Degree-4 part of the equivariant first Pontryagin class at each vertex:
/// the sum of squares of the incident weights. Throws WrongRank unless k = 2.
std::vector<QuadForm> p1_restrictions(const GkmGraph& graph);

/// |N/2| where N xy = p1(right fiber) - p1(left fiber).
ClutchingNumber clutching_number_derived(const FibrationStructure& fib);
/// Same, with the fibers given by a base index per vertex (0 = left).
ClutchingNumber clutching_number_derived(const GkmGraph& graph, const std::vector<VertexId>& vertex_map);
/// Same, straight from the fiber labels without building a graph.
ClutchingNumber clutching_number_derived(const BundleSpec& spec);

/// PA++: 0, PD++: (a-c)(b-d), PA--: 2(ab+cd), TA+-: 2cd, TD+-: a(b-d)+c(b+d).
ClutchingNumber clutching_number_formula(const BundleSpec& spec);

/// m = +-n mod 24.
bool homotopy_equivalent(ClutchingNumber m, ClutchingNumber n);
/// |m| = |n|; also decides diffeomorphism.
bool homeomorphic(ClutchingNumber m, ClutchingNumber n);

enum class RingType { Split, Twisted };
RingType ring_type(ClutchingNumber n);
std::string to_string(RingType t);

/// Constraints on the tails (k,l), (m,n) of a Z^4 extension.
struct ExtensionRelations {
    bool kl_zero = false;
    bool mn_zero = false;
    /// (k,l) = sign * (m,n) when nonzero.
    int kl_equals_mn = 0;

    bool satisfied_by(const Extension& e) const;
    std::string str() const;
};

ExtensionRelations extension_relations(const CaseLabel& family);

struct ExtensionReport {
    CaseLabel family;
    int max_rank = 2;
    ExtensionRelations relations;
    Extension witness;
};

/// Maximum rank of {(1,0,0,0), (0,1,0,0), (a,b,k,l), (c,d,m,n)} over tails
/// in {-1,0,1}^4 satisfying the relations. The witness is the first maximum
/// in the order: fewest nonzero entries, then positions, then + before -.
ExtensionReport max_extension(const CaseLabel& family, const FiberLabels& labels);

/// Largest j such that every j weights at every vertex are independent.
int gkm_k_degree(const GkmGraph& graph);

struct SpecRecord {
    BundleSpec spec;
    ClutchingNumber clutching = 0;
};

struct EnumerationOptions {
    std::int64_t box = 1;
    unsigned workers = 1;
    /// Restrict to these families; empty means all five.
    std::vector<CaseLabel> families;
};

/// Calls `visit` on every valid spec with |a|,|b|,|c|,|d| <= box, in family
/// order then lexicographic label order. Both clutching numbers are computed
/// and compared; throws OracleMismatch on disagreement.
void for_each_spec(const EnumerationOptions& options, const std::function<void(const SpecRecord&)>& visit);

std::vector<SpecRecord> enumerate_specs(const EnumerationOptions& options,
                                        const std::function<bool(const SpecRecord&)>& filter = {});

bool is_petrie_pair(ClutchingNumber m, ClutchingNumber n);

/// Two clutching values m < n that are homotopy equivalent but not
/// homeomorphic, with the number of specs attaining each value and the first
/// such spec in enumeration order.
struct PetrieClassPair {
    ClutchingNumber low = 0;
    ClutchingNumber high = 0;
    std::size_t low_count = 0;
    std::size_t high_count = 0;
    BundleSpec low_example;
    BundleSpec high_example;
};

/// Every Petrie pair of specs is the product of one class pair's spec sets;
/// listing the specs themselves is quadratic in the box volume.
std::vector<PetrieClassPair> find_petrie_pairs(const EnumerationOptions& options);

}  // namespace gkm

#endif  // GKM_INVARIANTS_HPP
