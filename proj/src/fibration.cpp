#include "gkm/fibration.hpp"

#include <algorithm>
#include <limits>

#include "gkm/errors.hpp"

namespace gkm {

namespace {

const IntVec kX{1, 0};
const IntVec kY{0, 1};

DartId edge_of(const GkmGraph& g, DartId e) { return std::min(e, g.dart(e).opposite); }

std::string vname(const GkmGraph& g, VertexId v) { return "'" + g.name(v) + "'"; }

}  // namespace

GkmGraph standard_base() {
    return GkmGraph::from_edges(2, {"p", "q"}, {{0, 1, kX}, {0, 1, kY}});
}

TransportFilter FibrationStructure::filter() const {
    return [this](DartId e, DartId f, DartId image) {
        if (horizontal(f) != horizontal(image)) return false;
        if (horizontal(e) && horizontal(f)) {
            return *projection[image] == base_connection.transport(base, *projection[e], *projection[f]);
        }
        return true;
    };
}

FibrationStructure detect_fibration(const GkmGraph& total, const GkmGraph& base,
                                    const std::vector<VertexId>& vertex_map) {
    std::vector<std::string> bad;
    auto fail = [&]() { throw NotAFibration(std::move(bad)); };

    if (const auto r = validate(total); !r.ok()) bad.push_back("total graph is not a GKM graph: " + r.violations.front().message);
    if (const auto r = validate(base); !r.ok()) bad.push_back("base graph is not a GKM graph: " + r.violations.front().message);
    if (!bad.empty()) fail();

    if (base.lattice_rank() != 2 || base.vertex_count() != 2 || base.dart_count() != 4) {
        bad.push_back("base must be a biangle over Z^2");
        fail();
    }
    {
        std::vector<IntVec> labels{base.label(0).rep(), base.label(2).rep()};
        std::sort(labels.begin(), labels.end());
        if (labels != std::vector<IntVec>{kY, kX}) {
            bad.push_back("base biangle must carry the labels (1,0) and (0,1)");
            fail();
        }
    }
    if (total.lattice_rank() != base.lattice_rank()) {
        bad.push_back("total and base graphs live in lattices of different rank");
        fail();
    }
    if (vertex_map.size() != total.vertex_count()) {
        bad.push_back("vertex map covers " + std::to_string(vertex_map.size()) + " of " +
                      std::to_string(total.vertex_count()) + " vertices");
        fail();
    }
    for (VertexId v = 0; v < vertex_map.size(); ++v) {
        if (vertex_map[v] >= base.vertex_count()) {
            bad.push_back("vertex " + vname(total, v) + " maps outside the base");
            fail();
        }
    }

    FibrationStructure fib;
    fib.total = total;
    fib.base = base;
    fib.vertex_map = vertex_map;
    fib.projection.assign(total.dart_count(), std::nullopt);
    fib.base_connection = compatible_connections(base, 1).connections.front();

    // horizontal darts and clause (a): labels agree with the covered base dart
    for (DartId e = 0; e < total.dart_count(); ++e) {
        const Dart& d = total.dart(e);
        const VertexId p = vertex_map[d.from];
        const VertexId q = vertex_map[d.to];
        if (p == q) continue;
        for (DartId b : base.out(p)) {
            if (base.dart(b).to == q && base.label(b) == d.label) fib.projection[e] = b;
        }
        if (!fib.projection[e]) {
            bad.push_back("horizontal dart " + std::to_string(e) + " from " + vname(total, d.from) +
                          " has label " + d.label.rep().str() + " matching no base edge");
        }
    }
    if (!bad.empty()) fail();

    if (total.valence() != base.valence() + 2) {
        bad.push_back("total valence " + std::to_string(total.valence()) + " is not base valence " +
                      std::to_string(base.valence()) + " plus the biangle fiber valence 2");
    }

    // graph fibration: H_v -> B_{pi(v)} is bijective
    for (VertexId v = 0; v < total.vertex_count(); ++v) {
        std::vector<DartId> images;
        std::size_t vertical = 0;
        for (DartId e : total.out(v)) {
            if (fib.projection[e]) images.push_back(*fib.projection[e]);
            else ++vertical;
        }
        std::sort(images.begin(), images.end());
        if (images != base.out(vertex_map[v])) {
            bad.push_back("horizontal darts at " + vname(total, v) + " do not map bijectively onto the base star");
        }
        if (vertical != 2) {
            bad.push_back("vertex " + vname(total, v) + " has " + std::to_string(vertical) +
                          " vertical darts; a biangle fiber needs 2");
        }
    }
    if (!bad.empty()) fail();

    // fibers are biangles
    std::array<std::vector<VertexId>, 2> fibers;
    for (VertexId v = 0; v < total.vertex_count(); ++v) fibers[vertex_map[v]].push_back(v);
    for (std::size_t p = 0; p < 2; ++p) {
        if (fibers[p].size() != 2) {
            bad.push_back("fiber over base vertex '" + base.name(p) + "' has " + std::to_string(fibers[p].size()) +
                          " vertices; a biangle fiber needs 2");
        }
    }
    if (!bad.empty()) fail();
    for (std::size_t p = 0; p < 2; ++p) {
        for (VertexId v : fibers[p]) {
            const VertexId other = fibers[p][0] == v ? fibers[p][1] : fibers[p][0];
            for (DartId e : total.out(v)) {
                if (!fib.projection[e] && total.dart(e).to != other) {
                    bad.push_back("vertical dart " + std::to_string(e) + " leaves its fiber");
                }
            }
        }
    }
    if (!bad.empty()) fail();
    fib.left_fiber = {fibers[0][0], fibers[0][1]};
    fib.right_fiber = {fibers[1][0], fibers[1][1]};

    // clauses (b), (c): a connection respecting the splitting and covering the base
    try {
        compatible_connections(total, 1, fib.filter());
    } catch (const NoConnection& ex) {
        bad.push_back(std::string("no connection respects the horizontal/vertical splitting and covers the base: ") +
                      ex.what());
        fail();
    }

    fib.swap_vertex.resize(total.vertex_count());
    for (const auto& f : fibers) {
        fib.swap_vertex[f[0]] = f[1];
        fib.swap_vertex[f[1]] = f[0];
    }
    fib.swap_dart.resize(total.dart_count());
    for (DartId e = 0; e < total.dart_count(); ++e) {
        const Dart& d = total.dart(e);
        std::vector<DartId> hits;
        for (DartId g : total.out(fib.swap_vertex[d.from])) {
            if (total.dart(g).to == fib.swap_vertex[d.to] && total.label(g) == d.label) hits.push_back(g);
        }
        if (hits.size() != 1) {
            bad.push_back("no label-preserving fiber swap maps dart " + std::to_string(e));
            fail();
        }
        fib.swap_dart[e] = hits.front();
    }
    return fib;
}

FibrationStructure detect_fibration(const GkmGraph& total, const GkmGraph& base,
                                    const std::map<std::string, std::string>& vertex_map) {
    std::vector<VertexId> map(total.vertex_count());
    for (VertexId v = 0; v < total.vertex_count(); ++v) {
        auto it = vertex_map.find(total.name(v));
        if (it == vertex_map.end()) throw NotAFibration({"vertex map has no entry for '" + total.name(v) + "'"});
        const auto target = base.find_vertex(it->second);
        if (!target) throw NotAFibration({"vertex map sends '" + total.name(v) + "' to unknown base vertex '" + it->second + "'"});
        map[v] = *target;
    }
    return detect_fibration(total, base, map);
}

bool is_swap_invariant(const FibrationStructure& fib, const Connection& conn) {
    const auto& g = fib.total;
    for (DartId e = 0; e < g.dart_count(); ++e) {
        for (DartId f : g.out(g.dart(e).from)) {
            const DartId lhs = conn.transport(g, fib.swap_dart[e], fib.swap_dart[f]);
            const DartId rhs = fib.swap_dart[conn.transport(g, e, f)];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

namespace {

// nabla_{swap e} = swap o nabla_e o swap, as a row over out(i(swap e)).
std::vector<DartId> conjugated_row(const FibrationStructure& fib, const Connection& conn, DartId e) {
    const auto& g = fib.total;
    const DartId se = fib.swap_dart[e];
    std::vector<DartId> row(g.out(g.dart(se).from).size());
    for (DartId f : g.out(g.dart(e).from)) {
        row[g.slot(fib.swap_dart[f])] = fib.swap_dart[conn.transport(g, e, f)];
    }
    return row;
}

void check_connection(const FibrationStructure& fib, const Connection& conn) {
    const auto& g = fib.total;
    if (!connection_axiom_violations(g, conn).empty() || !is_compatible(g, conn, Lift::canonical(g)) ||
        !is_swap_invariant(fib, conn)) {
        throw NoConnection("failed to build a swap-invariant compatible connection");
    }
    const auto filter = fib.filter();
    for (DartId e = 0; e < g.dart_count(); ++e) {
        for (DartId f : g.out(g.dart(e).from)) {
            if (f != e && !filter(e, f, conn.transport(g, e, f))) {
                throw NoConnection("connection does not respect the fibration");
            }
        }
    }
}

}  // namespace

Connection swap_invariant_connection(const FibrationStructure& fib) {
    const auto& g = fib.total;
    const Connection start = compatible_connections(g, 1, fib.filter()).connections.front();
    std::vector<std::vector<DartId>> table = start.table();
    for (DartId e : g.out(fib.left_fiber[0])) {
        if (!fib.horizontal(e)) continue;
        const DartId se = fib.swap_dart[e];
        table[se] = conjugated_row(fib, start, e);
        // inverse along the opposite dart
        const auto& src = g.out(g.dart(se).from);
        std::vector<DartId> back(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) back[g.slot(table[se][j])] = src[j];
        table[g.dart(se).opposite] = std::move(back);
    }
    Connection conn(std::move(table));
    check_connection(fib, conn);
    return conn;
}

ConnectionSearch swap_invariant_connections(const FibrationStructure& fib, std::size_t limit) {
    // every fibration connection is a product of at most two choices per edge pair
    const auto all = compatible_connections(fib.total, std::numeric_limits<std::size_t>::max(), fib.filter());
    ConnectionSearch result;
    for (const auto& conn : all.connections) {
        if (!is_swap_invariant(fib, conn)) continue;
        if (result.connections.size() == limit) {
            result.truncated = true;
            break;
        }
        result.connections.push_back(conn);
    }
    if (result.connections.empty()) throw NoConnection("no swap-invariant fibration connection");
    return result;
}

Classification classify(const FibrationStructure& fib, const Connection& conn) {
    const auto& g = fib.total;
    if (!is_swap_invariant(fib, conn)) throw Error("classification needs a swap-invariant connection");

    const VertexId l0 = fib.left_fiber[0];
    std::optional<DartId> hx;
    std::optional<DartId> hy;
    std::vector<DartId> vertical;
    for (DartId e : g.out(l0)) {
        if (!fib.horizontal(e)) vertical.push_back(e);
        else if (g.label(e).rep() == kX) hx = e;
        else hy = e;
    }
    const Shape shape = g.dart(*hx).to == g.dart(*hy).to ? Shape::Product : Shape::Twisted;

    std::array<DartId, 2> right{conn.transport(g, *hx, vertical[0]), conn.transport(g, *hx, vertical[1])};
    const DartId along_y = conn.transport(g, *hy, vertical[0]);
    const Transport transport = edge_of(g, along_y) == edge_of(g, right[0]) ? Transport::Agree : Transport::Disagree;

    std::array<IntVec, 2> left_lift{g.label(vertical[0]).rep(), g.label(vertical[1]).rep()};
    std::array<IntVec, 2> right_lift;
    for (std::size_t i = 0; i < 2; ++i) {
        const IntVec& rep = g.label(right[i]).rep();
        const auto w = congruence_witness(rep, left_lift[i], kX);
        if (!w) throw NotCompatible("transport along the (1,0) edge violates the congruence condition");
        right_lift[i] = rep.scaled(w->epsilon);
    }

    auto y_signs = [&]() {
        // partner of left edge i under (0,1)-transport
        const std::array<std::size_t, 2> partner =
            transport == Transport::Agree ? std::array<std::size_t, 2>{0, 1} : std::array<std::size_t, 2>{1, 0};
        std::array<int, 2> eps{};
        for (std::size_t i = 0; i < 2; ++i) {
            const auto w = congruence_witness(right_lift[partner[i]], left_lift[i], kY);
            if (!w) throw NotCompatible("transport along the (0,1) edge violates the congruence condition");
            eps[i] = w->epsilon;
        }
        return eps;
    };

    auto eps = y_signs();
    if (transport == Transport::Disagree && eps[0] == -1 && eps[1] == -1) {
        left_lift[1] = -left_lift[1];
        right_lift[1] = -right_lift[1];
        eps = y_signs();
    }
    if (eps[0] == -1 && eps[1] == 1) {
        std::swap(left_lift[0], left_lift[1]);
        std::swap(right_lift[0], right_lift[1]);
        eps = y_signs();
    }

    Signs signs = Signs::PlusMinus;
    if (eps[0] == 1 && eps[1] == 1) signs = Signs::PlusPlus;
    else if (eps[0] == -1 && eps[1] == -1) signs = Signs::MinusMinus;

    return Classification{CaseLabel(shape, transport, signs),
                          FiberLabels{left_lift[0][0], left_lift[0][1], left_lift[1][0], left_lift[1][1]}};
}

std::set<Classification> classify_all(const FibrationStructure& fib, std::size_t limit) {
    const auto search = swap_invariant_connections(fib, limit);
    if (search.truncated) {
        throw SearchTruncated("more than " + std::to_string(limit) + " swap-invariant connections");
    }
    std::set<Classification> out;
    for (const auto& conn : search.connections) out.insert(classify(fib, conn));
    return out;
}

std::set<Classification> classify_all(const GkmGraph& total, const GkmGraph& base,
                                      const std::vector<VertexId>& vertex_map) {
    return classify_all(detect_fibration(total, base, vertex_map));
}

std::set<CaseLabel> case_set(const std::set<Classification>& classes) {
    std::set<CaseLabel> out;
    for (const auto& c : classes) out.insert(c.label);
    return out;
}

}  // namespace gkm
