#include "gkm/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "gkm/errors.hpp"

namespace gkm {

GkmGraph GkmGraph::from_edges(std::size_t k, std::vector<std::string> vertex_names,
                              const std::vector<EdgeSpec>& edges) {
    std::vector<Dart> darts;
    darts.reserve(2 * edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        const Weight w = canonicalize(e.label);
        darts.push_back(Dart{e.u, e.v, 2 * i + 1, w});
        darts.push_back(Dart{e.v, e.u, 2 * i, w});
    }
    return from_darts(k, std::move(vertex_names), std::move(darts));
}

GkmGraph GkmGraph::from_darts(std::size_t k, std::vector<std::string> vertex_names,
                              std::vector<Dart> darts) {
    if (k == 0) throw DimensionMismatch("lattice rank must be positive");
    GkmGraph g;
    g.k_ = k;
    g.names_ = std::move(vertex_names);
    g.darts_ = std::move(darts);
    for (std::size_t i = 0; i < g.darts_.size(); ++i) {
        const auto& d = g.darts_[i];
        if (d.from >= g.names_.size() || d.to >= g.names_.size()) {
            throw Error("dart " + std::to_string(i) + " refers to an unknown vertex");
        }
        if (d.opposite >= g.darts_.size()) {
            throw Error("dart " + std::to_string(i) + " refers to an unknown opposite dart");
        }
        if (d.label.size() != k) {
            throw DimensionMismatch("dart " + std::to_string(i) + " has a label of length " +
                                    std::to_string(d.label.size()) + ", expected " + std::to_string(k));
        }
    }
    g.index();
    return g;
}

void GkmGraph::index() {
    out_.assign(names_.size(), {});
    slot_.assign(darts_.size(), 0);
    for (DartId e = 0; e < darts_.size(); ++e) {
        auto& list = out_[darts_[e].from];
        slot_[e] = list.size();
        list.push_back(e);
    }
}

std::size_t GkmGraph::valence() const noexcept { return out_.empty() ? 0 : out_.front().size(); }

std::optional<VertexId> GkmGraph::find_vertex(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<VertexId>(it - names_.begin());
}

std::vector<DartId> GkmGraph::edge_representatives() const {
    std::vector<DartId> reps;
    for (DartId e = 0; e < darts_.size(); ++e) {
        if (e < darts_[e].opposite) reps.push_back(e);
    }
    return reps;
}

bool operator==(const GkmGraph& a, const GkmGraph& b) {
    if (a.k_ != b.k_ || a.names_ != b.names_ || a.darts_.size() != b.darts_.size()) return false;
    for (std::size_t i = 0; i < a.darts_.size(); ++i) {
        const auto& x = a.darts_[i];
        const auto& y = b.darts_[i];
        if (x.from != y.from || x.to != y.to || x.opposite != y.opposite || !(x.label == y.label)) return false;
    }
    return true;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Valence: return "valence";
        case ViolationKind::Pairing: return "pairing";
        case ViolationKind::Loop: return "loop";
        case ViolationKind::LabelSymmetry: return "label-symmetry";
        case ViolationKind::Independence: return "independence";
    }
    return "unknown";
}

ValidationReport validate(const GkmGraph& graph) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::optional<VertexId> v, std::optional<DartId> d, std::string msg) {
        report.violations.push_back(Violation{kind, v, d, std::move(msg)});
    };

    const std::size_t n = graph.valence();
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (graph.out(v).size() != n) {
            add(ViolationKind::Valence, v, std::nullopt,
                "vertex " + graph.name(v) + " has " + std::to_string(graph.out(v).size()) +
                    " outgoing darts, expected " + std::to_string(n));
        }
    }

    for (DartId e = 0; e < graph.dart_count(); ++e) {
        const Dart& d = graph.dart(e);
        if (d.from == d.to) add(ViolationKind::Loop, d.from, e, "dart " + std::to_string(e) + " is a loop");
        const Dart& o = graph.dart(d.opposite);
        if (d.opposite == e || o.opposite != e || o.from != d.to || o.to != d.from) {
            add(ViolationKind::Pairing, d.from, e,
                "dart " + std::to_string(e) + " and its opposite " + std::to_string(d.opposite) +
                    " are not reversed copies of each other");
        } else if (!(o.label == d.label)) {
            add(ViolationKind::LabelSymmetry, d.from, e,
                "dart " + std::to_string(e) + " is labeled " + d.label.rep().str() + " but its opposite is " +
                    o.label.rep().str());
        }
    }

    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        const auto& out = graph.out(v);
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                if (!independent(graph.label(out[i]), graph.label(out[j]))) {
                    add(ViolationKind::Independence, v, out[j],
                        "labels " + graph.label(out[i]).rep().str() + " (dart " + std::to_string(out[i]) + ") and " +
                            graph.label(out[j]).rep().str() + " (dart " + std::to_string(out[j]) +
                            ") at vertex " + graph.name(v) + " are linearly dependent");
                }
            }
        }
    }
    return report;
}

Lift Lift::canonical(const GkmGraph& graph) {
    Lift lift;
    lift.lifts_.reserve(graph.dart_count());
    for (const auto& d : graph.darts()) lift.lifts_.push_back(d.label.rep());
    return lift;
}

Lift Lift::from_signs(const GkmGraph& graph, const std::vector<int>& signs) {
    const auto reps = graph.edge_representatives();
    if (signs.size() != reps.size()) {
        throw DimensionMismatch("expected " + std::to_string(reps.size()) + " lift signs, got " +
                                std::to_string(signs.size()));
    }
    Lift lift = canonical(graph);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw Error("lift signs must be +1 or -1");
        if (signs[i] == -1) {
            const DartId e = reps[i];
            lift.lifts_[e] = -lift.lifts_[e];
            lift.lifts_[graph.dart(e).opposite] = lift.lifts_[e];
        }
    }
    return lift;
}

std::vector<std::string> connection_axiom_violations(const GkmGraph& graph, const Connection& conn) {
    std::vector<std::string> bad;
    const auto& table = conn.table();
    if (table.size() != graph.dart_count()) {
        bad.push_back("connection has " + std::to_string(table.size()) + " rows for " +
                      std::to_string(graph.dart_count()) + " darts");
        return bad;
    }
    for (DartId e = 0; e < graph.dart_count(); ++e) {
        const Dart& d = graph.dart(e);
        const auto& row = table[e];
        const auto& src = graph.out(d.from);
        const auto& dst = graph.out(d.to);
        if (row.size() != src.size()) {
            bad.push_back("transport along dart " + std::to_string(e) + " has the wrong arity");
            continue;
        }
        std::vector<DartId> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != dst) {
            bad.push_back("transport along dart " + std::to_string(e) + " is not a bijection onto the target star");
            continue;
        }
        if (row[graph.slot(e)] != d.opposite) {
            bad.push_back("transport along dart " + std::to_string(e) + " does not send it to its opposite");
        }
        const auto& back = table[d.opposite];
        for (std::size_t j = 0; j < src.size(); ++j) {
            const DartId img = row[j];
            if (back.size() != dst.size() || back[graph.slot(img)] != src[j]) {
                bad.push_back("transport along dart " + std::to_string(d.opposite) +
                              " is not inverse to transport along dart " + std::to_string(e));
                break;
            }
        }
    }
    return bad;
}

std::optional<CongruenceWitness> transport_witness(const GkmGraph&, const Lift& lift, DartId e, DartId f,
                                                   DartId image) {
    return congruence_witness(lift(image), lift(f), lift(e));
}

bool is_compatible(const GkmGraph& graph, const Connection& conn, const Lift& lift) {
    for (DartId e = 0; e < graph.dart_count(); ++e) {
        for (DartId f : graph.out(graph.dart(e).from)) {
            if (f == e) continue;
            if (!transport_witness(graph, lift, e, f, conn.transport(graph, e, f))) return false;
        }
    }
    return true;
}

std::vector<std::vector<std::vector<DartId>>> transport_options(const GkmGraph& graph,
                                                                const TransportFilter& filter) {
    const Lift lift = Lift::canonical(graph);
    std::vector<std::vector<std::vector<DartId>>> options;
    for (DartId e : graph.edge_representatives()) {
        const Dart& d = graph.dart(e);
        const auto& src = graph.out(d.from);
        const auto& dst = graph.out(d.to);
        if (src.size() != dst.size() || graph.dart(d.opposite).from != d.to) {
            throw NoConnection("star sizes differ along dart " + std::to_string(e));
        }
        std::vector<DartId> targets;
        for (DartId t : dst) {
            if (t != d.opposite) targets.push_back(t);
        }
        std::vector<std::vector<DartId>> edge_options;
        do {
            std::vector<DartId> row(src.size());
            row[graph.slot(e)] = d.opposite;
            bool ok = true;
            std::size_t next = 0;
            for (std::size_t j = 0; j < src.size() && ok; ++j) {
                const DartId f = src[j];
                if (f == e) continue;
                const DartId img = targets[next++];
                row[j] = img;
                ok = transport_witness(graph, lift, e, f, img).has_value() &&
                     (!filter || (filter(e, f, img) && filter(d.opposite, img, f)));
            }
            if (ok) edge_options.push_back(std::move(row));
        } while (std::next_permutation(targets.begin(), targets.end()));
        options.push_back(std::move(edge_options));
    }
    return options;
}

Connection assemble_connection(const GkmGraph& graph, const std::vector<std::vector<DartId>>& rows) {
    const auto reps = graph.edge_representatives();
    if (rows.size() != reps.size()) throw DimensionMismatch("one transport row per edge pair expected");
    std::vector<std::vector<DartId>> table(graph.dart_count());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const DartId e = reps[i];
        const Dart& d = graph.dart(e);
        const auto& row = rows[i];
        const auto& src = graph.out(d.from);
        if (row.size() != src.size()) throw DimensionMismatch("transport row has the wrong arity");
        std::vector<DartId> back(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) back[graph.slot(row[j])] = src[j];
        table[e] = row;
        table[d.opposite] = std::move(back);
    }
    return Connection(std::move(table));
}

ConnectionSearch compatible_connections(const GkmGraph& graph, std::size_t limit, const TransportFilter& filter) {
    const auto reps = graph.edge_representatives();
    const auto options = transport_options(graph, filter);
    for (std::size_t i = 0; i < options.size(); ++i) {
        if (options[i].empty()) {
            throw NoConnection("no compatible transport along dart " + std::to_string(reps[i]));
        }
    }

    ConnectionSearch result;
    std::vector<std::size_t> choice(reps.size(), 0);
    while (true) {
        if (result.connections.size() == limit) {
            result.truncated = true;
            break;
        }
        std::vector<std::vector<DartId>> rows(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i) rows[i] = options[i][choice[i]];
        result.connections.push_back(assemble_connection(graph, rows));
        // odometer, last edge pair varies fastest
        std::size_t i = choice.size();
        while (i > 0) {
            --i;
            if (++choice[i] < options[i].size()) break;
            choice[i] = 0;
            if (i == 0) return result;
        }
        if (choice.empty()) break;
    }
    return result;
}

namespace {

bool is_multiple(const IntVec& v, const IntVec& modulus) {
    std::size_t p = 0;
    while (modulus[p] == 0) ++p;
    return v[p] % modulus[p] == 0 && v == modulus.scaled(v[p] / modulus[p]);
}

int eta_from_row(const GkmGraph& graph, const Lift& lift, DartId e, const std::vector<DartId>& row) {
    const Dart& d = graph.dart(e);
    const auto& src = graph.out(d.from);
    int product = 1;
    for (std::size_t j = 0; j < src.size(); ++j) {
        const DartId f = src[j];
        if (f == e) continue;
        const IntVec& target = lift(row[j]);
        const IntVec& source = lift(f);
        const auto w = congruence_witness(target, source, lift(e));
        if (!w) {
            throw NotCompatible("transport of dart " + std::to_string(f) + " along dart " + std::to_string(e) +
                                " violates the congruence condition");
        }
        if (w->epsilon == 1 && is_multiple(target + source, lift(e))) {
            throw AmbiguousSign("both signs satisfy the congruence for dart " + std::to_string(f) +
                                " along dart " + std::to_string(e));
        }
        product *= w->epsilon;
    }
    return -product;
}

// Vertex potential for per-dart signs restricted to `use`; nullopt if none exists.
std::optional<std::vector<int>> potential(const GkmGraph& graph, const std::vector<int>& sign,
                                          const std::vector<bool>& use) {
    std::vector<int> s(graph.vertex_count(), 0);
    for (VertexId root = 0; root < graph.vertex_count(); ++root) {
        if (s[root] != 0) continue;
        s[root] = 1;
        std::deque<VertexId> queue{root};
        while (!queue.empty()) {
            const VertexId v = queue.front();
            queue.pop_front();
            for (DartId e : graph.out(v)) {
                if (!use[e]) continue;
                const VertexId w = graph.dart(e).to;
                if (s[w] == 0) {
                    s[w] = s[v] * sign[e];
                    queue.push_back(w);
                }
            }
        }
    }
    for (DartId e = 0; e < graph.dart_count(); ++e) {
        if (use[e] && sign[e] != s[graph.dart(e).from] * s[graph.dart(e).to]) return std::nullopt;
    }
    return s;
}

}  // namespace

int eta(const GkmGraph& graph, const Connection& conn, const Lift& lift, DartId e) {
    return eta_from_row(graph, lift, e, conn.table().at(e));
}

bool orientable(const GkmGraph& graph, const Connection& conn, const Lift& lift) {
    std::vector<int> signs(graph.dart_count());
    for (DartId e = 0; e < graph.dart_count(); ++e) signs[e] = eta(graph, conn, lift, e);
    for (DartId e = 0; e < graph.dart_count(); ++e) {
        if (signs[e] != signs[graph.dart(e).opposite]) {
            throw InconsistentEta("eta differs on dart " + std::to_string(e) + " and its opposite");
        }
    }
    return potential(graph, signs, std::vector<bool>(graph.dart_count(), true)).has_value();
}

bool orientable_any(const GkmGraph& graph) {
    const auto reps = graph.edge_representatives();
    const auto options = transport_options(graph);
    const Lift lift = Lift::canonical(graph);

    std::vector<int> fixed_sign(graph.dart_count(), 0);
    std::vector<bool> fixed(graph.dart_count(), false);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (options[i].empty()) {
            throw NoConnection("no compatible transport along dart " + std::to_string(reps[i]));
        }
        const DartId e = reps[i];
        const DartId o = graph.dart(e).opposite;
        bool plus = false;
        bool minus = false;
        for (std::size_t c = 0; c < options[i].size(); ++c) {
            const auto& row = options[i][c];
            std::vector<DartId> back(row.size());
            const auto& src = graph.out(graph.dart(e).from);
            for (std::size_t j = 0; j < row.size(); ++j) back[graph.slot(row[j])] = src[j];
            const int forward = eta_from_row(graph, lift, e, row);
            if (forward != eta_from_row(graph, lift, o, back)) {
                throw InconsistentEta("eta differs on dart " + std::to_string(e) + " and its opposite");
            }
            (forward == 1 ? plus : minus) = true;
        }
        if (plus != minus) {
            fixed[e] = fixed[o] = true;
            fixed_sign[e] = fixed_sign[o] = plus ? 1 : -1;
        }
    }
    return potential(graph, fixed_sign, fixed).has_value();
}

bool orientable_exhaustive(const GkmGraph& graph, const SearchCaps& caps) {
    const auto search = compatible_connections(graph, caps.connections);
    const std::size_t pairs = graph.edge_representatives().size();
    const bool lifts_truncated = pairs >= 63 || (std::size_t{1} << pairs) > caps.lifts;
    const std::size_t lift_count = lifts_truncated ? caps.lifts : (std::size_t{1} << pairs);

    for (const auto& conn : search.connections) {
        for (std::size_t mask = 0; mask < lift_count; ++mask) {
            std::vector<int> signs(pairs);
            for (std::size_t i = 0; i < pairs; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
            try {
                if (orientable(graph, conn, Lift::from_signs(graph, signs))) return true;
            } catch (const InconsistentEta&) {
                // the closed path e, ebar already has eta product -1
            }
        }
    }
    if (search.truncated || lifts_truncated) {
        throw SearchTruncated("orientability search hit its cap (" + std::to_string(caps.connections) +
                              " connections, " + std::to_string(caps.lifts) + " lifts)");
    }
    return false;
}

}  // namespace gkm
