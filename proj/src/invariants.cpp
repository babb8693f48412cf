#include "gkm/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <thread>
#include <tuple>

#include "gkm/errors.hpp"

namespace gkm {

namespace {

using checked::add;
using checked::mul;
using checked::sub;

std::int64_t abs_checked(std::int64_t v) { return v < 0 ? checked::neg(v) : v; }

ClutchingNumber from_difference(const QuadForm& diff) {
    if (!diff.is_xy_multiple()) throw NotMultipleOfXY("fiber difference " + diff.str() + " is not a multiple of xy");
    if (diff.cxy % 2 != 0) throw OddCoefficient("fiber difference " + diff.str() + " has an odd xy coefficient");
    return abs_checked(diff.cxy / 2);
}

QuadForm fiber_form(std::array<std::int64_t, 2> u, std::array<std::int64_t, 2> v) {
    return square_linear(1, 0) + square_linear(0, 1) + square_linear(u[0], u[1]) + square_linear(v[0], v[1]);
}

}  // namespace

std::vector<QuadForm> p1_restrictions(const GkmGraph& graph) {
    if (graph.lattice_rank() != 2) {
        throw WrongRank("p1 restrictions need weights in Z^2, got Z^" + std::to_string(graph.lattice_rank()));
    }
    std::vector<QuadForm> out(graph.vertex_count());
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        for (DartId e : graph.out(v)) {
            const IntVec& w = graph.label(e).rep();
            out[v] += square_linear(w[0], w[1]);
        }
    }
    return out;
}

ClutchingNumber clutching_number_derived(const GkmGraph& graph, const std::vector<VertexId>& vertex_map) {
    const auto forms = p1_restrictions(graph);
    if (vertex_map.size() != graph.vertex_count()) throw InconsistentFiber("vertex map size does not match the graph");
    std::array<std::optional<QuadForm>, 2> fiber;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        const VertexId p = vertex_map[v];
        if (p > 1) throw InconsistentFiber("vertex '" + graph.name(v) + "' maps outside the biangle base");
        if (!fiber[p]) fiber[p] = forms[v];
        else if (*fiber[p] != forms[v]) {
            throw InconsistentFiber("p1 restrictions differ inside the fiber of '" + graph.name(v) + "': " +
                                    fiber[p]->str() + " vs " + forms[v].str());
        }
    }
    if (!fiber[0] || !fiber[1]) throw InconsistentFiber("a fiber is empty");
    return from_difference(*fiber[1] - *fiber[0]);
}

ClutchingNumber clutching_number_derived(const FibrationStructure& fib) {
    return clutching_number_derived(fib.total, fib.vertex_map);
}

ClutchingNumber clutching_number_derived(const BundleSpec& spec) {
    const auto& l = spec.labels;
    const RightFiber r = right_fiber_labels(spec.family, l);
    return from_difference(fiber_form(r.first, r.second) - fiber_form({l.a, l.b}, {l.c, l.d}));
}

ClutchingNumber clutching_number_formula(const BundleSpec& spec) {
    if (!spec.family.realizable()) throw InvalidParams(spec.family.str() + " is not a realizable family");
    if (const auto r = valid_params(spec.family, spec.labels); !r.ok()) throw InvalidParams(r.violations.front());
    const auto [a, b, c, d] = spec.labels;
    const CaseLabel& f = spec.family;
    std::int64_t value = 0;
    if (f == cases::PA_pp()) value = 0;
    else if (f == cases::PD_pp()) value = mul(sub(a, c), sub(b, d));
    else if (f == cases::PA_mm()) value = mul(2, add(mul(a, b), mul(c, d)));
    else if (f == cases::TA_pm()) value = mul(2, mul(c, d));
    else value = add(mul(a, sub(b, d)), mul(c, add(b, d)));
    return abs_checked(value);
}

bool homotopy_equivalent(ClutchingNumber m, ClutchingNumber n) { return (m - n) % 24 == 0 || (m + n) % 24 == 0; }

bool homeomorphic(ClutchingNumber m, ClutchingNumber n) { return abs_checked(m) == abs_checked(n); }

RingType ring_type(ClutchingNumber n) { return n % 2 == 0 ? RingType::Split : RingType::Twisted; }

std::string to_string(RingType t) { return t == RingType::Split ? "SPLIT" : "TWISTED"; }

bool ExtensionRelations::satisfied_by(const Extension& e) const {
    if (kl_zero && (e.k != 0 || e.l != 0)) return false;
    if (mn_zero && (e.m != 0 || e.n != 0)) return false;
    if (kl_equals_mn != 0 && (e.k != kl_equals_mn * e.m || e.l != kl_equals_mn * e.n)) return false;
    return true;
}

std::string ExtensionRelations::str() const {
    std::vector<std::string> parts;
    if (kl_zero && mn_zero) parts.push_back("(k,l)=(m,n)=0");
    else if (kl_zero) parts.push_back("(k,l)=0");
    else if (mn_zero) parts.push_back("(m,n)=0");
    else if (kl_equals_mn == 1) parts.push_back("(k,l)=(m,n)");
    else if (kl_equals_mn == -1) parts.push_back("(k,l)=-(m,n)");
    if (parts.empty()) return "none";
    return parts.front();
}

ExtensionRelations extension_relations(const CaseLabel& family) {
    // The (1,0)-transports keep the tails, the (0,1)-transports multiply them
    // by the congruence sign of the edge they start from.
    ExtensionRelations r;
    const int e1 = family.first_sign();
    const int e2 = family.second_sign();
    if (family.transport() == Transport::Agree) {
        r.kl_zero = e1 == -1;
        r.mn_zero = e2 == -1;
    } else if (e1 != e2) {
        r.kl_zero = r.mn_zero = true;
    } else {
        r.kl_equals_mn = e1;
    }
    return r;
}

ExtensionReport max_extension(const CaseLabel& family, const FiberLabels& labels) {
    if (const auto r = valid_params(family, labels); !r.ok()) throw InvalidParams(r.violations.front());

    static const std::vector<std::array<int, 4>> order = [] {
        std::vector<std::array<int, 4>> all;
        for (int i = 0; i < 81; ++i) {
            std::array<int, 4> t{};
            for (int j = 0, x = i; j < 4; ++j, x /= 3) t[3 - j] = x % 3 - 1;
            all.push_back(t);
        }
        auto key = [](const std::array<int, 4>& t) {
            int nonzero = 0;
            std::array<int, 4> positions{4, 4, 4, 4};
            std::array<int, 4> signs{};
            for (int j = 0; j < 4; ++j) {
                if (t[j] != 0) {
                    signs[nonzero] = t[j] > 0 ? 0 : 1;
                    positions[nonzero++] = j;
                }
            }
            return std::tuple(nonzero, positions, signs);
        };
        std::stable_sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
        return all;
    }();

    ExtensionReport report{family, 0, extension_relations(family), {}};
    for (const auto& t : order) {
        const Extension e{t[0], t[1], t[2], t[3]};
        if (!report.relations.satisfied_by(e)) continue;
        const int r = rank({IntVec{1, 0, 0, 0}, IntVec{0, 1, 0, 0}, IntVec{labels.a, labels.b, e.k, e.l},
                            IntVec{labels.c, labels.d, e.m, e.n}});
        if (r > report.max_rank) {
            report.max_rank = r;
            report.witness = e;
        }
    }
    return report;
}

int gkm_k_degree(const GkmGraph& graph) {
    int best = static_cast<int>(graph.valence());
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        std::vector<IntVec> weights;
        for (DartId e : graph.out(v)) weights.push_back(graph.label(e).rep());
        const std::size_t n = weights.size();
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            const int size = std::popcount(mask);
            if (size > best) continue;
            std::vector<IntVec> subset;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) subset.push_back(weights[i]);
            }
            if (rank(subset) < size) best = size - 1;
        }
    }
    return best;
}

namespace {

struct Task {
    std::size_t family;
    std::int64_t a;
};

std::vector<CaseLabel> families_of(const EnumerationOptions& o) {
    if (!o.families.empty()) return o.families;
    return {realizable_cases().begin(), realizable_cases().end()};
}

template <typename Visit>
void specs_of_task(const CaseLabel& family, std::int64_t a, std::int64_t box, Visit&& visit) {
    for (std::int64_t b = -box; b <= box; ++b) {
        for (std::int64_t c = -box; c <= box; ++c) {
            for (std::int64_t d = -box; d <= box; ++d) {
                const FiberLabels labels{a, b, c, d};
                if (!valid_params(family, labels).ok()) continue;
                const BundleSpec spec{family, labels};
                const ClutchingNumber formula = clutching_number_formula(spec);
                const ClutchingNumber derived = clutching_number_derived(spec);
                if (formula != derived) {
                    throw OracleMismatch(spec.str() + ": formula " + std::to_string(formula) + ", derived " +
                                         std::to_string(derived));
                }
                visit(SpecRecord{spec, formula});
            }
        }
    }
}

// Runs produce(task) on up to `workers` threads, then consume(result) in task
// order. Tasks are handled in batches so memory stays bounded.
template <typename Result, typename Produce, typename Consume>
void run_ordered(const std::vector<Task>& tasks, unsigned workers, Produce produce, Consume consume) {
    workers = std::max(1u, workers);
    const std::size_t batch = std::max<std::size_t>(workers, 1) * 2;
    for (std::size_t start = 0; start < tasks.size(); start += batch) {
        const std::size_t end = std::min(tasks.size(), start + batch);
        std::vector<Result> results(end - start);
        std::vector<std::exception_ptr> errors(end - start);
        std::atomic<std::size_t> next{start};
        auto work = [&] {
            for (std::size_t i = next++; i < end; i = next++) {
                try {
                    results[i - start] = produce(tasks[i]);
                } catch (...) {
                    errors[i - start] = std::current_exception();
                }
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            consume(std::move(results[i]));
        }
    }
}

std::vector<Task> make_tasks(const EnumerationOptions& o, std::size_t family_count) {
    if (o.box < 1) throw InvalidParams("box must be at least 1");
    std::vector<Task> tasks;
    for (std::size_t f = 0; f < family_count; ++f) {
        for (std::int64_t a = -o.box; a <= o.box; ++a) tasks.push_back({f, a});
    }
    return tasks;
}

}  // namespace

void for_each_spec(const EnumerationOptions& options, const std::function<void(const SpecRecord&)>& visit) {
    const auto families = families_of(options);
    run_ordered<std::vector<SpecRecord>>(
        make_tasks(options, families.size()), options.workers,
        [&](const Task& t) {
            std::vector<SpecRecord> out;
            specs_of_task(families[t.family], t.a, options.box, [&](SpecRecord r) { out.push_back(std::move(r)); });
            return out;
        },
        [&](std::vector<SpecRecord> records) {
            for (const auto& r : records) visit(r);
        });
}

std::vector<SpecRecord> enumerate_specs(const EnumerationOptions& options,
                                        const std::function<bool(const SpecRecord&)>& filter) {
    std::vector<SpecRecord> out;
    for_each_spec(options, [&](const SpecRecord& r) {
        if (!filter || filter(r)) out.push_back(r);
    });
    return out;
}

bool is_petrie_pair(ClutchingNumber m, ClutchingNumber n) { return homotopy_equivalent(m, n) && !homeomorphic(m, n); }

std::vector<PetrieClassPair> find_petrie_pairs(const EnumerationOptions& options) {
    struct ValueClass {
        std::size_t count = 0;
        std::optional<BundleSpec> first;
    };
    using Classes = std::map<ClutchingNumber, ValueClass>;

    const auto families = families_of(options);
    Classes all;
    run_ordered<Classes>(
        make_tasks(options, families.size()), options.workers,
        [&](const Task& t) {
            Classes local;
            specs_of_task(families[t.family], t.a, options.box, [&](const SpecRecord& r) {
                auto& c = local[r.clutching];
                if (c.count++ == 0) c.first = r.spec;
            });
            return local;
        },
        [&](Classes local) {
            for (auto& [value, c] : local) {
                auto& g = all[value];
                if (g.count == 0) g.first = c.first;
                g.count += c.count;
            }
        });

    std::vector<PetrieClassPair> out;
    for (auto lo = all.begin(); lo != all.end(); ++lo) {
        for (auto hi = std::next(lo); hi != all.end(); ++hi) {
            if (!is_petrie_pair(lo->first, hi->first)) continue;
            out.push_back({lo->first, hi->first, lo->second.count, hi->second.count, *lo->second.first,
                           *hi->second.first});
        }
    }
    return out;
}

}  // namespace gkm
