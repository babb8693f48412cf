#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkm/cases.hpp"
#include "gkm/errors.hpp"
#include "gkm/families.hpp"
#include "gkm/fibration.hpp"
#include "gkm/graph.hpp"
#include "gkm/graph_io.hpp"
#include "gkm/invariants.hpp"

namespace {

using nlohmann::json;
using namespace gkm;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kInputFailure = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string format = "text";
    std::string out;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t cap_connections = 10'000;
    std::size_t cap_lifts = std::size_t{1} << 16;
    bool json() const { return format == "json"; }
};

// Writes to stdout, or to a temporary file renamed over --out on commit.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path_.empty()) {
            tmp_ = path_;
            tmp_ += ".tmp";
            file_ = std::make_unique<std::ofstream>(tmp_, std::ios::binary | std::ios::trunc);
            if (!*file_) throw InputError("cannot write " + tmp_.string());
        }
    }
    ~Output() {
        if (file_) {
            file_.reset();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void commit() {
        if (!file_) return;
        file_->flush();
        if (!*file_) throw InputError("cannot write " + tmp_.string());
        file_.reset();
        std::filesystem::rename(tmp_, path_);
    }

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::unique_ptr<std::ofstream> file_;
};

json labels_json(const FiberLabels& l) { return json::array({l.a, l.b, l.c, l.d}); }

json spec_json(const BundleSpec& s) { return {{"family", s.family.str()}, {"labels", labels_json(s.labels)}}; }

CaseLabel parse_family(const std::string& text) {
    const auto c = CaseLabel::parse(text);
    if (!c) throw InputError("unknown family '" + text + "'");
    return *c;
}

FiberLabels parse_labels(const std::string& text) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("labels must be four comma-separated integers, got '" + text + "'");
        }
    }
    if (v.size() != 4) throw InputError("labels must be four comma-separated integers, got '" + text + "'");
    return {v[0], v[1], v[2], v[3]};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string case_list(const std::set<CaseLabel>& cases) {
    std::string s = "{";
    for (const auto& c : cases) s += (s.size() > 1 ? ", " : "") + c.str();
    return s + "}";
}

// validate ----------------------------------------------------------------

int cmd_validate(const Config& cfg, const std::string& path) {
    const GraphFile file = load_graph(path);
    const ValidationReport report = validate(file.graph);
    std::optional<std::string> connection_error;
    if (report.ok()) {
        try {
            compatible_connections(file.graph, 1);
        } catch (const NoConnection& ex) {
            connection_error = ex.what();
        }
    }
    const bool ok = report.ok() && !connection_error;

    Output out(cfg.out);
    if (cfg.json()) {
        json v = json::array();
        for (const auto& x : report.violations) {
            json item{{"kind", to_string(x.kind)}, {"message", x.message}};
            if (x.vertex) item["vertex"] = file.graph.name(*x.vertex);
            if (x.dart) item["dart"] = *x.dart;
            v.push_back(item);
        }
        json j{{"schema", 1}, {"ok", ok}, {"violations", v}};
        if (connection_error) j["connection"] = *connection_error;
        out.stream() << j.dump(2) << "\n";
    } else {
        auto& os = out.stream();
        for (const auto& x : report.violations) os << to_string(x.kind) << ": " << x.message << "\n";
        if (connection_error) os << "connection: " << *connection_error << "\n";
        if (ok) {
            os << "ok: " << file.graph.vertex_count() << " vertices, valence " << file.graph.valence()
               << ", compatible connection found\n";
        }
    }
    out.commit();
    return ok ? kOk : kDomainFailure;
}

// classify ----------------------------------------------------------------

int cmd_classify(const Config& cfg, const std::string& total_path, const std::string& base_path,
                 const std::string& map_path, bool exhaustive) {
    const GraphFile total = load_graph(total_path);
    const GkmGraph base = base_path.empty() ? standard_base() : load_graph(base_path).graph;
    std::map<std::string, std::string> map;
    if (!map_path.empty()) map = load_vertex_map(map_path);
    else if (total.map) map = *total.map;
    else throw InputError("no vertex map: pass --map or add a \"map\" block to the total graph");

    const FibrationStructure fib = detect_fibration(total.graph, base, map);
    const bool orientable =
        exhaustive ? orientable_exhaustive(fib.total, SearchCaps{cfg.cap_connections, cfg.cap_lifts}) : orientable_any(fib.total);
    const auto classes = classify_all(fib, cfg.cap_connections);
    const auto cases = case_set(classes);
    const bool realizable = std::all_of(cases.begin(), cases.end(), [](const CaseLabel& c) { return c.realizable(); });

    Output out(cfg.out);
    if (cfg.json()) {
        json list = json::array();
        for (const auto& c : classes) list.push_back({{"case", c.label.str()}, {"labels", labels_json(c.labels)}});
        json names = json::array();
        for (const auto& c : cases) names.push_back(c.str());
        out.stream() << json{{"schema", 1},      {"fibration", true},         {"orientable", orientable},
                             {"realizable", realizable}, {"cases", names}, {"classifications", list}}
                            .dump(2)
                     << "\n";
    } else {
        auto& os = out.stream();
        os << "fibration: yes\n";
        os << "shape: " << (cases.begin()->shape() == Shape::Product ? "P" : "T") << "\n";
        os << "orientable: " << yes_no(orientable) << "\n";
        os << "realizable: " << yes_no(realizable) << "\n";
        os << "cases: " << case_list(cases) << "\n";
        for (const auto& c : classes) os << "labels: " << c.label.str() << " " << c.labels.str() << "\n";
    }
    out.commit();
    return kOk;
}

// build -------------------------------------------------------------------

int cmd_build(const Config& cfg, const std::string& family_text, const std::string& labels_text,
              bool with_connection) {
    const CaseLabel family = parse_family(family_text);
    const FiberLabels labels = parse_labels(labels_text);
    if (const auto r = valid_params(family, labels); !r.ok()) throw InputError("invalid labels: " + r.violations.front());
    GraphFile file;
    file.graph = family.realizable() ? build_graph(BundleSpec::make(family, labels)) : build_nonorientable(family, labels);
    file.map = std::map<std::string, std::string>{{"L0", "p"}, {"L1", "p"}, {"R0", "q"}, {"R1", "q"}};
    if (with_connection) {
        file.connection = swap_invariant_connection(detect_fibration(file.graph, standard_base(), family_vertex_map()));
    }
    Output out(cfg.out);
    out.stream() << dump_graph(file);
    out.commit();
    return kOk;
}

// invariants --------------------------------------------------------------

int cmd_invariants(const Config& cfg, const std::string& family_text, const std::string& labels_text) {
    const CaseLabel family = parse_family(family_text);
    const FiberLabels labels = parse_labels(labels_text);
    if (!family.realizable()) throw InputError(family.str() + " is not a realizable family");
    if (const auto r = valid_params(family, labels); !r.ok()) throw InputError("invalid labels: " + r.violations.front());
    const BundleSpec spec = BundleSpec::make(family, labels);

    const GkmGraph graph = build_graph(spec);
    const FibrationStructure fib = detect_fibration(graph, standard_base(), family_vertex_map());
    const ClutchingNumber formula = clutching_number_formula(spec);
    const ClutchingNumber derived = clutching_number_derived(fib);
    const auto p1 = p1_restrictions(graph);
    const ExtensionReport ext = max_extension(family, labels);
    const Extension w = ext.witness;
    const int degree = gkm_k_degree(build_case_graph(family, labels, w));
    const std::string verdict = homeomorphic(formula, 0)          ? "equivalent to PA++ (trivial bundle)"
                                : homotopy_equivalent(formula, 0) ? "homotopy equivalent, not homeomorphic, to PA++ (trivial bundle)"
                                                                  : "not homotopy equivalent to PA++ (trivial bundle)";

    Output out(cfg.out);
    if (cfg.json()) {
        json fixed = json::object();
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            fixed[graph.name(v)] = {{"xx", p1[v].cxx}, {"xy", p1[v].cxy}, {"yy", p1[v].cyy}};
        }
        out.stream() << json{{"schema", 1},
                             {"spec", spec_json(spec)},
                             {"clutching", {{"formula", formula}, {"derived", derived}, {"sign_convention", "nonnegative"}}},
                             {"ring_type", to_string(ring_type(formula))},
                             {"versus_trivial", verdict},
                             {"p1", fixed},
                             {"max_extension",
                              {{"rank", ext.max_rank},
                               {"relations", ext.relations.str()},
                               {"witness", json::array({w.k, w.l, w.m, w.n})}}},
                             {"gkm_k_degree", degree}}
                            .dump(2)
                     << "\n";
    } else {
        auto& os = out.stream();
        os << "family            " << spec.family.str() << "\n";
        os << "labels            " << spec.labels.str() << "\n";
        os << "clutching number  " << formula << " (formula), " << derived << " (derived), up to sign\n";
        os << "ring type         " << to_string(ring_type(formula)) << "\n";
        os << "versus trivial    " << verdict << "\n";
        for (VertexId v = 0; v < graph.vertex_count(); ++v) os << "p1 at " << graph.name(v) << "          " << p1[v] << "\n";
        os << "max extension     rank " << ext.max_rank << ", relations " << ext.relations.str() << ", witness (k,l,m,n) = ("
           << w.k << "," << w.l << "," << w.m << "," << w.n << ")\n";
        os << "GKM_k degree      " << degree << "\n";
    }
    out.commit();
    return formula == derived ? kOk : kDomainFailure;
}

// enumerate / pairs / oracle-check ---------------------------------------

EnumerationOptions enumeration(const Config& cfg, std::int64_t box, const std::vector<std::string>& families) {
    if (box < 1) throw InputError("--box must be at least 1");
    EnumerationOptions o;
    o.box = box;
    o.workers = cfg.workers;
    for (const auto& f : families) {
        const CaseLabel c = parse_family(f);
        if (!c.realizable()) throw InputError(c.str() + " is not a realizable family");
        o.families.push_back(c);
    }
    return o;
}

int cmd_enumerate(const Config& cfg, std::int64_t box, const std::vector<std::string>& families,
                  std::optional<std::int64_t> residue, bool nonzero, bool count_only) {
    const EnumerationOptions o = enumeration(cfg, box, families);
    auto keep = [&](const SpecRecord& r) {
        if (nonzero && r.clutching == 0) return false;
        if (residue && !homotopy_equivalent(r.clutching, *residue)) return false;
        return true;
    };
    Output out(cfg.out);
    auto& os = out.stream();
    std::size_t count = 0;
    if (cfg.json() && !count_only) os << "{\"schema\": 1, \"box\": " << box << ", \"specs\": [";
    for_each_spec(o, [&](const SpecRecord& r) {
        if (!keep(r)) return;
        if (!count_only) {
            if (cfg.json()) {
                json j = spec_json(r.spec);
                j["clutching"] = r.clutching;
                os << (count ? ",\n  " : "\n  ") << j.dump();
            } else {
                os << r.spec.family.str() << " " << r.spec.labels.str() << " " << r.clutching << "\n";
            }
        }
        ++count;
    });
    if (count_only) {
        if (cfg.json()) os << json{{"schema", 1}, {"box", box}, {"count", count}}.dump() << "\n";
        else os << count << "\n";
    } else if (cfg.json()) {
        os << "\n], \"count\": " << count << "}\n";
    }
    out.commit();
    return kOk;
}

int cmd_pairs(const Config& cfg, std::int64_t box) {
    const auto pairs = find_petrie_pairs(enumeration(cfg, box, {}));
    Output out(cfg.out);
    auto& os = out.stream();
    if (cfg.json()) {
        json list = json::array();
        for (const auto& p : pairs) {
            list.push_back({{"clutching", json::array({p.low, p.high})},
                            {"counts", json::array({p.low_count, p.high_count})},
                            {"examples", json::array({spec_json(p.low_example), spec_json(p.high_example)})}});
        }
        os << json{{"schema", 1}, {"box", box}, {"pairs", list}}.dump(2) << "\n";
    } else {
        os << "clutching pair   specs            first examples\n";
        for (const auto& p : pairs) {
            std::ostringstream a;
            a << "(" << p.low << ", " << p.high << ")";
            std::ostringstream b;
            b << p.low_count << " x " << p.high_count;
            os << std::left << std::setw(17) << a.str() << std::setw(17) << b.str() << p.low_example.str() << "  |  "
               << p.high_example.str() << "\n";
        }
        os << pairs.size() << " homotopy-equivalent, non-homeomorphic clutching pairs\n";
    }
    out.commit();
    return kOk;
}

int cmd_oracle_check(const Config& cfg, std::int64_t box, bool progress) {
    if (box < 1) throw InputError("--box must be at least 1");
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    std::optional<std::string> first_mismatch;
    for (const auto& family : realizable_cases()) {
        auto& [checked, mismatched] = counts[family.str()];
        for (std::int64_t a = -box; a <= box; ++a) {
            for (std::int64_t b = -box; b <= box; ++b) {
                for (std::int64_t c = -box; c <= box; ++c) {
                    for (std::int64_t d = -box; d <= box; ++d) {
                        const FiberLabels labels{a, b, c, d};
                        if (!valid_params(family, labels).ok()) continue;
                        const BundleSpec spec{family, labels};
                        const FibrationStructure fib =
                            detect_fibration(build_graph(spec), standard_base(), family_vertex_map());
                        const ClutchingNumber derived = clutching_number_derived(fib);
                        const ClutchingNumber formula = clutching_number_formula(spec);
                        ++checked;
                        if (derived != formula) {
                            ++mismatched;
                            if (!first_mismatch) {
                                first_mismatch = spec.str() + ": formula " + std::to_string(formula) + ", derived " +
                                                 std::to_string(derived);
                            }
                        }
                    }
                }
            }
        }
        if (progress) std::cerr << family.str() << " done\n";
    }
    std::size_t total_mismatches = 0;
    for (const auto& [_, c] : counts) total_mismatches += c.second;

    Output out(cfg.out);
    auto& os = out.stream();
    if (cfg.json()) {
        json fam = json::object();
        for (const auto& [name, c] : counts) fam[name] = {{"checked", c.first}, {"mismatches", c.second}};
        json j{{"schema", 1}, {"box", box}, {"families", fam}, {"mismatches", total_mismatches}};
        if (first_mismatch) j["first_mismatch"] = *first_mismatch;
        os << j.dump(2) << "\n";
    } else {
        for (const auto& [name, c] : counts) os << name << ": " << c.first << " specs, " << c.second << " mismatches\n";
        if (first_mismatch) os << "first mismatch: " << *first_mismatch << "\n";
        os << "total mismatches: " << total_mismatches << "\n";
    }
    out.commit();
    return total_mismatches == 0 ? kOk : kDomainFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GKM graphs, S^4-bundle fibrations over S^4, and their invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", cfg.out, "Write output to this file (atomically) instead of stdout");
    app.add_option("--workers", cfg.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--cap-connections", cfg.cap_connections, "Connection search cap")->check(CLI::PositiveNumber);
    app.add_option("--cap-lifts", cfg.cap_lifts, "Lift search cap")->check(CLI::PositiveNumber);

    std::string path;
    auto* validate_cmd = app.add_subcommand("validate", "Check the GKM axioms of a graph file");
    validate_cmd->add_option("graph", path, "Graph file")->required();

    std::string base_path;
    std::string map_path;
    bool exhaustive = false;
    auto* classify_cmd = app.add_subcommand("classify", "Detect the fibration over the biangle and classify it");
    classify_cmd->add_option("total", path, "Total graph file")->required();
    classify_cmd->add_option("--base", base_path, "Base graph file (default: the standard biangle p, q)");
    classify_cmd->add_option("--map", map_path, "Vertex map file (default: the \"map\" block of the total graph)");
    classify_cmd->add_flag("--exhaustive", exhaustive, "Decide orientability by searching all lifts and connections");

    std::string family;
    std::string labels;
    bool with_connection = false;
    auto* build_cmd = app.add_subcommand("build", "Write the graph of a family or non-orientable pattern");
    build_cmd->add_option("--family", family, "PA++, PD++, PA--, TA+-, TD+- or a non-orientable pattern")->required();
    build_cmd->add_option("--labels", labels, "a,b,c,d")->required();
    build_cmd->add_flag("--connection", with_connection, "Include a swap-invariant connection");

    auto* invariants_cmd = app.add_subcommand("invariants", "Topological invariants of a bundle");
    invariants_cmd->add_option("--family", family, "Realizable family")->required();
    invariants_cmd->add_option("--labels", labels, "a,b,c,d")->required();

    std::int64_t box = 0;
    std::vector<std::string> families;
    std::optional<std::int64_t> residue;
    bool nonzero = false;
    bool count_only = false;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "List valid specs with their clutching numbers");
    enumerate_cmd->add_option("--box", box, "Bound on |a|,|b|,|c|,|d|")->required();
    enumerate_cmd->add_option("--family", families, "Restrict to these families (repeatable)");
    enumerate_cmd->add_option("--residue", residue, "Keep clutching numbers equal to +-r mod 24");
    enumerate_cmd->add_flag("--nonzero", nonzero, "Drop clutching number 0");
    enumerate_cmd->add_flag("--count", count_only, "Print only the number of matching specs");

    auto* pairs_cmd = app.add_subcommand("pairs", "Homotopy-equivalent but non-homeomorphic clutching classes");
    pairs_cmd->add_option("--box", box, "Bound on |a|,|b|,|c|,|d|")->required();

    bool progress = false;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare formula and graph-derived clutching numbers");
    oracle_cmd->add_option("--box", box, "Bound on |a|,|b|,|c|,|d|")->required();
    oracle_cmd->add_flag("--progress", progress, "Report each finished family on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputFailure;
    }

    try {
        if (*validate_cmd) return cmd_validate(cfg, path);
        if (*classify_cmd) return cmd_classify(cfg, path, base_path, map_path, exhaustive);
        if (*build_cmd) return cmd_build(cfg, family, labels, with_connection);
        if (*invariants_cmd) return cmd_invariants(cfg, family, labels);
        if (*enumerate_cmd) return cmd_enumerate(cfg, box, families, residue, nonzero, count_only);
        if (*pairs_cmd) return cmd_pairs(cfg, box);
        if (*oracle_cmd) return cmd_oracle_check(cfg, box, progress);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputFailure;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputFailure;
    } catch (const NotAFibration& e) {
        std::cerr << "not a fibration: " << e.what() << "\n";
        for (std::size_t i = 1; i < e.violations().size(); ++i) std::cerr << "  also: " << e.violations()[i] << "\n";
        return kDomainFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainFailure;
    }
    return kInputFailure;
}
