#include <doctest.h>

#include "gkm/errors.hpp"
#include "gkm/families.hpp"
#include "gkm/fibration.hpp"
#include "support.hpp"

using namespace gkm;

namespace {

FibrationStructure fibration_of(const CaseLabel& c, const FiberLabels& l) {
    return detect_fibration(build_case_graph(c, l), standard_base(), family_vertex_map());
}

std::size_t count_horizontal(const FibrationStructure& fib, VertexId v) {
    std::size_t n = 0;
    for (DartId e : fib.total.out(v)) n += fib.horizontal(e);
    return n;
}

// eps of the (0,1)-congruences of the two fiber edges at the first vertex,
// for an explicit lift.
std::pair<int, int> y_signs(const FibrationStructure& fib, const Connection& conn, const Lift& lift) {
    const auto& g = fib.total;
    DartId hy = 0;
    for (DartId e : g.out(0)) {
        if (fib.horizontal(e) && g.label(e).rep() == IntVec{0, 1}) hy = e;
    }
    const DartId v1 = 0, v2 = 2;
    const auto w1 = transport_witness(g, lift, hy, v1, conn.transport(g, hy, v1));
    const auto w2 = transport_witness(g, lift, hy, v2, conn.transport(g, hy, v2));
    return {w1->epsilon, w2->epsilon};
}

}  // namespace

TEST_SUITE("fibration") {

TEST_CASE("standard base") {
    const auto b = standard_base();
    CHECK(validate(b).ok());
    CHECK(b.names() == std::vector<std::string>{"p", "q"});
}

TEST_CASE("product graph is a fibration with two horizontal and two vertical darts per vertex") {
    const auto fib = fibration_of(cases::PA_pp(), {1, 1, 2, 3});
    for (VertexId v = 0; v < 4; ++v) CHECK(count_horizontal(fib, v) == 2);
    CHECK(fib.left_fiber == std::array<VertexId, 2>{0, 1});
    CHECK(fib.right_fiber == std::array<VertexId, 2>{2, 3});
    for (DartId e = 0; e < fib.total.dart_count(); ++e) {
        if (fib.horizontal(e)) CHECK(fib.base.label(*fib.projection[e]) == fib.total.label(e));
    }
}

TEST_CASE("twisted graph is detected") {
    const auto fib = fibration_of(cases::TD_pm(), {2, 1, 1, 3});
    const auto cls = classify(fib, swap_invariant_connection(fib));
    CHECK(cls.label.shape() == Shape::Twisted);
}

TEST_CASE("map given by vertex names") {
    const auto g = build_graph(BundleSpec::make(cases::PD_pp(), {1, -1, 2, 23}));
    const auto fib = detect_fibration(g, standard_base(), std::map<std::string, std::string>{
                                                               {"L0", "p"}, {"L1", "p"}, {"R0", "q"}, {"R1", "q"}});
    CHECK(fib.vertex_map == family_vertex_map());
    CHECK_THROWS_AS(detect_fibration(g, standard_base(), std::map<std::string, std::string>{{"L0", "p"}}),
                    NotAFibration);
    CHECK_THROWS_AS(detect_fibration(g, standard_base(), std::map<std::string, std::string>{
                                                             {"L0", "p"}, {"L1", "p"}, {"R0", "q"}, {"R1", "z"}}),
                    NotAFibration);
}

TEST_CASE("degenerate inputs are rejected") {
    const auto base = standard_base();
    SUBCASE("total equals base") {
        CHECK_THROWS_AS(detect_fibration(base, base, std::vector<VertexId>{0, 1}), NotAFibration);
    }
    SUBCASE("fiber with the wrong vertex count") {
        const auto g = build_graph(BundleSpec::make(cases::PA_pp(), {1, 1, 2, 3}));
        try {
            detect_fibration(g, base, std::vector<VertexId>{0, 0, 0, 1});
            FAIL("expected NotAFibration");
        } catch (const NotAFibration& ex) {
            CHECK_FALSE(ex.violations().empty());
        }
    }
    SUBCASE("horizontal label not matching the base") {
        const auto g = build_graph(BundleSpec::make(cases::PA_pp(), {1, 1, 2, 3}));
        CHECK_THROWS_AS(detect_fibration(g, base, std::vector<VertexId>{0, 1, 0, 1}), NotAFibration);
    }
    SUBCASE("base with other labels") {
        const auto other = GkmGraph::from_edges(2, {"p", "q"}, {{0, 1, {1, 1}}, {0, 1, {0, 1}}});
        const auto g = build_graph(BundleSpec::make(cases::PA_pp(), {1, 1, 2, 3}));
        CHECK_THROWS_AS(detect_fibration(g, other, family_vertex_map()), NotAFibration);
    }
}

TEST_CASE("swap-invariant connection examples") {
    SUBCASE("PA++ gives the product connection") {
        const auto fib = fibration_of(cases::PA_pp(), {1, 1, 2, 3});
        const auto conn = swap_invariant_connection(fib);
        CHECK(is_swap_invariant(fib, conn));
        for (DartId e = 0; e < fib.total.dart_count(); ++e) {
            if (!fib.horizontal(e) || fib.total.dart(e).from > 1) continue;
            CHECK(conn.transport(fib.total, e, 0) / 2 == 2);
            CHECK(conn.transport(fib.total, e, 2) / 2 == 3);
        }
    }
    SUBCASE("PD++ (1,-1,2,23) moves (a,b) to (c,b) along (1,0)") {
        const auto fib = fibration_of(cases::PD_pp(), {1, -1, 2, 23});
        const auto conn = swap_invariant_connection(fib);
        const auto& g = fib.total;
        DartId hx = 0;
        for (DartId e : g.out(0)) {
            if (fib.horizontal(e) && g.label(e).rep() == IntVec{1, 0}) hx = e;
        }
        CHECK(g.label(conn.transport(g, hx, 0)) == canonicalize({2, -1}));
        CHECK(g.label(conn.transport(g, hx, 2)) == canonicalize({1, 23}));
    }
    SUBCASE("overlap picks the first connection in search order") {
        const auto fib = fibration_of(cases::PA_pp(), {1, 1, 1, 3});
        const auto all = swap_invariant_connections(fib);
        CHECK(all.connections.size() > 1);
        CHECK(swap_invariant_connection(fib) == all.connections.front());
        CHECK(swap_invariant_connection(fib) == swap_invariant_connection(fib));
    }
}

TEST_CASE("swap-invariant connections are fibration compatible") {
    for (const auto& c : all_cases()) {
        const auto fib = fibration_of(c, {1, 2, 3, 1});
        const auto filter = fib.filter();
        for (const auto& conn : swap_invariant_connections(fib).connections) {
            CHECK(is_swap_invariant(fib, conn));
            CHECK(connection_axiom_violations(fib.total, conn).empty());
            CHECK(is_compatible(fib.total, conn, Lift::canonical(fib.total)));
            for (DartId e = 0; e < fib.total.dart_count(); ++e) {
                for (DartId f : fib.total.out(fib.total.dart(e).from)) {
                    if (f != e) CHECK(filter(e, f, conn.transport(fib.total, e, f)));
                }
            }
        }
    }
}

TEST_CASE("classify examples") {
    {
        const auto fib = fibration_of(cases::PA_pp(), {1, 1, 1, 2});
        CHECK(classify(fib, swap_invariant_connection(fib)) == Classification{cases::PA_pp(), {1, 1, 1, 2}});
    }
    {
        const auto fib = fibration_of(cases::TA_pm(), {1, 1, 2, 3});
        CHECK(classify(fib, swap_invariant_connection(fib)) == Classification{cases::TA_pm(), {1, 1, 2, 3}});
    }
    {
        // D-- labels (a,b),(c,d) | (-c,b),(-a,d) with (a,b,c,d) = (1,1,2,3)
        const auto g = GkmGraph::from_edges(2, {"L0", "L1", "R0", "R1"},
                                            {{0, 1, {1, 1}},
                                             {0, 1, {2, 3}},
                                             {2, 3, {-2, 1}},
                                             {2, 3, {-1, 3}},
                                             {0, 2, {1, 0}},
                                             {1, 3, {1, 0}},
                                             {0, 2, {0, 1}},
                                             {1, 3, {0, 1}}});
        const auto fib = detect_fibration(g, standard_base(), family_vertex_map());
        CHECK(classify(fib, swap_invariant_connection(fib)) == Classification{cases::PD_pp(), {1, 1, -2, -3}});
        CHECK(oracle::fibered_isomorphic(g, build_case_graph(cases::PD_pp(), {1, 1, -2, -3})));
    }
}

TEST_CASE("classify_all examples") {
    const auto product = standard_base();
    CHECK(case_set(classify_all(build_graph(BundleSpec::make(cases::PA_pp(), {1, 1, 1, 3})), product,
                                family_vertex_map())) == std::set<CaseLabel>{cases::PA_pp(), cases::PD_pp()});
    CHECK(case_set(classify_all(build_graph(BundleSpec::make(cases::PD_pp(), {1, -1, 2, 23})), product,
                                family_vertex_map())) == std::set<CaseLabel>{cases::PD_pp()});
    CHECK(case_set(classify_all(build_graph(BundleSpec::make(cases::PA_pp(), {1, 1, 2, 3})), product,
                                family_vertex_map())) == std::set<CaseLabel>{cases::PA_pp()});
    const auto fib = fibration_of(cases::PA_pp(), {1, 1, 1, 3});
    CHECK_THROWS_AS(classify_all(fib, 1), SearchTruncated);
}

TEST_CASE("round trip over all ten patterns") {
    for (const auto& c : all_cases()) {
        oracle::for_each_valid(c, 2, [&](const FiberLabels& l) {
            const auto g = build_case_graph(c, l);
            const auto classes = classify_all(g, standard_base(), family_vertex_map());
            const auto cases = case_set(classes);
            CHECK((cases.size() > 1) == oracle::overlap(l));
            CHECK(cases.count(c) == 1);
            const auto orbit = equivalent_labels(c, l);
            bool recovered = false;
            for (const auto& x : classes) {
                CHECK(valid_params(x.label, x.labels).ok());
                CHECK(oracle::fibered_isomorphic(build_case_graph(x.label, x.labels), g));
                if (x.label == c) recovered = recovered || orbit.count(x.labels) == 1;
            }
            CHECK_MESSAGE(recovered, c.str(), " ", l.a, ",", l.b, ",", l.c, ",", l.d);
        });
    }
}

TEST_CASE("equivalent labels describe the same graph") {
    for (const auto& c : all_cases()) {
        oracle::for_each_valid(c, 2, [&](const FiberLabels& l) {
            for (const auto& x : equivalent_labels(c, l)) {
                CHECK(oracle::fibered_isomorphic(build_case_graph(c, x), build_case_graph(c, l)));
            }
        });
    }
}

TEST_CASE("sign flips of the lift: A keeps the signs, D swaps ++ and --") {
    for (const auto& family : realizable_cases()) {
        oracle::for_each_valid(family, 3, [&](const FiberLabels& l) {
            if (oracle::overlap(l)) return;
            const auto fib = fibration_of(family, l);
            const auto& g = fib.total;
            const auto conn = swap_invariant_connection(fib);
            auto signs = oracle::figure_signs(g, family, l);
            const auto before = y_signs(fib, conn, Lift::from_signs(g, signs));
            CHECK(before == std::pair<int, int>{family.first_sign(), family.second_sign()});
            // negate the second fiber edge and its (1,0)-transport: edge 1 and
            // edge 3 in both A and D
            signs[1] = -signs[1];
            signs[3] = -signs[3];
            const auto after = y_signs(fib, conn, Lift::from_signs(g, signs));
            if (family.transport() == Transport::Agree) {
                CHECK(after == before);
            } else {
                CHECK(after == std::pair<int, int>{-before.first, -before.second});
            }
        });
    }
}

TEST_CASE("orientability follows the case table") {
    for (const auto& c : all_cases()) {
        int n = 0;
        oracle::for_each_valid(c, 2, [&](const FiberLabels& l) {
            if (++n % 11 != 0) return;
            CHECK(orientable_any(build_case_graph(c, l)) == c.realizable());
        });
    }
}

}
