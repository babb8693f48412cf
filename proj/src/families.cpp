#include "gkm/families.hpp"

#include "gkm/errors.hpp"
#include "gkm/lattice.hpp"

namespace gkm {

namespace {

using checked::add;
using checked::mul;
using checked::sub;

void require(const ParamReport& r) {
    if (!r.ok()) throw InvalidParams(r.violations.front());
}

}  // namespace

ParamReport valid_params(const CaseLabel& family, const FiberLabels& l) {
    ParamReport r;
    if (l.a == 0 || l.b == 0 || l.c == 0 || l.d == 0) r.violations.push_back("a, b, c, d must be nonzero");
    if (sub(mul(l.a, l.d), mul(l.b, l.c)) == 0) r.violations.push_back("ad - bc = 0");
    const bool plus_minus = family.signs() == Signs::PlusMinus;
    if (family.transport() == Transport::Agree) {
        if (plus_minus && add(mul(l.a, l.d), mul(l.b, l.c)) == 0) r.violations.push_back("ad + bc = 0");
    } else if (plus_minus) {
        if (add(mul(l.c, l.d), mul(l.a, l.b)) == 0) r.violations.push_back("cd + ab = 0");
    } else if (sub(mul(l.c, l.d), mul(l.a, l.b)) == 0) {
        r.violations.push_back("cd - ab = 0");
    }
    return r;
}

ParamReport valid_params(const CaseLabel& family, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return valid_params(family, FiberLabels{a, b, c, d});
}

BundleSpec BundleSpec::make(const CaseLabel& family, const FiberLabels& labels) {
    if (!family.realizable()) throw InvalidParams(family.str() + " is not a realizable family");
    require(valid_params(family, labels));
    return BundleSpec{family, labels};
}

std::string BundleSpec::str() const { return family.str() + " " + labels.str(); }

RightFiber right_fiber_labels(const CaseLabel& family, const FiberLabels& l) {
    const std::int64_t e1 = family.first_sign();
    const std::int64_t e2 = family.second_sign();
    if (family.transport() == Transport::Agree) {
        return {{mul(e1, l.a), l.b}, {mul(e2, l.c), l.d}};
    }
    return {{mul(e2, l.c), l.b}, {mul(e1, l.a), l.d}};
}

GkmGraph build_case_graph(const CaseLabel& family, const FiberLabels& labels,
                          const std::optional<Extension>& ext) {
    require(valid_params(family, labels));
    const RightFiber right = right_fiber_labels(family, labels);
    auto vec = [&](std::int64_t x, std::int64_t y, std::int64_t s, std::int64_t t) {
        return ext ? IntVec{x, y, s, t} : IntVec{x, y};
    };
    const Extension e = ext.value_or(Extension{});
    enum : VertexId { L0, L1, R0, R1 };
    const bool twisted = family.shape() == Shape::Twisted;
    std::vector<EdgeSpec> edges{
        {L0, L1, vec(labels.a, labels.b, e.k, e.l)},
        {L0, L1, vec(labels.c, labels.d, e.m, e.n)},
        {R0, R1, vec(right.first[0], right.first[1], e.k, e.l)},
        {R0, R1, vec(right.second[0], right.second[1], e.m, e.n)},
        {L0, R0, vec(1, 0, 0, 0)},
        {L1, R1, vec(1, 0, 0, 0)},
        {L0, twisted ? R1 : R0, vec(0, 1, 0, 0)},
        {L1, twisted ? R0 : R1, vec(0, 1, 0, 0)},
    };
    return GkmGraph::from_edges(ext ? 4 : 2, {"L0", "L1", "R0", "R1"}, edges);
}

GkmGraph build_graph(const BundleSpec& spec) {
    if (!spec.family.realizable()) throw InvalidParams(spec.family.str() + " is not a realizable family");
    return build_case_graph(spec.family, spec.labels);
}

GkmGraph build_nonorientable(const CaseLabel& pattern, const FiberLabels& labels) {
    if (pattern.realizable()) throw InvalidParams(pattern.str() + " is a realizable family, not a non-orientable pattern");
    return build_case_graph(pattern, labels);
}

std::vector<VertexId> family_vertex_map() { return {0, 0, 1, 1}; }

}  // namespace gkm
