#include "gkm/cases.hpp"

#include <ostream>
#include <string>

#include "gkm/errors.hpp"

namespace gkm {

CaseLabel::CaseLabel(Shape shape, Transport transport, Signs signs)
    : shape_(shape), transport_(transport), signs_(signs) {
    if (transport == Transport::Disagree && signs == Signs::MinusMinus) {
        throw InvalidParams("D-- is not a normalized case label; use D++");
    }
}

bool CaseLabel::realizable() const noexcept {
    if (shape_ == Shape::Product) return signs_ != Signs::PlusMinus;
    return signs_ == Signs::PlusMinus;
}

std::string CaseLabel::str() const {
    std::string s;
    s += shape_ == Shape::Product ? 'P' : 'T';
    s += transport_ == Transport::Agree ? 'A' : 'D';
    switch (signs_) {
        case Signs::PlusPlus: s += "++"; break;
        case Signs::MinusMinus: s += "--"; break;
        case Signs::PlusMinus: s += "+-"; break;
    }
    return s;
}

std::optional<CaseLabel> CaseLabel::parse(std::string_view text) {
    std::string ascii;
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2212 MINUS SIGN
        if (text.substr(i, 3) == "\xE2\x88\x92") {
            ascii += '-';
            i += 2;
        } else {
            ascii += text[i];
        }
    }
    if (ascii.size() != 4) return std::nullopt;
    Shape shape;
    Transport transport;
    Signs signs;
    switch (ascii[0]) {
        case 'P': case 'p': shape = Shape::Product; break;
        case 'T': case 't': shape = Shape::Twisted; break;
        default: return std::nullopt;
    }
    switch (ascii[1]) {
        case 'A': case 'a': transport = Transport::Agree; break;
        case 'D': case 'd': transport = Transport::Disagree; break;
        default: return std::nullopt;
    }
    const std::string tail = ascii.substr(2);
    if (tail == "++") signs = Signs::PlusPlus;
    else if (tail == "--") signs = Signs::MinusMinus;
    else if (tail == "+-") signs = Signs::PlusMinus;
    else return std::nullopt;
    if (transport == Transport::Disagree && signs == Signs::MinusMinus) signs = Signs::PlusPlus;
    return CaseLabel(shape, transport, signs);
}

std::ostream& operator<<(std::ostream& os, const CaseLabel& c) { return os << c.str(); }

namespace cases {
CaseLabel PA_pp() { return {Shape::Product, Transport::Agree, Signs::PlusPlus}; }
CaseLabel PD_pp() { return {Shape::Product, Transport::Disagree, Signs::PlusPlus}; }
CaseLabel PA_mm() { return {Shape::Product, Transport::Agree, Signs::MinusMinus}; }
CaseLabel TA_pm() { return {Shape::Twisted, Transport::Agree, Signs::PlusMinus}; }
CaseLabel TD_pm() { return {Shape::Twisted, Transport::Disagree, Signs::PlusMinus}; }
}  // namespace cases

const std::array<CaseLabel, 5>& realizable_cases() {
    static const std::array<CaseLabel, 5> list{cases::PA_pp(), cases::PD_pp(), cases::PA_mm(), cases::TA_pm(),
                                               cases::TD_pm()};
    return list;
}

const std::array<CaseLabel, 5>& nonorientable_cases() {
    static const std::array<CaseLabel, 5> list{
        CaseLabel{Shape::Product, Transport::Agree, Signs::PlusMinus},
        CaseLabel{Shape::Product, Transport::Disagree, Signs::PlusMinus},
        CaseLabel{Shape::Twisted, Transport::Agree, Signs::PlusPlus},
        CaseLabel{Shape::Twisted, Transport::Agree, Signs::MinusMinus},
        CaseLabel{Shape::Twisted, Transport::Disagree, Signs::PlusPlus},
    };
    return list;
}

const std::array<CaseLabel, 10>& all_cases() {
    static const std::array<CaseLabel, 10> list = [] {
        std::array<CaseLabel, 10> out{realizable_cases()[0], realizable_cases()[1], realizable_cases()[2],
                                      realizable_cases()[3], realizable_cases()[4], nonorientable_cases()[0],
                                      nonorientable_cases()[1], nonorientable_cases()[2], nonorientable_cases()[3],
                                      nonorientable_cases()[4]};
        return out;
    }();
    return list;
}

std::string FiberLabels::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + ")";
}

std::ostream& operator<<(std::ostream& os, const FiberLabels& l) { return os << l.str(); }

std::set<FiberLabels> equivalent_labels(const CaseLabel& family, const FiberLabels& l) {
    std::set<FiberLabels> out;
    auto add_signs = [&](const FiberLabels& x) {
        out.insert(x);
        out.insert({-x.a, -x.b, -x.c, -x.d});
        if (family.transport() == Transport::Agree) {
            out.insert({-x.a, -x.b, x.c, x.d});
            out.insert({x.a, x.b, -x.c, -x.d});
        }
    };
    add_signs(l);
    if (family.transport() == Transport::Disagree && family.signs() == Signs::PlusMinus) {
        add_signs({l.c, l.d, -l.a, -l.b});
    }
    return out;
}

}  // namespace gkm
