#ifndef GKM_CASES_HPP
#define GKM_CASES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace gkm {

/// Product (two disjoint horizontal biangles) or twisted (a horizontal 4-cycle).
enum class Shape { Product, Twisted };
/// Whether transport along the two base directions agrees on fiber edges.
enum class Transport { Agree, Disagree };
enum class Signs { PlusPlus, MinusMinus, PlusMinus };

/// One of the ten fibration types. Disagree/MinusMinus is never stored; it
/// is normalized to Disagree/PlusPlus.
class CaseLabel {
public:
    /// Throws InvalidParams for the unnormalized pair (Disagree, MinusMinus).
    CaseLabel(Shape shape, Transport transport, Signs signs);

    Shape shape() const noexcept { return shape_; }
    Transport transport() const noexcept { return transport_; }
    Signs signs() const noexcept { return signs_; }

    /// Sign of the (0,1)-congruence for the first and second fiber edge.
    int first_sign() const noexcept { return signs_ == Signs::MinusMinus ? -1 : 1; }
    int second_sign() const noexcept { return signs_ == Signs::PlusPlus ? 1 : -1; }

    /// Orientable iff the graph admits a realization: PA++, PD++, PA--, TA+-, TD+-.
    bool realizable() const noexcept;

    /// "PA++", "TD+-", ...
    std::string str() const;
    /// Accepts ASCII ("PA+-") and the unicode minus sign; "PD--" parses as PD++.
    static std::optional<CaseLabel> parse(std::string_view text);

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
    friend auto operator<=>(const CaseLabel&, const CaseLabel&) = default;

private:
    Shape shape_;
    Transport transport_;
    Signs signs_;
};

std::ostream& operator<<(std::ostream& os, const CaseLabel& c);

/// The five realizable families followed by the five non-orientable patterns.
const std::array<CaseLabel, 10>& all_cases();
const std::array<CaseLabel, 5>& realizable_cases();
const std::array<CaseLabel, 5>& nonorientable_cases();

namespace cases {
CaseLabel PA_pp();
CaseLabel PD_pp();
CaseLabel PA_mm();
CaseLabel TA_pm();
CaseLabel TD_pm();
}  // namespace cases

/// Fiber weights (a,b) and (c,d) of the left fiber.
struct FiberLabels {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    friend bool operator==(const FiberLabels&, const FiberLabels&) = default;
    friend auto operator<=>(const FiberLabels&, const FiberLabels&) = default;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const FiberLabels& l);

/// Parameters describing the same labeled graph of `family`: each fiber pair
/// may be negated on its own in case A, only both together in case D, and
/// D+- (either shape) additionally allows (a,b,c,d) -> (c,d,-a,-b).
std::set<FiberLabels> equivalent_labels(const CaseLabel& family, const FiberLabels& labels);

}  // namespace gkm

#endif  // GKM_CASES_HPP
