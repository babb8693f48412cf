#ifndef GKM_ERRORS_HPP
#define GKM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GKM_DEFINE_ERROR(Name)                  \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

GKM_DEFINE_ERROR(ZeroWeight);
GKM_DEFINE_ERROR(DimensionMismatch);
GKM_DEFINE_ERROR(Overflow);
GKM_DEFINE_ERROR(NoConnection);
GKM_DEFINE_ERROR(NotCompatible);
GKM_DEFINE_ERROR(AmbiguousSign);
GKM_DEFINE_ERROR(InconsistentEta);
GKM_DEFINE_ERROR(SearchTruncated);
GKM_DEFINE_ERROR(InvalidParams);
GKM_DEFINE_ERROR(WrongRank);
GKM_DEFINE_ERROR(InconsistentFiber);
GKM_DEFINE_ERROR(NotMultipleOfXY);
GKM_DEFINE_ERROR(OddCoefficient);
GKM_DEFINE_ERROR(OracleMismatch);
GKM_DEFINE_ERROR(ParseError);

#undef GKM_DEFINE_ERROR

/// Raised by fibration detection. `what()` is the first violated clause;
/// `violations()` lists all of them.
class NotAFibration : public Error {
public:
    explicit NotAFibration(std::vector<std::string> violations)
        : Error(violations.empty() ? std::string("not a fibration") : violations.front()),
          violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

}  // namespace gkm

#endif  // GKM_ERRORS_HPP
