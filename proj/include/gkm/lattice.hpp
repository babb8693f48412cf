#ifndef GKM_LATTICE_HPP
#define GKM_LATTICE_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gkm {

namespace checked {
// 64-bit arithmetic that throws gkm::Overflow instead of wrapping.
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t neg(std::int64_t a);
}  // namespace checked

/// A vector in Z^k. Arithmetic is overflow-checked.
class IntVec {
public:
    IntVec() = default;
    IntVec(std::initializer_list<std::int64_t> entries) : entries_(entries) {}
    explicit IntVec(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {}

    std::size_t size() const noexcept { return entries_.size(); }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::span<const std::int64_t> entries() const noexcept { return entries_; }

    bool is_zero() const noexcept;
    std::int64_t max_abs() const;

    IntVec operator-() const;
    IntVec operator+(const IntVec& other) const;
    IntVec operator-(const IntVec& other) const;
    IntVec scaled(std::int64_t factor) const;

    friend bool operator==(const IntVec&, const IntVec&) = default;
    friend auto operator<=>(const IntVec&, const IntVec&) = default;

    std::string str() const;

private:
    std::vector<std::int64_t> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntVec& v);

/// An element of Z^k / {+-1}, stored as the representative whose first
/// nonzero entry is positive. Never zero.
class Weight {
public:
    const IntVec& rep() const noexcept { return rep_; }
    std::size_t size() const noexcept { return rep_.size(); }

    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight&, const Weight&) = default;

private:
    friend Weight canonicalize(const IntVec& v);
    explicit Weight(IntVec rep) : rep_(std::move(rep)) {}
    IntVec rep_;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

/// target = epsilon * source + c * modulus
struct CongruenceWitness {
    int epsilon = 1;
    std::int64_t c = 0;

    friend bool operator==(const CongruenceWitness&, const CongruenceWitness&) = default;
};

/// Homogeneous quadratic cxx*x^2 + cxy*x*y + cyy*y^2 with integer coefficients.
struct QuadForm {
    std::int64_t cxx = 0;
    std::int64_t cxy = 0;
    std::int64_t cyy = 0;

    QuadForm operator+(const QuadForm& o) const;
    QuadForm operator-(const QuadForm& o) const;
    QuadForm& operator+=(const QuadForm& o) { return *this = *this + o; }
    std::int64_t eval(std::int64_t x, std::int64_t y) const;
    bool is_xy_multiple() const noexcept { return cxx == 0 && cyy == 0; }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& q);

/// Sign-normalized representative. Throws ZeroWeight on the zero vector.
Weight canonicalize(const IntVec& v);

/// Linear independence over Q. Throws DimensionMismatch.
bool independent(const IntVec& u, const IntVec& v);
bool independent(const Weight& u, const Weight& v);

/// Solves target = eps*source + c*modulus for eps in {+1,-1}, c in Z.
/// The eps = +1 solution is returned when both signs admit one.
std::optional<CongruenceWitness> congruence_witness(const IntVec& target, const IntVec& source,
                                                    const IntVec& modulus);

/// Rank over Q by fraction-free (Bareiss) elimination.
int rank(std::span<const IntVec> vectors);
int rank(std::initializer_list<IntVec> vectors);

/// (a*x + b*y)^2
QuadForm square_linear(std::int64_t a, std::int64_t b);

}  // namespace gkm

#endif  // GKM_LATTICE_HPP
