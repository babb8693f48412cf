#include "gkm/lattice.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "gkm/errors.hpp"

namespace gkm {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
    return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in subtraction");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
    return r;
}

std::int64_t neg(std::int64_t a) { return sub(0, a); }

}  // namespace checked

namespace {

void require_same_size(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vectors of length " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
}

}  // namespace

bool IntVec::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t IntVec::max_abs() const {
    std::int64_t m = 0;
    for (auto x : entries_) m = std::max(m, x < 0 ? checked::neg(x) : x);
    return m;
}

IntVec IntVec::operator-() const { return scaled(-1); }

IntVec IntVec::operator+(const IntVec& other) const {
    require_same_size(*this, other);
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked::add(entries_[i], other.entries_[i]);
    return IntVec(std::move(out));
}

IntVec IntVec::operator-(const IntVec& other) const {
    require_same_size(*this, other);
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked::sub(entries_[i], other.entries_[i]);
    return IntVec(std::move(out));
}

IntVec IntVec::scaled(std::int64_t factor) const {
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked::mul(entries_[i], factor);
    return IntVec(std::move(out));
}

std::string IntVec::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntVec& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os << ')';
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.rep(); }

Weight canonicalize(const IntVec& v) {
    for (auto x : v.entries()) {
        if (x > 0) return Weight(v);
        if (x < 0) return Weight(-v);
    }
    throw ZeroWeight("zero vector has no weight class");
}

bool independent(const IntVec& u, const IntVec& v) {
    require_same_size(u, v);
    // rank 2 iff some 2x2 minor is nonzero
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            if (checked::mul(u[i], v[j]) != checked::mul(u[j], v[i])) return true;
        }
    }
    return false;
}

bool independent(const Weight& u, const Weight& v) { return independent(u.rep(), v.rep()); }

std::optional<CongruenceWitness> congruence_witness(const IntVec& target, const IntVec& source,
                                                    const IntVec& modulus) {
    require_same_size(target, source);
    require_same_size(target, modulus);
    if (modulus.is_zero()) throw ZeroWeight("congruence modulo the zero vector");

    std::size_t pivot = 0;
    while (modulus[pivot] == 0) ++pivot;

    for (int eps : {1, -1}) {
        const IntVec diff = target - source.scaled(eps);
        if (diff[pivot] % modulus[pivot] != 0) continue;
        const std::int64_t c = diff[pivot] / modulus[pivot];
        if (diff == modulus.scaled(c)) return CongruenceWitness{eps, c};
    }
    return std::nullopt;
}

int rank(std::span<const IntVec> vectors) {
    if (vectors.empty()) return 0;
    const std::size_t rows = vectors.size();
    const std::size_t cols = vectors.front().size();
    for (const auto& v : vectors) require_same_size(vectors.front(), v);

    std::vector<std::vector<std::int64_t>> m(rows);
    for (std::size_t i = 0; i < rows; ++i) m[i].assign(vectors[i].entries().begin(), vectors[i].entries().end());

    // Bareiss: after step r every entry below/right of the pivot is an r x r minor,
    // so the division by the previous pivot is exact.
    std::int64_t prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                const std::int64_t num = checked::sub(checked::mul(m[r][col], m[i][j]),
                                                      checked::mul(m[i][col], m[r][j]));
                m[i][j] = num / prev;
            }
            m[i][col] = 0;
        }
        prev = m[r][col];
        ++r;
    }
    return static_cast<int>(r);
}

int rank(std::initializer_list<IntVec> vectors) {
    return rank(std::span<const IntVec>(vectors.begin(), vectors.size()));
}

QuadForm QuadForm::operator+(const QuadForm& o) const {
    return {checked::add(cxx, o.cxx), checked::add(cxy, o.cxy), checked::add(cyy, o.cyy)};
}

QuadForm QuadForm::operator-(const QuadForm& o) const {
    return {checked::sub(cxx, o.cxx), checked::sub(cxy, o.cxy), checked::sub(cyy, o.cyy)};
}

std::int64_t QuadForm::eval(std::int64_t x, std::int64_t y) const {
    using namespace checked;
    return add(add(mul(cxx, mul(x, x)), mul(cxy, mul(x, y))), mul(cyy, mul(y, y)));
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadForm& q) {
    bool first = true;
    auto term = [&](std::int64_t c, const char* mono) {
        if (c == 0) return;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        const std::int64_t a = c < 0 ? -c : c;
        if (a != 1) os << a;
        os << mono;
        first = false;
    };
    term(q.cxx, "x^2");
    term(q.cxy, "xy");
    term(q.cyy, "y^2");
    if (first) os << '0';
    return os;
}

QuadForm square_linear(std::int64_t a, std::int64_t b) {
    using namespace checked;
    return {mul(a, a), mul(2, mul(a, b)), mul(b, b)};
}

}  // namespace gkm
