#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnfeas/exactla.hpp"
#include "crnfeas/matrix.hpp"
#include "crnfeas/simplex.hpp"

namespace crnfeas {

/// Element of {-1, 0, +1}^k.
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::size_t length) : entries_(length, 0) {}
    explicit SignVector(std::vector<int8_t> entries) : entries_(std::move(entries)) {}

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }

    void set(std::size_t i, int s) { entries_[i] = static_cast<int8_t>(s); }

    bool is_zero() const {
        for (int8_t e : entries_)
            if (e != 0) return false;
        return true;
    }

    SignVector negated() const {
        std::vector<int8_t> out(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = static_cast<int8_t>(-entries_[i]);
        return SignVector(std::move(out));
    }

    bool operator==(const SignVector& other) const { return entries_ == other.entries_; }
    bool operator<(const SignVector& other) const { return entries_ < other.entries_; }

    /// Compact rendering, e.g. "+-0+".
    std::string str() const {
        std::string s;
        s.reserve(entries_.size());
        for (int8_t e : entries_) s += (e > 0 ? '+' : (e < 0 ? '-' : '0'));
        return s;
    }

private:
    std::vector<int8_t> entries_;
};

/// Componentwise sign.
inline SignVector sign_of(const RatVector& v) {
    SignVector s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s.set(i, sign(v[i]));
    return s;
}

/// Set of sign vectors of common length; each element retains an exact
/// realizing witness. Sets produced from subspaces are closed under negation.
struct SignSet {
    std::size_t length = 0;
    std::map<SignVector, RatVector> elements;

    bool contains(const SignVector& s) const { return elements.count(s) > 0; }
    std::size_t size() const { return elements.size(); }

    void insert(const SignVector& s, RatVector witness) {
        elements.emplace(s, std::move(witness));
    }

    /// Elements excluding the zero sign vector (the * operator).
    std::vector<std::pair<SignVector, RatVector>> nonzero_elements() const {
        std::vector<std::pair<SignVector, RatVector>> out;
        for (const auto& [s, w] : elements) {
            if (!s.is_zero()) out.emplace_back(s, w);
        }
        return out;
    }
};

inline constexpr std::size_t kDefaultSignCap = 14;

/// The exact sign-vector set of span(basis) inside R^ambient.
///
/// Candidates are restricted to supports inside the union of basis supports
/// and to representatives whose first nonzero entry is + (subspace symmetry
/// supplies the negations). Each candidate is decided by one exact
/// feasibility probe: membership in the span is encoded as equalities
/// against a basis of the orthogonal complement.
inline SignSet subspace_signs(const std::vector<RatVector>& basis, std::size_t ambient,
                              std::size_t cap = kDefaultSignCap) {
    for (const auto& v : basis) {
        if (v.size() != ambient) throw DimensionError("subspace_signs: basis vector length mismatch");
    }
    if (ambient > cap) throw CapacityError(ambient, cap);

    SignSet out;
    out.length = ambient;
    out.insert(SignVector(ambient), RatVector(ambient, Rational(0)));

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < ambient; ++i) {
        for (const auto& v : basis) {
            if (v[i] != 0) {
                support.push_back(i);
                break;
            }
        }
    }
    if (support.empty()) return out;

    const auto complement = orthogonal_complement(basis, ambient);
    const RatMatrix equalities =
        complement.empty() ? RatMatrix(0, 0) : RatMatrix::from_rows(complement);

    // Odometer over {0,+, -} on the support coordinates; first nonzero must
    // be +, so coordinates before the leading one stay 0.
    const std::size_t t = support.size();
    std::vector<int> digits(t, 0);
    for (;;) {
        std::size_t pos = t;
        while (pos > 0) {
            --pos;
            if (digits[pos] == 0) {
                digits[pos] = 1;
                break;
            }
            if (digits[pos] == 1) {
                // Only allow -1 if some earlier digit is positive.
                bool leading = true;
                for (std::size_t q = 0; q < pos; ++q) {
                    if (digits[q] != 0) {
                        leading = false;
                        break;
                    }
                }
                if (!leading) {
                    digits[pos] = -1;
                    break;
                }
            }
            digits[pos] = 0;
        }
        if (pos == 0 && digits[0] == 0) break;  // odometer wrapped

        SignVector candidate(ambient);
        std::vector<SignTag> tags(ambient, SignTag::zero);
        for (std::size_t q = 0; q < t; ++q) {
            candidate.set(support[q], digits[q]);
            tags[support[q]] = strict_tag(digits[q]);
        }

        auto witness = strict_feasible(LinearSystem::make(equalities, tags));
        if (witness) {
            out.insert(candidate, *witness);
            out.insert(candidate.negated(), negated(*witness));
        }
    }
    return out;
}

/// Membership of a sign pattern in sigma(K); by definition of Sigma(K) this
/// also decides x in Sigma(K) for any x with the given sign.
inline bool sigma_inverse_member(const SignVector& x_sign, const SignSet& s) {
    if (x_sign.size() != s.length) throw DimensionError("sigma_inverse_member: length mismatch");
    return s.contains(x_sign);
}

/// Searches for x with sign(x) = source_sign and sign(Bx) = target_sign.
/// One exact feasibility probe over the stacked variables (x, y) with y = Bx.
inline std::optional<RatVector> image_sign_reachable(const RatMatrix& b, const SignVector& source_sign,
                                                     const SignVector& target_sign) {
    const std::size_t n = b.cols();
    const std::size_t r = b.rows();
    if (source_sign.size() != n) throw DimensionError("image_sign_reachable: source length != B columns");
    if (target_sign.size() != r) throw DimensionError("image_sign_reachable: target length != B rows");

    RatMatrix eq(r, n + r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) eq(i, j) = b(i, j);
        eq(i, n + i) = -1;
    }
    std::vector<SignTag> tags(n + r);
    for (std::size_t j = 0; j < n; ++j) tags[j] = strict_tag(source_sign[j]);
    for (std::size_t i = 0; i < r; ++i) tags[n + i] = strict_tag(target_sign[i]);

    auto witness = strict_feasible(LinearSystem::make(eq, tags));
    if (!witness) return std::nullopt;
    return RatVector(witness->begin(), witness->begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace crnfeas
