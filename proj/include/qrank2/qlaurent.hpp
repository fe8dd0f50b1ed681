#pragma once

// Exact arithmetic in the Laurent polynomial ring Z[q^{+-1}], together with
// the quantum integers, bar-invariant Gaussian binomial coefficients and the
// subset-exponent decomposition used by the recursive Kronecker weights.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qrank2 {

using coeff_t = long long;

// Laurent polynomial in q with integer coefficients.  Canonical form: the
// exponent -> coefficient map never stores a zero coefficient.
class QLaurent {
public:
    QLaurent() = default;

    static QLaurent zero() { return QLaurent{}; }

    static QLaurent one() { return monomial(0, 1); }

    // c * q^e
    static QLaurent monomial(int exponent, coeff_t c) {
        QLaurent f;
        if (c != 0) f.coeffs_[exponent] = c;
        return f;
    }

    bool is_zero() const { return coeffs_.empty(); }

    bool is_one() const {
        return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
               coeffs_.begin()->second == 1;
    }

    // Nonzero single term?
    bool is_monomial() const { return coeffs_.size() == 1; }

    coeff_t coeff(int exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? 0 : it->second;
    }

    const std::map<int, coeff_t>& terms() const { return coeffs_; }

    int min_exponent() const {
        if (is_zero()) throw std::domain_error("min_exponent of zero");
        return coeffs_.begin()->first;
    }

    int max_exponent() const {
        if (is_zero()) throw std::domain_error("max_exponent of zero");
        return coeffs_.rbegin()->first;
    }

    void add_term(int exponent, coeff_t c) {
        if (c == 0) return;
        auto it = coeffs_.find(exponent);
        if (it == coeffs_.end()) {
            coeffs_[exponent] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    QLaurent& operator+=(const QLaurent& o) {
        for (auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }

    QLaurent& operator-=(const QLaurent& o) {
        for (auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }

    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }

    friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
        QLaurent r;
        for (auto& [ea, ca] : a.coeffs_)
            for (auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

    QLaurent operator-() const {
        QLaurent r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    // Multiply by q^e.
    QLaurent shifted(int e) const {
        QLaurent r;
        for (auto& [ex, c] : coeffs_) r.coeffs_[ex + e] = c;
        return r;
    }

    bool operator==(const QLaurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const QLaurent& o) const { return coeffs_ != o.coeffs_; }

    // q -> q^m on exponents.
    QLaurent substitute_power(int m) const {
        if (m < 1) throw std::invalid_argument("substitute_power: m >= 1");
        QLaurent r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e * m] = c;
        return r;
    }

    // Bar involution q -> q^{-1}.
    QLaurent bar() const {
        QLaurent r;
        for (auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
        return r;
    }

    bool bar_invariant() const { return *this == bar(); }

    coeff_t eval_at_one() const {
        coeff_t s = 0;
        for (auto& [e, c] : coeffs_) s += c;
        return s;
    }

    // "q^-2 + 3 + 2*q^4"-style rendering, terms by increasing exponent.
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : coeffs_) {
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            coeff_t a = c > 0 ? c : -c;
            if (e == 0) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::map<int, coeff_t> coeffs_;
};

// [k]_q = q^{-(k-1)} + q^{-(k-3)} + ... + q^{k-1}
inline QLaurent qint(int k) {
    if (k < 0) throw std::invalid_argument("qint: k >= 0");
    QLaurent f;
    for (int e = -(k - 1); e <= k - 1; e += 2) f.add_term(e, 1);
    return f;
}

// [k]_q!
inline QLaurent qfactorial(int k) {
    if (k < 0) throw std::invalid_argument("qfactorial: k >= 0");
    QLaurent f = QLaurent::one();
    for (int i = 2; i <= k; ++i) f *= qint(i);
    return f;
}

namespace detail {
// Bar-invariant q-Pascal rule:
//   binom(l,k) = q^k binom(l-1,k) + q^{-(l-k)} binom(l-1,k-1)
// (avoids intermediate rational objects; agrees with [l]!/([k]![l-k]!)).
inline const QLaurent& qbinom_memo(int l, int k) {
    static std::map<std::pair<int, int>, QLaurent> cache;
    auto key = std::make_pair(l, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    QLaurent r;
    if (k == 0 || k == l) {
        r = QLaurent::one();
    } else {
        r = qbinom_memo(l - 1, k).shifted(k) +
            qbinom_memo(l - 1, k - 1).shifted(-(l - k));
    }
    return cache.emplace(key, std::move(r)).first->second;
}
}  // namespace detail

// Bar-invariant Gaussian binomial; 0 for k > l or k < 0 (total-function
// convention).
inline QLaurent qbinom(int l, int k) {
    if (l < 0) throw std::invalid_argument("qbinom: l >= 0");
    if (k < 0 || k > l) return QLaurent::zero();
    return detail::qbinom_memo(l, k);
}

// binom(l,k) with q -> q^m.
inline QLaurent qbinom_pow(int l, int k, int m) {
    QLaurent b = qbinom(l, k);
    return b.is_zero() ? b : b.substitute_power(m);
}

// Exponent of the monomial of binom(h,|J|)_q indexed by the subset J of
// {1,...,h}: summing q^{subset_exponent} over all size-k subsets recovers
// binom(h,k)_q.  The normalizing constant -k(h+1) is forced by
// bar-invariance.
inline int subset_exponent(int h, const std::set<int>& J) {
    long long s = 0;
    for (int j : J) {
        if (j < 1 || j > h) throw std::invalid_argument("subset_exponent: J must lie in [1,h]");
        s += j;
    }
    return static_cast<int>(2 * s - static_cast<long long>(J.size()) * (h + 1));
}

}  // namespace qrank2
