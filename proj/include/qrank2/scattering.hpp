#pragma once

// Walls of the rank-2 scattering diagrams, broken lines as bend sequences,
// first-principles quantum bend weights (the source of truth; the closed
// product formulas are cross-checks), enumeration of the BL families, and
// exact-rational geometric realization.

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrank2/dyck.hpp"
#include "qrank2/qlaurent.hpp"

namespace qrank2 {

struct NoPositiveNormal : std::runtime_error {
    NoPositiveNormal() : std::runtime_error("bend weight: direction parallel to the wall") {}
};
struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& m) : std::runtime_error(m) {}
};

enum class WallKind { Axis1, Axis2, ClusterRay, KroneckerSlopeOne };

struct Wall {
    WallKind kind;
    long long dx, dy;  // primitive direction of the support
    long long sx, sy;  // function exponent step per power
    bool full_line;    // axes are full lines; cluster rays live in R_{<=0} dir
};

enum class Side { Negative, Positive, MMNegative };

// Wall of the negative-angular-momentum family, indexed so that 0 is the
// y-axis, 1 the x-axis and l >= 2 the ray through (c_{l+1}, c_l).
inline Wall wall_negative(int r, int l) {
    if (l == 0) return {WallKind::Axis2, 0, 1, 0, r, true};
    if (l == 1) return {WallKind::Axis1, 1, 0, r, 0, true};
    long long a = c_seq(r, l + 1), b = c_seq(r, l);
    return {WallKind::ClusterRay, a, b, r * a, r * b, false};
}

// Kronecker (m,m) family: -1 is the y-axis, 0 the x-axis, l >= 1 the ray
// through (l+1, l).  Coincides with wall_negative(2, l+1).
inline Wall wall_mm(int l) { return wall_negative(2, l + 1); }

// Positive family for r = 2: 0 is the x-axis, 1 the y-axis, l >= 2 the ray
// through (l-1, l) above the diagonal.
inline Wall wall_positive(int l) {
    if (l == 0) return {WallKind::Axis1, 1, 0, 2, 0, true};
    if (l == 1) return {WallKind::Axis2, 0, 1, 0, 2, true};
    return {WallKind::ClusterRay, l - 1, l, 2 * (l - 1), 2 * l, false};
}

inline Wall wall_d1() { return {WallKind::KroneckerSlopeOne, 1, 1, 2, 2, false}; }

// v . n for the primitive normal chosen with positive pairing; throws when
// v is parallel to the wall.
inline long long positive_normal_pairing(std::pair<long long, long long> v, const Wall& w) {
    long long dot = v.first * w.dy - v.second * w.dx;  // v . (dy, -dx)
    if (dot == 0) throw NoPositiveNormal{};
    return dot > 0 ? dot : -dot;
}

// Coefficient of x^m in (sum_k [k+1]_{q^4} x^k)^p  (the slope-one wall).
inline QLaurent slope_one_coefficient(int p, int m) {
    std::vector<QLaurent> pw(m + 1);
    pw[0] = QLaurent::one();
    std::vector<QLaurent> base(m + 1);
    for (int k = 0; k <= m; ++k) base[k] = qint(k + 1).substitute_power(4);
    for (int it = 0; it < p; ++it) {
        std::vector<QLaurent> nx(m + 1);
        for (int i = 0; i <= m; ++i) {
            if (pw[i].is_zero()) continue;
            for (int k = 0; i + k <= m; ++k) nx[i + k] += pw[i] * base[k];
        }
        pw = std::move(nx);
    }
    return pw[m];
}

// First-principles weight of bending with multiplicity m at a wall, entered
// with exponent v: cluster walls contribute binom(v.n, m)_{q^{2r}}, the
// slope-one wall the x^m coefficient of its series raised to v.n.
inline QLaurent bend_weight_first_principles(std::pair<long long, long long> v, const Wall& w,
                                             int m, int r) {
    long long dot = positive_normal_pairing(v, w);
    if (m == 0) return QLaurent::one();
    if (w.kind == WallKind::KroneckerSlopeOne) return slope_one_coefficient(static_cast<int>(dot), m);
    if (dot < m) return QLaurent::zero();
    return qbinom_pow(static_cast<int>(dot), m, 2 * r);
}

struct Bend {
    int wall_index;  // family index; INT32_MAX marks the slope-one wall
    int mult;
};

inline constexpr int kD1Index = INT32_MAX;

struct BrokenLine {
    int r = 2;
    Side side = Side::Negative;
    std::pair<long long, long long> initial{0, 0};
    std::vector<Bend> bends;  // line order: earliest bend first
    std::vector<std::pair<long long, long long>> exponents;  // v_0 .. v_k
    QLaurent weight;
};

inline Wall wall_of(Side side, int r, int index) {
    if (index == kD1Index) return wall_d1();
    switch (side) {
        case Side::Negative: return wall_negative(r, index);
        case Side::MMNegative: return wall_mm(index);
        case Side::Positive: return wall_positive(index);
    }
    throw std::logic_error("wall_of");
}

// Recompute exponents and weight from initial exponent and bend list.
inline void derive_line(BrokenLine& bl) {
    bl.exponents.assign(1, bl.initial);
    bl.weight = QLaurent::one();
    auto v = bl.initial;
    for (const Bend& bd : bl.bends) {
        Wall w = wall_of(bl.side, bl.r, bd.wall_index);
        bl.weight *= bend_weight_first_principles(v, w, bd.mult, bl.r);
        v.first += static_cast<long long>(bd.mult) * w.sx;
        v.second += static_cast<long long>(bd.mult) * w.sy;
        bl.exponents.push_back(v);
    }
}

inline QLaurent line_weight(const BrokenLine& bl) {
    BrokenLine tmp = bl;
    derive_line(tmp);
    return tmp.weight;
}

inline std::pair<long long, long long> terminal_exponent(const BrokenLine& bl) {
    BrokenLine tmp = bl;
    derive_line(tmp);
    return tmp.exponents.back();
}

// ---------------------------------------------------------------------------
// Closed-form cross-checks for the weights (first principles stay the
// source of truth).

// Negative side, cluster variable X_{n+2}: product over bends of
// binom(c_{n-l_i+1} - r sum_{j<i} m_j c_{l_j-l_i+1}, m_i)_{q^{2r}}.
inline QLaurent closed_form_negative(int r, int n, const std::vector<Bend>& bends) {
    QLaurent w = QLaurent::one();
    for (std::size_t i = 0; i < bends.size(); ++i) {
        long long top = c_seq(r, n - bends[i].wall_index + 1);
        for (std::size_t j = 0; j < i; ++j)
            top -= static_cast<long long>(r) * bends[j].mult *
                   c_seq(r, bends[j].wall_index - bends[i].wall_index + 1);
        if (top < 0 || top < bends[i].mult) return QLaurent::zero();
        w *= qbinom_pow(static_cast<int>(top), bends[i].mult, 2 * r);
    }
    return w;
}

// Kronecker (m,m) family: product of binom(h - 2 sum_{j<i} m_j (l_j - l_i),
// m_i)_{q^4} (the proof's sign; the displayed statement has l_i - l_j).
inline QLaurent closed_form_mm(long long h, const std::vector<Bend>& bends) {
    QLaurent w = QLaurent::one();
    for (std::size_t i = 0; i < bends.size(); ++i) {
        long long top = h;
        for (std::size_t j = 0; j < i; ++j)
            top -= 2LL * bends[j].mult * (bends[j].wall_index - bends[i].wall_index);
        if (top < 0 || top < bends[i].mult) return QLaurent::zero();
        w *= qbinom_pow(static_cast<int>(top), bends[i].mult, 4);
    }
    return w;
}

// Kronecker positive side for X_{n+2}: the printed tops are one too large
// on the paper's own example; the corrected product uses n + l_i - 1 - 2m.
inline QLaurent closed_form_positive(int n, int m_infty, const std::vector<Bend>& finite_bends) {
    QLaurent w = qint(m_infty + 1).substitute_power(4);
    for (std::size_t i = 0; i < finite_bends.size(); ++i) {
        long long top = n + finite_bends[i].wall_index - 1 - 2LL * m_infty;
        for (std::size_t j = 0; j < i; ++j)
            top -= 2LL * finite_bends[j].mult *
                   (finite_bends[j].wall_index - finite_bends[i].wall_index);
        if (top < 0 || top < finite_bends[i].mult) return QLaurent::zero();
        w *= qbinom_pow(static_cast<int>(top), finite_bends[i].mult, 4);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Angular momentum and geometric realization (exact rational arithmetic).

using Rat = boost::rational<long long>;
struct RatPt {
    Rat x, y;
};

// q2 m1 - q1 m2 for a segment of exponent (m1, m2) through Q
inline Rat angular_momentum(const RatPt& q, std::pair<long long, long long> exponent) {
    return q.y * exponent.first - q.x * exponent.second;
}

enum class AmSign { AlwaysPositive, AlwaysNegative, DependsOnQ };

inline AmSign sign_of_am_from_monomial(int r, int n, int a, int b) {
    if (static_cast<long long>(r) * b >= c_seq(r, n - 1)) return AmSign::AlwaysPositive;
    if (static_cast<long long>(r) * a >= c_seq(r, n - 2)) return AmSign::AlwaysNegative;
    return AmSign::DependsOnQ;
}

struct Realization {
    bool ok = false;
    std::string failure;        // first violated constraint, empty when ok
    std::vector<RatPt> points;  // bend points, earliest bend first
    Rat am;                     // the constant angular momentum
};

// Reconstruct the piecewise-linear path backward from Q, checking that each
// bend point lies on its wall's support, that bends appear in order, and
// that the angular momentum is the same on every segment.
inline Realization realize_geometrically(const BrokenLine& bl, const RatPt& q) {
    Realization re;
    BrokenLine line = bl;
    derive_line(line);
    const auto& ex = line.exponents;
    re.am = angular_momentum(q, ex.back());
    if (re.am == Rat(0)) {
        re.failure = "Q not generic: zero angular momentum";
        return re;
    }
    RatPt cur = q;
    std::vector<RatPt> rev;
    for (int i = static_cast<int>(line.bends.size()) - 1; i >= 0; --i) {
        auto v = ex[i + 1];  // exponent of the segment east of bend i
        Wall w = wall_of(line.side, line.r, line.bends[i].wall_index);
        long long cvd = v.first * w.dy - v.second * w.dx;
        if (cvd == 0) {
            re.failure = "segment parallel to its wall";
            return re;
        }
        // solve cur + s v = t (dx,dy)
        Rat s = (Rat(w.dx) * cur.y - Rat(w.dy) * cur.x) / Rat(cvd);
        if (s <= Rat(0)) {
            re.failure = "OrderViolation: bends do not occur in order";
            return re;
        }
        RatPt pt{cur.x + s * Rat(v.first), cur.y + s * Rat(v.second)};
        if (pt.x == Rat(0) && pt.y == Rat(0)) {
            re.failure = "bend at the origin";
            return re;
        }
        if (!w.full_line) {
            // the support is the ray of NONPOSITIVE multiples of (dx,dy)
            Rat t = w.dx != 0 ? pt.x / Rat(w.dx) : pt.y / Rat(w.dy);
            if (t > Rat(0)) {
                re.failure = "bend point off the wall ray";
                return re;
            }
        }
        Rat am_here = angular_momentum(pt, v);
        if (am_here != re.am) {
            re.failure = "angular momentum not constant";
            return re;
        }
        if (angular_momentum(pt, ex[i]) != re.am) {
            re.failure = "angular momentum not constant";
            return re;
        }
        rev.push_back(pt);
        cur = pt;
    }
    re.points.assign(rev.rbegin(), rev.rend());
    re.ok = true;
    return re;
}

// Try a handful of generic sample points in the regime of the line's
// angular-momentum sign; the default matches the figures.
inline std::optional<Realization> realize_in_regime(const BrokenLine& bl, bool negative_am) {
    const RatPt samples[] = {{Rat(1, 4), Rat(3, 8)}, {Rat(10), Rat(1)},  {Rat(1), Rat(10)},
                             {Rat(5, 2), Rat(1, 3)}, {Rat(1, 3), Rat(5, 2)}, {Rat(7), Rat(5)},
                             {Rat(100), Rat(1)},     {Rat(1), Rat(100)}};
    auto term = terminal_exponent(bl);
    for (const RatPt& q : samples) {
        // the terminal segment is the one passing through Q
        Rat am = angular_momentum(q, term);
        if ((am < Rat(0)) != negative_am) continue;
        Realization re = realize_geometrically(bl, q);
        if (re.ok) return re;
    }
    return std::nullopt;
}

// All broken lines with initial exponent (-ell,-h) and terminal exponent
// (-ell + rb, -h + ra) on the requested side of the diagram.  Bends carry
// strictly decreasing wall indices (the slope-one wall first on the
// positive side), multiplicities >= 1, and nonzero weight.
inline std::vector<BrokenLine> enumerate_BL(int r, long long ell, long long h, int a, int b,
                                            Side side) {
    if (side == Side::Positive && r != 2)
        throw Unsupported("enumerate_BL: positive side needs the r=2 wall functions (Badlands)");
    if (side == Side::MMNegative && r != 2)
        throw Unsupported("enumerate_BL: the (m,m) family is specific to r=2");

    std::pair<long long, long long> v0{-ell, -h};
    std::pair<long long, long long> target{-ell + static_cast<long long>(r) * b,
                                            -h + static_cast<long long>(r) * a};
    const int min_index = side == Side::MMNegative ? -1 : 0;

    // the largest finite wall whose x-step still fits the x budget
    long long budget_x = target.first - v0.first;
    long long budget_y = target.second - v0.second;
    if (budget_x < 0 || budget_y < 0) return {};
    int max_index = min_index;
    if (r == 1) {
        max_index = 2;  // finite type: y-axis, x-axis and the (1,1) ray
    } else {
        while (true) {
            Wall w = wall_of(side, r, max_index + 1);
            if ((w.sx == 0 || w.sx <= budget_x) && (w.sy == 0 || w.sy <= budget_y) &&
                max_index + 1 < 64)
                ++max_index;
            else
                break;
        }
    }

    std::vector<BrokenLine> out;
    std::vector<Bend> bends;

    std::function<void(int, std::pair<long long, long long>)> dfs =
        [&](int idx, std::pair<long long, long long> v) {
            if (idx < min_index) {
                if (v == target) {
                    BrokenLine bl;
                    bl.r = r;
                    bl.side = side;
                    bl.initial = v0;
                    bl.bends = bends;
                    derive_line(bl);
                    out.push_back(std::move(bl));
                }
                return;
            }
            dfs(idx - 1, v);  // no bend here
            Wall w = wall_of(side, r, idx);
            long long dot;
            {
                long long d = v.first * w.dy - v.second * w.dx;
                if (d == 0) return;
                dot = d > 0 ? d : -d;
            }
            auto vv = v;
            for (int m = 1;; ++m) {
                if (w.kind != WallKind::KroneckerSlopeOne && m > dot) break;
                vv.first += w.sx;
                vv.second += w.sy;
                if (vv.first > target.first || vv.second > target.second) break;
                if (bend_weight_first_principles(v, w, m, r).is_zero()) continue;
                bends.push_back({idx, m});
                dfs(idx - 1, vv);
                bends.pop_back();
            }
        };

    if (side == Side::Positive) {
        // slope-one wall first (it admits multiplicity 0 as "no bend")
        Wall d1 = wall_d1();
        long long d = v0.first * d1.dy - v0.second * d1.dx;
        long long dot = d > 0 ? d : -d;
        auto vv = v0;
        for (int m = 0;; ++m) {
            if (vv.first > target.first || vv.second > target.second) break;
            if (m > 0 && d == 0) break;
            if (m == 0 || !slope_one_coefficient(static_cast<int>(dot), m).is_zero()) {
                if (m > 0) bends.push_back({kD1Index, m});
                dfs(max_index, vv);
                if (m > 0) bends.pop_back();
            }
            vv.first += d1.sx;
            vv.second += d1.sy;
        }
    } else {
        dfs(max_index, v0);
    }

    // Keep only geometrically realizable lines: bookkeeping admits bend
    // sequences that no terminal point in the regime can realize.
    std::vector<BrokenLine> real;
    const bool negative_regime = side != Side::Positive;
    for (auto& bl : out)
        if (realize_in_regime(bl, negative_regime)) real.push_back(std::move(bl));
    return real;
}

inline QLaurent bl_weight_sum(const std::vector<BrokenLine>& lines) {
    QLaurent s;
    for (const auto& bl : lines) s += bl.weight;
    return s;
}


}  // namespace qrank2
