#pragma once

// Compatible pairs on maximal Dyck paths: the LLZ compatibility predicate,
// enumeration, Rupel's quantum weight, shadows, cascades, the lambda
// involution, and the quantum expansion of cluster variables/monomials that
// is checked against the torus oracle.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrank2/dyck.hpp"
#include "qrank2/torus.hpp"

namespace qrank2 {

enum class Wrap { Cyclic, Linear };

// Edge subsets are bitmasks over 1-based labels (bit j = eta_j or nu_j).
using edge_mask = std::uint64_t;

inline int mask_count(edge_mask m) { return __builtin_popcountll(m); }
inline bool mask_has(edge_mask m, int label) { return (m >> label) & 1; }

inline std::vector<int> mask_labels(edge_mask m) {
    std::vector<int> v;
    for (int j = 1; j < 64; ++j)
        if (mask_has(m, j)) v.push_back(j);
    return v;
}

inline edge_mask labels_mask(const std::vector<int>& labels) {
    edge_mask m = 0;
    for (int j : labels) m |= (edge_mask{1} << j);
    return m;
}

struct CompatiblePair {
    const DyckPath* path = nullptr;
    int r = 1;
    edge_mask s1 = 0, s2 = 0;

    int a() const { return mask_count(s1); }
    int b() const { return mask_count(s2); }
};

// Word over {h,v,H,V} read along the path; capitals mark membership.
inline std::string pair_word(const DyckPath& p, edge_mask s1, edge_mask s2) {
    std::string w;
    w.reserve(p.size());
    for (int k = 0; k < p.size(); ++k) {
        if (p.step(k) == Step::E)
            w += mask_has(s1, p.eta_label(k)) ? 'H' : 'h';
        else
            w += mask_has(s2, p.nu_label(k)) ? 'V' : 'v';
    }
    return w;
}

// Rupel's weight morphism: sum of w_q over ordered letter pairs.  s_hv is
// the calibration sign on the (h,v) base value (the shipped calibration
// fixes it to +1).
inline long long rupel_weight_word(const std::string& w, int r, int s_hv = +1) {
    long long nh = 0, nH = 0, nv = 0, nV = 0, total = 0;
    const long long rr1 = static_cast<long long>(r) * r - 1;
    for (char ch : w) {
        switch (ch) {
            case 'h': total += -s_hv * nv - nV + r * nH; ++nh; break;
            case 'H': total += -r * nh - nv + rr1 * nV; ++nH; break;
            case 'v': total += s_hv * nh + nH - r * nV; ++nv; break;
            case 'V': total += nh - rr1 * nH + r * nv; ++nV; break;
            default: throw std::invalid_argument("rupel_weight_word: bad letter");
        }
    }
    return total;
}

inline long long rupel_weight(const CompatiblePair& cp, int s_hv = +1) {
    return rupel_weight_word(pair_word(*cp.path, cp.s1, cp.s2), cp.r, s_hv);
}

// rb <= ell
inline bool is_positive(const CompatiblePair& cp) {
    return static_cast<long long>(cp.r) * cp.b() <= cp.path->ell();
}

// The LLZ compatibility predicate by exhaustive witness search.  Linear
// mode skips the pairs whose subpath would wrap (valid on cluster-monomial
// paths).
inline bool is_compatible(const DyckPath& p, edge_mask s1, edge_mask s2, int r,
                          Wrap wrap = Wrap::Cyclic) {
    const int n = p.size();
    if (n == 0) return true;
    for (int i = 1; i <= p.ell(); ++i) {
        if (!mask_has(s1, i)) continue;
        for (int j = 1; j <= p.h(); ++j) {
            if (!mask_has(s2, j)) continue;
            int pe = p.eta_position(i);          // edge position of eta_i
            int pf_edge = p.nu_position(j);      // edge position of nu_j
            int from = pe;                        // vertex = left endpoint of eta_i
            int to = pf_edge + 1;                 // vertex = top endpoint of nu_j
            if (wrap == Wrap::Linear && pe > pf_edge) continue;
            // edges of the subpath: from eta_i through nu_j inclusive
            int len = (to - from + n) % n;
            if (len == 0) len = n;  // full wrap
            // prefix counts along the walk
            bool found = false;
            int s2_total = 0;
            std::vector<int> kind(len);  // 0 plain E,1 S1 E,2 plain N,3 S2 N
            for (int t = 0; t < len; ++t) {
                int pos = (from + t) % n;
                if (p.step(pos) == Step::E)
                    kind[t] = mask_has(s1, p.eta_label(pos)) ? 1 : 0;
                else {
                    kind[t] = mask_has(s2, p.nu_label(pos)) ? 3 : 2;
                    if (kind[t] == 3) ++s2_total;
                }
            }
            int h_remaining = 0;
            for (int t = 0; t < len; ++t)
                if (kind[t] <= 1) ++h_remaining;
            int e2_sofar = 0, s1_sofar = 0, s2_sofar = 0;
            // interior vertices sit after edges 1..len-1 of the walk
            for (int t = 1; t < len && !found; ++t) {
                switch (kind[t - 1]) {
                    case 0: --h_remaining; break;
                    case 1: --h_remaining; ++s1_sofar; break;
                    case 2: ++e2_sofar; break;
                    case 3: ++e2_sofar; ++s2_sofar; break;
                }
                if (h_remaining == static_cast<long long>(r) * (s2_total - s2_sofar)) found = true;
                if (e2_sofar == static_cast<long long>(r) * s1_sofar) found = true;
            }
            if (!found) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Shadows

struct ShadowData {
    enum class HClass : char { Unshadowed, LeftShadowed, RightShadowed };
    std::vector<edge_mask> local;   // [j] local shadow of nu_j (0 if j not in S2)
    std::vector<int> partner;       // [j] shadow-paired eta label, 0 if none
    std::vector<char> wrapped;      // [j] shadow reaches past the west end / is all
    edge_mask sh_union = 0;
    std::vector<HClass> h_class;    // [i] classification of eta_i
};

// Local shadows per LLZ: for nu in S2 the horizontal edges of the shortest
// subpath eta->nu with |eta nu|_1 = r |subpath cap S2|, walking west
// cyclically; all of P_1 when no such subpath exists.
inline ShadowData shadow(const DyckPath& p, edge_mask s2, int r) {
    const int n = p.size();
    ShadowData sd;
    sd.local.assign(p.h() + 1, 0);
    sd.partner.assign(p.h() + 1, 0);
    sd.wrapped.assign(p.h() + 1, 0);
    sd.h_class.assign(p.ell() + 1, ShadowData::HClass::Unshadowed);
    edge_mask all_eta = 0;
    for (int i = 1; i <= p.ell(); ++i) all_eta |= (edge_mask{1} << i);

    std::vector<char> right_sh(p.ell() + 1, 0), any_sh(p.ell() + 1, 0);
    for (int j = 1; j <= p.h(); ++j) {
        if (!mask_has(s2, j)) continue;
        int start = p.nu_position(j);
        long long hcount = 0, s2count = 0;
        edge_mask seen = 0;
        bool found = false;
        for (int t = 0; t < n; ++t) {
            int pos = (start - t % n + n) % n;
            if (p.step(pos) == Step::N) {
                if (mask_has(s2, p.nu_label(pos))) ++s2count;
            } else {
                ++hcount;
                int lab = p.eta_label(pos);
                seen |= (edge_mask{1} << lab);
                if (hcount == r * s2count) {
                    sd.local[j] = seen;
                    sd.partner[j] = lab;
                    sd.wrapped[j] = (pos > start) ? 1 : 0;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            sd.local[j] = all_eta;
            sd.partner[j] = 0;
            sd.wrapped[j] = 1;
        }
        sd.sh_union |= sd.local[j];
        for (int i = 1; i <= p.ell(); ++i) {
            if (!mask_has(sd.local[j], i)) continue;
            any_sh[i] = 1;
            if (p.nu_position(j) > p.eta_position(i)) right_sh[i] = 1;
        }
    }
    for (int i = 1; i <= p.ell(); ++i) {
        if (!any_sh[i]) continue;
        sd.h_class[i] = right_sh[i] ? ShadowData::HClass::RightShadowed
                                    : ShadowData::HClass::LeftShadowed;
    }
    return sd;
}

// ---------------------------------------------------------------------------
// Cascades

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& m) : std::runtime_error(m) {}
};

struct CascadeData {
    // LeftFilled: the paired vertical lies to the LEFT of the edge (same
    // orientation as left-shadowed).
    enum class FillClass : char { Unfilled, LeftFilled, RightFilled };
    // [i] = (j, m): eta_i carries label nu_j^{(m)}; (0,0) if unfilled
    std::vector<std::pair<int, int>> label;
    // [j][m-1] = eta label carrying nu_j^{(m)}, 0 if the label was never placed
    std::vector<std::vector<int>> partner;
    edge_mask cas_union = 0;
    std::vector<edge_mask> cas_m;  // [m-1] = m-cascade-paired edges
    std::vector<FillClass> fill;   // [i]
    std::vector<edge_mask> local;  // [j] local cascade interval of nu_j

    int r_partner(int j) const { return partner[j].back(); }
};

// The three-step labeling, bottom to top.  Each vertical drains its own r
// labels onto the rightmost unlabeled edges to its left; labels that do not
// fit are queued (most recent vertical first) and drained onto the leftmost
// unlabeled edges once every vertical has been processed.
inline CascadeData cascade(const DyckPath& p, edge_mask s2, int r) {
    if (static_cast<long long>(r) * mask_count(s2) > p.ell())
        throw PreconditionViolated("cascade: r|S2| > ell");
    CascadeData cd;
    cd.label.assign(p.ell() + 1, {0, 0});
    cd.partner.assign(p.h() + 1, std::vector<int>(r, 0));
    cd.cas_m.assign(r, 0);
    cd.fill.assign(p.ell() + 1, CascadeData::FillClass::Unfilled);
    cd.local.assign(p.h() + 1, 0);

    auto place = [&](int eta, std::pair<int, int> lab) {
        cd.label[eta] = lab;
        cd.partner[lab.first][lab.second - 1] = eta;
    };

    std::vector<std::pair<int, int>> queue;  // front at index 0
    for (int j : mask_labels(s2)) {
        int m = 1;
        for (; m <= r; ++m) {
            int best = 0;
            for (int i = 1; i <= p.ell(); ++i)
                if (cd.label[i].first == 0 && p.eta_position(i) < p.nu_position(j)) best = i;
            if (best == 0) break;
            place(best, {j, m});
        }
        if (m <= r) {
            std::vector<std::pair<int, int>> rest;
            for (int mm = m; mm <= r; ++mm) rest.emplace_back(j, mm);
            queue.insert(queue.begin(), rest.begin(), rest.end());
        }
    }
    for (auto& lab : queue) {
        int best = 0;
        for (int i = p.ell(); i >= 1; --i)
            if (cd.label[i].first == 0) best = i;
        if (best == 0) break;
        place(best, lab);
    }

    for (int i = 1; i <= p.ell(); ++i) {
        auto [j, m] = cd.label[i];
        if (j == 0) continue;
        cd.cas_union |= (edge_mask{1} << i);
        cd.cas_m[m - 1] |= (edge_mask{1} << i);
        cd.fill[i] = p.nu_position(j) < p.eta_position(i) ? CascadeData::FillClass::LeftFilled
                                                          : CascadeData::FillClass::RightFilled;
    }
    for (int j : mask_labels(s2)) {
        int lo = p.size(), hi = -1;
        for (int m = 0; m < r; ++m) {
            int eta = cd.partner[j][m];
            if (eta == 0) continue;
            lo = std::min(lo, p.eta_position(eta));
            hi = std::max(hi, p.eta_position(eta));
        }
        for (int i = 1; i <= p.ell(); ++i)
            if (p.eta_position(i) >= lo && p.eta_position(i) <= hi)
                cd.local[j] |= (edge_mask{1} << i);
    }
    return cd;
}

// Blockwise cascade on a cluster-monomial path: run the labeling separately
// on each block of the decomposition.
inline CascadeData cascade_blockwise(const MonomialPath& mp, edge_mask s2, int r) {
    const DyckPath& p = mp.path;
    CascadeData cd;
    cd.label.assign(p.ell() + 1, {0, 0});
    cd.partner.assign(p.h() + 1, std::vector<int>(r, 0));
    cd.cas_m.assign(r, 0);
    cd.fill.assign(p.ell() + 1, CascadeData::FillClass::Unfilled);
    cd.local.assign(p.h() + 1, 0);
    for (std::size_t bi = 0; bi < mp.block_dims.size(); ++bi) {
        int first = mp.block_first_edge[bi];
        auto [bl, bh] = mp.block_dims[bi];
        DyckPath block = maximal_dyck_path(bl, bh);
        // global eta/nu labels within this block
        std::vector<int> geta(bl + 1, 0), gnu(bh + 1, 0);
        for (int k = 0; k < block.size(); ++k) {
            int gk = first + k;
            if (block.step(k) == Step::E) geta[block.eta_label(k)] = p.eta_label(gk);
            else gnu[block.nu_label(k)] = p.nu_label(gk);
        }
        edge_mask local_s2 = 0;
        for (int j = 1; j <= bh; ++j)
            if (mask_has(s2, gnu[j])) local_s2 |= (edge_mask{1} << j);
        CascadeData sub = cascade(block, local_s2, r);
        for (int i = 1; i <= bl; ++i) {
            auto [j, m] = sub.label[i];
            if (j == 0) continue;
            cd.label[geta[i]] = {gnu[j], m};
            cd.partner[gnu[j]][m - 1] = geta[i];
            cd.cas_union |= (edge_mask{1} << geta[i]);
            cd.cas_m[m - 1] |= (edge_mask{1} << geta[i]);
            cd.fill[geta[i]] = p.nu_position(gnu[j]) < p.eta_position(geta[i])
                                   ? CascadeData::FillClass::LeftFilled
                                   : CascadeData::FillClass::RightFilled;
        }
        for (int j = 1; j <= bh; ++j) {
            if (sub.local[j] == 0) continue;
            for (int i = 1; i <= bl; ++i)
                if (mask_has(sub.local[j], i)) cd.local[gnu[j]] |= (edge_mask{1} << geta[i]);
        }
    }
    return cd;
}

// ---------------------------------------------------------------------------
// The lambda involution: swap the s-th left-filled edge with the s-th
// left-shadowed edge, both lists running west to east.

inline edge_mask lambda_image(const DyckPath& p, edge_mask s1, edge_mask s2, int r) {
    ShadowData sd = shadow(p, s2, r);
    CascadeData cd = cascade(p, s2, r);
    std::vector<int> filled, shadowed;
    for (int i = 1; i <= p.ell(); ++i) {
        if (cd.fill[i] == CascadeData::FillClass::LeftFilled) filled.push_back(i);
        if (sd.h_class[i] == ShadowData::HClass::LeftShadowed) shadowed.push_back(i);
    }
    if (filled.size() != shadowed.size())
        throw std::logic_error("lambda: left-filled and left-shadowed counts differ");
    std::vector<int> iota(p.ell() + 1);
    for (int i = 0; i <= p.ell(); ++i) iota[i] = i;
    for (std::size_t s = 0; s < filled.size(); ++s) {
        std::swap(iota[filled[s]], iota[shadowed[s]]);
    }
    edge_mask out = 0;
    for (int i = 1; i <= p.ell(); ++i)
        if (mask_has(s1, i)) out |= (edge_mask{1} << iota[i]);
    return out;
}

inline CompatiblePair lambda_map(const CompatiblePair& cp) {
    return {cp.path, cp.r, lambda_image(*cp.path, cp.s1, cp.s2, cp.r), cp.s2};
}

// iota is an involution, so the inverse applies the same swap.
inline CompatiblePair lambda_inverse(const CompatiblePair& cp) { return lambda_map(cp); }

// ---------------------------------------------------------------------------
// Per-vertical flags

struct VerticalFlags {
    bool overshadowing = false;
    bool overflowing = false;
    bool protruding = false;
};

inline int run_before(const DyckPath& p, int j) {
    int pos = p.nu_position(j);
    int run = 0;
    while (pos - run - 1 >= 0 && p.step(pos - run - 1) == Step::E) ++run;
    return run;
}

inline std::vector<VerticalFlags> classify_vertical(const DyckPath& p, edge_mask s1,
                                                    edge_mask s2, int r) {
    ShadowData sd = shadow(p, s2, r);
    bool cas_ok = static_cast<long long>(r) * mask_count(s2) <= p.ell();
    CascadeData cd;
    if (cas_ok) cd = cascade(p, s2, r);
    std::vector<VerticalFlags> out(p.h() + 1);
    for (int j = 1; j <= p.h(); ++j) {
        out[j].protruding = run_before(p, j) < r;
        if (!mask_has(s2, j)) continue;
        out[j].overshadowing = sd.partner[j] != 0 && mask_has(s1, sd.partner[j]);
        if (cas_ok) {
            int rp = cd.r_partner(j);
            out[j].overflowing = rp != 0 && mask_has(s1, rp);
        }
    }
    return out;
}

inline std::vector<int> protruding_labels(const DyckPath& p, int r) {
    std::vector<int> v;
    for (int j = 1; j <= p.h(); ++j)
        if (run_before(p, j) < r) v.push_back(j);
    return v;
}

// Protruding slots with multiplicity: nu_j appears r - run(j) times; the
// total slot count is rh - ell whenever every run is at most r.
inline std::vector<int> protruding_slots(const DyckPath& p, int r) {
    std::vector<int> v;
    for (int j = 1; j <= p.h(); ++j)
        for (int t = run_before(p, j); t < r; ++t) v.push_back(j);
    return v;
}

// ---------------------------------------------------------------------------
// Enumeration

// Naive enumeration (exhaustive subset scan), deterministic lexicographic
// order by (S2, S1).  Intended for paths of modest size and as the oracle
// for the fast walker below.
inline std::vector<CompatiblePair> enumerate_pairs(const DyckPath& p, int r,
                                                   std::optional<int> a = std::nullopt,
                                                   std::optional<int> b = std::nullopt,
                                                   Wrap wrap = Wrap::Cyclic) {
    if (p.ell() > 24 || p.h() > 24 || p.size() > 30)
        throw std::invalid_argument("enumerate_pairs: path too large for subset scan");
    std::vector<CompatiblePair> out;
    for (edge_mask s2 = 0; s2 < (edge_mask{1} << p.h()); ++s2) {
        edge_mask m2 = s2 << 1;
        if (b && mask_count(m2) != *b) continue;
        for (edge_mask s1 = 0; s1 < (edge_mask{1} << p.ell()); ++s1) {
            edge_mask m1 = s1 << 1;
            if (a && mask_count(m1) != *a) continue;
            if (is_compatible(p, m1, m2, r, wrap)) out.push_back({&p, r, m1, m2});
        }
    }
    return out;
}

// Fast weighted enumeration of compatible pairs in Linear mode via a
// shadow-deadline DFS; emits (S1, S2, rupel weight) through the callback.
// Validated exhaustively against the subset scan in the test suite.
class PairWalker {
public:
    PairWalker(const DyckPath& p, int r, int s_hv = +1) : p_(p), r_(r), s_hv_(s_hv) {}

    template <typename F>
    void for_each(F&& emit) {
        const int h = p_.h();
        for (edge_mask bits = 0; bits < (edge_mask{1} << h); ++bits) {
            s2_ = bits << 1;
            run_s2(emit);
        }
    }

    // Restrict to a single S2.
    template <typename F>
    void for_each_with_s2(edge_mask s2, F&& emit) {
        s2_ = s2;
        run_s2(emit);
    }

private:
    struct Open {
        long long target;  // running balance value at which the edge discharges
        int deadline;      // edge position of the first constraining vertical
    };

    template <typename F>
    void run_s2(F&& emit) {
        ShadowData sd = shadow(p_, s2_, r_);
        // deadline per horizontal position: first nu in S2 east of it whose
        // local shadow covers it
        deadline_.assign(p_.size(), INT32_MAX);
        for (int j = 1; j <= p_.h(); ++j) {
            if (!mask_has(s2_, j)) continue;
            int nupos = p_.nu_position(j);
            for (int i = 1; i <= p_.ell(); ++i) {
                int epos = p_.eta_position(i);
                if (epos < nupos && mask_has(sd.local[j], i))
                    deadline_[epos] = std::min(deadline_[epos], nupos);
            }
        }
        opens_.clear();
        s1_ = 0;
        dfs(0, 0, 0, 0, 0, 0, 0, emit);
    }

    template <typename F>
    void dfs(int k, long long delta, long long w, long long nh, long long nH, long long nv,
             long long nV, F&& emit) {
        if (k == p_.size()) {
            emit(s1_, s2_, w);
            return;
        }
        const long long rr1 = static_cast<long long>(r_) * r_ - 1;
        if (p_.step(k) == Step::N) {
            bool inS2 = mask_has(s2_, p_.nu_label(k));
            if (inS2) {
                for (const Open& o : opens_)
                    if (o.deadline <= k) return;  // prune: witness now impossible
            }
            long long dnew = delta + 1;
            std::size_t discharged_from = partition_discharged(dnew);
            long long wnew = w + (inS2 ? (nh - rr1 * nH + r_ * nv) : (s_hv_ * nh + nH - r_ * nV));
            dfs(k + 1, dnew, wnew, nh, nH, nv + (inS2 ? 0 : 1), nV + (inS2 ? 1 : 0), emit);
            restore_discharged(discharged_from);
            return;
        }
        // horizontal: exclude from S1
        dfs(k + 1, delta, w - s_hv_ * nv - nV + r_ * nH, nh + 1, nH, nv, nV, emit);
        // include in S1
        int lab = p_.eta_label(k);
        s1_ |= (edge_mask{1} << lab);
        bool tracked = deadline_[k] != INT32_MAX;
        if (tracked) opens_.push_back({delta, deadline_[k]});
        long long dnew = delta - r_;
        std::size_t discharged_from = partition_discharged(dnew);
        dfs(k + 1, dnew, w - r_ * nh - nv + rr1 * nV, nh, nH + 1, nv, nV, emit);
        restore_discharged(discharged_from);
        if (tracked) opens_.pop_back();
        s1_ &= ~(edge_mask{1} << lab);
    }

    // Move all opens whose target equals `value` to the discharge stash;
    // returns the stash watermark for restoration.
    std::size_t partition_discharged(long long value) {
        std::size_t watermark = stash_.size();
        for (std::size_t i = 0; i < opens_.size();) {
            if (opens_[i].target == value) {
                stash_.push_back(opens_[i]);
                opens_[i] = opens_.back();
                opens_.pop_back();
            } else {
                ++i;
            }
        }
        return watermark;
    }

    void restore_discharged(std::size_t watermark) {
        while (stash_.size() > watermark) {
            opens_.push_back(stash_.back());
            stash_.pop_back();
        }
    }

    const DyckPath& p_;
    int r_, s_hv_;
    edge_mask s1_ = 0, s2_ = 0;
    std::vector<int> deadline_;
    std::vector<Open> opens_, stash_;
};

// Sum of q^{w_q} per (|S1|, |S2|) class over all compatible pairs (Linear
// reading; equals Cyclic on cluster-monomial paths).
inline std::map<std::pair<int, int>, QLaurent> rupel_class_sums(const DyckPath& p, int r,
                                                                int s_hv = +1) {
    std::map<std::pair<int, int>, QLaurent> sums;
    PairWalker walker(p, r, s_hv);
    walker.for_each([&](edge_mask s1, edge_mask s2, long long w) {
        sums[{mask_count(s1), mask_count(s2)}].add_term(static_cast<int>(w), 1);
    });
    return sums;
}

// ---------------------------------------------------------------------------
// The quantum expansion over compatible pairs.

// Quantum expansion of X_n^alpha X_{n+1}^beta as a sum over compatible pairs
// on the associated Dyck path.  The global q-shift is recovered from
// bar-invariance (every class sum must share one center); for cluster
// variables it equals the 1 - c_{n-1} - c_{n-2} shift of the expansion
// theorem, which the test suite asserts.
inline TorusElement rupel_expansion(int r, int n, int alpha, int beta,
                                    const ConventionConfig& cfg, int s_hv = +1) {
    if (alpha < 0 || beta < 0 || alpha + beta == 0)
        throw std::invalid_argument("rupel_expansion: need alpha,beta >= 0, not both zero");
    DyckPath path;
    if (beta == 0 && alpha == 1) {
        path = maximal_dyck_path(static_cast<int>(c_seq(r, n - 1)), static_cast<int>(c_seq(r, n - 2)));
    } else {
        path = monomial_path(r, n - 1, beta, alpha).path;
    }
    const int L = path.ell(), H = path.h();
    auto sums = rupel_class_sums(path, r, s_hv);
    // determine the common center forced by bar-invariance
    long long num = 0;
    bool have = false;
    for (auto& [ab, f] : sums) {
        if (f.is_zero()) continue;
        long long c2 = f.min_exponent() + f.max_exponent();
        if (!have) {
            num = c2;
            have = true;
        } else if (c2 != num) {
            throw std::logic_error("rupel_expansion: class sums do not share a center");
        }
        if (f.bar() != f.shifted(-c2)) throw std::logic_error("rupel_expansion: class sum not palindromic");
    }
    if (!have) return TorusElement::zero();
    if (num % 2 != 0) throw std::logic_error("rupel_expansion: non-integral shift");
    int shift = static_cast<int>(-num / 2);
    TorusElement result;
    for (auto& [ab, f] : sums) {
        auto [a, b] = ab;
        result += normalized_monomial(-L + r * b, -H + r * a, f.shifted(shift), cfg);
    }
    return result;
}

// The cluster-variable shift of the expansion theorem.
inline long long rupel_shift(int r, int n) { return 1 - c_seq(r, n - 1) - c_seq(r, n - 2); }

}  // namespace qrank2
