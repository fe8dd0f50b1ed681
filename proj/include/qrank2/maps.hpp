#pragma once

// The structural maps between compatible pairs and broken lines: the
// tilde-theta step, the Lee-Li-Zelevinsky theta, the cluster-monomial
// bijection phi (negative angular momentum), the Kronecker positive-side
// extension, the recursive (m,m) quantum weight and its phi.

#include <map>
#include <vector>

#include "qrank2/pairs.hpp"
#include "qrank2/scattering.hpp"

namespace qrank2 {

struct StepPair {
    int ell = 0, h = 0;  // target path dimensions
    edge_mask s1 = 0, s2 = 0;
};

namespace detail {
// Protruding slots with the label level each slot listens to: slot k of a
// vertical with run preceding horizontals pairs with label level run + k.
struct Slot {
    int v;      // vertical label on the source path
    int level;  // cascade label level
};

inline std::vector<Slot> slot_table(const DyckPath& p, int r) {
    std::vector<Slot> slots;
    for (int j = 1; j <= p.h(); ++j) {
        int run = run_before(p, j);
        for (int k = 1; run + k <= r; ++k) slots.push_back({j, run + k});
    }
    return slots;
}
}  // namespace detail

// One application of tilde-theta: on P(ell,h) with target P(h, rh-ell),
//   S~1 = { eta_i : nu_i not in S2 },
//   S~2 = { nu_j : the slot-j vertical's cascade label of the slot's level
//           sits on an S1 edge }.
// The slot rule reduces to "nu_{pro,j} is overflowing" when every slot has
// level r, and to the special top-vertical rule of the Kronecker extension
// when the top vertical protrudes twice.
inline StepPair ttheta(const DyckPath& p, edge_mask s1, edge_mask s2, int r,
                       const CascadeData& cd) {
    StepPair out;
    out.ell = p.h();
    out.h = r * p.h() - p.ell();
    if (out.h < 0) throw std::domain_error("ttheta: rh < ell");
    for (int i = 1; i <= p.h(); ++i)
        if (!mask_has(s2, i)) out.s1 |= (edge_mask{1} << i);
    auto slots = detail::slot_table(p, r);
    if (static_cast<int>(slots.size()) != out.h)
        throw std::domain_error("ttheta: slot count mismatch (path outside the map's domain)");
    for (std::size_t j = 0; j < slots.size(); ++j) {
        int eta = cd.partner[slots[j].v][slots[j].level - 1];
        if (eta != 0 && mask_has(s1, eta)) out.s2 |= (edge_mask{1} << (j + 1));
    }
    return out;
}

inline StepPair ttheta(const DyckPath& p, edge_mask s1, edge_mask s2, int r) {
    return ttheta(p, s1, s2, r, cascade(p, s2, r));
}

// The Lee-Li-Zelevinsky theta, in the form theta = ttheta o lambda: the S1
// part is the complement rule and the S2 part reads overshadowing (shadow
// partners) instead of overflowing.
inline StepPair theta_llz(const DyckPath& p, edge_mask s1, edge_mask s2, int r) {
    StepPair out;
    out.ell = p.h();
    out.h = r * p.h() - p.ell();
    if (out.h < 0) throw std::domain_error("theta_llz: rh < ell");
    for (int i = 1; i <= p.h(); ++i)
        if (!mask_has(s2, i)) out.s1 |= (edge_mask{1} << i);
    ShadowData sd = shadow(p, s2, r);
    auto slots = detail::slot_table(p, r);
    if (static_cast<int>(slots.size()) != out.h)
        throw std::domain_error("theta_llz: slot count mismatch");
    for (std::size_t j = 0; j < slots.size(); ++j) {
        int eta = sd.partner[slots[j].v];
        if (eta != 0 && mask_has(s1, eta)) out.s2 |= (edge_mask{1} << (j + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// phi for cluster monomials, negative angular momentum.

struct ThetaOrbit {
    std::vector<StepPair> stages;    // stage pairs, including the input
    std::vector<int> s2_sizes;       // b_i
    std::vector<Bend> bends;         // increasing wall index (stage order)
};

// The stage machine behind phi: at stage 0 the multiplicity is the number
// of S1 edges outside the cascade; later stages live in the image
// convention, where it is the number of uncascaded edges NOT in S1.  The
// cascade part of S1 drives the next tilde-theta application.
inline ThetaOrbit phi_negative_orbit(int r, int n, int alpha, int beta, edge_mask s1,
                                     edge_mask s2) {
    ThetaOrbit orbit;
    int cur_n = n;
    edge_mask cs1 = s1, cs2 = s2;
    for (int stage = 0;; ++stage) {
        MonomialPath mp = monomial_path(r, cur_n, alpha, beta);
        const DyckPath& p = mp.path;
        if (static_cast<long long>(r) * mask_count(cs2) > p.ell())
            throw std::domain_error("phi_negative: pair is not positive at this stage");
        CascadeData cd = cascade_blockwise(mp, cs2, r);
        edge_mask all_eta = 0;
        for (int i = 1; i <= p.ell(); ++i) all_eta |= (edge_mask{1} << i);
        edge_mask U = all_eta & ~cd.cas_union;
        int t = stage == 0 ? mask_count(cs1 & U) : mask_count(U & ~cs1);
        orbit.stages.push_back({p.ell(), p.h(), cs1, cs2});
        orbit.s2_sizes.push_back(mask_count(cs2));
        if (t > 0) orbit.bends.push_back({stage, t});
        if (cs2 == 0) break;
        edge_mask core = cs1 & cd.cas_union;
        StepPair next = ttheta(p, core, cs2, r, cd);
        cs1 = next.s1;
        cs2 = next.s2;
        if (--cur_n < 1)
            throw std::logic_error("phi_negative: orbit exhausted the path family");
    }
    return orbit;
}

// Bend sequence in the enumerate_BL convention (decreasing wall index).
inline std::vector<Bend> phi_negative(int r, int n, int alpha, int beta, edge_mask s1,
                                      edge_mask s2) {
    ThetaOrbit orbit = phi_negative_orbit(r, n, alpha, beta, s1, s2);
    std::vector<Bend> bends(orbit.bends.rbegin(), orbit.bends.rend());
    return bends;
}

// ---------------------------------------------------------------------------
// Kronecker positive side.

// Literal Kronecker tilde-theta: CP(h-1,h) -> CP(h,h+1); the unified slot
// rule covers the doubly protruding top vertical.
inline StepPair ttheta_kron(const DyckPath& p, edge_mask s1, edge_mask s2) {
    if (p.ell() != p.h() - 1) throw std::domain_error("ttheta_kron: path must be P(h-1,h)");
    if (2 * mask_count(s2) > p.ell())
        throw std::domain_error("ttheta_kron: needs 2|S2| <= h-1");
    return ttheta(p, s1, s2, 2);
}

struct KronOrbit {
    std::vector<int> a;  // |S2^{(i)}| until stabilization (inclusive)
    int a_infty = 0;
    std::vector<StepPair> stages;
};

inline KronOrbit kron_positive_orbit(const DyckPath& p, edge_mask s1, edge_mask s2,
                                     int max_iter = 64) {
    KronOrbit orbit;
    DyckPath cur = p;
    edge_mask cs1 = s1, cs2 = s2;
    orbit.a.push_back(mask_count(cs2));
    orbit.stages.push_back({p.ell(), p.h(), s1, s2});
    for (int it = 0; it < max_iter; ++it) {
        StepPair next = ttheta_kron(cur, cs1, cs2);
        orbit.a.push_back(mask_count(next.s2));
        orbit.stages.push_back(next);
        cur = maximal_dyck_path(next.ell, next.h);
        cs1 = next.s1;
        cs2 = next.s2;
        int k = static_cast<int>(orbit.a.size());
        if (orbit.a[k - 1] == orbit.a[k - 2]) {
            orbit.a_infty = orbit.a.back();
            return orbit;
        }
    }
    throw std::logic_error("kron_positive_orbit: |S2| never stabilized");
}

// phi on the positive side: the slope-one wall carries a_infty; the finite
// wall multiplicities are read off the forward a_i sequence (x-axis:
// |S1| - a_1; y-axis and rays: second differences).
inline std::vector<Bend> phi_positive_kron(const DyckPath& p, edge_mask s1, edge_mask s2) {
    KronOrbit orbit = kron_positive_orbit(p, s1, s2);
    auto a = [&](int i) {
        if (i < static_cast<int>(orbit.a.size())) return orbit.a[i];
        return orbit.a_infty;
    };
    std::vector<Bend> bends;
    if (orbit.a_infty > 0) bends.push_back({kD1Index, orbit.a_infty});
    int max_wall = static_cast<int>(orbit.a.size()) + 1;
    std::vector<Bend> finite;
    for (int l = max_wall; l >= 2; --l) {
        int m = a(l - 1) - 2 * a(l) + a(l + 1);
        if (m < 0) throw std::logic_error("phi_positive_kron: negative ray multiplicity");
        if (m > 0) finite.push_back({l, m});
    }
    int my = a(0) - 2 * a(1) + a(2);
    if (my < 0) throw std::logic_error("phi_positive_kron: negative y multiplicity");
    if (my > 0) finite.push_back({1, my});
    int mx = mask_count(s1) - a(1);
    if (mx < 0) throw std::logic_error("phi_positive_kron: negative x multiplicity");
    if (mx > 0) finite.push_back({0, mx});
    for (const Bend& bd : finite) bends.push_back(bd);
    return bends;
}

// ---------------------------------------------------------------------------
// The Kronecker (m,m) family: theta iteration, the recursive quantum
// weight, and phi.

// One theta step on P(m,m): complement S1, overshadowing S2.
inline StepPair theta_step_mm(const DyckPath& p, edge_mask s1, edge_mask s2) {
    return theta_llz(p, s1, s2, 2);
}

// Recursive quantum weight of a compatible pair on P(m,m): each stage
// contributes the subset exponent (in q^4) of the unshadowed edges missing
// from S1, and theta drives the recursion to the base pair (P_1, empty).
inline long long kron_recursive_weight(const DyckPath& p, edge_mask s1, edge_mask s2) {
    const int m = p.h();
    if (p.ell() != m) throw std::domain_error("kron_recursive_weight: path must be P(m,m)");
    edge_mask all_eta = 0;
    for (int i = 1; i <= m; ++i) all_eta |= (edge_mask{1} << i);
    edge_mask cs1 = s1, cs2 = s2;
    long long w = 0;
    for (int it = 0; it <= m + 1; ++it) {
        if (cs1 == all_eta && cs2 == 0) return w;
        ShadowData sd = shadow(p, cs2, 2);
        std::vector<int> U;
        for (int i = 1; i <= m; ++i)
            if (!mask_has(sd.sh_union, i)) U.push_back(i);
        std::set<int> J;
        for (std::size_t k = 0; k < U.size(); ++k)
            if (!mask_has(cs1, U[k])) J.insert(static_cast<int>(k) + 1);
        w += 4LL * subset_exponent(static_cast<int>(U.size()), J);
        StepPair next = theta_step_mm(p, cs1, cs2);
        cs1 = next.s1;
        cs2 = next.s2;
    }
    throw std::logic_error("kron_recursive_weight: theta iteration did not terminate");
}

// phi for the (m,m) pairs: stage 0 bends at the y-axis with multiplicity
// |S1 cap U|; stage i >= 1 bends at the wall of slope (i-1)/i with
// multiplicity |U minus S1| (the image convention).
inline std::vector<Bend> phi_mm(const DyckPath& p, edge_mask s1, edge_mask s2) {
    const int m = p.h();
    if (p.ell() != m) throw std::domain_error("phi_mm: path must be P(m,m)");
    if (2 * mask_count(s2) > m) throw std::domain_error("phi_mm: needs 2|S2| <= m");
    edge_mask cs1 = s1, cs2 = s2;
    std::vector<Bend> stage_bends;
    for (int stage = 0; stage <= m + 1; ++stage) {
        ShadowData sd = shadow(p, cs2, 2);
        edge_mask all_eta = 0;
        for (int i = 1; i <= m; ++i) all_eta |= (edge_mask{1} << i);
        edge_mask U = all_eta & ~sd.sh_union;
        int t = stage == 0 ? mask_count(cs1 & U) : mask_count(U & ~cs1);
        if (t > 0) stage_bends.push_back({stage - 1, t});  // stage 0 = y-axis = wall -1
        if (cs2 == 0) {
            std::vector<Bend> bends(stage_bends.rbegin(), stage_bends.rend());
            return bends;
        }
        StepPair next = theta_step_mm(p, cs1, cs2);
        cs1 = next.s1;
        cs2 = next.s2;
    }
    throw std::logic_error("phi_mm: theta iteration did not terminate");
}

}  // namespace qrank2
