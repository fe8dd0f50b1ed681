#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qrank2/dyck.hpp"

using namespace qrank2;

namespace {

// Brute-force maximality oracle: enumerate every lattice word weakly below
// the diagonal and keep the pointwise-highest one.
std::vector<Step> brute_force_maximal(int ell, int h) {
    std::vector<Step> best;
    std::vector<long long> best_heights;
    int n = ell + h;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        long long x = 0, y = 0;
        bool ok = true;
        std::vector<Step> w;
        std::vector<long long> heights;
        for (int k = 0; k < n && ok; ++k) {
            if (mask & (1u << k)) {
                ++y;
                w.push_back(Step::N);
            } else {
                ++x;
                w.push_back(Step::E);
            }
            if (y * ell > x * static_cast<long long>(h)) ok = false;
            heights.push_back(y);
        }
        if (!ok || x != ell || y != h) continue;
        if (best.empty() || heights > best_heights) {
            best = w;
            best_heights = heights;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("c sequence values") {
    long long r2[] = {-1, 0, 1, 2, 3, 4};
    long long r3[] = {-1, 0, 1, 3, 8, 21};
    for (int n = 0; n <= 5; ++n) {
        CHECK(c_seq(2, n) == r2[n]);
        CHECK(c_seq(3, n) == r3[n]);
    }
    CHECK(c_value(2, 3, 2, 1) == 5);
    CHECK(c_value(2, 3, 1, 0) == c_seq(2, 3));
}

TEST_CASE("c sequence identities") {
    for (int r = 1; r <= 4; ++r)
        for (int n = 1; n <= 12; ++n)
            for (int l = 1; l <= n; ++l) {
                CHECK(c_seq(r, n) * c_seq(r, l + 1) - c_seq(r, n + 1) * c_seq(r, l) ==
                      c_seq(r, n - l + 1));
                CHECK(c_seq(r, n + 1) * c_seq(r, l + 1) - c_seq(r, n) * c_seq(r, l) ==
                      c_seq(r, n + l));
            }
}

TEST_CASE("c identities at the monomial generalization indices") {
    // c_n replaced by c_n[alpha,beta] at the positions used by the
    // cluster-monomial recursion: c_{n+1}[a,b] c_{l+1} - c_n[a,b] c_l = c_{n+l}[a,b]-type
    // statements follow from linearity; check the linear recursion itself.
    for (int r = 2; r <= 3; ++r)
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                for (int n = 1; n <= 10; ++n)
                    CHECK(c_value(r, n + 1, a, b) == r * c_value(r, n, a, b) - c_value(r, n - 1, a, b));
}

TEST_CASE("general_recursion") {
    CHECK(general_recursion(2, 7, 9, 0) == 7);
    CHECK(general_recursion(2, 7, 9, 1) == 9);
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int r = 1; r <= 4; ++r)
        for (int t = 0; t < 50; ++t) {
            long long a = d(rng), b = d(rng);
            for (int k = 0; k <= 10; ++k)
                CHECK(general_recursion(r, a, b, k) ==
                      c_seq(r, k + 1) * b - c_seq(r, k) * a);
        }
}

TEST_CASE("maximal Dyck path small words") {
    CHECK(maximal_dyck_path(1, 1).word_str() == "EN");
    CHECK(maximal_dyck_path(2, 1).word_str() == "EEN");
    CHECK(maximal_dyck_path(3, 2).word_str() == "EENEN");
    CHECK(maximal_dyck_path(0, 0).word_str() == "");
    CHECK(maximal_dyck_path(0, 3).word_str() == "NNN");
    CHECK(maximal_dyck_path(4, 0).word_str() == "EEEE");
    // h > ell paths follow the same greedy rule
    CHECK(maximal_dyck_path(2, 3).word_str() == "ENENN");
}

TEST_CASE("maximal path equals brute-force maximum for all ell+h <= 14") {
    for (int ell = 0; ell <= 14; ++ell)
        for (int h = 0; ell + h <= 14; ++h) {
            DyckPath p = maximal_dyck_path(ell, h);
            CHECK(p.word() == brute_force_maximal(ell, h));
        }
}

TEST_CASE("edge labels and vertices") {
    DyckPath p = maximal_dyck_path(3, 2);  // EENEN
    CHECK(p.eta_position(1) == 0);
    CHECK(p.eta_position(3) == 3);
    CHECK(p.nu_position(1) == 2);
    CHECK(p.nu_position(2) == 4);
    CHECK(p.eta_label(2) == 0);
    CHECK(p.eta_label(3) == 3);
    CHECK(p.nu_label(2) == 1);
    CHECK(p.vertex(0) == std::make_pair(0, 0));
    CHECK(p.vertex(5) == std::make_pair(3, 2));
    CHECK(p.vertex(3) == std::make_pair(2, 1));
}

TEST_CASE("cyclic subpath counts") {
    DyckPath p = maximal_dyck_path(3, 2);
    CHECK(cyclic_subpath_counts(p, 0, 5) == std::make_pair(3, 2));
    // from eta_3 to eta_1, wrapping: edges eta3, nu2, eta1 -> (2,1)... the
    // walk starts at the left endpoint of eta_3 and stops at eta_1's left
    // endpoint, so it covers eta_3, nu_2 only.
    auto wrapped = cyclic_subpath_counts(p, EdgeRef{true, 3}, EdgeRef{true, 1});
    CHECK(wrapped == std::make_pair(1, 1));
    // degenerate single-edge subpaths
    CHECK(cyclic_subpath_counts(p, EdgeRef{true, 1}, EdgeRef{true, 2}) == std::make_pair(1, 0));
    CHECK(cyclic_subpath_counts(p, 2, 3) == std::make_pair(0, 1));
    CHECK_THROWS_AS(cyclic_subpath_counts(p, EdgeRef{true, 2}, EdgeRef{true, 2}),
                    std::invalid_argument);
}

TEST_CASE("monomial path shapes and block concatenation") {
    MonomialPath mp = monomial_path(2, 3, 1, 0);
    CHECK(mp.path == maximal_dyck_path(3, 2));
    CHECK(mp.block_dims.size() == 1);

    MonomialPath mp2 = monomial_path(2, 2, 1, 1);
    CHECK(mp2.path.ell() == 3);
    CHECK(mp2.path.h() == 1);
    CHECK(mp2.block_dims.size() == 2);

    for (int r = 1; r <= 3; ++r)
        for (int n = 1; n <= 5; ++n)
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; a + b <= 3; ++b) {
                    if (a + b == 0) continue;
                    long long ell = c_value(r, n + 1, a, b), h = c_value(r, n, a, b);
                    if (ell < 0 || h < 0 || ell + h > 40) continue;
                    MonomialPath m = monomial_path(r, n, a, b);
                    CHECK(m.path == maximal_dyck_path(static_cast<int>(ell), static_cast<int>(h)));
                }
}
