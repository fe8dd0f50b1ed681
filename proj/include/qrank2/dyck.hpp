#pragma once

// Maximal Dyck paths (lower Christoffel words), the c_n sequence and its
// identities, cyclic subpath statistics, and the block decomposition of the
// paths attached to cluster monomials.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qrank2/qlaurent.hpp"

namespace qrank2 {

// c_0 = -1, c_1 = 0, c_n = r c_{n-1} - c_{n-2}.  Extended one step to the
// left (c_{-1} = -r) so that c_n[alpha,beta] is total for n >= 0.
inline long long c_seq(int r, int n) {
    if (n < -1) throw std::invalid_argument("c_seq: n >= -1");
    if (n == -1) return -r;
    long long a = -1, b = 0;  // c_0, c_1
    if (n == 0) return a;
    for (int k = 1; k < n; ++k) {
        long long c = static_cast<long long>(r) * b - a;
        a = b;
        b = c;
    }
    return b;
}

// c_n[alpha,beta] = alpha c_n + beta c_{n-1}
inline long long c_value(int r, int n, long long alpha, long long beta) {
    if (n < 0) throw std::invalid_argument("c_value: n >= 0");
    return alpha * c_seq(r, n) + beta * c_seq(r, n - 1);
}

// f^r_{alpha,beta}: f(0)=alpha, f(1)=beta, f(k+1) = r f(k) - f(k-1)
inline long long general_recursion(int r, long long alpha, long long beta, int k) {
    if (k < 0) throw std::invalid_argument("general_recursion: k >= 0");
    if (k == 0) return alpha;
    long long a = alpha, b = beta;
    for (int i = 1; i < k; ++i) {
        long long c = static_cast<long long>(r) * b - a;
        a = b;
        b = c;
    }
    return b;
}

enum class Step : unsigned char { E, N };

// A lattice word over {E,N} from (0,0) to (ell,h) staying weakly below the
// main diagonal.  Horizontal edges are eta_1..eta_ell west to east, vertical
// edges nu_1..nu_h bottom to top; vertices w_0..w_{ell+h}.
class DyckPath {
public:
    DyckPath() = default;

    DyckPath(int ell, int h, std::vector<Step> word) : ell_(ell), h_(h), word_(std::move(word)) {
        if (ell < 0 || h < 0) throw std::invalid_argument("DyckPath: negative dimensions");
        if (static_cast<int>(word_.size()) != ell + h)
            throw std::invalid_argument("DyckPath: word length mismatch");
        eta_pos_.reserve(ell_);
        nu_pos_.reserve(h_);
        long long x = 0, y = 0;
        for (int k = 0; k < ell_ + h_; ++k) {
            if (word_[k] == Step::E) {
                eta_pos_.push_back(k);
                ++x;
            } else {
                nu_pos_.push_back(k);
                ++y;
                if (y * ell_ > x * static_cast<long long>(h_))
                    throw std::invalid_argument("DyckPath: word crosses the diagonal");
            }
        }
        if (static_cast<int>(eta_pos_.size()) != ell_ || static_cast<int>(nu_pos_.size()) != h_)
            throw std::invalid_argument("DyckPath: step counts mismatch");
    }

    int ell() const { return ell_; }
    int h() const { return h_; }
    int size() const { return ell_ + h_; }
    const std::vector<Step>& word() const { return word_; }
    Step step(int k) const { return word_.at(k); }

    // 0-based edge position of eta_i / nu_j (1-based labels).
    int eta_position(int i) const { return eta_pos_.at(i - 1); }
    int nu_position(int j) const { return nu_pos_.at(j - 1); }

    // 1-based eta/nu label of the edge at position k, 0 if the other kind.
    int eta_label(int k) const {
        if (word_.at(k) != Step::E) return 0;
        int lo = 0, hi = static_cast<int>(eta_pos_.size());
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (eta_pos_[mid] < k) lo = mid + 1; else hi = mid;
        }
        return lo + 1;
    }
    int nu_label(int k) const {
        if (word_.at(k) != Step::N) return 0;
        int lo = 0, hi = static_cast<int>(nu_pos_.size());
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (nu_pos_[mid] < k) lo = mid + 1; else hi = mid;
        }
        return lo + 1;
    }

    std::pair<int, int> vertex(int k) const {
        int x = 0, y = 0;
        for (int i = 0; i < k; ++i) (word_.at(i) == Step::E ? x : y)++;
        return {x, y};
    }

    std::string word_str() const {
        std::string s;
        for (Step st : word_) s += (st == Step::E ? 'E' : 'N');
        return s;
    }

    bool operator==(const DyckPath& o) const { return ell_ == o.ell_ && h_ == o.h_ && word_ == o.word_; }

private:
    int ell_ = 0, h_ = 0;
    std::vector<Step> word_;
    std::vector<int> eta_pos_, nu_pos_;
};

// Greedy construction of the lower Christoffel word of slope h/ell: take N
// whenever the vertex stays weakly below the diagonal.
inline DyckPath maximal_dyck_path(int ell, int h) {
    if (ell < 0 || h < 0) throw std::invalid_argument("maximal_dyck_path: negative dims");
    std::vector<Step> w;
    w.reserve(ell + h);
    long long x = 0, y = 0;
    while (x < ell || y < h) {
        if (y < h && (y + 1) * static_cast<long long>(ell) <= x * static_cast<long long>(h)) {
            w.push_back(Step::N);
            ++y;
        } else if (x < ell) {
            w.push_back(Step::E);
            ++x;
        } else {
            w.push_back(Step::N);
            ++y;
        }
    }
    return DyckPath(ell, h, std::move(w));
}

// Reference to an edge (eta_i or nu_j) or a vertex w_k of one path.
struct EdgeRef {
    bool horizontal;
    int label;  // 1-based
};
using VertexOrEdge = std::variant<int, EdgeRef>;  // int = vertex index

namespace detail {
// p_e: left endpoint of a horizontal edge, top endpoint of a vertical one,
// as a vertex index.
inline int anchor_vertex(const DyckPath& p, const VertexOrEdge& v) {
    if (std::holds_alternative<int>(v)) {
        int k = std::get<int>(v);
        if (k < 0 || k > p.size()) throw std::out_of_range("vertex index");
        return k;
    }
    const EdgeRef& e = std::get<EdgeRef>(v);
    return e.horizontal ? p.eta_position(e.label) : p.nu_position(e.label) + 1;
}
}  // namespace detail

// (|uw|_1, |uw|_2) of the eastward subpath from u to w, continuing
// cyclically around the path when u lies east of w.
inline std::pair<int, int> cyclic_subpath_counts(const DyckPath& p, const VertexOrEdge& u,
                                                 const VertexOrEdge& w) {
    bool ue = std::holds_alternative<EdgeRef>(u), we = std::holds_alternative<EdgeRef>(w);
    if (ue && we) {
        const EdgeRef &a = std::get<EdgeRef>(u), &b = std::get<EdgeRef>(w);
        if (a.horizontal == b.horizontal && a.label == b.label)
            throw std::invalid_argument("cyclic_subpath_counts: identical edges");
    }
    int from = detail::anchor_vertex(p, u);
    int to = detail::anchor_vertex(p, w);
    int n = p.size();
    int edges;
    if (from < to) {
        edges = to - from;
    } else if (from > to) {
        edges = (n - from) + to;
    } else {
        // An edge-to-edge walk starts with the edge at `from`, so coinciding
        // anchors mean a full wrap around the path.
        edges = (ue && we) ? n : 0;
    }
    int e1 = 0, e2 = 0;
    for (int i = 0; i < edges; ++i)
        (p.step((from + i) % n) == Step::E ? e1 : e2)++;
    return {e1, e2};
}

// The Dyck path attached to a cluster monomial, decomposed into alpha+beta
// blocks of shapes P(c_{n+1}, c_n) and P(c_n, c_{n-1}) following the edge
// pattern of P(alpha, beta).
struct MonomialPath {
    DyckPath path;
    std::vector<std::pair<int, int>> block_dims;  // (ell, h) per block
    std::vector<int> block_first_edge;            // edge position where each block starts
};

inline MonomialPath monomial_path(int r, int n, int alpha, int beta) {
    if (n < 1 || alpha < 0 || beta < 0 || (alpha == 0 && beta == 0))
        throw std::invalid_argument("monomial_path: need n >= 1, (alpha,beta) != (0,0)");
    long long ell = alpha * c_seq(r, n + 1) + beta * c_seq(r, n);
    long long h = alpha * c_seq(r, n) + beta * c_seq(r, n - 1);
    if (ell < 0 || h < 0) throw std::invalid_argument("monomial_path: negative dimensions");
    MonomialPath mp;
    // Blocks follow the pattern of P(alpha,beta) read from the east end:
    // the reversed lower Christoffel word is the unique arrangement whose
    // concatenation reproduces the maximal path of the total size.
    DyckPath pattern = maximal_dyck_path(alpha, beta);
    std::vector<Step> word;
    int pos = 0;
    for (int k = pattern.size() - 1; k >= 0; --k) {
        int bl = static_cast<int>(c_seq(r, pattern.step(k) == Step::E ? n + 1 : n));
        int bh = static_cast<int>(c_seq(r, pattern.step(k) == Step::E ? n : n - 1));
        DyckPath block = maximal_dyck_path(bl, bh);
        mp.block_dims.emplace_back(bl, bh);
        mp.block_first_edge.push_back(pos);
        for (Step s : block.word()) word.push_back(s);
        pos += block.size();
    }
    mp.path = DyckPath(static_cast<int>(ell), static_cast<int>(h), std::move(word));
    return mp;
}

}  // namespace qrank2
