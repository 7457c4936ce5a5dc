#pragma once

#include "tvo/groupalg.hpp"

#include <string>
#include <vector>

namespace tvo {

/**
 * One closed-form action rule on C{Q/2Q}:
 *
 *   2 X-hat_alpha prod_{l in factors} (1 + i c_l e^{alpha_l})
 *       = unit * prod_{l in sign_mask} c_l * prod_{l in factors} (1 + i c''_l e^{alpha_l})
 *
 * where c'' is c with the entries in `flips` negated. When `factors` covers
 * every node this is a statement about v(c).
 */
struct ActionFormula {
    std::string family;
    std::string label;
    LatticeVector alpha;
    std::uint32_t factors = 0;
    Scalar unit;
    std::uint32_t sign_mask = 0;
    std::uint32_t flips = 0;
};

struct ActionMismatch {
    std::string family;
    std::string label;
    SignTuple tuple;
    std::string expected;
    std::string actual;
    /// True when actual == -expected: the rule holds up to an overall sign.
    bool sign_only = false;
};

struct ActionFormulaResult {
    ActionFormula formula;
    int tuples_checked = 0;
    int mismatches = 0;
    bool sign_only = true;
};

struct ActionReport {
    std::string algebra;
    std::vector<ActionFormulaResult> formulas;
    std::vector<ActionMismatch> mismatches;

    int deviating_formulas() const
    {
        int n = 0;
        for (const auto& f : formulas) {
            n += f.mismatches > 0;
        }
        return n;
    }
    bool all_match() const { return mismatches.empty(); }
};

namespace detail {

inline std::uint32_t node_mask(std::initializer_list<int> nodes)
{
    std::uint32_t m = 0;
    for (int j : nodes) {
        m |= 1u << (j - 1);
    }
    return m;
}

inline LatticeVector root_sum(int n, std::initializer_list<std::pair<int, int>> parts)
{
    LatticeVector v(n);
    for (auto [j, c] : parts) {
        v(j) += c;
    }
    return v;
}

inline std::string idx(int j) { return std::to_string(j); }

}  // namespace detail

/// The generic simple-root rule: 2X_{alpha_j} v = -i c_j v(flip k != j with nu(alpha_j, alpha_k) = -1).
inline std::vector<ActionFormula> simple_root_formulas(const RootLattice& L)
{
    using detail::node_mask;
    int n = L.rank();
    std::uint32_t all = (1u << n) - 1;
    std::vector<ActionFormula> out;
    for (int j = 1; j <= n; ++j) {
        std::uint32_t flips = 0;
        for (int k = 1; k <= n; ++k) {
            if (k != j && L.nu_entry(j, k) == -1) {
                flips |= 1u << (k - 1);
            }
        }
        out.push_back({"simple_root", "j=" + detail::idx(j), L.simple_root(j), all, -Scalar::i(), node_mask({j}), flips});
    }
    return out;
}

/**
 * Partial-product rules around a branch node p with both alpha_{p+1} and
 * alpha_n pointing into it (even D, E6, E7, E8), and the odd-D rules around
 * the node n-2 pointing outwards.
 */
inline std::vector<ActionFormula> branch_triple_formulas(const RootLattice& L)
{
    using detail::node_mask;
    int n = L.rank();
    std::vector<ActionFormula> out;
    auto series = L.kind().series;
    int p = 0;
    if (series == Series::D && n % 2 == 0) {
        p = n - 2;
    } else if (series == Series::E) {
        p = n == 8 ? 5 : 3;
    }
    if (p > 0) {
        for (int j = 1; j <= p - 1; ++j) {
            LatticeVector a = detail::root_sum(n, {{j, 1}, {p + 1, 1}, {n, 1}});
            std::uint32_t tri = node_mask({j, p + 1, n});
            out.push_back({"branch_triple", "j=" + detail::idx(j), a, tri, Scalar::i(), tri, 0});
            for (int k : {j - 1, j + 1}) {
                if (k < 1 || k > p || L.nu_entry(j, k) != -1) {
                    continue;
                }
                out.push_back({"branch_triple_flip", "j=" + detail::idx(j) + ",k=" + detail::idx(k), a,
                               tri | node_mask({k}), Scalar::i(), tri, node_mask({k})});
            }
        }
    }
    if (series == Series::D && n % 2 == 1) {
        for (int j = 1; j <= n - 4; ++j) {
            LatticeVector a = detail::root_sum(n, {{j, 1}, {n - 1, 1}, {n, 1}});
            out.push_back({"odd_branch_quad", "j=" + detail::idx(j), a, node_mask({j, n - 2, n - 1, n}), Scalar::i(),
                           node_mask({j, n - 1, n}), 0});
        }
        LatticeVector a = detail::root_sum(n, {{n - 2, 1}, {n - 1, 1}, {n, 1}});
        std::uint32_t tri = node_mask({n - 2, n - 1, n});
        out.push_back({"odd_branch_triple", "", a, tri, Scalar::i(), tri, 0});
    }
    return out;
}

/// Zero-mode action tables for D_n under the pictured orientations.
inline std::vector<ActionFormula> d_series_formulas(const RootLattice& L)
{
    using detail::idx;
    using detail::node_mask;
    int n = L.rank();
    std::uint32_t all = (1u << n) - 1;
    std::vector<ActionFormula> out;
    Scalar mi = -Scalar::i();
    Scalar pi = Scalar::i();
    if (n % 2 == 0) {
        int m = n / 2;
        for (int j = 1; j <= m; ++j) {
            out.push_back({"d_even_odd_nodes", "j=" + idx(j), L.simple_root(2 * j - 1), all, mi, node_mask({2 * j - 1}), 0});
        }
        for (int j = 1; j <= m - 2; ++j) {
            out.push_back({"d_even_even_nodes", "j=" + idx(j), L.simple_root(2 * j), all, mi, node_mask({2 * j}),
                           node_mask({2 * j - 1, 2 * j + 1})});
        }
        out.push_back({"d_even_even_nodes", "j=" + idx(m - 1), L.simple_root(2 * m - 2), all, mi,
                       node_mask({2 * m - 2}), node_mask({2 * m - 3, 2 * m - 1, 2 * m})});
        out.push_back({"d_even_even_nodes", "node " + idx(2 * m), L.simple_root(2 * m), all, mi, node_mask({2 * m}), 0});
        for (int j = 1; j <= m - 1; ++j) {
            LatticeVector a(n);
            a(2 * j - 1) = 1;
            for (int l = 2 * j; l <= 2 * m - 2; ++l) {
                a(l) = 2;
            }
            a(2 * m - 1) = 1;
            a(2 * m) = 1;
            out.push_back({"d_even_long", "j=" + idx(j), a, all, pi, node_mask({2 * j - 1, 2 * m - 1, 2 * m}), 0});
        }
    } else {
        int m = (n - 1) / 2;
        for (int j = 1; j <= m; ++j) {
            out.push_back({"d_odd_odd_nodes", "j=" + idx(j), L.simple_root(2 * j - 1), all, mi, node_mask({2 * j - 1}), 0});
        }
        out.push_back({"d_odd_odd_nodes", "j=" + idx(m + 1), L.simple_root(2 * m + 1), all, mi, node_mask({2 * m + 1}),
                       node_mask({2 * m - 1})});
        for (int j = 1; j <= m - 1; ++j) {
            out.push_back({"d_odd_even_nodes", "j=" + idx(j), L.simple_root(2 * j), all, mi, node_mask({2 * j}),
                           node_mask({2 * j - 1, 2 * j + 1})});
        }
        out.push_back({"d_odd_even_nodes", "j=" + idx(m), L.simple_root(2 * m), all, mi, node_mask({2 * m}),
                       node_mask({2 * m - 1})});
        for (int j = 1; j <= m - 1; ++j) {
            LatticeVector a(n);
            a(2 * j - 1) = 1;
            for (int l = 2 * j; l <= 2 * m - 1; ++l) {
                a(l) = 2;
            }
            a(2 * m) = 1;
            a(2 * m + 1) = 1;
            out.push_back({"d_odd_long", "j=" + idx(j), a, all, pi, node_mask({2 * j - 1, 2 * m, 2 * m + 1}), 0});
        }
        LatticeVector a = detail::root_sum(n, {{2 * m - 1, 1}, {2 * m, 1}, {2 * m + 1, 1}});
        out.push_back({"d_odd_short_triple", "", a, all, pi, node_mask({2 * m - 1, 2 * m, 2 * m + 1}), 0});
    }
    return out;
}

/// Zero-mode action tables for A_n.
inline std::vector<ActionFormula> a_series_formulas(const RootLattice& L)
{
    using detail::idx;
    using detail::node_mask;
    int n = L.rank();
    std::uint32_t all = (1u << n) - 1;
    std::vector<ActionFormula> out;
    Scalar mi = -Scalar::i();
    for (int j = 1; 2 * j - 1 <= n; ++j) {
        out.push_back({"a_odd_nodes", "j=" + idx(j), L.simple_root(2 * j - 1), all, mi, node_mask({2 * j - 1}), 0});
    }
    for (int j = 1; 2 * j <= n; ++j) {
        std::uint32_t flips = 2 * j < n ? node_mask({2 * j - 1, 2 * j + 1}) : node_mask({2 * j - 1});
        out.push_back({"a_even_nodes", "j=" + idx(j), L.simple_root(2 * j), all, mi, node_mask({2 * j}), flips});
    }
    return out;
}

/// Zero-mode action tables for E6, E7, E8.
inline std::vector<ActionFormula> e_series_formulas(const RootLattice& L)
{
    using detail::idx;
    using detail::node_mask;
    int n = L.rank();
    std::uint32_t all = (1u << n) - 1;
    std::vector<std::pair<int, std::uint32_t>> rows;
    if (n == 6) {
        rows = {{2, 0}, {4, 0}, {6, 0}, {1, node_mask({2})}, {3, node_mask({2, 4, 6})}, {5, node_mask({4})}};
    } else if (n == 7) {
        rows = {{2, 0}, {4, 0}, {6, 0}, {7, 0}, {1, node_mask({2})}, {3, node_mask({2, 4, 7})}, {5, node_mask({4, 6})}};
    } else {
        rows = {{2, 0},
                {4, 0},
                {6, 0},
                {8, 0},
                {1, node_mask({2})},
                {3, node_mask({2, 4})},
                {5, node_mask({4, 6, 8})},
                {7, node_mask({6})}};
    }
    std::vector<ActionFormula> out;
    for (auto [j, flips] : rows) {
        out.push_back({"e_nodes", "j=" + idx(j), L.simple_root(j), all, -Scalar::i(), node_mask({j}), flips});
    }
    return out;
}

/// Every closed-form table that applies to L under its default orientation.
inline std::vector<ActionFormula> applicable_action_formulas(const RootLattice& L)
{
    std::vector<ActionFormula> out = simple_root_formulas(L);
    auto add = [&](std::vector<ActionFormula> more) { out.insert(out.end(), more.begin(), more.end()); };
    add(branch_triple_formulas(L));
    switch (L.kind().series) {
    case Series::D: add(d_series_formulas(L)); break;
    case Series::A: add(a_series_formulas(L)); break;
    case Series::E: add(e_series_formulas(L)); break;
    }
    return out;
}

/**
 * Evaluates each rule against the definition of X-hat on the group algebra,
 * over every sign assignment of the nodes the rule involves.
 */
inline ActionReport verify_action_formulas(const RootLattice& L, const std::vector<ActionFormula>& formulas)
{
    ActionReport rep;
    rep.algebra = L.kind().name();
    int n = L.rank();
    for (const auto& f : formulas) {
        ActionFormulaResult res{f, 0, 0, true};
        // enumerate sign choices on the factor nodes; other entries stay +1
        std::vector<int> nodes;
        for (int j = 1; j <= n; ++j) {
            if ((f.factors >> (j - 1)) & 1u) {
                nodes.push_back(j);
            }
        }
        for (std::uint32_t sub = 0; sub < (1u << nodes.size()); ++sub) {
            std::uint32_t neg = 0;
            for (std::size_t b = 0; b < nodes.size(); ++b) {
                if ((sub >> b) & 1u) {
                    neg |= 1u << (nodes[b] - 1);
                }
            }
            SignTuple c(n, neg);
            GroupAlgElement lhs = Scalar(2) * xhat_apply(L, f.alpha, partial_v(n, c, f.factors));
            Scalar coeff = c.product(f.sign_mask) == 1 ? f.unit : -f.unit;
            GroupAlgElement rhs = coeff * partial_v(n, c.flipped(f.flips), f.factors);
            ++res.tuples_checked;
            if (!(lhs == rhs)) {
                ++res.mismatches;
                bool sign_only = lhs == Scalar(-1) * rhs;
                res.sign_only = res.sign_only && sign_only;
                rep.mismatches.push_back({f.family, f.label, c, rhs.str(), lhs.str(), sign_only});
            }
        }
        if (res.mismatches == 0) {
            res.sign_only = false;
        }
        rep.formulas.push_back(res);
    }
    return rep;
}

inline ActionReport verify_action_lemmas(const RootLattice& L)
{
    return verify_action_formulas(L, applicable_action_formulas(L));
}

}  // namespace tvo
