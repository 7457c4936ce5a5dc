#pragma once

#include "tvo/lattice.hpp"
#include "tvo/linalg.hpp"
#include "tvo/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tvo {

/// Element of Q/2Q: bit j-1 is the parity of the alpha_j coefficient.
using Coset = std::uint32_t;

/// (c_1, ..., c_n) with c_j = +-1; stored as the mask of negative entries.
class SignTuple {
public:
    SignTuple() = default;
    explicit SignTuple(int rank, std::uint32_t neg_mask = 0) : rank_(rank), neg_(neg_mask) {}

    static SignTuple from_values(const std::vector<int>& c)
    {
        std::uint32_t neg = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == -1) {
                neg |= 1u << j;
            } else if (c[j] != 1) {
                throw std::invalid_argument("sign tuple entries must be +-1");
            }
        }
        return SignTuple(static_cast<int>(c.size()), neg);
    }

    int rank() const { return rank_; }
    std::uint32_t neg_mask() const { return neg_; }
    /// 1-based entry c_j.
    int operator()(int j) const { return (neg_ >> (j - 1)) & 1u ? -1 : 1; }
    SignTuple flipped(std::uint32_t mask) const { return SignTuple(rank_, neg_ ^ mask); }
    /// Product of c_l over the nodes in mask.
    int product(std::uint32_t mask) const { return __builtin_popcount(neg_ & mask) & 1 ? -1 : 1; }

    std::vector<int> values() const
    {
        std::vector<int> v;
        for (int j = 1; j <= rank_; ++j) {
            v.push_back((*this)(j));
        }
        return v;
    }

    std::string str() const
    {
        std::string s = "(";
        for (int j = 1; j <= rank_; ++j) {
            s += (j > 1 ? "," : "") + std::to_string((*this)(j));
        }
        return s + ")";
    }

    friend bool operator==(const SignTuple&, const SignTuple&) = default;
    friend std::strong_ordering operator<=>(const SignTuple& x, const SignTuple& y)
    {
        if (auto c = x.rank_ <=> y.rank_; c != 0) {
            return c;
        }
        return x.neg_ <=> y.neg_;
    }

    static std::vector<SignTuple> all(int rank)
    {
        std::vector<SignTuple> out;
        for (std::uint32_t m = 0; m < (1u << rank); ++m) {
            out.emplace_back(rank, m);
        }
        return out;
    }

private:
    int rank_ = 0;
    std::uint32_t neg_ = 0;
};

/// Finitely supported element of C{Q/2Q}; zero coefficients are never stored.
class GroupAlgElement {
public:
    GroupAlgElement() = default;
    explicit GroupAlgElement(int rank) : rank_(rank) {}

    static GroupAlgElement basis(int rank, Coset g, const Scalar& coeff = Scalar(1))
    {
        GroupAlgElement u(rank);
        u.add_term(g, coeff);
        return u;
    }

    int rank() const { return rank_; }
    const std::map<Coset, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(Coset g) const
    {
        auto it = terms_.find(g);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(Coset g, const Scalar& s)
    {
        if (s.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.emplace(g, s);
        if (!inserted) {
            it->second += s;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    /// Product in the commutative group algebra, e^a e^b = e^{a+b}.
    friend GroupAlgElement operator*(const GroupAlgElement& x, const GroupAlgElement& y)
    {
        GroupAlgElement r(x.rank_);
        for (const auto& [a, s] : x.terms_) {
            for (const auto& [b, t] : y.terms_) {
                r.add_term(a ^ b, s * t);
            }
        }
        return r;
    }
    friend GroupAlgElement operator+(GroupAlgElement x, const GroupAlgElement& y)
    {
        for (const auto& [g, s] : y.terms_) {
            x.add_term(g, s);
        }
        return x;
    }
    friend GroupAlgElement operator-(GroupAlgElement x, const GroupAlgElement& y)
    {
        for (const auto& [g, s] : y.terms_) {
            x.add_term(g, -s);
        }
        return x;
    }
    friend GroupAlgElement operator*(const Scalar& c, const GroupAlgElement& x)
    {
        GroupAlgElement r(x.rank_);
        for (const auto& [g, s] : x.terms_) {
            r.add_term(g, c * s);
        }
        return r;
    }
    friend bool operator==(const GroupAlgElement& x, const GroupAlgElement& y) { return x.terms_ == y.terms_; }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [g, c] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += "(" + c.str() + ")e^" + bits_str(g, rank_);
        }
        return s;
    }

    static std::string bits_str(Coset g, int rank)
    {
        std::string b;
        for (int j = 0; j < rank; ++j) {
            b += (g >> j) & 1u ? '1' : '0';
        }
        return b;
    }

private:
    int rank_ = 0;
    std::map<Coset, Scalar> terms_;
};

/// X-hat_alpha(e^gamma) = nu(alpha, gamma)/2 e^{alpha + gamma}.
inline GroupAlgElement xhat_apply(const RootLattice& L, Coset alpha, const GroupAlgElement& u)
{
    GroupAlgElement r(u.rank());
    const Rational half(1, 2);
    for (const auto& [g, s] : u.terms()) {
        Rational f = L.nu(alpha, g) == 1 ? half : -half;
        r.add_term(alpha ^ g, Scalar(f) * s);
    }
    return r;
}

inline GroupAlgElement xhat_apply(const RootLattice& L, const LatticeVector& alpha, const GroupAlgElement& u)
{
    return xhat_apply(L, alpha.coset(), u);
}

/// prod_{j in nodes} (1 + i c_j e^{alpha_j}), expanded.
inline GroupAlgElement partial_v(int rank, const SignTuple& c, std::uint32_t nodes)
{
    GroupAlgElement u = GroupAlgElement::basis(rank, 0);
    for (int j = 1; j <= rank; ++j) {
        if (!((nodes >> (j - 1)) & 1u)) {
            continue;
        }
        GroupAlgElement factor = GroupAlgElement::basis(rank, 0);
        factor.add_term(1u << (j - 1), Scalar(0, c(j), 0, 0));
        u = u * factor;
    }
    return u;
}

/// v(c) = prod_j (1 + i c_j e^{alpha_j}).
inline GroupAlgElement v_basis(const RootLattice& L, const SignTuple& c)
{
    return partial_v(L.rank(), c, (1u << L.rank()) - 1);
}

/// Dense coordinates indexed by coset bits.
inline std::vector<Scalar> dense_cosets(const GroupAlgElement& u)
{
    std::vector<Scalar> x(std::size_t{1} << u.rank());
    for (const auto& [g, s] : u.terms()) {
        x[g] = s;
    }
    return x;
}

/// In-place change from coset coordinates to v-basis coordinates (index = negative mask).
/// One node at a time: a e^0 + b e^a = (a - i b)/2 v(+) + (a + i b)/2 v(-).
inline void coset_to_v_inplace(std::vector<Scalar>& x, int rank)
{
    const Scalar half = Scalar::half();
    const Scalar i = Scalar::i();
    for (int j = 0; j < rank; ++j) {
        std::size_t bit = std::size_t{1} << j;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (k & bit) {
                continue;
            }
            Scalar a = x[k];
            Scalar b = x[k | bit];
            if (a.is_zero() && b.is_zero()) {
                continue;
            }
            Scalar ib = i * b;
            x[k] = half * (a - ib);
            x[k | bit] = half * (a + ib);
        }
    }
}

/// Inverse of coset_to_v_inplace: x(+) v(+) + x(-) v(-) = (x+ + x-) e^0 + i (x+ - x-) e^a.
inline void v_to_coset_inplace(std::vector<Scalar>& x, int rank)
{
    const Scalar i = Scalar::i();
    for (int j = 0; j < rank; ++j) {
        std::size_t bit = std::size_t{1} << j;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (k & bit) {
                continue;
            }
            Scalar p = x[k];
            Scalar m = x[k | bit];
            if (p.is_zero() && m.is_zero()) {
                continue;
            }
            x[k] = p + m;
            x[k | bit] = i * (p - m);
        }
    }
}

/// Coefficients x_c with u = sum_c x_c v(c); zero coefficients omitted.
inline std::map<SignTuple, Scalar> to_v_coords(const RootLattice& L, const GroupAlgElement& u)
{
    std::vector<Scalar> x = dense_cosets(u);
    if (static_cast<int>(x.size()) != (1 << L.rank())) {
        x.resize(std::size_t{1} << L.rank());
    }
    coset_to_v_inplace(x, L.rank());
    std::map<SignTuple, Scalar> out;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k].is_zero()) {
            out.emplace(SignTuple(L.rank(), static_cast<std::uint32_t>(k)), x[k]);
        }
    }
    return out;
}

inline GroupAlgElement from_v_coords(const RootLattice& L, const std::map<SignTuple, Scalar>& coords)
{
    std::vector<Scalar> x(std::size_t{1} << L.rank());
    for (const auto& [c, s] : coords) {
        x[c.neg_mask()] = s;
    }
    v_to_coset_inplace(x, L.rank());
    GroupAlgElement u(L.rank());
    for (std::size_t k = 0; k < x.size(); ++k) {
        u.add_term(static_cast<Coset>(k), x[k]);
    }
    return u;
}

/// X-hat_alpha v(c) = phase * v(target): the action is a signed permutation of the v-basis.
struct VImage {
    SignTuple target;
    Scalar phase;
};

/**
 * Structural form of the v-basis action. With s_l = nu(alpha, alpha_l), the
 * character nu(alpha, .) sends v(c) to v(c s); multiplying by e^{alpha_l}
 * gives i c_l v(c with c_l flipped), once per odd coefficient of alpha.
 */
inline VImage xhat_v_action(const RootLattice& L, Coset alpha, const SignTuple& c)
{
    int n = L.rank();
    std::uint32_t sflip = 0;
    for (int l = 1; l <= n; ++l) {
        if (L.nu(alpha, 1u << (l - 1)) == -1) {
            sflip |= 1u << (l - 1);
        }
    }
    SignTuple cp = c.flipped(sflip);
    // prod over odd(alpha) of (i c'_l) = i^k * prod c'_l
    int k = __builtin_popcount(alpha);
    int sign = cp.product(alpha);
    static const Scalar kIPow[4] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};
    Scalar phase = Scalar::half() * kIPow[k % 4];
    if (sign < 0) {
        phase = -phase;
    }
    return {cp.flipped(alpha), phase};
}

/// 2^n x 2^n matrix of X-hat_alpha in the coset basis (column g is the image of e^g).
inline Matrix xhat_matrix(const RootLattice& L, Coset alpha)
{
    std::size_t dim = std::size_t{1} << L.rank();
    Matrix m(dim, dim);
    for (std::size_t g = 0; g < dim; ++g) {
        int nu = L.nu(alpha, static_cast<Coset>(g));
        m(g ^ alpha, g) = Scalar(Rational(nu, 2));
    }
    return m;
}

/// 2^n x 2^n matrix of X-hat_alpha in the v-basis (column c is the image of v(c)).
inline Matrix xhat_v_matrix(const RootLattice& L, Coset alpha)
{
    std::size_t dim = std::size_t{1} << L.rank();
    Matrix m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        VImage im = xhat_v_action(L, alpha, SignTuple(L.rank(), static_cast<std::uint32_t>(c)));
        m(im.target.neg_mask(), c) = im.phase;
    }
    return m;
}

/// Rewrites a coset-basis matrix in the v-basis.
inline Matrix coset_to_v_matrix(const RootLattice& L, const Matrix& a)
{
    std::size_t dim = std::size_t{1} << L.rank();
    Matrix out(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<Scalar> col(dim);
        col[c] = Scalar(1);
        v_to_coset_inplace(col, L.rank());
        std::vector<Scalar> img(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                if (!col[k].is_zero() && !a(i, k).is_zero()) {
                    img[i] += a(i, k) * col[k];
                }
            }
        }
        coset_to_v_inplace(img, L.rank());
        for (std::size_t i = 0; i < dim; ++i) {
            out(i, c) = img[i];
        }
    }
    return out;
}

}  // namespace tvo
