#pragma once

#include "tvo/groupalg.hpp"
#include "tvo/lattice.hpp"
#include "tvo/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace tvo {

/**
 * A monomial in the creation generators b_{(j,r)} = a_{-r}(h_j) 1, r odd.
 *
 * Generators are indexed by simple roots h_j = alpha_j rather than an
 * orthonormal frame, so every contraction (h_j|h_k) is a Cartan matrix
 * entry. Factors are kept sorted by (r, j) and packed one byte each,
 * first factor in the most significant byte, so integer order is
 * lexicographic order on the factor list.
 */
class FockMonomial {
public:
    static constexpr int kMaxFactors = 16;
    static constexpr int kMaxMode = 31;
    static constexpr int kMaxIndex = 15;

    FockMonomial() = default;

    static FockMonomial from_factors(std::vector<std::pair<int, int>> factors)
    {
        std::array<std::uint8_t, kMaxFactors> codes{};
        if (factors.size() > static_cast<std::size_t>(kMaxFactors)) {
            throw std::length_error("too many Fock factors");
        }
        int n = 0;
        for (auto [j, r] : factors) {
            codes[static_cast<std::size_t>(n++)] = code(j, r);
        }
        std::sort(codes.begin(), codes.begin() + n);
        return pack(codes, n);
    }

    static FockMonomial generator(int j, int r) { return from_factors({{j, r}}); }

    static std::uint8_t code(int j, int r)
    {
        if (r <= 0 || r % 2 == 0 || r > kMaxMode) {
            throw std::invalid_argument("Fock generator needs an odd positive mode up to 31");
        }
        if (j < 1 || j > kMaxIndex) {
            throw std::invalid_argument("Fock generator index out of range");
        }
        return static_cast<std::uint8_t>(((r - 1) / 2) << 4 | j);
    }
    static int code_index(std::uint8_t c) { return c & 0xf; }
    static int code_mode(std::uint8_t c) { return 2 * (c >> 4) + 1; }

    int length() const
    {
        int n = 0;
        while (n < kMaxFactors && byte(n) != 0) {
            ++n;
        }
        return n;
    }

    int degree() const
    {
        int d = 0;
        for (int t = 0; t < kMaxFactors && byte(t) != 0; ++t) {
            d += code_mode(byte(t));
        }
        return d;
    }

    std::uint8_t byte(int t) const { return static_cast<std::uint8_t>(bits_ >> (8 * (kMaxFactors - 1 - t))); }

    /// (j, r) pairs in canonical order.
    std::vector<std::pair<int, int>> factors() const
    {
        std::vector<std::pair<int, int>> out;
        for (int t = 0; t < kMaxFactors && byte(t) != 0; ++t) {
            out.emplace_back(code_index(byte(t)), code_mode(byte(t)));
        }
        return out;
    }

    int multiplicity(int j, int r) const
    {
        std::uint8_t c = code(j, r);
        int e = 0;
        for (int t = 0; t < kMaxFactors && byte(t) != 0; ++t) {
            e += byte(t) == c;
        }
        return e;
    }

    friend FockMonomial operator*(const FockMonomial& x, const FockMonomial& y)
    {
        if (y.bits_ == 0) {
            return x;
        }
        if (x.bits_ == 0) {
            return y;
        }
        auto xb = x.unpack();
        auto yb = y.unpack();
        std::array<std::uint8_t, kMaxFactors> codes{};
        std::size_t a = 0;
        std::size_t b = 0;
        std::size_t n = 0;
        while (xb[a] != 0 || yb[b] != 0) {
            if (n == static_cast<std::size_t>(kMaxFactors)) {
                throw std::length_error("too many Fock factors");
            }
            if (yb[b] == 0 || (xb[a] != 0 && xb[a] <= yb[b])) {
                codes[n++] = xb[a++];
            } else {
                codes[n++] = yb[b++];
            }
        }
        return pack(codes, static_cast<int>(n));
    }

    /// Removes `count` copies of the generator with this code; the caller guarantees they exist.
    FockMonomial without(std::uint8_t c, int count) const
    {
        std::array<std::uint8_t, kMaxFactors> codes{};
        int n = 0;
        for (int t = 0; t < kMaxFactors && byte(t) != 0; ++t) {
            if (byte(t) == c && count > 0) {
                --count;
                continue;
            }
            codes[static_cast<std::size_t>(n++)] = byte(t);
        }
        return pack(codes, n);
    }

    bool is_one() const { return bits_ == 0; }

    std::string str() const
    {
        std::string s = "[";
        bool first = true;
        for (auto [j, r] : factors()) {
            s += first ? "" : ",";
            s += "(" + std::to_string(j) + "," + std::to_string(r) + ")";
            first = false;
        }
        return s + "]";
    }

    friend bool operator==(const FockMonomial& x, const FockMonomial& y) { return x.bits_ == y.bits_; }
    friend std::strong_ordering operator<=>(const FockMonomial& x, const FockMonomial& y)
    {
        return x.bits_ <=> y.bits_;
    }

    std::size_t hash() const
    {
        auto lo = static_cast<std::uint64_t>(bits_);
        auto hi = static_cast<std::uint64_t>(bits_ >> 64);
        std::uint64_t h = lo ^ (hi * 0x9e3779b97f4a7c15ULL);
        h ^= h >> 30;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
        h *= 0x94d049bb133111ebULL;
        h ^= h >> 31;
        return static_cast<std::size_t>(h);
    }

private:
    // factor bytes followed by a zero sentinel
    std::array<std::uint8_t, kMaxFactors + 1> unpack() const
    {
        std::array<std::uint8_t, kMaxFactors + 1> out{};
        for (int t = 0; t < kMaxFactors; ++t) {
            out[static_cast<std::size_t>(t)] = byte(t);
        }
        return out;
    }

    static FockMonomial pack(const std::array<std::uint8_t, kMaxFactors>& codes, int n)
    {
        FockMonomial m;
        for (int t = 0; t < n; ++t) {
            m.bits_ |= static_cast<unsigned __int128>(codes[static_cast<std::size_t>(t)]) << (8 * (kMaxFactors - 1 - t));
        }
        return m;
    }

    unsigned __int128 bits_ = 0;
};

struct FockMonomialHash {
    std::size_t operator()(const FockMonomial& m) const { return m.hash(); }
};

/// An element of V = C{Q/2Q} (x) Fock as a finite Scalar combination of (coset, monomial) pairs.
class StateVector {
public:
    using Key = std::pair<Coset, FockMonomial>;

    explicit StateVector(int rank) : rank_(rank) {}

    static StateVector basis(int rank, Coset g, const FockMonomial& m = {}, const Scalar& coeff = Scalar(1))
    {
        StateVector s(rank);
        s.add_term(g, m, coeff);
        return s;
    }

    /// u (x) 1
    static StateVector from_group_alg(const GroupAlgElement& u)
    {
        StateVector s(u.rank());
        for (const auto& [g, c] : u.terms()) {
            s.add_term(g, FockMonomial(), c);
        }
        return s;
    }

    int rank() const { return rank_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Coset g, const FockMonomial& m, const Scalar& c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{g, m}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    Scalar coeff(Coset g, const FockMonomial& m) const
    {
        auto it = terms_.find(Key{g, m});
        return it == terms_.end() ? Scalar() : it->second;
    }

    friend StateVector operator+(StateVector x, const StateVector& y)
    {
        for (const auto& [k, c] : y.terms_) {
            x.add_term(k.first, k.second, c);
        }
        return x;
    }
    friend StateVector operator-(StateVector x, const StateVector& y)
    {
        for (const auto& [k, c] : y.terms_) {
            x.add_term(k.first, k.second, -c);
        }
        return x;
    }
    friend StateVector operator*(const Scalar& c, const StateVector& x)
    {
        StateVector out(x.rank_);
        if (c.is_zero()) {
            return out;
        }
        for (const auto& [k, s] : x.terms_) {
            out.terms_.emplace(k, c * s);
        }
        return out;
    }
    friend bool operator==(const StateVector& x, const StateVector& y) { return x.terms_ == y.terms_; }

    /// Degrees of monomials present (sorted, unique).
    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [k, c] : terms_) {
            out.push_back(k.second.degree());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Terms rendered as "(coset bits | [(j,r),...]) coeff" joined by "; ".
    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) {
                s += "; ";
            }
            s += "(" + GroupAlgElement::bits_str(k.first, rank_) + " | " + k.second.str() + ") " + c.str();
        }
        return s;
    }

private:
    int rank_;
    std::map<Key, Scalar> terms_;
};

/// Rational polynomial in the rescaled generators y~ = sqrt2 * a_{-r}(h_j) 1.
using RPoly = std::vector<std::pair<FockMonomial, Rational>>;

namespace detail {

/// Append-only accumulator; like terms are merged by sorting, periodically to bound memory.
class RPolyAccum {
public:
    void add(const FockMonomial& m, const Rational& c)
    {
        if (c.is_zero()) {
            return;
        }
        terms_.emplace_back(m, c);
        if (terms_.size() >= next_compact_) {
            compact();
            next_compact_ = std::max<std::size_t>(kMinCompact, 2 * terms_.size());
        }
    }

    /// Sorted, merged, zero-free terms; leaves the accumulator empty.
    RPoly take()
    {
        compact();
        next_compact_ = kMinCompact;
        return std::move(terms_);
    }

    bool is_zero()
    {
        compact();
        return terms_.empty();
    }

private:
    static constexpr std::size_t kMinCompact = 1 << 16;

    void compact()
    {
        std::sort(terms_.begin(), terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::size_t out = 0;
        for (std::size_t t = 0; t < terms_.size();) {
            std::size_t u = t + 1;
            Rational c = std::move(terms_[t].second);
            while (u < terms_.size() && terms_[u].first == terms_[t].first) {
                c += terms_[u].second;
                ++u;
            }
            if (!c.is_zero()) {
                terms_[out].first = terms_[t].first;
                terms_[out].second = std::move(c);
                ++out;
            }
            t = u;
        }
        terms_.resize(out);
    }

    RPoly terms_;
    std::size_t next_compact_ = kMinCompact;
};

inline void accumulate(RPolyAccum& acc, const FockMonomial& m, const Rational& c) { acc.add(m, c); }

inline RPoly finish(RPolyAccum& acc) { return acc.take(); }

// sqrt2^e as a Scalar, e of either sign.
inline Scalar sqrt2_power(int e)
{
    Scalar out(1);
    Scalar step = e >= 0 ? Scalar::sqrt2() : Scalar::half() * Scalar::sqrt2();
    for (int t = 0; t < std::abs(e); ++t) {
        out *= step;
    }
    return out;
}

}  // namespace detail

/**
 * Exact mode extraction for Gamma_alpha(z) = sum_m Gamma_{alpha,m} z^{-m}.
 *
 * In y~ coordinates U_alpha^+(z) is the shift y~_{(k,r)} -> y~_{(k,r)} - 2(alpha|alpha_k) z^{-r}
 * and U_alpha^-(z) multiplies by sum_p E_p z^p with p E_p = sum_{r odd} a~_{-r}(alpha) E_{p-r},
 * a~_{-r}(alpha) = sum_k alpha_k y~_{(k,r)}. All coefficients stay rational.
 *
 * Results of U_{alpha,m} on single monomials are cached when caching is on.
 */
class FockEngine {
public:
    explicit FockEngine(const RootLattice& L, bool cache_monomials = true) : L_(L), cache_(cache_monomials) {}

    const RootLattice& lattice() const { return L_; }

    /// Coefficient of z^{-m} in U_alpha(z) applied to the y~ monomial `mono`.
    const RPoly& u_mode_rescaled(const LatticeVector& alpha, int m, const FockMonomial& mono)
    {
        AlphaData& ad = data(alpha);
        auto key = std::make_pair(m, mono);
        if (cache_) {
            auto it = ad.ucache.find(key);
            if (it != ad.ucache.end()) {
                return it->second;
            }
        }
        detail::RPolyAccum acc;
        for_each_annihilation(ad, mono, [&](int shift, const Rational& c, const FockMonomial& rest) {
            int p = shift - m;
            if (p < 0) {
                return;
            }
            for (const auto& [em, ec] : creation(ad, p)) {
                detail::accumulate(acc, em * rest, ec * c);
            }
        });
        RPoly out = detail::finish(acc);
        if (!cache_) {
            scratch_ = std::move(out);
            return scratch_;
        }
        return ad.ucache.emplace(key, std::move(out)).first->second;
    }

    /**
     * U_{alpha,m} V for every m in [mlo, mhi], V a y~ polynomial, out[m - mlo].
     * Annihilation results are pooled by remainder before creation parts are multiplied in.
     */
    std::vector<RPoly> u_modes(const LatticeVector& alpha, const RPoly& V, int mlo, int mhi)
    {
        AlphaData& ad = data(alpha);
        std::map<int, detail::RPolyAccum> pooled;
        for (const auto& [mono, c] : V) {
            for_each_annihilation(ad, mono, [&](int shift, const Rational& cc, const FockMonomial& rest) {
                if (shift >= mlo) {
                    detail::accumulate(pooled[shift], rest, cc * c);
                }
            });
        }
        std::map<int, RPoly> merged;
        for (auto& [shift, acc] : pooled) {
            merged.emplace(shift, detail::finish(acc));
        }
        std::vector<RPoly> out;
        for (int m = mlo; m <= mhi; ++m) {
            detail::RPolyAccum acc;
            for (const auto& [shift, rests] : merged) {
                if (shift < m) {
                    continue;
                }
                const RPoly& e = creation(ad, shift - m);
                for (const auto& [rm, rc] : rests) {
                    if (rc.is_zero()) {
                        continue;
                    }
                    for (const auto& [em, ec] : e) {
                        detail::accumulate(acc, em * rm, ec * rc);
                    }
                }
            }
            out.push_back(detail::finish(acc));
        }
        return out;
    }

    /// sqrt2 a_r(h) in y~ coordinates: multiplication by sum h_k y~_{(k,-r)} for r < 0,
    /// 2r sum_k (h|alpha_k) d/dy~_{(k,r)} for r > 0. Odd r only.
    RPoly a_mode_rescaled(const LatticeVector& h, int r, const RPoly& V) const
    {
        if (r % 2 == 0) {
            throw std::invalid_argument("a_mode needs odd r");
        }
        detail::RPolyAccum acc;
        int n = L_.rank();
        if (r < 0) {
            for (int k = 1; k <= n; ++k) {
                if (h(k) == 0) {
                    continue;
                }
                FockMonomial y = FockMonomial::generator(k, -r);
                for (const auto& [mono, c] : V) {
                    detail::accumulate(acc, mono * y, Rational(h(k)) * c);
                }
            }
        } else {
            auto pairing = L_.pairings(h);
            for (int k = 1; k <= n; ++k) {
                int w = pairing[static_cast<std::size_t>(k - 1)];
                if (w == 0) {
                    continue;
                }
                std::uint8_t code = FockMonomial::code(k, r);
                for (const auto& [mono, c] : V) {
                    int mult = mono.multiplicity(k, r);
                    if (mult > 0) {
                        detail::accumulate(acc, mono.without(code, 1), Rational(2 * r * w * mult) * c);
                    }
                }
            }
        }
        return detail::finish(acc);
    }

    /// Gamma_{alpha,m} s.
    StateVector gamma_mode(const LatticeVector& alpha, int m, const StateVector& s)
    {
        if (L_.inner(alpha, alpha) != 2) {
            throw std::invalid_argument("gamma_mode needs a root");
        }
        StateVector out(s.rank());
        Coset a = alpha.coset();
        // group lattice parts by Fock monomial
        std::map<FockMonomial, std::vector<std::pair<Coset, Scalar>>> groups;
        for (const auto& [k, c] : s.terms()) {
            groups[k.second].emplace_back(k.first, c);
        }
        for (const auto& [mono, parts] : groups) {
            const RPoly& image = u_mode_rescaled(alpha, m, mono);
            if (image.empty()) {
                continue;
            }
            int len = mono.length();
            std::vector<std::pair<Coset, Scalar>> lattice_part;
            for (const auto& [g, c] : parts) {
                lattice_part.emplace_back(a ^ g, Scalar(Rational(L_.nu(a, g), 2)) * c);
            }
            for (const auto& [om, oc] : image) {
                Scalar f = detail::sqrt2_power(om.length() - len) * Scalar(oc);
                for (const auto& [g, c] : lattice_part) {
                    out.add_term(g, om, f * c);
                }
            }
        }
        return out;
    }

    /**
     * Coefficient of z^{-m} w^{-k} in the jointly normal-ordered
     * U_{lambda;mu}(z,w) with lambda = sqrt2 alpha, mu = sqrt2 beta, carrying the
     * lattice factor 1/4 nu(alpha,beta) nu(alpha+beta,gamma) e^{alpha+beta+gamma}.
     */
    StateVector u_pair_mode(const LatticeVector& alpha, const LatticeVector& beta, int m, int k, const StateVector& s)
    {
        if (L_.inner(alpha, alpha) != 2 || L_.inner(beta, beta) != 2) {
            throw std::invalid_argument("u_pair_mode needs roots");
        }
        AlphaData& ad = data(alpha);
        AlphaData& bd = data(beta);
        Coset a = alpha.coset();
        Coset b = beta.coset();
        StateVector out(s.rank());
        std::map<FockMonomial, RPoly> images;
        for (const auto& [key, c] : s.terms()) {
            const FockMonomial& mono = key.second;
            auto it = images.find(mono);
            if (it == images.end()) {
                detail::RPolyAccum acc;
                for_each_annihilation(ad, mono, [&](int sz, const Rational& cz, const FockMonomial& rz) {
                    for_each_annihilation(bd, rz, [&](int sw, const Rational& cw, const FockMonomial& rest) {
                        int p = sz - m;
                        int q = sw - k;
                        if (p < 0 || q < 0) {
                            return;
                        }
                        const RPoly& ea = creation(ad, p);
                        const RPoly& eb = creation(bd, q);
                        for (const auto& [am, ac] : ea) {
                            for (const auto& [bm, bc] : eb) {
                                detail::accumulate(acc, am * bm * rest, ac * bc * cz * cw);
                            }
                        }
                    });
                });
                it = images.emplace(mono, detail::finish(acc)).first;
            }
            Coset g = key.first;
            Scalar lat = Scalar(Rational(L_.nu(a, b) * L_.nu(a ^ b, g), 4)) * c;
            int len = mono.length();
            for (const auto& [om, oc] : it->second) {
                out.add_term(a ^ b ^ g, om, detail::sqrt2_power(om.length() - len) * Scalar(oc) * lat);
            }
        }
        return out;
    }

    std::size_t cached_entries() const
    {
        std::size_t n = 0;
        for (const auto& [k, ad] : alphas_) {
            n += ad.ucache.size();
        }
        return n;
    }
    void clear_cache()
    {
        for (auto& [k, ad] : alphas_) {
            ad.ucache.clear();
        }
    }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<int, FockMonomial>& p) const
        {
            return p.second.hash() ^ (static_cast<std::size_t>(p.first + 1024) * 0x100000001b3ULL);
        }
    };
    struct AlphaData {
        LatticeVector alpha;
        std::vector<int> pairing;  // (alpha|alpha_k), k = 1..n
        std::vector<RPoly> creation;
        std::unordered_map<std::pair<int, FockMonomial>, RPoly, PairHash> ucache;
    };

    AlphaData& data(const LatticeVector& alpha)
    {
        auto it = alphas_.find(alpha);
        if (it != alphas_.end()) {
            return it->second;
        }
        AlphaData ad;
        ad.alpha = alpha;
        ad.pairing = L_.pairings(alpha);
        ad.creation.push_back({{FockMonomial(), Rational(1)}});
        return alphas_.emplace(alpha, std::move(ad)).first->second;
    }

    const RPoly& creation(AlphaData& ad, int p)
    {
        while (static_cast<int>(ad.creation.size()) <= p) {
            int q = static_cast<int>(ad.creation.size());
            detail::RPolyAccum acc;
            for (int r = 1; r <= q; r += 2) {
                for (int k = 1; k <= L_.rank(); ++k) {
                    int coef = ad.alpha(k);
                    if (coef == 0) {
                        continue;
                    }
                    FockMonomial y = FockMonomial::generator(k, r);
                    Rational c(coef, q);
                    for (const auto& [m, e] : ad.creation[static_cast<std::size_t>(q - r)]) {
                        detail::accumulate(acc, m * y, c * e);
                    }
                }
            }
            ad.creation.push_back(detail::finish(acc));
        }
        return ad.creation[static_cast<std::size_t>(p)];
    }

    /// Calls f(total mode removed, coefficient, remaining monomial) for every way to
    /// contract factors of `mono` against U_alpha^+, grouping repeated factors with binomials.
    template <class F>
    void for_each_annihilation(const AlphaData& ad, const FockMonomial& mono, F&& f)
    {
        struct Group {
            std::uint8_t code;
            int mult;
            int mode;
            int weight;  // -2 (alpha|alpha_j)
        };
        std::vector<Group> groups;
        for (int t = 0; t < FockMonomial::kMaxFactors && mono.byte(t) != 0; ++t) {
            std::uint8_t c = mono.byte(t);
            if (!groups.empty() && groups.back().code == c) {
                ++groups.back().mult;
                continue;
            }
            int j = FockMonomial::code_index(c);
            groups.push_back({c, 1, FockMonomial::code_mode(c), -2 * ad.pairing[static_cast<std::size_t>(j - 1)]});
        }
        std::vector<int> take(groups.size(), 0);
        // odometer over take[g] in [0, mult] (only 0 when weight vanishes)
        while (true) {
            int shift = 0;
            Rational c(1);
            FockMonomial rest = mono;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (take[g] == 0) {
                    continue;
                }
                shift += take[g] * groups[g].mode;
                Rational w(1);
                for (int s = 0; s < take[g]; ++s) {
                    w *= Rational(groups[g].weight);
                }
                c *= binomial(groups[g].mult, take[g]) * w;
                rest = rest.without(groups[g].code, take[g]);
            }
            f(shift, c, rest);
            std::size_t g = 0;
            while (g < groups.size()) {
                int cap = groups[g].weight == 0 ? 0 : groups[g].mult;
                if (take[g] < cap) {
                    ++take[g];
                    break;
                }
                take[g] = 0;
                ++g;
            }
            if (g == groups.size()) {
                break;
            }
        }
    }

    static Rational binomial(int n, int t)
    {
        Rational out(1);
        for (int s = 0; s < t; ++s) {
            out *= Rational(n - s, s + 1);
        }
        return out;
    }

    RootLattice L_;
    bool cache_;
    std::map<LatticeVector, AlphaData> alphas_;
    RPoly scratch_;
};

/// a_r(h) s for odd r: creation for r < 0, the contraction r (h|h_k) d/dy_{(k,r)} for r > 0.
inline StateVector a_mode(const RootLattice& L, const LatticeVector& h, int r, const StateVector& s)
{
    if (r % 2 == 0) {
        throw std::invalid_argument("twisted Heisenberg modes are odd");
    }
    StateVector out(s.rank());
    int n = L.rank();
    if (r < 0) {
        for (const auto& [key, c] : s.terms()) {
            for (int k = 1; k <= n; ++k) {
                if (h(k) != 0) {
                    out.add_term(key.first, key.second * FockMonomial::generator(k, -r), Scalar(h(k)) * c);
                }
            }
        }
        return out;
    }
    std::vector<int> pair = L.pairings(h);
    for (const auto& [key, c] : s.terms()) {
        for (int k = 1; k <= n; ++k) {
            int e = key.second.multiplicity(k, r);
            if (e == 0 || pair[static_cast<std::size_t>(k - 1)] == 0) {
                continue;
            }
            out.add_term(key.first, key.second.without(FockMonomial::code(k, r), 1),
                         Scalar(r * pair[static_cast<std::size_t>(k - 1)] * e) * c);
        }
    }
    return out;
}

/// L_0 = sum r x_r d/dx_r: scales each term by its degree.
inline StateVector l0(const StateVector& s)
{
    StateVector out(s.rank());
    for (const auto& [key, c] : s.terms()) {
        out.add_term(key.first, key.second, Scalar(key.second.degree()) * c);
    }
    return out;
}

inline StateVector gamma_mode(const RootLattice& L, const LatticeVector& alpha, int m, const StateVector& s)
{
    FockEngine engine(L, false);
    return engine.gamma_mode(alpha, m, s);
}

inline StateVector u_pair_mode(const RootLattice& L, const LatticeVector& alpha, const LatticeVector& beta, int m,
                               int k, const StateVector& s)
{
    FockEngine engine(L, false);
    return engine.u_pair_mode(alpha, beta, m, k, s);
}

struct HeisenbergMode {
    LatticeVector h;
    int r;
};
struct GammaMode {
    LatticeVector alpha;
    int m;
};
struct L0Op {};
struct IdentityOp {};

/// One mode operator on V. K acts as the identity.
using ModeOp = std::variant<HeisenbergMode, GammaMode, L0Op, IdentityOp>;

inline StateVector apply_mode(FockEngine& engine, const ModeOp& op, const StateVector& s)
{
    const RootLattice& L = engine.lattice();
    return std::visit(
        [&](const auto& o) -> StateVector {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, HeisenbergMode>) {
                return a_mode(L, o.h, o.r, s);
            } else if constexpr (std::is_same_v<T, GammaMode>) {
                return engine.gamma_mode(o.alpha, o.m, s);
            } else if constexpr (std::is_same_v<T, L0Op>) {
                return l0(s);
            } else {
                return s;
            }
        },
        op);
}

}  // namespace tvo
