#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvo {

enum class Series { A, D, E };

struct AlgebraKind {
    Series series = Series::A;
    int rank = 1;

    AlgebraKind() = default;
    AlgebraKind(Series s, int n) : series(s), rank(n) { validate(); }

    void validate() const
    {
        bool ok = false;
        switch (series) {
        case Series::A: ok = rank >= 1 && rank <= 16; break;
        case Series::D: ok = rank >= 3 && rank <= 16; break;
        case Series::E: ok = rank >= 6 && rank <= 8; break;
        }
        if (!ok) {
            throw std::invalid_argument("unsupported algebra " + name());
        }
    }

    std::string name() const
    {
        const char* s = series == Series::A ? "A" : series == Series::D ? "D" : "E";
        return s + std::to_string(rank);
    }

    /// Parses names like "D4", "e8", "A_3".
    static AlgebraKind parse(const std::string& text)
    {
        if (text.empty()) {
            throw std::invalid_argument("empty algebra name");
        }
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        Series s;
        if (c == 'A') {
            s = Series::A;
        } else if (c == 'D') {
            s = Series::D;
        } else if (c == 'E') {
            s = Series::E;
        } else {
            throw std::invalid_argument("unknown series in '" + text + "'");
        }
        std::string digits = text.substr(1);
        if (!digits.empty() && digits[0] == '_') {
            digits = digits.substr(1);
        }
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3) {
            throw std::invalid_argument("bad rank in '" + text + "'");
        }
        return AlgebraKind(s, std::stoi(digits));
    }

    friend bool operator==(const AlgebraKind&, const AlgebraKind&) = default;
};

/// Integer vector in the simple-root basis; entry j-1 is the coefficient of alpha_j.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(int rank) : c_(static_cast<std::size_t>(rank), 0) {}
    LatticeVector(std::initializer_list<int> coeffs) : c_(coeffs) {}
    explicit LatticeVector(std::vector<int> coeffs) : c_(std::move(coeffs)) {}

    static LatticeVector simple(int rank, int j)
    {
        LatticeVector v(rank);
        v.c_.at(static_cast<std::size_t>(j - 1)) = 1;
        return v;
    }

    int rank() const { return static_cast<int>(c_.size()); }
    /// 1-based coefficient access.
    int operator()(int j) const { return c_[static_cast<std::size_t>(j - 1)]; }
    int& operator()(int j) { return c_[static_cast<std::size_t>(j - 1)]; }
    const std::vector<int>& coeffs() const { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
    }

    /// Reduction mod 2Q: bit j-1 set iff the alpha_j coefficient is odd.
    std::uint32_t coset() const
    {
        std::uint32_t bits = 0;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] & 1) {
                bits |= 1u << j;
            }
        }
        return bits;
    }

    friend LatticeVector operator+(const LatticeVector& x, const LatticeVector& y)
    {
        check_same(x, y);
        LatticeVector r(x);
        for (std::size_t j = 0; j < r.c_.size(); ++j) {
            r.c_[j] += y.c_[j];
        }
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& x)
    {
        LatticeVector r(x);
        for (int& v : r.c_) {
            v = -v;
        }
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& x, const LatticeVector& y) { return x + (-y); }
    friend LatticeVector operator*(int s, const LatticeVector& x)
    {
        LatticeVector r(x);
        for (int& v : r.c_) {
            v *= s;
        }
        return r;
    }

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t j = 0; j < c_.size(); ++j) {
            s += (j ? "," : "") + std::to_string(c_[j]);
        }
        return s + ")";
    }

private:
    std::vector<int> c_;

    static void check_same(const LatticeVector& x, const LatticeVector& y)
    {
        if (x.c_.size() != y.c_.size()) {
            throw std::invalid_argument("lattice vectors of different rank");
        }
    }
};

/// Directed Dynkin edges (from, to), 1-based: arrow alpha_from -> alpha_to.
struct Orientation {
    std::vector<std::pair<int, int>> arrows;

    /// Reads lines "j k"; '#' starts a comment.
    static Orientation parse(std::istream& in)
    {
        Orientation o;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            int j = 0;
            int k = 0;
            if (!(ls >> j)) {
                continue;
            }
            std::string rest;
            if (!(ls >> k) || (ls >> rest)) {
                throw std::invalid_argument("orientation line " + std::to_string(lineno) + ": expected 'j k'");
            }
            o.arrows.emplace_back(j, k);
        }
        return o;
    }

    static Orientation load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("cannot open orientation file " + path);
        }
        return parse(in);
    }
};

/// Undirected Dynkin edges {j,k}, j < k, in the numbering of the figures.
inline std::vector<std::pair<int, int>> dynkin_edges(const AlgebraKind& kind)
{
    int n = kind.rank;
    std::vector<std::pair<int, int>> e;
    switch (kind.series) {
    case Series::A:
        for (int j = 1; j < n; ++j) {
            e.emplace_back(j, j + 1);
        }
        break;
    case Series::D:
        for (int j = 1; j < n - 1; ++j) {
            e.emplace_back(j, j + 1);
        }
        e.emplace_back(n - 2, n);
        break;
    case Series::E: {
        for (int j = 1; j < n - 1; ++j) {
            e.emplace_back(j, j + 1);
        }
        int fork = n == 8 ? 5 : 3;
        e.emplace_back(fork, n);
        break;
    }
    }
    return e;
}

/// Orientation drawn in the figures for each series.
inline Orientation default_orientation(const AlgebraKind& kind)
{
    int n = kind.rank;
    Orientation o;
    auto chain = [&](int j, int k) {
        // odd node -> even node along the chain
        if (j % 2 == 1) {
            o.arrows.emplace_back(j, k);
        } else {
            o.arrows.emplace_back(k, j);
        }
    };
    switch (kind.series) {
    case Series::A:
        for (int j = 1; j < n; ++j) {
            chain(j, j + 1);
        }
        break;
    case Series::D:
        for (int j = 1; j < n - 1; ++j) {
            chain(j, j + 1);
        }
        if (n % 2 == 0) {
            o.arrows.emplace_back(n, n - 2);
        } else {
            o.arrows.emplace_back(n - 2, n);
        }
        break;
    case Series::E:
        // sources are the even chain nodes and the branch node
        for (int j = 1; j < n - 1; ++j) {
            if (j % 2 == 0) {
                o.arrows.emplace_back(j, j + 1);
            } else {
                o.arrows.emplace_back(j + 1, j);
            }
        }
        o.arrows.emplace_back(n, n == 8 ? 5 : 3);
        break;
    }
    return o;
}

class RootLattice {
public:
    static RootLattice build(const AlgebraKind& kind, const std::optional<Orientation>& orientation = std::nullopt)
    {
        kind.validate();
        RootLattice L;
        L.kind_ = kind;
        int n = kind.rank;
        L.cartan_.assign(static_cast<std::size_t>(n * n), 0);
        L.nu_.assign(static_cast<std::size_t>(n * n), 1);
        for (int j = 1; j <= n; ++j) {
            L.at(L.cartan_, j, j) = 2;
            L.at(L.nu_, j, j) = -1;
        }
        auto edges = dynkin_edges(kind);
        for (auto [j, k] : edges) {
            L.at(L.cartan_, j, k) = -1;
            L.at(L.cartan_, k, j) = -1;
        }
        L.orientation_ = orientation ? *orientation : default_orientation(kind);
        std::set<std::pair<int, int>> pending(edges.begin(), edges.end());
        for (auto [a, b] : L.orientation_.arrows) {
            if (a < 1 || b < 1 || a > n || b > n) {
                throw std::invalid_argument("orientation arrow out of range");
            }
            auto key = std::minmax(a, b);
            if (pending.erase({key.first, key.second}) == 0) {
                throw std::invalid_argument("orientation arrow " + std::to_string(a) + "->" + std::to_string(b)
                                            + " is not an undirected edge of " + kind.name()
                                            + " or is repeated");
            }
            L.at(L.nu_, a, b) = 1;
            L.at(L.nu_, b, a) = -1;
        }
        if (!pending.empty()) {
            throw std::invalid_argument("orientation does not cover every edge of " + kind.name());
        }
        L.nu_masks_.assign(static_cast<std::size_t>(n), 0);
        for (int j = 1; j <= n; ++j) {
            for (int l = 1; l <= n; ++l) {
                if (L.at(L.nu_, j, l) == -1) {
                    L.nu_masks_[static_cast<std::size_t>(j - 1)] |= 1u << (l - 1);
                }
            }
        }
        L.enumerate_roots();
        return L;
    }

    const AlgebraKind& kind() const { return kind_; }
    int rank() const { return kind_.rank; }
    const Orientation& orientation() const { return orientation_; }
    bool has_default_orientation() const
    {
        auto a = orientation_.arrows;
        auto b = default_orientation(kind_).arrows;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
    int cartan(int j, int k) const { return at(cartan_, j, k); }
    int nu_entry(int j, int k) const { return at(nu_, j, k); }

    LatticeVector simple_root(int j) const { return LatticeVector::simple(rank(), j); }

    int inner(const LatticeVector& x, const LatticeVector& y) const
    {
        int n = rank();
        int s = 0;
        for (int j = 1; j <= n; ++j) {
            if (x(j) == 0) {
                continue;
            }
            for (int k = 1; k <= n; ++k) {
                s += x(j) * cartan(j, k) * y(k);
            }
        }
        return s;
    }

    /// (h | alpha_j) for each j: the Cartan matrix applied to h.
    std::vector<int> pairings(const LatticeVector& h) const
    {
        std::vector<int> out(static_cast<std::size_t>(rank()), 0);
        for (int j = 1; j <= rank(); ++j) {
            out[static_cast<std::size_t>(j - 1)] = inner(h, simple_root(j));
        }
        return out;
    }

    int nu(std::uint32_t a, std::uint32_t b) const
    {
        int parity = 0;
        for (int j = 0; j < rank(); ++j) {
            if (a & (1u << j)) {
                parity ^= __builtin_popcount(nu_masks_[static_cast<std::size_t>(j)] & b) & 1;
            }
        }
        return parity ? -1 : 1;
    }

    int nu(const LatticeVector& a, const LatticeVector& b) const { return nu(a.coset(), b.coset()); }

    /// All roots, sorted.
    const std::vector<LatticeVector>& roots() const { return roots_; }

    std::vector<LatticeVector> positive_roots() const
    {
        std::vector<LatticeVector> out;
        for (const auto& r : roots_) {
            if (std::all_of(r.coeffs().begin(), r.coeffs().end(), [](int x) { return x >= 0; })) {
                out.push_back(r);
            }
        }
        return out;
    }

    bool is_root(const LatticeVector& v) const { return std::binary_search(roots_.begin(), roots_.end(), v); }

    /// epsilon_j + sign * epsilon_k for D_n, 1 <= j < k <= n.
    LatticeVector epsilon_root(int j, int k, int sign) const
    {
        if (kind_.series != Series::D) {
            throw std::invalid_argument("epsilon coordinates need a D lattice");
        }
        int n = rank();
        if (j < 1 || j >= k || k > n || (sign != 1 && sign != -1)) {
            throw std::invalid_argument("epsilon_root needs 1 <= j < k <= n and sign = +-1");
        }
        LatticeVector v(n);
        if (sign < 0) {
            for (int l = j; l < k; ++l) {
                v(l) += 1;
            }
            return v;
        }
        if (k == n) {
            for (int l = j; l <= n - 2; ++l) {
                v(l) += 1;
            }
            v(n) += 1;
            return v;
        }
        // (eps_j - eps_n) + (eps_k + eps_n)
        for (int l = j; l < n; ++l) {
            v(l) += 1;
        }
        for (int l = k; l <= n - 2; ++l) {
            v(l) += 1;
        }
        v(n) += 1;
        return v;
    }

private:
    AlgebraKind kind_;
    Orientation orientation_;
    std::vector<int> cartan_;
    std::vector<int> nu_;
    std::vector<std::uint32_t> nu_masks_;
    std::vector<LatticeVector> roots_;

    int at(const std::vector<int>& m, int j, int k) const
    {
        return m[static_cast<std::size_t>((j - 1) * rank() + (k - 1))];
    }
    int& at(std::vector<int>& m, int j, int k) { return m[static_cast<std::size_t>((j - 1) * rank() + (k - 1))]; }

    void enumerate_roots()
    {
        std::set<LatticeVector> seen;
        std::vector<LatticeVector> frontier;
        for (int j = 1; j <= rank(); ++j) {
            seen.insert(simple_root(j));
            frontier.push_back(simple_root(j));
        }
        while (!frontier.empty()) {
            std::vector<LatticeVector> next;
            for (const auto& b : frontier) {
                for (int j = 1; j <= rank(); ++j) {
                    LatticeVector r = b - inner(b, simple_root(j)) * simple_root(j);
                    if (seen.insert(r).second) {
                        next.push_back(r);
                    }
                }
            }
            frontier = std::move(next);
        }
        roots_.assign(seen.begin(), seen.end());
    }
};

struct AsymmetryReport {
    std::string algebra;
    long checks = 0;
    long violations = 0;
    bool ok() const { return checks > 0 && violations == 0; }
};

/// nu(a,a) = (-1)^{(a|a)/2} and nu(a,b) = (-1)^{(a|b)} nu(b,a) over all roots and sums of two simple roots.
inline AsymmetryReport check_asymmetry_axioms(const RootLattice& L)
{
    AsymmetryReport rep;
    rep.algebra = L.kind().name();
    std::vector<LatticeVector> vs = L.roots();
    for (int j = 1; j <= L.rank(); ++j) {
        for (int k = j; k <= L.rank(); ++k) {
            vs.push_back(L.simple_root(j) + L.simple_root(k));
        }
    }
    for (const auto& a : vs) {
        int half = L.inner(a, a) / 2;
        ++rep.checks;
        rep.violations += L.nu(a, a) != (half % 2 == 0 ? 1 : -1);
        for (const auto& b : vs) {
            int s = L.inner(a, b) % 2 == 0 ? 1 : -1;
            ++rep.checks;
            rep.violations += L.nu(a, b) != s * L.nu(b, a);
        }
    }
    return rep;
}

}  // namespace tvo
