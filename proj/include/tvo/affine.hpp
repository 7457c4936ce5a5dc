#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fock.hpp"
#include "groupalg.hpp"
#include "lattice.hpp"
#include "linalg.hpp"

namespace tvo {

/// Sum of c * Y_alpha over roots; on C{Q/2Q} it acts as sum c * X-hat_alpha.
using ZeroModeSum = std::vector<std::pair<Scalar, LatticeVector>>;

enum class ZKind { Z, Zprime, Y };

struct ZElement {
    ZKind kind = ZKind::Z;
    int j = 0;
    int k = 0;
    ZeroModeSum terms;

    std::string name() const
    {
        std::string base = kind == ZKind::Y ? "Y" : kind == ZKind::Z ? "Z" : "Z'";
        return base + "_{" + std::to_string(j) + "," + std::to_string(k) + "}";
    }
};

namespace detail {

/// alpha_j + ... + alpha_k (empty when j > k).
inline LatticeVector simple_span(int n, int j, int k)
{
    LatticeVector v(n);
    for (int l = j; l <= k; ++l) {
        v(l) = 1;
    }
    return v;
}

inline void require_root(const RootLattice& L, const LatticeVector& v, const std::string& what)
{
    if (!L.is_root(v)) {
        throw std::logic_error(what + ": " + v.str() + " is not a root");
    }
}

}  // namespace detail

/**
 * Z_{j,k}, Z'_{j,k} (D series, 1 <= j <= k <= n-1) or Y_{j,k} (A series, 1 <= j <= k <= n).
 * Every Y_alpha in the expansion is checked to be a root.
 */
inline ZElement make_z(const RootLattice& L, ZKind kind, int j, int k)
{
    int n = L.rank();
    Series s = L.kind().series;
    ZElement z{kind, j, k, {}};
    if (kind == ZKind::Y) {
        if (s != Series::A || j < 1 || j > k || k > n) {
            throw std::invalid_argument("Y_{j,k} needs A series and 1 <= j <= k <= n");
        }
        z.terms.emplace_back(Scalar(1), detail::simple_span(n, j, k));
    } else {
        if (s != Series::D || j < 1 || j > k || k > n - 1) {
            throw std::invalid_argument("Z_{j,k} needs D series and 1 <= j <= k <= n-1");
        }
        LatticeVector a;
        LatticeVector b;
        int sign = 1;
        LatticeVector tail = LatticeVector::simple(n, n - 1) + LatticeVector::simple(n, n);
        if (k <= n - 3) {
            a = detail::simple_span(n, j, k);
            b = a + 2 * detail::simple_span(n, k + 1, n - 2) + tail;
        } else if (k == n - 2) {
            a = detail::simple_span(n, j, n - 2);
            b = a + tail;
        } else if (j < k) {
            a = detail::simple_span(n, j, n - 1);
            b = detail::simple_span(n, j, n - 2) + LatticeVector::simple(n, n);
            sign = -1;
        } else {
            a = LatticeVector::simple(n, n - 1);
            b = LatticeVector::simple(n, n);
            sign = -1;
        }
        if (kind == ZKind::Zprime) {
            sign = -sign;
        }
        z.terms.emplace_back(Scalar(1), a);
        z.terms.emplace_back(Scalar(sign), b);
    }
    for (const auto& [c, alpha] : z.terms) {
        detail::require_root(L, alpha, z.name());
    }
    return z;
}

/// Action of a zero-mode sum on C{Q/2Q}, coset basis.
inline Matrix zero_mode_matrix(const RootLattice& L, const ZeroModeSum& sum)
{
    std::size_t dim = std::size_t{1} << L.rank();
    Matrix m(dim, dim);
    for (const auto& [c, alpha] : sum) {
        m = m + c * xhat_matrix(L, alpha.coset());
    }
    return m;
}

inline Matrix zero_mode_matrix(const RootLattice& L, const ZElement& z) { return zero_mode_matrix(L, z.terms); }

// ---------------------------------------------------------------- Z brackets

/// One bracket identity [x, y] = coeff * rhs (rhs empty means 0).
struct BracketCheck {
    std::string family;
    std::string lhs;
    std::string rhs;
    bool holds = false;
};

struct ZBracketReport {
    AlgebraKind kind;
    long checks = 0;
    long failures = 0;
    std::map<std::string, long> checks_by_family;
    std::vector<BracketCheck> failed;
    bool ok() const { return failures == 0 && checks > 0; }
};

/**
 * Every identity of the Z/Z' bracket table as exact matrix identities on C{Q/2Q},
 * over all index combinations for which both sides are defined.
 */
inline ZBracketReport verify_z_brackets(const RootLattice& L)
{
    if (L.kind().series != Series::D) {
        throw std::invalid_argument("Z brackets are defined for the D series");
    }
    int n = L.rank();
    ZBracketReport rep;
    rep.kind = L.kind();
    std::map<std::tuple<int, int, int>, Matrix> cache;
    auto mat = [&](ZKind kind, int j, int k) -> const Matrix& {
        auto key = std::make_tuple(static_cast<int>(kind), j, k);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, zero_mode_matrix(L, make_z(L, kind, j, k))).first;
        }
        return it->second;
    };
    auto name = [](ZKind kind, int j, int k) { return ZElement{kind, j, k, {}}.name(); };
    auto nu_s = [&](int a, int b) { return L.nu(L.simple_root(a), L.simple_root(b)); };
    auto record = [&](const std::string& family, ZKind kx, int j1, int k1, ZKind ky, int j2, int k2, int coeff,
                      std::optional<std::pair<int, int>> rhs) {
        Matrix lhs = commutator(mat(kx, j1, k1), mat(ky, j2, k2));
        std::size_t dim = lhs.rows();
        Matrix expect(dim, dim);
        std::string rs = "0";
        if (rhs) {
            expect = Scalar(coeff) * mat(kx, rhs->first, rhs->second);
            rs = std::to_string(coeff) + " " + name(kx, rhs->first, rhs->second);
        }
        BracketCheck c{family, "[" + name(kx, j1, k1) + ", " + name(ky, j2, k2) + "]", rs, lhs == expect};
        ++rep.checks;
        ++rep.checks_by_family[family];
        if (!c.holds) {
            ++rep.failures;
            rep.failed.push_back(c);
        }
    };
    for (ZKind kind : {ZKind::Z, ZKind::Zprime}) {
        std::string tag = kind == ZKind::Z ? "" : "_prime";
        for (int j = 1; j <= n - 1; ++j) {
            // 2) common first index
            for (int r = j; r <= n - 1; ++r) {
                for (int s = j; s <= n - 1; ++s) {
                    if (r < s) {
                        record("common_start" + tag, kind, j, r, kind, j, s, -2 * nu_s(r, r + 1),
                               std::make_pair(r + 1, s));
                    } else if (s < r) {
                        record("common_start" + tag, kind, j, r, kind, j, s, 2 * nu_s(s, s + 1),
                               std::make_pair(s + 1, r));
                    }
                }
            }
            // 3) common last index
            for (int k = 1; k <= n - 1; ++k) {
                for (int r = std::max(j, k); r <= n - 1; ++r) {
                    if (j < k) {
                        record("common_end" + tag, kind, j, r, kind, k, r, -2 * nu_s(k - 1, k),
                               std::make_pair(j, k - 1));
                    } else if (k < j) {
                        record("common_end" + tag, kind, j, r, kind, k, r, 2 * nu_s(j - 1, j),
                               std::make_pair(k, j - 1));
                    }
                }
            }
            // 4) adjacent ranges [j,k-1], [k,s]
            for (int k = j + 1; k <= n - 1; ++k) {
                for (int s = k; s <= n - 1; ++s) {
                    record("adjacent" + tag, kind, j, k - 1, kind, k, s, 2 * nu_s(k - 1, k), std::make_pair(j, s));
                }
            }
            // 5) adjacent ranges in the other order [j,r], [k,j-1]
            for (int r = j; r <= n - 1; ++r) {
                for (int k = 1; k <= j - 1; ++k) {
                    record("adjacent_reversed" + tag, kind, j, r, kind, k, j - 1, -2 * nu_s(j - 1, j),
                           std::make_pair(k, r));
                }
            }
        }
    }
    // 1) Z and Z' commute
    for (int j = 1; j <= n - 1; ++j) {
        for (int k = j; k <= n - 1; ++k) {
            for (int r = 1; r <= n - 1; ++r) {
                for (int s = r; s <= n - 1; ++s) {
                    record("z_zprime_commute", ZKind::Z, j, k, ZKind::Zprime, r, s, 0, std::nullopt);
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- Chevalley generators

/**
 * printed: the generator formulas exactly as displayed.
 * corrected: D-series four-term e_j, f_j carry 1/4 instead of 1/2, and the double-bond end
 * (D_{2m+1}, A_{2m}) uses indices (2m-1, 2m) instead of (2m-2, 2m-1) in e_m, f_m.
 */
enum class ChevalleyReading { printed, corrected };

inline std::string reading_name(ChevalleyReading r) { return r == ChevalleyReading::printed ? "printed" : "corrected"; }

struct GeneratorTerm {
    Scalar coeff;
    ModeOp op;
};

/// A generator as a combination of mode operators on V; zero-mode generators also carry their C{Q/2Q} matrix.
struct Generator {
    std::string name;
    std::vector<GeneratorTerm> terms;
    bool zero_mode = true;
    Matrix matrix{0, 0};
};

struct ChevalleyNode {
    std::string label;  // "0", "1", ..., "1'", ...
    Generator e;
    Generator f;
    Generator h;
};

struct ChevalleySet {
    AlgebraKind kind;
    int m = 0;
    ChevalleyReading reading = ChevalleyReading::corrected;
    std::string diagram;  // "D^(1)_4", "A^(2)_3", ...
    std::vector<ChevalleyNode> nodes;

    const ChevalleyNode& node(const std::string& label) const
    {
        for (const auto& x : nodes) {
            if (x.label == label) {
                return x;
            }
        }
        throw std::out_of_range("no node " + label);
    }
};

namespace detail {

inline Generator zero_mode_generator(const RootLattice& L, const std::string& name, const ZeroModeSum& sum)
{
    Generator g{name, {}, true, zero_mode_matrix(L, sum)};
    for (const auto& [c, alpha] : sum) {
        if (!c.is_zero()) {
            g.terms.push_back({c, GammaMode{alpha, 0}});
        }
    }
    return g;
}

/// c1 * x1 + c2 * x2 + ...
inline ZeroModeSum combine(std::initializer_list<std::pair<Scalar, const ZElement*>> parts)
{
    std::map<LatticeVector, Scalar> acc;
    for (const auto& [c, z] : parts) {
        for (const auto& [zc, alpha] : z->terms) {
            acc[alpha] += c * zc;
        }
    }
    ZeroModeSum out;
    for (const auto& [alpha, c] : acc) {
        if (!c.is_zero()) {
            out.emplace_back(c, alpha);
        }
    }
    return out;
}

/// Node-0 generators: e0 = 1/2 {i(X_a - X_-a) + H_a} t, f0 = 1/2 {-i(X_a - X_-a) + H_a} t^-1, h0 = -i Y_a + K/2.
/// (X_a - X_-a) t^{+-1} acts as Gamma_{a,+-1}; H t^r as a_r(H)/sqrt2; K as 1.
inline ChevalleyNode node_zero(const RootLattice& L)
{
    LatticeVector a1 = L.simple_root(1);
    Scalar half = Scalar::half();
    Scalar i = Scalar::i();
    Scalar h_coeff = Scalar::sqrt2() * Scalar::rational(1, 4);  // 1/2 * 1/sqrt2
    ChevalleyNode n0;
    n0.label = "0";
    n0.e = Generator{"e0", {{half * i, GammaMode{a1, 1}}, {h_coeff, HeisenbergMode{a1, 1}}}, false, Matrix(0, 0)};
    n0.f = Generator{"f0", {{-half * i, GammaMode{a1, -1}}, {h_coeff, HeisenbergMode{a1, -1}}}, false, Matrix(0, 0)};
    std::size_t dim = std::size_t{1} << L.rank();
    n0.h = Generator{"h0",
                     {{-i, GammaMode{a1, 0}}, {half, IdentityOp{}}},
                     true,
                     -i * xhat_matrix(L, a1.coset()) + half * Matrix::identity(dim)};
    return n0;
}

}  // namespace detail

/**
 * Chevalley generators of the twisted affinization for D_{2m}, D_{2m+1}, A_{2m-1}, A_{2m} (m >= 2)
 * with the default orientation. Node order: 0, 1, ..., m, then 1', ..., m' (D series).
 */
inline ChevalleySet build_chevalley(const RootLattice& L, ChevalleyReading reading = ChevalleyReading::corrected)
{
    const AlgebraKind& kind = L.kind();
    int n = kind.rank;
    if (kind.series == Series::E) {
        throw std::invalid_argument("no Chevalley construction for the E series");
    }
    if (!L.has_default_orientation()) {
        throw std::invalid_argument("Chevalley generators need the default orientation");
    }
    ChevalleySet cs;
    cs.kind = kind;
    bool even = n % 2 == 0;
    int m = kind.series == Series::D ? n / 2 : (n + 1) / 2;
    if (m < 2) {
        throw std::invalid_argument("Chevalley construction needs m >= 2");
    }
    cs.m = m;
    cs.reading = reading;
    bool fix = reading == ChevalleyReading::corrected;
    std::string idx = std::to_string(kind.series == Series::D ? (even ? 2 * m : 2 * m + 1) : (even ? 2 * m : 2 * m - 1));
    if (kind.series == Series::D) {
        cs.diagram = even ? "D^(1)_" + idx : "D^(2)_" + idx;
    } else {
        cs.diagram = "A^(2)_" + idx;
    }
    cs.nodes.push_back(detail::node_zero(L));

    Scalar i = Scalar::i();
    Scalar h = fix && kind.series == Series::D ? Scalar::rational(1, 4) : Scalar::half();
    Scalar ih = i * h;
    Scalar ihalf = i * Scalar::half();
    std::vector<ZKind> kinds = kind.series == Series::D ? std::vector<ZKind>{ZKind::Z, ZKind::Zprime}
                                                        : std::vector<ZKind>{ZKind::Y};
    for (ZKind zk : kinds) {
        std::string prime = zk == ZKind::Zprime ? "'" : "";
        auto Z = [&](int j, int k) { return make_z(L, zk, j, k); };
        for (int j = 1; j <= m; ++j) {
            ChevalleyNode node;
            node.label = std::to_string(j) + prime;
            ZeroModeSum e, f, hh;
            if (j < m) {
                ZElement a = Z(2 * j - 1, 2 * j), b = Z(2 * j, 2 * j + 1), c = Z(2 * j - 1, 2 * j + 1), d = Z(2 * j, 2 * j);
                e = detail::combine({{h, &a}, {-h, &b}, {-ih, &c}, {-ih, &d}});
                f = detail::combine({{-h, &a}, {h, &b}, {-ih, &c}, {-ih, &d}});
                ZElement p = Z(2 * j - 1, 2 * j - 1), q = Z(2 * j + 1, 2 * j + 1);
                // D: (i/2){Z_{2j-1} - Z_{2j+1}}; A: i{Y_{2j-1} - Y_{2j+1}}
                Scalar s = kind.series == Series::D ? ihalf : i;
                hh = detail::combine({{s, &p}, {-s, &q}});
            } else if ((kind.series == Series::D && even) || (kind.series == Series::A && !even)) {
                // fork end: D_{2m}, A_{2m-1}
                ZElement a = Z(2 * m - 3, 2 * m - 2), b = Z(2 * m - 2, 2 * m - 1), c = Z(2 * m - 3, 2 * m - 1),
                         d = Z(2 * m - 2, 2 * m - 2);
                e = detail::combine({{h, &a}, {h, &b}, {ih, &c}, {-ih, &d}});
                f = detail::combine({{-h, &a}, {-h, &b}, {ih, &c}, {-ih, &d}});
                ZElement p = Z(2 * m - 3, 2 * m - 3), q = Z(2 * m - 1, 2 * m - 1);
                Scalar s = kind.series == Series::D ? ihalf : i;
                hh = detail::combine({{s, &p}, {s, &q}});
            } else {
                // double-bond end: D_{2m+1}, A_{2m}
                int top = fix ? 2 * m : 2 * m - 1;
                ZElement a = Z(top - 1, top), d = fix ? Z(top, top) : Z(top - 1, top - 1), q = Z(2 * m - 1, 2 * m - 1);
                Scalar s = kind.series == Series::D ? Scalar::half() : Scalar(1);
                e = detail::combine({{s, &a}, {-i * s, &d}});
                f = detail::combine({{-s, &a}, {-i * s, &d}});
                // D: i Z_{2m-1}; A: 2i Y_{2m-1}
                hh = detail::combine({{kind.series == Series::D ? i : Scalar(2) * i, &q}});
            }
            node.e = detail::zero_mode_generator(L, "e" + node.label, e);
            node.f = detail::zero_mode_generator(L, "f" + node.label, f);
            node.h = detail::zero_mode_generator(L, "h" + node.label, hh);
            cs.nodes.push_back(std::move(node));
        }
    }
    return cs;
}

// ---------------------------------------------------------------- generator action on V

/// Applies generators to states of V; zero-mode generators act through Gamma_{alpha,0} on the Fock part too.
class GeneratorAction {
public:
    explicit GeneratorAction(const RootLattice& L) : engine_(L, true) {}

    FockEngine& engine() { return engine_; }

    StateVector apply(const Generator& g, const StateVector& s)
    {
        StateVector out(s.rank());
        for (const auto& t : g.terms) {
            out = out + t.coeff * apply_mode(engine_, t.op, s);
        }
        return out;
    }

    StateVector bracket(const Generator& x, const Generator& y, const StateVector& s)
    {
        return apply(x, apply(y, s)) - apply(y, apply(x, s));
    }

private:
    FockEngine engine_;
};

/// Basis states e^g (x) f of V with f of degree <= max_degree (odd modes), one per coset.
inline std::vector<StateVector> low_degree_states(const RootLattice& L, int max_degree)
{
    int n = L.rank();
    std::vector<FockMonomial> monos{FockMonomial()};
    std::vector<FockMonomial> frontier{FockMonomial()};
    std::set<FockMonomial> seen{FockMonomial()};
    while (!frontier.empty()) {
        std::vector<FockMonomial> next;
        for (const auto& f : frontier) {
            for (int k = 1; k <= n; ++k) {
                for (int r = 1; f.degree() + r <= max_degree; r += 2) {
                    FockMonomial g = f * FockMonomial::generator(k, r);
                    if (seen.insert(g).second) {
                        monos.push_back(g);
                        next.push_back(g);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<StateVector> out;
    for (Coset g = 0; g < (1u << n); ++g) {
        for (const auto& f : monos) {
            out.push_back(StateVector::basis(n, g, f));
        }
    }
    return out;
}

// ---------------------------------------------------------------- Cartan readout

/// Target affine Cartan matrix in node order, a_ij defined by [h_i, e_j] = a_ij e_j.
/// Double bonds follow the drawn arrows: an arrow i => j marks j as the shorter root, a_ji = -2, a_ij = -1.
struct CartanTarget {
    std::string diagram;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> a;
};

inline CartanTarget affine_cartan_target(const ChevalleySet& cs)
{
    CartanTarget t;
    t.diagram = cs.diagram;
    for (const auto& node : cs.nodes) {
        t.labels.push_back(node.label);
    }
    std::size_t N = t.labels.size();
    t.a.assign(N, std::vector<int>(N, 0));
    for (std::size_t i = 0; i < N; ++i) {
        t.a[i][i] = 2;
    }
    auto pos = [&](const std::string& label) {
        auto it = std::find(t.labels.begin(), t.labels.end(), label);
        if (it == t.labels.end()) {
            throw std::logic_error("diagram node " + label + " missing");
        }
        return static_cast<std::size_t>(it - t.labels.begin());
    };
    auto single = [&](const std::string& x, const std::string& y) {
        t.a[pos(x)][pos(y)] = -1;
        t.a[pos(y)][pos(x)] = -1;
    };
    // arrow from long x to short y
    auto arrow = [&](const std::string& x, const std::string& y) {
        t.a[pos(x)][pos(y)] = -1;
        t.a[pos(y)][pos(x)] = -2;
    };
    int m = cs.m;
    auto lab = [](int j, const std::string& prime) { return j == 0 ? std::string("0") : std::to_string(j) + prime; };
    bool even = cs.kind.rank % 2 == 0;
    if (cs.kind.series == Series::D) {
        for (std::string prime : {std::string(""), std::string("'")}) {
            if (even) {
                // 0 - 1 - ... - (m-2) < (m-1), m
                for (int j = 0; j + 1 <= m - 2; ++j) {
                    single(lab(j, prime), lab(j + 1, prime));
                }
                single(lab(m - 2, prime), lab(m - 1, prime));
                single(lab(m - 2, prime), lab(m, prime));
            } else {
                // m <= (m-1) - ... - 1 - 0
                for (int j = 0; j + 1 <= m - 1; ++j) {
                    single(lab(j, prime), lab(j + 1, prime));
                }
                arrow(lab(m - 1, prime), lab(m, prime));
            }
        }
    } else if (!even) {
        // A^(2)_{2m-1}: 0 => 1 - ... - (m-2) < (m-1), m
        arrow("0", "1");
        for (int j = 1; j + 1 <= m - 2; ++j) {
            single(lab(j, ""), lab(j + 1, ""));
        }
        if (m - 2 >= 1) {
            single(lab(m - 2, ""), lab(m - 1, ""));
            single(lab(m - 2, ""), lab(m, ""));
        } else {
            // m = 2: the fork node is 0 itself and both bonds double (A^(2)_3 = D^(2)_3)
            arrow("0", "2");
        }
    } else {
        // A^(2)_{2m}: 0 => 1 - ... - (m-1) => m
        arrow("0", "1");
        for (int j = 1; j + 1 <= m - 1; ++j) {
            single(lab(j, ""), lab(j + 1, ""));
        }
        arrow(lab(m - 1, ""), lab(m, ""));
    }
    return t;
}

struct CartanReport {
    std::string diagram;
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<Scalar>>> readout;  // empty when [h_i, e_j] is not a multiple of e_j
    std::vector<std::vector<int>> target;
    std::vector<std::optional<Scalar>> ef_factor;  // c with [e_i, f_i] = c h_i
    bool matches_target = false;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> failed;
    long fock_states = 0;
    bool ok() const { return failures == 0 && matches_target; }
};

namespace detail {

/// c with x = c * y when such c exists (y nonzero).
inline std::optional<Scalar> proportionality(const Matrix& x, const Matrix& y)
{
    std::optional<Scalar> c;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (!y(i, j).is_zero()) {
                c = x(i, j) / y(i, j);
                return x == *c * y ? c : std::nullopt;
            }
        }
    }
    return std::nullopt;
}

inline std::optional<Scalar> proportionality(const std::vector<StateVector>& x, const std::vector<StateVector>& y)
{
    std::optional<Scalar> c;
    for (std::size_t s = 0; s < y.size() && !c; ++s) {
        if (!y[s].terms().empty()) {
            const auto& [key, yc] = *y[s].terms().begin();
            c = x[s].coeff(key.first, key.second) / yc;
        }
    }
    if (!c) {
        return std::nullopt;
    }
    for (std::size_t s = 0; s < y.size(); ++s) {
        if (!(x[s] - *c * y[s]).is_zero()) {
            return std::nullopt;
        }
    }
    return c;
}

}  // namespace detail

/**
 * Chevalley relations and Cartan matrix readout. Zero-mode pairs are compared as matrices on C{Q/2Q};
 * pairs involving e0/f0 are compared on every basis state of degree <= fock_degree.
 */
inline CartanReport verify_cartan_matrix(const RootLattice& L, const ChevalleySet& cs, int fock_degree = 2)
{
    CartanReport rep;
    rep.diagram = cs.diagram;
    CartanTarget target = affine_cartan_target(cs);
    rep.labels = target.labels;
    rep.target = target.a;
    std::size_t N = cs.nodes.size();
    rep.readout.assign(N, std::vector<std::optional<Scalar>>(N));
    rep.ef_factor.assign(N, std::nullopt);

    GeneratorAction act(L);
    std::vector<StateVector> states = low_degree_states(L, fock_degree);
    rep.fock_states = static_cast<long>(states.size());
    auto images = [&](const Generator& g) {
        std::vector<StateVector> out;
        for (const auto& s : states) {
            out.push_back(act.apply(g, s));
        }
        return out;
    };
    auto bracket_images = [&](const Generator& x, const Generator& y) {
        std::vector<StateVector> out;
        for (const auto& s : states) {
            out.push_back(act.bracket(x, y, s));
        }
        return out;
    };
    auto fail = [&](const std::string& what) {
        ++rep.failures;
        rep.failed.push_back(what);
    };

    // [x, y] = c * z, returns the c found (or nullopt) and whether it equals `expect` if given
    auto readout = [&](const Generator& x, const Generator& y, const Generator& z) -> std::optional<Scalar> {
        if (x.zero_mode && y.zero_mode && z.zero_mode) {
            return detail::proportionality(commutator(x.matrix, y.matrix), z.matrix);
        }
        return detail::proportionality(bracket_images(x, y), images(z));
    };
    auto is_zero_bracket = [&](const Generator& x, const Generator& y) {
        if (x.zero_mode && y.zero_mode) {
            return commutator(x.matrix, y.matrix).is_zero();
        }
        for (const auto& s : states) {
            if (!act.bracket(x, y, s).is_zero()) {
                return false;
            }
        }
        return true;
    };

    for (std::size_t i = 0; i < N; ++i) {
        const ChevalleyNode& ni = cs.nodes[i];
        for (std::size_t j = 0; j < N; ++j) {
            const ChevalleyNode& nj = cs.nodes[j];
            std::string pair = "(" + ni.label + "," + nj.label + ")";
            // [h_i, h_j] = 0
            ++rep.checks;
            if (!is_zero_bracket(ni.h, nj.h)) {
                fail("[h_i, h_j] != 0 at " + pair);
            }
            // [e_i, f_j] = delta_ij h_i
            ++rep.checks;
            if (i == j) {
                auto c = readout(ni.e, nj.f, ni.h);
                rep.ef_factor[i] = c;
                if (!c || !(*c == Scalar(1))) {
                    fail("[e_i, f_i] != h_i at " + pair);
                }
            } else if (!is_zero_bracket(ni.e, nj.f)) {
                fail("[e_i, f_j] != 0 at " + pair);
            }
            // [h_i, e_j] = a_ij e_j, [h_i, f_j] = -a_ij f_j
            ++rep.checks;
            auto a = readout(ni.h, nj.e, nj.e);
            rep.readout[i][j] = a;
            if (!a) {
                fail("[h_i, e_j] not a multiple of e_j at " + pair);
            }
            ++rep.checks;
            auto b = readout(ni.h, nj.f, nj.f);
            if (!b || !a || !(*b == -*a)) {
                fail("[h_i, f_j] != -a_ij f_j at " + pair);
            }
        }
    }
    rep.matches_target = true;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            if (!rep.readout[i][j] || !(*rep.readout[i][j] == Scalar(rep.target[i][j]))) {
                rep.matches_target = false;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- singular vectors

namespace detail {

/// Index of a node label in ChevalleySet order: 0, 1..m, 1'..m'.
inline std::vector<std::string> node_labels(const AlgebraKind& kind, int m)
{
    std::vector<std::string> out{"0"};
    for (int j = 1; j <= m; ++j) {
        out.push_back(std::to_string(j));
    }
    if (kind.series == Series::D) {
        for (int j = 1; j <= m; ++j) {
            out.push_back(std::to_string(j) + "'");
        }
    }
    return out;
}

inline int chevalley_m(const AlgebraKind& kind)
{
    return kind.series == Series::D ? kind.rank / 2 : (kind.rank + 1) / 2;
}

}  // namespace detail

/**
 * Closed-form h-eigenvalues on v(c) in node order (0, 1..m, 1'..m'):
 * 2h_0 v = (1 - c_1)v; D_{2m}: 4h_j v = c_{2j-1}(1 - c_{2j-1}c_{2j+1})(1 -+ c_{2m-1}c_{2m})v, ...
 */
inline std::vector<Rational> closed_form_h_eigenvalues(const AlgebraKind& kind, const SignTuple& c)
{
    int n = kind.rank;
    int m = detail::chevalley_m(kind);
    auto C = [&](int j) { return c(j); };
    std::vector<Rational> out{Rational(1 - C(1), 2)};
    if (kind.series == Series::D) {
        bool even = n % 2 == 0;
        int pa = even ? 2 * m - 1 : 2 * m;
        int pb = even ? 2 * m : 2 * m + 1;
        for (int prime : {-1, 1}) {
            int tail = 1 + prime * C(pa) * C(pb);  // (1 -+ c c)
            for (int j = 1; j < m; ++j) {
                out.emplace_back(C(2 * j - 1) * (1 - C(2 * j - 1) * C(2 * j + 1)) * tail, 4);
            }
            if (even) {
                out.emplace_back(C(2 * m - 3) * (1 + C(2 * m - 3) * C(2 * m - 1)) * tail, 4);
            } else {
                out.emplace_back(C(2 * m - 1) * tail, 2);
            }
        }
    } else if (kind.series == Series::A) {
        for (int j = 1; j < m; ++j) {
            out.emplace_back(C(2 * j - 1) * (1 - C(2 * j - 1) * C(2 * j + 1)), 2);
        }
        if (n % 2 == 1) {
            out.emplace_back(C(2 * m - 3) * (1 + C(2 * m - 3) * C(2 * m - 1)), 2);
        } else {
            out.emplace_back(C(2 * m - 1));
        }
    } else {
        throw std::invalid_argument("closed forms exist for A and D only");
    }
    return out;
}

/// The singular-vector criterion and weight table of the classification theorems (A/D).
inline bool theorem_is_singular(const AlgebraKind& kind, const SignTuple& c)
{
    int n = kind.rank;
    int m = detail::chevalley_m(kind);
    int last = (kind.series == Series::D && n % 2 == 0) || (kind.series == Series::A && n % 2 == 1) ? m - 1 : m;
    for (int j = 1; j <= last; ++j) {
        if (c(2 * j - 1) != 1) {
            return false;
        }
    }
    return true;
}

inline std::string weight_name(const std::string& label) { return "Lambda_" + label; }

inline std::string theorem_weight(const AlgebraKind& kind, const SignTuple& c)
{
    int n = kind.rank;
    int m = detail::chevalley_m(kind);
    std::string ms = std::to_string(m);
    std::string m1 = std::to_string(m - 1);
    if (kind.series == Series::D) {
        if (n % 2 == 0) {
            int a = c(2 * m - 1), b = c(2 * m);
            if (a == 1) {
                return weight_name(b == 1 ? ms + "'" : ms);
            }
            return weight_name(b == 1 ? m1 + "'" : m1);
        }
        return weight_name(c(2 * m) == c(2 * m + 1) ? ms + "'" : ms);
    }
    if (n % 2 == 1) {
        return weight_name(c(2 * m - 1) == 1 ? ms : m1);
    }
    return weight_name(ms);
}

struct SingularVector {
    SignTuple c;
    std::vector<Scalar> eigenvalues;  // node order
    std::string weight;
    std::string theorem_weight;
    bool annihilated = false;  // e_j v = 0 for all j >= 1, and e_0 v = 0 computed on V
};

struct SingularReport {
    AlgebraKind kind;
    std::vector<std::string> labels;
    long scanned = 0;
    bool h_diagonal = true;
    long closed_form_mismatches = 0;  // matrix eigenvalue vs closed form, over all c and nodes
    long criterion_mismatches = 0;    // eigenvalue criterion vs the theorem's singular condition
    long unlabelled = 0;              // eigenvalue profile not a single fundamental weight
    long table_weight_deviations = 0; // computed label differs from the classification table
    std::vector<SingularVector> vectors;
    bool ok() const
    {
        bool annihilated = std::all_of(vectors.begin(), vectors.end(), [](const auto& v) { return v.annihilated; });
        return h_diagonal && closed_form_mismatches == 0 && criterion_mismatches == 0 && unlabelled == 0 && annihilated;
    }
};

namespace detail {

inline bool is_nonnegative_integer(const Scalar& s)
{
    return s.im().is_zero() && s.r2().is_zero() && s.ir2().is_zero() && s.re().is_integer() && !(s.re() < Rational(0));
}

}  // namespace detail

/**
 * Scans all v-basis vectors: h-eigenvalues from the generator matrices (checked diagonal), the
 * non-negative-integer criterion, e_j v = 0 for j >= 1 and e_0 v = 0 computed on degree-0 states.
 */
inline SingularReport find_singular_vectors(const RootLattice& L, ChevalleyReading reading = ChevalleyReading::corrected)
{
    ChevalleySet cs = build_chevalley(L, reading);
    const AlgebraKind& kind = L.kind();
    int n = L.rank();
    SingularReport rep;
    rep.kind = kind;
    std::size_t N = cs.nodes.size();
    for (const auto& node : cs.nodes) {
        rep.labels.push_back(node.label);
    }
    std::vector<Matrix> hv, ev;
    for (const auto& node : cs.nodes) {
        hv.push_back(coset_to_v_matrix(L, node.h.matrix));
        if (node.e.zero_mode) {
            ev.push_back(coset_to_v_matrix(L, node.e.matrix));
        } else {
            ev.emplace_back(0, 0);
        }
    }
    std::size_t dim = std::size_t{1} << n;
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (i != j && !hv[a](i, j).is_zero()) {
                    rep.h_diagonal = false;
                }
            }
        }
    }
    GeneratorAction act(L);
    for (const auto& c : SignTuple::all(n)) {
        ++rep.scanned;
        std::size_t col = c.neg_mask();
        std::vector<Scalar> eig;
        bool nonneg = true;
        auto closed = closed_form_h_eigenvalues(kind, c);
        for (std::size_t a = 0; a < N; ++a) {
            eig.push_back(hv[a](col, col));
            if (!(eig.back() == Scalar(closed[a]))) {
                ++rep.closed_form_mismatches;
            }
            nonneg = nonneg && detail::is_nonnegative_integer(eig.back());
        }
        if (nonneg != theorem_is_singular(kind, c)) {
            ++rep.criterion_mismatches;
        }
        if (!nonneg) {
            continue;
        }
        SingularVector sv;
        sv.c = c;
        sv.eigenvalues = eig;
        std::vector<std::string> ones;
        bool delta = true;
        for (std::size_t a = 0; a < N; ++a) {
            if (eig[a] == Scalar(1)) {
                ones.push_back(rep.labels[a]);
            } else if (!eig[a].is_zero()) {
                delta = false;
            }
        }
        if (delta && ones.size() == 1) {
            sv.weight = weight_name(ones.front());
        } else {
            std::string prof = "(";
            for (std::size_t a = 0; a < N; ++a) {
                prof += (a ? "," : "") + eig[a].str();
            }
            sv.weight = prof + ")";
            ++rep.unlabelled;
        }
        sv.theorem_weight = theorem_weight(kind, c);
        if (sv.weight != sv.theorem_weight) {
            ++rep.table_weight_deviations;
        }
        bool ann = true;
        for (std::size_t a = 0; a < N; ++a) {
            if (cs.nodes[a].e.zero_mode) {
                for (std::size_t i = 0; i < dim; ++i) {
                    ann = ann && ev[a](i, col).is_zero();
                }
            } else {
                StateVector v = StateVector::from_group_alg(v_basis(L, c));
                ann = ann && act.apply(cs.nodes[a].e, v).is_zero();
            }
        }
        sv.annihilated = ann;
        rep.vectors.push_back(std::move(sv));
    }
    return rep;
}

// ---------------------------------------------------------------- decomposition

struct Submodule {
    SignTuple generator;  // singular vector, or the smallest member for E classes
    std::string weight;   // fundamental weight name, or the invariant tuple for E
    std::vector<SignTuple> basis;
    bool matches_theorem_span = false;
};

struct DecompositionCertificate {
    bool disjoint = false;
    bool invariant = false;
    std::size_t total_dim = 0;
    bool complete = false;
};

struct DecompositionReport {
    AlgebraKind kind;
    std::vector<Submodule> modules;
    DecompositionCertificate certificate;
    long span_mismatches = 0;
    long singular_per_module_mismatches = 0;  // A/D: modules not holding exactly one singular vector
    bool theorem_checked = false;              // weights and spans compared (default orientation only)
    bool ok() const
    {
        return certificate.disjoint && certificate.invariant && certificate.complete && span_mismatches == 0 &&
               singular_per_module_mismatches == 0;
    }
};

/// Nodes whose signs are conserved by every X-hat_alpha, as products over node sets (E series).
inline std::vector<std::vector<int>> e_conserved_functionals(const AlgebraKind& kind)
{
    switch (kind.rank) {
    case 6:
        return {{1}, {3}, {5}};
    case 7:
        return {{1}, {3}, {5}, {4, 6, 7}};
    case 8:
        return {{1}, {3}, {5}, {7}};
    default:
        throw std::invalid_argument("E rank must be 6, 7 or 8");
    }
}

inline int functional_value(const SignTuple& c, const std::vector<int>& nodes)
{
    int v = 1;
    for (int j : nodes) {
        v *= c(j);
    }
    return v;
}

/// The span the classification theorems attach to a generator c (singular vector for A/D, class member for E).
inline bool in_theorem_span(const AlgebraKind& kind, const SignTuple& c, const SignTuple& b)
{
    int n = kind.rank;
    if (kind.series == Series::E) {
        for (const auto& f : e_conserved_functionals(kind)) {
            if (functional_value(b, f) != functional_value(c, f)) {
                return false;
            }
        }
        return true;
    }
    int m = detail::chevalley_m(kind);
    auto odd_product = [&](int upto) {
        int p = 1;
        for (int j = 1; j <= upto; j += 2) {
            p *= b(j);
        }
        return p;
    };
    if (kind.series == Series::D && n % 2 == 0) {
        for (int j = 1; j <= m - 1; ++j) {
            if (b(2 * j) != c(2 * j)) {
                return false;
            }
        }
        return b(2 * m - 1) * b(2 * m) == c(2 * m - 1) * c(2 * m) && odd_product(2 * m - 1) == c(2 * m - 1);
    }
    if (kind.series == Series::D) {
        for (int j = 1; j <= m; ++j) {
            if (b(2 * j) != c(2 * j)) {
                return false;
            }
        }
        return b(2 * m + 1) == c(2 * m + 1);
    }
    for (int j = 2; j <= n; j += 2) {
        if (b(j) != c(j)) {
            return false;
        }
    }
    return n % 2 == 0 || odd_product(n) == c(n);
}

namespace detail {

/// Distinct flip masks of X-hat_alpha on the v-basis over the given roots (the flip does not depend on c).
inline std::vector<Coset> root_cosets(const std::vector<LatticeVector>& roots)
{
    std::set<Coset> s;
    for (const auto& r : roots) {
        s.insert(r.coset());
    }
    return {s.begin(), s.end()};
}

/// Connected components of the v-basis under the given X-hat actions (signed permutations).
inline std::vector<std::vector<SignTuple>> v_orbits(const RootLattice& L, const std::vector<Coset>& cosets,
                                                    const std::vector<SignTuple>& within)
{
    std::set<std::uint32_t> todo;
    for (const auto& c : within) {
        todo.insert(c.neg_mask());
    }
    std::vector<std::vector<SignTuple>> out;
    int n = L.rank();
    while (!todo.empty()) {
        std::uint32_t start = *todo.begin();
        std::vector<SignTuple> comp;
        std::vector<std::uint32_t> stack{start};
        todo.erase(start);
        while (!stack.empty()) {
            std::uint32_t cur = stack.back();
            stack.pop_back();
            comp.emplace_back(n, cur);
            for (Coset a : cosets) {
                std::uint32_t t = xhat_v_action(L, a, SignTuple(n, cur)).target.neg_mask();
                if (todo.erase(t)) {
                    stack.push_back(t);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool span_invariant(const RootLattice& L, const std::vector<Coset>& cosets, const std::vector<SignTuple>& span)
{
    std::set<SignTuple> members(span.begin(), span.end());
    for (Coset a : cosets) {
        for (const auto& c : span) {
            if (!members.count(xhat_v_action(L, a, c).target)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

/**
 * Orbit spans of the v-basis under all X-hat_alpha; each span is matched against the
 * classification theorem and certified disjoint, invariant and complete.
 */
inline DecompositionReport decompose(const RootLattice& L)
{
    const AlgebraKind& kind = L.kind();
    int n = L.rank();
    DecompositionReport rep;
    rep.kind = kind;
    auto cosets = detail::root_cosets(L.positive_roots());
    auto orbits = detail::v_orbits(L, cosets, SignTuple::all(n));
    rep.theorem_checked = L.has_default_orientation();

    std::map<std::uint32_t, const SingularVector*> singular;
    SingularReport sr;
    if (rep.theorem_checked && kind.series != Series::E) {
        sr = find_singular_vectors(L);
        for (const auto& v : sr.vectors) {
            singular[v.c.neg_mask()] = &v;
        }
    }
    for (const auto& orbit : orbits) {
        Submodule mod;
        mod.basis = orbit;
        mod.generator = orbit.front();
        if (!rep.theorem_checked) {
            rep.modules.push_back(std::move(mod));
            continue;
        }
        if (kind.series == Series::E) {
            std::string w = "(";
            bool first = true;
            for (const auto& f : e_conserved_functionals(kind)) {
                std::string name = "c";
                for (int j : f) {
                    name += std::to_string(j);
                }
                w += (first ? "" : ",") + name + "=" + std::to_string(functional_value(mod.generator, f));
                first = false;
            }
            mod.weight = w + ")";
        } else {
            int found = 0;
            for (const auto& b : orbit) {
                auto it = singular.find(b.neg_mask());
                if (it != singular.end()) {
                    ++found;
                    mod.generator = b;
                    mod.weight = it->second->weight;
                }
            }
            if (found != 1) {
                ++rep.singular_per_module_mismatches;
            }
        }
        std::vector<SignTuple> expected;
        for (const auto& b : SignTuple::all(n)) {
            if (in_theorem_span(kind, mod.generator, b)) {
                expected.push_back(b);
            }
        }
        mod.matches_theorem_span = expected == orbit;
        if (!mod.matches_theorem_span) {
            ++rep.span_mismatches;
        }
        rep.modules.push_back(std::move(mod));
    }

    DecompositionCertificate& cert = rep.certificate;
    std::set<SignTuple> seen;
    cert.disjoint = true;
    cert.invariant = true;
    for (const auto& mod : rep.modules) {
        for (const auto& b : mod.basis) {
            cert.disjoint = seen.insert(b).second && cert.disjoint;
        }
        cert.total_dim += mod.basis.size();
        cert.invariant = cert.invariant && detail::span_invariant(L, cosets, mod.basis);
    }
    cert.complete = cert.total_dim == (std::size_t{1} << n) && seen.size() == cert.total_dim;
    return rep;
}

struct ConservationReport {
    AlgebraKind kind;
    std::vector<std::vector<int>> functionals;
    long checks = 0;
    long violations = 0;
    bool ok() const { return checks > 0 && violations == 0; }
};

/// Exact invariance of the E-series sign functionals under every 2X-hat_{alpha_j}.
inline ConservationReport verify_conserved_quantities(const RootLattice& L)
{
    ConservationReport rep;
    rep.kind = L.kind();
    rep.functionals = e_conserved_functionals(L.kind());
    int n = L.rank();
    for (int j = 1; j <= n; ++j) {
        Coset a = L.simple_root(j).coset();
        for (const auto& c : SignTuple::all(n)) {
            SignTuple t = xhat_v_action(L, a, c).target;
            for (const auto& f : rep.functionals) {
                ++rep.checks;
                if (functional_value(c, f) != functional_value(t, f)) {
                    ++rep.violations;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- D4 Pauli matrices

struct PauliEntry {
    std::string root_name;  // "e2-e3"
    LatticeVector root;
    int table_class = 0;        // p of the table
    Scalar table_coeff;         // 2X-hat = table_coeff * sigma_p
    int found_class = 0;        // 0 when the 2x2 block is not a multiple of one sigma
    Scalar found_coeff;
    bool class_matches = false;
    bool sign_matches = false;
};

struct PauliReport {
    SignTuple c;
    bool span_invariant = false;
    std::vector<PauliEntry> entries;
    long class_mismatches = 0;
    long sign_deviations = 0;
    long property_i_violations = 0;
    long property_ii_violations = 0;
    bool ok() const { return span_invariant && class_mismatches == 0 && property_i_violations == 0 && property_ii_violations == 0; }
};

namespace detail {

inline std::array<Matrix, 3> pauli_matrices()
{
    Matrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1(0, 1) = Scalar(1);
    s1(1, 0) = Scalar(1);
    s2(0, 1) = -Scalar::i();
    s2(1, 0) = Scalar::i();
    s3(0, 0) = Scalar(1);
    s3(1, 1) = Scalar(-1);
    return {s1, s2, s3};
}

}  // namespace detail

/**
 * 2X-hat_alpha on span{v(c), v(-c1,c2,-c3,-c4)} of D4 for the 12 positive roots, against the
 * table: class 1 -> +i(...)sigma_1, classes 2 and 3 -> -i(...)sigma_p.
 */
inline PauliReport pauli_example(const RootLattice& L, const SignTuple& c)
{
    if (L.kind() != AlgebraKind(Series::D, 4)) {
        throw std::invalid_argument("pauli_example needs D4");
    }
    PauliReport rep;
    rep.c = c;
    SignTuple vp = c.flipped(0b1101);  // (-c1, c2, -c3, -c4)
    struct Row {
        int p;
        int j, k, sign;
        std::vector<int> mono;  // nodes in the sign monomial
    };
    std::vector<Row> table = {
        {1, 2, 3, -1, {2}}, {1, 1, 4, -1, {1, 2, 3}}, {1, 1, 4, 1, {1, 2, 4}}, {1, 2, 3, 1, {2, 3, 4}},
        {2, 1, 3, -1, {1, 2}}, {2, 2, 4, -1, {2, 3}}, {2, 2, 4, 1, {2, 4}}, {2, 1, 3, 1, {1, 2, 3, 4}},
        {3, 1, 2, -1, {1}}, {3, 3, 4, -1, {3}}, {3, 3, 4, 1, {4}}, {3, 1, 2, 1, {1, 3, 4}},
    };
    auto sig = detail::pauli_matrices();
    rep.span_invariant = true;
    std::map<LatticeVector, int> class_of;
    for (const auto& row : table) {
        PauliEntry e;
        e.root = L.epsilon_root(row.j, row.k, row.sign);
        e.root_name = "e" + std::to_string(row.j) + (row.sign < 0 ? "-" : "+") + "e" + std::to_string(row.k);
        e.table_class = row.p;
        class_of[e.root] = row.p;
        Scalar unit = row.p == 1 ? Scalar::i() : -Scalar::i();
        e.table_coeff = Scalar(functional_value(c, row.mono)) * unit;
        Matrix block(2, 2);
        const SignTuple basis[2] = {c, vp};
        for (int col = 0; col < 2; ++col) {
            VImage im = xhat_v_action(L, e.root.coset(), basis[col]);
            int row_idx = im.target == c ? 0 : im.target == vp ? 1 : -1;
            if (row_idx < 0) {
                rep.span_invariant = false;
                continue;
            }
            block(static_cast<std::size_t>(row_idx), static_cast<std::size_t>(col)) = Scalar(2) * im.phase;
        }
        for (int p = 0; p < 3; ++p) {
            auto k = detail::proportionality(block, sig[static_cast<std::size_t>(p)]);
            if (k) {
                e.found_class = p + 1;
                e.found_coeff = *k;
            }
        }
        e.class_matches = e.found_class == e.table_class;
        e.sign_matches = e.class_matches && e.found_coeff == e.table_coeff;
        if (!e.class_matches) {
            ++rep.class_mismatches;
        } else if (!e.sign_matches) {
            ++rep.sign_deviations;
        }
        rep.entries.push_back(std::move(e));
    }
    // (i) alpha, beta in one class => alpha +- beta not a root; (ii) cross-class sums land in the third class
    for (const auto& x : rep.entries) {
        for (const auto& y : rep.entries) {
            if (x.root == y.root) {
                continue;
            }
            if (x.table_class == y.table_class) {
                if (L.is_root(x.root + y.root) || L.is_root(x.root - y.root)) {
                    ++rep.property_i_violations;
                }
            } else if (L.is_root(x.root + y.root)) {
                int third = 6 - x.table_class - y.table_class;
                auto it = class_of.find(x.root + y.root);
                if (it == class_of.end() || it->second != third) {
                    ++rep.property_ii_violations;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- root subsystems

/// Cartan type of a simply-laced root subsystem ("A3", "D8", "E8", "A1+A1", ...).
inline std::string classify_simply_laced(const std::vector<LatticeVector>& simple, const RootLattice& L)
{
    std::size_t r = simple.size();
    std::vector<std::vector<std::size_t>> adj(r);
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = a + 1; b < r; ++b) {
            int ip = L.inner(simple[a], simple[b]);
            if (ip == -1) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            } else if (ip != 0) {
                return "not-simple-system";
            }
        }
    }
    std::vector<int> comp(r, -1);
    std::vector<std::string> parts;
    for (std::size_t s = 0; s < r; ++s) {
        if (comp[s] >= 0) {
            continue;
        }
        std::vector<std::size_t> nodes{s};
        comp[s] = static_cast<int>(s);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            for (auto t : adj[nodes[q]]) {
                if (comp[t] < 0) {
                    comp[t] = static_cast<int>(s);
                    nodes.push_back(t);
                }
            }
        }
        std::size_t edges = 0;
        std::vector<std::size_t> branch;
        for (auto v : nodes) {
            edges += adj[v].size();
            if (adj[v].size() >= 3) {
                branch.push_back(v);
            }
        }
        edges /= 2;
        std::size_t k = nodes.size();
        if (edges != k - 1) {
            return "not-simple-system";
        }
        if (branch.empty()) {
            parts.push_back("A" + std::to_string(k));
            continue;
        }
        if (branch.size() != 1 || adj[branch[0]].size() != 3) {
            return "not-simple-system";
        }
        std::vector<std::size_t> arms;
        for (auto nb : adj[branch[0]]) {
            std::size_t len = 1;
            std::size_t prev = branch[0], cur = nb;
            while (adj[cur].size() == 2) {
                std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nxt;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) {
            parts.push_back("D" + std::to_string(k));
        } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
            parts.push_back("E" + std::to_string(k));
        } else {
            return "not-simple-system";
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) {
        out += (out.empty() ? "" : "+") + p;
    }
    return out;
}

/// Simple system of a closed subset R of roots, positivity inherited from the ambient simple roots.
inline std::vector<LatticeVector> simple_system(const std::vector<LatticeVector>& R)
{
    std::vector<LatticeVector> pos;
    for (const auto& r : R) {
        if (std::all_of(r.coeffs().begin(), r.coeffs().end(), [](int x) { return x >= 0; })) {
            pos.push_back(r);
        }
    }
    std::set<LatticeVector> ps(pos.begin(), pos.end());
    std::vector<LatticeVector> out;
    for (const auto& r : pos) {
        bool decomposable = false;
        for (const auto& a : pos) {
            if (a != r && ps.count(r - a)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) {
            out.push_back(r);
        }
    }
    return out;
}

namespace detail {

/// Dimension of the associative algebra generated by the given square matrices (with 1).
inline std::size_t generated_algebra_dim(const std::vector<Matrix>& gens)
{
    if (gens.empty()) {
        return 1;
    }
    std::size_t d = gens.front().rows();
    std::size_t len = d * d;
    // echelon rows with pivot columns, reduced incrementally
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::size_t> pivots;
    auto reduce = [&](std::vector<Scalar> v) -> std::optional<std::vector<Scalar>> {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Scalar& f = v[pivots[r]];
            if (!f.is_zero()) {
                Scalar ff = f;
                for (std::size_t t = 0; t < len; ++t) {
                    if (!rows[r][t].is_zero()) {
                        v[t] -= ff * rows[r][t];
                    }
                }
            }
        }
        for (std::size_t t = 0; t < len; ++t) {
            if (!v[t].is_zero()) {
                Scalar inv = Scalar(1) / v[t];
                for (auto& x : v) {
                    if (!x.is_zero()) {
                        x = x * inv;
                    }
                }
                pivots.push_back(t);
                return v;
            }
        }
        return std::nullopt;
    };
    auto flat = [&](const Matrix& m) {
        std::vector<Scalar> v(len);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                v[i * d + j] = m(i, j);
            }
        }
        return v;
    };
    std::vector<Matrix> basis{Matrix::identity(d)};
    rows.push_back(*reduce(flat(basis.front())));
    for (std::size_t q = 0; q < basis.size() && basis.size() < len; ++q) {
        for (const auto& g : gens) {
            Matrix prod = g * basis[q];
            if (auto r = reduce(flat(prod))) {
                rows.push_back(std::move(*r));
                basis.push_back(std::move(prod));
            }
        }
    }
    return basis.size();
}

/// Restriction of X-hat_alpha to a span of v-basis vectors closed under it.
inline Matrix restrict_xhat(const RootLattice& L, Coset a, const std::vector<SignTuple>& span)
{
    std::map<SignTuple, std::size_t> pos;
    for (std::size_t k = 0; k < span.size(); ++k) {
        pos[span[k]] = k;
    }
    Matrix m(span.size(), span.size());
    for (std::size_t k = 0; k < span.size(); ++k) {
        VImage im = xhat_v_action(L, a, span[k]);
        m(pos.at(im.target), k) = im.phase;
    }
    return m;
}

}  // namespace detail

struct D8SpanCheck {
    SignTuple representative;
    int c = 0;  // b6 b8
    std::size_t dim = 0;
    bool connected = false;       // one orbit under X-hat_alpha, alpha in R
    std::size_t algebra_dim = 0;  // dim of the algebra generated by those operators; dim^2 means irreducible
};

struct D8Report {
    std::size_t stabilizing_roots = 0;  // |R|
    std::string subsystem_type;
    std::size_t subsystem_rank = 0;
    bool same_for_all_spans = false;
    bool halves_joined_by_e8 = false;  // every E8 class of dimension 16 is one E8 orbit
    std::vector<D8SpanCheck> spans;
    bool ok() const
    {
        bool spans_ok = !spans.empty() && std::all_of(spans.begin(), spans.end(), [](const D8SpanCheck& s) {
            return s.dim == 8 && s.connected && s.algebra_dim == 64;
        });
        return stabilizing_roots == 112 && subsystem_type == "D8" && subsystem_rank == 8 && same_for_all_spans &&
               halves_joined_by_e8 && spans_ok;
    }
};

/**
 * For every E8 class (c1,c3,c5,c7) and c = b6 b8: the roots whose X-hat preserves the constrained span.
 * The stabilizer R is the same for all 32 spans; its type is read from a simple system.
 */
inline D8Report check_d8_in_e8(const RootLattice& L)
{
    if (L.kind() != AlgebraKind(Series::E, 8)) {
        throw std::invalid_argument("check_d8_in_e8 needs E8");
    }
    D8Report rep;
    int n = 8;
    auto all = SignTuple::all(n);
    std::optional<std::set<LatticeVector>> common;
    rep.same_for_all_spans = true;
    std::vector<std::vector<SignTuple>> spans;
    std::vector<int> span_c;
    for (std::uint32_t cls = 0; cls < 16; ++cls) {
        // c1, c3, c5, c7 from the class bits
        SignTuple rep_c(n, ((cls & 1) << 0) | ((cls & 2) << 1) | ((cls & 4) << 2) | ((cls & 8) << 3));
        for (int cval : {1, -1}) {
            std::vector<SignTuple> span;
            for (const auto& b : all) {
                if (b(1) == rep_c(1) && b(3) == rep_c(3) && b(5) == rep_c(5) && b(7) == rep_c(7) && b(6) * b(8) == cval) {
                    span.push_back(b);
                }
            }
            std::set<LatticeVector> stab;
            for (const auto& r : L.roots()) {
                if (detail::span_invariant(L, {r.coset()}, span)) {
                    stab.insert(r);
                }
            }
            if (common && *common != stab) {
                rep.same_for_all_spans = false;
            }
            if (!common) {
                common = stab;
            }
            spans.push_back(span);
            span_c.push_back(cval);
        }
    }
    std::vector<LatticeVector> R(common->begin(), common->end());
    rep.stabilizing_roots = R.size();
    auto simple = simple_system(R);
    rep.subsystem_rank = simple.size();
    rep.subsystem_type = classify_simply_laced(simple, L);

    auto rc = detail::root_cosets(R);
    for (std::size_t s = 0; s < spans.size(); ++s) {
        D8SpanCheck chk;
        chk.representative = spans[s].front();
        chk.c = span_c[s];
        chk.dim = spans[s].size();
        chk.connected = detail::v_orbits(L, rc, spans[s]).size() == 1;
        std::vector<Matrix> gens;
        for (Coset a : rc) {
            gens.push_back(detail::restrict_xhat(L, a, spans[s]));
        }
        chk.algebra_dim = detail::generated_algebra_dim(gens);
        rep.spans.push_back(chk);
    }
    auto e8_orbits = detail::v_orbits(L, detail::root_cosets(L.positive_roots()), all);
    rep.halves_joined_by_e8 = e8_orbits.size() == 16 &&
                              std::all_of(e8_orbits.begin(), e8_orbits.end(), [](const auto& o) { return o.size() == 16; });
    return rep;
}

}  // namespace tvo
