#include "tvo/lattice.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

using namespace tvo;

namespace {

// Positive roots by brute force over the box [0, bound]^n.
std::set<LatticeVector> brute_force_positive_roots(const RootLattice& L, int bound)
{
    int n = L.rank();
    std::set<LatticeVector> out;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    while (true) {
        std::size_t k = 0;
        while (k < c.size() && c[k] == bound) {
            c[k] = 0;
            ++k;
        }
        if (k == c.size()) {
            break;
        }
        ++c[k];
        int norm = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                norm += c[a] * L.cartan(a + 1, b + 1) * c[b];
            }
        }
        if (norm == 2) {
            out.insert(LatticeVector(c));
        }
    }
    return out;
}

}  // namespace

TEST(Lattice, AlgebraKindParsing)
{
    EXPECT_EQ(AlgebraKind::parse("D4"), AlgebraKind(Series::D, 4));
    EXPECT_EQ(AlgebraKind::parse("e_8"), AlgebraKind(Series::E, 8));
    EXPECT_THROW(AlgebraKind::parse("E9"), std::invalid_argument);
    EXPECT_THROW(AlgebraKind::parse("D2"), std::invalid_argument);
    EXPECT_THROW(AlgebraKind::parse("A0"), std::invalid_argument);
    EXPECT_THROW(AlgebraKind::parse("B3"), std::invalid_argument);
    EXPECT_THROW(AlgebraKind::parse("D"), std::invalid_argument);
}

TEST(Lattice, DefaultOrientationExamples)
{
    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    EXPECT_EQ(d4.nu(d4.simple_root(1), d4.simple_root(2)), 1);
    EXPECT_EQ(d4.nu(d4.simple_root(2), d4.simple_root(1)), -1);

    auto a1 = RootLattice::build(AlgebraKind(Series::A, 1));
    EXPECT_EQ(a1.nu_entry(1, 1), -1);
    EXPECT_TRUE(a1.orientation().arrows.empty());

    auto e8 = RootLattice::build(AlgebraKind(Series::E, 8));
    std::set<std::pair<int, int>> arrows(e8.orientation().arrows.begin(), e8.orientation().arrows.end());
    std::set<std::pair<int, int>> pictured = {{2, 1}, {2, 3}, {4, 3}, {4, 5}, {6, 5}, {6, 7}, {8, 5}};
    EXPECT_EQ(arrows, pictured);
    for (auto [j, k] : pictured) {
        EXPECT_EQ(e8.nu_entry(j, k), 1);
        EXPECT_EQ(e8.nu_entry(k, j), -1);
    }
}

TEST(Lattice, DOrientationsFollowFigures)
{
    auto d6 = RootLattice::build(AlgebraKind(Series::D, 6));
    std::set<std::pair<int, int>> even(d6.orientation().arrows.begin(), d6.orientation().arrows.end());
    EXPECT_EQ(even, (std::set<std::pair<int, int>>{{1, 2}, {3, 2}, {3, 4}, {5, 4}, {6, 4}}));
    auto d5 = RootLattice::build(AlgebraKind(Series::D, 5));
    std::set<std::pair<int, int>> odd(d5.orientation().arrows.begin(), d5.orientation().arrows.end());
    EXPECT_EQ(odd, (std::set<std::pair<int, int>>{{1, 2}, {3, 2}, {3, 4}, {3, 5}}));
    auto a4 = RootLattice::build(AlgebraKind(Series::A, 4));
    std::set<std::pair<int, int>> a(a4.orientation().arrows.begin(), a4.orientation().arrows.end());
    EXPECT_EQ(a, (std::set<std::pair<int, int>>{{1, 2}, {3, 2}, {3, 4}}));
}

TEST(Lattice, InnerProductExamples)
{
    auto a2 = RootLattice::build(AlgebraKind(Series::A, 2));
    EXPECT_EQ(a2.inner(a2.simple_root(1), a2.simple_root(2)), -1);
    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    for (int j = 1; j <= 4; ++j) {
        EXPECT_EQ(d4.inner(d4.simple_root(j), d4.simple_root(j)), 2);
    }
    // (a1|a2) + (a1|a4) + (a2|a2) + (a2|a4) = -1 + 0 + 2 - 1
    EXPECT_EQ(d4.inner(LatticeVector{1, 1, 0, 0}, LatticeVector{0, 1, 0, 1}), 0);
    EXPECT_EQ(d4.inner(LatticeVector{1, 1, 0, 0}, LatticeVector{0, 0, 1, 1}), -2);
}

TEST(Lattice, RootCountsMatchBruteForce)
{
    struct Case {
        AlgebraKind kind;
        int bound;
        std::size_t count;
    };
    std::vector<Case> cases = {
        {AlgebraKind(Series::A, 2), 1, 6},  {AlgebraKind(Series::A, 5), 1, 30}, {AlgebraKind(Series::D, 4), 2, 24},
        {AlgebraKind(Series::D, 6), 2, 60}, {AlgebraKind(Series::E, 6), 3, 72}, {AlgebraKind(Series::E, 7), 4, 126},
        {AlgebraKind(Series::E, 8), 6, 240},
    };
    for (const auto& cs : cases) {
        auto L = RootLattice::build(cs.kind);
        EXPECT_EQ(L.roots().size(), cs.count) << cs.kind.name();
        auto brute = brute_force_positive_roots(L, cs.bound);
        auto pos = L.positive_roots();
        EXPECT_EQ(std::set<LatticeVector>(pos.begin(), pos.end()), brute) << cs.kind.name();
        EXPECT_EQ(2 * brute.size(), cs.count) << cs.kind.name();
    }
}

TEST(Lattice, RootCountFormulas)
{
    for (int n = 1; n <= 7; ++n) {
        EXPECT_EQ(RootLattice::build(AlgebraKind(Series::A, n)).roots().size(), static_cast<std::size_t>(n * (n + 1)));
    }
    for (int n = 3; n <= 8; ++n) {
        EXPECT_EQ(RootLattice::build(AlgebraKind(Series::D, n)).roots().size(), static_cast<std::size_t>(2 * n * (n - 1)));
    }
}

TEST(Lattice, NuExamples)
{
    auto d5 = RootLattice::build(AlgebraKind(Series::D, 5));
    LatticeVector zero(5);
    for (const auto& b : d5.roots()) {
        EXPECT_EQ(d5.nu(zero, b), 1);
        EXPECT_EQ(d5.nu(2 * d5.simple_root(1), b), 1);
    }
    for (int j = 1; j <= 5; ++j) {
        EXPECT_EQ(d5.nu(d5.simple_root(j), d5.simple_root(j)), -1);
    }
}

TEST(Lattice, NuMatchesProductOverTable)
{
    auto e7 = RootLattice::build(AlgebraKind(Series::E, 7));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 300; ++t) {
        LatticeVector a(7);
        LatticeVector b(7);
        for (int j = 1; j <= 7; ++j) {
            a(j) = coef(rng);
            b(j) = coef(rng);
        }
        int prod = 1;
        for (int j = 1; j <= 7; ++j) {
            for (int l = 1; l <= 7; ++l) {
                int e = a(j) * b(l);
                if (e % 2 != 0 && e7.nu_entry(j, l) == -1) {
                    prod = -prod;
                }
            }
        }
        ASSERT_EQ(e7.nu(a, b), prod);
    }
}

TEST(Lattice, AsymmetryAxiomsOnRootsAndSimplePairSums)
{
    for (auto kind : {AlgebraKind(Series::A, 4), AlgebraKind(Series::D, 5), AlgebraKind(Series::E, 6)}) {
        auto L = RootLattice::build(kind);
        std::vector<LatticeVector> vs = L.roots();
        for (int j = 1; j <= L.rank(); ++j) {
            for (int k = 1; k <= L.rank(); ++k) {
                vs.push_back(L.simple_root(j) + L.simple_root(k));
            }
        }
        for (const auto& a : vs) {
            int half = L.inner(a, a) / 2;
            ASSERT_EQ(L.nu(a, a), half % 2 == 0 ? 1 : -1);
            for (const auto& b : vs) {
                int s = L.inner(a, b) % 2 == 0 ? 1 : -1;
                ASSERT_EQ(L.nu(a, b), s * L.nu(b, a));
            }
        }
    }
}

TEST(Lattice, Bimultiplicativity)
{
    auto d6 = RootLattice::build(AlgebraKind(Series::D, 6));
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, d6.roots().size() - 1);
    for (int t = 0; t < 500; ++t) {
        const auto& a = d6.roots()[pick(rng)];
        const auto& a2 = d6.roots()[pick(rng)];
        const auto& b = d6.roots()[pick(rng)];
        ASSERT_EQ(d6.nu(a + a2, b), d6.nu(a, b) * d6.nu(a2, b));
        ASSERT_EQ(d6.nu(b, a + a2), d6.nu(b, a) * d6.nu(b, a2));
    }
}

TEST(Lattice, EpsilonRoots)
{
    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    EXPECT_EQ(d4.epsilon_root(1, 2, -1), d4.simple_root(1));
    EXPECT_EQ(d4.epsilon_root(3, 4, 1), d4.simple_root(4));
    EXPECT_EQ(d4.epsilon_root(1, 2, 1), (LatticeVector{1, 2, 1, 1}));
    EXPECT_THROW(RootLattice::build(AlgebraKind(Series::A, 3)).epsilon_root(1, 2, 1), std::invalid_argument);
    for (int n = 3; n <= 7; ++n) {
        auto L = RootLattice::build(AlgebraKind(Series::D, n));
        std::set<LatticeVector> eps;
        for (int j = 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                eps.insert(L.epsilon_root(j, k, 1));
                eps.insert(L.epsilon_root(j, k, -1));
            }
        }
        auto pos = L.positive_roots();
        EXPECT_EQ(eps, std::set<LatticeVector>(pos.begin(), pos.end())) << n;
    }
}

TEST(Lattice, OrientationFileParsing)
{
    std::istringstream good("# custom\n2 1\n2 3\n4 2 # fork\n");
    auto o = Orientation::parse(good);
    auto L = RootLattice::build(AlgebraKind(Series::D, 4), o);
    EXPECT_EQ(L.nu_entry(2, 1), 1);
    EXPECT_EQ(L.nu_entry(1, 2), -1);

    std::istringstream missing("1 2\n3 2\n");
    EXPECT_THROW(RootLattice::build(AlgebraKind(Series::D, 4), Orientation::parse(missing)), std::invalid_argument);
    std::istringstream twice("1 2\n2 1\n3 2\n4 2\n");
    EXPECT_THROW(RootLattice::build(AlgebraKind(Series::D, 4), Orientation::parse(twice)), std::invalid_argument);
    std::istringstream nonedge("1 3\n");
    EXPECT_THROW(RootLattice::build(AlgebraKind(Series::A, 3), Orientation::parse(nonedge)), std::invalid_argument);
    std::istringstream junk("1 2 3\n");
    EXPECT_THROW(Orientation::parse(junk), std::invalid_argument);
}

TEST(Lattice, AsymmetryReportCountsViolations)
{
    for (auto kind : {AlgebraKind(Series::A, 1), AlgebraKind(Series::D, 3), AlgebraKind(Series::E, 8)}) {
        auto rep = check_asymmetry_axioms(RootLattice::build(kind));
        EXPECT_TRUE(rep.ok()) << kind.name();
        EXPECT_EQ(rep.violations, 0);
    }
    // A1: 2 roots plus 2 alpha_1: 3 diagonal + 9 pair checks
    EXPECT_EQ(check_asymmetry_axioms(RootLattice::build(AlgebraKind(Series::A, 1))).checks, 12);
}
