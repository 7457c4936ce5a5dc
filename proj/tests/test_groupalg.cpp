#include "tvo/groupalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tvo;

namespace {

GroupAlgElement random_element(int rank, std::mt19937& rng)
{
    std::uniform_int_distribution<int> coef(-4, 4);
    GroupAlgElement u(rank);
    for (Coset g = 0; g < (1u << rank); ++g) {
        u.add_term(g, Scalar(coef(rng), coef(rng), 0, 0));
    }
    return u;
}

// Matrix whose column c is v(c) in coset coordinates.
Matrix v_change_of_basis(const RootLattice& L)
{
    std::size_t dim = std::size_t{1} << L.rank();
    Matrix t(dim, dim);
    for (const auto& c : SignTuple::all(L.rank())) {
        auto v = v_basis(L, c);
        for (const auto& [g, s] : v.terms()) {
            t(g, c.neg_mask()) = s;
        }
    }
    return t;
}

}  // namespace

TEST(GroupAlg, XhatOnIdentity)
{
    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    for (const auto& a : d4.roots()) {
        auto r = xhat_apply(d4, a, GroupAlgElement::basis(4, 0));
        EXPECT_EQ(r, GroupAlgElement::basis(4, a.coset(), Scalar::half()));
    }
}

TEST(GroupAlg, VBasisExamples)
{
    auto a1 = RootLattice::build(AlgebraKind(Series::A, 1));
    GroupAlgElement expect1(1);
    expect1.add_term(0, Scalar(1));
    expect1.add_term(1, Scalar::i());
    EXPECT_EQ(v_basis(a1, SignTuple::from_values({1})), expect1);

    auto a2 = RootLattice::build(AlgebraKind(Series::A, 2));
    GroupAlgElement expect2(2);
    expect2.add_term(0, Scalar(1));
    expect2.add_term(1, Scalar::i());
    expect2.add_term(2, -Scalar::i());
    expect2.add_term(3, Scalar(1));
    EXPECT_EQ(v_basis(a2, SignTuple::from_values({1, -1})), expect2);
}

TEST(GroupAlg, VBasisIsABasis)
{
    for (auto kind : {AlgebraKind(Series::A, 3), AlgebraKind(Series::D, 5), AlgebraKind(Series::E, 6)}) {
        auto L = RootLattice::build(kind);
        EXPECT_EQ(v_change_of_basis(L).rank(), std::size_t{1} << L.rank()) << kind.name();
    }
}

TEST(GroupAlg, ToVCoordsExamples)
{
    auto a1 = RootLattice::build(AlgebraKind(Series::A, 1));
    auto x = to_v_coords(a1, GroupAlgElement::basis(1, 0));
    ASSERT_EQ(x.size(), 2u);
    EXPECT_EQ(x.at(SignTuple::from_values({1})), Scalar::half());
    EXPECT_EQ(x.at(SignTuple::from_values({-1})), Scalar::half());
    EXPECT_TRUE(to_v_coords(a1, GroupAlgElement(1)).empty());

    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    for (const auto& c : SignTuple::all(4)) {
        auto y = to_v_coords(d4, v_basis(d4, c));
        ASSERT_EQ(y.size(), 1u);
        EXPECT_EQ(y.begin()->first, c);
        EXPECT_EQ(y.begin()->second, Scalar(1));
    }
}

TEST(GroupAlg, ToVCoordsMatchesGaussianSolve)
{
    auto L = RootLattice::build(AlgebraKind(Series::D, 4));
    Matrix t = v_change_of_basis(L);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        auto u = random_element(4, rng);
        auto solved = t.solve(dense_cosets(u));
        auto fast = to_v_coords(L, u);
        for (const auto& c : SignTuple::all(4)) {
            auto it = fast.find(c);
            Scalar got = it == fast.end() ? Scalar() : it->second;
            ASSERT_EQ(got, solved[c.neg_mask()]);
        }
        EXPECT_EQ(from_v_coords(L, fast), u);
    }
}

TEST(GroupAlg, SimpleRootActionOnD4Example)
{
    auto d4 = RootLattice::build(AlgebraKind(Series::D, 4));
    for (const auto& c : SignTuple::all(4)) {
        auto lhs = Scalar(2) * xhat_apply(d4, d4.simple_root(2), v_basis(d4, c));
        SignTuple t = SignTuple::from_values({-c(1), c(2), -c(3), -c(4)});
        auto rhs = Scalar(0, -c(2), 0, 0) * v_basis(d4, t);
        EXPECT_EQ(lhs, rhs) << c.str();
    }
}

TEST(GroupAlg, CompositionRule)
{
    auto e6 = RootLattice::build(AlgebraKind(Series::E, 6));
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int t = 0; t < 40; ++t) {
        LatticeVector a(6);
        LatticeVector b(6);
        for (int j = 1; j <= 6; ++j) {
            a(j) = coef(rng);
            b(j) = coef(rng);
        }
        auto u = random_element(6, rng);
        auto lhs = Scalar(2) * xhat_apply(e6, a + b, u);
        auto rhs = Scalar(4 * e6.nu(a, b)) * xhat_apply(e6, a, xhat_apply(e6, b, u));
        ASSERT_EQ(lhs, rhs);
    }
}

TEST(GroupAlg, SquareOfRootActionIsMinusIdentity)
{
    auto d5 = RootLattice::build(AlgebraKind(Series::D, 5));
    std::mt19937 rng(29);
    auto u = random_element(5, rng);
    for (const auto& a : d5.roots()) {
        auto twice = Scalar(4) * xhat_apply(d5, a, xhat_apply(d5, a, u));
        ASSERT_EQ(twice, Scalar(-1) * u);
    }
}

TEST(GroupAlg, DependsOnlyOnCoset)
{
    auto a4 = RootLattice::build(AlgebraKind(Series::A, 4));
    std::mt19937 rng(31);
    auto u = random_element(4, rng);
    for (const auto& a : a4.roots()) {
        for (int j = 1; j <= 4; ++j) {
            auto shifted = a + 2 * a4.simple_root(j);
            ASSERT_EQ(xhat_apply(a4, a, u), xhat_apply(a4, shifted, u));
        }
    }
}

TEST(GroupAlg, StructuralVActionMatchesDefinition)
{
    for (auto kind : {AlgebraKind(Series::A, 5), AlgebraKind(Series::D, 4), AlgebraKind(Series::D, 5),
                      AlgebraKind(Series::E, 6)}) {
        auto L = RootLattice::build(kind);
        for (const auto& a : L.roots()) {
            for (const auto& c : SignTuple::all(L.rank())) {
                VImage im = xhat_v_action(L, a.coset(), c);
                auto oracle = xhat_apply(L, a, v_basis(L, c));
                ASSERT_EQ(oracle, im.phase * v_basis(L, im.target)) << kind.name() << " " << a.str() << c.str();
            }
        }
    }
}

TEST(GroupAlg, VMatrixMatchesBasisChange)
{
    auto L = RootLattice::build(AlgebraKind(Series::D, 4));
    for (const auto& a : L.positive_roots()) {
        EXPECT_EQ(coset_to_v_matrix(L, xhat_matrix(L, a.coset())), xhat_v_matrix(L, a.coset())) << a.str();
    }
}
