#include "tvo/affine.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace tvo;

namespace {

RootLattice lattice(const char* name) { return RootLattice::build(AlgebraKind::parse(name)); }

Matrix zm(const RootLattice& L, ZKind k, int j, int l) { return zero_mode_matrix(L, make_z(L, k, j, l)); }

int nu_simple(const RootLattice& L, int a, int b) { return L.nu(L.simple_root(a), L.simple_root(b)); }

// diagonal entry of a coset-basis matrix on v(c)
Scalar v_eigenvalue(const RootLattice& L, const Matrix& m, const SignTuple& c)
{
    Matrix mv = coset_to_v_matrix(L, m);
    return mv(c.neg_mask(), c.neg_mask());
}

}  // namespace

TEST(ZElements, ExpansionsAreRoots)
{
    for (const char* name : {"D4", "D5", "D6", "D7", "D8"}) {
        auto L = lattice(name);
        int n = L.rank();
        for (int j = 1; j <= n - 1; ++j) {
            for (int k = j; k <= n - 1; ++k) {
                for (ZKind kind : {ZKind::Z, ZKind::Zprime}) {
                    auto z = make_z(L, kind, j, k);
                    ASSERT_EQ(z.terms.size(), 2u);
                    for (const auto& [c, alpha] : z.terms) {
                        EXPECT_TRUE(L.is_root(alpha)) << z.name();
                    }
                }
            }
        }
    }
    auto A = lattice("A4");
    EXPECT_EQ(make_z(A, ZKind::Y, 2, 4).terms.front().second, (LatticeVector{0, 1, 1, 1}));
}

TEST(ZElements, TailShapes)
{
    auto L = lattice("D6");
    // k <= n-3: alpha_1 + alpha_2 and alpha_1 + alpha_2 + 2(alpha_3 + alpha_4) + alpha_5 + alpha_6
    auto z = make_z(L, ZKind::Z, 1, 2);
    EXPECT_EQ(z.terms[0].second, (LatticeVector{1, 1, 0, 0, 0, 0}));
    EXPECT_EQ(z.terms[1].second, (LatticeVector{1, 1, 2, 2, 1, 1}));
    EXPECT_EQ(z.terms[1].first, Scalar(1));
    EXPECT_EQ(make_z(L, ZKind::Zprime, 1, 2).terms[1].first, Scalar(-1));
    // j = k = n-1: Y_{alpha_5} - Y_{alpha_6}
    auto w = make_z(L, ZKind::Z, 5, 5);
    EXPECT_EQ(w.terms[1].second, L.simple_root(6));
    EXPECT_EQ(w.terms[1].first, Scalar(-1));
    EXPECT_EQ(make_z(L, ZKind::Zprime, 5, 5).terms[1].first, Scalar(1));
}

TEST(ZElements, RangeErrors)
{
    auto L = lattice("D5");
    EXPECT_THROW(make_z(L, ZKind::Z, 3, 2), std::invalid_argument);
    EXPECT_THROW(make_z(L, ZKind::Z, 1, 5), std::invalid_argument);
    EXPECT_THROW(make_z(L, ZKind::Y, 1, 2), std::invalid_argument);
    EXPECT_THROW(make_z(lattice("A3"), ZKind::Z, 1, 1), std::invalid_argument);
}

TEST(ZBrackets, AllFamiliesHold)
{
    std::map<std::string, long> expected{{"D4", 84}, {"D5", 220}, {"D6", 465}};
    for (const auto& [name, checks] : expected) {
        auto rep = verify_z_brackets(lattice(name.c_str()));
        EXPECT_TRUE(rep.ok()) << name;
        EXPECT_EQ(rep.failures, 0) << name;
        EXPECT_EQ(rep.checks, checks) << name;
        for (const char* fam : {"z_zprime_commute", "common_start", "common_start_prime", "common_end",
                                "common_end_prime", "adjacent", "adjacent_prime", "adjacent_reversed",
                                "adjacent_reversed_prime"}) {
            EXPECT_GT(rep.checks_by_family[fam], 0) << name << " " << fam;
        }
    }
}

TEST(ZBrackets, NamedExamples)
{
    auto D4 = lattice("D4");
    EXPECT_TRUE(commutator(zm(D4, ZKind::Z, 1, 1), zm(D4, ZKind::Zprime, 2, 2)).is_zero());

    auto D5 = lattice("D5");
    Matrix lhs = commutator(zm(D5, ZKind::Z, 1, 2), zm(D5, ZKind::Z, 1, 3));
    EXPECT_EQ(lhs, Scalar(-2 * nu_simple(D5, 2, 3)) * zm(D5, ZKind::Z, 3, 3));
    EXPECT_FALSE(lhs == Scalar(2 * nu_simple(D5, 2, 3)) * zm(D5, ZKind::Z, 3, 3));

    auto D6 = lattice("D6");
    EXPECT_EQ(commutator(zm(D6, ZKind::Z, 1, 2), zm(D6, ZKind::Z, 3, 4)),
              Scalar(2 * nu_simple(D6, 2, 3)) * zm(D6, ZKind::Z, 1, 4));
}

TEST(ZBrackets, RejectsOtherSeries) { EXPECT_THROW(verify_z_brackets(lattice("A4")), std::invalid_argument); }

TEST(Chevalley, NodeLayout)
{
    auto d4 = build_chevalley(lattice("D4"));
    EXPECT_EQ(d4.diagram, "D^(1)_4");
    ASSERT_EQ(d4.nodes.size(), 5u);
    EXPECT_EQ(d4.nodes[3].label, "1'");
    EXPECT_FALSE(d4.nodes[0].e.zero_mode);
    EXPECT_TRUE(d4.nodes[0].h.zero_mode);
    EXPECT_EQ(build_chevalley(lattice("D5")).diagram, "D^(2)_5");
    EXPECT_EQ(build_chevalley(lattice("A3")).diagram, "A^(2)_3");
    EXPECT_EQ(build_chevalley(lattice("A4")).nodes.size(), 3u);
}

TEST(Chevalley, Preconditions)
{
    EXPECT_THROW(build_chevalley(lattice("E6")), std::invalid_argument);
    EXPECT_THROW(build_chevalley(lattice("A2")), std::invalid_argument);
    Orientation o = default_orientation(AlgebraKind(Series::D, 4));
    std::swap(o.arrows[0].first, o.arrows[0].second);
    EXPECT_THROW(build_chevalley(RootLattice::build(AlgebraKind(Series::D, 4), o)), std::invalid_argument);
}

TEST(Chevalley, NodeZeroEigenvalue)
{
    for (const char* name : {"D4", "D5", "A3", "A4"}) {
        auto L = lattice(name);
        auto cs = build_chevalley(L);
        for (const auto& c : SignTuple::all(L.rank())) {
            EXPECT_EQ(Scalar(2) * v_eigenvalue(L, cs.nodes[0].h.matrix, c), Scalar(1 - c(1))) << name << c.str();
        }
    }
}

TEST(Chevalley, NamedCartanElements)
{
    auto A3 = lattice("A3");
    auto cs = build_chevalley(A3);
    Matrix expect = Scalar::i() * (zm(A3, ZKind::Y, 1, 1) + zm(A3, ZKind::Y, 3, 3));
    EXPECT_EQ(cs.node("2").h.matrix, expect);

    auto A4 = lattice("A4");
    auto c4 = build_chevalley(A4);
    EXPECT_EQ(c4.node("2").h.matrix, Scalar(2) * Scalar::i() * zm(A4, ZKind::Y, 3, 3));
    for (const auto& c : SignTuple::all(4)) {
        EXPECT_EQ(Scalar(2) * v_eigenvalue(A4, c4.node("2").h.matrix, c), Scalar(2 * c(3)));
    }
}

TEST(Chevalley, NodeZeroKillsDegreeZero)
{
    auto L = lattice("D4");
    auto cs = build_chevalley(L);
    GeneratorAction act(L);
    for (const auto& c : SignTuple::all(4)) {
        auto v = StateVector::from_group_alg(v_basis(L, c));
        EXPECT_TRUE(act.apply(cs.nodes[0].e, v).is_zero());
        // h_0 eigenvalue (1 - c_1)/2: weight zero forces f_0 v = 0 as well
        EXPECT_EQ(act.apply(cs.nodes[0].f, v).is_zero(), c(1) == 1) << c.str();
    }
}

TEST(Chevalley, LowDegreeStates)
{
    auto L = lattice("D4");
    EXPECT_EQ(low_degree_states(L, 0).size(), 16u);
    EXPECT_EQ(low_degree_states(L, 2).size(), 16u * (1 + 4 + 10));
    EXPECT_EQ(low_degree_states(L, 3).size(), 16u * (1 + 4 + 10 + 20 + 4));
}

TEST(Cartan, TargetsAsDrawn)
{
    auto d4 = affine_cartan_target(build_chevalley(lattice("D4")));
    for (std::size_t j = 1; j < 5; ++j) {
        EXPECT_EQ(d4.a[0][j], -1);
        EXPECT_EQ(d4.a[j][0], -1);
    }
    auto d5 = affine_cartan_target(build_chevalley(lattice("D5")));
    // 2 <= 1 - 0 - 1' => 2': the ends are short
    EXPECT_EQ(d5.a[2][1], -2);
    EXPECT_EQ(d5.a[1][2], -1);
    EXPECT_EQ(d5.a[4][3], -2);
    auto a4 = affine_cartan_target(build_chevalley(lattice("A4")));
    EXPECT_EQ(a4.a[1][0], -2);
    EXPECT_EQ(a4.a[2][1], -2);
    auto a3 = affine_cartan_target(build_chevalley(lattice("A3")));
    EXPECT_EQ(a3.a[1][0], -2);
    EXPECT_EQ(a3.a[2][0], -2);
    EXPECT_EQ(a3.a[1][2], 0);
}

TEST(Cartan, ReadoutMatchesAffineDiagrams)
{
    for (const char* name : {"D4", "D5", "A3", "A4", "A5"}) {
        auto L = lattice(name);
        auto cs = build_chevalley(L);
        auto rep = verify_cartan_matrix(L, cs);
        EXPECT_TRUE(rep.ok()) << name;
        EXPECT_TRUE(rep.matches_target) << name;
        EXPECT_EQ(rep.failures, 0) << name;
        for (const auto& f : rep.failed) {
            ADD_FAILURE() << name << " " << f;
        }
        for (const auto& c : rep.ef_factor) {
            ASSERT_TRUE(c.has_value());
            EXPECT_EQ(*c, Scalar(1));
        }
        EXPECT_EQ(rep.checks, 4 * static_cast<long>(cs.nodes.size() * cs.nodes.size()));
    }
}

TEST(Cartan, PrintedFormulasDeviate)
{
    // D^(1): the four-term e_j, f_j as printed give [e_j, f_j] = 4 h_j; the readout itself is unaffected
    auto D4 = lattice("D4");
    auto d4 = verify_cartan_matrix(D4, build_chevalley(D4, ChevalleyReading::printed));
    EXPECT_TRUE(d4.matches_target);
    EXPECT_EQ(d4.failures, 4);
    for (std::size_t i = 1; i < 5; ++i) {
        EXPECT_EQ(*d4.ef_factor[i], Scalar(4));
    }
    // double-bond end as printed: e_m fails to be a root vector
    auto A4 = lattice("A4");
    auto a4 = verify_cartan_matrix(A4, build_chevalley(A4, ChevalleyReading::printed));
    EXPECT_FALSE(a4.matches_target);
    EXPECT_EQ(a4.failures, 6);
    EXPECT_FALSE(a4.readout[0][2].has_value());
    auto D5 = lattice("D5");
    auto d5 = verify_cartan_matrix(D5, build_chevalley(D5, ChevalleyReading::printed));
    EXPECT_FALSE(d5.matches_target);
    EXPECT_EQ(d5.failures, 14);
}

TEST(Cartan, ReadingsShareCartanElements)
{
    for (const char* name : {"D4", "D5", "A4"}) {
        auto L = lattice(name);
        auto p = build_chevalley(L, ChevalleyReading::printed);
        auto c = build_chevalley(L, ChevalleyReading::corrected);
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            EXPECT_EQ(p.nodes[i].h.matrix, c.nodes[i].h.matrix) << name << " " << p.nodes[i].label;
        }
    }
}

TEST(Singular, D4)
{
    auto rep = find_singular_vectors(lattice("D4"));
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.scanned, 16);
    ASSERT_EQ(rep.vectors.size(), 8u);
    for (const auto& v : rep.vectors) {
        EXPECT_EQ(v.c(1), 1);
        EXPECT_TRUE(v.annihilated);
        int a = v.c(3), b = v.c(4);
        // labels read from the operators, which agree with the closed-form eigenvalues
        std::string expect = a == 1 ? (b == 1 ? "Lambda_2'" : "Lambda_2") : (b == 1 ? "Lambda_1" : "Lambda_1'");
        EXPECT_EQ(v.weight, expect) << v.c.str();
        // the classification table swaps the two c_3 = -1 rows
        EXPECT_EQ(v.weight == v.theorem_weight, a == 1) << v.c.str();
    }
    EXPECT_EQ(rep.table_weight_deviations, 4);
}

TEST(Singular, A3AndA4)
{
    auto a3 = find_singular_vectors(lattice("A3"));
    EXPECT_TRUE(a3.ok());
    ASSERT_EQ(a3.vectors.size(), 4u);
    for (const auto& v : a3.vectors) {
        EXPECT_EQ(v.weight, v.c(3) == 1 ? "Lambda_2" : "Lambda_1");
    }
    EXPECT_EQ(a3.table_weight_deviations, 0);
    auto a4 = find_singular_vectors(lattice("A4"));
    EXPECT_TRUE(a4.ok());
    ASSERT_EQ(a4.vectors.size(), 4u);
    for (const auto& v : a4.vectors) {
        EXPECT_EQ(v.weight, "Lambda_2");
        EXPECT_EQ(v.c(1), 1);
        EXPECT_EQ(v.c(3), 1);
    }
}

TEST(Singular, LargerCases)
{
    std::map<std::string, std::pair<std::size_t, long>> expected{
        {"D5", {8, 0}}, {"D6", {16, 8}}, {"A5", {8, 0}}, {"A6", {8, 0}}};
    for (const auto& [name, want] : expected) {
        auto rep = find_singular_vectors(lattice(name.c_str()));
        EXPECT_TRUE(rep.ok()) << name;
        EXPECT_EQ(rep.vectors.size(), want.first) << name;
        EXPECT_EQ(rep.table_weight_deviations, want.second) << name;
    }
}

TEST(Singular, EigenvalueRange)
{
    for (const char* name : {"D4", "D5", "A3", "A4"}) {
        auto L = lattice(name);
        for (const auto& c : SignTuple::all(L.rank())) {
            for (const auto& x : closed_form_h_eigenvalues(L.kind(), c)) {
                Rational twice = Rational(2) * x;
                EXPECT_TRUE(twice.is_integer());
                EXPECT_FALSE(twice < Rational(-2));
                EXPECT_FALSE(Rational(2) < twice);
            }
        }
    }
}

TEST(Decompose, AandD)
{
    struct Case {
        const char* name;
        std::size_t modules;
        std::size_t dim;
    };
    for (const auto& cs : {Case{"D4", 8, 2}, Case{"D5", 8, 4}, Case{"D6", 16, 4}, Case{"A3", 4, 2},
                           Case{"A4", 4, 4}, Case{"A5", 8, 4}}) {
        auto rep = decompose(lattice(cs.name));
        EXPECT_TRUE(rep.ok()) << cs.name;
        ASSERT_EQ(rep.modules.size(), cs.modules) << cs.name;
        for (const auto& m : rep.modules) {
            EXPECT_EQ(m.basis.size(), cs.dim) << cs.name;
            EXPECT_TRUE(m.matches_theorem_span) << cs.name;
            EXPECT_EQ(m.weight.rfind("Lambda_", 0), 0u) << cs.name;
        }
        EXPECT_EQ(rep.certificate.total_dim, std::size_t{1} << lattice(cs.name).rank());
    }
}

TEST(Decompose, ESeries)
{
    struct Case {
        const char* name;
        std::size_t modules;
        std::size_t dim;
    };
    for (const auto& cs : {Case{"E6", 8, 8}, Case{"E7", 16, 8}, Case{"E8", 16, 16}}) {
        auto rep = decompose(lattice(cs.name));
        EXPECT_TRUE(rep.ok()) << cs.name;
        ASSERT_EQ(rep.modules.size(), cs.modules);
        for (const auto& m : rep.modules) {
            EXPECT_EQ(m.basis.size(), cs.dim);
            EXPECT_EQ(m.weight.front(), '(');
        }
    }
}

TEST(Decompose, InvarianceCheckDetectsBrokenSpan)
{
    auto L = lattice("D4");
    auto rep = decompose(L);
    auto cosets = detail::root_cosets(L.positive_roots());
    std::vector<SignTuple> half{rep.modules.front().basis.front()};
    EXPECT_FALSE(detail::span_invariant(L, cosets, half));
    EXPECT_TRUE(detail::span_invariant(L, cosets, rep.modules.front().basis));
}

TEST(Decompose, TheoremSpanPredicate)
{
    auto kind = AlgebraKind(Series::D, 4);
    SignTuple v0 = SignTuple::from_values({1, 1, 1, 1});
    int members = 0;
    for (const auto& b : SignTuple::all(4)) {
        members += in_theorem_span(kind, v0, b);
    }
    EXPECT_EQ(members, 2);
    EXPECT_TRUE(in_theorem_span(kind, v0, SignTuple::from_values({-1, 1, -1, -1})));
}

TEST(Conserved, ESeriesFunctionals)
{
    for (const char* name : {"E6", "E7", "E8"}) {
        auto rep = verify_conserved_quantities(lattice(name));
        EXPECT_TRUE(rep.ok()) << name;
    }
    // c_2 is not conserved in E6: some simple root flips it
    auto L = lattice("E6");
    bool flipped = false;
    for (int j = 1; j <= 6; ++j) {
        for (const auto& c : SignTuple::all(6)) {
            flipped = flipped || xhat_v_action(L, L.simple_root(j).coset(), c).target(2) != c(2);
        }
    }
    EXPECT_TRUE(flipped);
}

TEST(Pauli, ClassStructureAndProperties)
{
    auto L = lattice("D4");
    for (const auto& c : SignTuple::all(4)) {
        auto rep = pauli_example(L, c);
        EXPECT_TRUE(rep.ok()) << c.str();
        EXPECT_TRUE(rep.span_invariant);
        EXPECT_EQ(rep.entries.size(), 12u);
        EXPECT_EQ(rep.class_mismatches, 0);
        EXPECT_EQ(rep.property_i_violations, 0);
        EXPECT_EQ(rep.property_ii_violations, 0);
    }
}

TEST(Pauli, DiagonalClass)
{
    auto L = lattice("D4");
    SignTuple c = SignTuple::from_values({-1, 1, 1, -1});
    auto rep = pauli_example(L, c);
    for (const auto& e : rep.entries) {
        if (e.root_name == "e1-e2") {
            EXPECT_EQ(e.found_class, 3);
            EXPECT_EQ(e.found_coeff, -Scalar::i() * Scalar(c(1)));
        }
    }
}

TEST(Pauli, SignDeviationsMatchGolden)
{
    std::ifstream in(std::string(TVO_GOLDEN_DIR) + "/pauli_deviations.txt");
    ASSERT_TRUE(in.good());
    std::map<std::string, int> golden;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string root;
        int count = 0;
        ls >> root >> count;
        golden[root] = count;
    }
    auto L = lattice("D4");
    std::map<std::string, int> found;
    for (const auto& c : SignTuple::all(4)) {
        for (const auto& e : pauli_example(L, c).entries) {
            if (!e.sign_matches) {
                ++found[e.root_name];
                EXPECT_EQ(e.found_coeff, -e.table_coeff);
            }
        }
    }
    EXPECT_EQ(found, golden);
}

TEST(RootSubsystems, Classification)
{
    for (const char* name : {"A3", "D5", "E6", "E7", "E8"}) {
        auto L = lattice(name);
        auto simple = simple_system(L.roots());
        EXPECT_EQ(simple.size(), static_cast<std::size_t>(L.rank()));
        EXPECT_EQ(classify_simply_laced(simple, L), std::string(name));
    }
    auto L = lattice("D4");
    EXPECT_EQ(classify_simply_laced({L.simple_root(1), L.simple_root(3)}, L), "A1+A1");
}

TEST(D8InE8, StabilizerIsD8AndSpansIrreducible)
{
    auto rep = check_d8_in_e8(lattice("E8"));
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.stabilizing_roots, 112u);
    EXPECT_EQ(rep.subsystem_type, "D8");
    EXPECT_EQ(rep.subsystem_rank, 8u);
    EXPECT_TRUE(rep.same_for_all_spans);
    EXPECT_TRUE(rep.halves_joined_by_e8);
    ASSERT_EQ(rep.spans.size(), 32u);
    for (const auto& s : rep.spans) {
        EXPECT_EQ(s.dim, 8u);
        EXPECT_TRUE(s.connected);
        EXPECT_EQ(s.algebra_dim, 64u);
    }
}

TEST(D8InE8, AlgebraDimensionDetectsReducible)
{
    // diagonal generators only: the generated algebra is the diagonal one
    Matrix d(2, 2);
    d(0, 0) = Scalar(1);
    d(1, 1) = Scalar(-1);
    EXPECT_EQ(detail::generated_algebra_dim({d}), 2u);
    Matrix x(2, 2);
    x(0, 1) = Scalar(1);
    x(1, 0) = Scalar(1);
    EXPECT_EQ(detail::generated_algebra_dim({d, x}), 4u);
}

TEST(Decompose, OtherOrientationsKeepTheCertificate)
{
    for (const char* name : {"D4", "A4", "E6"}) {
        auto kind = AlgebraKind::parse(name);
        Orientation o = default_orientation(kind);
        std::swap(o.arrows[0].first, o.arrows[0].second);
        auto L = RootLattice::build(kind, o);
        EXPECT_FALSE(L.has_default_orientation());
        auto rep = decompose(L);
        EXPECT_FALSE(rep.theorem_checked);
        EXPECT_TRUE(rep.ok()) << name;
        EXPECT_EQ(rep.certificate.total_dim, std::size_t{1} << L.rank());
    }
    EXPECT_TRUE(decompose(lattice("D4")).theorem_checked);
}
