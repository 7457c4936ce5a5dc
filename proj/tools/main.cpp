// tvo: command-line front end for the verification, decomposition and character pipelines.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage error.
// Output: JSON {"payload": ..., "meta": ...} with sorted keys; payload is deterministic.

#include "tvo/action_tables.hpp"
#include "tvo/affine.hpp"
#include "tvo/charq.hpp"
#include "tvo/lattice.hpp"
#include "tvo/rep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace tvo;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr std::size_t kMaxListedFailures = 20;
constexpr std::size_t kAllPairsLimit = 600;  // ordered root pairs run in full below this count

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string algebra = "D4";
    std::string orientation;
    int window = 3;
    int order = 20;
    int pairs = -1;  // -1: all pairs when few enough, else a 50-pair sample; 0: all pairs
    unsigned seed = 1;
    int fock_degree = 2;
    std::string emit = "json";
    std::string output;
};

/// Section result: its JSON, a pass flag and an optional TSV rendering.
struct Section {
    json data;
    bool pass = true;
    std::string tsv;
};

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RootLattice build_lattice(const Config& cfg)
{
    AlgebraKind kind;
    try {
        kind = AlgebraKind::parse(cfg.algebra);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    try {
        if (cfg.orientation.empty()) {
            return RootLattice::build(kind);
        }
        return RootLattice::build(kind, Orientation::load(cfg.orientation));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

json orientation_json(const RootLattice& L)
{
    json arrows = json::array();
    for (auto [a, b] : L.orientation().arrows) {
        arrows.push_back({a, b});
    }
    return arrows;
}

json skipped(const std::string& why) { return {{"skipped", why}}; }

template <class T>
json limited(const std::vector<T>& items, const std::function<json(const T&)>& f)
{
    json out = json::array();
    for (std::size_t i = 0; i < items.size() && i < kMaxListedFailures; ++i) {
        out.push_back(f(items[i]));
    }
    return out;
}

json scalar_json(const std::optional<Scalar>& s) { return s ? json(s->str()) : json(nullptr); }

// ---------------------------------------------------------------- verify

Section asymmetry_section(const RootLattice& L)
{
    auto rep = check_asymmetry_axioms(L);
    return {{{"checks", rep.checks}, {"violations", rep.violations}, {"pass", rep.ok()}}, rep.ok(), {}};
}

VerificationPlan commutator_plan(const RootLattice& L, const Config& cfg)
{
    std::size_t total = L.roots().size() * L.roots().size();
    bool all = cfg.pairs == 0 || (cfg.pairs < 0 && total <= kAllPairsLimit) ||
               (cfg.pairs > 0 && static_cast<std::size_t>(cfg.pairs) >= total);
    if (all) {
        return VerificationPlan::all_pairs(L, cfg.window);
    }
    std::size_t count = cfg.pairs < 0 ? 50 : static_cast<std::size_t>(cfg.pairs);
    return VerificationPlan::sampled_pairs(L, count, cfg.seed, cfg.window);
}

Section commutator_section(const VerificationPlan& plan, std::size_t total_pairs)
{
    auto rep = verify_gamma_commutators(plan);
    std::map<std::string, std::pair<long, long>> by_tag;
    for (const auto& p : rep.pairs) {
        auto& t = by_tag[tag_name(p.tag)];
        ++t.first;
        t.second += p.failures;
    }
    json tags = json::object();
    for (const auto& [tag, t] : by_tag) {
        tags[tag] = {{"pairs", t.first}, {"failures", t.second}};
    }
    json d = {{"window", rep.window},
              {"pairs", rep.pairs.size()},
              {"pairs_available", total_pairs},
              {"test_states", rep.state_count},
              {"checks", rep.checks},
              {"nonzero_lhs", rep.nonzero_lhs},
              {"coset_points", rep.coset_points},
              {"by_case", tags},
              {"failure_count", rep.failures.size()},
              {"failures", limited<CommutatorFailure>(rep.failures,
                                                      [](const CommutatorFailure& f) {
                                                          return json{{"case", f.case_tag},
                                                                      {"alpha", f.alpha.str()},
                                                                      {"beta", f.beta.str()},
                                                                      {"m", f.m},
                                                                      {"k", f.k},
                                                                      {"state", f.state_id},
                                                                      {"lhs", f.lhs},
                                                                      {"rhs", f.rhs}};
                                                      })},
              {"reconciliation_checks", rep.reconciliation_checks},
              {"reconciliation_mismatches", rep.reconciliation_mismatches},
              {"pass", rep.all_pass()}};
    return {d, rep.all_pass(), {}};
}

Section heisenberg_section(const VerificationPlan& plan)
{
    auto rep = verify_heisenberg_vertex(plan.lattice, plan.window, plan.states);
    json d = {{"checks", rep.checks},
              {"l0_checks", rep.l0_checks},
              {"failure_count", rep.failures.size()},
              {"failures", limited<std::string>(rep.failures, [](const std::string& s) { return json(s); })},
              {"pass", rep.all_pass()}};
    return {d, rep.all_pass(), {}};
}

Section action_section(const RootLattice& L)
{
    auto rep = verify_action_lemmas(L);
    json formulas = json::array();
    for (const auto& f : rep.formulas) {
        if (f.mismatches > 0) {
            formulas.push_back({{"family", f.formula.family},
                                {"label", f.formula.label},
                                {"mismatches", f.mismatches},
                                {"tuples", f.tuples_checked},
                                {"sign_only", f.sign_only}});
        }
    }
    json d = {{"formulas", rep.formulas.size()},
              {"deviating_formulas", rep.deviating_formulas()},
              {"deviations", formulas},
              {"pass", rep.all_match()}};
    return {d, rep.all_match(), {}};
}

Section z_bracket_section(const RootLattice& L)
{
    auto rep = verify_z_brackets(L);
    json fams = json::object();
    for (const auto& [k, v] : rep.checks_by_family) {
        fams[k] = v;
    }
    json d = {{"checks", rep.checks},
              {"failures", rep.failures},
              {"by_family", fams},
              {"failed", limited<BracketCheck>(rep.failed,
                                               [](const BracketCheck& b) {
                                                   return json{{"family", b.family}, {"lhs", b.lhs}, {"rhs", b.rhs}};
                                               })},
              {"pass", rep.ok()}};
    return {d, rep.ok(), {}};
}

json cartan_json(const CartanReport& rep)
{
    json readout = json::array();
    for (const auto& row : rep.readout) {
        json r = json::array();
        for (const auto& x : row) {
            r.push_back(scalar_json(x));
        }
        readout.push_back(r);
    }
    json ef = json::array();
    for (const auto& x : rep.ef_factor) {
        ef.push_back(scalar_json(x));
    }
    return {{"diagram", rep.diagram},
            {"labels", rep.labels},
            {"readout", readout},
            {"target", rep.target},
            {"ef_factor", ef},
            {"matches_target", rep.matches_target},
            {"checks", rep.checks},
            {"failures", rep.failures},
            {"failed", limited<std::string>(rep.failed, [](const std::string& s) { return json(s); })},
            {"fock_states", rep.fock_states}};
}

bool has_chevalley(const RootLattice& L)
{
    const auto& k = L.kind();
    return (k.series == Series::D && k.rank >= 4) || (k.series == Series::A && k.rank >= 3);
}

Section chevalley_section(const RootLattice& L, int fock_degree)
{
    auto corrected = verify_cartan_matrix(L, build_chevalley(L, ChevalleyReading::corrected), fock_degree);
    auto printed = verify_cartan_matrix(L, build_chevalley(L, ChevalleyReading::printed), fock_degree);
    json d = cartan_json(corrected);
    d["reading"] = reading_name(ChevalleyReading::corrected);
    // the printed normalization is reported, not gated on
    d["printed_reading"] = {{"failures", printed.failures},
                            {"matches_target", printed.matches_target},
                            {"ef_factor", cartan_json(printed)["ef_factor"]}};
    d["pass"] = corrected.ok();
    return {d, corrected.ok(), {}};
}

Section verify_algebra(const RootLattice& L, const Config& cfg, json& timings)
{
    Section out;
    out.data = {{"algebra", L.kind().name()},
                {"orientation", orientation_json(L)},
                {"default_orientation", L.has_default_orientation()}};
    auto run = [&](const std::string& key, const std::function<Section()>& f) {
        Timer t;
        Section s = f();
        timings[key] = t.seconds();
        out.data[key] = s.data;
        out.pass = out.pass && s.pass;
    };
    run("asymmetry", [&] { return asymmetry_section(L); });
    VerificationPlan plan = commutator_plan(L, cfg);
    std::size_t total = L.roots().size() * L.roots().size();
    run("commutators", [&] { return commutator_section(plan, total); });
    run("heisenberg", [&] { return heisenberg_section(plan); });
    bool dflt = L.has_default_orientation();
    const std::string need = "requires the default orientation";
    run("action_tables", [&] { return dflt ? action_section(L) : Section{skipped(need), true, {}}; });
    run("z_brackets", [&] {
        if (L.kind().series != Series::D) {
            return Section{skipped("defined for the D series"), true, {}};
        }
        return dflt ? z_bracket_section(L) : Section{skipped(need), true, {}};
    });
    run("chevalley", [&] {
        if (!has_chevalley(L)) {
            return Section{skipped("defined for A_n (n >= 3) and D_n (n >= 4)"), true, {}};
        }
        return dflt ? chevalley_section(L, cfg.fock_degree) : Section{skipped(need), true, {}};
    });
    out.data["pass"] = out.pass;
    return out;
}

// ---------------------------------------------------------------- decompose

json eigen_json(const std::vector<Scalar>& xs)
{
    json out = json::array();
    for (const auto& x : xs) {
        out.push_back(x.str());
    }
    return out;
}

Section decompose_algebra(const RootLattice& L, json& timings)
{
    Section out;
    Timer t;
    out.data = {{"algebra", L.kind().name()},
                {"orientation", orientation_json(L)},
                {"default_orientation", L.has_default_orientation()}};
    std::ostringstream tsv;
    bool dflt = L.has_default_orientation();

    if (dflt && L.kind().series != Series::E) {
        auto sr = find_singular_vectors(L);
        json vecs = json::array();
        tsv << "# singular vectors\nc\t";
        for (const auto& l : sr.labels) {
            tsv << "h_" << l << "\t";
        }
        tsv << "weight\ttable_weight\n";
        for (const auto& v : sr.vectors) {
            vecs.push_back({{"c", v.c.str()},
                            {"eigenvalues", eigen_json(v.eigenvalues)},
                            {"weight", v.weight},
                            {"table_weight", v.theorem_weight},
                            {"annihilated", v.annihilated}});
            tsv << v.c.str() << "\t";
            for (const auto& x : v.eigenvalues) {
                tsv << x.str() << "\t";
            }
            tsv << v.weight << "\t" << v.theorem_weight << "\n";
        }
        out.data["singular"] = {{"labels", sr.labels},
                                {"scanned", sr.scanned},
                                {"h_diagonal", sr.h_diagonal},
                                {"closed_form_mismatches", sr.closed_form_mismatches},
                                {"criterion_mismatches", sr.criterion_mismatches},
                                {"unlabelled", sr.unlabelled},
                                {"table_weight_deviations", sr.table_weight_deviations},
                                {"vectors", vecs},
                                {"pass", sr.ok()}};
        out.pass = out.pass && sr.ok();
    }

    auto dec = decompose(L);
    json mods = json::array();
    tsv << "# submodules\ngenerator\tweight\tdim\tmatches_theorem_span\n";
    for (const auto& m : dec.modules) {
        json basis = json::array();
        for (const auto& b : m.basis) {
            basis.push_back(b.str());
        }
        mods.push_back({{"generator", m.generator.str()},
                        {"weight", m.weight},
                        {"dim", m.basis.size()},
                        {"basis", basis},
                        {"matches_theorem_span", m.matches_theorem_span}});
        tsv << m.generator.str() << "\t" << m.weight << "\t" << m.basis.size() << "\t"
            << (m.matches_theorem_span ? "yes" : "no") << "\n";
    }
    const auto& cert = dec.certificate;
    out.data["modules"] = mods;
    out.data["module_count"] = dec.modules.size();
    out.data["certificate"] = {{"disjoint", cert.disjoint},
                               {"invariant", cert.invariant},
                               {"total_dim", cert.total_dim},
                               {"complete", cert.complete}};
    out.data["theorem_checked"] = dec.theorem_checked;
    out.data["span_mismatches"] = dec.span_mismatches;
    out.data["singular_per_module_mismatches"] = dec.singular_per_module_mismatches;
    out.pass = out.pass && dec.ok();

    if (dflt && L.kind().series == Series::E) {
        auto cq = verify_conserved_quantities(L);
        out.data["conserved"] = {{"functionals", cq.functionals},
                                 {"checks", cq.checks},
                                 {"violations", cq.violations},
                                 {"pass", cq.ok()}};
        out.pass = out.pass && cq.ok();
    }
    if (dflt && L.kind().series == Series::E && L.rank() == 8) {
        auto d8 = check_d8_in_e8(L);
        json spans = json::array();
        for (const auto& s : d8.spans) {
            spans.push_back({{"representative", s.representative.str()},
                             {"b6b8", s.c},
                             {"dim", s.dim},
                             {"connected", s.connected},
                             {"algebra_dim", s.algebra_dim}});
        }
        out.data["d8_in_e8"] = {{"stabilizing_roots", d8.stabilizing_roots},
                                {"subsystem_type", d8.subsystem_type},
                                {"subsystem_rank", d8.subsystem_rank},
                                {"same_for_all_spans", d8.same_for_all_spans},
                                {"halves_joined_by_e8", d8.halves_joined_by_e8},
                                {"spans", spans},
                                {"pass", d8.ok()}};
        out.pass = out.pass && d8.ok();
    }
    out.data["pass"] = out.pass;
    out.tsv = tsv.str();
    timings["decompose"] = t.seconds();
    return out;
}

// ---------------------------------------------------------------- characters

json series_json(const QSeries& s)
{
    json out = json::array();
    for (const auto& c : s.coefficients()) {
        out.push_back(c.get_str());
    }
    return out;
}

Section characters(const Config& cfg, bool filter, json& timings)
{
    if (cfg.order < 1) {
        throw UsageError("--order must be at least 1");
    }
    Timer t;
    auto rep = verify_corollary_table(cfg.order);
    Section out;
    json rows = json::array();
    std::ostringstream tsv;
    tsv << "affine\talgebra\tspecial_index\tclosed_form\tdegree\tcomputed\tclosed_form_value\n";
    std::string want = filter ? AlgebraKind::parse(cfg.algebra).name() : "";
    for (const auto& r : rep.rows) {
        if (filter && r.algebra != want) {
            continue;
        }
        rows.push_back({{"affine", r.affine},
                        {"algebra", r.algebra},
                        {"ell", r.ell},
                        {"special_index", r.special_index},
                        {"closed_form", r.closed_form},
                        {"prefactor", r.prefactor},
                        {"exponent", r.exponent},
                        {"modules", r.modules},
                        {"modules_matching", r.modules_matching},
                        {"total_matches", r.total_matches},
                        {"first_mismatch", r.first_mismatch},
                        {"computed", series_json(r.computed)},
                        {"closed_form_series", series_json(r.expected)},
                        {"pass", r.holds()}});
        out.pass = out.pass && r.holds();
        for (int d = 0; d <= rep.order; ++d) {
            tsv << r.affine << "\t" << r.algebra << "\t" << r.special_index << "\t" << r.closed_form << "\t" << d
                << "\t" << r.computed[d].get_str() << "\t" << r.expected[d].get_str() << "\n";
        }
    }
    if (rows.empty()) {
        throw UsageError("no character table row is instantiated by " + cfg.algebra);
    }
    out.data = {{"order", rep.order}, {"rows", rows}, {"pass", out.pass}};
    out.tsv = tsv.str();
    timings["characters"] = t.seconds();
    return out;
}

// ---------------------------------------------------------------- example-d4

Section example_d4(json& timings)
{
    Timer t;
    RootLattice L = RootLattice::build(AlgebraKind::parse("D4"));
    Section out;
    json tuples = json::array();
    std::map<std::string, long> deviations;
    long class_mismatches = 0;
    std::ostringstream tsv;
    tsv << "c\troot\ttable_class\tfound_class\ttable_coeff\tfound_coeff\tsign_matches\n";
    for (const auto& c : SignTuple::all(4)) {
        auto rep = pauli_example(L, c);
        json entries = json::array();
        for (const auto& e : rep.entries) {
            entries.push_back({{"root", e.root_name},
                               {"table_class", e.table_class},
                               {"found_class", e.found_class},
                               {"table_coeff", e.table_coeff.str()},
                               {"found_coeff", e.found_coeff.str()},
                               {"class_matches", e.class_matches},
                               {"sign_matches", e.sign_matches}});
            if (!e.sign_matches) {
                ++deviations[e.root_name];
            }
            tsv << c.str() << "\t" << e.root_name << "\t" << e.table_class << "\t" << e.found_class << "\t"
                << e.table_coeff.str() << "\t" << e.found_coeff.str() << "\t" << (e.sign_matches ? "yes" : "no")
                << "\n";
        }
        class_mismatches += rep.class_mismatches;
        tuples.push_back({{"c", c.str()},
                          {"span_invariant", rep.span_invariant},
                          {"class_mismatches", rep.class_mismatches},
                          {"property_i_violations", rep.property_i_violations},
                          {"property_ii_violations", rep.property_ii_violations},
                          {"entries", entries}});
        out.pass = out.pass && rep.ok();
    }
    json dev = json::object();
    for (const auto& [root, n] : deviations) {
        dev[root] = n;
    }
    out.data = {{"tuples", tuples},
                {"class_mismatches", class_mismatches},
                {"sign_deviations", dev},
                {"pass", out.pass}};
    out.tsv = tsv.str();
    timings["example_d4"] = t.seconds();
    return out;
}

// ---------------------------------------------------------------- output

void emit(const Config& cfg, const std::string& command, const json& payload, const json& timings,
          const std::string& tsv)
{
    std::string text;
    if (cfg.emit == "tsv") {
        text = tsv;
    } else {
        json doc = {{"payload", payload},
                    {"meta", {{"command", command}, {"version", kVersion}, {"seconds", timings}}}};
        text = doc.dump(2) + "\n";
    }
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output);
    if (!f) {
        throw UsageError("cannot write " + cfg.output);
    }
    f << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Twisted vertex operator verification engine"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--emit", cfg.emit, "output format")->check(CLI::IsMember({"json", "tsv"}));
        sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
    };
    auto add_algebra = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--algebra", cfg.algebra, "A1..A8, D3..D8, E6, E7, E8");
        if (required) {
            opt->required();
        }
        sub->add_option("--orientation", cfg.orientation, "file of 'j k' lines, arrow alpha_j -> alpha_k");
    };
    auto add_verify_opts = [&](CLI::App* sub) {
        sub->add_option("--window", cfg.window, "mode window M (|m|, |k| <= M)")->check(CLI::Range(1, 12));
        sub->add_option("--pairs", cfg.pairs, "ordered root pairs to check; 0 = all (default: all when <= 600)")
            ->check(CLI::Range(0, 1 << 20));
        sub->add_option("--seed", cfg.seed, "pair sampling seed");
        sub->add_option("--fock-degree", cfg.fock_degree, "Fock test degree for generators with nonzero modes")
            ->check(CLI::Range(0, 6));
    };

    auto* verify = app.add_subcommand("verify", "commutator, Heisenberg, action-table and Chevalley checks");
    add_algebra(verify, true);
    add_verify_opts(verify);
    add_common(verify);

    auto* decompose_cmd = app.add_subcommand("decompose", "singular vectors and irreducible decomposition");
    add_algebra(decompose_cmd, true);
    add_common(decompose_cmd);

    auto* chars = app.add_subcommand("characters", "specialized character table");
    chars->add_option("--algebra", cfg.algebra, "restrict to the row realized by this algebra");
    chars->add_option("--order", cfg.order, "q-series order N")->check(CLI::Range(1, 200));
    add_common(chars);

    auto* d4 = app.add_subcommand("example-d4", "Pauli-matrix structure on the D4 two-dimensional spans");
    add_common(d4);

    auto* all = app.add_subcommand("all", "every subcommand for one algebra (default D4)");
    add_algebra(all, false);
    add_verify_opts(all);
    all->add_option("--order", cfg.order, "q-series order N")->check(CLI::Range(1, 200));
    add_common(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (verify->parsed() && cfg.emit == "tsv") {
        std::cerr << "error: --emit tsv is available for decompose, characters, example-d4 and all\n";
        return 2;
    }
    try {
        json timings = json::object();
        Section s;
        std::string command;
        if (verify->parsed()) {
            command = "verify";
            s = verify_algebra(build_lattice(cfg), cfg, timings);
        } else if (decompose_cmd->parsed()) {
            command = "decompose";
            s = decompose_algebra(build_lattice(cfg), timings);
        } else if (chars->parsed()) {
            command = "characters";
            s = characters(cfg, chars->count("--algebra") > 0, timings);
        } else if (d4->parsed()) {
            command = "example-d4";
            s = example_d4(timings);
        } else {
            command = "all";
            RootLattice L = build_lattice(cfg);
            Section v = verify_algebra(L, cfg, timings);
            Section d = decompose_algebra(L, timings);
            Section c = characters(cfg, false, timings);
            Section p = example_d4(timings);
            s.data = {{"verify", v.data},
                      {"decompose", d.data},
                      {"characters", c.data},
                      {"example_d4", p.data}};
            s.pass = v.pass && d.pass && c.pass && p.pass;
            s.data["pass"] = s.pass;
            s.tsv = d.tsv + c.tsv + p.tsv;
        }
        emit(cfg, command, s.data, timings, s.tsv);
        return s.pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
