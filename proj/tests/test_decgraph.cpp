#include "doctest.h"

#include "rittlab/decgraph.hpp"
#include "rittlab/dynamics.hpp"
#include "rittlab/parse.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace rittlab;

namespace {

RatMap rm(const std::string& s) { return parse_ratmap(s); }

Mobius mob(int a, int b, int c, int d) {
    return Mobius(GQ(a), GQ(b), GQ(c), GQ(d));
}

// Witness contract: g conjugates a onto b.
void check_conjugacy_witness(const RatMap& a, const RatMap& b, const ConjugacyOutcome& out) {
    REQUIRE(out.status == ConjugacyStatus::Conjugate);
    REQUIRE(out.witness.has_value());
    CHECK(mobius_conjugate(a, *out.witness) == b);
}

// Every directed edge (u,v) with u != v must come with (v,u): rotating a
// two-factor split twice returns to the starting class.
void check_rotation_consistency(const DecGraph& g) {
    std::set<std::pair<int, int>> dir;
    for (const auto& e : g.edges) dir.insert({e.from, e.to});
    for (const auto& e : g.edges)
        if (e.from != e.to)
            CHECK(dir.count({e.to, e.from}) == 1);
}

int undirected_edge_count(const DecGraph& g) {
    std::set<std::pair<int, int>> und;
    for (const auto& e : g.edges)
        und.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    return static_cast<int>(und.size());
}

} // namespace

TEST_CASE("conjugacy fingerprints are conjugation invariants, not deciders") {
    const RatMap a = rm("z^2");
    const RatMap b = mobius_conjugate(a, mob(1, 1, 0, 1));
    CHECK(b == rm("z^2-2*z+2"));
    CHECK(conjugacy_fingerprint(a) == conjugacy_fingerprint(b));

    // Same ramification and fixed-point profile, yet not conjugate: the
    // multiplier spectra differ, which the full test must detect.
    CHECK(conjugacy_fingerprint(rm("z^2")) == conjugacy_fingerprint(rm("2*z^2-1")));

    CHECK(conjugacy_fingerprint(rm("z^2")) != conjugacy_fingerprint(rm("z^3")));
}

TEST_CASE("conjugate_maps certifies a Moebius conjugation exactly") {
    const RatMap a = rm("z^2");
    const RatMap b = mobius_conjugate(a, mob(1, 1, 0, 1));
    check_conjugacy_witness(a, b, conjugate_maps(a, b));

    // Identical inputs get the identity witness.
    const RatMap r = rm("((z-1)^2) / ((z+1)^2)");
    auto self = conjugate_maps(r, r);
    REQUIRE(self.status == ConjugacyStatus::Conjugate);
    REQUIRE(self.witness.has_value());
    CHECK(self.witness->is_identity());
}

TEST_CASE("conjugate_maps rejects non-conjugate maps of equal degree") {
    CHECK(conjugate_maps(rm("z^2"), rm("2*z^2-1")).status == ConjugacyStatus::NotConjugate);
    CHECK(conjugate_maps(rm("z^2"), rm("1/z^2")).status == ConjugacyStatus::NotConjugate);
    // Equal fingerprints but incompatible multipliers at the fixed points.
    CHECK(conjugate_maps(rm("z^2"), rm("((z-1)^2) / ((z+1)^2)")).status ==
          ConjugacyStatus::NotConjugate);
}

TEST_CASE("conjugate_maps reports Unknown when every conjugation is irrational") {
    // 2*z^3 = g o z^3 o g^-1 forces g(z) = l*z or l/z with l^2 = 2 up to the
    // symmetries of z^3, so a witness exists over C but not over Q(i).
    auto out = conjugate_maps(rm("z^3"), rm("2*z^3"));
    CHECK(out.status == ConjugacyStatus::Unknown);
    CHECK_FALSE(out.witness.has_value());
}

TEST_CASE("conjugate_maps input validation") {
    CHECK_THROWS_AS((void)conjugate_maps(rm("z^2"), rm("z^3")), std::domain_error);
    CHECK_THROWS_AS((void)conjugate_maps(rm("z+1"), rm("z+2")), std::domain_error);
}

TEST_CASE("conjugacy witnesses invert and compose") {
    const RatMap a = rm("z^2-1");
    const RatMap b = mobius_conjugate(a, mob(2, 1, 0, 1));
    const RatMap c = mobius_conjugate(b, mob(0, 1, 1, 0));

    auto ab = conjugate_maps(a, b);
    auto ba = conjugate_maps(b, a);
    auto ac = conjugate_maps(a, c);
    check_conjugacy_witness(a, b, ab);
    check_conjugacy_witness(b, a, ba);
    check_conjugacy_witness(a, c, ac);

    // The returned witnesses compose transitively and invert symmetrically,
    // even when they differ from the tuples used to build the inputs.
    CHECK(mobius_conjugate(b, ab.witness->inverse()) == a);
    auto bc = conjugate_maps(b, c);
    REQUIRE(bc.status == ConjugacyStatus::Conjugate);
    CHECK(mobius_conjugate(a, (*bc.witness) * (*ab.witness)) == c);
}

TEST_CASE("a prime map yields the one-vertex graph with no edges") {
    auto g = build_graph(rm("((z-1)^2) / ((z+1)^2)"));
    CHECK(g.vertices.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.basepoint == 0);
    CHECK_FALSE(g.partial);

    auto h = homology(graph_complex(g));
    REQUIRE(h.betti.size() == 1);
    CHECK(h.betti[0] == 1);
}

TEST_CASE("power map rotations collapse to one vertex with a self-loop") {
    auto g = build_graph(rm("z^4"));
    REQUIRE(g.vertices.size() == 1);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].from == 0);
    CHECK(g.edges[0].to == 0);
    CHECK_FALSE(g.partial);

    // The self-loop carries a cycle: circle homology.
    auto bare = homology(graph_complex(g));
    REQUIRE(bare.betti.size() == 2);
    CHECK(bare.betti[0] == 1);
    CHECK(bare.betti[1] == 1);

    // All rotations of [z^2, z^2, z^2] land on the same vertex, so the cycle
    // is degenerate and attaches no 2-cell.
    auto cw = cw_complete(g);
    auto filled = homology(cw);
    REQUIRE(filled.betti.size() >= 2);
    CHECK(filled.betti[0] == 1);
    CHECK(filled.betti[1] == 1);
}

TEST_CASE("rotation closure merges gauges and explores new classes") {
    // z^2 o (z^3+1) rotates to (z^3+1) o z^2 = z^6+1; the other gauge of the
    // same split class produces (z+1)^6, which must land on the same vertex.
    // z^6+1 in turn rotates further, to the genuinely new class (z^2+1)^3.
    auto g = build_graph(rm("z^2 @ (z^3+1)"));
    CHECK_FALSE(g.partial);
    REQUIRE(g.vertices.size() == 3);
    check_rotation_consistency(g);
    for (const auto& v : g.vertices) CHECK(v.key == conjugacy_fingerprint(v.representative));

    std::set<std::string> reps;
    for (const auto& v : g.vertices) reps.insert(print_ratmap(v.representative));
    CHECK(reps == std::set<std::string>{"z^6+2*z^3+1", "z^6+3*z^4+3*z^2+1", "z^6+1"});

    // The closure is a path: no cycle among the three classes.
    CHECK(undirected_edge_count(g) == 2);
    auto h = homology(graph_complex(g));
    REQUIRE(h.betti.size() == 2);
    CHECK(h.betti[0] == 1);
    CHECK(h.betti[1] == 0);

    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j)
            CHECK(conjugate_maps(g.vertices[i].representative,
                                 g.vertices[j].representative).status !=
                  ConjugacyStatus::Conjugate);
}

TEST_CASE("second iterate of a fiber-symmetric quadratic: self-loop and two wings") {
    // The iterate-type split rotates back onto the input class itself: a
    // self-loop certified by a conjugacy between distinct rational maps.
    const RatMap r2 = rm("((z-1)^2/(z+1)^2) @ ((z-1)^2/(z+1)^2)");
    auto g = build_graph(r2);
    CHECK_FALSE(g.partial);
    REQUIRE(g.vertices.size() == 3);
    CHECK(g.vertices[g.basepoint].representative == r2);
    check_rotation_consistency(g);

    bool selfloop = false;
    for (const auto& e : g.edges)
        if (e.from == e.to) {
            selfloop = true;
            CHECK(e.from == g.basepoint);
        }
    CHECK(selfloop);
    CHECK(undirected_edge_count(g) == 3);

    // Self-loops carry a cycle of their own.
    auto bare = homology(graph_complex(g));
    REQUIRE(bare.betti.size() == 2);
    CHECK(bare.betti[0] == 1);
    CHECK(bare.betti[1] == 1);

    // Degree 4 maps have no length-3 prime chains, so nothing fills it.
    auto cw = cw_complete(g);
    REQUIRE(cw.cells.size() == 2);
    auto filled = homology(cw);
    CHECK(filled.betti == bare.betti);
}

TEST_CASE("three-factor chain produces the rotation triangle") {
    const RatMap r = rm("z^2 @ (z^2+1) @ (z^2+2)");
    auto g = build_graph(r);
    CHECK_FALSE(g.partial);
    REQUIRE(g.vertices.size() == 3);
    CHECK(undirected_edge_count(g) == 3);
    check_rotation_consistency(g);

    // Basepoint class contains the input map.
    auto home = conjugate_maps(r, g.vertices[g.basepoint].representative);
    CHECK(home.status == ConjugacyStatus::Conjugate);

    auto bare = homology(graph_complex(g));
    REQUIRE(bare.betti.size() == 2);
    CHECK(bare.betti[0] == 1);
    CHECK(bare.betti[1] == undirected_edge_count(g) - 3 + 1);

    // One rotation class of quadratic prime chains fills the triangle.
    auto cw = cw_complete(g);
    REQUIRE(cw.cells.size() == 3);
    CHECK(cw.cells[0] == 3);
    CHECK(cw.cells[1] == 3);
    CHECK(cw.cells[2] == 1);
    auto filled = homology(cw);
    REQUIRE(filled.betti.size() == 3);
    CHECK(filled.betti[0] == 1);
    CHECK(filled.betti[1] == 0);
    CHECK(filled.betti[2] == 0);
}

TEST_CASE("build_graph output is invariant under conjugating the input") {
    const RatMap r = rm("z^2 @ (z^2+1) @ (z^2+2)");
    auto g1 = build_graph(r);
    auto g2 = build_graph(rm("(z^4+4*z^2+5)^2"));
    CHECK(export_graph(g1, GraphFormat::Json) == export_graph(g2, GraphFormat::Json));

    // A conjugated input describes the same class; representatives all
    // normalize back to the identical depressed polynomials.
    auto g3 = build_graph(mobius_conjugate(r, mob(0, 1, 1, 0)));
    CHECK(export_graph(g1, GraphFormat::Json) == export_graph(g3, GraphFormat::Json));
}

TEST_CASE("vertex budget exhaustion marks the graph partial") {
    GraphBudget tight;
    tight.max_vertices = 1;
    auto g = build_graph(rm("z^2 @ (z^2+1) @ (z^2+2)"), tight);
    CHECK(g.partial);
    CHECK(g.vertices.size() == 1);
    CHECK_THROWS_AS((void)cw_complete(g), std::domain_error);
}

TEST_CASE("homology of hand-built complexes") {
    SUBCASE("two isolated vertices") {
        CWComplex c;
        c.cells = {2};
        c.boundary = {{}};
        auto h = homology(c);
        REQUIRE(h.betti.size() == 1);
        CHECK(h.betti[0] == 2);
    }
    SUBCASE("bare triangle") {
        CWComplex c;
        c.cells = {3, 3};
        c.boundary = {{}, {{BigInt(-1), BigInt(0), BigInt(-1)},
                           {BigInt(1), BigInt(-1), BigInt(0)},
                           {BigInt(0), BigInt(1), BigInt(1)}}};
        auto h = homology(c);
        REQUIRE(h.betti.size() == 2);
        CHECK(h.betti[0] == 1);
        CHECK(h.betti[1] == 1);
    }
    SUBCASE("disc glued to a loop by degree 2 has 2-torsion") {
        CWComplex c;
        c.cells = {1, 1, 1};
        c.boundary = {{}, {{BigInt(0)}}, {{BigInt(2)}}};
        auto h = homology(c);
        REQUIRE(h.betti.size() == 3);
        CHECK(h.betti[0] == 1);
        CHECK(h.betti[1] == 0);
        CHECK(h.betti[2] == 0);
        REQUIRE(h.torsion.size() == 3);
        REQUIRE(h.torsion[1].size() == 1);
        CHECK(h.torsion[1][0] == BigInt(2));
    }
    SUBCASE("non-composable boundary maps are rejected") {
        CWComplex c;
        c.cells = {2, 1, 1};
        c.boundary = {{}, {{BigInt(-1)}, {BigInt(1)}}, {{BigInt(1)}}};
        CHECK_THROWS_AS((void)homology(c), std::domain_error);
    }
    SUBCASE("boundary list must cover every dimension") {
        CWComplex c;
        c.cells = {1, 1};
        c.boundary = {{}};
        CHECK_THROWS_AS((void)homology(c), std::domain_error);
    }
}

TEST_CASE("export formats") {
    auto g = build_graph(rm("z^2 @ (z^2+1) @ (z^2+2)"));

    SUBCASE("dot") {
        std::string dot = export_graph(g, GraphFormat::Dot);
        CHECK(dot.find("digraph") != std::string::npos);
        CHECK(dot.find("doublecircle") != std::string::npos);
        size_t arrows = 0;
        for (size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2))
            ++arrows;
        CHECK(arrows == g.edges.size());
    }
    SUBCASE("json") {
        auto j = nlohmann::json::parse(export_graph(g, GraphFormat::Json));
        REQUIRE(j.contains("vertices"));
        REQUIRE(j.contains("edges"));
        REQUIRE(j.contains("basepoint"));
        REQUIRE(j.contains("complete"));
        CHECK(j["complete"].get<bool>());
        CHECK(j["basepoint"].get<int>() == g.basepoint);
        REQUIRE(j["vertices"].size() == g.vertices.size());
        for (const auto& v : j["vertices"]) {
            REQUIRE(v.contains("id"));
            REQUIRE(v.contains("repr"));
            REQUIRE(v.contains("degree"));
            REQUIRE(v.contains("fingerprint"));
            // Representatives round-trip through the expression grammar.
            const RatMap back = rm(v["repr"].get<std::string>());
            CHECK(back.degree() == v["degree"].get<long>());
        }
        REQUIRE(j["edges"].size() == g.edges.size());
        for (const auto& e : j["edges"]) {
            REQUIRE(e.contains("split"));
            REQUIRE(e["split"].size() == 2);
            const RatMap lf = rm(e["split"][0].get<std::string>());
            const RatMap rf = rm(e["split"][1].get<std::string>());
            const int u = e["from"].get<int>();
            CHECK(lf.degree() * rf.degree() == g.vertices[u].representative.degree());
        }
    }
}
