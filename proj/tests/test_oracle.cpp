#include <doctest.h>

#include <cmath>
#include <random>

#include "qwalk/bounds.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/spectral.hpp"
#include "support/corpus.hpp"

using namespace qwalk;

TEST_CASE("matexp_probability") {
    SUBCASE("P2 full swap at pi/2") {
        const Hamiltonian h = assemble_hamiltonian(Graph(2, {{0, 1}}, {4.0, 4.0}));
        CHECK(std::abs(matexp_probability(h, 0, 1, M_PI / 2.0) - 1.0) <= 1e-9);
    }
    SUBCASE("t = 0 reproduces the identity") {
        const Hamiltonian h = assemble_hamiltonian(path_graph(5));
        for (Vertex v = 0; v < 5; ++v) CHECK(matexp_probability(h, v, v, 0.0) == doctest::Approx(1.0));
        CHECK(matexp_probability(h, 0, 3, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("agrees with the spectral path on random corpus graphs") {
        std::mt19937 gen(17u);
        const auto corpus = qwalk::testing::random_mirrored_corpus(8, 99u);
        for (const auto& cg : corpus) {
            if (cg.graph.vertex_count() > 20) continue;
            const double q = 3.0 + (gen() % 12);
            const Graph g = cg.graph.with_double_well(cg.well, cg.inv(cg.well), q);
            const Hamiltonian h = assemble_hamiltonian(g);
            const Spectrum s = eig_symmetric(h.matrix);
            const double t = 8.0 * static_cast<double>(gen()) / gen.max();
            const Vertex u = cg.well;
            const Vertex v = static_cast<Vertex>(gen() % g.vertex_count());
            CHECK(std::abs(transfer_probability(s, u, v, t).p -
                           matexp_probability(h, u, v, t)) <= 1e-8);
        }
    }
}

TEST_CASE("exhaustive_fidelity") {
    SUBCASE("P2 reaches a full swap near pi/2") {
        const Hamiltonian h = assemble_hamiltonian(Graph(2, {{0, 1}}, {4.0, 4.0}));
        const auto r = exhaustive_fidelity(h, 0, 1, M_PI, M_PI / 500.0);
        CHECK(r.best_p >= 0.9999);
        CHECK(r.best_t == doctest::Approx(M_PI / 2.0).epsilon(1e-2));
    }
    SUBCASE("P3 at q = 4 clears the optimal-time value inside one beat") {
        const Graph g = path_graph(3).with_double_well(0, 2, 4.0);
        const Hamiltonian h = assemble_hamiltonian(g);
        const auto r = exhaustive_fidelity(h, 0, 2, 14.0, 0.01);
        CHECK(r.best_p >= 0.829);
    }
    SUBCASE("P4 at q = 10: the closed-form fidelity bound is not yet applicable") {
        CHECK_FALSE(fidelity_lower(10.0, 2.0).has_value());
    }
    SUBCASE("P2 at q = 100 dominates the applicable closed-form bound") {
        const Graph g = path_graph(2).with_double_well(0, 1, 100.0);
        const Hamiltonian h = assemble_hamiltonian(g);
        const auto fid = fidelity_lower(100.0, 1.0);
        REQUIRE(fid.has_value());
        const auto r = exhaustive_fidelity(h, 0, 1, M_PI, M_PI / 200.0);
        CHECK(r.best_p >= *fid);
    }
    SUBCASE("contract") {
        const Hamiltonian h = assemble_hamiltonian(path_graph(2));
        CHECK_THROWS_AS(exhaustive_fidelity(h, 0, 1, 0.0, 0.1), DomainError);
        CHECK_THROWS_AS(exhaustive_fidelity(h, 0, 1, 1.0, 2.0), DomainError);
    }
}

TEST_CASE("enumerate_involutions") {
    SUBCASE("P2 with equal potentials has the identity and the swap") {
        const auto found = enumerate_involutions(Graph(2, {{0, 1}}, {4.0, 4.0}));
        REQUIRE(found.size() == 2);
        int identities = 0;
        for (const auto& f : found) identities += f.is_identity ? 1 : 0;
        CHECK(identities == 1);
    }
    SUBCASE("P3 with mirror potentials has the identity and the end swap") {
        const auto found =
            enumerate_involutions(Graph(3, {{0, 1}, {1, 2}}, {4.0, 0.0, 4.0}));
        REQUIRE(found.size() == 2);
        bool has_end_swap = false;
        for (const auto& f : found)
            if (f.involution.map == std::vector<Vertex>{2, 1, 0}) has_end_swap = true;
        CHECK(has_end_swap);
    }
    SUBCASE("asymmetric potentials leave only the identity") {
        const auto found = enumerate_involutions(Graph(2, {{0, 1}}, {1.0, 2.0}));
        REQUIRE(found.size() == 1);
        CHECK(found.front().is_identity);
    }
    SUBCASE("C4 with flat potential has the full dihedral set of involutions") {
        CHECK(enumerate_involutions(cycle_graph(4)).size() == 6);
    }
    SUBCASE("size limit") {
        CHECK_THROWS_AS(enumerate_involutions(path_graph(13)), SizeError);
    }
    SUBCASE("property: everything returned validates") {
        for (const Graph& g : {cycle_graph(6), hypercube_graph(3), path_graph(5)}) {
            for (const auto& f : enumerate_involutions(g))
                CHECK(validate_involution(g, f.involution).ok);
        }
    }
}

TEST_CASE("enumerate_walks_dfs") {
    SUBCASE("P2 across the pair") {
        const auto counts = enumerate_walks_dfs(path_graph(2), 0, 1, {0, 1}, 5);
        CHECK(counts == std::vector<std::int64_t>{0, 1, 0, 0, 0, 0});
    }
    SUBCASE("P3 closed walks: one at length 2, none at length 4") {
        const auto counts = enumerate_walks_dfs(path_graph(3), 0, 0, {0, 2}, 4);
        CHECK(counts[0] == 1);
        CHECK(counts[2] == 1);
        CHECK(counts[4] == 0); // revisiting the source internally is forbidden
    }
    SUBCASE("star center to a leaf avoiding the others") {
        const Graph star(4, {{0, 1}, {0, 2}, {0, 3}}, {0, 0, 0, 0});
        const auto counts = enumerate_walks_dfs(star, 0, 1, {2, 3}, 6);
        CHECK(counts[1] == 1);
        // the only longer walks bounce 0-1-0-...; interior may not contain 1? it may:
        // only 2 and 3 are forbidden, so 0-1-0-1 style walks re-enter via vertex 1
        CHECK(counts[3] >= 1);
    }
    SUBCASE("limits") {
        CHECK_THROWS_AS(enumerate_walks_dfs(path_graph(2), 0, 1, {}, 11), SizeError);
        CHECK_THROWS_AS(enumerate_walks_dfs(hypercube_graph(4), 0, 1, {}, 4), SizeError);
    }
}
