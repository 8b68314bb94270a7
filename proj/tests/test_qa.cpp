#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quadrop/qa.hpp"
#include "testutil.hpp"

using namespace quadrop;
using testutil::Rng;

namespace {

// Transport a relation subspace along a bijection of generator indices.
Subspace transport(const Subspace& rel, std::int64_t src_gens, std::int64_t dst_gens,
                   const std::vector<std::int64_t>& gen_map) {
    return rel.mapped(dst_gens * dst_gens, [&](std::int64_t i) {
        return gen_map[i / src_gens] * dst_gens + gen_map[i % src_gens];
    });
}

} // namespace

TEST_CASE("units: dimensions and relation ranks") {
    CHECK(unit_black().dim1() == 1);
    CHECK(unit_black().relations().rank() == 1);
    CHECK(unit_white().dim1() == 1);
    CHECK(unit_white().relations().rank() == 0);
    CHECK(initial_algebra().dim1() == 0);
}

TEST_CASE("dual: K[t]/(t^2) is dual to the free algebra on one generator") {
    CHECK(dual(unit_black()) == unit_white());
    CHECK(dual(unit_white()) == unit_black());
}

TEST_CASE("dual of the commutative polynomial algebra on 2 generators") {
    auto d = dual(polynomial_algebra(2));
    CHECK(d.dim1() == 2);
    CHECK(d.relations().rank() == 3);
    // x⊗x, y⊗y and x⊗y + y⊗x all annihilate x⊗y - y⊗x.
    Vec sym(4);
    sym.set(1, Scalar(1));
    sym.set(2, Scalar(1));
    CHECK(d.relations().contains(Vec::unit(4, 0)));
    CHECK(d.relations().contains(Vec::unit(4, 3)));
    CHECK(d.relations().contains(sym));
}

TEST_CASE("dual is an involution on random algebras") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 1 + static_cast<std::int64_t>(trial % 4);
        auto a = testutil::random_algebra(rng, n, 1 + (trial % 5));
        CHECK(dual(dual(a)) == a);
    }
}

TEST_CASE("black: unit law holds with literal relation equality") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 3), 2);
        auto prod = black(a, unit_black());
        CHECK(prod.dim1() == a.dim1());
        CHECK(prod.relations() == a.relations());
        auto lprod = black(unit_black(), a);
        CHECK(lprod.relations() == a.relations());
    }
}

TEST_CASE("black of the unit with itself is K[u]/(u^2)") {
    CHECK(black(unit_black(), unit_black()) == unit_black());
}

TEST_CASE("black: relation rank is multiplicative") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 2 + (trial % 2), 2);
        auto b = testutil::random_algebra(rng, 2, 1 + (trial % 3));
        CHECK(black(a, b).relations().rank() ==
              a.relations().rank() * b.relations().rank());
    }
}

TEST_CASE("white: unit law via the free algebra on one generator") {
    Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 3), 2);
        CHECK(white(a, unit_white()).relations() == a.relations());
        CHECK(white(unit_white(), a).relations() == a.relations());
    }
    CHECK(white(unit_white(), unit_white()) == unit_white());
}

TEST_CASE("duality exchanges black and white products") {
    Rng rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 3), 1 + (trial % 4));
        auto b = testutil::random_algebra(rng, 1 + ((trial + 1) % 3), 2);
        CHECK(dual(black(a, b)) == white(dual(a), dual(b)));
        CHECK(dual(white(a, b)) == black(dual(a), dual(b)));
    }
}

TEST_CASE("black and white are commutative and associative up to index bijections") {
    Rng rng(26);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = testutil::random_algebra(rng, 2, 2);
        auto b = testutil::random_algebra(rng, 1 + (trial % 2), 1);
        auto c = testutil::random_algebra(rng, 2, 1);

        // Commutativity: transport along (i,j) -> (j,i).
        std::vector<std::int64_t> swap_idx(a.dim1() * b.dim1());
        for (std::int64_t i = 0; i < a.dim1(); ++i)
            for (std::int64_t j = 0; j < b.dim1(); ++j)
                swap_idx[i * b.dim1() + j] = j * a.dim1() + i;
        CHECK(transport(black(a, b).relations(), a.dim1() * b.dim1(),
                        a.dim1() * b.dim1(), swap_idx) == black(b, a).relations());
        CHECK(transport(white(a, b).relations(), a.dim1() * b.dim1(),
                        a.dim1() * b.dim1(), swap_idx) == white(b, a).relations());

        // Associativity: row-major flattening makes both sides literally equal.
        CHECK(black(black(a, b), c) == black(a, black(b, c)));
        CHECK(white(white(a, b), c) == white(a, white(b, c)));
    }
}

TEST_CASE("tensor_commuting: neutral initial factor and rank additivity") {
    Rng rng(27);
    auto k = initial_algebra();
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 3), 2);
        auto b = testutil::random_algebra(rng, 1 + ((trial + 1) % 3), 2);
        CHECK(tensor_commuting(k, a) == a);
        CHECK(tensor_commuting(a, k) == a);
        CHECK(tensor_commuting(a, b).relations().rank() ==
              a.relations().rank() + a.dim1() * b.dim1() + b.relations().rank());
        CHECK(tensor_commuting(a, b, -1).relations().rank() ==
              a.relations().rank() + a.dim1() * b.dim1() + b.relations().rank());
    }
}

TEST_CASE("tensor_commuting of two black units") {
    auto t = tensor_commuting(unit_black(), unit_black());
    CHECK(t.dim1() == 2);
    CHECK(t.relations().rank() == 3);
}

TEST_CASE("free_product: neutral initial object and rank additivity") {
    Rng rng(28);
    auto k = initial_algebra();
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 3), 2);
        auto b = testutil::random_algebra(rng, 2, 1 + (trial % 3));
        CHECK(free_product(k, a) == a);
        CHECK(free_product(a, k) == a);
        CHECK(free_product(a, b).relations().rank() ==
              a.relations().rank() + b.relations().rank());
    }
}

TEST_CASE("black distributes over the free product") {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = testutil::random_algebra(rng, 1 + (trial % 2), 1 + (trial % 3));
        auto b = testutil::random_algebra(rng, 1 + ((trial + 1) % 3), 2);
        auto c = testutil::random_algebra(rng, 1 + ((trial + 2) % 2), 1);
        auto lhs = black(a, free_product(b, c));
        auto rhs = free_product(black(a, b), black(a, c));
        // Bijection (i, u) -> block of B or C.
        const std::int64_t da = a.dim1(), db = b.dim1(), dc = c.dim1();
        std::vector<std::int64_t> gen_map(da * (db + dc));
        for (std::int64_t i = 0; i < da; ++i)
            for (std::int64_t u = 0; u < db + dc; ++u)
                gen_map[i * (db + dc) + u] =
                    (u < db) ? i * db + u : da * db + i * dc + (u - db);
        CHECK(lhs.dim1() == rhs.dim1());
        CHECK(transport(lhs.relations(), lhs.dim1(), rhs.dim1(), gen_map) ==
              rhs.relations());
    }
}

TEST_CASE("is_morphism: identity, zero, and a failing example") {
    Rng rng(30);
    auto a = testutil::random_algebra(rng, 3, 3);
    CHECK(is_morphism(LinMap::identity(3), a, a));
    auto b = testutil::random_algebra(rng, 2, 1);
    CHECK(is_morphism(LinMap::zero(3, 2), a, b));
    // t -> x from K[t]/(t^2) to the free algebra is not a morphism.
    CHECK_FALSE(is_morphism(LinMap::identity(1), unit_black(), unit_white()));
    CHECK_THROWS_AS(QAMorphism(unit_black(), unit_white(), LinMap::identity(1)), DomainError);
    CHECK_THROWS_AS(is_morphism(LinMap::identity(2), a, b), DimensionError);
}

TEST_CASE("free_product is the coproduct: combined maps are morphisms") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = testutil::random_algebra(rng, 2, 2);
        auto b = testutil::random_algebra(rng, 2, 2);
        auto f = testutil::random_linmap(rng, 2, 3);
        auto g = testutil::random_linmap(rng, 2, 3);
        // Build a target whose relations absorb both images.
        std::vector<Vec> crel;
        LinMap ff = kron(f, f), gg = kron(g, g);
        for (const Vec& r : a.relations().basis())
            crel.push_back(ff.apply(r));
        for (const Vec& r : b.relations().basis())
            crel.push_back(gg.apply(r));
        QuadraticAlgebra c(3, Subspace::span(crel, 9));
        REQUIRE(is_morphism(f, a, c));
        REQUIRE(is_morphism(g, b, c));
        std::vector<Vec> rows = f.rows();
        rows.insert(rows.end(), g.rows().begin(), g.rows().end());
        LinMap h(4, 3, rows);
        CHECK(is_morphism(h, free_product(a, b), c));
    }
}

TEST_CASE("permute_generators: identity, swap stability, composition") {
    auto a = tensor_commuting(unit_black(), unit_black());
    auto id = permute_generators(a, {0, 1});
    CHECK(id.map() == LinMap::identity(2));
    CHECK(id.dst() == a);

    // Swapping the two generators of K[t]/(t^2) ⊗ K[t]/(t^2) preserves R.
    auto sw = permute_generators(a, {1, 0});
    CHECK(sw.dst() == a);

    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = testutil::random_algebra(rng, 3, 2);
        std::vector<std::int64_t> p = {1, 2, 0}, q = {2, 0, 1};
        auto fp = permute_generators(x, p);
        auto fq = permute_generators(fp.dst(), q);
        std::vector<std::int64_t> pq(3);
        for (int i = 0; i < 3; ++i)
            pq[i] = q[p[i]];
        auto fpq = permute_generators(x, pq);
        CHECK(fp.then(fq).map() == fpq.map());
        CHECK(fq.dst() == fpq.dst());
    }
    CHECK_THROWS_AS(permute_generators(a, {0, 0}), DomainError);
    CHECK_THROWS_AS(permute_generators(a, {0}), DomainError);
}
