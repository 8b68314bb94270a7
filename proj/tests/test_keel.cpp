#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quadrop/keel.hpp"
#include "quadrop/series.hpp"

using namespace quadrop;

TEST_CASE("boundary class normalization and counting") {
    const KeelModel& k4 = keel_model(4);
    CHECK(k4.class_count() == 3); // 2^3 - 4 - 1
    const KeelModel& k5 = keel_model(5);
    CHECK(k5.class_count() == 10); // 2^4 - 5 - 1
    const KeelModel& k6 = keel_model(6);
    CHECK(k6.class_count() == 25); // 2^5 - 6 - 1

    // δ_S and δ_{S^c} give the same class.
    CHECK(k5.index_of_class(0b00110) == k5.index_of_class(0b11001));
    CHECK_THROWS_AS(k5.index_of_class(0b00010), DomainError); // singleton
}

TEST_CASE("dim H^2 matches the closed formula for n = 3..6") {
    // 2^n - n(n+1)/2 - 1 for P(n), model on m = n+1 marks.
    CHECK(keel_model(4).h2_dim() == 1);
    CHECK(keel_model(5).h2_dim() == 5);
    CHECK(keel_model(6).h2_dim() == 16);
    CHECK(keel_model(7).h2_dim() == 42);
}

TEST_CASE("m=4: the three boundary classes are all cohomologous") {
    const KeelModel& k = keel_model(4);
    // δ_{12} − δ_{13} reduces to zero (0-based: δ_{{0,3}} vs δ_{{0,2}}).
    Vec diff(k.class_count());
    diff.add_to(k.index_of_class(0b1001), Scalar(1));
    diff.add_to(k.index_of_class(0b0101), Scalar(-1));
    CHECK(k.delta_reduce(diff).is_zero());
    CHECK(k.delta_reduce(Vec(k.class_count())).is_zero());
}

TEST_CASE("graded dimensions with Euler-characteristic cross-checks") {
    const KeelModel& k4 = keel_model(4);
    CHECK(k4.graded_dim(0) == 1);
    CHECK(k4.graded_dim(1) == 1);
    CHECK(k4.graded_dim(2) == 0);

    const KeelModel& k5 = keel_model(5);
    CHECK(k5.graded_dim(0) == 1);
    CHECK(k5.graded_dim(1) == 5);
    CHECK(k5.graded_dim(2) == 1);
    CHECK(k5.graded_dim(3) == 0);
    CHECK(k5.euler_characteristic() == 7);

    const KeelModel& k6 = keel_model(6);
    CHECK(k6.graded_dim(1) == 16);
    CHECK(k6.graded_dim(2) == 16);
    CHECK(k6.graded_dim(3) == 1);
    CHECK(k6.graded_dim(4) == 0);
    CHECK(k6.euler_characteristic() == 34);
}

TEST_CASE("graded dims are palindromic (Poincaré duality observed)") {
    for (int m = 4; m <= 6; ++m) {
        const KeelModel& k = keel_model(m);
        for (int d = 0; d <= k.top_degree(); ++d)
            CHECK(k.graded_dim(d) == k.graded_dim(k.top_degree() - d));
    }
}

TEST_CASE("psi classes: single qualifying subset at m=4") {
    const KeelModel& k = keel_model(4);
    // ψ_1 with reference legs 2,3 is the class of {1,0}... the side through
    // mark 1 avoiding marks 2 and 3 is {0,1}.
    H2Class psi = k.psi_class(1, 2, 3);
    Vec expected(k.class_count());
    expected.set(k.index_of_class(0b0011), Scalar(1));
    CHECK(psi == k.delta_reduce(expected));
    CHECK(!psi.is_zero());
    CHECK_THROWS_AS(k.psi_class(1, 1, 2), DomainError);
}

TEST_CASE("psi classes are independent of the reference legs") {
    for (int m = 4; m <= 6; ++m) {
        const KeelModel& k = keel_model(m);
        for (int i = 0; i < m; ++i) {
            std::optional<H2Class> first;
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < m; ++l) {
                    if (j == l || j == i || l == i)
                        continue;
                    H2Class psi = k.psi_class(i, j, l);
                    if (!first.has_value())
                        first = psi;
                    else
                        CHECK(psi == *first);
                }
        }
    }
}

TEST_CASE("keel_presentation: dimensions of generators and relations") {
    auto p3 = keel_presentation(4);
    CHECK(p3.algebra.dim1() == 1);
    CHECK(p3.algebra.relations().rank() == 1); // H^4 = 0 forces t⊗t = 0

    auto p4 = keel_presentation(5);
    CHECK(p4.algebra.dim1() == 5);
    CHECK(p4.algebra.relations().rank() == 24); // dim H^4 = 1

    auto p5 = keel_presentation(6);
    CHECK(p5.algebra.dim1() == 16);
    CHECK(p5.algebra.relations().rank() == 240); // dim H^4 = 16

    CHECK_THROWS_AS(keel_presentation(3), DomainError);
    CHECK_THROWS_AS(keel_presentation(8), DomainError);
}

TEST_CASE("multiplication in the Keel ring is graded-commutative and unital") {
    const KeelModel& k = keel_model(5);
    const std::int64_t h1 = k.h2_dim();
    Vec one(1);
    one.set(0, Scalar(1));
    for (std::int64_t p = 0; p < h1; ++p) {
        Vec x = Vec::unit(h1, p);
        CHECK(k.multiply(one, 0, x, 1) == x);
        for (std::int64_t q = 0; q < h1; ++q) {
            Vec y = Vec::unit(h1, q);
            CHECK(k.multiply(x, 1, y, 1) == k.multiply(y, 1, x, 1));
        }
    }
}

TEST_CASE("quadraticity at desk scale: tensor dims equal Keel ring dims") {
    // m = 5: the quadratic algebra presented by (H^2, ker mult) has the same
    // graded dimensions as the commutative normal-form oracle.
    auto pres = keel_presentation(5);
    auto dims = degree_dims(pres.algebra, 4).dims;
    const KeelModel& k = keel_model(5);
    CHECK(dims[0] == k.graded_dim(0));
    CHECK(dims[1] == k.graded_dim(1));
    CHECK(dims[2] == k.graded_dim(2));
    CHECK(dims[3] == k.graded_dim(3));
    CHECK(dims[4] == 0);
    CHECK(k.graded_dim(3) == 0); // degree m-2 vanishes in the ring as well
}

TEST_CASE("koszul numerics for P(4): forced dual dimensions") {
    auto pres = keel_presentation(5);
    auto rep = koszul_numeric_check(pres.algebra, 4);
    CHECK(rep.consistent);
    CHECK(rep.dims == std::vector<std::int64_t>{1, 5, 1, 0, 0});
    CHECK(rep.dual_dims == std::vector<std::int64_t>{1, 5, 24, 115, 551});
}
