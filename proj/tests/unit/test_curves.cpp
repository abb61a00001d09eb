#include "doctest.h"
#include "oracles.hpp"
#include "ssg/curves.hpp"
#include "ssg/isograph.hpp"
#include "ssg/modular_data.hpp"
#include "ssg/search.hpp"

using namespace ssg;

TEST_CASE("j-invariants of the special models") {
    for (u64 p : {5, 7, 11, 13, 101}) {
        PrimeField K(p);
        CHECK(j_invariant(K, CurveModel<PrimeField>{Shape::TwoTor, 0, 1}) == 1728 % p);
        CHECK(j_invariant(K, CurveModel<PrimeField>{Shape::Short, 0, 1}) == 0);
        for (u64 d = 1; d < p; ++d) {
            CurveModel<PrimeField> E{Shape::Search, 0, d};
            if (is_valid(K, E)) CHECK(j_invariant(K, E) == 1728 % p);
        }
    }
}

TEST_CASE("model conversions preserve the point count") {
    for (u64 p : {7, 11, 13, 31}) {
        PrimeField K(p);
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b)
                for (Shape sh : {Shape::TwoTor, Shape::Search}) {
                    CurveModel<PrimeField> E{sh, a, b};
                    if (!is_valid(K, E)) continue;
                    auto S = to_short(K, E);
                    // y^2 = cubic in the original shape, counted directly
                    i64 direct = 1;
                    for (u64 x = 0; x < p; ++x) {
                        u64 r = sh == Shape::TwoTor ? x * ((x * x + a * x + b) % p) % p
                                                    : (x + p - a) % p * ((x * x + p - b) % p) % p;
                        for (u64 y = 0; y < p; ++y) direct += (y * y % p == r);
                    }
                    CHECK(direct == oracle::point_count(p, S.c1, S.c2));
                }
    }
}

TEST_CASE("twists") {
    for (u64 p = 5; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        PrimeField K(p);
        for (u64 A = 0; A < p; ++A)
            for (u64 B = 0; B < p; ++B) {
                CurveModel<PrimeField> E{Shape::Short, A, B};
                if (!is_valid(K, E)) continue;
                auto T = quadratic_twist(K, E);
                REQUIRE(count_points_fp(K, E) + count_points_fp(K, T) == i64(2 * (p + 1)));
                REQUIRE(j_invariant(K, T) == j_invariant(K, E));
                REQUIRE(j_invariant(K, quadratic_twist(K, T)) == j_invariant(K, E));
            }
    }
}

TEST_CASE("point counts") {
    CHECK(count_points_fp(PrimeField(7), {Shape::TwoTor, 0, 1}) == 8);
    CHECK(count_points_fp(PrimeField(5), {Shape::TwoTor, 0, 1}) == 4);
    for (u64 p : {5, 7, 13, 29, 53, 97}) {
        PrimeField K(p);
        for (u64 A = 0; A < p; ++A)
            for (u64 B = 0; B < p; B += 3) {
                CurveModel<PrimeField> E{Shape::Short, A, B};
                if (!is_valid(K, E)) continue;
                i64 n = count_points_fp(K, E);
                CHECK(n == oracle::point_count(p, A, B));
                i64 t = i64(p) + 1 - n;
                CHECK(u64(t * t) <= 4 * p);
            }
    }
}

TEST_CASE("supersingularity over F_p") {
    CHECK(is_supersingular_fp(PrimeField(7), curve_with_j(PrimeField(7), u64(1728 % 7))));
    CHECK(is_supersingular_j({0, 0}, 11));
    CHECK(!is_supersingular_j({5, 0}, 11));
}

TEST_CASE("minimal torsion field") {
    CHECK(minimal_torsion_field(1000003, 2) == 1);
    CHECK(minimal_torsion_field(1000003, 3) == 1);
    CHECK(minimal_torsion_field(79, 71) == 35);
    CHECK(minimal_torsion_field(11, 5) == 1);
    CHECK_THROWS_AS(minimal_torsion_field(5, 5), Error);
}

TEST_CASE("3-torsion subgroups over F_25") {
    Fp2Field K(5);
    CurveModel<Fp2Field> E{Shape::Short, K.zero(), K.one()};
    SplitMix64 rng(1);
    auto T = torsion_subgroups(K, E, 3, 6, rng);
    REQUIRE(T.subgroups.size() == 4);
    for (size_t i = 0; i < T.subgroups.size(); ++i) {
        auto& P = T.subgroups[i];
        CHECK(on_curve(K, E, P));
        CHECK(!P.inf);
        CHECK(point_mul(K, E, P, 3).inf);
        for (size_t k = 0; k < i; ++k) {
            auto& Q = T.subgroups[k];
            CHECK(!point_eq(K, P, Q));
            CHECK(!point_eq(K, P, point_neg(K, Q)));
        }
    }
}

TEST_CASE("2-isogeny step") {
    PrimeField K(13);
    auto out = two_isogeny_step(K, CurveModel<PrimeField>{Shape::TwoTor, 0, 1});
    CHECK(out[0].c1 == 0);
    CHECK(out[0].c2 == K.from_int(-4));
    // every image is 2-isogenous: Phi_2(j, j') = 0
    const auto& Phi = classical_modular_poly(2);
    for (u64 p : {11, 13, 37, 101}) {
        PrimeField F(p);
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 1; b < p; ++b) {
                CurveModel<PrimeField> E{Shape::TwoTor, a, b};
                if (!is_valid(F, E) || !F.sqrt(F.sub(F.sqr(a), F.mul(4, b)))) continue;
                u64 j = j_invariant(F, E);
                for (auto& m : two_isogeny_step(F, E)) CHECK(eval_bivariate(F, Phi, j, j_invariant(F, m)) == 0);
            }
    }
}

TEST_CASE("Velu quotients stay supersingular") {
    for (u64 p : {11, 13, 29, 41}) {
        Fp2Field K(p);
        for (u64 ell : {3, 5}) {
            if (minimal_torsion_field(p, ell) > 1) continue;
            for (auto& j : supersingular_set(p)) {
                auto E = curve_with_j(K, j);
                // over F_{p^2} the group is (Z/(p+1))^2 or (Z/(p-1))^2
                SplitMix64 rng(j.a * 31 + j.b);
                for (u64 N : {p + 1, p - 1}) {
                    auto M = E;
                    if (N % ell) continue;
                    try {
                        auto T = torsion_subgroups(K, M, ell, N, rng);
                        for (auto& P : T.subgroups) {
                            auto Q = velu_quotient(K, M, P, ell);
                            CHECK(is_supersingular_j(j_invariant(K, Q), p));
                        }
                    } catch (const Error& e) {
                        CHECK(e.code() == ErrorCode::WrongGroupStructure);
                    }
                }
            }
        }
    }
    Fp2Field K(11);
    auto E = curve_with_j(K, K.zero());
    CHECK_THROWS_AS(velu_quotient(K, E, CurvePoint<Fp2Field>{}, 3), Error);
    CHECK_THROWS_AS(velu_quotient(K, E, CurvePoint<Fp2Field>{}, 2), Error);
}

TEST_CASE("supersingular search") {
    auto s7 = find_supersingular(7);
    CHECK(s7.model.c1 == 0);
    CHECK(s7.model.c2 == 6);
    CHECK(s7.j0 == 6);
    CHECK(find_supersingular(13).j0 == 5);
    auto s11 = find_supersingular(11);
    CHECK(s11.j0 == 1);
    CHECK(s11.model.c2 == 10);
    for (u64 p = 5; p < 400; ++p) {
        if (!is_prime(p)) continue;
        auto s = find_supersingular(p);
        PrimeField K(p);
        CHECK(s.model.shape == Shape::TwoTor);
        CHECK(is_valid(K, s.model));
        CHECK(j_invariant(K, s.model) == s.j0);
        CHECK(count_points_fp(K, s.model) == i64(p + 1));
    }
}

TEST_CASE("Legendre vectors") {
    for (u64 p : {13, 17, 101}) {
        auto [v, w] = legendre_vectors(p, least_nonresidue(p));
        CHECK(v[0] == 0);
        long sum = 0;
        for (auto x : v) sum += x;
        CHECK(sum == 0);
        for (auto x : w) CHECK(x != 0);
    }
}
