#pragma once

#include <array>
#include <string>
#include <vector>

#include "ssg/errors.hpp"
#include "ssg/fields.hpp"
#include "ssg/poly.hpp"

namespace ssg {

enum class Shape {
    Short,   // y^2 = x^3 + A x + B
    TwoTor,  // y^2 = x (x^2 + a x + b)
    Search,  // y^2 = (x - c)(x^2 - d)
};

const char* shape_name(Shape s);

template <class F>
struct CurveModel {
    Shape shape = Shape::Short;
    typename F::Elem c1{};  // A, a or c
    typename F::Elem c2{};  // B, b or d
};

template <class F>
struct CurvePoint {
    bool inf = true;
    typename F::Elem x{};
    typename F::Elem y{};
};

template <class F>
struct TorsionBasisResult {
    std::vector<CurvePoint<F>> subgroups;  // one generator per subgroup
};

template <class F>
CurveModel<F> short_model(const typename F::Elem& A, const typename F::Elem& B) {
    return {Shape::Short, A, B};
}

template <class F>
CurveModel<F> to_short(const F& K, const CurveModel<F>& E) {
    switch (E.shape) {
    case Shape::Short:
        return E;
    case Shape::TwoTor: {
        // x^3 + a x^2 + b x, shift x -> x - a/3
        auto a = E.c1, b = E.c2;
        auto i3 = K.inv(K.from_int(3));
        auto a2 = K.sqr(a);
        auto A = K.sub(b, K.mul(a2, i3));
        auto B = K.sub(K.mul(K.mul(K.from_int(2), K.mul(a2, a)), K.inv(K.from_int(27))), K.mul(K.mul(a, b), i3));
        return {Shape::Short, A, B};
    }
    case Shape::Search: {
        // x^3 - c x^2 - d x + c d
        auto c = E.c1, d = E.c2;
        auto i3 = K.inv(K.from_int(3));
        auto c2 = K.sqr(c);
        auto A = K.neg(K.add(d, K.mul(c2, i3)));
        auto t1 = K.mul(K.mul(K.from_int(2), K.mul(c2, c)), K.inv(K.from_int(27)));
        auto t2 = K.mul(K.mul(K.from_int(2), K.mul(c, d)), i3);
        return {Shape::Short, A, K.sub(t2, t1)};
    }
    }
    return E;
}

template <class F>
typename F::Elem discriminant_factor(const F& K, const CurveModel<F>& E) {
    switch (E.shape) {
    case Shape::Short:
        return K.add(K.mul(K.from_int(4), K.mul(K.sqr(E.c1), E.c1)), K.mul(K.from_int(27), K.sqr(E.c2)));
    case Shape::TwoTor:
        return K.mul(E.c2, K.sub(K.sqr(E.c1), K.mul(K.from_int(4), E.c2)));
    case Shape::Search:
        return K.mul(E.c2, K.sub(K.sqr(E.c1), E.c2));
    }
    return K.zero();
}

template <class F>
bool is_valid(const F& K, const CurveModel<F>& E) {
    return !K.is_zero(discriminant_factor(K, E));
}

template <class F>
typename F::Elem j_invariant(const F& K, const CurveModel<F>& E) {
    auto S = to_short(K, E);
    auto A3 = K.mul(K.from_int(4), K.mul(K.sqr(S.c1), S.c1));
    auto den = K.add(A3, K.mul(K.from_int(27), K.sqr(S.c2)));
    if (K.is_zero(den)) throw Error(ErrorCode::InvalidInput, "singular curve");
    return K.div(K.mul(K.from_int(1728), A3), den);
}

// Short(z^2 A, z^3 B) with z the field's canonical nonsquare.
template <class F>
CurveModel<F> quadratic_twist(const F& K, const CurveModel<F>& E) {
    auto S = to_short(K, E);
    auto z = K.nonsquare();
    auto z2 = K.sqr(z);
    return {Shape::Short, K.mul(z2, S.c1), K.mul(K.mul(z2, z), S.c2)};
}

// Short model with the given j (j != 0, 1728 uses y^2 = x^3 + 3k x + 2k).
template <class F>
CurveModel<F> curve_with_j(const F& K, const typename F::Elem& j) {
    if (K.is_zero(j)) return {Shape::Short, K.zero(), K.one()};
    if (K.eq(j, K.from_int(1728))) return {Shape::Short, K.one(), K.zero()};
    auto k = K.div(j, K.sub(K.from_int(1728), j));
    return {Shape::Short, K.mul(K.from_int(3), k), K.mul(K.from_int(2), k)};
}

// ---- point arithmetic on short models ----

template <class F>
bool on_curve(const F& K, const CurveModel<F>& E, const CurvePoint<F>& P) {
    if (P.inf) return true;
    auto rhs = K.add(K.add(K.mul(K.sqr(P.x), P.x), K.mul(E.c1, P.x)), E.c2);
    return K.eq(K.sqr(P.y), rhs);
}

template <class F>
CurvePoint<F> point_neg(const F& K, const CurvePoint<F>& P) {
    if (P.inf) return P;
    return {false, P.x, K.neg(P.y)};
}

template <class F>
bool point_eq(const F& K, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return K.eq(P.x, Q.x) && K.eq(P.y, Q.y);
}

template <class F>
CurvePoint<F> point_add(const F& K, const CurveModel<F>& E, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    typename F::Elem lam;
    if (K.eq(P.x, Q.x)) {
        if (K.is_zero(K.add(P.y, Q.y))) return {};
        lam = K.div(K.add(K.mul(K.from_int(3), K.sqr(P.x)), E.c1), K.mul(K.from_int(2), P.y));
    } else {
        lam = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    auto x3 = K.sub(K.sub(K.sqr(lam), P.x), Q.x);
    auto y3 = K.sub(K.mul(lam, K.sub(P.x, x3)), P.y);
    return {false, x3, y3};
}

template <class F>
CurvePoint<F> point_mul(const F& K, const CurveModel<F>& E, CurvePoint<F> P, u64 n) {
    CurvePoint<F> R;
    while (n) {
        if (n & 1) R = point_add(K, E, R, P);
        n >>= 1;
        if (n) P = point_add(K, E, P, P);
    }
    return R;
}

u64 minimal_torsion_field(u64 p, u64 ell);

// Generators of the ell+1 cyclic subgroups of order ell of a short model
// whose group of rational points is (Z/N)^2 with ell | N.
template <class F>
TorsionBasisResult<F> torsion_subgroups(const F& K, const CurveModel<F>& E, u64 ell, u64 N, SplitMix64& rng) {
    if (E.shape != Shape::Short) throw Error(ErrorCode::InvalidInput, "torsion_subgroups needs a short model");
    if (N % ell) throw Error(ErrorCode::WrongGroupStructure, "ell does not divide N");
    const int budget = 64 * (ell == 2 ? 7 : 6);
    int trials = 0;
    auto sample = [&]() -> CurvePoint<F> {
        while (trials < budget) {
            ++trials;
            auto x = K.random(rng);
            auto rhs = K.add(K.add(K.mul(K.sqr(x), x), K.mul(E.c1, x)), E.c2);
            auto y = K.sqrt(rhs);
            if (!y) continue;
            CurvePoint<F> P{false, x, *y};
            auto Q = point_mul(K, E, P, N / ell);
            if (!point_mul(K, E, Q, ell).inf)
                throw Error(ErrorCode::WrongGroupStructure, "point order does not divide N");
            if (!Q.inf) return Q;
        }
        throw Error(ErrorCode::WrongGroupStructure, "trial budget exhausted");
    };
    auto P1 = sample();
    std::vector<CurvePoint<F>> span{P1};
    for (u64 k = 2; k < ell; ++k) span.push_back(point_add(K, E, span.back(), P1));
    CurvePoint<F> P2;
    while (true) {
        auto Q = sample();
        bool dependent = false;
        for (auto& S : span)
            if (point_eq(K, Q, S)) dependent = true;
        if (!dependent) {
            P2 = Q;
            break;
        }
    }
    TorsionBasisResult<F> out;
    out.subgroups.push_back(P1);
    CurvePoint<F> G = P2;
    for (u64 k = 0; k < ell; ++k) {
        out.subgroups.push_back(G);
        G = point_add(K, E, G, P1);
    }
    return out;
}

// Codomains of the three 2-isogenies: kernel (0,0) first, then the kernels at
// the roots of x^2 + a x + b in canonical order.
template <class F>
std::array<CurveModel<F>, 3> two_isogeny_step(const F& K, const CurveModel<F>& m) {
    if (m.shape != Shape::TwoTor) throw Error(ErrorCode::InvalidInput, "two_isogeny_step needs a TwoTor model");
    auto a = m.c1, b = m.c2;
    auto four = K.from_int(4);
    auto image = [&](const typename F::Elem& ai, const typename F::Elem& bi) {
        return CurveModel<F>{Shape::TwoTor, K.neg(K.mul(K.from_int(2), ai)), K.sub(K.sqr(ai), K.mul(four, bi))};
    };
    auto s = K.sqrt(K.sub(K.sqr(a), K.mul(four, b)));
    if (!s) throw Error(ErrorCode::InvalidInput, "2-torsion not rational over the working field");
    auto half = K.inv(K.from_int(2));
    auto r1 = K.mul(K.sub(*s, a), half);
    auto r2 = K.mul(K.sub(K.neg(*s), a), half);
    if (K.less(r2, r1)) std::swap(r1, r2);
    std::array<CurveModel<F>, 3> out;
    out[0] = image(a, b);
    int i = 1;
    for (auto r : {r1, r2}) {
        auto ai = K.add(a, K.mul(K.from_int(3), r));
        auto bi = K.sub(K.neg(K.mul(a, r)), K.mul(K.from_int(2), b));
        out[i++] = image(ai, bi);
    }
    return out;
}

// Velu quotient of a short model by <P>, ell odd.
template <class F>
CurveModel<F> velu_quotient(const F& K, const CurveModel<F>& E, const CurvePoint<F>& P, u64 ell) {
    if (E.shape != Shape::Short) throw Error(ErrorCode::InvalidInput, "velu_quotient needs a short model");
    if (ell < 3 || ell % 2 == 0) throw Error(ErrorCode::BadKernelOrder, "velu_quotient needs odd ell");
    if (P.inf || !point_mul(K, E, P, ell).inf) throw Error(ErrorCode::BadKernelOrder, "generator order is not ell");
    auto v = K.zero(), w = K.zero();
    CurvePoint<F> Q = P;
    for (u64 k = 1; k <= (ell - 1) / 2; ++k) {
        if (Q.inf) throw Error(ErrorCode::BadKernelOrder, "generator order is below ell");
        auto x2 = K.sqr(Q.x);
        auto vQ = K.mul(K.from_int(2), K.add(K.mul(K.from_int(3), x2), E.c1));
        auto uQ = K.mul(K.from_int(4), K.add(K.add(K.mul(x2, Q.x), K.mul(E.c1, Q.x)), E.c2));
        v = K.add(v, vQ);
        w = K.add(w, K.add(uQ, K.mul(Q.x, vQ)));
        Q = point_add(K, E, Q, P);
    }
    return {Shape::Short, K.sub(E.c1, K.mul(K.from_int(5), v)), K.sub(E.c2, K.mul(K.from_int(7), w))};
}

// #E(F_p) by a Legendre-symbol sum.
i64 count_points_fp(const PrimeField& K, const CurveModel<PrimeField>& E);
bool is_supersingular_fp(const PrimeField& K, const CurveModel<PrimeField>& E);

template <class F>
std::string render_model(const F& K, const CurveModel<F>& E) {
    return std::string(shape_name(E.shape)) + "(" + K.render(E.c1) + "," + K.render(E.c2) + ")";
}

}  // namespace ssg
