#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ssg/errors.hpp"
#include "ssg/fields.hpp"

namespace ssg {

// Dense univariate polynomials, constant term first.  The zero polynomial is
// the empty vector.
template <class F>
using Poly = std::vector<typename F::Elem>;

using ZPoly = std::vector<mpz_class>;

namespace poly {

template <class F>
void trim(const F& K, Poly<F>& f) {
    while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

template <class F>
int deg(const Poly<F>& f) {
    return int(f.size()) - 1;
}

template <class F>
Poly<F> constant(const F& K, const typename F::Elem& c) {
    if (K.is_zero(c)) return {};
    return {c};
}

template <class F>
Poly<F> x_minus(const F& K, const typename F::Elem& r) {
    return {K.neg(r), K.one()};
}

template <class F>
Poly<F> add(const F& K, const Poly<F>& f, const Poly<F>& g) {
    Poly<F> h(std::max(f.size(), g.size()), K.zero());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) h[i] = K.add(h[i], g[i]);
    trim(K, h);
    return h;
}

template <class F>
Poly<F> sub(const F& K, const Poly<F>& f, const Poly<F>& g) {
    Poly<F> h(std::max(f.size(), g.size()), K.zero());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) h[i] = K.sub(h[i], g[i]);
    trim(K, h);
    return h;
}

template <class F>
Poly<F> scale(const F& K, const Poly<F>& f, const typename F::Elem& c) {
    Poly<F> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = K.mul(f[i], c);
    trim(K, h);
    return h;
}

template <class F>
Poly<F> mul(const F& K, const Poly<F>& f, const Poly<F>& g) {
    if (f.empty() || g.empty()) return {};
    Poly<F> h(f.size() + g.size() - 1, K.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (K.is_zero(f[i])) continue;
        for (size_t j = 0; j < g.size(); ++j) h[i + j] = K.add(h[i + j], K.mul(f[i], g[j]));
    }
    trim(K, h);
    return h;
}

template <class F>
Poly<F> monic(const F& K, const Poly<F>& f) {
    if (f.empty()) return f;
    return scale(K, f, K.inv(f.back()));
}

// Returns (quotient, remainder).
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& K, const Poly<F>& f, const Poly<F>& g) {
    if (g.empty()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
    Poly<F> r = f;
    trim(K, r);
    if (r.size() < g.size()) return {{}, r};
    Poly<F> q(r.size() - g.size() + 1, K.zero());
    auto lc_inv = K.inv(g.back());
    for (int i = int(r.size()) - int(g.size()); i >= 0; --i) {
        auto c = K.mul(r[i + g.size() - 1], lc_inv);
        q[i] = c;
        if (K.is_zero(c)) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = K.sub(r[i + j], K.mul(c, g[j]));
    }
    trim(K, r);
    trim(K, q);
    return {q, r};
}

template <class F>
Poly<F> mod(const F& K, const Poly<F>& f, const Poly<F>& g) {
    return divmod(K, f, g).second;
}

// Exact division; aborts with ExactDivisionFailure on a nonzero remainder.
template <class F>
Poly<F> div_exact(const F& K, const Poly<F>& f, const Poly<F>& g) {
    auto [q, r] = divmod(K, f, g);
    if (!r.empty()) throw Error(ErrorCode::ExactDivisionFailure, "nonzero remainder");
    return q;
}

template <class F>
Poly<F> gcd(const F& K, Poly<F> f, Poly<F> g) {
    trim(K, f);
    trim(K, g);
    while (!g.empty()) {
        auto r = mod(K, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(K, f);
}

template <class F>
Poly<F> derivative(const F& K, const Poly<F>& f) {
    if (f.size() <= 1) return {};
    Poly<F> d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = K.mul(f[i], K.from_int(i64(i % K.characteristic())));
    trim(K, d);
    return d;
}

template <class F>
typename F::Elem eval(const F& K, const Poly<F>& f, const typename F::Elem& x) {
    auto acc = K.zero();
    for (size_t i = f.size(); i-- > 0;) acc = K.add(K.mul(acc, x), f[i]);
    return acc;
}

template <class F>
Poly<F> mulmod(const F& K, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
    return mod(K, mul(K, a, b), m);
}

template <class F>
Poly<F> powmod(const F& K, Poly<F> base, u64 e, const Poly<F>& m) {
    Poly<F> acc = mod(K, Poly<F>{K.one()}, m);
    base = mod(K, base, m);
    while (e) {
        if (e & 1) acc = mulmod(K, acc, base, m);
        e >>= 1;
        if (e) base = mulmod(K, base, base, m);
    }
    return acc;
}

template <class F>
Poly<F> x_poly(const F& K) {
    return {K.zero(), K.one()};
}

// y^{c^k} mod f where c is the characteristic; k = 0 gives y mod f.
template <class F>
Poly<F> powmod_frobenius(const F& K, const Poly<F>& f, unsigned k) {
    if (deg<F>(f) < 1) throw Error(ErrorCode::InvalidInput, "powmod_frobenius needs deg f >= 1");
    Poly<F> r = mod(K, x_poly(K), f);
    for (unsigned i = 0; i < k; ++i) r = powmod(K, r, K.characteristic(), f);
    return r;
}

// Resultant by the Euclidean recurrence.
template <class F>
typename F::Elem resultant(const F& K, Poly<F> f, Poly<F> g) {
    trim(K, f);
    trim(K, g);
    if (f.empty() || g.empty()) throw Error(ErrorCode::ZeroPolynomial, "resultant of zero polynomial");
    auto acc = K.one();
    while (true) {
        int m = deg<F>(f), n = deg<F>(g);
        if (n == 0) return K.mul(acc, K.pow(g[0], u64(m)));
        if (m == 0) return K.mul(acc, K.pow(f[0], u64(n)));
        auto r = mod(K, f, g);
        if (r.empty()) return K.zero();
        if ((m & 1) && (n & 1)) acc = K.neg(acc);
        acc = K.mul(acc, K.pow(g.back(), u64(m - deg<F>(r))));
        f = std::move(g);
        g = std::move(r);
    }
}

template <class F>
Poly<F> pth_root(const F& K, const Poly<F>& f) {
    u64 p = K.characteristic();
    Poly<F> h;
    for (size_t i = 0; i < f.size(); i += p) h.push_back(K.pth_root(f[i]));
    trim(K, h);
    return h;
}

// Monic squarefree polynomial with the same roots as f.
template <class F>
Poly<F> radical(const F& K, const Poly<F>& f0) {
    Poly<F> f = f0;
    trim(K, f);
    if (f.empty()) throw Error(ErrorCode::ZeroPolynomial, "radical of zero polynomial");
    f = monic(K, f);
    if (deg<F>(f) == 0) return f;
    auto d = derivative(K, f);
    if (d.empty()) return radical(K, pth_root(K, f));
    auto g = gcd(K, f, d);
    if (deg<F>(g) == 0) return f;
    auto w = div_exact(K, f, g);
    while (true) {
        auto y = gcd(K, w, g);
        if (deg<F>(y) == 0) break;
        g = div_exact(K, g, y);
    }
    if (deg<F>(g) == 0) return monic(K, w);
    return monic(K, mul(K, w, radical(K, pth_root(K, g))));
}

template <class F>
bool is_squarefree(const F& K, const Poly<F>& f) {
    if (deg<F>(f) <= 0) return true;
    return deg<F>(gcd(K, f, derivative(K, f))) == 0;
}

// Number of irreducible quadratic factors of a squarefree f over F_p.
template <class F>
int count_quadratic_factors(const F& K, const Poly<F>& f0) {
    Poly<F> f = f0;
    trim(K, f);
    if (deg<F>(f) <= 0) return 0;
    if (!is_squarefree(K, f)) throw Error(ErrorCode::NotSquarefree, "count_quadratic_factors");
    f = monic(K, f);
    auto x = x_poly(K);
    auto xp = powmod_frobenius(K, f, 1);
    auto g1 = gcd(K, f, sub(K, xp, x));
    auto f2 = div_exact(K, f, g1);
    if (deg<F>(f2) <= 0) return 0;
    auto xpp = powmod_frobenius(K, f2, 2);
    auto g2 = gcd(K, f2, sub(K, xpp, mod(K, x, f2)));
    return deg<F>(g2) / 2;
}

// Largest k with (x - r)^k | f.
template <class F>
int root_multiplicity(const F& K, Poly<F> f, const typename F::Elem& r) {
    trim(K, f);
    if (f.empty()) throw Error(ErrorCode::ZeroPolynomial, "root_multiplicity");
    int k = 0;
    auto lin = x_minus(K, r);
    while (deg<F>(f) >= 1 && K.is_zero(eval(K, f, r))) {
        f = div_exact(K, f, lin);
        ++k;
    }
    return k;
}

// Roots {j1, j2} of x^2 - a x + b in the field, canonically ordered; absent
// when the discriminant is a nonsquare there.
template <class F>
std::optional<std::array<typename F::Elem, 2>> solve_monic_quadratic(const F& K, const typename F::Elem& a,
                                                                      const typename F::Elem& b) {
    auto disc = K.sub(K.sqr(a), K.mul(K.from_int(4), b));
    auto s = K.sqrt(disc);
    if (!s) return std::nullopt;
    auto half = K.inv(K.from_int(2));
    auto r1 = K.mul(K.add(a, *s), half);
    auto r2 = K.mul(K.sub(a, *s), half);
    if (K.less(r2, r1)) std::swap(r1, r2);
    return std::array<typename F::Elem, 2>{r1, r2};
}

// ---- integer polynomials -------------------------------------------------

void ztrim(ZPoly& f);
ZPoly zadd(const ZPoly& f, const ZPoly& g);
ZPoly zsub(const ZPoly& f, const ZPoly& g);
ZPoly zmul(const ZPoly& f, const ZPoly& g);
ZPoly zscale(const ZPoly& f, const mpz_class& c);
ZPoly zpow(const ZPoly& f, unsigned e);
mpz_class zeval(const ZPoly& f, const mpz_class& x);
// Quotient by a monic divisor; ExactDivisionFailure on nonzero remainder.
ZPoly zdiv_exact(const ZPoly& f, const ZPoly& g);
bool zdivides(const ZPoly& g, const ZPoly& f);
ZPoly zcompose_neg(const ZPoly& f);  // f(-y)
std::vector<u64> zreduce(const ZPoly& f, u64 p);
ZPoly zfrom_strings(const std::vector<std::string>& cs);
std::vector<std::string> zto_strings(const ZPoly& f);
// Determinant of an integer matrix by Bareiss fraction-free elimination.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> M);
// Sylvester-matrix resultant over the integers.
mpz_class zresultant(const ZPoly& f, const ZPoly& g);

// Reduce a ZPoly into a field with F_p coefficients embedded.
template <class F>
Poly<F> reduce_into(const F& K, const ZPoly& f) {
    auto r = zreduce(f, K.characteristic());
    Poly<F> out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = K.from_int(i64(r[i]));
    trim(K, out);
    return out;
}

}  // namespace poly

// R_l(x,y) = x^2 - a(y) x + b(y).
struct BiPolyAtkin {
    int ell = 0;
    ZPoly a;  // degree ell, monic
    ZPoly b;  // degree ell + 1, monic
};

// a, b reduced modulo p.
struct AtkinModP {
    u64 p = 0;
    std::vector<u64> a;
    std::vector<u64> b;
};

AtkinModP reduce_atkin(const BiPolyAtkin& R, u64 p);

template <class F>
std::pair<typename F::Elem, typename F::Elem> eval_atkin(const F& K, const AtkinModP& R, const typename F::Elem& y0) {
    auto horner = [&](const std::vector<u64>& c) {
        auto acc = K.zero();
        for (size_t i = c.size(); i-- > 0;) acc = K.add(K.mul(acc, y0), K.from_int(i64(c[i])));
        return acc;
    };
    return {horner(R.a), horner(R.b)};
}

std::pair<mpz_class, mpz_class> eval_atkin_z(const BiPolyAtkin& R, const mpz_class& y0);

}  // namespace ssg
