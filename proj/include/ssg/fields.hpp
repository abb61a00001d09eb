#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssg/errors.hpp"

namespace ssg {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);
u64 powmod(u64 a, u64 e, u64 m);

inline u64 mulmod(u64 a, u64 b, u64 m) {
    if (m < (u64(1) << 32)) return a * b % m;
    return u64(u128(a) * b % m);
}

inline u64 reduce_signed(i64 a, u64 p) {
    i64 r = a % i64(p);
    return r < 0 ? u64(r + i64(p)) : u64(r);
}

// Legendre symbol (a/p) for odd prime p; any integer a.
int legendre(i64 a, u64 p);
// Kronecker symbol (a/q) for prime q, including q = 2.
int kronecker(i64 a, u64 q);
u64 least_nonresidue(u64 p);
std::optional<u64> sqrt_fp(u64 a, u64 p);
// Multiplicative order of a modulo m (gcd(a,m) = 1).
u64 mult_order(u64 a, u64 m);

// splitmix64; the only randomness source in the library.
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}
    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    u64 below(u64 bound) { return u64(u128(next()) * bound >> 64); }

private:
    u64 state_;
};

constexpr u64 kDefaultSeed = 0xA11CE;

class PrimeField {
public:
    using Elem = u64;

    PrimeField() = default;
    explicit PrimeField(u64 p);

    u64 p() const { return p_; }
    u64 characteristic() const { return p_; }
    u128 order() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(i64 v) const { return reduce_signed(v, p_); }
    Elem add(Elem a, Elem b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return mulmod(a, b, p_); }
    Elem sqr(Elem a) const { return mulmod(a, a, p_); }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, u64 e) const { return powmod(a, e, p_); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool less(Elem a, Elem b) const { return a < b; }
    Elem frobenius(Elem a) const { return a; }
    Elem pth_root(Elem a) const { return a; }
    bool is_square(Elem a) const;
    std::optional<Elem> sqrt(Elem a) const { return sqrt_fp(a, p_); }
    Elem nonsquare() const { return nonsq_; }
    Elem random(SplitMix64& rng) const { return rng.below(p_); }
    std::string render(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const;

private:
    u64 p_ = 0;
    u64 nonsq_ = 0;
};

struct Fp2Elem {
    u64 a = 0;
    u64 b = 0;
    friend bool operator==(const Fp2Elem& x, const Fp2Elem& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Fp2Elem& x, const Fp2Elem& y) { return !(x == y); }
    friend bool operator<(const Fp2Elem& x, const Fp2Elem& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

// F_p[w]/(w^2 - n).  The default n is least_nonresidue(p).
class Fp2Field {
public:
    using Elem = Fp2Elem;

    Fp2Field() = default;
    explicit Fp2Field(u64 p);
    Fp2Field(u64 p, u64 n);

    const PrimeField& base() const { return fp_; }
    u64 p() const { return fp_.p(); }
    u64 nonresidue() const { return n_; }
    u64 characteristic() const { return fp_.p(); }
    u128 order() const { return u128(fp_.p()) * fp_.p(); }

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {fp_.one(), 0}; }
    Elem from_int(i64 v) const { return {fp_.from_int(v), 0}; }
    Elem from_fp(u64 v) const { return {v, 0}; }
    Elem make(u64 a, u64 b) const { return {a % p(), b % p()}; }
    Elem add(Elem x, Elem y) const { return {fp_.add(x.a, y.a), fp_.add(x.b, y.b)}; }
    Elem sub(Elem x, Elem y) const { return {fp_.sub(x.a, y.a), fp_.sub(x.b, y.b)}; }
    Elem neg(Elem x) const { return {fp_.neg(x.a), fp_.neg(x.b)}; }
    Elem mul(Elem x, Elem y) const {
        u64 p = fp_.p();
        if (p < (u64(1) << 31)) {
            // products fit comfortably; reduce once per component
            u64 re = (x.a * y.a % p + n_ * (x.b * y.b % p)) % p;
            u64 im = (x.a * y.b + x.b * y.a) % p;
            return {re, im};
        }
        return {fp_.add(fp_.mul(x.a, y.a), fp_.mul(n_, fp_.mul(x.b, y.b))),
                fp_.add(fp_.mul(x.a, y.b), fp_.mul(x.b, y.a))};
    }
    Elem scale(Elem x, u64 c) const { return {fp_.mul(x.a, c), fp_.mul(x.b, c)}; }
    Elem sqr(Elem x) const { return mul(x, x); }
    u64 norm(Elem x) const { return fp_.sub(fp_.sqr(x.a), fp_.mul(n_, fp_.sqr(x.b))); }
    Elem conj(Elem x) const { return {x.a, fp_.neg(x.b)}; }
    Elem inv(Elem x) const;
    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem pow(Elem x, u64 e) const;
    bool is_zero(Elem x) const { return x.a == 0 && x.b == 0; }
    bool eq(Elem x, Elem y) const { return x == y; }
    bool less(Elem x, Elem y) const { return x < y; }
    bool in_base(Elem x) const { return x.b == 0; }
    Elem frobenius(Elem x) const { return conj(x); }
    Elem pth_root(Elem x) const { return conj(x); }
    bool is_square(Elem x) const;
    std::optional<Elem> sqrt(Elem x) const;
    Elem nonsquare() const { return nonsq_; }
    Elem random(SplitMix64& rng) const { return {rng.below(p()), rng.below(p())}; }
    std::string render(Elem x) const;
    Elem parse(const std::string& s) const;
    // Dense index a*p + b, used for table lookups; matches the (a,b) order.
    u64 index(Elem x) const { return x.a * p() + x.b; }

private:
    PrimeField fp_;
    u64 n_ = 0;
    Elem nonsq_{};
};

using TowerElem = std::vector<Fp2Elem>;

// F_{p^2}[w]/(g) with g the first monic irreducible of degree n in the
// enumeration order documented in build_tower.
class TowerField {
public:
    using Elem = TowerElem;

    TowerField() = default;
    static TowerField build(u64 p, int n, u128 cap = u128(1) << 64);

    const Fp2Field& base() const { return base_; }
    int degree() const { return deg_; }
    const std::vector<Fp2Elem>& modulus() const { return g_; }
    u64 p() const { return base_.p(); }
    u64 characteristic() const { return base_.p(); }
    u128 order() const { return q_; }
    u64 order64() const { return u64(q_); }

    Elem zero() const { return Elem(deg_); }
    Elem one() const {
        Elem e(deg_);
        e[0] = base_.one();
        return e;
    }
    Elem from_int(i64 v) const { return embed(base_.from_int(v)); }
    Elem embed(Fp2Elem x) const {
        Elem e(deg_);
        e[0] = x;
        return e;
    }
    bool in_base(const Elem& x) const;
    Fp2Elem to_base(const Elem& x) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem sqr(const Elem& x) const { return mul(x, x); }
    Elem inv(const Elem& x) const;
    Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }
    Elem pow(const Elem& x, u64 e) const;
    bool is_zero(const Elem& x) const;
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    bool less(const Elem& x, const Elem& y) const;
    Elem frobenius(const Elem& x) const;
    Elem pth_root(const Elem& x) const;
    bool is_square(const Elem& x) const;
    std::optional<Elem> sqrt(const Elem& x) const;
    Elem nonsquare() const { return nonsq_; }
    Elem random(SplitMix64& rng) const;
    std::string render(const Elem& x) const;

private:
    Fp2Field base_;
    int deg_ = 1;
    std::vector<Fp2Elem> g_;
    u128 q_ = 0;
    Elem nonsq_;
};

// Free-function forms of the field operations.
inline std::optional<Fp2Elem> sqrt_fp2(const Fp2Field& F, Fp2Elem s) { return F.sqrt(s); }
inline TowerField build_tower(u64 p, int n, u128 cap = u128(1) << 64) {
    return TowerField::build(p, n, cap);
}
inline std::optional<TowerElem> sqrt_tower(const TowerField& F, const TowerElem& s) {
    return F.sqrt(s);
}

template <class F>
typename F::Elem canonical_sign(const F& field, const typename F::Elem& r) {
    auto m = field.neg(r);
    return field.less(m, r) ? m : r;
}

// Generic Tonelli-Shanks over a field of odd order q < 2^64.
template <class F>
std::optional<typename F::Elem> tonelli_shanks(const F& field, const typename F::Elem& x) {
    using E = typename F::Elem;
    if (field.is_zero(x)) return x;
    u64 q1 = u64(field.order() - 1);
    if (!field.eq(field.pow(x, q1 / 2), field.one())) return std::nullopt;
    int s = 0;
    u64 t = q1;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    E z = field.pow(field.nonsquare(), t);
    E r = field.pow(x, (t + 1) / 2);
    E b = field.pow(x, t);
    int m = s;
    while (!field.eq(b, field.one())) {
        int i = 0;
        E b2 = b;
        while (!field.eq(b2, field.one())) {
            b2 = field.sqr(b2);
            ++i;
        }
        E c = z;
        for (int k = 0; k < m - i - 1; ++k) c = field.sqr(c);
        r = field.mul(r, c);
        z = field.sqr(c);
        b = field.mul(b, z);
        m = i;
    }
    return canonical_sign(field, r);
}

}  // namespace ssg
