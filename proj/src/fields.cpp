#include "ssg/fields.hpp"

#include <algorithm>
#include <cctype>

#include "ssg/poly.hpp"

namespace ssg {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(i64 a, u64 p) {
    u64 r = reduce_signed(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int kronecker(i64 a, u64 q) {
    if (q != 2) return legendre(a, q);
    if (a % 2 == 0) return 0;
    i64 r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

u64 least_nonresidue(u64 p) {
    for (u64 n = 2; n < p; ++n)
        if (legendre(i64(n), p) == -1) return n;
    throw Error(ErrorCode::InvalidInput, "no nonresidue modulo " + std::to_string(p));
}

std::optional<u64> sqrt_fp(u64 a, u64 p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (legendre(i64(a), p) != 1) return std::nullopt;
    u64 r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        u64 t = p - 1;
        int s = 0;
        while ((t & 1) == 0) {
            t >>= 1;
            ++s;
        }
        u64 z = powmod(least_nonresidue(p), t, p);
        r = powmod(a, (t + 1) / 2, p);
        u64 b = powmod(a, t, p);
        int m = s;
        while (b != 1) {
            int i = 0;
            u64 b2 = b;
            while (b2 != 1) {
                b2 = mulmod(b2, b2, p);
                ++i;
            }
            u64 c = z;
            for (int k = 0; k < m - i - 1; ++k) c = mulmod(c, c, p);
            r = mulmod(r, c, p);
            z = mulmod(c, c, p);
            b = mulmod(b, z, p);
            m = i;
        }
    }
    return std::min(r, p - r);
}

u64 mult_order(u64 a, u64 m) {
    a %= m;
    if (m == 1) return 1;
    u64 x = a, k = 1;
    while (x != 1 % m) {
        x = mulmod(x, a, m);
        ++k;
        if (k > m) throw Error(ErrorCode::InvalidInput, "element not invertible");
    }
    return k;
}

// ---- F_p ----

PrimeField::PrimeField(u64 p) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
    if (p >= (u64(1) << 63)) throw Error(ErrorCode::FieldTooLarge, "prime must be below 2^63");
    nonsq_ = p > 2 ? least_nonresidue(p) : 0;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::InvalidInput, "inverse of zero");
    // extended Euclid
    i64 t = 0, nt = 1;
    u64 r = p_, nr = a;
    while (nr) {
        u64 q = r / nr;
        i64 tmp = t - i64(q) * nt;
        t = nt;
        nt = tmp;
        u64 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    return t < 0 ? u64(t + i64(p_)) : u64(t);
}

bool PrimeField::is_square(Elem a) const { return p_ == 2 || legendre(i64(a), p_) >= 0; }

static u64 parse_u64(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorCode::InvalidInput, "bad integer '" + s + "'");
    return std::stoull(s);
}

PrimeField::Elem PrimeField::parse(const std::string& s) const { return parse_u64(s) % p_; }

// ---- F_{p^2} ----

Fp2Field::Fp2Field(u64 p) : Fp2Field(p, p > 2 ? least_nonresidue(p) : 0) {}

Fp2Field::Fp2Field(u64 p, u64 n) : fp_(p), n_(n % p) {
    if (p < 3) throw Error(ErrorCode::InvalidInput, "F_{p^2} needs odd p");
    if (p >= (u64(1) << 32)) throw Error(ErrorCode::FieldTooLarge, "F_{p^2} needs p < 2^32");
    if (legendre(i64(n_), p) != -1) throw Error(ErrorCode::InvalidInput, "w^2 must be a nonresidue");
    // first element in (a,b) order that is a nonsquare
    for (u64 a = 0;; ++a) {
        for (u64 b = 0; b < p; ++b) {
            Elem e{a, b};
            if (!is_zero(e) && !is_square(e)) {
                nonsq_ = e;
                return;
            }
        }
    }
}

Fp2Field::Elem Fp2Field::inv(Elem x) const {
    u64 nm = norm(x);
    if (nm == 0) throw Error(ErrorCode::InvalidInput, "inverse of zero");
    u64 ni = fp_.inv(nm);
    return {fp_.mul(x.a, ni), fp_.mul(fp_.neg(x.b), ni)};
}

Fp2Field::Elem Fp2Field::pow(Elem x, u64 e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = sqr(x);
        e >>= 1;
    }
    return r;
}

bool Fp2Field::is_square(Elem x) const {
    // x is a square in F_{p^2} iff its norm is a square in F_p
    return is_zero(x) || fp_.is_square(norm(x));
}

std::optional<Fp2Elem> Fp2Field::sqrt(Elem s) const {
    const PrimeField& K = fp_;
    if (s.b == 0) {
        if (auto r = K.sqrt(s.a)) return canonical_sign(*this, Elem{*r, 0});
        // a / n is then a square and rho = sqrt(a/n) * w
        auto r = K.sqrt(K.div(s.a, n_));
        return canonical_sign(*this, Elem{0, *r});
    }
    // rho = x + y w with x^2 + n y^2 = a, 2xy = b; Y = y^2 solves
    // 4n Y^2 - 4a Y + b^2 = 0.
    auto disc = K.sqrt(norm(s));
    if (!disc) return std::nullopt;
    u64 inv2n = K.inv(K.mul(2, n_));
    u64 Y1 = K.mul(K.add(s.a, *disc), inv2n);
    u64 Y2 = K.mul(K.sub(s.a, *disc), inv2n);
    auto y = K.sqrt(Y1);
    if (!y || *y == 0) y = K.sqrt(Y2);
    if (!y || *y == 0) return std::nullopt;
    u64 x = K.div(s.b, K.mul(2, *y));
    return canonical_sign(*this, Elem{x, *y});
}

std::string Fp2Field::render(Elem x) const {
    if (x.b == 0) return std::to_string(x.a);
    return std::to_string(x.a) + "+" + std::to_string(x.b) + "*w";
}

Fp2Field::Elem Fp2Field::parse(const std::string& s) const {
    auto plus = s.find('+');
    if (plus == std::string::npos) return {parse_u64(s) % p(), 0};
    std::string tail = s.substr(plus + 1);
    if (tail.size() < 3 || tail.substr(tail.size() - 2) != "*w")
        throw Error(ErrorCode::InvalidInput, "bad F_{p^2} element '" + s + "'");
    return {parse_u64(s.substr(0, plus)) % p(), parse_u64(tail.substr(0, tail.size() - 2)) % p()};
}

// ---- F_{p^{2n}} ----

namespace {

// Candidate modulus number k in the enumeration: coefficients c_{n-1}..c_0
// read as base-p^2 digits of k, most significant first, each digit d giving
// the element (d / p, d % p).
std::vector<Fp2Elem> candidate_modulus(u64 p, int n, u128 k) {
    std::vector<Fp2Elem> g(n + 1);
    g[n] = {1, 0};
    u128 base = u128(p) * p;
    for (int i = 0; i < n; ++i) {
        u64 d = u64(k % base);
        k /= base;
        g[i] = {d / p, d % p};
    }
    return g;
}

bool irreducible_over(const Fp2Field& K, const std::vector<Fp2Elem>& g) {
    int n = int(g.size()) - 1;
    if (n == 1) return true;
    if (K.is_zero(g[0])) return false;
    u64 Q = u64(K.order());
    Poly<Fp2Field> x = poly::x_poly(K);
    Poly<Fp2Field> xq = x;
    for (int k = 1; k <= n / 2; ++k) {
        xq = poly::powmod(K, xq, Q, g);
        auto h = poly::gcd(K, g, poly::sub(K, xq, x));
        if (poly::deg<Fp2Field>(h) > 0) return false;
    }
    return true;
}

}  // namespace

TowerField TowerField::build(u64 p, int n, u128 cap) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "tower degree must be positive");
    u128 q = 1;
    for (int i = 0; i < 2 * n; ++i) {
        q *= p;
        if (q >= cap || q >= (u128(1) << 64))
            throw Error(ErrorCode::FieldTooLarge,
                        "F_{" + std::to_string(p) + "^" + std::to_string(2 * n) + "} exceeds the field cap");
    }
    TowerField T;
    T.base_ = Fp2Field(p);
    T.deg_ = n;
    T.q_ = q;
    for (u128 k = 0;; ++k) {
        auto g = candidate_modulus(p, n, k);
        if (irreducible_over(T.base_, g)) {
            T.g_ = g;
            break;
        }
    }
    // canonical nonsquare: first element in enumeration order failing Euler
    u64 qh = u64((q - 1) / 2);
    for (u128 k = 1;; ++k) {
        Elem e(n);
        u128 kk = k;
        u128 base = u128(p) * p;
        for (int i = 0; i < n; ++i) {
            u64 d = u64(kk % base);
            kk /= base;
            e[i] = {d / p, d % p};
        }
        if (!T.eq(T.pow(e, qh), T.one())) {
            T.nonsq_ = e;
            break;
        }
    }
    return T;
}

bool TowerField::in_base(const Elem& x) const {
    for (int i = 1; i < deg_; ++i)
        if (!base_.is_zero(x[i])) return false;
    return true;
}

Fp2Elem TowerField::to_base(const Elem& x) const {
    if (!in_base(x)) throw Error(ErrorCode::InvalidInput, "element not in F_{p^2}");
    return x[0];
}

TowerField::Elem TowerField::add(const Elem& x, const Elem& y) const {
    Elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = base_.add(x[i], y[i]);
    return r;
}

TowerField::Elem TowerField::sub(const Elem& x, const Elem& y) const {
    Elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = base_.sub(x[i], y[i]);
    return r;
}

TowerField::Elem TowerField::neg(const Elem& x) const {
    Elem r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = base_.neg(x[i]);
    return r;
}

TowerField::Elem TowerField::mul(const Elem& x, const Elem& y) const {
    if (deg_ == 1) return {base_.mul(x[0], y[0])};
    std::vector<Fp2Elem> t(2 * deg_ - 1);
    for (int i = 0; i < deg_; ++i) {
        if (base_.is_zero(x[i])) continue;
        for (int j = 0; j < deg_; ++j) t[i + j] = base_.add(t[i + j], base_.mul(x[i], y[j]));
    }
    // g is monic: w^n = -(g_0 + ... + g_{n-1} w^{n-1})
    for (int k = 2 * deg_ - 2; k >= deg_; --k) {
        Fp2Elem c = t[k];
        if (base_.is_zero(c)) continue;
        for (int i = 0; i < deg_; ++i) t[k - deg_ + i] = base_.sub(t[k - deg_ + i], base_.mul(c, g_[i]));
    }
    t.resize(deg_);
    return t;
}

TowerField::Elem TowerField::inv(const Elem& x) const {
    if (is_zero(x)) throw Error(ErrorCode::InvalidInput, "inverse of zero");
    return pow(x, u64(q_ - 2));
}

TowerField::Elem TowerField::pow(const Elem& x0, u64 e) const {
    Elem r = one(), x = x0;
    while (e) {
        if (e & 1) r = mul(r, x);
        e >>= 1;
        if (e) x = sqr(x);
    }
    return r;
}

bool TowerField::is_zero(const Elem& x) const {
    for (auto& c : x)
        if (!base_.is_zero(c)) return false;
    return true;
}

bool TowerField::less(const Elem& x, const Elem& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

TowerField::Elem TowerField::frobenius(const Elem& x) const { return pow(x, base_.p()); }

TowerField::Elem TowerField::pth_root(const Elem& x) const {
    // the p-th root is x^{p^{2n-1}}
    Elem r = x;
    for (int i = 0; i < 2 * deg_ - 1; ++i) r = pow(r, base_.p());
    return r;
}

bool TowerField::is_square(const Elem& x) const {
    return is_zero(x) || eq(pow(x, u64((q_ - 1) / 2)), one());
}

std::optional<TowerField::Elem> TowerField::sqrt(const Elem& x) const { return tonelli_shanks(*this, x); }

TowerField::Elem TowerField::random(SplitMix64& rng) const {
    Elem e(deg_);
    for (auto& c : e) c = base_.random(rng);
    return e;
}

std::string TowerField::render(const Elem& x) const {
    if (in_base(x)) return base_.render(x[0]);
    std::string s = "(";
    for (int i = 0; i < deg_; ++i) {
        if (i) s += ",";
        s += base_.render(x[i]);
    }
    return s + ")";
}

}  // namespace ssg
