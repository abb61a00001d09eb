#include "ssg/poly.hpp"

namespace ssg {
namespace poly {

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zadd(const ZPoly& f, const ZPoly& g) {
    ZPoly h(std::max(f.size(), g.size()));
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) h[i] += g[i];
    ztrim(h);
    return h;
}

ZPoly zsub(const ZPoly& f, const ZPoly& g) {
    ZPoly h(std::max(f.size(), g.size()));
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) h[i] -= g[i];
    ztrim(h);
    return h;
}

ZPoly zmul(const ZPoly& f, const ZPoly& g) {
    if (f.empty() || g.empty()) return {};
    ZPoly h(f.size() + g.size() - 1);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    }
    ztrim(h);
    return h;
}

ZPoly zscale(const ZPoly& f, const mpz_class& c) {
    ZPoly h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[i] * c;
    ztrim(h);
    return h;
}

ZPoly zpow(const ZPoly& f, unsigned e) {
    ZPoly acc{1}, b = f;
    while (e) {
        if (e & 1) acc = zmul(acc, b);
        e >>= 1;
        if (e) b = zmul(b, b);
    }
    return acc;
}

mpz_class zeval(const ZPoly& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

static std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& f, const ZPoly& g) {
    if (g.empty()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
    if (g.back() != 1) throw Error(ErrorCode::NotMonic, "integer division needs a monic divisor");
    ZPoly r = f;
    ztrim(r);
    if (r.size() < g.size()) return {{}, r};
    ZPoly q(r.size() - g.size() + 1);
    for (int i = int(r.size()) - int(g.size()); i >= 0; --i) {
        mpz_class c = r[i + g.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] -= c * g[j];
    }
    ztrim(r);
    ztrim(q);
    return {q, r};
}

ZPoly zdiv_exact(const ZPoly& f, const ZPoly& g) {
    auto [q, r] = zdivmod_monic(f, g);
    if (!r.empty()) throw Error(ErrorCode::ExactDivisionFailure, "nonzero remainder over Z");
    return q;
}

bool zdivides(const ZPoly& g, const ZPoly& f) { return zdivmod_monic(f, g).second.empty(); }

ZPoly zcompose_neg(const ZPoly& f) {
    ZPoly h = f;
    for (size_t i = 1; i < h.size(); i += 2) h[i] = -h[i];
    return h;
}

std::vector<u64> zreduce(const ZPoly& f, u64 p) {
    std::vector<u64> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

ZPoly zfrom_strings(const std::vector<std::string>& cs) {
    ZPoly f;
    f.reserve(cs.size());
    for (auto& s : cs) {
        mpz_class v;
        if (v.set_str(s, 10) != 0) throw Error(ErrorCode::InvalidInput, "bad integer literal: " + s);
        f.push_back(v);
    }
    ztrim(f);
    return f;
}

std::vector<std::string> zto_strings(const ZPoly& f) {
    std::vector<std::string> out;
    for (auto& c : f) out.push_back(c.get_str());
    return out;
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> M) {
    size_t n = M.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && M[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

mpz_class zresultant(const ZPoly& f0, const ZPoly& g0) {
    ZPoly f = f0, g = g0;
    ztrim(f);
    ztrim(g);
    if (f.empty() || g.empty()) throw Error(ErrorCode::ZeroPolynomial, "resultant of zero polynomial");
    size_t m = f.size() - 1, n = g.size() - 1;
    if (m == 0 && n == 0) return 1;
    size_t N = m + n;
    std::vector<std::vector<mpz_class>> S(N, std::vector<mpz_class>(N));
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i <= m; ++i) S[r][r + i] = f[m - i];
    for (size_t r = 0; r < m; ++r)
        for (size_t i = 0; i <= n; ++i) S[n + r][r + i] = g[n - i];
    return bareiss_det(std::move(S));
}

}  // namespace poly

AtkinModP reduce_atkin(const BiPolyAtkin& R, u64 p) {
    return {p, poly::zreduce(R.a, p), poly::zreduce(R.b, p)};
}

std::pair<mpz_class, mpz_class> eval_atkin_z(const BiPolyAtkin& R, const mpz_class& y0) {
    return {poly::zeval(R.a, y0), poly::zeval(R.b, y0)};
}

}  // namespace ssg
