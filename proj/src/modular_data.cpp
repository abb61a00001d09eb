#include "ssg/modular_data.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ssg/embedded.hpp"
#include "ssg/parallel.hpp"

namespace ssg {

using namespace poly;

// ---- hauptmoduls ----

namespace {

ZPoly zp(std::initializer_list<long> cs) {
    ZPoly f;
    for (long c : cs) f.push_back(mpz_class(c));
    ztrim(f);
    return f;
}

HauptmodulModel make_model(int ell) {
    HauptmodulModel M;
    M.ell = ell;
    M.den = zp({0, 1});
    switch (ell) {
    case 2:
        M.num = zpow(zp({16, 1}), 3);
        M.n = 4096;
        break;
    case 3:
        M.num = zmul(zp({27, -1}), zpow(zp({-3, 1}), 3));
        M.n = 729;
        break;
    case 5:
        M.num = zpow(zp({5, 10, 1}), 3);
        M.n = 125;
        break;
    case 7:
        M.num = zscale(zmul(zp({49, -13, 1}), zpow(zp({1, -5, 1}), 3)), -1);
        M.n = 49;
        break;
    case 13:
        M.num = zscale(zmul(zp({13, -5, 1}), zpow(zp({1, -19, 20, -7, 1}), 3)), -1);
        M.n = 13;
        break;
    default:
        throw Error(ErrorCode::UnknownLevel, "no hauptmodul model for level " + std::to_string(ell));
    }
    return M;
}

using Laurent = std::map<long, mpz_class>;

void laurent_add(Laurent& L, long e, const mpz_class& c) {
    auto& v = L[e];
    v += c;
    if (v == 0) L.erase(e);
}

Laurent laurent_mul(const Laurent& A, const Laurent& B) {
    Laurent C;
    for (auto& [ea, ca] : A)
        for (auto& [eb, cb] : B) laurent_add(C, ea + eb, ca * cb);
    return C;
}

// Writes a Laurent polynomial invariant under t -> n/t as a polynomial in
// y = t + n/t by removing the top term repeatedly.
ZPoly peel(Laurent L, const mpz_class& n) {
    ZPoly out;
    while (!L.empty()) {
        long D = L.rbegin()->first;
        if (D < 0) throw Error(ErrorCode::InvalidInput, "Laurent polynomial is not Fricke-symmetric");
        mpz_class c = L.rbegin()->second;
        if (out.size() < size_t(D) + 1) out.resize(D + 1);
        out[D] += c;
        mpz_class binom = 1, npow = 1;
        for (long i = 0; i <= D; ++i) {
            laurent_add(L, D - 2 * i, -c * binom * npow);
            binom = binom * (D - i) / (i + 1);
            npow *= n;
        }
    }
    ztrim(out);
    return out;
}

}  // namespace

bool has_hauptmodul(int ell) { return ell == 2 || ell == 3 || ell == 5 || ell == 7 || ell == 13; }

const HauptmodulModel& hauptmodul_model(int ell) {
    static const std::map<int, HauptmodulModel> models = [] {
        std::map<int, HauptmodulModel> m;
        for (int l : {2, 3, 5, 7, 13}) m[l] = make_model(l);
        return m;
    }();
    auto it = models.find(ell);
    if (it == models.end()) throw Error(ErrorCode::UnknownLevel, "no hauptmodul model for level " + std::to_string(ell));
    return it->second;
}

BiPolyAtkin atkin_from_hauptmodul(const HauptmodulModel& M) {
    Laurent j1, j2;
    for (size_t k = 0; k < M.num.size(); ++k) {
        if (M.num[k] == 0) continue;
        laurent_add(j1, long(k) - 1, M.num[k]);
        // c_k (n/t)^k / (n/t) = c_k n^{k-1} t^{1-k}
        if (k == 0) {
            if (!mpz_divisible_p(M.num[0].get_mpz_t(), M.n.get_mpz_t()))
                throw Error(ErrorCode::InvalidInput, "hauptmodul constant term not divisible by n");
            laurent_add(j2, 1, M.num[0] / M.n);
        } else {
            mpz_class np;
            mpz_pow_ui(np.get_mpz_t(), M.n.get_mpz_t(), k - 1);
            laurent_add(j2, 1 - long(k), M.num[k] * np);
        }
    }
    Laurent s = j1;
    for (auto& [e, c] : j2) laurent_add(s, e, c);
    BiPolyAtkin R;
    R.ell = M.ell;
    R.a = peel(s, M.n);
    R.b = peel(laurent_mul(j1, j2), M.n);
    if (!R.a.empty() && R.a.back() < 0) {
        R.a = zcompose_neg(R.a);
        R.b = zcompose_neg(R.b);
    }
    if (!R.a.empty() && R.a.back() < 0) R.a = zscale(R.a, -1);
    return R;
}

std::pair<mpq_class, mpq_class> hauptmodul_pair_q(int ell, const mpq_class& t0) {
    if (t0 == 0) throw Error(ErrorCode::CuspInput, "t = 0 is a cusp");
    const auto& M = hauptmodul_model(ell);
    auto ev = [&](const mpq_class& t) {
        mpq_class acc = 0;
        for (size_t i = M.num.size(); i-- > 0;) acc = acc * t + mpq_class(M.num[i]);
        acc /= t;
        acc.canonicalize();
        return acc;
    };
    mpq_class t1 = mpq_class(M.n) / t0;
    t1.canonicalize();
    return {ev(t0), ev(t1)};
}

// ---- data access ----

namespace {

std::mutex g_data_mu;
std::string g_data_dir = [] {
    const char* e = std::getenv("SSGRAPH_DATA");
    return std::string(e ? e : "");
}();

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<std::string> embedded(const std::string& name) {
    for (auto& f : embedded_files())
        if (name == f.name) return std::string(f.data, f.size);
    return std::nullopt;
}

std::map<std::string, std::string> parse_sums(const std::string& text) {
    std::map<std::string, std::string> sums;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string hash, name;
        if (ls >> hash >> name) {
            if (!name.empty() && name[0] == '*') name = name.substr(1);
            sums[name] = hash;
        }
    }
    return sums;
}

const std::map<std::string, std::string>& builtin_sums() {
    static const auto sums = parse_sums(embedded("SHA256SUMS").value_or(""));
    return sums;
}

struct Loaded {
    std::string text;
    std::string origin;
};

// Directory first, then compiled-in data; checksums enforced either way.
std::optional<Loaded> load_data_file(const std::string& name) {
    std::string dir = data_dir();
    auto& pins = builtin_sums();
    if (!dir.empty()) {
        auto text = read_file(dir + "/" + name);
        if (text) {
            auto h = sha256_hex(*text);
            auto pin = pins.find(name);
            if (pin != pins.end() && pin->second != h)
                throw Error(ErrorCode::ChecksumMismatch, name + " does not match the pinned checksum");
            if (pin == pins.end()) {
                auto sums_text = read_file(dir + "/SHA256SUMS");
                if (sums_text) {
                    auto sums = parse_sums(*sums_text);
                    auto it = sums.find(name);
                    if (it != sums.end() && it->second != h)
                        throw Error(ErrorCode::ChecksumMismatch, name + " does not match " + dir + "/SHA256SUMS");
                }
            }
            return Loaded{*text, dir + "/" + name};
        }
    }
    auto text = embedded(name);
    if (!text) return std::nullopt;
    auto pin = pins.find(name);
    if (pin == pins.end() || pin->second != sha256_hex(*text))
        throw Error(ErrorCode::ChecksumMismatch, "built-in " + name + " fails its checksum");
    return Loaded{*text, "builtin:" + name};
}

std::string atkin_name(int ell) { return "atkin/ell_" + std::to_string(ell) + ".json"; }

}  // namespace

void set_data_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lock(g_data_mu);
    g_data_dir = dir;
}

std::string data_dir() {
    std::lock_guard<std::mutex> lock(g_data_mu);
    return g_data_dir;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw Error(ErrorCode::ChecksumMismatch, "SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

BiPolyAtkin parse_atkin_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        BiPolyAtkin R;
        R.ell = j.at("ell").get<int>();
        R.a = zfrom_strings(j.at("a").get<std::vector<std::string>>());
        R.b = zfrom_strings(j.at("b").get<std::vector<std::string>>());
        return R;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("Atkin JSON: ") + e.what());
    }
}

std::string atkin_to_json(const BiPolyAtkin& R) {
    nlohmann::ordered_json j;
    j["ell"] = R.ell;
    j["a"] = zto_strings(R.a);
    j["b"] = zto_strings(R.b);
    return j.dump(1) + "\n";
}

void validate_atkin(const BiPolyAtkin& R) {
    if (R.ell < 2 || !is_prime(u64(R.ell))) throw Error(ErrorCode::UnknownLevel, "level must be prime");
    if (int(R.a.size()) != R.ell + 1 || int(R.b.size()) != R.ell + 2)
        throw Error(ErrorCode::BadDegree, "Atkin data for level " + std::to_string(R.ell) + " has wrong degrees");
    if (R.a.back() != 1 || R.b.back() != 1)
        throw Error(ErrorCode::NotMonic, "Atkin data for level " + std::to_string(R.ell) + " is not monic");
    u64 ell = u64(R.ell);
    std::vector<u64> dl;
    if (ell == 2) {
        dl = zreduce(delta_charpoly_z(R), 2);
    } else {
        dl = delta_mod(R, ell);
    }
    // (x^ell - x)^2 = x^{2 ell} - 2 x^{ell + 1} + x^2
    std::vector<u64> want(2 * ell + 1, 0);
    want[2 * ell] = 1;
    want[ell + 1] = (ell - 2 % ell) % ell;
    want[2] = (want[2] + 1) % ell;
    while (!want.empty() && want.back() == 0) want.pop_back();
    if (dl != want)
        throw Error(ErrorCode::CongruenceFailure,
                    "Kronecker congruence fails for level " + std::to_string(R.ell));
}

BiPolyAtkin load_atkin_file(const std::string& path) {
    auto text = read_file(path);
    if (!text) throw Error(ErrorCode::MissingData, "cannot read " + path);
    auto R = parse_atkin_json(*text);
    validate_atkin(R);
    return R;
}

const BiPolyAtkin& load_atkin(int ell) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, BiPolyAtkin> cache;
    auto key = std::make_pair(data_dir(), ell);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto file = load_data_file(atkin_name(ell));
    if (!file) throw Error(ErrorCode::UnknownLevel, "no Atkin data for level " + std::to_string(ell));
    auto R = parse_atkin_json(file->text);
    if (R.ell != ell) throw Error(ErrorCode::InvalidInput, file->origin + " declares a different level");
    validate_atkin(R);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(R)).first->second;
}

bool atkin_available(int ell) {
    auto levels = atkin_levels();
    return std::find(levels.begin(), levels.end(), ell) != levels.end();
}

std::vector<int> atkin_levels() {
    std::set<int> levels;
    auto grab = [&](const std::string& name) {
        const std::string pre = "atkin/ell_", suf = ".json";
        if (name.rfind(pre, 0) == 0 && name.size() > pre.size() + suf.size() &&
            name.compare(name.size() - suf.size(), suf.size(), suf) == 0)
            levels.insert(std::stoi(name.substr(pre.size(), name.size() - pre.size() - suf.size())));
    };
    for (auto& f : embedded_files()) grab(f.name);
    std::string dir = data_dir();
    std::error_code ec;
    if (!dir.empty() && std::filesystem::is_directory(dir + "/atkin", ec))
        for (auto& e : std::filesystem::directory_iterator(dir + "/atkin", ec))
            grab("atkin/" + e.path().filename().string());
    return {levels.begin(), levels.end()};
}

// ---- multimodular helpers ----

namespace {

template <class F>
std::vector<typename F::Elem> charpoly(const F& K, std::vector<std::vector<typename F::Elem>> H) {
    using E = typename F::Elem;
    size_t n = H.size();
    // similarity reduction to upper Hessenberg form
    for (size_t m = 1; m + 1 < n; ++m) {
        size_t piv = m;
        while (piv < n && K.is_zero(H[piv][m - 1])) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            std::swap(H[piv], H[m]);
            for (size_t r = 0; r < n; ++r) std::swap(H[r][piv], H[r][m]);
        }
        E inv = K.inv(H[m][m - 1]);
        for (size_t i = m + 1; i < n; ++i) {
            E u = K.mul(H[i][m - 1], inv);
            if (K.is_zero(u)) continue;
            for (size_t c = 0; c < n; ++c) H[i][c] = K.sub(H[i][c], K.mul(u, H[m][c]));
            for (size_t r = 0; r < n; ++r) H[r][m] = K.add(H[r][m], K.mul(u, H[r][i]));
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_i (prod subdiag) h_{k-i,k} p_{k-i-1}
    std::vector<std::vector<E>> P(n + 1);
    P[0] = {K.one()};
    for (size_t k = 1; k <= n; ++k) {
        std::vector<E> pk(k + 1, K.zero());
        for (size_t d = 0; d < P[k - 1].size(); ++d) {
            pk[d + 1] = K.add(pk[d + 1], P[k - 1][d]);
            pk[d] = K.sub(pk[d], K.mul(H[k - 1][k - 1], P[k - 1][d]));
        }
        E t = K.one();
        for (size_t i = 1; i < k; ++i) {
            t = K.mul(t, H[k - i][k - i - 1]);
            E coef = K.mul(t, H[k - i - 1][k - 1]);
            for (size_t d = 0; d < P[k - i - 1].size(); ++d) pk[d] = K.sub(pk[d], K.mul(coef, P[k - i - 1][d]));
        }
        P[k] = std::move(pk);
    }
    return P[n];
}

// Runs f over descending 62-bit primes and CRT-lifts the fixed-length
// residue vectors until the symmetric lift is unchanged twice in a row.
std::vector<mpz_class> multimodular(const std::function<std::vector<u64>(u64)>& f) {
    std::vector<mpz_class> X;
    mpz_class M = 1;
    std::vector<mpz_class> last;
    int stable = 0;
    u64 q = (u64(1) << 62) - 1;
    for (int used = 0; used < 400; ++used) {
        while (!is_prime(q)) q -= 2;
        auto r = f(q);
        if (X.empty()) X.assign(r.size(), 0);
        if (r.size() != X.size()) throw Error(ErrorCode::InvalidInput, "residue length changed between primes");
        mpz_class qz;
        mpz_set_ui(qz.get_mpz_t(), q);
        mpz_class Minv;
        mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), qz.get_mpz_t());
        for (size_t i = 0; i < r.size(); ++i) {
            mpz_class ri;
            mpz_set_ui(ri.get_mpz_t(), r[i]);
            mpz_class t = (ri - X[i]) * Minv;
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), qz.get_mpz_t());
            X[i] += M * t;
        }
        M *= qz;
        std::vector<mpz_class> lift(X.size());
        mpz_class half = M / 2;
        for (size_t i = 0; i < X.size(); ++i) lift[i] = X[i] > half ? mpz_class(X[i] - M) : X[i];
        if (lift == last) {
            if (++stable >= 2) return lift;
        } else {
            stable = 0;
        }
        last = std::move(lift);
        q -= 2;
    }
    throw Error(ErrorCode::NormalizationFailure, "multimodular reconstruction did not stabilize");
}

template <class F>
Poly<F> interpolate(const F& K, const std::vector<typename F::Elem>& xs, const std::vector<typename F::Elem>& ys) {
    size_t n = xs.size();
    std::vector<typename F::Elem> c = ys;  // divided differences
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) c[i] = K.div(K.sub(c[i], c[i - 1]), K.sub(xs[i], xs[i - k]));
    Poly<F> out{c[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        out = mul(K, out, x_minus(K, xs[i]));
        out = add(K, out, Poly<F>{c[i]});
    }
    trim(K, out);
    return out;
}

}  // namespace

std::vector<u64> delta_mod(const BiPolyAtkin& R, u64 q) {
    if (q < 3 || !is_prime(q)) throw Error(ErrorCode::InvalidInput, "delta_mod needs an odd prime");
    PrimeField K(q);
    auto a = reduce_into(K, R.a), b = reduce_into(K, R.b);
    auto D = sub(K, mul(K, a, a), scale(K, b, K.from_int(4)));
    size_t n = size_t(deg<PrimeField>(D));
    if (n != size_t(2 * R.ell) || D.back() != 1) throw Error(ErrorCode::BadDegree, "a^2 - 4b is not monic of degree 2 ell");
    auto c = mod(K, scale(K, a, K.inv(2)), D);
    std::vector<std::vector<u64>> M(n, std::vector<u64>(n, 0));
    auto v = c;
    auto y = x_poly(K);
    for (size_t i = 0; i < n; ++i) {
        for (size_t r = 0; r < v.size(); ++r) M[r][i] = v[r];
        v = mod(K, mul(K, v, y), D);
    }
    auto cp = charpoly(K, std::move(M));
    trim(K, cp);
    return cp;
}

ZPoly delta_charpoly_z(const BiPolyAtkin& R) {
    size_t n = size_t(2 * R.ell) + 1;
    auto v = multimodular([&](u64 q) {
        auto r = delta_mod(R, q);
        r.resize(n, 0);
        return r;
    });
    ztrim(v);
    return v;
}

BiZPoly classical_modular_poly_from(const BiPolyAtkin& R) {
    const int ell = R.ell;
    const size_t npts = size_t(2 * ell + 3);
    const size_t w = size_t(ell + 2);
    auto flat = multimodular([&](u64 q) {
        PrimeField K(q);
        auto a = reduce_into(K, R.a), b = reduce_into(K, R.b);
        auto Rx = [&](u64 x0) {
            auto f = sub(K, b, scale(K, a, x0));
            return add(K, f, Poly<PrimeField>{K.sqr(x0)});
        };
        std::vector<Poly<PrimeField>> rows(npts);
        for (size_t s = 0; s < npts; ++s) rows[s] = Rx(s);
        std::vector<std::vector<u64>> grid(npts, std::vector<u64>(npts));
        parallel_for(npts, [&](size_t s) {
            for (size_t t = 0; t < npts; ++t) grid[s][t] = resultant(K, rows[s], rows[t]);
        });
        std::vector<u64> pts(npts);
        for (size_t i = 0; i < npts; ++i) pts[i] = i;
        // interpolate in x for each j, then in j for each power of x
        std::vector<Poly<PrimeField>> byj(npts);
        for (size_t t = 0; t < npts; ++t) {
            std::vector<u64> ys(npts);
            for (size_t s = 0; s < npts; ++s) ys[s] = grid[s][t];
            byj[t] = interpolate(K, pts, ys);
            byj[t].resize(npts, 0);
        }
        std::vector<Poly<PrimeField>> G(npts);
        for (size_t i = 0; i < npts; ++i) {
            std::vector<u64> ys(npts);
            for (size_t t = 0; t < npts; ++t) ys[t] = byj[t][i];
            G[i] = interpolate(K, pts, ys);
        }
        while (!G.empty() && G.back().empty()) G.pop_back();
        // exact division by (x - j), ell + 1 times
        auto jp = x_poly(K);
        for (int rep = 0; rep <= ell; ++rep) {
            size_t n = G.size();
            if (n < 2) throw Error(ErrorCode::ExactDivisionFailure, "resultant has too small x-degree");
            std::vector<Poly<PrimeField>> Q(n - 1);
            Q[n - 2] = G[n - 1];
            for (size_t i = n - 2; i >= 1; --i) Q[i - 1] = add(K, G[i], mul(K, jp, Q[i]));
            auto rem = add(K, G[0], mul(K, jp, Q[0]));
            if (!rem.empty()) throw Error(ErrorCode::ExactDivisionFailure, "(x - j)^(ell+1) does not divide the resultant");
            G = std::move(Q);
        }
        if (G.size() != w) throw Error(ErrorCode::BadDegree, "modular polynomial has wrong x-degree");
        std::vector<u64> out(w * w, 0);
        for (size_t i = 0; i < w; ++i) {
            if (G[i].size() > w) throw Error(ErrorCode::BadDegree, "modular polynomial has wrong j-degree");
            for (size_t k = 0; k < G[i].size(); ++k) out[i * w + k] = G[i][k];
        }
        return out;
    });
    BiZPoly F(w);
    for (size_t i = 0; i < w; ++i) {
        F[i].assign(flat.begin() + i * w, flat.begin() + (i + 1) * w);
        ztrim(F[i]);
    }
    const ZPoly& top = F[size_t(ell + 1)];
    if (top.size() != 1 || (top[0] != 1 && top[0] != -1))
        throw Error(ErrorCode::NormalizationFailure, "x^(ell+1) coefficient is not +-1");
    // the resultant's sign depends on how y is normalized; fix it so that
    // F(x, x) is monic
    if (top[0] == 1)
        for (auto& row : F) row = zscale(row, -1);
    return F;
}

const BiZPoly& classical_modular_poly(int ell) {
    static std::mutex mu;
    static std::map<int, std::pair<BiPolyAtkin, BiZPoly>> cache;
    const auto& R = load_atkin(ell);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(ell);
        if (it != cache.end() && it->second.first.a == R.a && it->second.first.b == R.b) return it->second.second;
    }
    auto F = classical_modular_poly_from(R);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[ell];
    slot = {R, std::move(F)};
    return slot.second;
}

ZPoly diagonal(const BiZPoly& F) {
    ZPoly d;
    for (size_t i = 0; i < F.size(); ++i)
        for (size_t k = 0; k < F[i].size(); ++k) {
            if (d.size() < i + k + 1) d.resize(i + k + 1);
            d[i + k] += F[i][k];
        }
    ztrim(d);
    return d;
}

ZPoly delta_poly(int ell) { return diagonal(classical_modular_poly(ell)); }

bool is_symmetric(const BiZPoly& F) {
    auto at = [&](size_t i, size_t k) { return k < F[i].size() ? F[i][k] : mpz_class(0); };
    for (size_t i = 0; i < F.size(); ++i)
        for (size_t k = 0; k < F.size(); ++k)
            if (at(i, k) != at(k, i)) return false;
    for (auto& row : F)
        if (row.size() > F.size()) return false;
    return true;
}

// ---- class polynomials ----

long class_number_forms(long D) {
    if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw Error(ErrorCode::InvalidInput, "not a negative discriminant");
    long count = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a)) continue;
            long c = (b * b - D) / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            ++count;
        }
    return count;
}

namespace {

struct ClassPolyTable {
    long bound = 0;
    std::map<long, ZPoly> H;
};

const ClassPolyTable& class_table() {
    static std::mutex mu;
    static std::map<std::string, ClassPolyTable> cache;
    std::string dir = data_dir();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dir);
    if (it != cache.end()) return it->second;
    ClassPolyTable T;
    auto file = load_data_file("classpoly.json");
    if (file) {
        try {
            auto j = nlohmann::json::parse(file->text);
            T.bound = j.at("bound").get<long>();
            for (auto& [k, v] : j.at("H").items()) {
                long D = std::stol(k);
                auto f = zfrom_strings(v.get<std::vector<std::string>>());
                if (f.empty() || f.back() != 1) throw Error(ErrorCode::NotMonic, "class polynomial " + k);
                if (long(f.size()) - 1 != class_number_forms(D))
                    throw Error(ErrorCode::BadDegree, "class polynomial " + k + " has the wrong degree");
                T.H[D] = std::move(f);
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::InvalidInput, std::string("classpoly.json: ") + e.what());
        }
    }
    return cache.emplace(dir, std::move(T)).first->second;
}

}  // namespace

const ZPoly* class_poly(long D) {
    auto& T = class_table();
    auto it = T.H.find(D);
    return it == T.H.end() ? nullptr : &it->second;
}

long classpoly_bound() { return class_table().bound; }

std::optional<ZPoly> class_poly_dm(long d, long m) {
    ZPoly acc{1};
    for (long n = 1; n <= m; ++n) {
        if (m % n) continue;
        auto* h = class_poly(-d * n * n);
        if (!h) return std::nullopt;
        acc = zmul(acc, *h);
    }
    return acc;
}

}  // namespace ssg
