#include "ssg/mcmethod.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "ssg/modular_data.hpp"
#include "ssg/parallel.hpp"

namespace ssg {

using namespace poly;

EdgeCounts scan_counts(u64 p, const BiPolyAtkin& R) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "mc_method needs a prime p > 3");
    if (u64(R.ell) == p) throw Error(ErrorCode::EqualPrimes, "p == ell");
    Fp2Field K(p);
    const auto& S = supersingular_set(p);
    const u64 q = p * p;
    EdgeCounts out;
    std::unordered_map<u64, size_t> lookup;  // index(a) * q + index(b) -> pair number
    std::vector<std::pair<Label, Label>> pairs;
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t k = i + 1; k < S.size(); ++k) {
            auto key = std::make_pair(S[i], S[k]);
            out.counts[key] = 0;
            auto s = K.add(S[i], S[k]), pr = K.mul(S[i], S[k]);
            lookup[K.index(s) * q + K.index(pr)] = pairs.size();
            pairs.push_back(key);
        }
    if (pairs.empty()) return out;
    auto Rp = reduce_atkin(R, p);
    std::vector<std::vector<u64>> partial(threads() + 1, std::vector<u64>(pairs.size(), 0));
    parallel_chunks(q, [&](size_t lo, size_t hi, size_t chunk) {
        auto& local = partial[chunk];
        for (size_t idx = lo; idx < hi; ++idx) {
            Fp2Elem y0{idx / p, idx % p};
            auto [a, b] = eval_atkin(K, Rp, y0);
            auto it = lookup.find(K.index(a) * q + K.index(b));
            if (it != lookup.end()) ++local[it->second];
        }
    });
    for (auto& local : partial)
        for (size_t i = 0; i < pairs.size(); ++i) out.counts[pairs[i]] += local[i];
    return out;
}

namespace {

IsogenyGraph empty_graph(u64 p, u64 ell) {
    IsogenyGraph G;
    G.p = p;
    G.ell = ell;
    G.nonresidue = least_nonresidue(p);
    G.vertices = supersingular_set(p);
    return G;
}

}  // namespace

IsogenyGraph mc_method(u64 p, const BiPolyAtkin& R) {
    auto C = scan_counts(p, R);
    auto G = empty_graph(p, u64(R.ell));
    for (auto& [key, k] : C.counts) {
        if (!k) continue;
        auto [j1, j2] = key;
        G.edges[{j1, j2}] += k * aut_weight(j1, p);
        G.edges[{j2, j1}] += k * aut_weight(j2, p);
    }
    return complete_self_loops(std::move(G));
}

IsogenyGraph mc_method(u64 p, int ell) { return mc_method(p, load_atkin(ell)); }

IsogenyGraph hauptmodul_graph(u64 p, int ell) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "hauptmodul_graph needs a prime p > 3");
    if (u64(ell) == p) throw Error(ErrorCode::EqualPrimes, "p == ell");
    Fp2Field K(p);
    auto G = empty_graph(p, u64(ell));
    const u64 q = p * p;
    std::vector<std::map<std::pair<Label, Label>, u64>> partial(threads() + 1);
    parallel_chunks(q - 1, [&](size_t lo, size_t hi, size_t chunk) {
        for (size_t idx = lo + 1; idx < hi + 1; ++idx) {
            Fp2Elem t{idx / p, idx % p};
            auto [j1, j2] = hauptmodul_pair(K, ell, t);
            if (j1 == j2 || !is_supersingular_j(j1, p) || !is_supersingular_j(j2, p)) continue;
            partial[chunk][{j1, j2}] += aut_weight(j1, p);
        }
    });
    for (auto& m : partial)
        for (auto& [e, c] : m) G.edges[e] += c;
    return complete_self_loops(std::move(G));
}

std::vector<u64> ss_poly(u64 p) {
    if (p <= 3) return {0, 1};
    Fp2Field K(p);
    Poly<Fp2Field> f{K.one()};
    for (auto& j : supersingular_set(p)) f = mul(K, f, x_minus(K, j));
    std::vector<u64> out;
    for (auto& c : f) {
        if (c.b != 0) throw Error(ErrorCode::InvalidInput, "s_p has a coefficient outside F_p");
        out.push_back(c.a);
    }
    return out;
}

std::vector<u64> ss_plus_poly(u64 p, const BiPolyAtkin& R) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    if (u64(R.ell) == p) throw Error(ErrorCode::EqualPrimes, "p == ell");
    PrimeField Fp(p);
    Poly<PrimeField> prod;
    if (p <= 3) {
        // S_p = {0}: R(0, y) = b(y)
        prod = reduce_into(Fp, R.b);
    } else {
        Fp2Field K(p);
        auto a = reduce_into(K, R.a), b = reduce_into(K, R.b);
        Poly<Fp2Field> acc{K.one()};
        for (auto& j : supersingular_set(p)) {
            auto r = add(K, sub(K, b, scale(K, a, j)), Poly<Fp2Field>{K.sqr(j)});
            acc = mul(K, acc, r);
        }
        for (auto& c : acc) {
            if (c.b != 0) throw Error(ErrorCode::InvalidInput, "resultant has a coefficient outside F_p");
            prod.push_back(c.a);
        }
        trim(Fp, prod);
    }
    auto f = radical(Fp, prod);
    if (deg<PrimeField>(f) >= 1) {
        auto yq = powmod_frobenius(Fp, f, 2);
        if (yq != mod(Fp, x_poly(Fp), f))
            throw Error(ErrorCode::InvalidInput, "s+_{p,ell} does not split over F_{p^2}");
    }
    return f;
}

int ob(u64 p, const BiPolyAtkin& R) {
    if (u64(R.ell) == p) throw Error(ErrorCode::EqualPrimes, "Ob(p, p) is undefined");
    PrimeField Fp(p);
    return count_quadratic_factors(Fp, ss_plus_poly(p, R));
}

int ob(u64 p, int ell) {
    if (u64(ell) == p) throw Error(ErrorCode::EqualPrimes, "Ob(p, p) is undefined");
    return ob(p, load_atkin(ell));
}

int ObTable::at(u64 ell, u64 p) const {
    auto r = std::find(rows.begin(), rows.end(), ell);
    auto c = std::find(cols.begin(), cols.end(), p);
    if (r == rows.end() || c == cols.end()) throw Error(ErrorCode::InvalidInput, "entry not in table");
    return value[size_t(r - rows.begin())][size_t(c - cols.begin())];
}

std::string ObTable::csv() const {
    std::ostringstream os;
    os << "ell\\p";
    for (auto p : cols) os << "," << p;
    os << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        os << rows[i];
        for (size_t k = 0; k < cols.size(); ++k) {
            os << ",";
            if (value[i][k] < 0)
                os << "-";
            else
                os << value[i][k];
        }
        os << "\n";
    }
    return os.str();
}

ObTable ob_table(const std::vector<u64>& levels, const std::vector<u64>& primes) {
    ObTable T;
    T.rows = levels;
    T.cols = primes;
    T.value.assign(levels.size(), std::vector<int>(primes.size(), -1));
    for (size_t i = 0; i < levels.size(); ++i) {
        const auto& R = load_atkin(int(levels[i]));
        for (size_t k = 0; k < primes.size(); ++k)
            if (primes[k] != levels[i]) T.value[i][k] = ob(primes[k], R);
    }
    for (size_t i = 0; i < levels.size(); ++i)
        for (size_t k = 0; k < primes.size(); ++k) {
            u64 l = levels[i], p = primes[k];
            if (l == p) continue;
            auto r = std::find(levels.begin(), levels.end(), p);
            auto c = std::find(primes.begin(), primes.end(), l);
            if (r == levels.end() || c == primes.end()) continue;
            if (T.value[size_t(r - levels.begin())][size_t(c - primes.begin())] != T.value[i][k]) {
                T.symmetric = false;
                T.asymmetric.push_back({l, p});
            }
        }
    return T;
}

}  // namespace ssg
