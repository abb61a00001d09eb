#include "ssg/tracecalc.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ssg/kernels.hpp"
#include "ssg/modular_data.hpp"
#include "ssg/parallel.hpp"

namespace ssg {

namespace {

u64 isqrt(u64 n) {
    u64 r = u64(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_int(u64 n) {
    u64 r = isqrt(n);
    return r * r == n;
}

// Explicit factor tables for Delta_2 and Delta_3.
struct SmallFactor {
    u64 a;
    u64 d;
    u64 m;
    std::vector<i64> roots;
    u64 e;
};

const std::vector<SmallFactor>& small_table(u64 ell) {
    static const std::vector<SmallFactor> t2 = {
        {2, 4, 1, {1728}, 1},
        {0, 8, 1, {8000}, 1},
        {1, 7, 1, {-3375}, 2},
    };
    static const std::vector<SmallFactor> t3 = {
        {0, 3, 2, {0, 54000}, 1},
        {2, 8, 1, {8000}, 2},
        {1, 11, 1, {-32768}, 2},
    };
    if (ell == 2) return t2;
    if (ell == 3) return t3;
    throw Error(ErrorCode::InvalidInput, "no explicit table for this level");
}

int kr(i64 a, u64 p) { return kronecker(a, p); }

u64 p_free(u64 m, u64 p) {
    while (m % p == 0) m /= p;
    return m;
}

}  // namespace

// ---- census ----

FrobTable frobenius_trace_table(u64 ell) {
    if (ell <= 3 || !is_prime(ell)) throw Error(ErrorCode::SmallLevel, "census needs a prime ell > 3");
    if (ell >= (u64(1) << 31)) throw Error(ErrorCode::FieldTooLarge, "census needs ell < 2^31");
    FrobTable T;
    T.ell = ell;
    T.abs_trace.assign(ell, -1);
    PrimeField K(ell);
    const u64 j1728 = 1728 % ell;
    auto table = kernels::make_char_table(uint32_t(ell));
    parallel_for(ell, [&](size_t j) {
        if (j == 0 || j == j1728) return;
        u64 t = K.div(j, K.sub(j1728, j));
        long s = kernels::cubic_char_sum(table, uint32_t(K.mul(3, t)), uint32_t(K.mul(2, t)));
        T.abs_trace[j] = int(s < 0 ? -s : s);
    });
    for (u64 j = 0; j < ell; ++j)
        if (T.abs_trace[j] >= 0) T.by_trace[u64(T.abs_trace[j])].insert(j);
    const u64 amax = isqrt(4 * ell);
    if (ell % 3 == 2) {
        T.zero_supersingular = true;
        T.abs_trace[0] = 0;
        T.by_trace[0].insert(0);
    } else {
        for (u64 a = 1; a <= amax; ++a) {
            u64 r = 4 * ell - a * a;
            if (r % 3 == 0 && is_square_int(r / 3) && r > 0) T.A3.push_back(a);
        }
    }
    if (ell % 4 == 3) {
        T.j1728_supersingular = true;
        T.abs_trace[j1728] = 0;
        T.by_trace[0].insert(j1728);
    } else {
        for (u64 a = 1; a <= amax; ++a) {
            u64 r = 4 * ell - a * a;
            if (r % 4 == 0 && is_square_int(r / 4) && r > 0) T.A4.push_back(a);
        }
    }
    u64 total = 0;
    for (auto& [a, s] : T.by_trace) total += s.size();
    total += (T.zero_supersingular ? 0 : 1) + (T.j1728_supersingular ? 0 : 1);
    if (total != ell) throw Error(ErrorCode::InconsistentTable, "census does not partition F_ell");
    return T;
}

std::string FrobTable::csv() const {
    std::ostringstream os;
    os << "j,abs_trace\n";
    auto list = [](const std::vector<u64>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
        return s;
    };
    for (u64 j = 0; j < ell; ++j) {
        os << j << ",";
        if (abs_trace[j] >= 0)
            os << abs_trace[j];
        else
            os << list(j == 0 ? A3 : A4);
        os << "\n";
    }
    return os.str();
}

// ---- supp and class numbers ----

std::vector<SuppEntry> supp(u64 ell) {
    if (ell == 2 || ell == 3) {
        std::vector<SuppEntry> out;
        for (auto& f : small_table(ell)) out.push_back({f.a, f.d, f.m});
        return out;
    }
    if (!is_prime(ell)) throw Error(ErrorCode::InvalidInput, "ell must be prime");
    std::vector<SuppEntry> out;
    for (u64 a = 0; a * a < 4 * ell; ++a) {
        u64 N = 4 * ell - a * a;
        u64 f = 1, N0 = N;
        for (u64 q = 2; q * q <= N0; ++q)
            while (N0 % (q * q) == 0) {
                N0 /= q * q;
                f *= q;
            }
        if (N0 % 4 == 3)
            out.push_back({a, N0, f});
        else
            out.push_back({a, 4 * N0, f / 2});
    }
    return out;
}

int chi_ell(u64 ell, u64 d) { return d % ell == 0 ? 0 : 1; }

u64 unit_count(u64 d) { return d == 3 ? 6 : d == 4 ? 4 : 2; }

u64 phi_d(u64 d, u64 n) {
    u64 out = 1;
    for (u64 q = 2; n > 1; ++q) {
        if (n % q) continue;
        u64 qk = 1;
        while (n % q == 0) {
            n /= q;
            qk *= q;
        }
        i64 s = kr(-i64(d), q);
        out *= u64(i64(qk / q) * (i64(q) - s));
    }
    return out;
}

u64 h_dm_from(u64 d, u64 m, u64 h1) {
    u64 sum = 0;
    for (u64 n = 2; n <= m; ++n)
        if (m % n == 0) sum += phi_d(d, n);
    u64 u = unit_count(d);
    u64 num = 2 * h1 * sum;
    if (num % u) throw Error(ErrorCode::InconsistentTable, "h_{-d}(m) is not integral");
    return h1 + num / u;
}

u64 h_dm(u64 d, u64 m, const DegreeLedger& L) {
    auto it = L.h1.find(d);
    if (it == L.h1.end())
        throw Error(ErrorCode::MissingClassNumber, "no class number for -" + std::to_string(d));
    return h_dm_from(d, m, it->second);
}

namespace {

// Inverts h(m) = h1 * (1 + (2/u) sum phi) for h1.
u64 invert_h(u64 d, u64 m, u64 hm) {
    u64 sum = 0;
    for (u64 n = 2; n <= m; ++n)
        if (m % n == 0) sum += phi_d(d, n);
    u64 u = unit_count(d);
    u64 factor_num = u + 2 * sum;  // h(m) = h1 * factor_num / u
    if ((hm * u) % factor_num) throw Error(ErrorCode::InconsistentTable, "class number inversion is not integral");
    return hm * u / factor_num;
}

void add_h1(DegreeLedger& L, u64 d, u64 h1) {
    auto [it, fresh] = L.h1.emplace(d, h1);
    if (!fresh && it->second != h1)
        throw Error(ErrorCode::InconsistentTable, "conflicting class numbers for -" + std::to_string(d));
}

}  // namespace

DegreeLedger class_numbers_from_table(const FrobTable& T) {
    DegreeLedger L;
    L.ell = T.ell;
    L.entries = supp(T.ell);
    auto in = [](const std::vector<u64>& v, u64 a) { return std::find(v.begin(), v.end(), a) != v.end(); };
    for (auto& e : L.entries) {
        u64 cnt = 0;
        auto it = T.by_trace.find(e.a);
        if (it != T.by_trace.end()) cnt = it->second.size();
        u64 hm = e.a == 0 ? 2 * cnt : cnt + (in(T.A3, e.a) ? 1 : 0) + (in(T.A4, e.a) ? 1 : 0);
        if (hm == 0) throw Error(ErrorCode::InconsistentTable, "empty trace class in census");
        L.hm[{e.d, e.m}] = hm;
        add_h1(L, e.d, invert_h(e.d, e.m, hm));
    }
    for (auto& e : L.entries)
        if (h_dm(e.d, e.m, L) != L.hm[{e.d, e.m}])
            throw Error(ErrorCode::InconsistentTable, "census degrees disagree with the class-number formula");
    return L;
}

const DegreeLedger& degree_ledger(u64 ell) {
    static std::mutex mu;
    static std::map<u64, DegreeLedger> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(ell);
        if (it != cache.end()) return it->second;
    }
    DegreeLedger L;
    if (ell == 2 || ell == 3) {
        L.ell = ell;
        L.entries = supp(ell);
        for (auto& f : small_table(ell)) {
            L.hm[{f.d, f.m}] = f.roots.size();
            add_h1(L, f.d, invert_h(f.d, f.m, f.roots.size()));
        }
    } else {
        L = class_numbers_from_table(frobenius_trace_table(ell));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(ell, std::move(L)).first->second;
}

namespace {

// Prefactor exponents of x and x - 1728 in Delta_ell, ell > 3.
i64 pref3(u64 ell) { return 2 * (1 + kr(-3, ell)); }
i64 pref4(u64 ell) { return 1 + kr(-4, ell); }

}  // namespace

i64 delta_degree(const DegreeLedger& L) {
    i64 deg = 0;
    if (L.ell == 2 || L.ell == 3) {
        for (auto& f : small_table(L.ell)) deg += i64(f.e * f.roots.size());
        return deg;
    }
    for (auto& e : L.entries) deg += (1 + chi_ell(L.ell, e.d)) * i64(h_dm(e.d, e.m, L));
    return deg - pref3(L.ell) - pref4(L.ell);
}

std::map<u64, i64> c_ell_all(u64 ell) {
    if (ell <= 3) throw Error(ErrorCode::SmallLevel, "c_ell needs ell > 3");
    const auto& L = degree_ledger(ell);
    std::map<u64, i64> contrib;
    for (auto& e : L.entries) contrib[e.d] += (1 + chi_ell(ell, e.d)) * i64(h_dm(e.d, e.m, L));
    contrib[3] -= pref3(ell);
    contrib[4] -= pref4(ell);
    std::map<u64, i64> c;
    i64 total = 0;
    for (auto& [d, v] : contrib) {
        if (v % 2) throw Error(ErrorCode::NormalizationFailure, "odd degree contribution for -" + std::to_string(d));
        if (v == 0) continue;
        c[d] = v / 2;
        total += v / 2;
    }
    if (total != i64(ell)) throw Error(ErrorCode::NormalizationFailure, "sum of c_ell(-d) is not ell");
    return c;
}

i64 c_ell(u64 ell, u64 d) {
    auto c = c_ell_all(ell);
    auto it = c.find(d);
    return it == c.end() ? 0 : it->second;
}

i64 epsilon(u64 p, u64 ell) {
    const auto& L = degree_ledger(ell);
    i64 eps = 0;
    for (auto& e : L.entries) {
        u64 m1 = p_free(e.m, p);
        if (m1 == e.m) continue;
        i64 w = 1 - chi_ell(ell, e.d) * kr(-i64(e.d), p);
        eps += w * (i64(h_dm(e.d, e.m, L)) - i64(h_dm(e.d, m1, L)));
    }
    return eps;
}

const char* strategy_name(TraceStrategy s) { return s == TraceStrategy::Balanced ? "balanced" : "literal"; }

TraceStrategy parse_strategy(const std::string& s) {
    if (s == "balanced") return TraceStrategy::Balanced;
    if (s == "literal") return TraceStrategy::Literal;
    throw Error(ErrorCode::InvalidInput, "unknown strategy '" + s + "'");
}

namespace {

void check_pair(u64 p, u64 ell) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be a prime > 3");
    if (ell < 2 || !is_prime(ell)) throw Error(ErrorCode::InvalidInput, "ell must be prime");
    if (p == ell) throw Error(ErrorCode::EqualPrimes, "p == ell");
}

}  // namespace

i64 trace_predict(u64 p, u64 ell, TraceStrategy s) {
    check_pair(p, ell);
    const auto& L = degree_ledger(ell);
    i64 num = 0;  // four times the trace; literal exponents are halves
    auto add = [&](i64 n4) { num += n4; };
    for (auto& e : L.entries) {
        int chi = chi_ell(ell, e.d);
        int sym = kr(-i64(e.d), p);
        u64 h = h_dm(e.d, p_free(e.m, p), L);
        if (s == TraceStrategy::Balanced)
            add(i64(h) * (1 - sym) * (1 + chi) * 2);
        else
            add(i64(h) * (1 - sym) * 4 / (1 + chi));
    }
    if (ell > 3) {
        auto w = [&](i64 d) { return (1 - kr(-d, p)) / 2; };
        add(-4 * (w(3) * pref3(ell) + w(4) * pref4(ell)));
    }
    if (num % 4) throw Error(ErrorCode::NonIntegralSolution, std::string(strategy_name(s)) + " trace is not an integer");
    return num / 4;
}

i64 trace_from_c(u64 p, u64 ell) {
    check_pair(p, ell);
    i64 t = i64(ell);
    for (auto& [d, c] : c_ell_all(ell)) t -= kr(-i64(d), p) * c;
    return t - epsilon(p, ell);
}

const char* loop_strategy_name(LoopStrategy s) { return s == LoopStrategy::Delta ? "delta" : "classpoly"; }

namespace {

using namespace poly;

int ord_at(const Fp2Field& K, const std::vector<u64>& f, const Label& j) {
    Poly<Fp2Field> g;
    for (u64 c : f) g.push_back(K.from_fp(c));
    trim(K, g);
    return root_multiplicity(K, g, j);
}

// ord_{j0} H_{-d,m} mod p, from the degree alone when S_p = {j0}.
i64 ord_class(const Fp2Field& K, u64 p, u64 d, u64 m, const Label& j0, const DegreeLedger& L, size_t nS) {
    if (nS == 1) return i64(h_dm(d, m, L));
    auto H = class_poly_dm(long(d), long(m));
    if (!H)
        throw Error(ErrorCode::MissingData, "class polynomial data missing for -" + std::to_string(d) +
                                                " (m = " + std::to_string(m) + ")");
    return ord_at(K, zreduce(*H, p), j0);
}

}  // namespace

std::map<Label, u64> self_loops_per_vertex(u64 p, u64 ell, LoopStrategy strategy) {
    check_pair(p, ell);
    const auto& S = supersingular_set(p);
    std::map<Label, i64> loops;
    for (auto& j : S) loops[j] = 0;
    Fp2Field K(p);
    if (ell <= 3) {
        for (auto& f : small_table(ell)) {
            int sym = kr(-i64(f.d), p);
            i64 per = i64(f.e) * (1 - sym) / 2;
            if (!per) continue;
            for (i64 r : f.roots) {
                Label j{reduce_signed(r, p), 0};
                if (!loops.count(j)) throw Error(ErrorCode::InconsistentTable, "CM root is not supersingular");
                loops[j] += per;
            }
        }
    } else {
        const auto& L = degree_ledger(ell);
        if (strategy == LoopStrategy::Delta) {
            auto dl = delta_mod(load_atkin(int(ell)), p);
            for (auto& j : S) {
                i64 v = ord_at(K, dl, j);
                for (auto& e : L.entries) {
                    int sym = kr(-i64(e.d), p);
                    int chi = chi_ell(ell, e.d);
                    if (sym == 0 && e.a != 0) v -= ord_class(K, p, e.d, e.m, j, L, S.size());
                    u64 m1 = p_free(e.m, p);
                    if (m1 != e.m && sym != 1) {
                        i64 coef = (1 - sym) * (1 + chi) / 2;
                        v -= coef * (ord_class(K, p, e.d, e.m, j, L, S.size()) -
                                     ord_class(K, p, e.d, m1, j, L, S.size()));
                    }
                }
                loops[j] = v;
            }
        } else {
            for (auto& j : S) {
                i64 v = 0;
                for (auto& e : L.entries) {
                    int sym = kr(-i64(e.d), p);
                    if (sym == 1) continue;
                    i64 coef = (1 - sym) * (1 + chi_ell(ell, e.d)) / 2;
                    auto H = class_poly_dm(long(e.d), long(p_free(e.m, p)));
                    if (!H) throw Error(ErrorCode::MissingData, "class polynomial data missing for -" + std::to_string(e.d));
                    v += coef * ord_at(K, zreduce(*H, p), j);
                }
                if (j == Label{0, 0} && kr(-3, p) == -1) v -= pref3(ell);
                if (j == Label{1728 % p, 0} && kr(-4, p) == -1) v -= pref4(ell);
                loops[j] = v;
            }
        }
    }
    std::map<Label, u64> out;
    for (auto& [j, v] : loops) {
        if (v < 0) throw Error(ErrorCode::InconsistentTable, "negative loop count");
        out[j] = u64(v);
    }
    return out;
}

TwoVertexSolution two_vertex_solve(u64 p, u64 ell) {
    if (p != 11 && p != 17 && p != 19) throw Error(ErrorCode::InvalidInput, "two_vertex_solve needs p in {11, 17, 19}");
    TwoVertexSolution sol;
    sol.trace = trace_predict(p, ell);
    i64 L1 = i64(ell) + 1;
    i64 k = p == 11 ? 5 : p == 17 ? 4 : 3;
    i64 num = 2 * L1 - sol.trace;
    if (num < 0 || num % k) throw Error(ErrorCode::NonIntegralSolution, "no integral a for this trace");
    i64 a = num / k;
    std::vector<std::vector<i64>> M;
    if (p == 11) M = {{L1 - 3 * a, 3 * a}, {2 * a, L1 - 2 * a}};
    if (p == 17) M = {{L1 - 3 * a, 3 * a}, {a, L1 - a}};
    if (p == 19) M = {{L1 - a, a}, {2 * a, L1 - 2 * a}};
    sol.a = u64(a);
    for (auto& row : M) {
        sol.M.emplace_back();
        for (i64 v : row) {
            if (v < 0) throw Error(ErrorCode::NonIntegralSolution, "negative matrix entry");
            sol.M.back().push_back(u64(v));
        }
    }
    return sol;
}

Difficulty difficulty(u64 p, u64 ell) {
    if (p == ell) throw Error(ErrorCode::EqualPrimes, "p == ell");
    Difficulty D;
    if (ell == 2) {
        D.gm = 2;
    } else {
        u64 o2 = mult_order(mulmod(p % ell, p % ell, ell), ell);
        u64 o1 = mult_order(p % ell, ell);
        D.gm = 2 * o2 - (o1 % 4 == 2 ? 1 : 0);
    }
    static const std::set<u64> genus0{2, 3, 5, 7, 13};
    static const std::set<u64> hyper{11, 17, 19, 23, 29, 31, 41, 47, 59, 71};
    if (genus0.count(ell))
        D.mc = 1;
    else if (hyper.count(ell))
        D.mc = 2;
    else
        throw Error(ErrorCode::GonalityUnknown, "gonality of X_0(" + std::to_string(ell) + ") not tabulated");
    D.tr = supersingular_set(p).size() - 1;
    return D;
}

}  // namespace ssg
