#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssg/fields.hpp"
#include "ssg/poly.hpp"

namespace ssg {

// j_ell(t) = num(t) / den(t) with Fricke involution t -> n / t.
struct HauptmodulModel {
    int ell = 0;
    ZPoly num;
    ZPoly den;  // always t
    mpz_class n;
};

// Levels 2, 3, 5, 7 and 13.
const HauptmodulModel& hauptmodul_model(int ell);
bool has_hauptmodul(int ell);

// (a, b) with a = j(t) + j(n/t), b = j(t) j(n/t) written in y = +-(t + n/t),
// the sign chosen to make both monic.
BiPolyAtkin atkin_from_hauptmodul(const HauptmodulModel& M);

// (j(t0), j(n/t0)); CuspInput for t0 = 0.
template <class F>
std::pair<typename F::Elem, typename F::Elem> hauptmodul_pair(const F& K, int ell, const typename F::Elem& t0) {
    if (K.is_zero(t0)) throw Error(ErrorCode::CuspInput, "t = 0 is a cusp");
    const auto& M = hauptmodul_model(ell);
    auto num = poly::reduce_into(K, M.num);
    auto n = K.from_int(i64(mpz_fdiv_ui(M.n.get_mpz_t(), K.characteristic())));
    if (K.is_zero(n)) throw Error(ErrorCode::EqualPrimes, "characteristic divides the Fricke constant");
    auto t1 = K.div(n, t0);
    return {K.div(poly::eval(K, num, t0), t0), K.div(poly::eval(K, num, t1), t1)};
}

std::pair<mpq_class, mpq_class> hauptmodul_pair_q(int ell, const mpq_class& t0);

// ---- data files ----

// Directory searched before the compiled-in data; empty means none.  The
// initial value comes from SSGRAPH_DATA.
void set_data_dir(const std::string& dir);
std::string data_dir();

std::string sha256_hex(const std::string& bytes);

BiPolyAtkin parse_atkin_json(const std::string& text);
std::string atkin_to_json(const BiPolyAtkin& R);
// Monic/degree checks plus the Kronecker congruence.
void validate_atkin(const BiPolyAtkin& R);

// Loads level ell from the data directory or the built-in set (validated,
// cached).  UnknownLevel when no data exists.
const BiPolyAtkin& load_atkin(int ell);
BiPolyAtkin load_atkin_file(const std::string& path);
bool atkin_available(int ell);  // a file exists; says nothing about validity
std::vector<int> atkin_levels();  // built-in plus data-directory levels

// ---- derived polynomials ----

// Delta_ell mod an odd prime q, as the characteristic polynomial of
// multiplication by a/2 on F_q[y]/(a^2 - 4b).  Monic of degree 2 ell.
std::vector<u64> delta_mod(const BiPolyAtkin& R, u64 q);
// The same over the integers (multimodular).
ZPoly delta_charpoly_z(const BiPolyAtkin& R);

// F[i] is the coefficient of x^i, a polynomial in j.
using BiZPoly = std::vector<ZPoly>;

// Classical modular polynomial from Atkin data, multimodular and cached;
// signed so that F(x, x) is monic (the x^{ell+1} coefficient is then -1).
const BiZPoly& classical_modular_poly(int ell);
BiZPoly classical_modular_poly_from(const BiPolyAtkin& R);
// Delta_ell = F_ell(x, x), monic of degree 2 ell.
ZPoly delta_poly(int ell);
ZPoly diagonal(const BiZPoly& F);
bool is_symmetric(const BiZPoly& F);

template <class F>
typename F::Elem eval_bivariate(const F& K, const BiZPoly& Fl, const typename F::Elem& x, const typename F::Elem& j) {
    auto acc = K.zero();
    for (size_t i = Fl.size(); i-- > 0;) acc = K.add(K.mul(acc, x), poly::eval(K, poly::reduce_into(K, Fl[i]), j));
    return acc;
}

// ---- class polynomials ----

// H_D for an order discriminant D < 0 (keyed by D), from the bundled table.
const ZPoly* class_poly(long D);
long classpoly_bound();
// prod_{n | m} H_{-d n^2}; nullopt if any factor is missing.
std::optional<ZPoly> class_poly_dm(long d, long m);
// Number of reduced primitive forms of discriminant D.
long class_number_forms(long D);

}  // namespace ssg
