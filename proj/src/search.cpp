#include "ssg/search.hpp"

#include <algorithm>
#include <limits>

#include "ssg/kernels.hpp"
#include "ssg/parallel.hpp"

namespace ssg {

std::pair<std::vector<int8_t>, std::vector<int8_t>> legendre_vectors(u64 p, u64 d) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "legendre_vectors needs an odd prime");
    if (legendre(i64(d % p), p) != -1) throw Error(ErrorCode::InvalidInput, "d must be a nonresidue");
    std::vector<int8_t> v(p), w(p);
    for (u64 x = 0; x < p; ++x) {
        v[x] = int8_t(legendre(i64(x), p));
        w[x] = int8_t(legendre(i64((x * x + p - d % p) % p), p));
    }
    return {v, w};
}

SearchOutcome find_supersingular(u64 p) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "find_supersingular needs a prime p > 3");
    if (p >= (u64(1) << 31)) throw Error(ErrorCode::FieldTooLarge, "find_supersingular needs p < 2^31");
    PrimeField K(p);
    if (p % 4 == 3) {
        CurveModel<PrimeField> m{Shape::TwoTor, 0, K.from_int(-1)};
        return {m, j_invariant(K, m), 0, 0};
    }
    u64 d = least_nonresidue(p);
    auto [v0, w] = legendre_vectors(p, d);
    // (x - c)/p = v0[x - c]; a doubled copy turns every rotation into a slice
    std::vector<int8_t> vv(2 * p);
    for (u64 i = 0; i < 2 * p; ++i) vv[i] = v0[i % p];
    const u64 half = (p - 1) / 2;
    std::vector<u64> best(threads() + 1, std::numeric_limits<u64>::max());
    parallel_chunks(half, [&](size_t lo, size_t hi, size_t chunk) {
        for (size_t i = lo; i < hi; ++i) {
            u64 c = i + 1;
            if (kernels::dot_i8(vv.data() + p - c, w.data(), p) == 0) {
                best[chunk] = c;
                return;
            }
        }
    });
    u64 c = *std::min_element(best.begin(), best.end());
    if (c == std::numeric_limits<u64>::max())
        throw Error(ErrorCode::InvalidInput, "no supersingular curve found in the scan");
    CurveModel<PrimeField> m{Shape::TwoTor, K.from_int(i64(2 * c)), K.sub(K.sqr(c), d)};
    return {m, j_invariant(K, m), c, d};
}

}  // namespace ssg
