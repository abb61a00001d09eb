#include "ssg/curves.hpp"

#include "ssg/kernels.hpp"

namespace ssg {

const char* shape_name(Shape s) {
    switch (s) {
    case Shape::Short: return "Short";
    case Shape::TwoTor: return "TwoTor";
    case Shape::Search: return "Search";
    }
    return "?";
}

u64 minimal_torsion_field(u64 p, u64 ell) {
    if (ell == 2) return 1;
    if (p % ell == 0) throw Error(ErrorCode::EqualPrimes, "p == ell");
    return mult_order(mulmod(p % ell, p % ell, ell), ell);
}

i64 count_points_fp(const PrimeField& K, const CurveModel<PrimeField>& E) {
    u64 p = K.p();
    if (p < 5) throw Error(ErrorCode::InvalidInput, "point counting needs p >= 5");
    if (p >= (u64(1) << 31)) throw Error(ErrorCode::FieldTooLarge, "point counting needs p < 2^31");
    if (!is_valid(K, E)) throw Error(ErrorCode::InvalidInput, "singular curve");
    auto S = to_short(K, E);
    thread_local kernels::CharTable table;
    if (table.p != p) table = kernels::make_char_table(uint32_t(p));
    return i64(p) + 1 + kernels::cubic_char_sum(table, uint32_t(S.c1), uint32_t(S.c2));
}

bool is_supersingular_fp(const PrimeField& K, const CurveModel<PrimeField>& E) {
    return count_points_fp(K, E) == i64(K.p()) + 1;
}

}  // namespace ssg
