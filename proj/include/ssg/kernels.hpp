#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Data-parallel inner loops with a scalar reference and an AVX2 variant
// chosen at runtime.  Both variants must agree exactly.
namespace ssg::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
bool avx2_available();
// Overrides detection; Avx2 is ignored when the CPU lacks it.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

// Quadratic character table of F_p, padded so vector gathers may read a few
// bytes past index p-1.
struct CharTable {
    uint32_t p = 0;
    std::vector<int8_t> chi;
};
CharTable make_char_table(uint32_t p);

// sum_i a[i]*b[i] for entries in {-1,0,1}.
long dot_i8(const int8_t* a, const int8_t* b, size_t len);
long dot_i8_scalar(const int8_t* a, const int8_t* b, size_t len);
long dot_i8_avx2(const int8_t* a, const int8_t* b, size_t len);

// sum over x in F_p of chi(x^3 + A x + B); requires p < 2^31.
long cubic_char_sum(const CharTable& t, uint32_t A, uint32_t B);
long cubic_char_sum_scalar(const CharTable& t, uint32_t A, uint32_t B);
long cubic_char_sum_avx2(const CharTable& t, uint32_t A, uint32_t B);

}  // namespace ssg::kernels
