#include "ssg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__)
#include <immintrin.h>
#define SSG_HAVE_X86 1
#endif

namespace ssg::kernels {

namespace {

std::atomic<int> g_forced{-1};

inline uint32_t addm(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}

}  // namespace

bool avx2_available() {
#ifdef SSG_HAVE_X86
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() {
    int f = g_forced.load();
    if (f >= 0) return (Isa(f) == Isa::Avx2 && avx2_available()) ? Isa::Avx2 : Isa::Scalar;
    const char* env = std::getenv("SSGRAPH_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(Isa isa) { g_forced = int(isa); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

CharTable make_char_table(uint32_t p) {
    CharTable t;
    t.p = p;
    t.chi.assign(size_t(p) + 8, 0);
    for (uint64_t x = 1; x < p; ++x) t.chi[x * x % p] = 1;
    for (uint32_t x = 1; x < p; ++x)
        if (t.chi[x] == 0) t.chi[x] = -1;
    return t;
}

long dot_i8_scalar(const int8_t* a, const int8_t* b, size_t len) {
    long s = 0;
    for (size_t i = 0; i < len; ++i) s += long(a[i]) * b[i];
    return s;
}

long cubic_char_sum_scalar(const CharTable& t, uint32_t A, uint32_t B) {
    const uint64_t p = t.p;
    long s = 0;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t v = (x * x % p * x + uint64_t(A) * x + B) % p;
        s += t.chi[v];
    }
    return s;
}

#ifdef SSG_HAVE_X86

__attribute__((target("avx2"))) long dot_i8_avx2(const int8_t* a, const int8_t* b, size_t len) {
    const __m256i ones8 = _mm256_set1_epi8(1);
    const __m256i ones16 = _mm256_set1_epi16(1);
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 32 <= len; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i prod = _mm256_sign_epi8(va, vb);
        __m256i s16 = _mm256_maddubs_epi16(ones8, prod);
        acc = _mm256_add_epi32(acc, _mm256_madd_epi16(s16, ones16));
    }
    alignas(32) int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    long s = 0;
    for (int k = 0; k < 8; ++k) s += lanes[k];
    return s + dot_i8_scalar(a + i, b + i, len - i);
}

namespace {

__attribute__((target("avx2"))) inline __m256i addmod8(__m256i a, __m256i b, __m256i p) {
    __m256i s = _mm256_add_epi32(a, b);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, p));
}

}  // namespace

// Finite differences of step 8 per lane keep every update to add-and-reduce.
__attribute__((target("avx2"))) long cubic_char_sum_avx2(const CharTable& t, uint32_t A, uint32_t B) {
    const uint64_t p = t.p;
    if (p < 64) return cubic_char_sum_scalar(t, A, B);
    auto f = [&](uint64_t x) { return (x % p * (x % p) % p * (x % p) + uint64_t(A) * (x % p) + B) % p; };
    alignas(32) uint32_t v0[8], d1[8], d2[8];
    for (uint64_t k = 0; k < 8; ++k) {
        uint64_t f0 = f(k), f1 = f(k + 8), f2 = f(k + 16);
        v0[k] = uint32_t(f0);
        d1[k] = uint32_t((f1 + p - f0) % p);
        d2[k] = uint32_t((f2 + 2 * (p - f1) + f0) % p);
    }
    // third difference of a monic cubic at step h is 6 h^3
    const uint32_t d3 = uint32_t(6ULL * 512 % p);
    const __m256i P = _mm256_set1_epi32(int(p));
    const __m256i D3 = _mm256_set1_epi32(int(d3));
    __m256i V = _mm256_load_si256(reinterpret_cast<const __m256i*>(v0));
    __m256i D1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d1));
    __m256i D2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d2));
    __m256i acc = _mm256_setzero_si256();
    const int* base = reinterpret_cast<const int*>(t.chi.data());
    uint64_t x = 0;
    for (; x + 8 <= p; x += 8) {
        __m256i g = _mm256_i32gather_epi32(base, V, 1);
        g = _mm256_srai_epi32(_mm256_slli_epi32(g, 24), 24);
        acc = _mm256_add_epi32(acc, g);
        V = addmod8(V, D1, P);
        D1 = addmod8(D1, D2, P);
        D2 = addmod8(D2, D3, P);
    }
    alignas(32) int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    long s = 0;
    for (int k = 0; k < 8; ++k) s += lanes[k];
    for (; x < p; ++x) s += t.chi[f(x)];
    return s;
}

#else

long dot_i8_avx2(const int8_t* a, const int8_t* b, size_t len) { return dot_i8_scalar(a, b, len); }
long cubic_char_sum_avx2(const CharTable& t, uint32_t A, uint32_t B) { return cubic_char_sum_scalar(t, A, B); }

#endif

long dot_i8(const int8_t* a, const int8_t* b, size_t len) {
    return active_isa() == Isa::Avx2 ? dot_i8_avx2(a, b, len) : dot_i8_scalar(a, b, len);
}

long cubic_char_sum(const CharTable& t, uint32_t A, uint32_t B) {
    return active_isa() == Isa::Avx2 ? cubic_char_sum_avx2(t, A, B) : cubic_char_sum_scalar(t, A, B);
}

}  // namespace ssg::kernels
