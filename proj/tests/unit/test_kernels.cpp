#include "doctest.h"
#include "ssg/fields.hpp"
#include "ssg/kernels.hpp"

using namespace ssg;
using namespace ssg::kernels;

TEST_CASE("dot_i8 variants agree") {
    SplitMix64 rng(17);
    for (int t = 0; t < 500; ++t) {
        size_t n = rng.below(3000);
        std::vector<int8_t> a(n), b(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = int8_t(int(rng.below(3)) - 1);
            b[i] = int8_t(int(rng.below(3)) - 1);
        }
        long want = 0;
        for (size_t i = 0; i < n; ++i) want += a[i] * b[i];
        CHECK(dot_i8_scalar(a.data(), b.data(), n) == want);
        CHECK(dot_i8(a.data(), b.data(), n) == want);
        if (avx2_available()) CHECK(dot_i8_avx2(a.data(), b.data(), n) == want);
    }
}

TEST_CASE("cubic_char_sum variants agree") {
    SplitMix64 rng(23);
    for (uint32_t p : {5u, 7u, 13u, 31u, 97u, 1009u, 65537u, 1000003u}) {
        auto T = make_char_table(p);
        for (int t = 0; t < 40; ++t) {
            uint32_t A = uint32_t(rng.below(p)), B = uint32_t(rng.below(p));
            long s = cubic_char_sum_scalar(T, A, B);
            CHECK(cubic_char_sum(T, A, B) == s);
            if (avx2_available()) CHECK(cubic_char_sum_avx2(T, A, B) == s);
            if (p < 2000) {
                long want = 0;
                for (u64 x = 0; x < p; ++x) want += legendre(i64((x * x % p * x + u64(A) * x + B) % p), p);
                CHECK(s == want);
            }
        }
    }
}

TEST_CASE("forced scalar path") {
    auto before = active_isa();
    force_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    force_isa(before);
    CHECK(active_isa() == before);
}
