#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "doctest.h"
#include "ssg/modular_data.hpp"

using namespace ssg;
using namespace ssg::poly;
namespace fs = std::filesystem;

namespace {

ZPoly lin(long c) { return ZPoly{c, 1}; }  // x + c

ZPoly prod(std::initializer_list<ZPoly> fs) {
    ZPoly out{1};
    for (auto& f : fs) out = zmul(out, f);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ssg_test_" + std::to_string(::getpid()) + "_" + std::to_string(rand()));
        fs::create_directories(path / "atkin");
    }
    ~TempDir() {
        set_data_dir("");
        fs::remove_all(path);
    }
};

}  // namespace

TEST_CASE("transcribed Atkin data") {
    ZPoly q{400, 1120, 1176, 232, 1};
    CHECK(load_atkin(11).b == zpow(q, 3));
    CHECK(load_atkin(17).a[0] == 25608112);
    CHECK(zeval(load_atkin(19).a, -3) == 0);
}

TEST_CASE("Atkin data from the hauptmoduln matches the shipped files") {
    for (int l : {2, 3, 5, 7, 13}) {
        auto R = atkin_from_hauptmodul(hauptmodul_model(l));
        CHECK(R.a == load_atkin(l).a);
        CHECK(R.b == load_atkin(l).b);
    }
}

TEST_CASE("hauptmodul evaluation") {
    auto [j1, j2] = hauptmodul_pair_q(5, 1);
    CHECK(j1 == 4096);
    CHECK(j2 == hauptmodul_pair_q(5, 125).first);
    for (int l : {2, 3, 5, 7, 13}) {
        const auto& M = hauptmodul_model(l);
        for (long t : {1, 2, 3, 7, -5}) {
            mpq_class t0(t), t1 = mpq_class(M.n) / t0;
            auto a = hauptmodul_pair_q(l, t0), b = hauptmodul_pair_q(l, t1);
            CHECK(a.first == b.second);
            CHECK(a.second == b.first);
        }
        // Fricke fixed point: t0^2 = n in some F_{p^2}
        for (u64 p : {101, 103}) {
            Fp2Field K(p);
            auto n = K.from_int(long(mpz_fdiv_ui(M.n.get_mpz_t(), p)));
            auto t0 = *K.sqrt(n);
            auto pr = hauptmodul_pair(K, l, t0);
            CHECK(pr.first == pr.second);
        }
    }
    CHECK_THROWS_AS(hauptmodul_pair(PrimeField(101), 5, u64(0)), Error);
}

TEST_CASE("Delta_2 and Delta_3") {
    ZPoly d2 = prod({lin(-1728), lin(-8000), lin(3375), lin(3375)});
    CHECK(delta_poly(2) == d2);
    CHECK(diagonal(classical_modular_poly(2)) == d2);
    CHECK(classical_modular_poly(2)[3] == ZPoly{-1});
    ZPoly d3 = prod({ZPoly{0, 1}, lin(-54000), lin(-8000), lin(-8000), lin(32768), lin(32768)});
    CHECK(delta_poly(3) == d3);
    CHECK(diagonal(classical_modular_poly(3)) == d3);
    CHECK(delta_poly(2)[0] == mpz_class("157464000000000"));
}

TEST_CASE("Delta_ell identities") {
    for (int l : atkin_levels()) {
        auto d = delta_poly(l);
        CHECK(d.size() == size_t(2 * l + 1));
        CHECK(d.back() == 1);
        CHECK(is_symmetric(classical_modular_poly(l)));
        CHECK(delta_charpoly_z(load_atkin(l)) == d);
        // Kronecker: Delta mod ell = unit * prod_{j in F_ell} (x - j)^2 = unit * (x^ell - x)^2
        std::vector<u64> want(2 * l + 1, 0);
        want[2] = 1;
        want[l + 1] = u64(l) - 2;
        want[2 * l] = 1;
        CHECK(zreduce(d, u64(l)) == want);
    }
    CHECK(delta_poly(5).size() == 11);
    // Delta_2 = (x + 1)^4 mod 7
    CHECK(zreduce(delta_poly(2), 7) == std::vector<u64>{1, 4, 6, 4, 1});
    CHECK(delta_mod(load_atkin(2), 7) == std::vector<u64>{1, 4, 6, 4, 1});
}

TEST_CASE("classical modular polynomial is symmetric at random points") {
    const auto& F = classical_modular_poly(5);
    PrimeField K(1000003);
    SplitMix64 rng(1);
    for (int i = 0; i < 50; ++i) {
        u64 x = K.random(rng), y = K.random(rng);
        CHECK(eval_bivariate(K, F, x, y) == eval_bivariate(K, F, y, x));
    }
}

TEST_CASE("class polynomials") {
    CHECK(*class_poly(-3) == ZPoly{0, 1});
    CHECK(*class_poly(-4) == lin(-1728));
    CHECK(*class_poly(-7) == lin(3375));
    CHECK(*class_poly(-8) == lin(-8000));
    CHECK(*class_poly(-11) == lin(32768));
    CHECK(*class_poly_dm(3, 2) == zmul(ZPoly{0, 1}, lin(-54000)));
    for (long D = -3; D >= -classpoly_bound(); --D) {
        if (!class_poly(D)) continue;
        CHECK(class_poly(D)->size() == size_t(class_number_forms(D) + 1));
    }
    CHECK(class_number_forms(-20) == 2);
    CHECK(class_number_forms(-43) == 1);
}

TEST_CASE("Delta_ell factors through class polynomials") {
    for (int l : {5, 7, 11, 13, 17, 19}) {
        ZPoly P{1};
        for (long a = 0; a * a < 4 * l; ++a) {
            long N = 4 * l - a * a, f = 1, N0 = N;
            for (long q = 2; q * q <= N0; ++q)
                while (N0 % (q * q) == 0) {
                    N0 /= q * q;
                    f *= q;
                }
            long d = N0 % 4 == 3 ? N0 : 4 * N0, m = N0 % 4 == 3 ? f : f / 2;
            auto H = class_poly_dm(d, m);
            REQUIRE(H);
            P = zmul(P, zpow(*H, d % l == 0 ? 1 : 2));
        }
        int e3 = 2 * (1 + (l % 3 == 1 ? 1 : -1)), e4 = 1 + (l % 4 == 1 ? 1 : -1);
        ZPoly rhs = zmul(delta_poly(l), zmul(zpow(ZPoly{0, 1}, e3), zpow(lin(-1728), e4)));
        CHECK(P == rhs);
    }
}

TEST_CASE("validation errors are typed") {
    auto R = load_atkin(5);
    auto bad = R;
    bad.a.back() = 2;
    CHECK_THROWS_AS(validate_atkin(bad), Error);
    bad = R;
    bad.b.pop_back();
    CHECK_THROWS_AS(validate_atkin(bad), Error);
    bad = R;
    bad.a[0] += 1;
    try {
        validate_atkin(bad);
        FAIL("expected CongruenceFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CongruenceFailure);
    }
    for (const char* text : {"", "{", "[]", "{\"ell\":5}", "{\"ell\":5,\"a\":[1],\"b\":\"x\"}", "{\"ell\":5,\"a\":[\"1x\"],\"b\":[]}"})
        CHECK_THROWS_AS(parse_atkin_json(text), Error);
    CHECK(parse_atkin_json(atkin_to_json(R)).a == R.a);
}

TEST_CASE("user data directory") {
    TempDir dir;
    auto R = load_atkin(7);
    SUBCASE("a copy of a built-in level loads") {
        std::ofstream(dir.path / "atkin" / "ell_7.json") << atkin_to_json(R);
        set_data_dir(dir.path.string());
        CHECK(load_atkin(7).a == R.a);
    }
    SUBCASE("a tampered built-in level is rejected") {
        auto bad = R;
        bad.b[0] += 7 * 7 * 7;
        std::ofstream(dir.path / "atkin" / "ell_7.json") << atkin_to_json(bad);
        set_data_dir(dir.path.string());
        try {
            load_atkin(7);
            FAIL("expected ChecksumMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ChecksumMismatch);
        }
    }
    SUBCASE("a checksum list guards new levels") {
        auto fake = R;
        fake.ell = 23;
        std::string text = atkin_to_json(fake);
        std::ofstream(dir.path / "atkin" / "ell_23.json") << text;
        std::ofstream(dir.path / "SHA256SUMS") << std::string(64, '0') << "  atkin/ell_23.json\n";
        set_data_dir(dir.path.string());
        CHECK(atkin_available(23));
        try {
            load_atkin(23);
            FAIL("expected ChecksumMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ChecksumMismatch);
        }
        std::ofstream(dir.path / "SHA256SUMS") << sha256_hex(text) << "  atkin/ell_23.json\n";
        try {
            load_atkin(23);
            FAIL("expected a validation error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BadDegree);
        }
    }
    SUBCASE("unknown level") {
        set_data_dir(dir.path.string());
        CHECK(!atkin_available(23));
        CHECK_THROWS_AS(load_atkin(23), Error);
    }
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex(slurp(fs::path(SSG_SOURCE_DIR) / "data" / "atkin" / "ell_5.json")).size() == 64);
}
