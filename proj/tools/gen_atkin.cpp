// Regenerates data/atkin/*.json and data/SHA256SUMS.
//
// Levels 2, 3, 5, 7, 13 come from the hauptmodul models; 11, 17, 19 are
// typed in from the published tables below.  Every level is validated
// (degrees, monic, Kronecker congruence) before it is written.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssg/modular_data.hpp"

using namespace ssg;
using namespace ssg::poly;

namespace {

// Highest power first, as printed.
ZPoly hi(std::initializer_list<long> cs) {
    ZPoly f;
    for (long c : cs) f.insert(f.begin(), mpz_class(c));
    ztrim(f);
    return f;
}

BiPolyAtkin level11() {
    BiPolyAtkin R;
    R.ell = 11;
    R.a = hi({1, -44, 693, -4334, 4400, 42658, -44968, -178376, -58432, 86240, 67200, 16000});
    R.b = zpow(hi({1, 232, 1176, 1120, 400}), 3);
    return R;
}

BiPolyAtkin level17() {
    BiPolyAtkin R;
    R.ell = 17;
    R.a = hi({1, 0, -119, -238, 5338, 20808, -91766, -630836, -70737, 7118240, 16023299, -13049914, -98725154,
              -125706976, 18738794, 169635044, 128884056, 25608112});
    R.b = zpow(hi({1, 248, 4082, 25988, 80561, 122444, 73252}), 3);
    return R;
}

BiPolyAtkin level19() {
    BiPolyAtkin R;
    R.ell = 19;
    auto lin = hi({1, 3});
    R.a = zmul(zmul(lin, hi({1, -1, -36, -30, 246, 432, 160})),
               hi({1, -2, -71, 12, 1848, 2532, -17359, -46922, 12297, 145008, 119712, -33600, -51200}));
    R.b = zmul(zpow(lin, 2), zpow(hi({1, 246, 3593, 19312, 48544, 57280, 25600}), 3));
    return R;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir / "atkin");
    std::vector<BiPolyAtkin> all;
    for (int l : {2, 3, 5, 7, 13}) all.push_back(atkin_from_hauptmodul(hauptmodul_model(l)));
    all.push_back(level11());
    all.push_back(level17());
    all.push_back(level19());
    for (auto& R : all) {
        try {
            validate_atkin(R);
        } catch (const Error& e) {
            std::cerr << "level " << R.ell << ": " << e.what() << "\n";
            return 2;
        }
        std::ofstream(dir / "atkin" / ("ell_" + std::to_string(R.ell) + ".json"), std::ios::binary)
            << atkin_to_json(R);
    }
    std::vector<std::string> names;
    for (auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto rel = std::filesystem::relative(e.path(), dir).generic_string();
        if (rel == "SHA256SUMS") continue;
        names.push_back(rel);
    }
    std::sort(names.begin(), names.end());
    std::ofstream sums(dir / "SHA256SUMS", std::ios::binary);
    for (auto& n : names) sums << sha256_hex(slurp(dir / n)) << "  " << n << "\n";
    std::cout << "wrote " << all.size() << " levels and " << names.size() << " checksums to " << dir << "\n";
    return 0;
}
