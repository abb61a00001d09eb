#include "ssg/parallel.hpp"

#include <atomic>

namespace ssg {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_threads(unsigned n) { g_threads = n ? n : 1; }
unsigned threads() { return g_threads; }

}  // namespace ssg
