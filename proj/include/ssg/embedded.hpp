#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ssg {

struct EmbeddedFile {
    const char* name;  // path relative to the data directory
    const char* data;
    std::size_t size;
};

// Data files compiled into the library.
const std::vector<EmbeddedFile>& embedded_files();

}  // namespace ssg
