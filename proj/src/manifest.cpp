#include "hjc/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hjc/errors.hpp"

namespace hjc {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_file_hex(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open file for digest: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string bytes = ss.str();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open manifest output file: " + path);
    f << j.dump(2) << '\n';
    f.flush();
    if (!f) throw io_error("failed writing manifest file: " + path);
}

} // namespace hjc
