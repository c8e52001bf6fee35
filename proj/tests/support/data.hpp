#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qact::testing {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

inline std::string data_path(const std::string& relative) {
    return std::string(QACT_TEST_DATA_DIR) + "/" + relative;
}

inline std::string read_data(const std::string& relative) {
    return slurp(data_path(relative));
}

}  // namespace qact::testing
