#include "txlab/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <thread>

#include "txlab/errors.hpp"

namespace txlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t thread_budget() {
    std::size_t n = 0;
    if (const char* env = std::getenv("TRANSDUCER_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0)
            throw ConfigError("TRANSDUCER_LAB_THREADS must be a nonnegative integer, got \"" +
                              std::string(env) + "\"");
        n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r' || s[a] == '\n')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r' || s[b - 1] == '\n')) --b;
    return s.substr(a, b - a);
}

}  // namespace txlab
