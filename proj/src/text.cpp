#include "convdist/text.hpp"

#include <cstdio>
#include <cstdlib>

#include "convdist/errors.hpp"

namespace convdist {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw config_error("expected a number, got empty string");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw config_error("bad number: " + t);
    return v;
}

std::uint64_t parse_u64(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty() || t.front() == '-')
        throw config_error("expected a nonnegative integer, got: " + t);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw config_error("bad integer: " + t);
    return v;
}

bool parse_bool(const std::string& text) {
    const std::string t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    throw config_error("expected true/false, got: " + t);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace convdist
