#include "cantorlim/report.hpp"

#include <charconv>
#include <sstream>

namespace cantorlim {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void RunReport::add(std::string_view key, std::string_view value) {
    records_.emplace_back(std::string(key), std::string(value));
}

void RunReport::add(std::string_view key, double value) { add(key, format_double(value)); }

void RunReport::add(std::string_view key, std::int64_t value) { add(key, std::to_string(value)); }

void RunReport::add_bool(std::string_view key, bool value) { add(key, value ? "true" : "false"); }

std::string RunReport::to_text() const {
    std::ostringstream oss;
    char digest_hex[17];
    std::snprintf(digest_hex, sizeof(digest_hex), "%016llx", static_cast<unsigned long long>(digest_));
    oss << "# cantorlim-report command=" << command_ << " digest=" << digest_hex << "\n";
    for (const auto& [k, v] : records_) oss << k << "=" << v << "\n";
    return oss.str();
}

} // namespace cantorlim
