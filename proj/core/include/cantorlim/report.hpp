#ifndef CANTORLIM_REPORT_HPP
#define CANTORLIM_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cantorlim {

std::uint64_t fnv1a64(std::string_view bytes);

/// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

/// Line-oriented key=value result record with a header digest line. Field
/// order is insertion order, so emission is byte-stable for fixed inputs.
class RunReport {
public:
    RunReport(std::string command, std::uint64_t inputs_digest)
        : command_(std::move(command)), digest_(inputs_digest) {}

    void add(std::string_view key, std::string_view value);
    void add(std::string_view key, double value);
    void add(std::string_view key, std::int64_t value);
    void add_bool(std::string_view key, bool value);

    const std::string& command() const { return command_; }
    std::uint64_t digest() const { return digest_; }
    const std::vector<std::pair<std::string, std::string>>& records() const { return records_; }

    std::string to_text() const;

private:
    std::string command_;
    std::uint64_t digest_;
    std::vector<std::pair<std::string, std::string>> records_;
};

} // namespace cantorlim

#endif
