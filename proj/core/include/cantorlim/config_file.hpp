#ifndef CANTORLIM_CONFIG_FILE_HPP
#define CANTORLIM_CONFIG_FILE_HPP

#include "cantorlim/certificate.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace cantorlim {

/// Malformed input (parse errors, bad fields). Distinct from CantorError /
/// CertificateError, which signal invariant violations of a well-formed
/// configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BuzzardPresetConfig {
    double delta = 7e-8;
    double eta = 0.0; // nonzero: quadratic-bump perturbed system
    std::optional<double> c1;
    std::optional<double> kappa0;
    std::optional<double> kappa1;
    std::optional<double> kappa2;
    std::optional<double> c_prime;
    std::optional<double> lambda;
};

struct PieceConfig {
    Letter letter = 0;
    Complex center{0.0, 0.0};
    double side = 0.0;
};

struct BranchConfig {
    Letter image = 0;
    Letter domain = 0;
    bool quadratic = false;
    Complex linear{0.0, 0.0};
    Complex offset{0.0, 0.0};
    Complex quad{0.0, 0.0};
};

/// Parsed form of the JSON system-definition document. A file carries either
/// the buzzard preset block or an explicit system, never both.
struct SystemConfig {
    std::optional<BuzzardPresetConfig> preset;

    std::size_t alphabet_size = 0;
    bool transitions_full = true;
    std::vector<std::pair<Letter, Letter>> transition_pairs;
    std::vector<PieceConfig> pieces;
    std::vector<BranchConfig> branches;
    double mu = 0.0;
    std::vector<std::pair<Letter, Complex>> base_points;
    double markov_slack = 1e-9;

    std::string raw_text; // exact file bytes, for report digests

    static SystemConfig parse(const std::string& text);
    static SystemConfig parse_file(const std::filesystem::path& path);

    CantorSystem build_system() const;
    /// Certificate parameters: preset + overrides. Throws for explicit
    /// (non-preset) configurations.
    BuzzardParams buzzard_params() const;
};

} // namespace cantorlim

#endif
