#ifndef CANTORLIM_CERTIFICATE_HPP
#define CANTORLIM_CERTIFICATE_HPP

#include "cantorlim/buzzard.hpp"
#include "cantorlim/config_space.hpp"

#include <cstdint>
#include <string>

namespace cantorlim {

/// The largest kappa with A in X^kappa_alpha:
/// area( S(0;c0) ∩ A(S(0;c0)) ) / ( c0^2 (1+|alpha|^2) ).
double kappa_of(const BuzzardParams& p, const AffineMap& A);

/// |alpha| bands of the certificate annulus R_{c'}; thresholds are kappa2 for
/// the outer bands and kappa0 for the middle one.
enum class Band { Minus, Zero, Plus };

struct Membership {
    bool inside = false;
    Band band = Band::Zero;
    double kappa = 0.0;
    double kappa_margin = 0.0; // kappa - band threshold
    double band_margin = 0.0;  // distance of log|alpha| to the annulus boundary
    double margin = 0.0;       // min of the two, signed
};

Membership in_certificate(const BuzzardParams& p, const AffineMap& A);
Membership in_certificate(const BuzzardParams& p, const RelativeConfig& rc);

/// Quantitative interior test: the whole margin box around A must stay in L.
/// Requires band_margin >= band_eps and kappa >= (max threshold over bands
/// reachable within band_eps) + kappa_eps_factor*kappa0.
bool certificate_interior(const BuzzardParams& p, const AffineMap& A,
                          double kappa_eps_factor = 1e-3, double band_eps = 1e-3);

/// Closed-form transition affine of the exact system: F(z) = (c1/3)(z + a).
AffineMap buzzard_transition(const BuzzardParams& p, Letter appended);

struct CertStepResult {
    bool ok = false;
    std::optional<Letter> left;
    std::optional<Letter> right;
    RelativeConfig next;
    double kappa_next = 0.0;
    double margin_next = 0.0;
};

/// One renormalization step of the certificate's case analysis:
///  |alpha|^2 > 3/c1: right-only letter (lands the band in R_{c1/3});
///  |alpha|^2 < c1/3: left-only letter;
///  otherwise: both-sides letter pair.
/// Maximizes the resulting kappa over the proof's admissible letter set;
/// fails when no choice lands back in L.
CertStepResult cert_step(const BuzzardParams& p, const RelativeConfig& rc);

/// Same step but with the transition affines of explicit systems (used for
/// perturbation-stability sweeps, where F is theta-dependent).
CertStepResult cert_step(const BuzzardParams& p, const RelativeConfig& rc,
                         const CantorSystem& left_sys, const CantorSystem& right_sys,
                         const TransitionProvider& provider);

struct ParamCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
    double slack = 0.0; // lhs - rhs, sign arranged so positive means pass
};

struct ParamReport {
    std::vector<ParamCheck> checks;
    bool all_pass = false;
    /// The closing remark's minimax bound evaluated at this kappa0 (its
    /// middle term uses the literal printed constant 1/90).
    double remark_x_squared = 0.0;
    double remark_bound = 0.0; // 1 - kappa0/9
    bool remark_holds = false;
};

/// Every BuzzardParams invariant plus the three displayed c1^2 bounds of the
/// construction, each reported with its slack.
ParamReport validate_params(const BuzzardParams& p);

int certificate_nmax(const BuzzardParams& p);

struct SweepSpec {
    int samples = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
    int alpha_radial_cells = 40;
    int alpha_angular_cells = 16;
    double boundary_fraction = 0.7;      // samples targeted at the kappa0 level set
    double interior_kappa_factor = 1e-3; // interior margin, units of kappa0
    double interior_band_margin = 1e-3;  // interior margin in log|alpha|
    int nmax_override = 0;               // 0: derive from params
    int max_arrows = 64;                 // orbit arrows retained for rendering
};

struct SweepFailure {
    int sample = -1;
    Complex alpha{0.0, 0.0};
    Complex beta{0.0, 0.0};
    double kappa = 0.0;
    int chain_len = 0;
    std::string reason;
};

struct SweepArrow {
    double log_alpha_from = 0.0, kappa_from = 0.0;
    double log_alpha_to = 0.0, kappa_to = 0.0;
};

struct SweepReport {
    int samples = 0;
    int nmax = 0;
    std::vector<SweepFailure> failures;
    std::vector<ParamCheck> param_failures;
    int max_chain_len = 0;
    double min_final_margin = 0.0;
    double min_kappa_seen = 0.0;
    std::vector<SweepArrow> arrows;

    bool pass() const { return failures.empty() && param_failures.empty(); }
};

/// Grid-sampled recurrence check of L: alpha over a jittered log-polar grid
/// strictly inside R_{c'}, beta at and above the X^{kappa0} boundary per
/// alpha; each sample is driven by cert_step chains until the interior
/// margin is reached. Failures are data, not exceptions.
SweepReport verify_certificate(const BuzzardParams& p, const SweepSpec& spec);

/// Perturbation-stability variant: the chains use transition affines of the
/// given systems (recomputed limit geometries) instead of the closed form.
SweepReport verify_certificate(const BuzzardParams& p, const SweepSpec& spec,
                               const CantorSystem& left_sys, const CantorSystem& right_sys,
                               const NegSequence& left_root, const NegSequence& right_root,
                               const TransitionProvider& provider);

/// True iff S(0;c0) ∩ A(S(0;c0)) lies inside one of the four boundary strips
/// S_i and inside one image strip A(S_j). Requires A in X^0 \ X^{kappa1}
/// with alpha in R_{c1/3}; throws otherwise.
bool strip_separation_check(const BuzzardParams& p, const AffineMap& A);

class CertificateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
