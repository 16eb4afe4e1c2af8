#include "cantorlim/certificate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace cantorlim {

double kappa_of(const BuzzardParams& p, const AffineMap& A) {
    if (A.alpha == Complex{0.0, 0.0}) throw CertificateError("kappa_of needs an invertible map");
    const double a2 = std::norm(A.alpha);
    return overlap_area(A, p.c0) / (p.c0 * p.c0 * (1.0 + a2));
}

namespace {

struct BandBounds {
    double ann_lo, ann_hi;   // log|alpha| annulus bounds of R_{c'}
    double band_lo, band_hi; // log|alpha| bounds of R_{c1/3}
};

BandBounds band_bounds(const BuzzardParams& p) {
    BandBounds b;
    b.ann_lo = 0.5 * std::log(p.c_prime);
    b.ann_hi = -b.ann_lo;
    b.band_lo = 0.5 * std::log(p.q());
    b.band_hi = -b.band_lo;
    return b;
}

Band band_of(const BandBounds& b, double lr) {
    if (lr < b.band_lo) return Band::Minus;
    if (lr > b.band_hi) return Band::Plus;
    return Band::Zero;
}

} // namespace

Membership in_certificate(const BuzzardParams& p, const AffineMap& A) {
    const BandBounds b = band_bounds(p);
    Membership m;
    const double lr = std::log(std::abs(A.alpha));
    m.band = band_of(b, lr);
    m.kappa = kappa_of(p, A);
    const double threshold = (m.band == Band::Zero) ? p.kappa0 : p.kappa2;
    m.kappa_margin = m.kappa - threshold;
    m.band_margin = std::min(lr - b.ann_lo, b.ann_hi - lr);
    m.margin = std::min(m.kappa_margin, m.band_margin);
    m.inside = m.kappa_margin >= 0.0 && m.band_margin >= 0.0;
    return m;
}

Membership in_certificate(const BuzzardParams& p, const RelativeConfig& rc) {
    return in_certificate(p, rc.right_map);
}

bool certificate_interior(const BuzzardParams& p, const AffineMap& A, double kappa_eps_factor,
                          double band_eps) {
    const BandBounds b = band_bounds(p);
    const double lr = std::log(std::abs(A.alpha));
    if (std::min(lr - b.ann_lo, b.ann_hi - lr) < band_eps) return false;
    const double lo = std::max(lr - band_eps, b.ann_lo);
    const double hi = std::min(lr + band_eps, b.ann_hi);
    // the strictest threshold over every band reachable within band_eps
    double threshold = 0.0;
    if (lo < b.band_lo || hi > b.band_hi) threshold = std::max(threshold, p.kappa2);
    if (hi >= b.band_lo && lo <= b.band_hi) threshold = std::max(threshold, p.kappa0);
    return kappa_of(p, A) - kappa_eps_factor * p.kappa0 >= threshold;
}

AffineMap buzzard_transition(const BuzzardParams& p, Letter appended) {
    return AffineMap{Complex{p.q(), 0.0}, p.q() * buzzard_point(appended)};
}

namespace {

struct StepCandidates {
    bool use_left = false;
    bool use_right = false;
};

StepCandidates dispatch_case(const BuzzardParams& p, const AffineMap& A) {
    const double a2 = std::norm(A.alpha);
    StepCandidates c;
    if (a2 > 3.0 / p.c1) {
        c.use_right = true; // T_{∅, theta'_0 a}: contracts |alpha| by c1/3
    } else if (a2 < p.q()) {
        c.use_left = true; // T_{theta_0 a, ∅}: expands |alpha| by 3/c1
    } else {
        c.use_left = c.use_right = true;
    }
    return c;
}

CertStepResult cert_step_impl(const BuzzardParams& p, const RelativeConfig& rc,
                              const std::function<AffineMap(bool left, Letter)>& transition) {
    const StepCandidates mode = dispatch_case(p, rc.right_map);
    CertStepResult best;
    best.kappa_next = -1.0;

    AffineMap f_left_inv[9], f_right[9];
    if (mode.use_left)
        for (Letter a = 0; a < 9; ++a) f_left_inv[a] = invert(transition(true, a));
    if (mode.use_right)
        for (Letter a = 0; a < 9; ++a) f_right[a] = transition(false, a);

    auto consider = [&](std::optional<Letter> la, std::optional<Letter> ra) {
        AffineMap next = rc.right_map;
        if (la) next = compose(f_left_inv[*la], next);
        if (ra) next = compose(next, f_right[*ra]);
        const double k = kappa_of(p, next);
        if (k > best.kappa_next) {
            best.kappa_next = k;
            best.left = la;
            best.right = ra;
            best.next = rc;
            if (la) best.next.left_theta = rc.left_theta.appended(*la);
            if (ra) best.next.right_theta = rc.right_theta.appended(*ra);
            best.next.right_map = next;
        }
    };

    if (mode.use_left && mode.use_right) {
        for (Letter a = 0; a < 9; ++a)
            for (Letter a2 = 0; a2 < 9; ++a2) consider(a, a2);
    } else if (mode.use_left) {
        for (Letter a = 0; a < 9; ++a) consider(a, std::nullopt);
    } else {
        for (Letter a2 = 0; a2 < 9; ++a2) consider(std::nullopt, a2);
    }

    const Membership m = in_certificate(p, best.next);
    best.margin_next = m.margin;
    best.ok = m.inside;
    return best;
}

} // namespace

CertStepResult cert_step(const BuzzardParams& p, const RelativeConfig& rc) {
    return cert_step_impl(p, rc, [&](bool, Letter a) { return buzzard_transition(p, a); });
}

CertStepResult cert_step(const BuzzardParams& p, const RelativeConfig& rc,
                         const CantorSystem& left_sys, const CantorSystem& right_sys,
                         const TransitionProvider& provider) {
    // transition affines depend on the side's current theta
    return cert_step_impl(p, rc, [&](bool left, Letter a) {
        return left ? provider(left_sys, rc.left_theta, a) : provider(right_sys, rc.right_theta, a);
    });
}

ParamReport validate_params(const BuzzardParams& p) {
    ParamReport rep;
    auto check = [&](const std::string& name, double lhs, double rhs, bool strict = true) {
        ParamCheck c;
        c.name = name;
        c.lhs = lhs;
        c.rhs = rhs;
        c.slack = lhs - rhs;
        c.pass = strict ? (lhs > rhs) : (lhs >= rhs);
        rep.checks.push_back(c);
    };

    const double q = p.q();
    check("delta > 0", p.delta, 0.0);
    check("delta < 1", 1.0, p.delta);
    check("c0 = 1 - delta", 1e-15, std::abs(p.c0 - (1.0 - p.delta)), false);
    check("c1 > c0", p.c1, p.c0);
    check("c1 < 3c0/(2+c0) (covering)", 3.0 * p.c0 / (2.0 + p.c0), p.c1);
    check("c' > 1/4", p.c_prime, 0.25);
    check("c' <= c1/3", q, p.c_prime, false);
    check("kappa0 > 0", p.kappa0, 0.0);
    check("kappa2 > kappa0", p.kappa2, p.kappa0);
    check("kappa1 > kappa2", p.kappa1, p.kappa2);
    check("kappa1 < c/(36(1+c)), c = c1/3", q / (36.0 * (1.0 + q)), p.kappa1);
    // the corner-tight version of the strip bound; c/(36(1+c)) admits
    // corner-straddling counterexamples (see strip_separation_check)
    check("kappa1 < c/(72(1+c)) (corner-tight strip bound)", q / (72.0 * (1.0 + q)), p.kappa1);
    check("kappa2 < c'/(36(1+c'))", p.c_prime / (36.0 * (1.0 + p.c_prime)), p.kappa2);
    check("lambda > 1", p.lambda_growth, 1.0);

    const double c1sq = p.c1 * p.c1;
    // growth inequality at the binding end kappa = kappa0
    check("growth: 9(c1^2-1+k0) >= 8 c1^2 lambda k0",
          9.0 * (c1sq - 1.0 + p.kappa0), 8.0 * c1sq * p.lambda_growth * p.kappa0, false);

    check("c1^2 > (9-9k0)/(9-8k0)", c1sq, (9.0 - 9.0 * p.kappa0) / (9.0 - 8.0 * p.kappa0));
    check("c1^2 >= 1 + (12k0-4k2)/3", c1sq, 1.0 + (12.0 * p.kappa0 - 4.0 * p.kappa2) / 3.0, false);
    check("c1^2 >= 179/(180(1-2sqrt(k0))^2)", c1sq,
          179.0 / (180.0 * std::pow(1.0 - 2.0 * std::sqrt(p.kappa0), 2.0)), false);

    // closing-remark minimax at this kappa0 (middle term printed with 1/90)
    const double t1 = (9.0 - 9.0 * p.kappa0) / (9.0 - 8.0 * p.kappa0);
    const double t2 = 1.0 + (12.0 * p.kappa0 - 1.0 / 90.0) / 3.0;
    const double t3 = 179.0 / (180.0 * std::pow(1.0 - 2.0 * std::sqrt(p.kappa0), 2.0));
    rep.remark_x_squared = std::max({t1, t2, t3});
    rep.remark_bound = 1.0 - p.kappa0 / 9.0;
    rep.remark_holds = rep.remark_x_squared < rep.remark_bound;
    check("remark: x^2 < 1 - k0/9", rep.remark_bound, rep.remark_x_squared);

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

int certificate_nmax(const BuzzardParams& p) {
    // the lambda-growth bound only makes sense for lambda > 1; give refuted
    // parameter sets a small budget so chains can exhibit the actual failure
    if (!(p.lambda_growth > 1.0) || !(p.kappa2 > p.kappa0)) return 64;
    return static_cast<int>(std::ceil(std::log(p.kappa2 / p.kappa0) / std::log(p.lambda_growth))) + 2;
}

namespace {

// deterministic per-sample RNG stream, independent of thread layout
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SampleRng {
    std::uint64_t state;
    explicit SampleRng(std::uint64_t seed) : state(seed) {}
    double next() {
        state = splitmix64(state);
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
};

struct SampleResult {
    bool failed = false;
    SweepFailure failure;
    int chain_len = 0;
    double final_margin = 0.0;
    double kappa0_seen = 0.0;
    std::vector<SweepArrow> arrows;
};

// beta along a fixed direction with kappa(A) == target, via bisection on the
// translation radius (kappa is unimodal with its max at beta = 0)
Complex beta_for_kappa(const BuzzardParams& p, Complex alpha, double psi, double target) {
    const double far = 2.0 * p.c0 * (1.0 + std::abs(alpha)) + 1.0;
    const Complex dir{std::cos(psi), std::sin(psi)};
    double lo = 0.0, hi = far;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double k = kappa_of(p, AffineMap{alpha, mid * dir});
        if (k > target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi) * dir;
}

template <typename StepFn>
SampleResult run_chain(const BuzzardParams& p, const SweepSpec& spec, int idx,
                       const NegSequence& lroot, const NegSequence& rroot, const StepFn& step) {
    SampleResult res;
    SampleRng rng(splitmix64(spec.seed) ^ (0x100000001b3ULL * static_cast<std::uint64_t>(idx + 1)));

    const BandBounds b = band_bounds(p);
    const int nr = std::max(1, spec.alpha_radial_cells);
    const int na = std::max(1, spec.alpha_angular_cells);
    const int cell = idx % (nr * na);
    const int ir = cell % nr, ia = cell / nr;
    // keep the sample strictly inside the annulus: the closed boundary circle
    // is never interior to L, so the grid is padded by the interior margin
    const double pad = 1.2 * spec.interior_band_margin;
    const double width = (b.ann_hi - b.ann_lo) - 2.0 * pad;
    const double lr = b.ann_lo + pad + width * (ir + rng.next()) / nr;
    const double phi = 2.0 * M_PI * (ia + rng.next()) / na;
    const Complex alpha = std::exp(lr) * Complex{std::cos(phi), std::sin(phi)};

    const Band band = band_of(b, lr);
    const double threshold = (band == Band::Zero) ? p.kappa0 : p.kappa2;
    const double kmax = std::min(1.0, std::norm(alpha)) / (1.0 + std::norm(alpha));
    double target;
    if (rng.next() < spec.boundary_fraction) {
        // 1e-6 relative floor keeps the sampled kappa a safe distance above
        // the membership threshold under the bisection's own rounding
        target = threshold * (1.0 + 1e-6 + 3.0e-3 * rng.next());
    } else {
        const double lo = std::log(threshold * (1.0 + 2.0 * spec.interior_kappa_factor));
        const double hi = std::log(std::max(kmax * 0.9, threshold * 1.01));
        target = std::exp(lo + (hi - lo) * rng.next());
    }
    target = std::min(target, kmax * 0.999);
    const Complex beta = beta_for_kappa(p, alpha, 2.0 * M_PI * rng.next(), target);

    RelativeConfig rc{lroot, rroot, AffineMap{alpha, beta}};
    res.kappa0_seen = kappa_of(p, rc.right_map);

    const int nmax = spec.nmax_override > 0 ? spec.nmax_override : certificate_nmax(p);
    const bool keep_arrows = idx < spec.max_arrows;
    int steps = 0;
    while (true) {
        const Membership m = in_certificate(p, rc);
        if (!m.inside) {
            res.failed = true;
            res.failure = {idx, alpha, rc.right_map.beta, m.kappa, steps, "left the certificate"};
            break;
        }
        if (certificate_interior(p, rc.right_map, spec.interior_kappa_factor,
                                 spec.interior_band_margin)) {
            res.final_margin = m.margin;
            break;
        }
        if (steps >= nmax) {
            res.failed = true;
            res.failure = {idx, alpha, rc.right_map.beta, m.kappa, steps,
                           "interior margin not reached within N_max"};
            break;
        }
        const CertStepResult st = step(rc);
        if (keep_arrows)
            res.arrows.push_back({std::log(std::abs(rc.right_map.alpha)), m.kappa,
                                  std::log(std::abs(st.next.right_map.alpha)), st.kappa_next});
        if (!st.ok) {
            res.failed = true;
            res.failure = {idx, alpha, rc.right_map.beta, m.kappa, steps,
                           "no renormalization lands in L"};
            break;
        }
        rc = st.next;
        ++steps;
    }
    res.chain_len = steps;
    return res;
}

template <typename StepFn>
SweepReport run_sweep(const BuzzardParams& p, const SweepSpec& spec, const NegSequence& lroot,
                      const NegSequence& rroot, const StepFn& step) {
    SweepReport rep;
    rep.samples = spec.samples;
    rep.nmax = spec.nmax_override > 0 ? spec.nmax_override : certificate_nmax(p);

    const ParamReport params = validate_params(p);
    for (const auto& c : params.checks)
        if (!c.pass) rep.param_failures.push_back(c);

    std::vector<SampleResult> results(static_cast<std::size_t>(spec.samples));
    const int threads = std::max(1, spec.threads);
    std::atomic<int> counter{0};
    auto worker = [&]() {
        while (true) {
            const int i = counter.fetch_add(1);
            if (i >= spec.samples) break;
            results[static_cast<std::size_t>(i)] = run_chain(p, spec, i, lroot, rroot, step);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    rep.min_final_margin = 1e300;
    rep.min_kappa_seen = 1e300;
    for (const auto& r : results) {
        rep.max_chain_len = std::max(rep.max_chain_len, r.chain_len);
        rep.min_kappa_seen = std::min(rep.min_kappa_seen, r.kappa0_seen);
        if (r.failed) rep.failures.push_back(r.failure);
        else rep.min_final_margin = std::min(rep.min_final_margin, r.final_margin);
        for (const auto& a : r.arrows) rep.arrows.push_back(a);
    }
    return rep;
}

} // namespace

SweepReport verify_certificate(const BuzzardParams& p, const SweepSpec& spec) {
    const NegSequence root = constant_theta(kBuzzardCenterLetter, 1);
    return run_sweep(p, spec, root, root,
                     [&](const RelativeConfig& rc) { return cert_step(p, rc); });
}

SweepReport verify_certificate(const BuzzardParams& p, const SweepSpec& spec,
                               const CantorSystem& left_sys, const CantorSystem& right_sys,
                               const NegSequence& left_root, const NegSequence& right_root,
                               const TransitionProvider& provider) {
    return run_sweep(p, spec, left_root, right_root, [&](const RelativeConfig& rc) {
        return cert_step(p, rc, left_sys, right_sys, provider);
    });
}

bool strip_separation_check(const BuzzardParams& p, const AffineMap& A) {
    const double a2 = std::norm(A.alpha);
    const double q = p.q();
    if (!(a2 >= q - 1e-15 && a2 <= 3.0 / p.c1 + 1e-15))
        throw CertificateError("strip check requires alpha in R_{c1/3}");
    const double kappa = kappa_of(p, A);
    if (!(kappa < p.kappa1)) throw CertificateError("strip check requires A outside X^{kappa1}");

    const ConvexPolygon s = Square{{0.0, 0.0}, p.c0}.to_polygon();
    const ConvexPolygon inter = clip(transformed(s, A), s);
    if (inter.empty()) throw CertificateError("strip check requires a non-empty contact (X^0)");

    const double t = p.c0 / 3.0;
    const double tol = 1e-9 * p.c0;
    auto in_strips = [&](const ConvexPolygon& poly) {
        bool re_hi = true, re_lo = true, im_hi = true, im_lo = true;
        for (const auto& z : poly.vertices) {
            re_hi = re_hi && z.real() >= t - tol;
            re_lo = re_lo && z.real() <= -t + tol;
            im_hi = im_hi && z.imag() >= t - tol;
            im_lo = im_lo && z.imag() <= -t + tol;
        }
        return re_hi || re_lo || im_hi || im_lo;
    };
    return in_strips(inter) && in_strips(transformed(inter, invert(A)));
}

} // namespace cantorlim
