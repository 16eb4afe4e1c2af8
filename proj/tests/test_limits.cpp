#include <doctest.h>

#include "helpers.hpp"

#include "cantorlim/limits.hpp"

#include <cmath>

using namespace cantorlim;
using namespace cantorlim::testing;

namespace {

NegSequence random_theta(std::mt19937_64& g, std::size_t depth, int letters = 9) {
    std::vector<Letter> s;
    std::uniform_int_distribution<int> letter(0, letters - 1);
    for (std::size_t i = 0; i <= depth; ++i) s.push_back(static_cast<Letter>(letter(g)));
    return NegSequence(s);
}

MapOracle quadratic_config(double gamma) {
    MapOracle h;
    h.f = [gamma](Complex z) { return z + gamma * z * z; };
    h.df = [gamma](Complex z) { return Complex{1.0, 0.0} + 2.0 * gamma * z; };
    return h;
}

} // namespace

TEST_CASE("Buzzard limit geometries are the exact translations z - a") {
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    auto g = rng(31);
    for (Letter a = 0; a < 9; ++a) {
        for (int trial = 0; trial < 8; ++trial) {
            NegSequence theta = random_theta(g, 1 + static_cast<std::size_t>(uniform(g, 0, 12)));
            std::vector<Letter> s = theta.symbols();
            s.back() = a;
            theta = NegSequence(s);
            const NormalizedIterate k = limit_geometry(sys, theta, 1e-12);
            CHECK(k.exact_affine);
            CHECK(k.error_radius == 0.0);
            CHECK(std::abs(k.affine_form.alpha - Complex{1, 0}) <= 1e-12);
            CHECK(std::abs(k.affine_form.beta + buzzard_point(a)) <= 1e-12);
        }
    }
}

TEST_CASE("depth-0 iterate is the normalized identity") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    const NegSequence theta({3}); // truncation depth 0
    // depth 0 cannot certify a small radius: the error is reported instead
    CHECK_THROWS_AS(limit_geometry(sys, theta, 1e-15), TolUnreachable);
}

TEST_CASE("normalization invariant: k(c) = 0 and Dk(c) = 1 within 1e-12") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    auto g = rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const NegSequence theta = random_theta(g, 16);
        const NormalizedIterate k = limit_geometry(sys, theta, 1e-8);
        const Complex c = sys.piece(theta.last()).base_point;
        CHECK(std::abs(k(c)) <= 1e-12);
        CHECK(std::abs(k.derivative(c) - Complex{1, 0}) <= 1e-12);
    }
}

TEST_CASE("perturbed iterate steps decay geometrically at the contraction rate") {
    PerturbedBuzzardSpec spec; // eta = 1e-3, c1 = 0.75
    const auto sys = make_perturbed_buzzard_system(spec);
    const NegSequence theta = constant_theta(4, 12, 2); // non-trivial past
    const auto steps = iterate_step_sizes(sys, theta, 10);
    REQUIRE(steps.size() == 10);
    // fitted geometric ratio over depths 2..10
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t n = 2; n < steps.size(); ++n) {
        CHECK(steps[n] < steps[n - 1]);
        log_sum += std::log(steps[n] / steps[n - 1]);
        ++count;
    }
    const double fitted = std::exp(log_sum / count);
    CHECK(fitted <= spec.c1 / 3.0 * 1.2); // (c1/3)^eps with slack
    CHECK(fitted >= spec.c1 / 3.0 * 0.8);
}

TEST_CASE("limit_geometry certifies the requested radius or reports the achievable one") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    const NegSequence theta = constant_theta(4, 20, 0);
    const NormalizedIterate k = limit_geometry(sys, theta, 1e-8);
    CHECK(k.error_radius <= 1e-8);
    CHECK(k.depth <= theta.truncation_depth());
    try {
        limit_geometry(sys, constant_theta(4, 3, 0), 1e-14);
        FAIL("expected TolUnreachable");
    } catch (const TolUnreachable& e) {
        CHECK(e.achievable > 1e-14);
    }
}

TEST_CASE("transition affine: Buzzard closed form F(z) = (c1/3)(z + b)") {
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    auto g = rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const NegSequence theta = random_theta(g, 5);
        const Letter b = static_cast<Letter>(uniform(g, 0, 8.999));
        const TransitionAffine F = transition_affine(sys, theta, b, 1e-12);
        CHECK(std::abs(F.map.alpha - Complex{p.q(), 0}) <= 1e-12);
        CHECK(std::abs(F.map.beta - p.q() * buzzard_point(b)) <= 1e-12);
    }
    CHECK_THROWS_AS(transition_affine(sys, random_theta(g, 3), Letter{12}, 1e-9), LimitsError);
}

TEST_CASE("transition affine composed with its inverse is the identity") {
    const auto sys = make_buzzard_system(BuzzardParams::preset());
    const NegSequence theta = constant_theta(4, 4);
    const TransitionAffine F = transition_affine(sys, theta, 7, 1e-12);
    const AffineMap round_trip = compose(F.map, invert(F.map));
    CHECK(std::abs(round_trip.alpha - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(round_trip.beta) < 1e-14);
}

TEST_CASE("perturbed transition affine stays within 10 eta of the closed form") {
    PerturbedBuzzardSpec spec; // eta 1e-3
    const auto sys = make_perturbed_buzzard_system(spec);
    const double q = spec.c1 / 3.0;
    const NegSequence theta = constant_theta(4, 20, 4);
    for (Letter b : {Letter{0}, Letter{4}, Letter{8}}) {
        const TransitionAffine F = transition_affine(sys, theta, b, 1e-8);
        const AffineMap exact{Complex{q, 0.0}, q * buzzard_point(b)};
        const double dist = affine_distance(F.map, exact, 0.75);
        CHECK(dist <= 10.0 * spec.eta);
    }
}

TEST_CASE("cocycle law: F-chain matches k o f_(ab) within 1e-10") {
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    const double q = p.q();
    auto g = rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const NegSequence theta = random_theta(g, 6);
        const Letter a = static_cast<Letter>(uniform(g, 0, 8.999));
        const Letter b = static_cast<Letter>(uniform(g, 0, 8.999));
        const AffineMap Fa = transition_affine(sys, theta, a, 1e-12).map;
        const AffineMap Fab = transition_affine(sys, theta.appended(a), b, 1e-12).map;
        const AffineMap chain = compose(Fa, Fab);
        CHECK(std::abs(chain.alpha - Complex{q * q, 0}) < 1e-12);
        CHECK(std::abs(chain.beta - (q * q * buzzard_point(b) + q * buzzard_point(a))) < 1e-12);

        // k^theta ∘ f_(theta0,a,b) = chain ∘ k^{theta a b}
        const NormalizedIterate k = limit_geometry(sys, theta, 1e-12);
        const NormalizedIterate k_ext = limit_geometry(sys, theta.appended(a).appended(b), 1e-12);
        const WordMap f = branch_word(sys, FiniteWord({theta.last(), a, b}));
        for (const Complex z : {Complex{0.1, 0.2}, Complex{-0.3, 0.0}}) {
            const Complex zz = sys.piece(b).base_point + z;
            CHECK(std::abs(k(f(zz)) - chain(k_ext(zz))) < 1e-10);
        }
    }
}

TEST_CASE("Hölder dependence on theta: deeper agreement gives closer limits") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    const auto grid = piece_grid(sys.piece(4), 25);
    // theta^j agree with the reference on the last j letters, then diverge
    const std::size_t depth = 14;
    const NegSequence ref = constant_theta(4, depth, 4);
    double prev = 1e300;
    for (std::size_t j = 2; j <= 8; j += 2) {
        // exactly the last j letters agree with the reference
        std::vector<Letter> s(depth + 1);
        for (std::size_t i = 0; i < depth + 1; ++i) s[i] = (depth - i) < j ? 4 : 8;
        const NegSequence other(s);
        const NormalizedIterate ka = limit_geometry(sys, ref, 1e-8);
        const NormalizedIterate kb = limit_geometry(sys, other, 1e-8);
        double d = 0.0;
        for (const auto& z : grid) d = std::max(d, std::abs(ka(z) - kb(z)));
        CHECK(d < prev);
        prev = d;
        // Hölder bound with a measured constant: C mu^{-j eps}
        CHECK(d <= 10.0 * std::pow(1.0 / sys.mu(), static_cast<double>(j)));
    }
}

TEST_CASE("continuity in the system: eta-perturbation moves k by at most 100 eta") {
    const double eta = 1e-4;
    PerturbedBuzzardSpec base;
    base.eta = 0.0;
    PerturbedBuzzardSpec pert;
    pert.eta = eta;
    // same combinatorics and pieces; maps eta-close
    const auto sys0 = make_perturbed_buzzard_system(base);
    const auto sys1 = make_perturbed_buzzard_system(pert);
    const NegSequence theta = constant_theta(4, 18, 2);
    const NormalizedIterate k0 = limit_geometry(sys0, theta, 1e-8);
    const NormalizedIterate k1 = limit_geometry(sys1, theta, 1e-8);
    double d = 0.0;
    for (const auto& z : piece_grid(sys0.piece(4), 30)) d = std::max(d, std::abs(k0(z) - k1(z)));
    CHECK(d <= 100.0 * eta);
    CHECK(d > 0.0);
}

TEST_CASE("perturbation part: h = k gives the identity on the image") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    const NegSequence theta = constant_theta(4, 16, 1);
    const NormalizedIterate k = limit_geometry(sys, theta, 1e-8);
    MapOracle h;
    h.f = [&k](Complex z) { return k(z); };
    h.df = [&k](Complex z) { return k.derivative(z); };
    const PerturbationPart part = perturbation_part(sys, h, theta, 1e-8);
    for (const Complex w : {Complex{0.05, 0.1}, Complex{-0.2, 0.15}, Complex{0.0, 0.0}})
        CHECK(std::abs(part(w) - w) < 1e-9);
}

TEST_CASE("perturbation part of affine h over Buzzard composes with z + a") {
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    const NegSequence theta = constant_theta(7, 5);
    const Complex a = buzzard_point(7);

    // h = Id: (k^theta)^-1(w) = w + a
    MapOracle id;
    id.f = [](Complex z) { return z; };
    const PerturbationPart part = perturbation_part(sys, id, theta, 1e-12);
    for (const Complex w : {Complex{0.1, 0.0}, Complex{-0.2, 0.3}})
        CHECK(std::abs(part(w) - (w + a)) < 1e-12);

    // affine h: h ∘ (z -> z + a)
    MapOracle h;
    const AffineMap A{{0.4, 0.7}, {1.0, -2.0}};
    h.f = [A](Complex z) { return A(z); };
    const PerturbationPart part2 = perturbation_part(sys, h, theta, 1e-12);
    for (const Complex w : {Complex{0.05, -0.1}, Complex{0.0, 0.2}})
        CHECK(std::abs(part2(w) - A(w + a)) < 1e-12);

    CHECK_THROWS_AS(part(Complex{5.0, 5.0}), LimitsError);
}

TEST_CASE("scaled renormalization flattening: affine h vanishes identically") {
    const auto sys = make_buzzard_system(BuzzardParams::preset());
    MapOracle h;
    const AffineMap A{{1.2, -0.3}, {0.5, 0.25}};
    h.f = [A](Complex z) { return A(z); };
    h.df = [A](Complex) { return A.alpha; };
    const NegSequence theta = constant_theta(4, 8);
    CHECK(scaled_renorm_flattening(sys, h, FiniteWord({4, 2, 7}), theta) < 1e-12);
}

TEST_CASE("flattening of a quadratic configuration: closed-form oracle and decay") {
    // For h(z) = z + g z^2 and the all-centers word of size n on Buzzard, the
    // flattening is exactly g q^n max|z|^2 = g q^n c0^2/2 (corner of the grid).
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    const double gamma = 0.1;
    const MapOracle h = quadratic_config(gamma);
    const NegSequence theta = constant_theta(4, 2);
    const double q = p.q();

    std::vector<double> values;
    for (int n = 1; n <= 8; ++n) {
        const FiniteWord word(std::vector<Letter>(static_cast<std::size_t>(n) + 1, 4));
        const double v = scaled_renorm_flattening(sys, h, word, theta);
        const double oracle = gamma * std::pow(q, n) * p.c0 * p.c0 / 2.0;
        CHECK(v == doctest::Approx(oracle).epsilon(1e-9));
        values.push_back(v);
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        CHECK(values[i] / values[i - 1] == doctest::Approx(q).epsilon(1e-6));
}

TEST_CASE("flattening base case: word of size zero is finite") {
    const auto p = BuzzardParams::preset();
    const auto sys = make_buzzard_system(p);
    const MapOracle h = quadratic_config(0.1);
    const double v = scaled_renorm_flattening(sys, h, FiniteWord({4}), constant_theta(4, 2));
    CHECK(v == doctest::Approx(0.1 * p.c0 * p.c0 / 2.0).epsilon(1e-9));
}

TEST_CASE("finite-difference derivative fallback matches the oracle") {
    MapOracle with_df = quadratic_config(0.3);
    MapOracle without_df = with_df;
    without_df.df = nullptr;
    for (const Complex z : {Complex{0.2, -0.4}, Complex{-1.0, 0.5}})
        CHECK(std::abs(with_df.derivative(z) - without_df.derivative(z)) < 1e-8);
}

TEST_CASE("transition affine reports the achievable radius when theta is too shallow") {
    PerturbedBuzzardSpec spec;
    const auto sys = make_perturbed_buzzard_system(spec);
    try {
        transition_affine(sys, constant_theta(4, 2, 0), Letter{7}, 1e-13);
        FAIL("expected TolUnreachable");
    } catch (const TolUnreachable& e) {
        CHECK(e.achievable > 0.0);
    }
}
