#include "cantorlim/buzzard.hpp"

#include <cmath>

namespace cantorlim {

BuzzardParams BuzzardParams::preset(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw CantorError("delta must lie in (0,1)");
    BuzzardParams p;
    p.delta = delta;
    p.c0 = 1.0 - delta;
    p.c1 = 3.0 * p.c0 / (2.0 + p.c0) * (1.0 - 1e-9);
    const double q = p.c1 / 3.0;
    p.kappa0 = 1e-6;
    // c/(72(1+c)) rather than c/(36(1+c)): the halved constant is what the
    // strip containment actually needs once corner contacts are accounted
    // for (tight at the symmetric corner triangle with legs c0/6), and it
    // keeps every other constraint satisfied.
    p.kappa1 = q / (72.0 * (1.0 + q)) * (1.0 - 1e-9);
    p.kappa2 = 0.9 * p.kappa1;
    p.c_prime = q;
    const double c1sq = p.c1 * p.c1;
    // largest lambda with (1+|a|^2)(c1^2-(1-k))/8 >= (1+|a|^2) c1^2 lambda k / 9
    // over k in [kappa0, kappa1); the minimum of the admissible bound is at
    // kappa0. Shaved by 1% so the sweep checks a strict inequality.
    p.lambda_growth = 9.0 * (c1sq - 1.0 + p.kappa0) / (8.0 * c1sq * p.kappa0) / 1.01;
    return p;
}

Complex buzzard_point(Letter k) {
    if (k >= 9) throw CantorError("Buzzard letter out of range");
    return {static_cast<double>(k % 3) - 1.0, static_cast<double>(k / 3) - 1.0};
}

namespace {

void check_buzzard_scales(double delta, double c0, double c1) {
    if (!(delta > 0.0 && delta < 1.0)) throw CantorError("delta must lie in (0,1)");
    if (std::abs(c0 - (1.0 - delta)) > 1e-15) throw CantorError("c0 must equal 1 - delta");
    if (!(c1 > c0)) throw CantorError("c1 must exceed c0");
    // g_a(S(a;c0)) = S(0; 3c0/c1) must cover the union of the pieces
    if (!(c1 < 3.0 * c0 / (2.0 + c0)))
        throw CantorError("covering constraint violated: need c1 < 3c0/(2+c0)");
}

std::vector<Piece> buzzard_pieces(double c0) {
    std::vector<Piece> pieces;
    pieces.reserve(9);
    for (Letter k = 0; k < 9; ++k) {
        Piece p;
        p.letter = k;
        p.region = Square{buzzard_point(k), c0}.to_polygon();
        p.base_point = buzzard_point(k); // c_a = a
        pieces.push_back(std::move(p));
    }
    return pieces;
}

} // namespace

CantorSystem make_buzzard_system(const BuzzardParams& p) {
    check_buzzard_scales(p.delta, p.c0, p.c1);
    const double q = p.c1 / 3.0;
    std::vector<Branch> branches;
    branches.reserve(81);
    for (Letter a = 0; a < 9; ++a)
        for (Letter b = 0; b < 9; ++b)
            branches.push_back(Branch::make_affine(a, b, AffineMap{Complex{q, 0.0}, buzzard_point(a)}));
    const double mu = 3.0 / p.c1;
    return CantorSystem(Alphabet(9), TransitionSet::full(9), buzzard_pieces(p.c0), std::move(branches), mu);
}

CantorSystem make_perturbed_buzzard_system(const PerturbedBuzzardSpec& spec) {
    const double c0 = 1.0 - spec.delta;
    check_buzzard_scales(spec.delta, c0, spec.c1);
    const double q = spec.c1 / 3.0;
    // largest |z| over any piece, for derivative and bump bounds
    const double zmax = std::sqrt(2.0) * (1.0 + c0 / 2.0);

    double eta_max = 0.0;
    auto eta_of = [&](Letter a, Letter b) {
        return spec.per_pair ? spec.eta_table[static_cast<std::size_t>(a) * 9 + b] : spec.eta;
    };
    for (Letter a = 0; a < 9; ++a)
        for (Letter b = 0; b < 9; ++b) eta_max = std::max(eta_max, std::abs(eta_of(a, b)));

    std::vector<Branch> branches;
    branches.reserve(81);
    for (Letter a = 0; a < 9; ++a)
        for (Letter b = 0; b < 9; ++b) {
            const double eta = eta_of(a, b);
            const Complex shift = buzzard_point(a);
            MapOracle oracle;
            oracle.f = [q, shift, eta](Complex z) { return q * z + shift + eta * z * z; };
            oracle.df = [q, eta](Complex z) { return Complex{q, 0.0} + 2.0 * eta * z; };
            // f(b+s) - f(b) = s (q + eta (2b + s)), free of cancellation
            oracle.fdiff = [q, eta](Complex base, Complex s) {
                return s * (Complex{q, 0.0} + eta * (2.0 * base + s));
            };
            branches.push_back(Branch::make_differentiable(a, b, std::move(oracle), 1.0, 2.0 * std::abs(eta)));
        }

    const double max_df = q + 2.0 * eta_max * zmax;
    if (!(max_df < 1.0)) throw CantorError("perturbation too large: branches no longer contract");
    const double mu = (1.0 - 1e-12) / max_df;

    CantorSystemOptions opts;
    // bump can push branch images outside the nominal squares by up to
    // eta * |z|^2; admit that much inflation in the Markov check
    opts.markov_slack = eta_max * zmax * zmax + 1e-9;
    return CantorSystem(Alphabet(9), TransitionSet::full(9), buzzard_pieces(c0), std::move(branches), mu, opts);
}

NegSequence constant_theta(Letter last, std::size_t depth, Letter fill) {
    std::vector<Letter> s(depth + 1, fill);
    s.back() = last;
    return NegSequence(std::move(s));
}

} // namespace cantorlim
