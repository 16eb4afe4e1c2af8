#include <doctest.h>

#include "helpers.hpp"

#include "cantorlim/config_space.hpp"

#include <cmath>

using namespace cantorlim;
using namespace cantorlim::testing;

namespace {

struct BuzzardFixture {
    BuzzardParams p = BuzzardParams::preset();
    CantorSystem sys = make_buzzard_system(p);
    NegSequence root = constant_theta(4, 4);
    RelativeConfig rc(const AffineMap& m) const { return {root, root, m}; }
};

/// Brute-force oracle: does any admissible pair of size-n words have touching
/// cylinders under (Id, translation by beta)? Exact interval arithmetic on
/// the axis-aligned squares of the piece frame.
bool any_linked_pair_brute(const BuzzardParams& p, double beta, int n) {
    const double q = p.q();
    // enumerate all words of size n within the central piece frame:
    // cylinder center = sum q^j point(w_j), side = q^n c0
    std::vector<Complex> centers{{0.0, 0.0}};
    double scale = 1.0;
    for (int depth = 0; depth < n; ++depth) {
        scale *= q;
        std::vector<Complex> next;
        next.reserve(centers.size() * 9);
        for (const auto& c : centers)
            for (Letter a = 0; a < 9; ++a) next.push_back(c + scale * buzzard_point(a));
        centers = std::move(next);
    }
    const double half = scale * p.c0 / 2.0;
    for (const auto& ca : centers)
        for (const auto& cb : centers) {
            const Complex d = ca - (cb + Complex{beta, 0.0});
            if (std::abs(d.real()) <= 2 * half && std::abs(d.imag()) <= 2 * half) return true;
        }
    return false;
}

} // namespace

TEST_CASE("renormalize: both-sides letters compose and re-normalize") {
    const BuzzardFixture f;
    const double q = f.p.q();

    // (Id, Id) with letters (center, b): right map becomes z + b
    for (Letter b = 0; b < 9; ++b) {
        const RelativeConfig out = renormalize(f.sys, f.sys, f.rc(AffineMap::identity()), Letter{4}, b);
        CHECK(std::abs(out.right_map.alpha - Complex{1, 0}) < 1e-12);
        CHECK(std::abs(out.right_map.beta - buzzard_point(b)) < 1e-12);
        CHECK(out.left_theta.last() == 4);
        CHECK(out.right_theta.last() == b);
    }

    // identical letters cancel exactly
    const RelativeConfig same = renormalize(f.sys, f.sys, f.rc(AffineMap::identity()), Letter{7}, Letter{7});
    CHECK(std::abs(same.right_map.alpha - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(same.right_map.beta) < 1e-14);

    // left-only letter scales alpha by 3/c1
    const AffineMap before{{0.5, 0.2}, {0.1, -0.3}};
    const RelativeConfig left_only =
        renormalize(f.sys, f.sys, f.rc(before), Letter{2}, std::nullopt);
    CHECK(std::abs(left_only.right_map.alpha) ==
          doctest::Approx(std::abs(before.alpha) / q).epsilon(1e-12));

    CHECK_THROWS_AS(renormalize(f.sys, f.sys, f.rc(before), std::nullopt, std::nullopt),
                    ConfigSpaceError);
}

TEST_CASE("renormalization images nest under the normalizing affine") {
    const BuzzardFixture f;
    auto g = rng(17);
    const ConvexPolygon base = Square{{0, 0}, f.p.c0}.to_polygon();
    for (int trial = 0; trial < 20; ++trial) {
        const AffineMap m{std::polar(uniform(g, 0.7, 1.4), uniform(g, 0, 2 * M_PI)),
                          random_complex(g, 0.3)};
        const Letter a = static_cast<Letter>(uniform(g, 0, 8.999));
        const RelativeConfig out = renormalize(f.sys, f.sys, f.rc(m), a, std::nullopt);
        // new left image corresponds to the child square inside the old one:
        // F^{theta a}(S(0;c0)) subset S(0;c0)
        const AffineMap F = transition_affine(f.sys, f.root, a, 1e-12).map;
        CHECK(polygon_contains(offset_outward(base, 1e-9), transformed(base, F)));
        // and the relative map transforms consistently: F^-1 ∘ m (right void)
        const AffineMap expect = compose(invert(F), m);
        CHECK(std::abs(out.right_map.alpha - expect.alpha) < 1e-12);
        CHECK(std::abs(out.right_map.beta - expect.beta) < 1e-12);
    }
}

TEST_CASE("is_linked: identical, far, and edge-contact configurations") {
    const BuzzardFixture f;
    CHECK(is_linked(f.sys, f.sys, f.rc(AffineMap::identity())));
    CHECK_FALSE(is_linked(f.sys, f.sys, f.rc(AffineMap::translation({10.0, 0.0}))));
    // exact edge contact: squares S(0;c0) and S(c0;c0) share an edge
    const RelativeConfig edge = f.rc(AffineMap::translation({f.p.c0, 0.0}));
    CHECK(is_linked(f.sys, f.sys, edge));
    const ConvexPolygon s = Square{{0, 0}, f.p.c0}.to_polygon();
    CHECK(area(clip(s, transformed(s, edge.right_map))) == doctest::Approx(0.0));
}

TEST_CASE("search: (Id, Id) finds the fixed-point witness at the origin") {
    const BuzzardFixture f;
    for (int depth : {1, 4, 10}) {
        const SearchOutcome out = search_intersection(f.sys, f.sys, f.rc(AffineMap::identity()), depth);
        REQUIRE(out.kind == SearchOutcome::Kind::Witness);
        // 0 is the fixed point of the central branch; the balanced search
        // keeps both images concentric, so the witness is 0 itself
        CHECK(std::abs(out.point) <= 2.0 * f.p.c0 * std::sqrt(2.0) * std::pow(f.p.q(), depth));
        CHECK(out.left_word.size() == static_cast<std::size_t>(depth));
        CHECK(out.right_word.size() == static_cast<std::size_t>(depth));
        for (std::size_t i = 0; i < out.left_word.length(); ++i)
            CHECK(out.left_word.at(i) == 4);
    }
}

TEST_CASE("search: witness lies within the final cylinder scale") {
    const BuzzardFixture f;
    auto g = rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const AffineMap m{std::polar(uniform(g, 0.9, 1.1), uniform(g, -0.2, 0.2)),
                          random_complex(g, 0.1)};
        const int depth = 6;
        const SearchOutcome out = search_intersection(f.sys, f.sys, f.rc(m), depth);
        REQUIRE(out.kind == SearchOutcome::Kind::Witness);
        // witness within 2 max cylinder diameters of both final cylinders
        const double cyl = f.p.c0 * std::sqrt(2.0) * std::pow(f.p.q(), depth);
        const WordMap lw = branch_word(f.sys, out.left_word);
        const Complex left_center = lw.affine(Complex{0, 0}) - buzzard_point(4);
        CHECK(std::abs(out.point - left_center) <= 2.0 * cyl * std::max(1.0, std::abs(m.alpha)));
    }
}

TEST_CASE("search: far translation dies at the root") {
    const BuzzardFixture f;
    const SearchOutcome out =
        search_intersection(f.sys, f.sys, f.rc(AffineMap::translation({10.0, 0.0})), 1);
    CHECK(out.kind == SearchOutcome::Kind::Exhausted);
    CHECK(out.certified_empty);
    CHECK(out.deepest_linked_size == 0);
    CHECK(out.nodes_visited == 1);
}

TEST_CASE("search: constructed gap translation certified empty at depth 3") {
    const BuzzardFixture f;
    const double beta = gap_translation(f.p);

    // oracle: linked pairs exist at sizes 1 and 2, none at size 3
    CHECK(any_linked_pair_brute(f.p, beta, 0));
    CHECK(any_linked_pair_brute(f.p, beta, 1));
    CHECK(any_linked_pair_brute(f.p, beta, 2));
    CHECK_FALSE(any_linked_pair_brute(f.p, beta, 3));

    const SearchOutcome out =
        search_intersection(f.sys, f.sys, f.rc(AffineMap::translation({beta, 0.0})), 3);
    CHECK(out.kind == SearchOutcome::Kind::Exhausted);
    CHECK(out.certified_empty);
    CHECK(out.deepest_linked_size == 2);
}

TEST_CASE("search monotone soundness: certified emptiness matches brute enumeration") {
    const BuzzardFixture f;
    // translations bracketing the gap: inside it -> empty, below it -> witness
    const double q = f.p.q();
    const double mstar = buzzard_mstar(f.p);
    const double egap = f.p.c0 / 2.0 - mstar;
    const double inside_gap = 2.0 * mstar + egap * (q * q + q * q * q);
    const double below_gap = 2.0 * mstar - egap; // strictly less than 2 m*

    const SearchOutcome empty =
        search_intersection(f.sys, f.sys, f.rc(AffineMap::translation({inside_gap, 0.0})), 3);
    CHECK(empty.certified_empty == !any_linked_pair_brute(f.p, inside_gap, 3));

    const SearchOutcome hit =
        search_intersection(f.sys, f.sys, f.rc(AffineMap::translation({below_gap, 0.0})), 3);
    CHECK(hit.kind == SearchOutcome::Kind::Witness);
    CHECK(any_linked_pair_brute(f.p, below_gap, 3));
}

TEST_CASE("search determinism: identical inputs give identical outputs") {
    const BuzzardFixture f;
    const AffineMap m{{1.02, 0.03}, {0.2, -0.1}};
    const SearchOutcome a = search_intersection(f.sys, f.sys, f.rc(m), 5);
    const SearchOutcome b = search_intersection(f.sys, f.sys, f.rc(m), 5);
    CHECK(a.kind == b.kind);
    CHECK(a.point == b.point);
    CHECK(a.left_word == b.left_word);
    CHECK(a.right_word == b.right_word);
    CHECK(a.nodes_visited == b.nodes_visited);
}

TEST_CASE("search keeps image diameters balanced") {
    // with |alpha| = 1 both sides contract equally, so word sizes never
    // differ by more than one along the found path
    const BuzzardFixture f;
    const SearchOutcome out = search_intersection(f.sys, f.sys, f.rc(AffineMap::identity()), 8);
    REQUIRE(out.kind == SearchOutcome::Kind::Witness);
    CHECK(out.left_word.size() == out.right_word.size());
}

TEST_CASE("(Id, Id) intersects for every max_depth when c1 is near its supremum") {
    const BuzzardFixture f; // preset c1 = 3c0/(2+c0) (1 - 1e-9)
    for (int depth = 1; depth <= 12; ++depth) {
        const SearchOutcome out =
            search_intersection(f.sys, f.sys, f.rc(AffineMap::identity()), depth);
        CHECK(out.kind == SearchOutcome::Kind::Witness);
    }
}

TEST_CASE("make_relative quotients out the common affine coordinate change") {
    const BuzzardFixture f;
    const AffineLimitConfig left{f.root, AffineMap{{2.0, 1.0}, {0.5, -0.25}}};
    const AffineLimitConfig right{f.root, AffineMap{{-0.5, 3.0}, {1.0, 0.75}}};
    const RelativeConfig rc = make_relative(left, right);
    // acting on both by any affine B leaves the relative map unchanged
    const AffineMap B{{0.3, -1.2}, {5.0, 2.0}};
    const RelativeConfig rc2 =
        make_relative({f.root, compose(B, left.map)}, {f.root, compose(B, right.map)});
    CHECK(std::abs(rc.right_map.alpha - rc2.right_map.alpha) < 1e-12);
    CHECK(std::abs(rc.right_map.beta - rc2.right_map.beta) < 1e-12);
    // and the left representative is the identity by construction
    const RelativeConfig self = make_relative(left, left);
    CHECK(std::abs(self.right_map.alpha - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(self.right_map.beta) < 1e-14);
}
