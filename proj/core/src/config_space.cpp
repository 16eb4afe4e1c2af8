#include "cantorlim/config_space.hpp"

#include <algorithm>
#include <cmath>

namespace cantorlim {

TransitionProvider default_transition_provider(double tol) {
    return [tol](const CantorSystem& sys, const NegSequence& theta, Letter a) {
        return transition_affine(sys, theta, a, tol).map;
    };
}

RelativeConfig make_relative(const AffineLimitConfig& left, const AffineLimitConfig& right) {
    return {left.theta, right.theta, compose(invert(left.map), right.map)};
}

RelativeConfig renormalize(const CantorSystem& left_sys, const CantorSystem& right_sys,
                           const RelativeConfig& rc, std::optional<Letter> left_letter,
                           std::optional<Letter> right_letter, const TransitionProvider& provider) {
    if (!left_letter && !right_letter)
        throw ConfigSpaceError("renormalize requires at least one letter");

    RelativeConfig out = rc;
    AffineMap f_left = AffineMap::identity();
    AffineMap f_right = AffineMap::identity();
    if (left_letter) {
        f_left = provider(left_sys, rc.left_theta, *left_letter);
        out.left_theta = rc.left_theta.appended(*left_letter);
    }
    if (right_letter) {
        f_right = provider(right_sys, rc.right_theta, *right_letter);
        out.right_theta = rc.right_theta.appended(*right_letter);
    }
    out.right_map = compose(compose(invert(f_left), rc.right_map), f_right);
    return out;
}

namespace {

ConvexPolygon limit_image(const CantorSystem& sys, const NegSequence& theta, const AffineMap& post) {
    const NormalizedIterate k = limit_geometry(sys, theta, 1e-9);
    return transformed(k.image(sys), post);
}

struct SearchState {
    NegSequence left_theta, right_theta;
    AffineMap left_abs, right_abs; // original-frame configuration maps
    FiniteWord left_word, right_word;
};

struct SearchContext {
    const CantorSystem* left_sys = nullptr;
    const CantorSystem* right_sys = nullptr;
    const TransitionProvider* provider = nullptr;
    std::size_t max_size = 1;
    SearchOutcome out;
};

// depth-first; true once a witness is found
bool search_node(SearchContext& ctx, const SearchState& st) {
    ++ctx.out.nodes_visited;
    const ConvexPolygon left_img = limit_image(*ctx.left_sys, st.left_theta, st.left_abs);
    const ConvexPolygon right_img = limit_image(*ctx.right_sys, st.right_theta, st.right_abs);
    if (!polygons_touch(left_img, right_img)) return false;

    const std::size_t lsize = st.left_word.size();
    const std::size_t rsize = st.right_word.size();
    const std::size_t balanced = std::min(lsize, rsize);
    if (balanced > ctx.out.deepest_linked_size ||
        (ctx.out.deepest_left.empty() && ctx.out.deepest_right.empty())) {
        ctx.out.deepest_linked_size = balanced;
        ctx.out.deepest_left = st.left_word;
        ctx.out.deepest_right = st.right_word;
    }

    if (lsize >= ctx.max_size && rsize >= ctx.max_size) {
        ctx.out.kind = SearchOutcome::Kind::Witness;
        const ConvexPolygon inter = clip(left_img, right_img);
        ctx.out.point = inter.empty() ? centroid(left_img) : centroid(inter);
        ctx.out.left_word = st.left_word;
        ctx.out.right_word = st.right_word;
        return true;
    }

    // Balance rule: renormalize the side with the larger image; ties go left.
    // A side already at full depth yields to the other.
    bool go_left;
    if (lsize >= ctx.max_size) go_left = false;
    else if (rsize >= ctx.max_size) go_left = true;
    else go_left = diameter(left_img) >= diameter(right_img) - 1e-15;

    const CantorSystem& sys = go_left ? *ctx.left_sys : *ctx.right_sys;
    const NegSequence& theta = go_left ? st.left_theta : st.right_theta;
    const Complex other_center = centroid(go_left ? right_img : left_img);

    struct Candidate {
        Letter letter;
        SearchState next;
        double center_dist;
    };
    std::vector<Candidate> candidates;
    for (Letter a : sys.transitions().successors(theta.last())) {
        SearchState next = st;
        const AffineMap f = (*ctx.provider)(sys, theta, a);
        NegSequence ext = theta.appended(a);
        if (go_left) {
            next.left_theta = ext;
            next.left_abs = compose(st.left_abs, f);
            next.left_word = st.left_word.appended(a);
        } else {
            next.right_theta = ext;
            next.right_abs = compose(st.right_abs, f);
            next.right_word = st.right_word.appended(a);
        }
        const ConvexPolygon img =
            limit_image(sys, ext, go_left ? next.left_abs : next.right_abs);
        candidates.push_back({a, std::move(next), std::abs(centroid(img) - other_center)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.center_dist != y.center_dist) return x.center_dist < y.center_dist;
        return x.letter < y.letter;
    });
    for (auto& c : candidates)
        if (search_node(ctx, c.next)) return true;
    return false;
}

} // namespace

bool is_linked(const CantorSystem& left_sys, const CantorSystem& right_sys, const RelativeConfig& rc,
               double tol) {
    const ConvexPolygon left_img = limit_image(left_sys, rc.left_theta, AffineMap::identity());
    const ConvexPolygon right_img = limit_image(right_sys, rc.right_theta, rc.right_map);
    return polygons_touch(left_img, right_img, tol);
}

SearchOutcome search_intersection(const CantorSystem& left_sys, const CantorSystem& right_sys,
                                  const RelativeConfig& rc, int max_depth,
                                  const TransitionProvider& provider) {
    if (max_depth < 1) throw ConfigSpaceError("max_depth must be at least 1");

    SearchContext ctx;
    ctx.left_sys = &left_sys;
    ctx.right_sys = &right_sys;
    ctx.provider = &provider;
    ctx.max_size = static_cast<std::size_t>(max_depth);

    SearchState root;
    root.left_theta = rc.left_theta;
    root.right_theta = rc.right_theta;
    root.left_abs = AffineMap::identity();
    root.right_abs = rc.right_map;
    root.left_word = FiniteWord({rc.left_theta.last()});
    root.right_word = FiniteWord({rc.right_theta.last()});

    const bool found = search_node(ctx, root);
    if (!found) {
        ctx.out.kind = SearchOutcome::Kind::Exhausted;
        ctx.out.certified_empty = true;
    }
    return ctx.out;
}

} // namespace cantorlim
