#include "cantorlim/horseshoe.hpp"

#include <cmath>
#include <set>

namespace cantorlim {

HorseshoeMap::HorseshoeMap(BuzzardParams params) : params_(std::move(params)) {
    if (!(params_.delta > 0.0 && params_.delta < 1.0) || std::abs(params_.c0 - (1.0 - params_.delta)) > 1e-15)
        throw HorseshoeError("invalid gap parameters");
    if (!(params_.c1 > params_.c0 && params_.c1 < 3.0 * params_.c0 / (2.0 + params_.c0)))
        throw HorseshoeError("c1 outside the admissible covering range");
}

std::optional<Letter> HorseshoeMap::piece_letter(Complex v) const {
    const long gx = std::lround(v.real());
    const long gy = std::lround(v.imag());
    if (gx < -1 || gx > 1 || gy < -1 || gy > 1) return std::nullopt;
    const Letter k = static_cast<Letter>((gx + 1) + 3 * (gy + 1));
    const Complex c = buzzard_point(k);
    const double h = params_.c0 / 2.0;
    if (std::abs(v.real() - c.real()) <= h && std::abs(v.imag() - c.imag()) <= h) return k;
    return std::nullopt;
}

std::optional<std::pair<Letter, Letter>> HorseshoeMap::component_of(const C2Point& p) const {
    const auto a = piece_letter(p.z);
    const auto b = piece_letter(p.w);
    if (!a || !b) return std::nullopt;
    return std::make_pair(*a, *b);
}

std::optional<C2Point> HorseshoeMap::apply(const C2Point& p) const {
    const auto comp = component_of(p);
    if (!comp) return std::nullopt;
    const Complex b = buzzard_point(comp->second);
    const double q = params_.q();
    return C2Point{q * p.z + b, (p.w - b) / q};
}

std::optional<C2Point> HorseshoeMap::apply_inverse(const C2Point& p) const {
    // F maps the component (a,b) onto a box whose z-side lies in S(b;c0), so
    // the pre-image's w-letter is the current z-letter.
    const auto b = piece_letter(p.z);
    if (!b) return std::nullopt;
    const Complex bp = buzzard_point(*b);
    const double q = params_.q();
    const C2Point pre{(p.z - bp) / q, q * p.w + bp};
    if (!piece_letter(pre.z)) return std::nullopt;
    return pre;
}

Square buzzard_cylinder_square(const BuzzardParams& p, const FiniteWord& word) {
    if (word.empty()) throw HorseshoeError("cylinder of empty word");
    const double q = p.q();
    Complex c = buzzard_point(word.last());
    for (std::size_t i = word.length() - 1; i-- > 0;) c = q * c + buzzard_point(word.at(i));
    return Square{c, std::pow(q, static_cast<double>(word.size())) * p.c0};
}

Square lambda_box_z_region(const HorseshoeMap& map, const LambdaBox& box) {
    return buzzard_cylinder_square(map.params(), box.z_word);
}

Square lambda_box_w_region(const HorseshoeMap& map, const LambdaBox& box) {
    return buzzard_cylinder_square(map.params(), box.w_word);
}

namespace {

// all words of the given letter count over the full 9-letter shift
void enumerate_words(std::size_t letters, const std::function<void(const FiniteWord&)>& fn) {
    std::vector<Letter> w(letters, 0);
    while (true) {
        fn(FiniteWord(w));
        std::size_t i = 0;
        while (i < letters && w[i] == 8) w[i++] = 0;
        if (i == letters) break;
        ++w[i];
    }
}

} // namespace

std::vector<LambdaBox> approximate_lambda(const HorseshoeMap& map, int depth) {
    (void)map;
    if (depth < 0) throw HorseshoeError("depth must be non-negative");
    if (depth > 2) throw HorseshoeError("depth > 2 box covers are not materialized (9^(2d+2) boxes)");
    const std::size_t letters = static_cast<std::size_t>(depth) + 1;
    std::vector<LambdaBox> boxes;
    boxes.reserve(static_cast<std::size_t>(std::pow(9.0, 2.0 * depth + 2.0)));
    enumerate_words(letters, [&](const FiniteWord& zw) {
        enumerate_words(letters, [&](const FiniteWord& ww) { boxes.push_back({zw, ww}); });
    });
    return boxes;
}

std::size_t lambda_slice_box_count(const HorseshoeMap& map, int depth) {
    const auto boxes = approximate_lambda(map, depth);
    std::set<std::pair<Letter, std::vector<Letter>>> seen;
    for (const auto& b : boxes) seen.insert({b.z_word.first(), b.w_word.symbols()});
    return seen.size();
}

std::vector<Square> unstable_slice_cantor(const HorseshoeMap& map, int depth) {
    if (depth < 0) throw HorseshoeError("depth must be non-negative");
    if (depth > 5) throw HorseshoeError("slice depth capped at 5 (9^(d+1) squares)");
    // boxes meeting {z = 0} have the all-centers z-word (0 is interior to the
    // central cylinder only); their w-words range over all depth-d words
    std::vector<Square> squares;
    squares.reserve(static_cast<std::size_t>(std::pow(9.0, depth + 1.0)));
    enumerate_words(static_cast<std::size_t>(depth) + 1, [&](const FiniteWord& w) {
        squares.push_back(buzzard_cylinder_square(map.params(), w));
    });
    return squares;
}

} // namespace cantorlim
