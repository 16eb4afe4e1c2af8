#include "cantorlim/symbolic.hpp"

#include <algorithm>
#include <set>

namespace cantorlim {

Alphabet::Alphabet(std::size_t n) : size_(n) {
    if (n == 0) throw SymbolicError("alphabet must be non-empty");
    if (n > 256) throw SymbolicError("alphabet too large for Letter index");
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
}

Alphabet::Alphabet(std::vector<std::string> labels) : size_(labels.size()), labels_(std::move(labels)) {
    if (size_ == 0) throw SymbolicError("alphabet must be non-empty");
    if (size_ > 256) throw SymbolicError("alphabet too large for Letter index");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw SymbolicError("alphabet labels must be unique");
}

const std::string& Alphabet::label(Letter a) const {
    if (!contains(a)) throw SymbolicError("letter out of range");
    return labels_[a];
}

TransitionSet::TransitionSet(std::size_t n, const std::vector<std::pair<Letter, Letter>>& pairs)
    : n_(n), allowed_(n * n, false) {
    for (auto [from, to] : pairs) {
        if (from >= n || to >= n) throw SymbolicError("transition pair letter out of range");
        allowed_[static_cast<std::size_t>(from) * n + to] = true;
    }
}

TransitionSet TransitionSet::full(std::size_t n) {
    return TransitionSet(std::vector<bool>(n * n, true), n);
}

bool TransitionSet::allows(Letter from, Letter to) const {
    if (from >= n_ || to >= n_) return false;
    return allowed_[static_cast<std::size_t>(from) * n_ + to];
}

std::vector<Letter> TransitionSet::successors(Letter from) const {
    std::vector<Letter> out;
    for (std::size_t b = 0; b < n_; ++b)
        if (allows(from, static_cast<Letter>(b))) out.push_back(static_cast<Letter>(b));
    return out;
}

std::size_t FiniteWord::size() const {
    if (symbols_.empty()) throw SymbolicError("size of empty word is undefined");
    return symbols_.size() - 1;
}

FiniteWord FiniteWord::appended(Letter a) const {
    std::vector<Letter> s = symbols_;
    s.push_back(a);
    return FiniteWord(std::move(s));
}

NegSequence::NegSequence(std::vector<Letter> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw SymbolicError("negative sequence truncation must be non-empty");
}

Letter NegSequence::at_offset(std::size_t i) const {
    if (i >= symbols_.size()) throw SymbolicError("offset deeper than truncation");
    return symbols_[symbols_.size() - 1 - i];
}

NegSequence NegSequence::appended(Letter a) const {
    std::vector<Letter> s = symbols_;
    s.push_back(a);
    return NegSequence(std::move(s));
}

FiniteWord NegSequence::tail_word(std::size_t n) const {
    if (n >= symbols_.size()) throw SymbolicError("tail word deeper than truncation");
    return FiniteWord(std::vector<Letter>(symbols_.end() - static_cast<std::ptrdiff_t>(n) - 1, symbols_.end()));
}

bool is_admissible(const FiniteWord& w, const TransitionSet& t) {
    const auto& s = w.symbols();
    if (s.empty()) return false;
    if (s.front() >= t.letter_count()) return false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!t.allows(s[i], s[i + 1])) return false;
    return true;
}

bool is_admissible(const NegSequence& s, const TransitionSet& t) {
    return is_admissible(FiniteWord(s.symbols()), t);
}

namespace {

// boolean matrix product over the transition relation
std::vector<bool> bool_mul(const std::vector<bool>& a, const std::vector<bool>& b, std::size_t n) {
    std::vector<bool> out(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[k * n + j]) out[i * n + j] = true;
        }
    return out;
}

} // namespace

bool is_mixing(const Alphabet& alphabet, const TransitionSet& transitions) {
    const std::size_t n = alphabet.size();
    if (transitions.letter_count() != n) throw SymbolicError("alphabet/transition size mismatch");
    std::vector<bool> base(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            base[i * n + j] = transitions.allows(static_cast<Letter>(i), static_cast<Letter>(j));

    std::vector<bool> power = base;
    const std::size_t max_power = n * n;
    for (std::size_t p = 1; p <= max_power; ++p) {
        if (std::all_of(power.begin(), power.end(), [](bool v) { return v; })) return true;
        power = bool_mul(power, base, n);
    }
    return std::all_of(power.begin(), power.end(), [](bool v) { return v; });
}

FiniteWord concat(const FiniteWord& a, const FiniteWord& b) {
    if (a.empty() || b.empty()) throw SymbolicError("concat of empty word");
    if (a.last() != b.first()) throw SymbolicError("concat junction letters differ");
    std::vector<Letter> s = a.symbols();
    s.insert(s.end(), b.symbols().begin() + 1, b.symbols().end());
    return FiniteWord(std::move(s));
}

WedgeResult wedge(const NegSequence& t1, const NegSequence& t2) {
    if (t1.last() != t2.last()) throw SymbolicError("wedge requires equal final letters");
    const std::size_t overlap = std::min(t1.length(), t2.length());
    std::size_t j = 0;
    while (j < overlap && t1.at_offset(j) == t2.at_offset(j)) ++j;
    // j = number of agreeing trailing letters (>= 1 here)
    WedgeResult r;
    std::vector<Letter> s(j);
    for (std::size_t i = 0; i < j; ++i) s[i] = t1.at_offset(j - 1 - i);
    r.word = FiniteWord(std::move(s));
    r.exhausted = (j == overlap);
    return r;
}

} // namespace cantorlim
