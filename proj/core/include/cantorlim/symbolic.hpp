#ifndef CANTORLIM_SYMBOLIC_HPP
#define CANTORLIM_SYMBOLIC_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantorlim {

using Letter = std::uint8_t;

/// Finite symbol set of a subshift. Letters are dense indices 0..size()-1;
/// optional labels are carried for diagnostics only.
class Alphabet {
public:
    explicit Alphabet(std::size_t n);
    explicit Alphabet(std::vector<std::string> labels);

    std::size_t size() const { return size_; }
    const std::string& label(Letter a) const;
    bool contains(Letter a) const { return a < size_; }

private:
    std::size_t size_;
    std::vector<std::string> labels_;
};

/// Set of admissible ordered letter pairs (the matrix B of the subshift).
class TransitionSet {
public:
    TransitionSet(std::size_t n_letters, const std::vector<std::pair<Letter, Letter>>& pairs);
    static TransitionSet full(std::size_t n_letters);

    bool allows(Letter from, Letter to) const;
    std::size_t letter_count() const { return n_; }
    std::vector<Letter> successors(Letter from) const;

private:
    TransitionSet(std::vector<bool> m, std::size_t n) : n_(n), allowed_(std::move(m)) {}
    std::size_t n_;
    std::vector<bool> allowed_; // row-major n x n
};

/// Admissible finite word (a_0,...,a_n). Per the size convention used
/// throughout, size() == letter count minus one.
class FiniteWord {
public:
    FiniteWord() = default;
    explicit FiniteWord(std::vector<Letter> symbols) : symbols_(std::move(symbols)) {}

    const std::vector<Letter>& symbols() const { return symbols_; }
    std::size_t length() const { return symbols_.size(); }
    std::size_t size() const; // length-1; throws on empty word
    bool empty() const { return symbols_.empty(); }
    Letter first() const { return symbols_.front(); }
    Letter last() const { return symbols_.back(); }
    Letter at(std::size_t i) const { return symbols_.at(i); }

    FiniteWord appended(Letter a) const;

    bool operator==(const FiniteWord& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Letter> symbols_;
};

/// Truncated negative sequence: the last m+1 entries (theta_{-m},...,theta_0)
/// of some theta in Sigma^-. Stored oldest-first, so back() == theta_0.
class NegSequence {
public:
    NegSequence() = default;
    explicit NegSequence(std::vector<Letter> symbols);

    std::size_t truncation_depth() const { return symbols_.size() - 1; }
    std::size_t length() const { return symbols_.size(); }
    Letter last() const { return symbols_.back(); } // theta_0
    Letter at_offset(std::size_t i) const;          // theta_{-i}
    const std::vector<Letter>& symbols() const { return symbols_; }

    /// theta -> theta·a (appends one future letter; a becomes the new theta_0).
    NegSequence appended(Letter a) const;

    /// The word (theta_{-n},...,theta_0) for n <= truncation_depth().
    FiniteWord tail_word(std::size_t n) const;

    bool operator==(const NegSequence& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Letter> symbols_;
};

bool is_admissible(const FiniteWord& w, const TransitionSet& t);
bool is_admissible(const NegSequence& s, const TransitionSet& t);

/// True iff some power N <= n^2 of the transition relation connects every
/// ordered letter pair (topological mixing of the induced subshift).
bool is_mixing(const Alphabet& alphabet, const TransitionSet& transitions);

/// Splice ab = (a_0,...,a_n,b_1,...,b_m); requires a.last() == b.first().
FiniteWord concat(const FiniteWord& a, const FiniteWord& b);

struct WedgeResult {
    FiniteWord word;
    /// Set when the two truncations agree over their whole common overlap, so
    /// the true wedge may extend beyond what the truncations can show.
    bool exhausted = false;
};

/// Longest common suffix of two truncated negative sequences.
/// Requires equal final letters; throws if the final letters differ.
WedgeResult wedge(const NegSequence& t1, const NegSequence& t2);

class SymbolicError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
