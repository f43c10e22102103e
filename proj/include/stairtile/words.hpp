#pragma once

#include "stairtile/error.hpp"
#include "stairtile/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stairtile {

// Finite word over the 1-based alphabet {1, ..., k}; letter j selects rule j of a
// mixed substitution system.
struct Word {
    std::vector<uint8_t> letters;

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    uint8_t at(size_t i) const { return letters.at(i); } // 0-based access to the i+1st letter
    friend bool operator==(const Word&, const Word&) = default;

    static Word from_string(const std::string& digits); // "112" -> (1,1,2)
    std::string to_string() const;
    Word prefix(size_t m) const;
};

Word reverse(const Word& w);

Word constant_word(uint8_t letter, size_t m);

// Over the two-letter alphabet {1, 2}: number of 1s minus number of 2s.
Int digit_sum(const Word& w);

// Greedy two-letter word tracking a target digit-sum slope gamma in [-1, 1]:
// letter m+1 is 1 exactly when (m+1)*gamma - digit_sum(prefix) >= 0 (ties choose 1).
// Guarantees |gamma - digit_sum(w(m))/m| <= 1/m for every m >= 1.
class GammaWord {
  public:
    explicit GammaWord(const Rat& gamma); // Error(GammaOutOfRange) outside [-1, 1]

    const Rat& gamma() const { return gamma_; }
    // Extends lazily; prefixes are stable under extension.
    Word prefix(size_t m);
    Int digit_sum_at(size_t m); // digit sum of the length-m prefix

  private:
    void extend_to(size_t m);

    Rat gamma_;
    std::vector<uint8_t> letters_;
    std::vector<Int> sums_; // sums_[i] = digit sum of the length-(i+1) prefix
};

Word gamma_word(const Rat& gamma, size_t m);

// Length-m prefix of the periodic word (1^p 2^(q-p)) repeated; requires 0 <= p <= q, q >= 1.
// Its digit-sum slope converges to (2p - q)/q with error at most 2q/m, exactly 0 when q | m.
Word periodic_word(int64_t p, int64_t q, size_t m);

Rat periodic_slope(int64_t p, int64_t q); // (2p - q)/q

} // namespace stairtile
