#include "stairtile/words.hpp"

#include <cctype>

namespace stairtile {

Word Word::from_string(const std::string& digits) {
    Word w;
    w.letters.reserve(digits.size());
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
            fail(ErrorKind::BadParameters, "word must consist of digits 1-9, got '" + digits + "'");
        w.letters.push_back(static_cast<uint8_t>(c - '0'));
    }
    return w;
}

std::string Word::to_string() const {
    std::string s;
    s.reserve(letters.size());
    for (uint8_t l : letters) s.push_back(static_cast<char>('0' + l));
    return s;
}

Word Word::prefix(size_t m) const {
    if (m > letters.size()) fail(ErrorKind::BadParameters, "prefix longer than word");
    Word w;
    w.letters.assign(letters.begin(), letters.begin() + static_cast<ptrdiff_t>(m));
    return w;
}

Word reverse(const Word& w) {
    Word r = w;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

Word constant_word(uint8_t letter, size_t m) {
    Word w;
    w.letters.assign(m, letter);
    return w;
}

Int digit_sum(const Word& w) {
    Int d = 0;
    for (uint8_t l : w.letters) {
        if (l == 1)
            ++d;
        else if (l == 2)
            --d;
        else
            fail(ErrorKind::BadParameters, "digit_sum needs a word over {1,2}");
    }
    return d;
}

GammaWord::GammaWord(const Rat& gamma) : gamma_(gamma) {
    if (gamma < -1 || gamma > 1)
        fail(ErrorKind::GammaOutOfRange, "slope must lie in [-1, 1], got " + rat_to_string(gamma));
}

void GammaWord::extend_to(size_t m) {
    const Int& p = numerator(gamma_);
    const Int& q = denominator(gamma_); // q >= 1
    while (letters_.size() < m) {
        size_t next = letters_.size() + 1;
        Int d = letters_.empty() ? Int(0) : sums_.back();
        // Sign of (next * gamma - d), cleared of the positive denominator q.
        Int x = Int(static_cast<int64_t>(next)) * p - d * q;
        bool up = x >= 0;
        letters_.push_back(up ? 1 : 2);
        sums_.push_back(d + (up ? 1 : -1));
    }
}

Word GammaWord::prefix(size_t m) {
    extend_to(m);
    Word w;
    w.letters.assign(letters_.begin(), letters_.begin() + static_cast<ptrdiff_t>(m));
    return w;
}

Int GammaWord::digit_sum_at(size_t m) {
    if (m == 0) return 0;
    extend_to(m);
    return sums_[m - 1];
}

Word gamma_word(const Rat& gamma, size_t m) { return GammaWord(gamma).prefix(m); }

Word periodic_word(int64_t p, int64_t q, size_t m) {
    if (q < 1 || p < 0 || p > q)
        fail(ErrorKind::BadParameters, "periodic word needs 0 <= p <= q and q >= 1");
    Word w;
    w.letters.reserve(m);
    for (size_t i = 0; i < m; ++i)
        w.letters.push_back(static_cast<int64_t>(i % static_cast<size_t>(q)) < p ? 1 : 2);
    return w;
}

Rat periodic_slope(int64_t p, int64_t q) {
    if (q < 1 || p < 0 || p > q)
        fail(ErrorKind::BadParameters, "periodic slope needs 0 <= p <= q and q >= 1");
    return Rat(2 * p - q, q);
}

} // namespace stairtile
