#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace contract {

// Free-group words: letter +(k+1) is generator a<k>, -(k+1) its inverse.
using Word = std::vector<int>;

Word reduce(const Word& w);
Word invert(const Word& w);
Word concat(const Word& a, const Word& b);
Word concat(std::initializer_list<Word> parts);
// Cyclically reduced word rotated to its lexicographically least form.
Word cyclic_canonical(const Word& w);

std::string format_word(const Word& w);
Word parse_word(std::string_view text);

struct Term {
    Word conjugator;
    int curve = 0;
    int exponent = 1;  // +1 or -1

    friend bool operator==(const Term&, const Term&) = default;
};

// lhs = product over terms of conjugator * curves[curve]^exponent * conjugator^-1
struct ConjugationFormula {
    Word lhs;
    std::vector<Word> curves;
    std::vector<Term> terms;

    Word expand() const;
    bool holds() const;

    friend bool operator==(const ConjugationFormula&, const ConjugationFormula&) = default;
};

// Throws contract::Error("formula-mismatch") unless the identity holds.
ConjugationFormula checked(ConjugationFormula f);

std::string serialize_formula(const ConjugationFormula& f);
// Reads the block written by serialize_formula starting at `lines[pos]`; advances pos.
ConjugationFormula parse_formula(const std::vector<std::string>& lines, std::size_t& pos);

}  // namespace contract
