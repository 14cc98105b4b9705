#ifndef SCALEFN_WORD_HPP
#define SCALEFN_WORD_HPP

#include <string>
#include <vector>

namespace scalefn {

// One partition symbol: a branch index together with its orientation sign.
// The sign is never free; it always equals the orientation of the branch,
// which is enforced whenever a word meets a map.
struct Symbol {
    int branch = 0;
    int sign = +1;

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.branch == b.branch && a.sign == b.sign;
    }
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

// A finite symbol sequence, read left to right.
using Word = std::vector<Symbol>;

// +1 if the number of orientation-reversing symbols is even, -1 otherwise.
int sign_of_word(const Word& w);

Word concat(const Word& a, const Word& b);

// "+0,-1,+2" style literals.
std::string format_symbol(const Symbol& s);
std::string format_word(const Word& w);
Word parse_word(const std::string& text); // empty string -> empty word

} // namespace scalefn

#endif
