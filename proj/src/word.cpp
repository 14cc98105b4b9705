#include "scalefn/word.hpp"

#include <cstdlib>

#include "scalefn/errors.hpp"

namespace scalefn {

int sign_of_word(const Word& w) {
    int s = +1;
    for (const Symbol& sym : w)
        if (sym.sign < 0) s = -s;
    return s;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string format_symbol(const Symbol& s) {
    return (s.sign >= 0 ? "+" : "-") + std::to_string(s.branch);
}

std::string format_word(const Word& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += format_symbol(w[i]);
    }
    return out;
}

Word parse_word(const std::string& text) {
    Word out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(pos, end - pos);
        // trim spaces
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok.empty()) throw ParseError("empty symbol in word literal");
        int sign = +1;
        size_t digits = 0;
        if (tok[0] == '+' || tok[0] == '-') {
            sign = tok[0] == '+' ? +1 : -1;
            digits = 1;
        }
        if (digits >= tok.size()) throw ParseError("symbol '" + tok + "' has no branch index");
        char* endp = nullptr;
        long idx = std::strtol(tok.c_str() + digits, &endp, 10);
        if (endp == nullptr || *endp != '\0' || idx < 0)
            throw ParseError("bad symbol literal '" + tok + "'");
        out.push_back(Symbol{static_cast<int>(idx), sign});
        pos = end + 1;
        if (end == text.size()) break;
    }
    return out;
}

} // namespace scalefn
