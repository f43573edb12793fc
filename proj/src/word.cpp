#include "contract/word.hpp"

#include "contract/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace contract {

Word reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (x == 0) throw Error("bad-word", "zero letter");
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word invert(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word concat(std::initializer_list<Word> parts) {
    Word out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Word cyclic_canonical(const Word& w) {
    Word r = reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    Word core(r.begin() + lo, r.begin() + hi);
    Word best = core;
    for (std::size_t k = 1; k < core.size(); ++k) {
        Word rot(core.begin() + k, core.end());
        rot.insert(rot.end(), core.begin(), core.begin() + k);
        if (rot < best) best = rot;
    }
    return best;
}

std::string format_word(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += 'a';
        out += std::to_string(std::abs(w[i]) - 1);
        if (w[i] < 0) out += "^-1";
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    if (text == "e") return w;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(' ', i);
        if (j == std::string_view::npos) j = text.size();
        std::string_view tok = text.substr(i, j - i);
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok.remove_suffix(3);
        }
        if (tok.size() < 2 || tok[0] != 'a' || (tok.size() > 2 && tok[1] == '0'))
            throw Error("bad-word", "malformed letter '" + std::string(tok) + "'");
        int k = 0;
        auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || k < 0)
            throw Error("bad-word", "malformed letter '" + std::string(tok) + "'");
        w.push_back(inv ? -(k + 1) : k + 1);
        if (j == text.size()) break;
        i = j + 1;
    }
    return w;
}

Word ConjugationFormula::expand() const {
    Word out;
    for (const Term& t : terms) {
        if (t.curve < 0 || t.curve >= static_cast<int>(curves.size()))
            throw Error("bad-formula", "term references an unknown curve");
        out.insert(out.end(), t.conjugator.begin(), t.conjugator.end());
        Word body = t.exponent > 0 ? curves[t.curve] : invert(curves[t.curve]);
        out.insert(out.end(), body.begin(), body.end());
        Word back = invert(t.conjugator);
        out.insert(out.end(), back.begin(), back.end());
        out = reduce(out);
    }
    return out;
}

bool ConjugationFormula::holds() const {
    for (const Term& t : terms)
        if (t.exponent != 1 && t.exponent != -1) return false;
    return expand() == reduce(lhs);
}

ConjugationFormula checked(ConjugationFormula f) {
    if (!f.holds()) throw Error("formula-mismatch", "conjugation identity does not free-reduce");
    return f;
}

std::string serialize_formula(const ConjugationFormula& f) {
    std::ostringstream out;
    out << "lhs " << format_word(f.lhs) << "\n";
    out << "curves " << f.curves.size() << "\n";
    for (std::size_t i = 0; i < f.curves.size(); ++i) out << "curve " << i << " " << format_word(f.curves[i]) << "\n";
    out << "terms " << f.terms.size() << "\n";
    for (const Term& t : f.terms)
        out << "term (" << format_word(t.conjugator) << ") " << t.curve << " " << (t.exponent > 0 ? "+1" : "-1")
            << "\n";
    return out.str();
}

namespace {

const std::string& take(const std::vector<std::string>& lines, std::size_t& pos) {
    if (pos >= lines.size()) throw Error("bad-formula", "formula block truncated");
    return lines[pos++];
}

std::string_view after(const std::string& line, std::string_view keyword) {
    if (line.size() <= keyword.size() || line.compare(0, keyword.size(), keyword) != 0 ||
        line[keyword.size()] != ' ')
        throw Error("bad-formula", "expected '" + std::string(keyword) + "' line");
    return std::string_view(line).substr(keyword.size() + 1);
}

std::size_t parse_count(std::string_view s) {
    std::size_t n = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), n);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || (s.size() > 1 && s[0] == '0'))
        throw Error("bad-formula", "malformed count");
    return n;
}

}  // namespace

ConjugationFormula parse_formula(const std::vector<std::string>& lines, std::size_t& pos) {
    ConjugationFormula f;
    f.lhs = parse_word(after(take(lines, pos), "lhs"));
    std::size_t nc = parse_count(after(take(lines, pos), "curves"));
    for (std::size_t i = 0; i < nc; ++i) {
        std::string_view rest = after(take(lines, pos), "curve");
        std::string idx = std::to_string(i) + " ";
        if (rest.substr(0, idx.size()) != idx) throw Error("bad-formula", "curve lines out of order");
        f.curves.push_back(parse_word(rest.substr(idx.size())));
    }
    std::size_t nt = parse_count(after(take(lines, pos), "terms"));
    for (std::size_t i = 0; i < nt; ++i) {
        std::string_view rest = after(take(lines, pos), "term");
        auto close = rest.find(") ");
        if (rest.empty() || rest[0] != '(' || close == std::string_view::npos)
            throw Error("bad-formula", "malformed term");
        Term t;
        t.conjugator = parse_word(rest.substr(1, close - 1));
        std::string_view tail = rest.substr(close + 2);
        auto sp = tail.find(' ');
        if (sp == std::string_view::npos) throw Error("bad-formula", "malformed term");
        t.curve = static_cast<int>(parse_count(tail.substr(0, sp)));
        std::string_view e = tail.substr(sp + 1);
        if (e == "+1")
            t.exponent = 1;
        else if (e == "-1")
            t.exponent = -1;
        else
            throw Error("bad-formula", "exponent must be +1 or -1");
        if (t.curve >= static_cast<int>(f.curves.size())) throw Error("bad-formula", "term references unknown curve");
        f.terms.push_back(t);
    }
    return f;
}

}  // namespace contract
