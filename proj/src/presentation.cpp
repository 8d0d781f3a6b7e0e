#include <cctype>
#include <sstream>
#include <string>

#include "imgrowth/element.hpp"
#include "imgrowth/errors.hpp"

namespace img {

namespace {

struct Line {
    int number;
    std::string text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        ++n;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back({n, line});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::size_t skip_ws(const std::string& s, std::size_t i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
}

struct Definition {
    int line;
    std::string name;
    std::size_t sec_begin;  // column of '<' + 1
    std::size_t sec_end;    // index of '>'
    std::size_t perm_begin;
    const std::string* text;
};

}  // namespace

Presentation parse_presentation(std::string_view source) {
    auto lines = split_lines(source);
    std::size_t alphabet = 0;
    std::vector<Definition> defs;

    for (const auto& ln : lines) {
        const std::string& s = ln.text;
        if (blank(s)) continue;
        std::size_t i = skip_ws(s, 0);
        std::size_t start = i;
        while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        std::string word = s.substr(start, i - start);
        if (word.empty()) throw ParseError("expected generator name", ln.number, static_cast<int>(start + 1));
        if (word == "alphabet") {
            i = skip_ws(s, i);
            std::size_t v = 0, digits = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + (s[i++] - '0');
                ++digits;
            }
            if (!digits) throw ParseError("expected alphabet size", ln.number, static_cast<int>(i + 1));
            if (!blank(s.substr(i))) throw ParseError("trailing text after alphabet size", ln.number, static_cast<int>(i + 1));
            if (v < 2) throw ParseError("alphabet size must be at least 2", ln.number, static_cast<int>(i));
            alphabet = v;
            continue;
        }
        i = skip_ws(s, i);
        if (i >= s.size() || s[i] != '=') throw ParseError("expected '='", ln.number, static_cast<int>(i + 1));
        i = skip_ws(s, i + 1);
        if (i >= s.size() || s[i] != '<') throw ParseError("expected '<'", ln.number, static_cast<int>(i + 1));
        std::size_t open = i;
        int depth = 0;
        std::size_t close = std::string::npos;
        for (std::size_t j = open + 1; j < s.size(); ++j) {
            if (s[j] == '(' || s[j] == '[') ++depth;
            if (s[j] == ')' || s[j] == ']') --depth;
            if (s[j] == '>' && depth == 0) {
                close = j;
                break;
            }
        }
        if (close == std::string::npos) throw ParseError("missing '>'", ln.number, static_cast<int>(s.size() + 1));
        defs.push_back({ln.number, word, open + 1, close, close + 1, &ln.text});
    }

    Presentation p;
    for (const auto& d : defs) {
        try {
            p.add_generator(d.name);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), d.line, 1);
        }
    }

    // Split every section list at top-level commas.
    std::vector<std::vector<std::pair<std::size_t, std::string>>> parts(defs.size());
    for (std::size_t k = 0; k < defs.size(); ++k) {
        const std::string& s = *defs[k].text;
        std::string inner = s.substr(defs[k].sec_begin, defs[k].sec_end - defs[k].sec_begin);
        if (blank(inner)) continue;
        int depth = 0;
        std::size_t from = 0;
        for (std::size_t j = 0; j <= inner.size(); ++j) {
            if (j < inner.size() && (inner[j] == '(' || inner[j] == '[')) ++depth;
            if (j < inner.size() && (inner[j] == ')' || inner[j] == ']')) --depth;
            if (j == inner.size() || (inner[j] == ',' && depth == 0)) {
                parts[k].push_back({defs[k].sec_begin + from, inner.substr(from, j - from)});
                from = j + 1;
            }
        }
        if (!alphabet) alphabet = parts[k].size();
    }
    if (!alphabet) throw ParseError("cannot infer the alphabet size; add an 'alphabet N' line", defs.empty() ? 1 : defs[0].line, 1);
    p.set_degree(alphabet);

    for (std::size_t k = 0; k < defs.size(); ++k) {
        const auto& d = defs[k];
        std::vector<Element> secs;
        if (parts[k].empty()) {
            secs.assign(alphabet, Element());
        } else {
            if (parts[k].size() != alphabet)
                throw ParseError("generator '" + d.name + "' lists " + std::to_string(parts[k].size()) + " sections, expected " +
                                     std::to_string(alphabet),
                                 d.line, static_cast<int>(d.sec_begin));
            for (const auto& [col, txt] : parts[k]) {
                if (blank(txt)) throw ParseError("empty section", d.line, static_cast<int>(col + 1));
                try {
                    secs.push_back(p.parse(txt));
                } catch (const ParseError& e) {
                    throw ParseError("invalid section '" + txt + "': " + e.message(), d.line,
                                     static_cast<int>(col + static_cast<std::size_t>(std::max(e.column(), 1))));
                }
            }
        }
        Perm root;
        try {
            root = Perm::from_cycles(d.text->substr(d.perm_begin), alphabet);
        } catch (const std::exception& e) {
            throw ParseError(std::string("invalid permutation: ") + e.what(), d.line, static_cast<int>(d.perm_begin + 1));
        }
        p.define(k, std::move(root), std::move(secs));
    }
    p.finalize();
    return p;
}

std::string format_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "alphabet " << p.degree() << "\n";
    for (std::size_t g = 0; g < p.size(); ++g) {
        os << p.name(g) << " = <";
        for (std::size_t x = 0; x < p.degree(); ++x) os << (x ? ", " : "") << p.format(p.section(g, x));
        os << ">";
        if (!p.root(g).is_identity()) os << " " << p.root(g).to_cycles();
        os << "\n";
    }
    return os.str();
}

}  // namespace img
