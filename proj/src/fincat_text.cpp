#include <sstream>

#include "obstructia/error.hpp"
#include "obstructia/fincat.hpp"
#include "text_util.hpp"

namespace obstructia {

RawCategory parse_category_text(std::string_view text) {
    RawCategory raw;
    std::size_t line_no = 0;
    for (const auto& line : detail::split_lines(text)) {
        ++line_no;
        auto tok = detail::tokenize(detail::strip_comment(line));
        if (tok.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw Error("ParseError", "line " + std::to_string(line_no) + ": " + why);
        };
        const std::string& kw = tok[0];
        if (kw == "obj") {
            if (tok.size() < 2) fail("expected `obj <id>`");
            raw.objects.insert(raw.objects.end(), tok.begin() + 1, tok.end());
        } else if (kw == "mor") {
            if (tok.size() != 6 || tok[2] != ":" || tok[4] != "->") {
                fail("expected `mor <id> : <dom> -> <cod>`");
            }
            raw.morphisms.push_back({tok[1], tok[3], tok[5]});
        } else if (kw == "id") {
            if (tok.size() != 4 || tok[2] != "=") fail("expected `id <obj> = <mor>`");
            raw.identities.emplace_back(tok[1], tok[3]);
        } else if (kw == "comp") {
            if (tok.size() != 6 || tok[2] != ";" || tok[4] != "=") {
                fail("expected `comp <f> ; <g> = <h>`");
            }
            raw.compositions.push_back({tok[1], tok[3], tok[5]});
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    return raw;
}

std::string format_category(const FinCat& c) {
    RawCategory raw = c.to_raw();
    std::ostringstream out;
    for (const auto& o : raw.objects) out << "obj " << o << "\n";
    for (const auto& m : raw.morphisms) {
        out << "mor " << m.id << " : " << m.dom << " -> " << m.cod << "\n";
    }
    for (const auto& [o, m] : raw.identities) out << "id " << o << " = " << m << "\n";
    for (const auto& cm : raw.compositions) {
        out << "comp " << cm.first << " ; " << cm.second << " = " << cm.result << "\n";
    }
    return out.str();
}

}  // namespace obstructia
