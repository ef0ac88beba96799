#include "oamatch/xml.hpp"

#include <cctype>

namespace oamatch::xml {

std::string Element::local_name() const {
    auto pos = name.rfind(':');
    return pos == std::string::npos ? name : name.substr(pos + 1);
}

const std::string* Element::attr(std::string_view n) const {
    for (const auto& [k, v] : attrs)
        if (k == n) return &v;
    return nullptr;
}

const std::string* Element::attr_local(std::string_view local) const {
    for (const auto& [k, v] : attrs) {
        auto pos = k.rfind(':');
        std::string_view l = pos == std::string::npos ? std::string_view(k)
                                                      : std::string_view(k).substr(pos + 1);
        if (l == local) return &v;
    }
    return nullptr;
}

const Element* Element::child_local(std::string_view local) const {
    for (const auto& c : children)
        if (c.local_name() == local) return &c;
    return nullptr;
}

namespace {

struct Parser {
    std::string_view in;
    std::size_t pos = 0;
    std::map<std::string, std::string, std::less<>> entities{
        {"lt", "<"}, {"gt", ">"}, {"amp", "&"}, {"apos", "'"}, {"quot", "\""}};

    [[noreturn]] void fail(const std::string& msg) const {
        throw MalformedXmlError("malformed XML at offset " + std::to_string(pos) + ": " + msg);
    }

    bool eof() const { return pos >= in.size(); }
    char peek() const { return in[pos]; }
    bool starts_with(std::string_view s) const { return in.substr(pos, s.size()) == s; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    void skip_until(std::string_view terminator, const char* what) {
        auto p = in.find(terminator, pos);
        if (p == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos = p + terminator.size();
    }

    std::string name_token() {
        std::size_t start = pos;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' ||
                c == '-' || c == '.')
                ++pos;
            else
                break;
        }
        if (pos == start) fail("expected name");
        return std::string(in.substr(start, pos - start));
    }

    std::string decode(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            auto end = raw.find(';', i);
            if (end == std::string_view::npos) fail("unterminated entity reference");
            std::string_view ref = raw.substr(i + 1, end - i - 1);
            if (!ref.empty() && ref[0] == '#') {
                int code = ref[1] == 'x' || ref[1] == 'X'
                               ? std::stoi(std::string(ref.substr(2)), nullptr, 16)
                               : std::stoi(std::string(ref.substr(1)));
                // ASCII only; wider code points encoded as UTF-8.
                if (code < 0x80) {
                    out += static_cast<char>(code);
                } else if (code < 0x800) {
                    out += static_cast<char>(0xC0 | (code >> 6));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else {
                    out += static_cast<char>(0xE0 | (code >> 12));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                }
            } else {
                auto it = entities.find(ref);
                if (it == entities.end()) fail("unknown entity &" + std::string(ref) + ";");
                out += it->second;
            }
            i = end + 1;
        }
        return out;
    }

    void parse_doctype() {
        // Capture <!ENTITY name "value"> declarations from the internal subset.
        pos += 9; // "<!DOCTYPE"
        int depth = 0;
        while (!eof()) {
            char c = peek();
            if (c == '[') {
                ++depth;
                ++pos;
            } else if (c == ']') {
                --depth;
                ++pos;
            } else if (c == '>' && depth <= 0) {
                ++pos;
                return;
            } else if (starts_with("<!ENTITY")) {
                pos += 8;
                skip_ws();
                std::string ename = name_token();
                skip_ws();
                if (eof() || (peek() != '"' && peek() != '\'')) fail("entity value expected");
                char q = peek();
                ++pos;
                auto end = in.find(q, pos);
                if (end == std::string_view::npos) fail("unterminated entity value");
                entities[ename] = decode(in.substr(pos, end - pos));
                pos = end + 1;
            } else {
                ++pos;
            }
        }
        fail("unterminated DOCTYPE");
    }

    bool skip_misc() { // prolog junk, comments, PIs; returns true if consumed something
        if (starts_with("<?")) {
            skip_until("?>", "processing instruction");
            return true;
        }
        if (starts_with("<!--")) {
            skip_until("-->", "comment");
            return true;
        }
        if (starts_with("<!DOCTYPE")) {
            parse_doctype();
            return true;
        }
        return false;
    }

    Element parse_element() {
        expect('<');
        Element el;
        el.name = name_token();
        while (true) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (starts_with("/>")) {
                pos += 2;
                return el;
            }
            if (peek() == '>') {
                ++pos;
                break;
            }
            std::string aname = name_token();
            skip_ws();
            expect('=');
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute value expected");
            char q = peek();
            ++pos;
            auto end = in.find(q, pos);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            el.attrs.emplace_back(std::move(aname), decode(in.substr(pos, end - pos)));
            pos = end + 1;
        }
        // content
        while (true) {
            if (eof()) fail("unterminated element <" + el.name + ">");
            if (starts_with("</")) {
                pos += 2;
                std::string close = name_token();
                if (close != el.name)
                    fail("mismatched close tag </" + close + "> for <" + el.name + ">");
                skip_ws();
                expect('>');
                return el;
            }
            if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                pos += 9;
                auto end = in.find("]]>", pos);
                if (end == std::string_view::npos) fail("unterminated CDATA");
                el.text.append(in.substr(pos, end - pos));
                pos = end + 3;
            } else if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (peek() == '<') {
                el.children.push_back(parse_element());
            } else {
                auto end = in.find('<', pos);
                if (end == std::string_view::npos) fail("text outside element");
                el.text += decode(in.substr(pos, end - pos));
                pos = end;
            }
        }
    }
};

} // namespace

Element parse(std::string_view document) {
    Parser p{document};
    p.skip_ws();
    while (!p.eof() && p.skip_misc()) p.skip_ws();
    if (p.eof() || p.peek() != '<') p.fail("no root element");
    Element root = p.parse_element();
    p.skip_ws();
    while (!p.eof() && p.skip_misc()) p.skip_ws();
    if (!p.eof()) p.fail("trailing content after root element");
    return root;
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace oamatch::xml
