#include "scriptrev/xml.hpp"

#include <cctype>
#include <cstdint>

namespace scriptrev::xml {

const Element* Element::find_child(std::string_view child_name) const {
  for (const auto& child : children) {
    if (child.name == child_name) return &child;
  }
  return nullptr;
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column),
      message_(what) {}

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  Element document() {
    skip_misc();
    if (starts_with("<?xml")) {
      skip_past("?>", "unterminated XML declaration");
      skip_misc();
    }
    if (at_end() || peek() != '<') fail("expected root element");
    Element root = element();
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  bool starts_with(std::string_view s) const {
    return in_.substr(pos_, s.size()) == s;
  }

  void advance() {
    if (in_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) advance();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, col_, what);
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) advance();
  }

  void skip_past(std::string_view terminator, const char* message) {
    while (!at_end() && !starts_with(terminator)) advance();
    if (at_end()) fail(message);
    advance(terminator.size());
  }

  // Whitespace and comments between markup.
  void skip_misc() {
    for (;;) {
      skip_space();
      if (starts_with("<!--")) {
        skip_past("-->", "unterminated comment");
      } else {
        return;
      }
    }
  }

  std::string name() {
    if (at_end() || !is_name_start(peek())) fail("expected a name");
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) advance();
    return std::string(in_.substr(start, pos_ - start));
  }

  void reference(std::string& out) {
    // positioned on '&'
    std::size_t ref_line = line_, ref_col = col_;
    advance();
    std::size_t start = pos_;
    while (!at_end() && peek() != ';') {
      if (pos_ - start > 10) break;
      advance();
    }
    if (at_end() || peek() != ';') {
      throw ParseError(ref_line, ref_col, "unterminated entity reference");
    }
    std::string_view ent = in_.substr(start, pos_ - start);
    advance();
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (!ent.empty() && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) {
        throw ParseError(ref_line, ref_col, "empty character reference");
      }
      for (char c : digits) {
        int v;
        if (std::isdigit(static_cast<unsigned char>(c))) v = c - '0';
        else if (hex && std::isxdigit(static_cast<unsigned char>(c)))
          v = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        else
          throw ParseError(ref_line, ref_col, "bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) {
          throw ParseError(ref_line, ref_col, "character reference out of range");
        }
      }
      append_utf8(out, cp);
    } else {
      throw ParseError(ref_line, ref_col,
                       "unknown entity '&" + std::string(ent) + ";'");
    }
  }

  std::string attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) {
      fail("expected quoted attribute value");
    }
    char quote = peek();
    advance();
    std::string value;
    while (!at_end() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        reference(value);
      } else {
        value += peek();
        advance();
      }
    }
    if (at_end()) fail("unterminated attribute value");
    advance();
    return value;
  }

  Element element() {
    Element el;
    el.line = line_;
    el.column = col_;
    expect('<');
    el.name = name();
    for (;;) {
      bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (peek() == '/') {
        advance();
        expect('>');
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!had_space) fail("expected whitespace before attribute");
      std::size_t attr_line = line_, attr_col = col_;
      std::string key = name();
      skip_space();
      expect('=');
      skip_space();
      std::string value = attribute_value();
      if (!el.attributes.emplace(key, std::move(value)).second) {
        throw ParseError(attr_line, attr_col, "duplicate attribute '" + key + "'");
      }
    }

    std::string text;
    for (;;) {
      if (at_end()) fail("missing end tag </" + el.name + ">");
      if (starts_with("</")) {
        advance(2);
        std::size_t end_line = line_, end_col = col_;
        std::string end = name();
        if (end != el.name) {
          throw ParseError(end_line, end_col,
                           "mismatched end tag </" + end + ">, expected </" +
                               el.name + ">");
        }
        skip_space();
        expect('>');
        break;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "unterminated comment");
      } else if (starts_with("<![CDATA[") || starts_with("<!") ||
                 starts_with("<?")) {
        fail("unsupported markup");
      } else if (peek() == '<') {
        el.children.push_back(element());
      } else if (peek() == '&') {
        reference(text);
      } else {
        text += peek();
        advance();
      }
    }
    el.text = std::string(trim(text));
    return el;
  }
};

}  // namespace

Element parse_document(std::string_view input) { return Reader(input).document(); }

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
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

void write_element(std::string& out, const Element& element, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent;
  out += '<';
  out += element.name;
  for (const auto& [key, value] : element.attributes) {
    out += ' ';
    out += key;
    out += "=\"";
    out += escape(value);
    out += '"';
  }
  if (element.children.empty() && element.text.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (element.children.empty()) {
    out += escape(element.text);
  } else {
    out += '\n';
    if (!element.text.empty()) {
      out += indent + "  " + escape(element.text) + '\n';
    }
    for (const auto& child : element.children) {
      write_element(out, child, depth + 1);
    }
    out += indent;
  }
  out += "</";
  out += element.name;
  out += ">\n";
}

}  // namespace scriptrev::xml
