#pragma once

// Minimal XML element tree used by the RRL reader/writer. Supports elements,
// attributes, character data, comments and the XML declaration; no DTDs,
// no CDATA, no namespaces beyond treating "a:b" as a plain name.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scriptrev::xml {

struct Element {
  std::string name;
  std::map<std::string, std::string> attributes;  // serialized in key order
  std::vector<Element> children;
  std::string text;  // trimmed character data; empty for whitespace-only
  std::size_t line = 0;
  std::size_t column = 0;

  const Element* find_child(std::string_view child_name) const;

  friend bool operator==(const Element& a, const Element& b) {
    return a.name == b.name && a.attributes == b.attributes &&
           a.children == b.children && a.text == b.text;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Parses a complete document and returns its root element.
Element parse_document(std::string_view input);

std::string escape(std::string_view raw);

// Writes `element` at the given indentation depth (two spaces per level),
// followed by a newline.
void write_element(std::string& out, const Element& element, int depth);

}  // namespace scriptrev::xml
