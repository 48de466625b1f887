#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "obci/morphisms.hpp"
#include "obci/structure.hpp"

namespace obci {

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& msg)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string{}) + ": " +
                           msg),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Algebra file:
//
//   algebra <name>
//   elements <l1> <l2> ...
//   unit <label>
//   op
//   <n rows of n labels; row i column j is i -> j>
//   order
//   <whitespace-separated pairs a<=b, any number of lines>
//
// '#' starts a comment; blank lines are ignored. The relation is taken as
// written: it is never closed reflexively or transitively here.

RawStructure parse_algebra(std::string_view text, const std::string& source = "<algebra>");
std::string serialize_algebra(const RawStructure& s);

// Map file:
//
//   map <name> : <source algebra> -> <target algebra>
//   <one line "a -> b" per source element>

/// Resolves the algebra names in a map header.
using AlgebraResolver = std::function<StructurePtr(const std::string& name)>;

struct MapHeader {
  std::string name;
  std::string source;
  std::string target;
};

MapHeader parse_map_header(std::string_view text, const std::string& source = "<map>");
Mapping parse_map(std::string_view text, const AlgebraResolver& resolve,
                  const std::string& source = "<map>");
std::string serialize_map(const Mapping& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

/// "{a, b, c}" using element labels.
std::string format_set(const RawStructure& s, const Subset& set);
/// "(a,b)"
std::string format_tuple(const RawStructure& s, const std::vector<Elem>& elems);
/// Parses "a,b,c" (labels, comma separated; empty string is the empty set).
Subset parse_set(const RawStructure& s, std::string_view list);

}  // namespace obci
