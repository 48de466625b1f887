#include "obci/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace obci {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool is_keyword(const std::string& t) {
  return t == "algebra" || t == "elements" || t == "unit" || t == "op" || t == "order";
}

}  // namespace

RawStructure parse_algebra(std::string_view text, const std::string& source) {
  const auto lines = tokenize(text);
  std::string name;
  std::vector<std::string> labels;
  std::optional<std::string> unit_label;
  std::size_t unit_line = 0;
  std::vector<Elem> op;
  std::vector<std::uint8_t> order;
  bool have_op = false, have_order = false;

  auto label_index = [&](const std::string& l, std::size_t line) -> Elem {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return static_cast<Elem>(i);
    throw ParseError(source, line, "unknown element '" + l + "'");
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& ln = lines[i];
    const std::string& kw = ln.tokens[0];
    if (kw == "algebra") {
      if (ln.tokens.size() != 2) throw ParseError(source, ln.number, "expected 'algebra <name>'");
      name = ln.tokens[1];
      ++i;
    } else if (kw == "elements") {
      if (ln.tokens.size() < 2) throw ParseError(source, ln.number, "no elements listed");
      labels.assign(ln.tokens.begin() + 1, ln.tokens.end());
      if (labels.size() > kMaxCarrier) throw ParseError(source, ln.number, "too many elements");
      for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b)
          if (labels[a] == labels[b])
            throw ParseError(source, ln.number, "duplicate element '" + labels[a] + "'");
      ++i;
    } else if (kw == "unit") {
      if (ln.tokens.size() != 2) throw ParseError(source, ln.number, "expected 'unit <label>'");
      unit_label = ln.tokens[1];
      unit_line = ln.number;
      ++i;
    } else if (kw == "op") {
      if (labels.empty()) throw ParseError(source, ln.number, "'op' before 'elements'");
      if (ln.tokens.size() != 1) throw ParseError(source, ln.number, "'op' takes no arguments");
      const std::size_t n = labels.size();
      op.assign(n * n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        if (i + 1 + r >= lines.size()) {
          throw ParseError(source, ln.number, "operation table has fewer than " +
                                                  std::to_string(n) + " rows");
        }
        const Line& row = lines[i + 1 + r];
        if (is_keyword(row.tokens[0]) && row.tokens.size() != n) {
          throw ParseError(source, row.number, "operation table has fewer than " +
                                                   std::to_string(n) + " rows");
        }
        if (row.tokens.size() != n) {
          throw ParseError(source, row.number, "row " + std::to_string(r + 1) + " has " +
                                                   std::to_string(row.tokens.size()) +
                                                   " entries, expected " + std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) op[r * n + c] = label_index(row.tokens[c], row.number);
      }
      have_op = true;
      i += 1 + n;
    } else if (kw == "order") {
      if (labels.empty()) throw ParseError(source, ln.number, "'order' before 'elements'");
      const std::size_t n = labels.size();
      order.assign(n * n, 0);
      std::vector<std::string> pairs(ln.tokens.begin() + 1, ln.tokens.end());
      std::vector<std::size_t> pair_lines(pairs.size(), ln.number);
      ++i;
      while (i < lines.size() && !is_keyword(lines[i].tokens[0])) {
        for (const auto& t : lines[i].tokens) {
          pairs.push_back(t);
          pair_lines.push_back(lines[i].number);
        }
        ++i;
      }
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto sep = pairs[k].find("<=");
        if (sep == std::string::npos || sep == 0 || sep + 2 >= pairs[k].size()) {
          throw ParseError(source, pair_lines[k], "expected a pair 'a<=b', got '" + pairs[k] + "'");
        }
        const Elem a = label_index(pairs[k].substr(0, sep), pair_lines[k]);
        const Elem b = label_index(pairs[k].substr(sep + 2), pair_lines[k]);
        order[a * n + b] = 1;
      }
      have_order = true;
    } else {
      throw ParseError(source, ln.number, "unexpected '" + kw + "'");
    }
  }
  if (name.empty()) throw ParseError(source, 0, "missing 'algebra <name>'");
  if (labels.empty()) throw ParseError(source, 0, "missing 'elements'");
  if (!unit_label) throw ParseError(source, 0, "missing 'unit'");
  if (!have_op) throw ParseError(source, 0, "missing 'op' table");
  if (!have_order) order.assign(labels.size() * labels.size(), 0);
  const Elem unit = label_index(*unit_label, unit_line);
  try {
    return RawStructure::create(name, std::move(labels), std::move(op), unit, std::move(order));
  } catch (const StructureError& e) {
    throw ParseError(source, 0, e.what());
  }
}

std::string serialize_algebra(const RawStructure& s) {
  std::ostringstream out;
  const auto n = static_cast<Elem>(s.size());
  out << "algebra " << s.name() << "\n";
  out << "elements";
  for (const auto& l : s.labels()) out << ' ' << l;
  out << "\nunit " << s.label(s.unit()) << "\nop\n";
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) out << (y ? " " : "") << s.label(s.op(x, y));
    out << "\n";
  }
  out << "order\n";
  std::size_t on_line = 0;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (!s.leq(x, y)) continue;
      out << (on_line ? " " : "") << s.label(x) << "<=" << s.label(y);
      if (++on_line == 8) {
        out << "\n";
        on_line = 0;
      }
    }
  }
  if (on_line) out << "\n";
  return out.str();
}

MapHeader parse_map_header(std::string_view text, const std::string& source) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(source, 0, "empty map file");
  const Line& h = lines.front();
  // map <name> : <src> -> <dst>
  if (h.tokens.size() != 6 || h.tokens[0] != "map" || h.tokens[2] != ":" || h.tokens[4] != "->") {
    throw ParseError(source, h.number, "expected 'map <name> : <source> -> <target>'");
  }
  return {h.tokens[1], h.tokens[3], h.tokens[5]};
}

Mapping parse_map(std::string_view text, const AlgebraResolver& resolve,
                  const std::string& source) {
  const MapHeader header = parse_map_header(text, source);
  StructurePtr src = resolve(header.source);
  StructurePtr dst = resolve(header.target);
  if (!src) throw ParseError(source, 1, "unknown source algebra '" + header.source + "'");
  if (!dst) throw ParseError(source, 1, "unknown target algebra '" + header.target + "'");

  const auto lines = tokenize(text);
  std::vector<int> table(src->size(), -1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    if (ln.tokens.size() != 3 || ln.tokens[1] != "->") {
      throw ParseError(source, ln.number, "expected 'a -> b'");
    }
    const auto a = src->index_of(ln.tokens[0]);
    if (!a) {
      throw ParseError(source, ln.number,
                       "'" + ln.tokens[0] + "' is not an element of " + src->name());
    }
    const auto b = dst->index_of(ln.tokens[2]);
    if (!b) {
      throw ParseError(source, ln.number,
                       "'" + ln.tokens[2] + "' is not an element of " + dst->name());
    }
    if (table[*a] != -1) {
      throw ParseError(source, ln.number, "'" + ln.tokens[0] + "' is mapped twice");
    }
    table[*a] = *b;
  }
  std::vector<Elem> out(table.size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    if (table[a] < 0) {
      throw ParseError(source, 0, "map is not total: no image for '" +
                                      src->label(static_cast<Elem>(a)) + "'");
    }
    out[a] = static_cast<Elem>(table[a]);
  }
  return {std::move(src), std::move(dst), std::move(out), header.name};
}

std::string serialize_map(const Mapping& m) {
  std::ostringstream out;
  out << "map " << (m.name().empty() ? "unnamed" : m.name()) << " : " << m.source().name()
      << " -> " << m.target().name() << "\n";
  for (std::size_t a = 0; a < m.table().size(); ++a) {
    const auto x = static_cast<Elem>(a);
    out << m.source().label(x) << " -> " << m.target().label(m(x)) << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot write file");
  out << text;
}

std::string format_set(const RawStructure& s, const Subset& set) {
  std::string out = "{";
  bool first = true;
  for (Elem x : set.members()) {
    out += (first ? "" : ", ") + s.label(x);
    first = false;
  }
  return out + "}";
}

std::string format_tuple(const RawStructure& s, const std::vector<Elem>& elems) {
  std::string out = "(";
  for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? "," : "") + s.label(elems[i]);
  return out + ")";
}

Subset parse_set(const RawStructure& s, std::string_view list) {
  Subset out = s.empty_set();
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    // Trim surrounding blanks.
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    const std::string tok = b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1);
    cur.clear();
    if (tok.empty()) return;
    const auto idx = s.index_of(tok);
    if (!idx) throw ParseError("--set", 0, "'" + tok + "' is not an element of " + s.name());
    out.insert(*idx);
  };
  std::string_view body = list;
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
    body = body.substr(1, body.size() - 2);
  }
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace obci
