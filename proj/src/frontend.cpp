#include "frontend.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace acqlin {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat(const char* tok) {
    skip_ws();
    size_t len = std::char_traits<char>::length(tok);
    if (s.compare(pos, len, tok) == 0) {
      pos += len;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    int line = 1, col = 1;
    for (size_t i = 0; i < pos && i < s.size(); ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::Input, "parse error at line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + what);
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return s.substr(start, pos - start);
  }
};

}  // namespace

QueryText parse_query_text(const std::string& text) {
  QueryText out;
  out.source = text;
  Cursor c{text};
  RelQuery& q = out.query;
  q.head = c.ident();
  if (!c.eat('(')) c.fail("expected '(' after the head name");
  if (!c.eat(')')) {
    do {
      q.free_vars.push_back(c.ident());
    } while (c.eat(','));
    if (!c.eat(')')) c.fail("expected ')' to close the head");
  }
  if (!c.eat(":-")) c.fail("expected ':-' between head and body");
  do {
    c.skip_ws();
    size_t start = c.pos;
    std::string first = c.ident();
    if (c.peek() == '(') {
      c.eat('(');
      RelAtom atom;
      atom.rel = first;
      do {
        atom.vars.push_back(c.ident());
      } while (c.eat(','));
      if (!c.eat(')')) c.fail("expected ')' to close atom " + first);
      out.atom_spans.emplace_back(static_cast<int>(start), static_cast<int>(c.pos - start));
      q.atoms.push_back(std::move(atom));
    } else {
      CompAtom comp;
      comp.lhs = first;
      if (c.eat("!="))
        comp.op = CompOp::Neq;
      else if (c.eat("<="))
        comp.op = CompOp::Le;
      else if (c.eat(">="))
        comp.op = CompOp::Ge;
      else if (c.eat('<'))
        comp.op = CompOp::Lt;
      else if (c.eat('>'))
        comp.op = CompOp::Gt;
      else
        c.fail("expected a relational atom or a comparison operator");
      comp.rhs = c.ident();
      out.comp_spans.emplace_back(static_cast<int>(start), static_cast<int>(c.pos - start));
      q.comps.push_back(std::move(comp));
    }
  } while (c.eat(','));
  if (!c.eof()) c.fail("trailing input after the query body");
  for (const auto& y : q.free_vars) {
    bool found = false;
    for (const auto& a : q.atoms)
      if (std::find(a.vars.begin(), a.vars.end(), y) != a.vars.end()) found = true;
    if (!found)
      throw Error(ErrorCode::Input, "unsafe query: head variable " + y +
                                        " does not occur in any relational atom");
  }
  if (!q.safe())
    throw Error(ErrorCode::Input, "unsafe query: a variable occurs only in comparisons");
  std::set<std::string> seen(q.free_vars.begin(), q.free_vars.end());
  if (seen.size() != q.free_vars.size())
    throw Error(ErrorCode::Input, "duplicate variable in the head");
  return out;
}

RelQuery parse_query(const std::string& text) { return parse_query_text(text).query; }

std::string print_query(const RelQuery& q) {
  std::ostringstream os;
  os << q.head << "(";
  for (size_t i = 0; i < q.free_vars.size(); ++i) os << (i ? "," : "") << q.free_vars[i];
  os << ") :- ";
  bool first = true;
  for (const auto& a : q.atoms) {
    if (!first) os << ", ";
    first = false;
    os << a.rel << "(";
    for (size_t i = 0; i < a.vars.size(); ++i) os << (i ? "," : "") << a.vars[i];
    os << ")";
  }
  for (const auto& c : q.comps) {
    if (!first) os << ", ";
    first = false;
    os << c.lhs << " " << comp_op_text(c.op) << " " << c.rhs;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Delimited files (RFC-4180-ish)

std::vector<std::vector<std::string>> parse_delimited(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&]() {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&]() {
    if (field_started || !row.empty()) {
      end_field();
      rows.push_back(row);
      row.clear();
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;  // next field exists even if empty
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::Input, "unterminated quoted field");
  end_row();
  return rows;
}

std::vector<std::vector<std::string>> read_delimited_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_delimited(ss.str());
}

// ---------------------------------------------------------------------------
// Database construction

Database build_database(const std::vector<RelationDecl>& decls,
                        const std::vector<std::pair<ColumnType, std::string>>& extra_domain) {
  std::set<std::string> names;
  for (const auto& d : decls)
    if (!names.insert(d.name).second)
      throw Error(ErrorCode::Input, "duplicate relation name " + d.name);

  // One interned column per (relation, position); tuples supply the values.
  std::vector<Column> cols;
  std::vector<std::pair<int, int>> col_of;  // (relation, position) -> cols index
  for (size_t r = 0; r < decls.size(); ++r) {
    const auto& d = decls[r];
    if (d.arity <= 0) throw Error(ErrorCode::Input, "relation " + d.name + " needs arity >= 1");
    if (static_cast<int>(d.types.size()) != d.arity)
      throw Error(ErrorCode::Input, "relation " + d.name + ": one column type per position");
    for (int cidx = 0; cidx < d.arity; ++cidx) {
      Column col;
      col.type = d.types[cidx];
      for (const auto& row : d.tuples) {
        if (static_cast<int>(row.size()) != d.arity)
          throw Error(ErrorCode::Input, "relation " + d.name + ": row with " +
                                            std::to_string(row.size()) + " fields, declared arity " +
                                            std::to_string(d.arity));
        col.cells.push_back(row[cidx]);
      }
      col_of.emplace_back(static_cast<int>(r), cidx);
      cols.push_back(std::move(col));
    }
  }
  int extra_start = static_cast<int>(cols.size());
  {
    Column num{ColumnType::Numeric, {}}, txt{ColumnType::Text, {}};
    for (const auto& [ty, cell] : extra_domain)
      (ty == ColumnType::Numeric ? num : txt).cells.push_back(cell);
    cols.push_back(std::move(num));
    cols.push_back(std::move(txt));
  }

  // First interning pass to learn which extra-domain values are isolated.
  std::vector<std::vector<ElemId>> ids;
  InternTable table = InternTable::build(cols, &ids);
  std::vector<uint8_t> used(table.size(), 0);
  for (int c = 0; c < extra_start; ++c)
    for (ElemId id : ids[c]) used[id] = 1;
  int32_t pruned = 0;
  for (ElemId id = 0; id < table.size(); ++id)
    if (!used[id]) ++pruned;
  if (pruned > 0) {
    cols.resize(extra_start);  // drop isolated extras and re-intern densely
    table = InternTable::build(cols, &ids);
  }

  Database db;
  db.table = table;
  db.domain_size = table.size();
  db.pruned_isolated = pruned;
  for (size_t r = 0; r < decls.size(); ++r) {
    const auto& d = decls[r];
    Relation rel;
    rel.name = d.name;
    rel.arity = d.arity;
    rel.col_types = d.types;
    std::set<std::vector<ElemId>> dedup;
    int64_t card = static_cast<int64_t>(d.tuples.size());
    for (int64_t row = 0; row < card; ++row) {
      std::vector<ElemId> tup(d.arity);
      for (int cidx = 0; cidx < d.arity; ++cidx) {
        int col_index = -1;
        for (size_t cc = 0; cc < col_of.size(); ++cc)
          if (col_of[cc] == std::make_pair(static_cast<int>(r), cidx))
            col_index = static_cast<int>(cc);
        tup[cidx] = ids[col_index][row];
      }
      dedup.insert(std::move(tup));
    }
    for (const auto& tup : dedup)
      rel.tuples.insert(rel.tuples.end(), tup.begin(), tup.end());
    db.relations.push_back(std::move(rel));
  }
  return db;
}

namespace {

ColumnType parse_type(const std::string& s) {
  if (s == "numeric") return ColumnType::Numeric;
  if (s == "text") return ColumnType::Text;
  throw Error(ErrorCode::Input, "unknown column type '" + s + "' (want numeric|text)");
}

bool all_numeric(const std::vector<std::vector<std::string>>& rows, int col) {
  for (const auto& row : rows) {
    try {
      parse_numeric_cell(row[col]);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

Database load_from_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::Input, "cannot read " + manifest.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Input, manifest.string() + ": " + e.what());
  }
  std::vector<RelationDecl> decls;
  std::vector<std::pair<ColumnType, std::string>> extra;
  auto base = manifest.parent_path();
  for (const auto& r : j.at("relations")) {
    RelationDecl d;
    d.name = r.at("name").get<std::string>();
    d.file = r.at("file").get<std::string>();
    d.arity = r.at("arity").get<int>();
    for (const auto& t : r.at("types")) d.types.push_back(parse_type(t.get<std::string>()));
    auto rows = read_delimited_file((base / d.file).string());
    d.tuples = std::move(rows);
    decls.push_back(std::move(d));
  }
  if (j.contains("domain")) {
    auto dj = j.at("domain");
    ColumnType ty = parse_type(dj.value("type", "numeric"));
    auto rows = read_delimited_file((base / dj.at("file").get<std::string>()).string());
    for (const auto& row : rows)
      for (const auto& cell : row) extra.emplace_back(ty, cell);
  }
  return build_database(decls, extra);
}

Database load_from_directory(const std::filesystem::path& dir) {
  std::vector<RelationDecl> decls;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".csv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::Input, "no .csv files in " + dir.string());
  for (const auto& f : files) {
    RelationDecl d;
    d.name = f.stem().string();
    d.tuples = read_delimited_file(f.string());
    if (d.tuples.empty())
      throw Error(ErrorCode::Input, f.string() + ": empty relation file needs a manifest entry "
                                                 "declaring its arity");
    d.arity = static_cast<int>(d.tuples[0].size());
    for (int c = 0; c < d.arity; ++c)
      d.types.push_back(all_numeric(d.tuples, c) ? ColumnType::Numeric : ColumnType::Text);
    decls.push_back(std::move(d));
  }
  return build_database(decls);
}

}  // namespace

Database load_database(const std::string& path) {
  std::filesystem::path p(path);
  if (std::filesystem::is_directory(p)) {
    auto manifest = p / "manifest.json";
    if (std::filesystem::exists(manifest)) return load_from_manifest(manifest);
    return load_from_directory(p);
  }
  if (!std::filesystem::exists(p)) throw Error(ErrorCode::Input, "no such path: " + path);
  return load_from_manifest(p);
}

}  // namespace acqlin
