#pragma once

#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace acqlin {

/// Parse result with per-atom source spans for error reporting.
struct QueryText {
  std::string source;
  RelQuery query;
  std::vector<std::pair<int, int>> atom_spans;  // (offset, length) per rel atom
  std::vector<std::pair<int, int>> comp_spans;  // per comparison atom
};

QueryText parse_query_text(const std::string& text);
RelQuery parse_query(const std::string& text);
std::string print_query(const RelQuery& q);

/// Declared shape of one relation input.
struct RelationDecl {
  std::string name;
  std::string file;  // empty when tuples are provided inline
  int arity = 0;
  std::vector<ColumnType> types;                 // one per column
  std::vector<std::vector<std::string>> tuples;  // inline rows (tests)
};

/// Builds an interned, deduplicated database. Values from `extra_domain` that
/// appear in no tuple are pruned and counted.
Database build_database(const std::vector<RelationDecl>& decls,
                        const std::vector<std::pair<ColumnType, std::string>>& extra_domain = {});

/// Loads from a manifest file (JSON) or a directory containing manifest.json
/// or plain .csv files (one relation per file, column types inferred).
Database load_database(const std::string& path);

std::vector<std::vector<std::string>> read_delimited_file(const std::string& path);
std::vector<std::vector<std::string>> parse_delimited(const std::string& text);

}  // namespace acqlin
