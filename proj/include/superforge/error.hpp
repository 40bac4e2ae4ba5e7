#pragma once

#include <stdexcept>
#include <string>

namespace superforge {

enum class errc {
  index_out_of_range,
  dimension_mismatch,
  invalid_rank,
  inconsistent,
  syntax_error,
  semantic_error,
  unsupported_series,
  degenerate_cartan,
  bound_too_small,
  inconsistent_local_part,
  relation_not_degree2,
  no_solution,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_rank: return "InvalidRank";
    case errc::inconsistent: return "Inconsistent";
    case errc::syntax_error: return "SyntaxError";
    case errc::semantic_error: return "SemanticError";
    case errc::unsupported_series: return "UnsupportedSeries";
    case errc::degenerate_cartan: return "DegenerateCartan";
    case errc::bound_too_small: return "BoundTooSmall";
    case errc::inconsistent_local_part: return "InconsistentLocalPart";
    case errc::relation_not_degree2: return "RelationNotDegree2";
    case errc::no_solution: return "NoSolution";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Syntax errors carry a source position (1-based line and column).
class syntax_error : public error {
 public:
  syntax_error(int line, int col, const std::string& what)
      : error(errc::syntax_error,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

}  // namespace superforge
