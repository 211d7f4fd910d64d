#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "cqt/cqt_matrix.hpp"
#include "cqt/finite_qt.hpp"

namespace cqt {

using AnyMatrix = std::variant<CqtMatrix, FiniteQtMatrix>;

// Text format, one record per line, numbers printed with 17 significant
// digits so doubles round-trip exactly:
//
//   CQT 1 semi-infinite            |  CQT 1 finite <m>
//   symbol <min_deg> <count>
//   <re> <im>                      (count lines)
//   correction <p> <q> <r>         (finite: top-left, then bottom-right flipped)
//   <re> <im> ... (r pairs)        (p rows of U, then q rows of V)
//
// Blank lines and lines starting with '#' are ignored.

std::string serialize(const CqtMatrix& a);
std::string serialize(const FiniteQtMatrix& a);
std::string serialize(const AnyMatrix& a);

/// Throws MalformedFile with the offending line number.
AnyMatrix parse(std::string_view text);

AnyMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const AnyMatrix& a);

}  // namespace cqt
