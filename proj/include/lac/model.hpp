#pragma once

// Model files: one algebroid and/or one Poisson bivector plus named
// multivectors and forms.
//
//   # comment
//   [algebroid]
//   base = [ "x1", "x2" ]
//   rank = 2
//   anchor[1][1] = "1"          anchor[a][i] = ρ^i_a
//   C[3][1][2] = "x1"           C[c][a][b], a < b
//
//   [poisson]
//   base = [ "x1", "x2" ]
//   L[1][2] = "1"               i < j
//
//   [multivector P]
//   scalar = "x1"
//   1,2 = "x2^2"
//
// Element blocks are read in the algebroid's chart and frame, or in the
// tangent frame of the Poisson chart when there is no algebroid.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lac/algebroid.hpp"
#include "lac/errors.hpp"
#include "lac/poisson.hpp"

namespace lac {

class ModelError : public Error {
 public:
  ModelError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct NamedElement {
  std::string name;
  GradedElement value;

  friend bool operator==(const NamedElement&, const NamedElement&) = default;
};

struct ModelFile {
  std::optional<Algebroid> algebroid;
  std::optional<PoissonStructure> poisson;
  std::vector<NamedElement> elements;

  /// Chart and rank the element blocks are read in. Throws Error when the
  /// model has neither an algebroid nor a Poisson block.
  const Chart& element_chart() const;
  unsigned element_rank() const;

  const NamedElement* find(std::string_view name) const;

  friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

/// Throws ModelError with the position of the offending line.
ModelFile parse_model(std::string_view text);
/// Throws Error if the file cannot be read.
ModelFile load_model(const std::filesystem::path& path);

std::string save_model(const ModelFile& model);

void write_algebroid(std::ostream& out, const Algebroid& a);
void write_poisson(std::ostream& out, const PoissonStructure& ps);
void write_element(std::ostream& out, std::string_view name, const GradedElement& g,
                   const Chart& chart);

}  // namespace lac
