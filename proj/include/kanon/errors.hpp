#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kanon/types.hpp"

namespace kanon {

enum class Errc {
  SelfLoop,
  DuplicateEdge,
  SameVertex,
  VertexOutOfRange,
  SizeMismatch,
  NotSuperset,
  TooSmall,
  IsolatedVertex,
  DegreeTooLow,
  Stuck,
  BadParams,
  BudgetExceeded,
  NotNormalized,
  BadTripleCount,
  Parse,
  Incompatible,
};

const char* errc_name(Errc code) noexcept;

// Every library failure is reported through this one exception type; the
// code identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Error(Errc code, const std::string& what, std::vector<Vertex> vertices)
      : Error(code, what) {
    vertices_ = std::move(vertices);
  }

  Errc code() const noexcept { return code_; }

  // Offending vertices, when the error is about specific vertices
  // (DegreeTooLow, IsolatedVertex).
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

 private:
  Errc code_;
  std::vector<Vertex> vertices_;
};

}  // namespace kanon
