#ifndef TANAKA_ERRORS_HPP
#define TANAKA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tanaka {

/// Violated mathematical precondition. `code` is a stable machine-readable
/// identifier surfaced by the CLI in structured error reports.
struct MathError : std::runtime_error {
  std::string code;
  MathError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// complement_in called with a subspace not contained in the ambient.
struct NotContained : MathError {
  explicit NotContained(const std::string& msg) : MathError("NotContained", msg) {}
};

/// Heisenberg algebras need odd total dimension.
struct EvenDim : MathError {
  explicit EvenDim(const std::string& msg) : MathError("EvenDim", msg) {}
};

/// Distribution ranks differ between the base point and a sample point.
struct NonConstantRank : MathError {
  explicit NonConstantRank(const std::string& msg) : MathError("NonConstantRank", msg) {}
};

/// Spanning fields of a distribution are linearly dependent at the point.
struct DependentAtPoint : MathError {
  explicit DependentAtPoint(const std::string& msg) : MathError("DependentAtPoint", msg) {}
};

/// Weak derived flag still growing when the depth cap was reached.
struct DepthCapExceeded : MathError {
  explicit DepthCapExceeded(const std::string& msg) : MathError("DepthCapExceeded", msg) {}
};

/// A custom matrix family is not closed under the commutator.
struct NotASubalgebra : MathError {
  explicit NotASubalgebra(const std::string& msg) : MathError("NotASubalgebra", msg) {}
};

/// Direct sum of symbol parts mixing symplectic and plain structure.
struct MixedStructure : MathError {
  explicit MixedStructure(const std::string& msg) : MathError("MixedStructure", msg) {}
};

/// A map does not respect the filtrations it was declared against.
struct NotFiltered : MathError {
  explicit NotFiltered(const std::string& msg) : MathError("NotFiltered", msg) {}
};

}  // namespace tanaka

#endif
