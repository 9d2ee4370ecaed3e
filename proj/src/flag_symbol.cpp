#include "tanaka/flag_symbol.hpp"

#include <stdexcept>

#include "tanaka/errors.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

int GradedEndomorphism::offset(int d) const {
  int off = 0;
  for (const auto& [deg, n] : space.components)
    if (deg < d) off += n;
  return off;
}

FiltrationSpec GradedEndomorphism::canonical_flag() const {
  int n = total_dim();
  std::vector<std::pair<int, Subspace>> steps;
  for (const auto& [deg, sz] : space.components) {
    std::vector<Vec> rows;
    for (int c = offset(deg); c < n; ++c) rows.push_back(unit_vec(n, c));
    steps.emplace_back(deg, Subspace::span(rows, n));
  }
  return FiltrationSpec(n, std::move(steps));
}

GradedEndomorphism make_delta_rp(int r, int p) {
  if (r > p || p >= 0)
    throw std::invalid_argument("make_delta_rp needs degrees r <= p < 0");
  int n = p - r + 1;
  GradedEndomorphism out{GradedSpace{}, Mat(n, n), std::nullopt};
  for (int i = r; i <= p; ++i) out.space.components[i] = 1;
  // Coordinate c holds the degree r+c line; the shift drops each line onto
  // its neighbor below and kills the bottom one.
  for (int c = 1; c < n; ++c) out.matrix.at(c - 1, c) = Rat(1);
  return out;
}

GradedEndomorphism make_tau_m(int m, int sign) {
  if (m < 1) throw std::invalid_argument("make_tau_m needs m >= 1");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("make_tau_m sign must be +1 or -1");
  int n = 2 * m;
  GradedEndomorphism out{GradedSpace{}, Mat(n, n), Mat(n, n)};
  for (int i = -m - 1; i <= m - 2; ++i) out.space.components[i] = 1;
  for (int c = 1; c < n; ++c) out.matrix.at(c - 1, c) = Rat(sign);
  // Coordinate k holds the degree k-m-1 line, so lines pair exactly across
  // the antidiagonal k + l = 2m - 1. Alternating signs put the shift inside
  // sp of the pairing; the leading sign makes omega(tau(e), e) = 1 on the
  // degree -1 line (coordinate m).
  int w0 = (m % 2 == 1) ? 1 : -1;
  for (int k = 0; k < m; ++k) {
    int w = (k % 2 == 0) ? w0 : -w0;
    out.pairing->at(k, n - 1 - k) = Rat(w);
    out.pairing->at(n - 1 - k, k) = Rat(-w);
  }
  return out;
}

GradedEndomorphism direct_sum(const std::vector<GradedEndomorphism>& parts) {
  if (parts.empty())
    throw std::invalid_argument("direct_sum needs at least one summand");
  bool with_pairing = parts.front().pairing.has_value();
  for (const auto& p : parts)
    if (p.pairing.has_value() != with_pairing)
      throw MixedStructure("direct_sum cannot mix parts with and without a pairing");

  GradedSpace space;
  for (const auto& p : parts)
    for (const auto& [deg, sz] : p.space.components) space.components[deg] += sz;

  // Global coordinate of local coordinate `c` of part `q`: parts keep their
  // internal order inside each degree block, listed in argument order.
  GradedEndomorphism out{space, Mat(space.total_dim(), space.total_dim()),
                         std::nullopt};
  std::vector<std::vector<int>> where(parts.size());
  std::map<int, int> used;  // degree -> coordinates already assigned
  for (size_t q = 0; q < parts.size(); ++q) {
    const auto& p = parts[q];
    where[q].resize(p.total_dim());
    for (const auto& [deg, sz] : p.space.components)
      for (int t = 0; t < sz; ++t)
        where[q][p.offset(deg) + t] = out.offset(deg) + used[deg] + t;
    for (const auto& [deg, sz] : p.space.components) used[deg] += sz;
  }

  for (size_t q = 0; q < parts.size(); ++q) {
    const Mat& block = parts[q].matrix;
    for (int i = 0; i < block.rows(); ++i)
      for (int j = 0; j < block.cols(); ++j)
        if (!block.at(i, j).is_zero())
          out.matrix.at(where[q][i], where[q][j]) = block.at(i, j);
  }
  if (with_pairing) {
    Mat omega(space.total_dim(), space.total_dim());
    for (size_t q = 0; q < parts.size(); ++q) {
      const Mat& po = *parts[q].pairing;
      for (int i = 0; i < po.rows(); ++i)
        for (int j = 0; j < po.cols(); ++j)
          if (!po.at(i, j).is_zero())
            omega.at(where[q][i], where[q][j]) = po.at(i, j);
    }
    out.pairing = std::move(omega);
  }
  return out;
}

namespace {

Subspace skew_complement(const Subspace& s, const Mat& omega) {
  return kernel(s.basis() * omega);
}

}  // namespace

SymplecticFlagCheck symplectic_flag_check(const FiltrationSpec& flag, const Mat& omega) {
  int n = flag.ambient_dim();
  if (omega.rows() != n || omega.cols() != n)
    throw std::invalid_argument("pairing has the wrong size for the flag");
  if (n == 0) return {true, 0};
  if (!(omega.transpose() == -omega))
    throw std::invalid_argument("pairing must be antisymmetric");
  if (rank(omega) != n)
    throw std::invalid_argument("pairing must be nondegenerate");

  // The endpoints force the reflection constant: the full step must reflect
  // onto the zero step and conversely, pinning c = lo + hi + 1. Everything
  // outside [lo, hi+1] then matches automatically.
  int c = flag.lo() + flag.hi() + 1;
  for (int j = flag.lo(); j <= flag.hi() + 1; ++j)
    if (!(skew_complement(flag.step(j), omega) == flag.step(c - j)))
      return {false, 0};
  return {true, ((c % 2) + 2) % 2};
}

Compatibility grading_compatibility(AmbientFamily family, const FiltrationSpec& flag,
                                    const std::optional<Mat>& omega) {
  switch (family) {
    case AmbientFamily::GeneralLinear:
    case AmbientFamily::SpecialLinear:
      return Compatibility::Compatible;
    case AmbientFamily::Symplectic:
    case AmbientFamily::ConformalSymplectic: {
      if (!omega.has_value())
        throw std::invalid_argument("symplectic compatibility needs the pairing");
      return symplectic_flag_check(flag, *omega).symplectic
                 ? Compatibility::Compatible
                 : Compatibility::Incompatible;
    }
    case AmbientFamily::Other:
      return Compatibility::Undecided;
  }
  throw std::invalid_argument("unknown ambient family");
}

}  // namespace tanaka
