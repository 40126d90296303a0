#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace maskperc {

/// Node label. The numeric values match the 1 = masked, 2 = unmasked
/// convention used in files and CSV output.
enum class NodeType : std::uint8_t { masked = 1, unmasked = 2 };

constexpr std::size_t index_of(NodeType t) noexcept { return t == NodeType::masked ? 0 : 1; }
constexpr int label_of(NodeType t) noexcept { return static_cast<int>(t); }

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Directional transmissibilities: at(from, to) is the probability that an
/// infected `from` node infects a susceptible `to` neighbour.
struct TransmissionMatrix {
  Matrix2 t{};  // t[0] = masked infector row, t[1] = unmasked infector row

  double at(NodeType from, NodeType to) const noexcept { return t[index_of(from)][index_of(to)]; }
  double t11() const noexcept { return t[0][0]; }
  double t12() const noexcept { return t[0][1]; }
  double t21() const noexcept { return t[1][0]; }
  double t22() const noexcept { return t[1][1]; }
};

/// Baseline transmissibility with mask efficiencies.
///
/// T11 = inward * outward * T, T12 = outward * T, T22 = T. T21 is not fixed
/// by the factorization; the default completes it as inward * T (the
/// susceptible's mask protects, the infector has none), which makes the
/// next-generation matrix rank one. `t21_override` replaces that choice.
struct FactoredTransmission {
  double baseline = 0.0;
  double inward = 1.0;   // T_mask1: susceptible wears the mask
  double outward = 1.0;  // T_mask2: infector wears the mask
  std::optional<double> t21_override;

  TransmissionMatrix expand() const;
};

struct MaskModelParams {
  double m = 0.0;  // probability a node wears a mask
  TransmissionMatrix T;

  static MaskModelParams explicit_matrix(double m, double t11, double t12, double t21, double t22);
  static MaskModelParams factored(double m, const FactoredTransmission& f);

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
  /// T * diag(m, 1 - m).
  Matrix2 next_generation() const noexcept;
};

std::string to_string(NodeType t);

}  // namespace maskperc
