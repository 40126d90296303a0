#include "maskperc/mask_model.hpp"

#include <cmath>
#include <stdexcept>

namespace maskperc {
namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

}  // namespace

TransmissionMatrix FactoredTransmission::expand() const {
  TransmissionMatrix m;
  m.t[0][0] = inward * outward * baseline;
  m.t[0][1] = outward * baseline;
  m.t[1][0] = t21_override.value_or(inward * baseline);
  m.t[1][1] = baseline;
  return m;
}

MaskModelParams MaskModelParams::explicit_matrix(double m, double t11, double t12, double t21,
                                                 double t22) {
  MaskModelParams p;
  p.m = m;
  p.T.t = {{{t11, t12}, {t21, t22}}};
  p.validate();
  return p;
}

MaskModelParams MaskModelParams::factored(double m, const FactoredTransmission& f) {
  check_probability(f.baseline, "T");
  check_probability(f.inward, "T_mask1");
  check_probability(f.outward, "T_mask2");
  MaskModelParams p;
  p.m = m;
  p.T = f.expand();
  p.validate();
  return p;
}

void MaskModelParams::validate() const {
  check_probability(m, "m");
  check_probability(T.t11(), "T11");
  check_probability(T.t12(), "T12");
  check_probability(T.t21(), "T21");
  check_probability(T.t22(), "T22");
}

Matrix2 MaskModelParams::next_generation() const noexcept {
  return {{{T.t11() * m, T.t12() * (1.0 - m)}, {T.t21() * m, T.t22() * (1.0 - m)}}};
}

std::string to_string(NodeType t) { return t == NodeType::masked ? "masked" : "unmasked"; }

}  // namespace maskperc
