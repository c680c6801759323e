#include "hvlab/bounds.hpp"

#include "hvlab/errors.hpp"

namespace hvlab {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

const std::vector<BoundInfo>& bound_catalog() {
  static const std::vector<BoundInfo> cat = {
      {BoundName::Serre, "d*s^(m-1) + (s^(m-1)-1)/(s-1)", "|V(F)| in P^m", "d <= s"},
      {BoundName::LachaudRolland, "deg * (1 + s + ... + s^delta)", "|V(F) ∩ V|", "V not contained in V(F)"},
      {BoundName::AubryPerret, "|N - (s+1)| <= (d-1)(d-2)q", "plane curve points", "absolutely irreducible plane curve"},
      {BoundName::Sorensen, "d(q^3+q^2-q)+q+1", "|V(F) ∩ V_2| in P^3", "d <= q; strict unless V(F) is a union of planes"},
      {BoundName::EdoukouQuadric, "2q^5+q^3+2q^2+1", "|V(F) ∩ V_3|", "d = 2"},
      {BoundName::EdoukouConjecture, "d(q^5+q^2)+q^3+1", "|V(F) ∩ V_3|", "d <= q (conjectural in general)"},
      {BoundName::DegenerateSurface, "d(q+1)q^2+1", "|V(F) ∩ V_2'| in P^3", "d <= q, rank-3 form"},
      {BoundName::NoGenerator, "d(q^5+1)", "|V(F) ∩ V_3|", "no generator in V(F)"},
      {BoundName::ContainsPlaneNoHyperplane, "(d-1)q^5+(d-1)q^4+dq^3+dq^2+1", "|V(F) ∩ V_3|",
       "plane in V(F), no hyperplane"},
      {BoundName::DGeneratorsInPlane, "dq^5-q^4+dq^3+dq^2+1", "|V(F) ∩ V_3|",
       "no plane in V(F); some plane section of V(F) holds d generators"},
      {BoundName::AtMostOneGenerator, "(d-1)q^5+q^2+(d-1)q^3+(d-1)q+1", "|V(F) ∩ V_3|",
       "no plane in V(F); every plane section holds at most one generator"},
      {BoundName::TangentLineCase, "(d-1)q^5+(d-1)q^4+dq^3+dq^2+1", "|V(F) ∩ V_3|",
       "tangent line in V(F), no plane"},
      {BoundName::TangentSectionCase, "2q^3+6q^2-3q-4", "|T_P ∩ V(F) ∩ V_3|",
       "cubic, generator through P in V(F), no cone in T_P ∩ V(F) (not applied automatically)"},
      {BoundName::MainCubic, "3(q^5+q^2)+q^3+1", "|V(F) ∩ V_3|", "d = 3 and (q >= 7 or V(F) contains a hyperplane)"},
  };
  return cat;
}

const char* to_string(BoundName b) noexcept {
  switch (b) {
    case BoundName::Serre: return "Serre";
    case BoundName::LachaudRolland: return "LachaudRolland";
    case BoundName::AubryPerret: return "AubryPerret";
    case BoundName::Sorensen: return "Sorensen";
    case BoundName::EdoukouQuadric: return "EdoukouQuadric";
    case BoundName::EdoukouConjecture: return "EdoukouConjecture";
    case BoundName::DegenerateSurface: return "DegenerateSurface";
    case BoundName::NoGenerator: return "NoGenerator";
    case BoundName::ContainsPlaneNoHyperplane: return "ContainsPlaneNoHyperplane";
    case BoundName::DGeneratorsInPlane: return "DGeneratorsInPlane";
    case BoundName::AtMostOneGenerator: return "AtMostOneGenerator";
    case BoundName::TangentLineCase: return "TangentLineCase";
    case BoundName::TangentSectionCase: return "TangentSectionCase";
    case BoundName::MainCubic: return "MainCubic";
  }
  return "?";
}

std::optional<BoundName> bound_from_string(std::string_view s) noexcept {
  for (const auto& info : bound_catalog()) {
    if (s == to_string(info.name)) return info.name;
  }
  return std::nullopt;
}

std::uint64_t p_delta(std::uint64_t s, int delta) {
  std::uint64_t acc = 0;
  std::uint64_t pw = 1;
  for (int i = 0; i <= delta; ++i, pw *= s) acc += pw;
  return acc;
}

std::int64_t bound_value(BoundName b, const BoundParams& p) {
  const auto q = static_cast<std::int64_t>(p.q);
  const auto d = static_cast<std::int64_t>(p.d);
  if (q < 2) throw Error(Errc::InvalidArgument, "bound formulas need q >= 2");
  const std::int64_t s = q * q;
  const std::int64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
  switch (b) {
    case BoundName::Serre: return d * ipow(s, p.m - 1) + (ipow(s, p.m - 1) - 1) / (s - 1);
    case BoundName::LachaudRolland:
      return static_cast<std::int64_t>(p.deg) * static_cast<std::int64_t>(p_delta(static_cast<std::uint64_t>(s), p.delta));
    case BoundName::AubryPerret: return (d - 1) * (d - 2) * q;
    case BoundName::Sorensen: return d * (q3 + q2 - q) + q + 1;
    case BoundName::EdoukouQuadric: return 2 * q5 + q3 + 2 * q2 + 1;
    case BoundName::EdoukouConjecture: return d * (q5 + q2) + q3 + 1;
    case BoundName::DegenerateSurface: return d * (q + 1) * q2 + 1;
    case BoundName::NoGenerator: return d * (q5 + 1);
    case BoundName::ContainsPlaneNoHyperplane:
    case BoundName::TangentLineCase: return (d - 1) * q5 + (d - 1) * q4 + d * q3 + d * q2 + 1;
    case BoundName::DGeneratorsInPlane: return d * q5 - q4 + d * q3 + d * q2 + 1;
    case BoundName::AtMostOneGenerator: return (d - 1) * q5 + q2 + (d - 1) * q3 + (d - 1) * q + 1;
    case BoundName::TangentSectionCase: return 2 * q3 + 6 * q2 - 3 * q - 4;
    case BoundName::MainCubic: return 3 * (q5 + q2) + q3 + 1;
  }
  throw Error(Errc::InvalidArgument, "unknown bound");
}

}  // namespace hvlab
