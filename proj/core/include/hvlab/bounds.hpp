#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hvlab {

enum class BoundName {
  Serre,
  LachaudRolland,
  AubryPerret,
  Sorensen,
  EdoukouQuadric,
  EdoukouConjecture,
  DegenerateSurface,
  NoGenerator,
  ContainsPlaneNoHyperplane,
  DGeneratorsInPlane,
  AtMostOneGenerator,
  TangentLineCase,
  TangentSectionCase,
  MainCubic,
};

const char* to_string(BoundName b) noexcept;
std::optional<BoundName> bound_from_string(std::string_view s) noexcept;

/// Inputs to a closed form. `s` is the field size q^2 throughout; `deg` and
/// `delta` are the degree and dimension used by LachaudRolland.
struct BoundParams {
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  int m = 4;
  std::uint64_t deg = 0;
  int delta = 0;
};

struct BoundInfo {
  BoundName name;
  const char* formula;
  const char* scope;       // what is counted
  const char* hypothesis;  // when the audit applies it
};

const std::vector<BoundInfo>& bound_catalog();

/// Closed-form value. AubryPerret returns the allowed deviation
/// (d-1)(d-2)q from s+1 rather than a ceiling.
std::int64_t bound_value(BoundName b, const BoundParams& p);

/// 1 + s + ... + s^delta.
std::uint64_t p_delta(std::uint64_t s, int delta);

}  // namespace hvlab
