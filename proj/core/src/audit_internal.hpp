#pragma once

#include <functional>
#include <vector>

#include "hvlab/audit.hpp"

namespace hvlab::detail {

/// Builds the report from a zero mask in the layout of ctx.zero_mask_of.
/// `poly` is only called when a check needs the polynomial itself (quadric
/// splitting, plane-union test at Sorensen equality).
AuditReport audit_mask(const std::vector<std::uint8_t>& mask, const AuditContext& ctx,
                       const std::function<const HomogeneousPoly&()>& poly, bool classify_quadrics);

HomogeneousPoly poly_from_coeffs(const FieldPtr& f, const std::vector<Monomial>& monos, std::span<const Elem> coeffs);

}  // namespace hvlab::detail
