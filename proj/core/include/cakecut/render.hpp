#ifndef CAKECUT_RENDER_HPP
#define CAKECUT_RENDER_HPP

#include <string>

#include "cakecut/allocation.hpp"

namespace cakecut {

/// Draws the density triangles over [0,1] as an SVG 1.1 document; when an
/// allocation is given, each agent's pieces are filled under her own density
/// with a per-agent style. Output bytes are deterministic for fixed inputs.
std::string render_svg(const CakeInstance& instance, const Allocation* allocation = nullptr);

}  // namespace cakecut

#endif
