#pragma once

// SVG 1.1 drawing of one bin: a 1000 x 1000 viewport, rect elements only.
// Coordinates are truncated decimals; the drawing is never read back.

#include <span>
#include <sstream>
#include <string>

#include "rectlb/geometry.hpp"

namespace rectlb {

inline constexpr int kSvgSize = 1000;

inline const char* group_fill(int group) {
  switch (group) {
    case 1: return "#9ecae1";
    case 2: return "#a1d99b";
    case 3: return "#fdae6b";
    case 4: return "#bcbddc";
    default: return "#d9d9d9";
  }
}

// 1000 * v truncated to six fractional digits, i.e. v to nine.
inline std::string svg_coord(const Scalar& v) { return to_decimal(v * Scalar(kSvgSize), 6); }

inline std::string render_svg(std::span<const Placement> placements) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgSize << "\" height=\"" << kSvgSize
     << "\" viewBox=\"0 0 " << kSvgSize << ' ' << kSvgSize << "\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << kSvgSize << "\" height=\"" << kSvgSize
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& p : placements) {
    // SVG y grows downward; the bin's y grows upward.
    const Scalar top = Scalar(1) - p.top();
    os << "  <rect x=\"" << svg_coord(p.x) << "\" y=\"" << svg_coord(top) << "\" width=\"" << svg_coord(p.width)
       << "\" height=\"" << svg_coord(p.height) << "\" fill=\"" << group_fill(p.type.group)
       << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rectlb
