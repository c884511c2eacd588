#pragma once

#include <string>
#include <vector>

#include "conecalc/cone.hpp"

namespace conecalc {

struct PlotWindow {
  Rational x0, x1, y0, y1;   // y range unused in rank 1
};

// "a:b" (rank 1) or "a:b,c:d" (rank 2).
PlotWindow parse_window(const std::string& text, std::size_t rank);

// Cone-term outline drawn over the heatmap; flipped rays are highlighted.
struct Overlay {
  RationalPoint apex;
  std::vector<WeightVector> rays;
  std::vector<bool> flipped;
};

// Rank 2: heatmap of exact densities on a res x res grid of jittered generic
// points. Rank 1: the density graph through res generic points. Every probe
// carries its exact point and density as data-x / data-y / data-density.
std::string render_svg(const SignedConeSum& sum, const std::vector<Overlay>& overlays, const PlotWindow& window,
                       unsigned res, std::uint64_t seed, const std::string& title);

}  // namespace conecalc
