#pragma once

#include <string>

#include "fmn/frames.hpp"

namespace fmn {

/// Frame pictures: a circular-embedding SVG plus a Graphviz DOT document.
/// Word colour encodes valence (negative blue, positive cyan, neutral
/// black); association colour encodes the edge class (negative red,
/// positive cyan, neutral black, contrastive purple). Output is a pure
/// function of the frame: no randomness, no timestamps.
struct RenderedFrame {
  std::string svg;
  std::string dot;
};

RenderedFrame render_frame(const SemanticFrame& frame);

const char* node_colour(int label);
const char* edge_colour(EdgeClass cls);

}  // namespace fmn
