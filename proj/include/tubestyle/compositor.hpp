#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "tubestyle/raster.hpp"

namespace tubestyle {

class CompositeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per pixel, keeps the fragment with the smaller (depth, provenance) key.
// Throws CompositeError on a size mismatch.
void composite_pair(FrameTile& acc, const FrameTile& incoming);
FrameTile composited(const FrameTile& acc, const FrameTile& incoming);

// Left fold of composite_pair over tiles taken in arrivalOrder (a permutation of
// tile indices; empty means natural order).
FrameTile composite_all(std::span<const FrameTile> tiles, std::span<const std::size_t> arrivalOrder = {});

}  // namespace tubestyle
