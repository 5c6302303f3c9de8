#pragma once

#include <string>

#include "tda/persistence.hpp"

namespace tda {

/// Static scatter of (birth, death) with the diagonal, one marker shape per
/// dimension. Essential points are drawn on a dashed line above the finite
/// ones. Output depends only on the diagram.
std::string diagram_svg(const PersistenceDiagram& diagram, const std::string& title = {});

}  // namespace tda
