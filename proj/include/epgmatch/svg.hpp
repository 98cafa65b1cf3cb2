#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epgmatch/matching.hpp"
#include "epgmatch/pareto_grid.hpp"

namespace epgmatch {

// Standalone SVG of one or more extended Pareto grids, optionally with a
// filtering line overlaid. Proper contours solid, improper half-lines clipped
// at the canvas; colors keyed by owner. No timestamps or other run metadata.
std::string epg_svg(const std::vector<const ExtendedParetoGrid*>& grids,
                    const std::optional<LineParam>& line);
void write_epg_svg(const std::vector<const ExtendedParetoGrid*>& grids,
                   const std::optional<LineParam>& line, const std::string& path);

// Heatmap of a lattice evaluation log (one rect per cell) with the argmax
// marked. Entries must form a full na x nb lattice in row-major (a,b) order.
std::string heatmap_svg(const std::vector<EvalEntry>& log, int na, int nb,
                        const LineParam& argmax);
void write_heatmap_svg(const std::vector<EvalEntry>& log, int na, int nb,
                       const LineParam& argmax, const std::string& path);

}  // namespace epgmatch
