#pragma once

#include <string>

#include "json.hpp"

#include "towerplan/pipeline.hpp"

namespace towerplan {

using ReportJson = nlohmann::ordered_json;

/// Priority map per cell. Identical to report["classify"].
ReportJson classify_document(const PlanResult& result);

/// Rules per non-empty square. Identical to report["mine"].
ReportJson mine_document(const PlanResult& result);

/// Full placement report. Key order is fixed, so dumping the same result
/// always yields the same bytes.
ReportJson plan_report(const PlanResult& result);

/// Pretty-printed JSON text with a trailing newline.
std::string dump(const ReportJson& doc);

/// SVG map: cell and square lattice, footprints shaded, uncovered squares
/// hatched, chosen squares highlighted. Needs a Full-depth result.
std::string render_svg(const PlanResult& result);

}  // namespace towerplan
