#pragma once

// Machine-readable (JSON) and aligned-text rendering of every report type,
// plus the line-oriented set/cloud/series file formats.

#include <string>
#include <vector>

#include <json.hpp>

#include "apx/approx.hpp"
#include "apx/cutproject.hpp"
#include "apx/escape.hpp"
#include "apx/growth.hpp"
#include "apx/structure.hpp"

namespace apx {

using Json = nlohmann::json;

Json envelope(const Json& config, const Json& report);

Json json_of(const ElementSet& s);
Json json_of(const CoverCertificate& c);
Json json_of(const ApproxReport& r);
Json json_of(const Commensurability& r);
Json json_of(const ThicknessResult& r, const RingPtr& ring);
Json json_of(const BoundSuiteReport& r);
Json json_of(const DichotomyReport& r);
Json json_of(const NormValue& v);
Json json_of(const NormZeroReport& r);
Json json_of(const StrongNormReport& r, const RingPtr& ring);
Json json_of(const NilpotentCertificate& c);
Json json_of(const GrowthSeries& s);
Json json_of(const DegreeFit& f);
Json json_of(const GromovReport& r);
Json json_of(const CloudStats& s);
Json json_of(const PointCloud& cloud, bool include_points = false);
Json json_of(const CloudCoverReport& r);
Json json_of(const WindowCommensurability& r);
Json json_of(const SpanIdealReport& r);
Json json_of(const AlgebraCloudReport& r);

// Two-column aligned table for the human-readable summary.
std::string render_table(const std::vector<std::pair<std::string, std::string>>& rows);
std::string render_text(const Json& report, int indent = 0);

// Set files: one canonical element encoding per line, '#' comments ignored.
void write_set_file(const std::string& path, const ElementSet& s);
ElementSet read_set_file(const std::string& path, const RingPtr& ring);

// Clouds: "<element> <tab> <exact direct coordinates>" per line.
void write_cloud_file(const std::string& path, const PointCloud& cloud);
// 1D / 2D direct spaces only.
void write_cloud_svg(const std::string& path, const PointCloud& cloud);

// Growth series as two-column CSV (n, size).
void write_series_csv(const std::string& path, const GrowthSeries& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace apx
