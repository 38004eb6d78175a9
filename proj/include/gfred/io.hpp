#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfred/band_operator.hpp"
#include "gfred/convolution.hpp"
#include "gfred/gluing.hpp"
#include "gfred/groupoid.hpp"

// JSON document formats. Every reader throws InputError naming the file (or
// the JSON location) of the first problem.
namespace gfred::io {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "gfred-report/1";

Json read_json(const std::filesystem::path& path);

/// {"units": [...], "arrows": [{"id", "dom", "ran"}], "inverse": [[g, g⁻¹]],
///  "compose": [[g, h, gh]], "unit_arrows": {"x": id}}; ids are integers and
/// units are referenced by name. Missing unit arrows and inverses are inferred.
FiniteGroupoid groupoid_from_json(const Json& doc);
OrderedJson groupoid_to_json(const FiniteGroupoid& g);
FiniteGroupoid load_groupoid(const std::filesystem::path& path);

/// [[id, re, im], ...]
ArrowFunction function_from_json(const FiniteGroupoid& g, const Json& doc);
OrderedJson function_to_json(const ArrowFunction& f);

/// {"bandwidth": w, "diagonals": [{"offset", "limit_minus", "limit_plus",
///  "core": [[index, re, im]]}]}; a limit is a number or [re, im].
BandOperator band_from_json(const Json& doc);
OrderedJson band_to_json(const BandOperator& a);
BandOperator load_band(const std::filesystem::path& path);

/// {"cover": [["x", ...], ...]}
std::vector<UnitSubset> cover_from_json(const FiniteGroupoid& g, const Json& doc);
std::vector<UnitSubset> load_cover(const FiniteGroupoid& g, const std::filesystem::path& path);

/// {"units": [...], "pieces": [path or inline groupoid], "isos": [{"from": i,
///  "to": j, "arrows": [[id in i, id in j]]}]}; piece paths are relative to
/// `base`.
GluingFamily family_from_json(const Json& doc, const std::filesystem::path& base);
OrderedJson family_to_json(const GluingFamily& f);
GluingFamily load_family(const std::filesystem::path& path);

OrderedJson complex_to_json(Complex z);
OrderedJson report_header(const std::string& command);

}  // namespace gfred::io
