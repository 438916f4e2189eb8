#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "quartic/continuation.hpp"
#include "quartic/spectral.hpp"

namespace cli {

using json = nlohmann::ordered_json;
using quartic::cplx;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kOutDirVariable = "QUARTIC_OUT_DIR";

// Malformed user input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(cplx z);
json to_json(const quartic::spectral::AsymptoticValue& w);
// Accepts {"re": x, "im": y} or a plain number.
cplx complex_from_json(const json& j);
// Accepts "1.5", "-2i", "1-2i", "1,2", "i", or a JSON object {"re","im"}.
cplx parse_complex(std::string_view text);

quartic::Parity parse_parity(std::string_view text);

// A piece {"kind": "polyline", "points": [...]} or {"kind": "circle",
// "center", "radius", "turns", "start_angle"}; a route is a piece or an
// array of pieces.
quartic::continuation::PathSpec path_from_json(const json& j);
json to_json(const quartic::continuation::PathSpec& p);
quartic::continuation::Route route_from_json(const json& j);
// Reads inline JSON text or, when it names an existing file, that file.
json load_json_argument(const std::string& text);

json to_json(const quartic::continuation::ContinuationTrace& trace);
// Columns t, re_alpha, im_alpha, re_lambda, im_lambda, residual.
void write_trace_csv(const quartic::continuation::ContinuationTrace& trace, const std::filesystem::path& file);

std::string utc_timestamp();

// Output directory: the flag if given, else the environment variable,
// else the working directory.
std::filesystem::path output_directory(const std::string& flag);

}  // namespace cli
