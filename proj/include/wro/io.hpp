#pragma once

#include "wro/forms.hpp"
#include "wro/green.hpp"
#include "wro/homogeneous.hpp"
#include "wro/path.hpp"
#include "wro/spectrum.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace wro::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// "%.17g"; NaN and infinities become "nan", "inf", "-inf".
std::string format_double(double x);

/// Serializes with every floating-point number at 17 significant digits
/// (non-finite numbers as null). Keys keep insertion order.
std::string dump(const json& value, int indent = 2);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

json to_json(const BrownianPath& path);
BrownianPath path_from_json(const json& j);
BrownianPath load_path(const std::filesystem::path& file);

json to_json(const FormInequalityReport& report);
json to_json(const SpectrumReport& report);
json to_json(const EnsembleReport& report);
json to_json(const WongZakaiReport& report);
/// {kind, factor, n, min_alpha, diag_continuity_error}
json kernel_summary(const GreenKernel& kernel);

/// Columns t, value, d1, d2 (missing derivatives left empty).
std::string function_csv(const SampledFunction& f);
/// Columns t, u, v, u_prime, v_prime, alpha.
std::string homogeneous_csv(const HomogeneousSolutions& sol);
/// Header "t\s,<s_0>,...,<s_n>", then one row "<t_i>,G(t_i,s_0),...".
std::string kernel_csv(const GreenKernel& kernel);
/// Columns index, lambda, abs_lambda.
std::string spectrum_csv(const SpectrumReport& report);
/// Columns path_index, seed, lambda_1..lambda_k.
std::string ensemble_csv(const EnsembleReport& report);

}  // namespace wro::io
