#pragma once

#include "sharpmax/dstruct.hpp"
#include "sharpmax/holder.hpp"
#include "sharpmax/mmspace.hpp"

#include <json.hpp>

#include <string>

namespace sharpmax {

/// Space document text to a validated space. Syntax problems raise ParseError
/// naming the line; content problems raise ValidationError naming the field.
MetricMeasureSpace parse_space(const std::string& text, const std::string& source = "space");

/// A file path, or a generator spec: grid:WxH, path:N, cycle:N, tree:DEPTH
/// (an optional @SPACING suffix scales edge lengths).
MetricMeasureSpace load_space(const std::string& arg);

HolderFunction parse_function(const std::string& text, const MetricMeasureSpace& space,
                              const std::string& source = "function");
GradientCandidate parse_gradient(const std::string& text, const MetricMeasureSpace& space,
                                 const std::string& source = "gradient");

nlohmann::json space_to_json(const MetricMeasureSpace& space);
nlohmann::json function_to_json(const HolderFunction& f);
nlohmann::json gradient_to_json(const GradientCandidate& g);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);

/// Serializes with every number printed as %.17g; non-finite numbers become the
/// strings "inf", "-inf" and "nan".
std::string dump_json(const nlohmann::json& doc, int indent = 2);

/// Number formatting shared by every text output.
std::string format_number(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sharpmax
