#pragma once

#include <map>
#include <string>

#include "mwr/convolve.hpp"
#include "mwr/field.hpp"
#include "mwr/geometry.hpp"

namespace mwr {

/// Polygon file: one "x y" vertex per line, counterclockwise, '#'
/// comments.
ConvexBody read_polygon_file(const std::string& path);
void write_polygon_file(const ConvexBody& body, const std::string& path);

/// Body literal: "disc cx cy r", "square halfwidth", or a polygon file
/// path.
ConvexBody parse_body_spec(const std::string& spec);

std::string describe_body(const ConvexBody& body);

/// Grid CSV ("x,y,value", in-body nodes only, row-major) plus a ".meta"
/// sidecar holding origin, h, nx, ny and the body description.
void write_grid_csv(const GridFunction& gf, const std::string& base_path);
GridFunction read_grid_csv(const std::string& base_path);

/// Argmax CSV for convolution results: "x,y,x0,y0,x1,y1,value".
void write_argmax_csv(const ConvolutionResult& result, const std::string& path);

/// Plain key=value file, '#' comments.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

}  // namespace mwr
