#pragma once

#include <map>
#include <string>

#include "twsm/core.hpp"

namespace twsm {

// PFM, single channel ("Pf"), rows bottom-up, scale sign encodes endianness.
// NaN payload values become invalid pixels on read.
Grid<float> read_pfm(const std::string& path);
void write_pfm(const std::string& path, const Grid<float>& grid);

DisparityMap read_pfm_disparity(const std::string& path);
void write_pfm_disparity(const std::string& path, const DisparityMap& map);

// 16-bit single-channel PNG, stored value = round(256 * disparity), 0 invalid.
DisparityMap read_disp_png(const std::string& path);
void write_disp_png(const std::string& path, const DisparityMap& map);

// Picks PFM or 16-bit PNG by file extension.
DisparityMap read_disparity_auto(const std::string& path);

// 8/16-bit PNG (gray or RGB) and binary PGM/PPM, scaled to [0,1].
ImagePlane read_image(const std::string& path);
void write_image(const std::string& path, const ImagePlane& img);

// Flat key=value config text; '#' starts a comment line.
std::map<std::string, std::string> parse_key_value(const std::string& text);

}  // namespace twsm
