// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rackray/scene.hpp"

namespace rackray {

/// Parses a warehouse description. Keys mirror WarehouseParams; the optional
/// "preset": "paper-default" starts from the defaults and other keys override.
/// Unknown keys, bad types and invalid values throw ConfigError.
WarehouseParams parse_warehouse_json(std::string_view text);

/// Accepts "preset:paper-default" or a path to a JSON file.
/// Throws ConfigError (bad content) or IoError (unreadable file).
WarehouseParams load_warehouse(const std::string& spec);

std::string warehouse_to_json(const WarehouseParams& params);

}  // namespace rackray
