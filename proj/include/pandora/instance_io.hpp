#pragma once

#include <string>

#include "pandora/model.hpp"

namespace pandora {

// Instance files are JSON, schema_version 1:
//   {"schema_version": 1,
//    "variant": {"objective": "min", "commitment": false,
//                "observation_cost": true, "order_selection": false},
//    "boxes": [{"cost": 1.0, "dist": [[0.0, 0.5], [2.0, 0.5]]}]}
// Parsing is strict: unknown fields anywhere are rejected, not ignored.
// emit followed by parse reproduces the instance exactly.
std::string emit_instance(const Instance& instance);
Instance parse_instance(const std::string& text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& instance, const std::string& path);

}  // namespace pandora
