#pragma once

#include <string>

#include "nlscat/grid.hpp"

namespace nlscat {

/// File layout: one JSON header line {d, L, N, description}, then CSV rows
/// x_1,...,x_d,Re,Im in row-major grid order.
void write_field(const std::string& path, const Field& f, const std::string& description = "");
Field read_field(const std::string& path);

}  // namespace nlscat
