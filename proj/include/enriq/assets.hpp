#ifndef ENRIQ_ASSETS_HPP
#define ENRIQ_ASSETS_HPP

#include <string>
#include <vector>

namespace enriq {

// Text of an embedded data asset (builtin surface files, normal forms).
const std::string& embedded_asset(const std::string& name);
std::vector<std::string> embedded_asset_names();

} // namespace enriq

#endif
