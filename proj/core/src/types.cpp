#include "coderiv/types.hpp"

namespace coderiv {

int dimension(MapId map) { return map == MapId::F2 ? 2 : 4; }

std::string_view to_string(MapId map) {
  switch (map) {
    case MapId::F2:
      return "f";
    case MapId::G4:
      return "g";
    case MapId::H4:
      return "h";
  }
  return "?";
}

MapId parse_map_id(std::string_view text) {
  if (text == "f" || text == "F2") return MapId::F2;
  if (text == "g" || text == "G4") return MapId::G4;
  if (text == "h" || text == "H4") return MapId::H4;
  throw ConfigError("unknown map '" + std::string(text) + "' (expected f, g or h)");
}

}  // namespace coderiv
