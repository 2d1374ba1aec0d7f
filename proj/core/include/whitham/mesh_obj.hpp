#pragma once

#include <iosfwd>
#include <string>

#include "whitham/immersion.hpp"

namespace whitham {

// Wavefront OBJ export of the immersion grids under stereographic
// projection from (-1, 0, 0, 0); the identity frame maps to the origin.
// Each grid cell whose four corners are valid becomes two triangles.
// Symmetry metadata goes into leading comments. Throws domain_error when a
// vertex collides with the projection pole.
void write_mesh_obj(std::ostream& os, const ImmersionPatch& patch);

std::string mesh_obj_string(const ImmersionPatch& patch);

}  // namespace whitham
