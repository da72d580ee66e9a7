#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gamesh/mesh.hpp"

namespace gamesh {

// Mesh files: OBJ (read/write) and OFF (read only), picked by extension.
// Malformed input throws std::runtime_error carrying "<name>:<line>: ...".
IndexedMesh read_mesh(const std::string& path);
IndexedMesh read_obj(std::istream& in, const std::string& name);
IndexedMesh read_off(std::istream& in, const std::string& name);

// Always writes OBJ, floats at 9 significant digits. Reading the output back
// and writing it again reproduces the bytes exactly.
void write_mesh(const IndexedMesh& mesh, const std::string& path);
void write_obj(const IndexedMesh& mesh, std::ostream& out);

// Point clouds: XYZ text, three floats per line, '#' starts a comment.
// Line order is preserved; point identity is positional.
std::vector<Vec3> read_points(const std::string& path);
std::vector<Vec3> read_xyz(std::istream& in, const std::string& name);
void write_points(const std::vector<Vec3>& points, const std::string& path);
void write_xyz(const std::vector<Vec3>& points, std::ostream& out);

} // namespace gamesh
