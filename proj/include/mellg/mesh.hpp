#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mellg/types.hpp"

namespace mellg {

enum class Region { dirichlet, neumann, other };

struct BoundaryFace {
  std::array<int, 3> nodes;
  Region region = Region::other;
  int tet = -1;       // owning tetrahedron
  int opposite = -1;  // vertex of `tet` not on the face
  double area = 0;
  Vec3 normal = Vec3::Zero();  // unit, outward
};

/// Conforming tetrahedral mesh with labelled boundary faces. Geometry
/// tables (volumes, constant barycentric gradients, lumped node weights,
/// face areas/normals) are computed once by finalize() and immutable
/// afterwards.
struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 4>> tets;
  std::vector<BoundaryFace> boundary_faces;

  std::vector<double> tet_volume;
  std::vector<std::array<Vec3, 4>> tet_grad;  // gradients of the 4 vertex basis functions
  Eigen::VectorXd lumped_weight;              // w_z = sum_{K owns z} |K|/4

  double total_volume = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int tet_count() const { return static_cast<int>(tets.size()); }

  /// Orients tets positively, computes geometry tables, finds boundary
  /// faces (when not already present) and checks mesh invariants.
  /// Throws InvalidInput on a degenerate element, identifying it.
  void finalize();

  /// True per node touched by a Dirichlet face.
  std::vector<char> dirichlet_node_mask() const;

  double neumann_area() const;
};

using FacePredicate = std::function<bool(const Vec3&)>;

/// Structured box [0,L1]x[0,L2]x[0,L3], each hex cell split into 6
/// tetrahedra sharing the main diagonal (conforming across cells).
/// Boundary faces are classified by the predicates evaluated at face
/// centroids; Dirichlet wins over Neumann, unmatched faces get `other`.
/// Throws InvalidInput if no face is classified Dirichlet.
Mesh box_mesh(const Vec3& lengths, const std::array<int, 3>& divisions,
              const FacePredicate& dirichlet, const FacePredicate& neumann);

/// ASCII Gmsh MSH 2.2 subset: $MeshFormat / $Nodes / $Elements with
/// element types 2 (boundary triangle, labelled through the physical tag
/// and the given table) and 4 (tetrahedron). Unlabelled geometric
/// boundary faces get Region::other.
Mesh read_msh(const std::string& path, const std::map<int, Region>& tag_to_region);

/// Writes the MSH 2.2 counterpart of read_msh; boundary faces carry
/// physical tags 1 (Dirichlet), 2 (Neumann), 3 (other).
void write_msh(const Mesh& mesh, const std::string& path);

}  // namespace mellg
