#include "mellg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace mellg {

namespace {

std::array<int, 3> sorted3(int a, int b, int c) {
  std::array<int, 3> f{a, b, c};
  std::sort(f.begin(), f.end());
  return f;
}

// face index -> (owning tet, opposite local vertex), for faces seen once
std::map<std::array<int, 3>, std::pair<int, int>> boundary_face_map(
    const std::vector<std::array<int, 4>>& tets) {
  std::map<std::array<int, 3>, std::pair<int, int>> seen;
  static const int local_faces[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  for (int k = 0; k < static_cast<int>(tets.size()); ++k) {
    for (int f = 0; f < 4; ++f) {
      auto key = sorted3(tets[k][local_faces[f][0]], tets[k][local_faces[f][1]],
                         tets[k][local_faces[f][2]]);
      auto it = seen.find(key);
      if (it == seen.end())
        seen.emplace(key, std::make_pair(k, f));
      else
        it->second.first = -1;  // interior
    }
  }
  for (auto it = seen.begin(); it != seen.end();) {
    if (it->second.first < 0)
      it = seen.erase(it);
    else
      ++it;
  }
  return seen;
}

}  // namespace

void Mesh::finalize() {
  const int nt = tet_count();
  const int nn = node_count();
  tet_volume.assign(nt, 0.0);
  tet_grad.assign(nt, {});
  lumped_weight = Eigen::VectorXd::Zero(nn);
  total_volume = 0;

  for (int k = 0; k < nt; ++k) {
    auto& t = tets[k];
    Mat3 e;
    e.col(0) = nodes[t[1]] - nodes[t[0]];
    e.col(1) = nodes[t[2]] - nodes[t[0]];
    e.col(2) = nodes[t[3]] - nodes[t[0]];
    double det = e.determinant();
    if (det < 0) {  // flip to positive orientation
      std::swap(t[2], t[3]);
      e.col(1) = nodes[t[2]] - nodes[t[0]];
      e.col(2) = nodes[t[3]] - nodes[t[0]];
      det = -det;
    }
    double vol = det / 6.0;
    if (!(vol > 1e-300))
      throw InvalidInput("mesh: degenerate tetrahedron " + std::to_string(k));
    tet_volume[k] = vol;
    total_volume += vol;

    Mat3 inv = e.inverse();  // rows = gradients of barycentric coords 1..3
    Vec3 g0 = Vec3::Zero();
    for (int a = 1; a < 4; ++a) {
      tet_grad[k][a] = inv.row(a - 1);
      g0 -= tet_grad[k][a];
    }
    tet_grad[k][0] = g0;

    for (int a = 0; a < 4; ++a) lumped_weight[t[a]] += vol / 4.0;
  }

  auto owners = boundary_face_map(tets);

  if (boundary_faces.empty()) {
    for (const auto& [key, owner] : owners) {
      BoundaryFace bf;
      bf.nodes = key;
      bf.tet = owner.first;
      bf.opposite = tets[owner.first][owner.second];
      boundary_faces.push_back(bf);
    }
  } else {
    for (auto& bf : boundary_faces) {
      auto key = sorted3(bf.nodes[0], bf.nodes[1], bf.nodes[2]);
      auto it = owners.find(key);
      if (it == owners.end())
        throw InvalidInput("mesh: labelled face is not a boundary face of exactly one tet");
      bf.tet = it->second.first;
      bf.opposite = tets[bf.tet][it->second.second];
      owners.erase(it);
    }
    // geometric boundary faces without a label
    for (const auto& [key, owner] : owners) {
      BoundaryFace bf;
      bf.nodes = key;
      bf.tet = owner.first;
      bf.opposite = tets[owner.first][owner.second];
      boundary_faces.push_back(bf);
    }
  }

  for (auto& bf : boundary_faces) {
    const Vec3 a = nodes[bf.nodes[0]];
    const Vec3 b = nodes[bf.nodes[1]];
    const Vec3 c = nodes[bf.nodes[2]];
    Vec3 n = (b - a).cross(c - a);
    bf.area = 0.5 * n.norm();
    if (!(bf.area > 1e-300)) throw InvalidInput("mesh: degenerate boundary face");
    n.normalize();
    const Vec3 centroid = (a + b + c) / 3.0;
    if (n.dot(centroid - nodes[bf.opposite]) < 0) n = -n;
    bf.normal = n;
  }
}

std::vector<char> Mesh::dirichlet_node_mask() const {
  std::vector<char> mask(node_count(), 0);
  for (const auto& bf : boundary_faces)
    if (bf.region == Region::dirichlet)
      for (int z : bf.nodes) mask[z] = 1;
  return mask;
}

double Mesh::neumann_area() const {
  double a = 0;
  for (const auto& bf : boundary_faces)
    if (bf.region == Region::neumann) a += bf.area;
  return a;
}

Mesh box_mesh(const Vec3& lengths, const std::array<int, 3>& divisions,
              const FacePredicate& dirichlet, const FacePredicate& neumann) {
  for (int d = 0; d < 3; ++d) {
    if (divisions[d] < 1) throw InvalidInput("box_mesh: divisions must be >= 1");
    if (!(lengths[d] > 0)) throw InvalidInput("box_mesh: lengths must be positive");
  }
  const int nx = divisions[0], ny = divisions[1], nz = divisions[2];
  const double hx = lengths[0] / nx, hy = lengths[1] / ny, hz = lengths[2] / nz;

  Mesh mesh;
  mesh.nodes.reserve((nx + 1) * (ny + 1) * (nz + 1));
  for (int iz = 0; iz <= nz; ++iz)
    for (int iy = 0; iy <= ny; ++iy)
      for (int ix = 0; ix <= nx; ++ix)
        mesh.nodes.emplace_back(ix * hx, iy * hy, iz * hz);

  auto id = [&](int ix, int iy, int iz) {
    return ix + (nx + 1) * (iy + (ny + 1) * iz);
  };

  // Kuhn split: 6 tets around the cell diagonal 000 -> 111, one per
  // permutation of the axis order; conforming across neighbouring cells.
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  mesh.tets.reserve(6 * nx * ny * nz);
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        for (const auto& perm : perms) {
          std::array<int, 3> corner{ix, iy, iz};
          std::array<int, 4> tet;
          tet[0] = id(corner[0], corner[1], corner[2]);
          for (int step = 0; step < 3; ++step) {
            ++corner[perm[step]];
            tet[step + 1] = id(corner[0], corner[1], corner[2]);
          }
          mesh.tets.push_back(tet);
        }
      }

  mesh.finalize();

  int n_dirichlet = 0;
  for (auto& bf : mesh.boundary_faces) {
    const Vec3 centroid =
        (mesh.nodes[bf.nodes[0]] + mesh.nodes[bf.nodes[1]] + mesh.nodes[bf.nodes[2]]) / 3.0;
    if (dirichlet && dirichlet(centroid)) {
      bf.region = Region::dirichlet;
      ++n_dirichlet;
    } else if (neumann && neumann(centroid)) {
      bf.region = Region::neumann;
    } else {
      bf.region = Region::other;
    }
  }
  if (n_dirichlet == 0)
    throw InvalidInput("box_mesh: predicates classified no face as Dirichlet");
  return mesh;
}

}  // namespace mellg
