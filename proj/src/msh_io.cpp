#include <fstream>
#include <sstream>

#include "mellg/mesh.hpp"

namespace mellg {

namespace {

struct LineReader {
  std::ifstream in;
  int line_no = 0;
  std::string section = "(preamble)";

  explicit LineReader(const std::string& path) : in(path) {}

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("msh: " + what + " (section " + section + ", line " +
                     std::to_string(line_no) + ")");
  }
};

}  // namespace

Mesh read_msh(const std::string& path, const std::map<int, Region>& tag_to_region) {
  LineReader r(path);
  if (!r.in) throw ParseError("msh: cannot open " + path);

  Mesh mesh;
  std::map<long, int> node_id_map;  // MSH ids are 1-based and may be sparse
  std::string line;

  while (r.next(line)) {
    if (line == "$MeshFormat") {
      r.section = "$MeshFormat";
      if (!r.next(line)) r.fail("truncated header");
      std::istringstream is(line);
      std::string version;
      int file_type = -1, data_size = -1;
      is >> version >> file_type >> data_size;
      if (version != "2.2" || file_type != 0)
        r.fail("unsupported format '" + line + "', need ASCII 2.2");
      if (!r.next(line) || line != "$EndMeshFormat") r.fail("missing $EndMeshFormat");
    } else if (line == "$Nodes") {
      r.section = "$Nodes";
      if (!r.next(line)) r.fail("truncated node count");
      long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!r.next(line)) r.fail("truncated node list");
        std::istringstream is(line);
        long id;
        double x, y, z;
        if (!(is >> id >> x >> y >> z)) r.fail("malformed node line");
        node_id_map[id] = mesh.node_count();
        mesh.nodes.emplace_back(x, y, z);
      }
      if (!r.next(line) || line != "$EndNodes") r.fail("missing $EndNodes");
    } else if (line == "$Elements") {
      r.section = "$Elements";
      if (!r.next(line)) r.fail("truncated element count");
      long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!r.next(line)) r.fail("truncated element list");
        std::istringstream is(line);
        long id;
        int type, ntags;
        if (!(is >> id >> type >> ntags)) r.fail("malformed element line");
        std::vector<int> tags(ntags);
        for (int t = 0; t < ntags; ++t)
          if (!(is >> tags[t])) r.fail("malformed element tags");

        auto read_node = [&]() {
          long nid;
          if (!(is >> nid)) r.fail("malformed element connectivity");
          auto it = node_id_map.find(nid);
          if (it == node_id_map.end()) r.fail("element references unknown node");
          return it->second;
        };

        if (type == 2) {
          BoundaryFace bf;
          for (int a = 0; a < 3; ++a) bf.nodes[a] = read_node();
          bf.region = Region::other;
          if (ntags > 0) {
            auto it = tag_to_region.find(tags[0]);
            if (it != tag_to_region.end()) bf.region = it->second;
          }
          mesh.boundary_faces.push_back(bf);
        } else if (type == 4) {
          std::array<int, 4> tet;
          for (int a = 0; a < 4; ++a) tet[a] = read_node();
          mesh.tets.push_back(tet);
        } else {
          r.fail("unsupported element type " + std::to_string(type));
        }
      }
      if (!r.next(line) || line != "$EndElements") r.fail("missing $EndElements");
    } else if (!line.empty() && line[0] == '$') {
      // skip unknown section
      r.section = line;
      std::string end = "$End" + line.substr(1);
      while (r.next(line) && line != end) {
      }
    }
  }

  if (mesh.nodes.empty()) throw ParseError("msh: no $Nodes section in " + path);
  if (mesh.tets.empty()) throw ParseError("msh: no tetrahedra in " + path);
  mesh.finalize();
  return mesh;
}

void write_msh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("msh: cannot write " + path);
  out.precision(17);

  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  out << "$Nodes\n" << mesh.node_count() << "\n";
  for (int z = 0; z < mesh.node_count(); ++z) {
    const Vec3& p = mesh.nodes[z];
    out << z + 1 << " " << p.x() << " " << p.y() << " " << p.z() << "\n";
  }
  out << "$EndNodes\n$Elements\n"
      << mesh.boundary_faces.size() + mesh.tets.size() << "\n";
  long id = 1;
  auto tag_of = [](Region r) {
    switch (r) {
      case Region::dirichlet: return 1;
      case Region::neumann: return 2;
      default: return 3;
    }
  };
  for (const auto& bf : mesh.boundary_faces) {
    out << id++ << " 2 2 " << tag_of(bf.region) << " 0";
    for (int z : bf.nodes) out << " " << z + 1;
    out << "\n";
  }
  for (const auto& tet : mesh.tets) {
    out << id++ << " 4 2 0 0";
    for (int z : tet) out << " " << z + 1;
    out << "\n";
  }
  out << "$EndElements\n";
  if (!out) throw std::runtime_error("msh: write failed for " + path);
}

}  // namespace mellg
