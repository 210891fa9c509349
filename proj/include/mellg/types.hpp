#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mellg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Vector-valued P1 field: 3 components per mesh node, interleaved (x,y,z).
using NodalField = Eigen::VectorXd;

inline Eigen::Ref<Vec3> node(NodalField& f, int z) { return f.segment<3>(3 * z); }
inline Vec3 node(const NodalField& f, int z) { return f.segment<3>(3 * z); }
inline int node_count(const NodalField& f) { return static_cast<int>(f.size() / 3); }

// Spatially varying data (volume force, traction, applied field); empty = zero.
using VecFieldFn = std::function<Vec3(const Vec3&)>;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintViolation : std::runtime_error {
  int node_index;
  ConstraintViolation(int z, const std::string& msg)
      : std::runtime_error(msg), node_index(z) {}
};

struct SolveError : std::runtime_error {
  double residual;
  std::vector<double> history;
  SolveError(const std::string& msg, double res, std::vector<double> hist = {})
      : std::runtime_error(msg), residual(res), history(std::move(hist)) {}
};

// 64-bit LCG (MMIX multiplier), top 53 bits mapped to [0,1).
// Bit-reproducible across platforms, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  double uniform01() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  Vec3 cube_vec() { return Vec3(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)); }

 private:
  std::uint64_t state_;
};

inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

}  // namespace mellg
