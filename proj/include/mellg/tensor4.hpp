#pragma once

#include <array>
#include <cmath>

#include "mellg/types.hpp"

namespace mellg {

enum class Sym { none, minor, full };

/// Dense fourth-order tensor on R^3 with a declared symmetry class.
///
/// Storage is the full 81-component array; the symmetry tag is validated,
/// not exploited for packing. Index convention: comp(i,j,l,m) with all
/// indices in {0,1,2}. `minor` means invariance under i<->j and l<->m,
/// `full` adds invariance under (i,j)<->(l,m).
template <typename Scalar>
class Tensor4 {
 public:
  Tensor4() : sym_(Sym::none) { comp_.fill(Scalar(0)); }
  explicit Tensor4(Sym s) : sym_(s) { comp_.fill(Scalar(0)); }

  Scalar& operator()(int i, int j, int l, int m) { return comp_[idx(i, j, l, m)]; }
  Scalar operator()(int i, int j, int l, int m) const { return comp_[idx(i, j, l, m)]; }

  Sym sym() const { return sym_; }
  void set_sym(Sym s) { sym_ = s; }

  bool is_minor_symmetric(Scalar tol = Scalar(0)) const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          for (int m = 0; m < 3; ++m) {
            if (std::abs((*this)(i, j, l, m) - (*this)(j, i, l, m)) > tol) return false;
            if (std::abs((*this)(i, j, l, m) - (*this)(i, j, m, l)) > tol) return false;
          }
    return true;
  }

  bool is_fully_symmetric(Scalar tol = Scalar(0)) const {
    if (!is_minor_symmetric(tol)) return false;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          for (int m = 0; m < 3; ++m)
            if (std::abs((*this)(i, j, l, m) - (*this)(l, m, j, i)) > tol) return false;
    return true;
  }

  Tensor4 operator*(Scalar a) const {
    Tensor4 r(sym_);
    for (std::size_t p = 0; p < 81; ++p) r.comp_[p] = comp_[p] * a;
    return r;
  }

  Tensor4 operator+(const Tensor4& o) const {
    Tensor4 r(sym_ == o.sym_ ? sym_ : Sym::none);
    for (std::size_t p = 0; p < 81; ++p) r.comp_[p] = comp_[p] + o.comp_[p];
    return r;
  }

 private:
  static std::size_t idx(int i, int j, int l, int m) {
    return static_cast<std::size_t>(((i * 3 + j) * 3 + l) * 3 + m);
  }
  std::array<Scalar, 81> comp_;
  Sym sym_;
};

using Tensor4d = Tensor4<double>;

/// transpose(A)(i,j,l,m) = A(l,m,j,i); an involution, identity on fully
/// symmetric tensors.
template <typename S>
Tensor4<S> transpose(const Tensor4<S>& a) {
  Tensor4<S> r(a.sym());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) r(i, j, l, m) = a(l, m, j, i);
  return r;
}

/// Double contraction (A : nu)(i,j) = sum_{l,m} A(i,j,l,m) nu(l,m).
template <typename S>
Mat3 contract(const Tensor4<S>& a, const Mat3& nu) {
  Mat3 r = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S acc = S(0);
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) acc += a(i, j, l, m) * nu(l, m);
      r(i, j) = acc;
    }
  return r;
}

/// Spontaneous magnetostrain Z : (m (x) m); symmetric for minorly
/// symmetric Z.
template <typename S>
Mat3 magnetostrain(const Tensor4<S>& z, const Vec3& m) {
  return contract(z, Mat3(m * m.transpose()));
}

/// Isotropic magnetostriction tensor: acts on any m as
/// (3/2) lambda100 (m (x) m - |m|^2 I / 3). Trace-free output, minorly
/// (in fact fully) symmetric.
template <typename S>
Tensor4<S> isotropic_magnetostriction(S lambda100) {
  Tensor4<S> z(Sym::minor);
  const S c = S(1.5) * lambda100;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          S v = S(0.5) * ((i == l && j == m ? S(1) : S(0)) + (i == m && j == l ? S(1) : S(0)));
          if (i == j && l == m) v -= S(1) / S(3);
          z(i, j, l, m) = c * v;
        }
  return z;
}

/// Cubic magnetostriction in an orthonormal crystal basis. In crystal
/// coordinates the diagonal strain entries follow lambda100, the
/// off-diagonal ones lambda111; components are then rotated to the lab
/// frame. Reduces componentwise to the isotropic tensor when
/// lambda100 == lambda111.
template <typename S>
Tensor4<S> cubic_magnetostriction(S lambda100, S lambda111,
                                  const std::array<Vec3, 3>& crystal_basis) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double dot = crystal_basis[a].dot(crystal_basis[b]);
      double want = (a == b) ? 1.0 : 0.0;
      if (std::abs(dot - want) > 1e-12)
        throw InvalidInput("cubic_magnetostriction: crystal basis is not orthonormal");
    }

  // crystal frame components
  Tensor4<S> zc(Sym::minor);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          S v;
          if (i == j) {
            v = lambda100 * ((i == l && i == m ? S(1) : S(0)) - (l == m ? S(1) / S(3) : S(0)));
          } else {
            v = lambda111 * S(0.5) *
                ((i == l && j == m ? S(1) : S(0)) + (i == m && j == l ? S(1) : S(0)));
          }
          zc(i, j, l, m) = S(1.5) * v;
        }

  Mat3 R;  // columns = crystal axes in lab coordinates
  for (int a = 0; a < 3; ++a) R.col(a) = crystal_basis[a];

  Tensor4<S> z(Sym::minor);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          S acc = S(0);
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
              for (int r = 0; r < 3; ++r)
                for (int s = 0; s < 3; ++s)
                  acc += R(i, p) * R(j, q) * R(l, r) * R(m, s) * zc(p, q, r, s);
          z(i, j, l, m) = acc;
        }
  return z;
}

/// Isotropic stiffness: C : eps = 2 mu eps + lambda tr(eps) I on symmetric
/// eps. Requires mu > 0 and 3 lambda + 2 mu > 0.
template <typename S>
Tensor4<S> isotropic_stiffness(S mu, S lambda) {
  if (!(mu > S(0)) || !(S(3) * lambda + S(2) * mu > S(0)))
    throw InvalidInput("isotropic_stiffness: need mu > 0 and 3*lambda + 2*mu > 0");
  Tensor4<S> c(Sym::full);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          S v = mu * ((i == l && j == m ? S(1) : S(0)) + (i == m && j == l ? S(1) : S(0)));
          if (i == j && l == m) v += lambda;
          c(i, j, l, m) = v;
        }
  return c;
}

/// Hooke stress sigma = C : (strain - magnetostrain(Z, m)).
template <typename S>
Mat3 stress(const Tensor4<S>& c, const Tensor4<S>& z, const Mat3& strain, const Vec3& m) {
  return contract(c, Mat3(strain - magnetostrain(z, m)));
}

/// Magnetoelastic contribution to the effective field,
/// 2 kappa (Z^T : sigma) m, evaluated with the given strain and the
/// (projected) magnetisation.
template <typename S>
Vec3 elastic_field(const Tensor4<S>& c, const Tensor4<S>& z, S kappa, const Mat3& strain,
                   const Vec3& m_proj) {
  Mat3 sig = stress(c, z, strain, m_proj);
  return S(2) * kappa * (contract(transpose(z), sig) * m_proj);
}

}  // namespace mellg
