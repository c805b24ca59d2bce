// Signed permutations of cube axes: the hyperoctahedral symmetries of an
// n-cube and the attaching maps between facets.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubu {

/// Largest number of axes a symmetry can act on. Cubulations go up to n = 4,
/// move templates live in the boundary of the 5-cube.
inline constexpr int kMaxAxes = 5;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A facet of an n-cube: the face {x_axis = side}. Index 2*axis + side.
struct Facet {
  int axis = 0;
  int side = 0;

  static constexpr Facet from_index(int index) { return {index / 2, index % 2}; }
  constexpr int index() const { return 2 * axis + side; }
  constexpr Facet opposite() const { return {axis, 1 - side}; }
  friend constexpr bool operator==(Facet, Facet) = default;
};

/// Point map on [0,1]^size: y[axis(k)] = flip(k) ? 1 - x[k] : x[k].
class SignedPerm {
 public:
  SignedPerm() = default;

  static SignedPerm identity(int size) {
    check_size(size);
    SignedPerm p;
    p.size_ = static_cast<std::int8_t>(size);
    for (int k = 0; k < size; ++k) p.axis_[k] = static_cast<std::int8_t>(k);
    return p;
  }

  /// Throws if `axes` is not a permutation of 0..size-1.
  static SignedPerm from(const std::vector<int>& axes, const std::vector<bool>& flips) {
    if (axes.size() != flips.size()) throw Error("signed permutation: axis/flip length mismatch");
    const int size = static_cast<int>(axes.size());
    check_size(size);
    SignedPerm p;
    p.size_ = static_cast<std::int8_t>(size);
    for (int k = 0; k < size; ++k) {
      p.axis_[k] = static_cast<std::int8_t>(axes[k]);
      if (flips[k]) p.flips_ |= static_cast<std::uint8_t>(1u << k);
    }
    if (!p.is_bijection()) throw Error("signed permutation: axes are not a bijection");
    return p;
  }

  int size() const { return size_; }
  int axis(int k) const { return axis_[k]; }
  bool flip(int k) const { return (flips_ >> k) & 1u; }

  bool is_bijection() const {
    unsigned seen = 0;
    for (int k = 0; k < size_; ++k) {
      if (axis_[k] < 0 || axis_[k] >= size_) return false;
      seen |= 1u << axis_[k];
    }
    return seen == (1u << size_) - 1u;
  }

  bool is_identity() const {
    if (flips_ != 0) return false;
    for (int k = 0; k < size_; ++k)
      if (axis_[k] != k) return false;
    return true;
  }

  SignedPerm inverse() const {
    SignedPerm q;
    q.size_ = size_;
    for (int k = 0; k < size_; ++k) {
      q.axis_[axis_[k]] = static_cast<std::int8_t>(k);
      if (flip(k)) q.flips_ |= static_cast<std::uint8_t>(1u << axis_[k]);
    }
    return q;
  }

  /// (*this) after `inner`: x -> this(inner(x)).
  SignedPerm after(const SignedPerm& inner) const {
    if (inner.size_ != size_) throw Error("signed permutation: composing different sizes");
    SignedPerm r;
    r.size_ = size_;
    for (int k = 0; k < size_; ++k) {
      const int mid = inner.axis_[k];
      r.axis_[k] = axis_[mid];
      if (inner.flip(k) != flip(mid)) r.flips_ |= static_cast<std::uint8_t>(1u << k);
    }
    return r;
  }

  /// Image of a facet under the point map.
  Facet map_facet(Facet f) const { return {axis_[f.axis], f.side ^ static_cast<int>(flip(f.axis))}; }

  /// Sign of the linear part (orientation character).
  int determinant() const {
    int sign = (std::popcount(static_cast<unsigned>(flips_)) % 2) ? -1 : 1;
    std::array<bool, kMaxAxes> seen{};
    for (int k = 0; k < size_; ++k) {
      if (seen[k]) continue;
      int len = 0;
      for (int j = k; !seen[j]; j = axis_[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    return sign;
  }

  /// Dense code, unique per (size, permutation, flips).
  std::uint32_t code() const {
    std::uint32_t c = 0;
    for (int k = 0; k < size_; ++k) c = c * 8 + static_cast<std::uint32_t>(axis_[k]);
    return (c << kMaxAxes) | flips_;
  }

  /// Inverse of code(); throws on codes that are not signed permutations.
  static SignedPerm from_code(std::uint32_t code, int size) {
    check_size(size);
    SignedPerm p;
    p.size_ = static_cast<std::int8_t>(size);
    p.flips_ = static_cast<std::uint8_t>(code & ((1u << kMaxAxes) - 1u));
    code >>= kMaxAxes;
    for (int k = size - 1; k >= 0; --k) {
      p.axis_[k] = static_cast<std::int8_t>(code % 8);
      code /= 8;
    }
    if (code != 0 || (p.flips_ >> size) != 0 || !p.is_bijection()) throw Error("signed permutation: bad code");
    return p;
  }

  /// Tokens "<sign><axis>" as used by the .cub format.
  std::string to_string() const {
    std::string s;
    for (int k = 0; k < size_; ++k) {
      if (k) s += ' ';
      s += flip(k) ? '-' : '+';
      s += std::to_string(axis_[k]);
    }
    return s;
  }

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.size_ == b.size_ && a.flips_ == b.flips_ && a.axis_ == b.axis_;
  }
  friend std::strong_ordering operator<=>(const SignedPerm& a, const SignedPerm& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    if (auto c = a.axis_ <=> b.axis_; c != 0) return c;
    return a.flips_ <=> b.flips_;
  }

 private:
  static void check_size(int size) {
    if (size < 0 || size > kMaxAxes) throw Error("signed permutation: unsupported size");
  }

  std::array<std::int8_t, kMaxAxes> axis_{};
  std::uint8_t flips_ = 0;
  std::int8_t size_ = 0;
};

/// Maps intrinsic coordinates of one facet onto those of the facet it is
/// glued to. The intrinsic axes of the facet normal to axis i are the
/// remaining axes in increasing order.
using AttachingMap = SignedPerm;
/// Symmetry of an n-cube, acting on points.
using CubeSymmetry = SignedPerm;

/// Position of ambient axis `axis` among the intrinsic axes of a facet normal to `normal`.
inline int intrinsic_index(int axis, int normal) { return axis < normal ? axis : axis - 1; }
/// Ambient axis of intrinsic axis `k` of a facet normal to `normal`.
inline int ambient_axis(int k, int normal) { return k < normal ? k : k + 1; }

/// The map a cube symmetry induces between facet `normal` and its image facet.
inline AttachingMap restrict_to_facet(const CubeSymmetry& s, int normal) {
  const int n = s.size();
  std::vector<int> axes(n - 1);
  std::vector<bool> flips(n - 1);
  const int image_normal = s.axis(normal);
  for (int k = 0; k < n - 1; ++k) {
    const int a = ambient_axis(k, normal);
    axes[k] = intrinsic_index(s.axis(a), image_normal);
    flips[k] = s.flip(a);
  }
  return SignedPerm::from(axes, flips);
}

/// The unique symmetry sending facet `src` to `dst` whose restriction to
/// `src` is `on_facet`.
inline CubeSymmetry extend_from_facet(int n, Facet src, Facet dst, const AttachingMap& on_facet) {
  if (on_facet.size() != n - 1) throw Error("extend_from_facet: facet map has wrong size");
  std::vector<int> axes(n);
  std::vector<bool> flips(n);
  axes[src.axis] = dst.axis;
  flips[src.axis] = src.side != dst.side;
  for (int k = 0; k < n - 1; ++k) {
    const int a = ambient_axis(k, src.axis);
    axes[a] = ambient_axis(on_facet.axis(k), dst.axis);
    flips[a] = on_facet.flip(k);
  }
  return SignedPerm::from(axes, flips);
}

/// All 2^n n! symmetries of the n-cube, identity first, in a fixed order.
inline std::vector<CubeSymmetry> all_symmetries(int n) {
  std::vector<CubeSymmetry> out;
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> flips(n);
      for (int k = 0; k < n; ++k) flips[k] = (mask >> k) & 1u;
      out.push_back(SignedPerm::from(axes, flips));
    }
  } while (std::next_permutation(axes.begin(), axes.end()));
  return out;
}

/// Cached copy of all_symmetries(n).
inline const std::vector<CubeSymmetry>& symmetries(int n) {
  static const std::array<std::vector<CubeSymmetry>, kMaxAxes + 1> table = [] {
    std::array<std::vector<CubeSymmetry>, kMaxAxes + 1> t;
    for (int k = 0; k <= kMaxAxes; ++k) t[k] = all_symmetries(k);
    return t;
  }();
  return table.at(n);
}

}  // namespace cubu
