#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "slcrigid/error.hpp"

namespace slc {

enum class GroupKind { cyclic, reflection, dihedral };

/// A group element written as r^rot * s^refl, where r is the rotation by
/// 2*pi/n about the origin and s the reflection in the x-axis.
struct Element {
  int rot = 0;
  bool refl = false;

  bool is_identity() const { return rot == 0 && !refl; }
  friend bool operator==(const Element&, const Element&) = default;
};

/// 2x2 matrix stored row-major.
struct Mat2 {
  std::array<double, 4> a{1.0, 0.0, 0.0, 1.0};

  std::array<double, 2> apply(const std::array<double, 2>& v) const {
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
  }
  double trace() const { return a[0] + a[3]; }
};

/// Point group of the plane: C_n (cyclic), C_s (reflection) or C_nv
/// (dihedral, generated by c_n and the x-axis mirror).
struct GroupSpec {
  GroupKind kind = GroupKind::cyclic;
  int order = 1;

  static GroupSpec cyclic(int n) { return check({GroupKind::cyclic, n}); }
  static GroupSpec reflection() { return {GroupKind::reflection, 2}; }
  static GroupSpec dihedral(int n) { return check({GroupKind::dihedral, n}); }

  static GroupSpec check(GroupSpec g) {
    if (g.kind == GroupKind::reflection && g.order != 2)
      throw InputError(ErrorCode::schema, "reflection group must have order 2");
    if (g.order < 1)
      throw InputError(ErrorCode::schema, "group order must be positive");
    return g;
  }

  /// Number of rotations (including the identity).
  int rotations() const { return kind == GroupKind::reflection ? 1 : order; }
  bool has_reflection() const { return kind != GroupKind::cyclic; }
  int size() const { return rotations() * (has_reflection() ? 2 : 1); }

  int index(Element e) const { return e.rot + (e.refl ? rotations() : 0); }
  Element element(int i) const {
    const int n = rotations();
    return {i % n, i >= n};
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (int i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
  }
  bool contains(Element e) const {
    return e.rot >= 0 && e.rot < rotations() && (!e.refl || has_reflection());
  }

  Element compose(Element a, Element b) const {
    const int n = rotations();
    int r = a.refl ? a.rot - b.rot : a.rot + b.rot;
    r = ((r % n) + n) % n;
    return {r, a.refl != b.refl};
  }
  Element inverse(Element e) const {
    if (e.refl) return e;
    const int n = rotations();
    return {(n - e.rot) % n, false};
  }
  int element_order(Element e) const {
    if (e.refl) return 2;
    if (e.rot == 0) return 1;
    const int n = rotations();
    return n / std::gcd(e.rot, n);
  }

  /// True when every tau matrix has rational entries (n in {1, 2, 4}).
  bool exact_rational() const {
    const int n = rotations();
    return n == 1 || n == 2 || n == 4;
  }

  /// cos and sin of the rotation angle 2*pi*k/n, exact on quarter turns.
  std::array<double, 2> rotation_cos_sin(int k) const {
    const int n = rotations();
    k %= n;
    if ((4 * k) % n == 0) {
      switch ((4 * k) / n) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    const double t = 2.0 * std::numbers::pi * k / n;
    return {std::cos(t), std::sin(t)};
  }

  Mat2 tau(Element e) const {
    const auto [c, s] = rotation_cos_sin(e.rot);
    if (!e.refl) return Mat2{{c, -s, s, c}};
    // R(theta) * diag(1, -1)
    return Mat2{{c, s, s, -c}};
  }

  /// Unit direction of the mirror line of a reflection element
  /// (angle pi*k/n); exact for multiples of pi/4 up to normalisation, which
  /// is skipped so integer directions stay integral.
  std::array<double, 2> mirror_direction(Element e) const {
    const int n = rotations();
    const int k = e.rot;
    if ((4 * k) % n == 0) {
      switch ((4 * k) / n) {
        case 0: return {1.0, 0.0};
        case 1: return {1.0, 1.0};
        case 2: return {0.0, 1.0};
        default: return {-1.0, 1.0};
      }
    }
    const double t = std::numbers::pi * k / n;
    return {std::cos(t), std::sin(t)};
  }

  std::string name() const {
    switch (kind) {
      case GroupKind::cyclic: return "C" + std::to_string(order);
      case GroupKind::reflection: return "Cs";
      case GroupKind::dihedral: return "C" + std::to_string(order) + "v";
    }
    return "?";
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

inline std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::reflection: return "reflection";
    case GroupKind::dihedral: return "dihedral";
  }
  return "?";
}

inline std::optional<GroupKind> parse_group_kind(std::string_view s) {
  if (s == "cyclic") return GroupKind::cyclic;
  if (s == "reflection") return GroupKind::reflection;
  if (s == "dihedral") return GroupKind::dihedral;
  return std::nullopt;
}

/// Short group names used on the command line: c1, c2, c5, cs, c4v.
inline GroupSpec parse_group_name(std::string_view s) {
  auto bad = [&] {
    return InputError(ErrorCode::schema, "unknown group '" + std::string(s) + "'");
  };
  if (s.size() < 2 || (s[0] != 'c' && s[0] != 'C')) throw bad();
  std::string rest(s.substr(1));
  if (rest == "s") return GroupSpec::reflection();
  bool dihedral = false;
  if (!rest.empty() && rest.back() == 'v') {
    dihedral = true;
    rest.pop_back();
  }
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    throw bad();
  const int n = std::stoi(rest);
  return dihedral ? GroupSpec::dihedral(n) : GroupSpec::cyclic(n);
}

}  // namespace slc
