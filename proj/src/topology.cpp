#include "acdedmd/topology.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acdedmd/errors.hpp"

namespace acd {

TopologySpace::TopologySpace(std::vector<TopologyAtom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw ValidationError("topology: expression must contain at least one atom");
  }
  for (const TopologyAtom& a : atoms_) {
    if (a.kind == TopologyAtom::Kind::kEuclidean) {
      if (a.dim < 1) {
        throw ValidationError("topology: Euclidean atom requires n >= 1");
      }
      raw_dim_ += a.dim;
      embedded_dim_ += a.dim;
    } else {
      raw_dim_ += 1;
      embedded_dim_ += 2;
      circle_count_ += 1;
    }
  }
}

bool TopologySpace::is_angle(int raw_index) const {
  if (raw_index < 0 || raw_index >= raw_dim_) {
    throw ValidationError("topology: raw coordinate index out of range");
  }
  int offset = 0;
  for (const TopologyAtom& a : atoms_) {
    const int width = a.kind == TopologyAtom::Kind::kEuclidean ? a.dim : 1;
    if (raw_index < offset + width) {
      return a.kind == TopologyAtom::Kind::kCircle;
    }
    offset += width;
  }
  return false;  // unreachable
}

std::string TopologySpace::expression() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0) out << " x ";
    if (atoms_[i].kind == TopologyAtom::Kind::kEuclidean) {
      out << "R^" << atoms_[i].dim;
    } else {
      out << "S^1";
    }
  }
  return out.str();
}

std::vector<std::string> TopologySpace::embedded_names(
    const std::vector<std::string>& raw_names) const {
  auto raw_name = [&](int i) {
    if (i < static_cast<int>(raw_names.size())) return raw_names[i];
    return "q" + std::to_string(i);
  };
  std::vector<std::string> names;
  names.reserve(embedded_dim_);
  int raw = 0;
  for (const TopologyAtom& a : atoms_) {
    if (a.kind == TopologyAtom::Kind::kEuclidean) {
      for (int k = 0; k < a.dim; ++k) names.push_back(raw_name(raw++));
    } else {
      names.push_back("sin(" + raw_name(raw) + ")");
      names.push_back("cos(" + raw_name(raw) + ")");
      ++raw;
    }
  }
  return names;
}

namespace {

[[noreturn]] void parse_fail(std::size_t pos, const std::string& what) {
  throw ValidationError("topology parse error at position " +
                        std::to_string(pos) + ": " + what);
}

}  // namespace

TopologySpace parse_topology(const std::string& text) {
  std::vector<TopologyAtom> atoms;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  while (true) {
    skip_ws();
    if (i >= n) {
      parse_fail(i, atoms.empty() ? "expected an atom ('R^<n>', 'E^<n>' or 'S^1')"
                                  : "expected an atom after 'x'");
    }
    const std::size_t atom_pos = i;
    const char head = text[i];
    if (head != 'R' && head != 'E' && head != 'S') {
      parse_fail(i, std::string("expected 'R', 'E' or 'S', got '") + head + "'");
    }
    ++i;
    if (i >= n || text[i] != '^') {
      parse_fail(i, "expected '^' after atom symbol");
    }
    ++i;
    std::size_t digits = 0;
    long value = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000) parse_fail(atom_pos, "atom dimension too large");
      ++i;
      ++digits;
    }
    if (digits == 0) parse_fail(i, "expected an integer exponent");

    if (head == 'S') {
      if (value != 1) {
        parse_fail(atom_pos, "unsupported atom 'S^" + std::to_string(value) +
                                 "' (only S^1 is supported; express higher "
                                 "spheres through chart angles)");
      }
      atoms.push_back({TopologyAtom::Kind::kCircle, 1});
    } else {
      if (value < 1) {
        parse_fail(atom_pos, "Euclidean atom requires n >= 1");
      }
      atoms.push_back({TopologyAtom::Kind::kEuclidean, static_cast<int>(value)});
    }

    skip_ws();
    if (i >= n) break;
    if (text[i] != 'x') {
      parse_fail(i, std::string("expected 'x' between atoms, got '") + text[i] + "'");
    }
    ++i;
  }
  return TopologySpace(std::move(atoms));
}

Eigen::VectorXd embed(const TopologySpace& space, const Eigen::VectorXd& raw) {
  if (raw.size() != space.raw_dim()) {
    throw ValidationError("embed: state has length " + std::to_string(raw.size()) +
                          ", topology " + space.expression() + " expects " +
                          std::to_string(space.raw_dim()));
  }
  Eigen::VectorXd out(space.embedded_dim());
  int src = 0, dst = 0;
  for (const TopologyAtom& a : space.atoms()) {
    if (a.kind == TopologyAtom::Kind::kEuclidean) {
      out.segment(dst, a.dim) = raw.segment(src, a.dim);
      src += a.dim;
      dst += a.dim;
    } else {
      out[dst++] = std::sin(raw[src]);
      out[dst++] = std::cos(raw[src]);
      ++src;
    }
  }
  return out;
}

Eigen::VectorXd unembed(const TopologySpace& space,
                        const Eigen::VectorXd& embedded) {
  if (embedded.size() != space.embedded_dim()) {
    throw ValidationError("unembed: vector has length " +
                          std::to_string(embedded.size()) + ", topology " +
                          space.expression() + " expects " +
                          std::to_string(space.embedded_dim()));
  }
  Eigen::VectorXd out(space.raw_dim());
  int src = 0, dst = 0;
  for (const TopologyAtom& a : space.atoms()) {
    if (a.kind == TopologyAtom::Kind::kEuclidean) {
      out.segment(dst, a.dim) = embedded.segment(src, a.dim);
      src += a.dim;
      dst += a.dim;
    } else {
      const double s = embedded[src];
      const double c = embedded[src + 1];
      if (s == 0.0 && c == 0.0) {
        throw NumericalError("unembed: degenerate (sin, cos) = (0, 0) pair at "
                             "embedded index " + std::to_string(src));
      }
      double angle = std::atan2(s, c);
      if (angle == -std::numbers::pi) angle = std::numbers::pi;  // keep (-pi, pi]
      out[dst++] = angle;
      src += 2;
    }
  }
  return out;
}

}  // namespace acd
