#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "strmon/errors.hpp"
#include "strmon/parser.hpp"

namespace strmon {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string interval_text(const Interval& i) {
  return "[" + std::to_string(i.a) + "," +
         (i.unbounded ? std::string("inf") : std::to_string(i.b)) + "]";
}

void print_region(const Region& region, std::ostream& out);

void print_shape(const BoxRegion& r, std::ostream& out) {
  out << "box(";
  int next = 0;
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    for (; next < r.dims[i]; ++next) {
      if (next > 0) out << ",";
      out << "_";
    }
    if (next > 0) out << ",";
    out << "[" << num(r.lo[i]) << "," << num(r.hi[i]) << "]";
    ++next;
  }
  out << ")";
}

void print_shape(const BallRegion& r, std::ostream& out) {
  out << "ball(";
  for (std::size_t i = 0; i < r.center.size(); ++i) {
    if (i > 0) out << ",";
    out << num(r.center[i]);
  }
  out << ";" << num(r.radius) << ")";
}

void print_halfspace(const std::vector<double>& normal, double offset,
                     std::ostream& out) {
  out << "halfspace(";
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (i > 0) out << ",";
    out << num(normal[i]);
  }
  out << ";" << num(offset) << ")";
}

void print_shape(const HalfspaceRegion& r, std::ostream& out) {
  print_halfspace(r.normal, r.offset, out);
}

void print_shape(const PolytopeRegion& r, std::ostream& out) {
  out << "poly(";
  for (std::size_t i = 0; i < r.normals.size(); ++i) {
    if (i > 0) out << ",";
    print_halfspace(r.normals[i], r.offsets[i], out);
  }
  out << ")";
}

void print_shape(const UnionRegion& r, std::ostream& out) {
  out << "union(";
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    if (i > 0) out << ",";
    print_region(r.members[i], out);
  }
  out << ")";
}

void print_region(const Region& region, std::ostream& out) {
  std::visit([&](const auto& shape) { print_shape(shape, out); },
             region.shape);
}

void print_predicate(const PredicateFunction& p, std::ostream& out) {
  if (const auto* lin = std::get_if<LinearPredicate>(&p.fn)) {
    bool first = true;
    for (std::size_t i = 0; i < lin->a.size(); ++i) {
      const double c = lin->a[i];
      if (c == 0.0) continue;
      if (first) {
        if (c == -1.0)
          out << "-";
        else if (c != 1.0)
          out << num(c) << "*";
      } else {
        out << (c < 0 ? " - " : " + ");
        const double mag = std::fabs(c);
        if (mag != 1.0) out << num(mag) << "*";
      }
      out << "x" << (i + 1);
      first = false;
    }
    if (lin->b != 0.0) {
      out << (lin->b < 0 ? " - " : " + ") << num(std::fabs(lin->b));
    }
    out << " >= 0";
    return;
  }
  if (const auto* sd = std::get_if<SignedDistancePredicate>(&p.fn)) {
    out << (sd->orientation == Orientation::Avoid ? "sd_out(" : "sd_in(");
    print_region(sd->region, out);
    out << ") >= 0";
    return;
  }
  throw UnsupportedError("opaque Lipschitz predicates have no text form");
}

void print_formula(const Formula& f, std::ostream& out);

void print_child_factor(const Formula& child, std::ostream& out) {
  // Until prints its own parentheses; everything else gets wrapped so the
  // result is unambiguous as a factor.
  if (child.kind == NodeKind::Until) {
    print_formula(child, out);
  } else {
    out << "(";
    print_formula(child, out);
    out << ")";
  }
}

void print_formula(const Formula& f, std::ostream& out) {
  switch (f.kind) {
    case NodeKind::True:
      out << "true";
      return;
    case NodeKind::Predicate:
      print_predicate(f.predicate, out);
      return;
    case NodeKind::And:
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i > 0) out << " && ";
        const Formula& c = *f.children[i];
        if (c.kind == NodeKind::Or || c.kind == NodeKind::And) {
          out << "(";
          print_formula(c, out);
          out << ")";
        } else {
          print_formula(c, out);
        }
      }
      return;
    case NodeKind::Or:
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i > 0) out << " || ";
        const Formula& c = *f.children[i];
        if (c.kind == NodeKind::Or) {
          out << "(";
          print_formula(c, out);
          out << ")";
        } else {
          print_formula(c, out);
        }
      }
      return;
    case NodeKind::Always:
    case NodeKind::Eventually:
      out << (f.kind == NodeKind::Always ? "G" : "F") << interval_text(f.interval)
          << " ";
      print_child_factor(*f.children[0], out);
      return;
    case NodeKind::Until:
      out << "(";
      print_formula(*f.children[0], out);
      out << " U" << interval_text(f.interval) << " ";
      print_formula(*f.children[1], out);
      out << ")";
      return;
  }
}

}  // namespace

std::string pretty_print(const Formula& f) {
  std::ostringstream out;
  print_formula(f, out);
  return out.str();
}

}  // namespace strmon
