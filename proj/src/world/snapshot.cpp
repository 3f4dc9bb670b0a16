// Copyright 2026 The hse3s Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hse3s/world/snapshot.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hse3s::world {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ReadNum(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw std::runtime_error("unexpected end of line");
  std::size_t used = 0;
  const double v = std::stod(tok, &used);
  if (used != tok.size()) throw std::runtime_error("bad number '" + tok + "'");
  return v;
}

Pose ReadPose(std::istream& is) {
  geometry::Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = ReadNum(is);
  }
  Vec3 t;
  for (int i = 0; i < 3; ++i) t[i] = ReadNum(is);
  return Pose(r, t);
}

Shape ReadShape(std::istream& is, int depth) {
  std::string kind;
  if (!(is >> kind)) throw std::runtime_error("missing shape kind");
  if (kind == "box") {
    Vec3 h;
    for (int i = 0; i < 3; ++i) h[i] = ReadNum(is);
    return geometry::Box{h};
  }
  if (kind == "cylinder") {
    const double r = ReadNum(is);
    const double h = ReadNum(is);
    return geometry::Cylinder{r, h};
  }
  if (kind == "composite") {
    if (depth >= 2) throw std::runtime_error("composite nested too deeply");
    const double n = ReadNum(is);
    if (n < 1 || n != static_cast<int>(n)) {
      throw std::runtime_error("bad composite part count");
    }
    geometry::Composite c;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      Shape s = ReadShape(is, depth + 1);
      c.parts.push_back({std::move(s), ReadPose(is)});
    }
    return c;
  }
  throw std::runtime_error("unknown shape kind '" + kind + "'");
}

}  // namespace

std::string FormatPose(const Pose& pose) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out += Num(pose.rotation()(i, j)) + " ";
  }
  out += Num(pose.translation().x()) + " " + Num(pose.translation().y()) +
         " " + Num(pose.translation().z());
  return out;
}

std::string FormatShape(const Shape& shape) {
  if (shape.is_box()) {
    const Vec3& h = shape.box().half_extents;
    return "box " + Num(h.x()) + " " + Num(h.y()) + " " + Num(h.z());
  }
  if (shape.is_cylinder()) {
    return "cylinder " + Num(shape.cylinder().radius) + " " +
           Num(shape.cylinder().height);
  }
  const auto& parts = shape.composite().parts;
  std::string out = "composite " + std::to_string(parts.size());
  for (const auto& p : parts) {
    out += " " + FormatShape(p.shape) + " " + FormatPose(p.pose);
  }
  return out;
}

void WriteSnapshot(std::ostream& os, std::span<const SceneObject> scene) {
  for (const SceneObject& o : scene) {
    os << o.id << ' ' << ToString(o.category) << ' ' << FormatShape(o.shape)
       << ' ' << FormatPose(o.pose) << '\n';
  }
}

std::string SnapshotString(std::span<const SceneObject> scene) {
  std::ostringstream os;
  WriteSnapshot(os, scene);
  return os.str();
}

std::vector<SceneObject> ReadSnapshot(std::istream& is) {
  std::vector<SceneObject> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    try {
      std::istringstream ls(line);
      SceneObject o;
      std::string category;
      if (!(ls >> o.id >> category)) throw std::runtime_error("missing id");
      o.category = ParseCategory(category);
      o.shape = ReadShape(ls, 0);
      geometry::ValidateShape(o.shape);
      o.pose = ReadPose(ls);
      std::string extra;
      if (ls >> extra) throw std::runtime_error("trailing '" + extra + "'");
      out.push_back(std::move(o));
    } catch (const std::exception& e) {
      throw std::runtime_error("snapshot line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return out;
}

std::vector<SceneObject> ParseSnapshot(const std::string& text) {
  std::istringstream is(text);
  return ReadSnapshot(is);
}

}  // namespace hse3s::world
