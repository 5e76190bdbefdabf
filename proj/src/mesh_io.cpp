#include "lamina/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lamina {

DiscreteCurve curve_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("mesh parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("faces"))
    throw error("mesh parse failure: expected object with \"vertices\" and \"faces\"");

  std::vector<PointC2> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 4)
      throw error("mesh parse failure: vertex must be [re_z, im_z, re_w, im_w]");
    vertices.push_back({complexd(v[0].get<double>(), v[1].get<double>()),
                        complexd(v[2].get<double>(), v[3].get<double>())});
  }
  std::vector<Face> faces;
  for (const auto& f : j.at("faces")) {
    if (!f.is_array() || (f.size() != 3 && f.size() != 4))
      throw error("mesh parse failure: face must be a triangle or a quad");
    if (f.size() == 3) {
      faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    } else {
      faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
      faces.push_back({f[0].get<int>(), f[2].get<int>(), f[3].get<int>()});
    }
  }
  std::string name = j.value("name", std::string());
  return make_curve(std::move(vertices), std::move(faces), std::move(name));
}

std::string curve_to_json(const DiscreteCurve& curve) {
  nlohmann::json j;
  auto verts = nlohmann::json::array();
  for (const PointC2& p : curve.vertices)
    verts.push_back({p.z.real(), p.z.imag(), p.w.real(), p.w.imag()});
  auto faces = nlohmann::json::array();
  for (const Face& f : curve.faces) faces.push_back({f[0], f[1], f[2]});
  j["vertices"] = std::move(verts);
  j["faces"] = std::move(faces);
  if (!curve.name.empty()) j["name"] = curve.name;
  return j.dump() + "\n";
}

DiscreteCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open mesh file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return curve_from_json(ss.str());
}

void save_curve(const DiscreteCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write mesh file: " + path);
  out << curve_to_json(curve);
}

}  // namespace lamina
