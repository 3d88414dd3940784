#include "locdim/measure_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace locdim {

namespace {

using nlohmann::json;

std::vector<double> as_doubles(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string("measure json: ") + what +
                                                 " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

MeasureDocument from_selfsimilar(const json& j) {
  MeasureDocument doc;
  doc.type = "selfsimilar";
  doc.spec.ratios = as_doubles(j.at("ratios"), "ratios");
  doc.spec.weights = as_doubles(j.at("weights"), "weights");
  if (j.contains("start_weights")) doc.spec.start_weights = as_doubles(j["start_weights"], "start_weights");
  if (j.contains("start_ratios")) doc.spec.start_ratios = as_doubles(j["start_ratios"], "start_ratios");
  doc.depth = j.value("depth", 10);
  doc.spec.validate();
  doc.has_spec = true;
  doc.tree = std::make_shared<MeasureTree>(build_selfsimilar_tree(doc.spec, doc.depth));
  doc.measure = doc.tree;
  return doc;
}

MeasureDocument from_atoms(const json& j) {
  MeasureDocument doc;
  doc.type = "atoms";
  const auto& pj = j.at("points");
  if (!pj.is_array() || pj.empty()) throw std::invalid_argument("measure json: points must be a non-empty array");
  std::vector<Point> pts;
  int dim = -1;
  for (const auto& row : pj) {
    Point p;
    p.x = as_doubles(row, "point");
    if (dim < 0) dim = static_cast<int>(p.x.size());
    if (static_cast<int>(p.x.size()) != dim)
      throw std::invalid_argument("measure json: inconsistent point dimensions");
    pts.push_back(std::move(p));
  }
  std::vector<double> masses;
  if (j.contains("masses"))
    masses = as_doubles(j["masses"], "masses");
  else
    masses.assign(pts.size(), 1.0 / pts.size());
  if (masses.size() != pts.size())
    throw std::invalid_argument("measure json: points/masses length mismatch");
  bool normalize = j.value("normalize", true);
  auto space = std::make_shared<EuclideanSpace>(dim);
  doc.atomic = std::make_shared<AtomicMeasure>(space, std::move(pts), std::move(masses), normalize);
  doc.measure = doc.atomic;
  return doc;
}

MeasureDocument from_gallery(const std::string& name, const json& params) {
  MeasureDocument doc;
  doc.type = "gallery";
  doc.gallery_name = name;
  if (name == "dirac-cascade") {
    std::vector<int> schedule{1, 3, 12};
    if (params.contains("schedule")) {
      schedule.clear();
      for (const auto& v : params["schedule"]) schedule.push_back(v.get<int>());
    }
    doc.atomic = gallery_dirac_cascade(schedule, params.value("dim", 1));
  } else if (name == "dirac-lebesgue") {
    doc.atomic = gallery_dirac_plus_lebesgue(params.value("n_atoms", 2048));
  } else if (name == "h-gt-q") {
    doc.tree = std::make_shared<MeasureTree>(gallery_h_gt_q(params.value("stages", 4)));
  } else if (name == "q-gt-h") {
    doc.tree = std::make_shared<MeasureTree>(gallery_q_gt_h(params.value("stages", 2)).tree);
  } else if (name == "one-point") {
    doc.atomic = gallery_one_point(params.value("stages", 2)).measure;
  } else if (name == "rings") {
    doc.atomic = gallery_ring_measure(params.value("rings", 12), params.value("atoms_per_ring", 1024));
  } else if (name == "appendix-a") {
    doc.atomic = gallery_appendix_a(params.value("depth", 3)).measure;
  } else if (name == "selfsimilar") {
    return from_selfsimilar(params);
  } else {
    throw std::invalid_argument("measure json: unknown gallery name '" + name + "'");
  }
  doc.measure = doc.tree ? std::static_pointer_cast<Measure>(doc.tree)
                         : std::static_pointer_cast<Measure>(doc.atomic);
  return doc;
}

}  // namespace

MeasureDocument load_measure_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("measure json: parse error: ") + e.what());
  }
  std::string type = j.value("type", "");
  if (type == "selfsimilar") return from_selfsimilar(j);
  if (type == "atoms") return from_atoms(j);
  if (type == "gallery")
    return from_gallery(j.at("name").get<std::string>(), j.value("params", json::object()));
  throw std::invalid_argument("measure json: unknown type '" + type + "'");
}

MeasureDocument load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("measure json: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_measure_json(ss.str());
}

MeasureDocument make_gallery(const std::string& name, const std::string& params_json) {
  json params = params_json.empty() ? json::object() : json::parse(params_json);
  return from_gallery(name, params);
}

std::string format_sig(double v, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

std::string serialize_selfsimilar(const SelfSimilarSpec& spec, int depth) {
  json j;
  j["type"] = "selfsimilar";
  j["ratios"] = json::array();
  for (double r : spec.ratios) j["ratios"].push_back(r);
  j["weights"] = json::array();
  for (double w : spec.weights) j["weights"].push_back(w);
  if (!spec.start_weights.empty()) {
    j["start_weights"] = json::array();
    for (double w : spec.start_weights) j["start_weights"].push_back(w);
  }
  if (!spec.start_ratios.empty()) {
    j["start_ratios"] = json::array();
    for (double r : spec.start_ratios) j["start_ratios"].push_back(r);
  }
  j["depth"] = depth;
  return j.dump(2);
}

std::string serialize_atoms(const AtomicMeasure& mu) {
  std::ostringstream out;
  out << "{\n  \"type\": \"atoms\",\n  \"points\": [";
  for (std::size_t i = 0; i < mu.support_size(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    const auto& p = mu.support_point(i);
    for (std::size_t c = 0; c < p.x.size(); ++c)
      out << (c ? ", " : "") << format_sig(p.x[c], 17);
    out << "]";
  }
  out << "\n  ],\n  \"masses\": [";
  for (std::size_t i = 0; i < mu.support_size(); ++i)
    out << (i ? ", " : "") << format_sig(mu.support_mass(i), 17);
  out << "],\n  \"normalize\": false\n}\n";
  return out.str();
}

}  // namespace locdim
