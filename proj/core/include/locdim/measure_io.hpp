#pragma once

#include <memory>
#include <string>

#include "locdim/gallery.hpp"
#include "locdim/measure.hpp"
#include "locdim/moran.hpp"

namespace locdim {

// A loaded measure definition.  Exactly one of `tree` / `atomic` is set and
// `measure` aliases it; `spec` is populated for the self-similar type so
// closed-form oracles stay available downstream.
struct MeasureDocument {
  std::string type;  // "selfsimilar" | "atoms" | "gallery"
  std::string gallery_name;
  std::shared_ptr<MeasureTree> tree;
  std::shared_ptr<AtomicMeasure> atomic;
  std::shared_ptr<Measure> measure;
  SelfSimilarSpec spec;
  int depth = 0;
  bool has_spec = false;
};

// Parse a measure-definition JSON document:
//   {"type":"selfsimilar","ratios":[...],"weights":[...],"depth":n}
//   {"type":"atoms","points":[[...],...],"masses":[...]}
//   {"type":"gallery","name":"...","params":{...}}
// Gallery names: dirac-cascade, dirac-lebesgue, h-gt-q, q-gt-h, one-point,
// rings, appendix-a, selfsimilar.
MeasureDocument load_measure_json(const std::string& text);
MeasureDocument load_measure_file(const std::string& path);

// Build a gallery document directly from a name and parameter JSON text
// (empty string means defaults).
MeasureDocument make_gallery(const std::string& name, const std::string& params_json);

// Serialization with 17-significant-digit decimal round-trip.
std::string serialize_selfsimilar(const SelfSimilarSpec& spec, int depth);
std::string serialize_atoms(const AtomicMeasure& mu);

// Shared float formatting used by the CLI: fixed significant digits,
// '.' decimal separator, no locale dependence.
std::string format_sig(double v, int significant_digits);

}  // namespace locdim
