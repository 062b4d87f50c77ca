#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mres/matroid.hpp"

namespace mres {

using Json = nlohmann::json;

// A parsed matroid-v1 document.  Errors carry a JSON pointer to the field.
struct MatroidDocument {
  Matroid matroid;
  std::vector<std::string> labels;
  Json checks;  // optional self-check block, kept verbatim
};

MatroidDocument parse_document(const Json& doc);
MatroidDocument parse_document_text(const std::string& text);
// circuits-kind document, 1-based
Json to_document(const Matroid& m, const std::vector<std::string>& labels = {});

}  // namespace mres
