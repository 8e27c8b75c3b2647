#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "normbis/body.hpp"

namespace normbis {

/// BodySpec document, e.g. {"type":"lp","n":3,"p":2} or
/// {"type":"polytope-v","vertices":[[1,0],[-1,0],[0,1],[0,-1]]}.
/// Optional "tolerances": {"gauge": <real>}. p = infinity is written "inf".
ConvexBody load_body(const nlohmann::json& spec);
ConvexBody load_body_text(std::string_view text);
ConvexBody load_body_file(const std::string& path);
nlohmann::json save_body(const ConvexBody& body);

/// Inline tags accepted on the command line: lp:<p>, cube, cross,
/// halfdisk:<m>, or a path to a BodySpec file. n is used by tags that need it.
ConvexBody parse_body_arg(std::string_view arg, int dim);

}  // namespace normbis
