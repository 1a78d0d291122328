#pragma once

#include <string>

#include "spdc/core.hpp"

namespace spdc {

// Flat key = value configuration files; `#` starts a comment, keys match the
// SourceParams field names exactly, unknown keys are errors.

// Applies one key/value pair; throws validation_error on unknown key or
// malformed value.
void apply_config_key(SourceParams& params, const std::string& key, const std::string& value);

// Parses file contents (for tests and in-memory fixtures). Errors name the
// offending line.
SourceParams parse_config_text(const std::string& text, SourceParams base = {});

// Reads and parses a config file.
SourceParams parse_config(const std::string& path, SourceParams base = {});

// Canonical text form, suitable for provenance headers and round-tripping.
std::string config_to_text(const SourceParams& params);

}  // namespace spdc
