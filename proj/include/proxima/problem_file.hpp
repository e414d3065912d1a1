#pragma once

// YAML problem-definition files. See README.md for the schema.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proxima/instance.hpp"

namespace proxima {

inline constexpr int kProblemSchemaVersion = 1;

struct Diagnostic {
    int line = 0;  // 1-based, 0 when the location is unknown
    std::string message;

    std::string to_string() const;
};

struct ValidationResult {
    std::optional<ProblemInstance> instance;
    std::vector<Diagnostic> diagnostics;  // empty iff instance is set

    bool ok() const noexcept { return instance.has_value(); }
};

/// Validates YAML text and builds the instance. Never throws for bad input.
ValidationResult validate_text(std::string_view text);

/// Throws FileError when the file cannot be read.
ValidationResult validate_file(const std::filesystem::path& path);

/// Like validate_file, but throws SchemaError carrying the first diagnostic.
ProblemInstance load_problem_file(const std::filesystem::path& path);
ProblemInstance load_problem_text(std::string_view text);

/// Serializes an instance. Reals use the shortest round-trip decimal form,
/// expressions their source text, so loading the result gives an equivalent
/// instance.
std::string export_problem(const ProblemInstance& inst);

}  // namespace proxima
