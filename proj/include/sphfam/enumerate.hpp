#pragma once

// Enumeration of the families in an ambient root system, deduplicated up to
// isometry and reported by canonical code.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sphfam/families.hpp"

namespace sphfam {

enum class EnumerationMode { Direct, BFS, Auto };

EnumerationMode parse_mode(std::string_view text);
std::string_view to_string(EnumerationMode m);

struct EnumerateOptions {
  bool full_group_only = true;
  EnumerationMode mode = EnumerationMode::Auto;
  bool allow_large_direct = false;  // lift the Direct-mode size guard
  bool long_running = false;        // required for E8
  int jobs = 0;                     // 0: OpenMP default, 1: serial reference path
  // Directory for per-level BFS checkpoints; empty falls back to the
  // SPHFAM_CHECKPOINT_DIR environment variable, then to no checkpointing.
  std::string checkpoint_dir;
  std::function<void(std::string_view)> progress;
  // Direct mode only: families keep one witness per distinct value.
  std::function<std::string(const Family&)> embedding_key;
};

struct FamilyRecord {
  CanonicalCode code;
  std::string key;  // family_key
  Family witness;   // smallest line tuple found
  int multiplicity = 1;  // number of families sharing the code
  std::vector<Family> embeddings;  // filled when embedding_key is set
};

struct EnumerationResult {
  GroupKind kind;
  std::vector<FamilyRecord> families;  // sorted by code, then key

  std::vector<CanonicalCode> distinct_codes() const;
  // Codes, one per line, ascending, trailing newline.
  std::string codes_text() const;
};

// Direct mode guard: number of increasing line tuples above which Direct
// requires allow_large_direct.
constexpr double kDirectTupleLimit = 5e7;
double direct_tuple_count(GroupKind kind);

EnumerationResult enumerate_families(GroupKind kind, const EnumerateOptions& options = {});

struct FamilyCount {
  std::size_t distinct_codes = 0;
  std::size_t families = 0;
};
FamilyCount count_families(GroupKind kind, const EnumerateOptions& options = {});

// Path of the checkpoint file for one BFS level (exposed for tests and docs).
std::string checkpoint_path(const std::string& dir, GroupKind kind, int level);

}  // namespace sphfam
