#pragma once

#include "pinnc/network.hpp"

#include <string>

namespace pinnc {

/// Versioned JSON checkpoint: layer shapes with row-major weight values,
/// initialization seed, extra trainables, and the output transform needed
/// to reproduce predictions.
struct Checkpoint {
  NetworkParams params;
  OutputTransform transform;
};

/// Atomic write (temp + rename); partial files never persist.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Atomically writes `content` to `path`.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace pinnc
